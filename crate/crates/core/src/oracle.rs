//! Ground-truth satisfiability that never touches the algebra code:
//! exhaustive enumeration and a plain DPLL.

use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, Cnf};
use crate::error::Result;
use crate::limits::{self, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
}

impl Verdict {
    pub fn is_sat(self) -> bool {
        self == Verdict::Sat
    }

    pub fn from_sat(sat: bool) -> Self {
        if sat {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub verdict: Verdict,
    pub model_count: u64,
    /// Lowest-index model, present iff satisfiable.
    pub witness: Option<Assignment>,
}

/// Enumerates all `2^n` assignments.
pub fn brute_force(f: &Cnf) -> Result<BruteForceResult> {
    brute_force_with(f, &Limits::default())
}

pub fn brute_force_with(f: &Cnf, lim: &Limits) -> Result<BruteForceResult> {
    let n = f.num_vars();
    limits::check("brute_force", n, lim.oracle_max_n)?;
    let mut count = 0u64;
    let mut first = None;
    for a in 0..1u64 << n {
        if f.eval_index(a) {
            count += 1;
            first.get_or_insert(a);
        }
    }
    Ok(BruteForceResult {
        verdict: Verdict::from_sat(count > 0),
        model_count: count,
        witness: first.map(|a| Assignment::from_index(n, a)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpllResult {
    pub verdict: Verdict,
    pub witness: Option<Assignment>,
}

/// Outcome of unit propagation and pure-literal elimination run to a
/// fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Propagated {
    Conflict,
    Satisfied,
    Open,
}

/// Working state: residual clauses as signed literals plus the partial
/// assignment built so far (index 0 unused).
#[derive(Debug, Clone)]
struct State {
    clauses: Vec<Vec<i64>>,
    values: Vec<Option<bool>>,
}

impl State {
    fn new(f: &Cnf) -> Self {
        State {
            clauses: f
                .clauses()
                .iter()
                .map(|c| c.literals().iter().map(|l| l.to_dimacs()).collect())
                .collect(),
            values: vec![None; f.num_vars() as usize + 1],
        }
    }

    fn assign(&mut self, lit: i64) {
        self.values[lit.unsigned_abs() as usize] = Some(lit > 0);
        self.clauses.retain(|c| !c.contains(&lit));
        for c in &mut self.clauses {
            c.retain(|&l| l != -lit);
        }
    }

    fn propagate(&mut self, pure_literals: bool) -> Propagated {
        loop {
            if self.clauses.iter().any(Vec::is_empty) {
                return Propagated::Conflict;
            }
            if self.clauses.is_empty() {
                return Propagated::Satisfied;
            }
            if let Some(unit) = self.clauses.iter().find(|c| c.len() == 1) {
                let lit = unit[0];
                self.assign(lit);
                continue;
            }
            if pure_literals {
                if let Some(lit) = self.pure_literal() {
                    self.assign(lit);
                    continue;
                }
            }
            return Propagated::Open;
        }
    }

    fn pure_literal(&self) -> Option<i64> {
        let n = self.values.len();
        let mut pos = vec![false; n];
        let mut neg = vec![false; n];
        for c in &self.clauses {
            for &l in c {
                if l > 0 {
                    pos[l as usize] = true;
                } else {
                    neg[(-l) as usize] = true;
                }
            }
        }
        (1..n).find_map(|v| match (pos[v], neg[v]) {
            (true, false) => Some(v as i64),
            (false, true) => Some(-(v as i64)),
            _ => None,
        })
    }

    fn lowest_open_var(&self) -> Option<i64> {
        self.clauses
            .iter()
            .flat_map(|c| c.iter().map(|l| l.abs()))
            .min()
    }

    fn witness(&self) -> Assignment {
        Assignment::new(
            self.values[1..]
                .iter()
                .map(|v| v.unwrap_or(false))
                .collect(),
        )
    }
}

/// Unit propagation plus pure-literal elimination only: decides the problem
/// when the fixpoint is a conflict or leaves no clauses.
pub(crate) fn propagate_only(f: &Cnf) -> Propagated {
    State::new(f).propagate(true)
}

/// DPLL with unit propagation and pure-literal elimination, branching on the
/// lowest-index open variable with the false branch first.
pub fn dpll(f: &Cnf) -> DpllResult {
    fn search(mut st: State) -> Option<State> {
        match st.propagate(true) {
            Propagated::Conflict => None,
            Propagated::Satisfied => Some(st),
            Propagated::Open => {
                let v = st.lowest_open_var().expect("open state has literals");
                for lit in [-v, v] {
                    let mut next = st.clone();
                    next.assign(lit);
                    if let Some(done) = search(next) {
                        return Some(done);
                    }
                }
                None
            }
        }
    }
    match search(State::new(f)) {
        Some(st) => DpllResult {
            verdict: Verdict::Sat,
            witness: Some(st.witness()),
        },
        None => DpllResult {
            verdict: Verdict::Unsat,
            witness: None,
        },
    }
}

//! Signed sums of SAT problems and the recursive symmetry algorithm.
//!
//! A [`SignedSum`] `Σ = Σ_j s_j S_j` is an element of the subalgebra whose
//! coefficient at an assignment is the signed count of terms satisfied
//! there. Eliminating variable `v` replaces every term `s·S` with
//! `s·S|_{v=F} − s·S|_{v=T}`; `Σ` is a scalar multiple of `𝟙` exactly when
//! every such elimination vanishes. [`algorithm1`] chains eliminations until
//! it either meets a satisfiable term (an asymmetry) or runs out of
//! variables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, Cnf};
use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::oracle::{self, Propagated, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "−",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedCnf {
    pub sign: Sign,
    pub problem: Cnf,
}

impl SignedCnf {
    pub fn plus(problem: Cnf) -> Self {
        SignedCnf {
            sign: Sign::Plus,
            problem,
        }
    }

    pub fn minus(problem: Cnf) -> Self {
        SignedCnf {
            sign: Sign::Minus,
            problem,
        }
    }
}

/// How hard a term is examined before the solver gives up on deciding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DetectorLevel {
    /// Only the syntactic cases: an empty clause, or no clauses at all.
    L0,
    /// Adds unit propagation and pure-literal elimination.
    L1,
    /// Full DPLL on each term.
    L2,
}

impl DetectorLevel {
    pub const ALL: [DetectorLevel; 3] = [DetectorLevel::L0, DetectorLevel::L1, DetectorLevel::L2];
}

impl fmt::Display for DetectorLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorLevel::L0 => "L0",
            DetectorLevel::L1 => "L1",
            DetectorLevel::L2 => "L2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub level: DetectorLevel,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            level: DetectorLevel::L1,
        }
    }
}

impl From<DetectorLevel> for DetectorConfig {
    fn from(level: DetectorLevel) -> Self {
        DetectorConfig { level }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    /// Has an empty clause, or the detector refuted it.
    TriviallyUnsat,
    /// No clauses.
    Tautology,
    /// The detector found it satisfiable.
    KnownSat,
    Unknown,
}

/// Classifies a single problem. Refutations found by propagation or search
/// are reported as `TriviallyUnsat`.
pub fn classify(f: &Cnf, d: DetectorConfig) -> Classification {
    if f.has_empty_clause() {
        return Classification::TriviallyUnsat;
    }
    if f.is_clause_free() {
        return Classification::Tautology;
    }
    match d.level {
        DetectorLevel::L0 => Classification::Unknown,
        DetectorLevel::L1 => match oracle::propagate_only(f) {
            Propagated::Conflict => Classification::TriviallyUnsat,
            Propagated::Satisfied => Classification::KnownSat,
            Propagated::Open => Classification::Unknown,
        },
        DetectorLevel::L2 => match oracle::dpll(f).verdict {
            Verdict::Sat => Classification::KnownSat,
            Verdict::Unsat => Classification::TriviallyUnsat,
        },
    }
}

/// Literal-choice rule for the elimination order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Heuristic {
    /// Live variable with the most occurrences over all terms, ties to the
    /// lowest index.
    #[default]
    MaxOcc,
    /// Lowest-index live variable that occurs in some clause.
    Lowest,
}

/// A formal ±1 combination of problems over a shared set of live variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSum {
    n: u32,
    terms: Vec<SignedCnf>,
    live_vars: BTreeSet<u32>,
}

/// Result of the truth-table constancy check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constancy {
    Constant(i64),
    NotConstant,
}

impl SignedSum {
    /// `+f` with every variable live.
    pub fn single(f: Cnf) -> Self {
        let n = f.num_vars();
        SignedSum {
            n,
            terms: vec![SignedCnf::plus(f)],
            live_vars: (1..=n).collect(),
        }
    }

    /// Builds a sum, checking that every literal uses a live variable.
    pub fn new(n: u32, terms: Vec<SignedCnf>, live_vars: BTreeSet<u32>) -> Result<Self> {
        if let Some(&v) = live_vars.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::VarOutOfRange { var: v, n });
        }
        for t in &terms {
            if t.problem.num_vars() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: t.problem.num_vars(),
                });
            }
            if let Some(v) = t
                .problem
                .occurring_vars()
                .into_iter()
                .find(|v| !live_vars.contains(v))
            {
                return Err(Error::NotLive(v));
            }
        }
        Ok(SignedSum {
            n,
            terms,
            live_vars,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[SignedCnf] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn live_vars(&self) -> &BTreeSet<u32> {
        &self.live_vars
    }

    /// `Σ ↦ Σ|_{v=F} − Σ|_{v=T}`: every term splits in two and `v` stops
    /// being live.
    pub fn eliminate(&self, v: u32) -> Result<SignedSum> {
        if !self.live_vars.contains(&v) {
            return Err(Error::NotLive(v));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            terms.push(SignedCnf {
                sign: t.sign,
                problem: t.problem.restrict(v, false)?,
            });
            terms.push(SignedCnf {
                sign: t.sign.flip(),
                problem: t.problem.restrict(v, true)?,
            });
        }
        let mut live_vars = self.live_vars.clone();
        live_vars.remove(&v);
        Ok(SignedSum {
            n: self.n,
            terms,
            live_vars,
        })
    }

    /// Drops terms the detector refutes. Opposite-sign copies of the same
    /// problem are kept: cancelling them could hide a satisfiable term.
    pub fn simplify(&self, d: DetectorConfig) -> SignedSum {
        SignedSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|t| classify(&t.problem, d) != Classification::TriviallyUnsat)
                .cloned()
                .collect(),
            live_vars: self.live_vars.clone(),
        }
    }

    /// Cancels `+S` against `−S` for syntactically equal problems. This
    /// changes the algorithm's behaviour and exists for comparison only.
    pub fn cancel_pairs(&self) -> SignedSum {
        let mut net: HashMap<Vec<Vec<i64>>, i64> = HashMap::new();
        let mut order = Vec::new();
        for t in &self.terms {
            let key = t.problem.canonical();
            let e = net.entry(key.clone()).or_insert_with(|| {
                order.push((key, t.problem.clone()));
                0
            });
            *e += t.sign.value();
        }
        let mut terms = Vec::new();
        for (key, problem) in order {
            let k = net[&key];
            let sign = if k > 0 { Sign::Plus } else { Sign::Minus };
            for _ in 0..k.unsigned_abs() {
                terms.push(SignedCnf {
                    sign,
                    problem: problem.clone(),
                });
            }
        }
        SignedSum {
            n: self.n,
            terms,
            live_vars: self.live_vars.clone(),
        }
    }

    /// Value of a sum whose terms are all constants: each clause-free term
    /// contributes its sign, each term with an empty clause nothing.
    pub fn scalar_value(&self) -> Result<i64> {
        let mut total = 0i64;
        for t in &self.terms {
            if t.problem.has_empty_clause() {
                continue;
            }
            if !t.problem.is_clause_free() {
                return Err(Error::Precondition(format!(
                    "term {}{} is not constant",
                    t.sign, t.problem
                )));
            }
            total += t.sign.value();
        }
        Ok(total)
    }

    /// Coefficient of `Σ` at assignment `a`: `Σ_j s_j · [S_j(a)]`.
    ///
    /// Values of non-live variables are irrelevant since no term mentions
    /// them.
    pub fn eval_sigma(&self, a: &Assignment) -> Result<i64> {
        let mut total = 0;
        for t in &self.terms {
            if t.problem.eval(a)? {
                total += t.sign.value();
            }
        }
        Ok(total)
    }

    /// Decides `Σ = δ𝟙` by evaluating every assignment of the live variables.
    pub fn is_constant_reference(&self) -> Result<Constancy> {
        self.is_constant_reference_with(&Limits::default())
    }

    pub fn is_constant_reference_with(&self, lim: &Limits) -> Result<Constancy> {
        let live: Vec<u32> = self.live_vars.iter().copied().collect();
        limits::check("is_constant_reference", live.len() as u32, lim.table_max_n)?;
        let mut first = None;
        for bits in 0..1u64 << live.len() {
            let mut a = Assignment::all_false(self.n);
            for (j, &v) in live.iter().enumerate() {
                a.set(v, bits >> j & 1 == 1);
            }
            let value = self.eval_sigma(&a)?;
            match first {
                None => first = Some(value),
                Some(f) if f != value => return Ok(Constancy::NotConstant),
                Some(_) => {}
            }
        }
        Ok(Constancy::Constant(first.unwrap_or(0)))
    }

    fn occurrences(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.n as usize + 1];
        for t in &self.terms {
            for c in t.problem.clauses() {
                for l in c.literals() {
                    count[l.var() as usize] += 1;
                }
            }
        }
        count
    }

    /// Next variable to eliminate; `None` when no live variable occurs in
    /// any clause.
    pub fn pick(&self, heuristic: Heuristic) -> Option<u32> {
        let count = self.occurrences();
        let occurring = self
            .live_vars
            .iter()
            .copied()
            .filter(|&v| count[v as usize] > 0);
        match heuristic {
            Heuristic::Lowest => occurring.min(),
            // max_by_key keeps the last maximum, so reverse to favour low indices
            Heuristic::MaxOcc => occurring.rev().max_by_key(|&v| count[v as usize]),
        }
    }

    fn all_clause_free(&self) -> bool {
        self.terms.iter().all(|t| t.problem.is_clause_free())
    }
}

impl fmt::Display for SignedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", t.sign, t.problem)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub detector: DetectorConfig,
    pub heuristic: Heuristic,
    /// Cancel opposite-sign equal terms at every level. Not part of the
    /// algorithm proper.
    pub cancel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            detector: DetectorConfig::default(),
            heuristic: Heuristic::MaxOcc,
            cancel: false,
        }
    }
}

impl SolverConfig {
    pub fn with_level(level: DetectorLevel) -> Self {
        SolverConfig {
            detector: level.into(),
            ..SolverConfig::default()
        }
    }
}

/// Which return path of the algorithm fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exit {
    /// Every term was refuted: `Σ = 0`, fully symmetric.
    EmptySum,
    /// Only clause-free terms remain: `Σ = δ𝟙`, asymmetric iff `δ ≠ 0`.
    Scalar { value: i64 },
    /// Some term was shown satisfiable.
    KnownSat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub level: usize,
    pub terms_before_simplify: usize,
    pub terms_after_simplify: usize,
    /// Variable eliminated at this level; absent on the final level.
    pub eliminated: Option<u32>,
    pub exit: Option<Exit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub levels: Vec<LevelTrace>,
    pub exit: Exit,
    /// `true` when `Σ ≠ δ𝟙` was established.
    pub asymmetric: bool,
}

/// The recursive symmetry algorithm on a signed sum.
///
/// Returns `true` when the sum was found not to be a scalar multiple of
/// `𝟙`. Each level: refuted terms are dropped; an empty sum returns
/// `false`; a sum of clause-free terms returns `δ ≠ 0`; a term the
/// detector shows satisfiable returns `true`; otherwise a variable is
/// eliminated and the loop continues.
pub fn algorithm1(sum: &SignedSum, cfg: &SolverConfig) -> Trace {
    let mut current = sum.clone();
    let mut levels = Vec::new();
    loop {
        let before = current.len();
        current = current.simplify(cfg.detector);
        if cfg.cancel {
            current = current.cancel_pairs();
        }
        let mut row = LevelTrace {
            level: levels.len(),
            terms_before_simplify: before,
            terms_after_simplify: current.len(),
            eliminated: None,
            exit: None,
        };
        let exit = if current.is_empty() {
            Some(Exit::EmptySum)
        } else if current.all_clause_free() {
            let value = current
                .scalar_value()
                .expect("clause-free terms are constant");
            Some(Exit::Scalar { value })
        } else if current.terms.iter().any(|t| {
            matches!(
                classify(&t.problem, cfg.detector),
                Classification::KnownSat | Classification::Tautology
            )
        }) {
            Some(Exit::KnownSat)
        } else {
            None
        };
        if let Some(exit) = exit {
            row.exit = Some(exit);
            levels.push(row);
            let asymmetric = match exit {
                Exit::EmptySum => false,
                Exit::Scalar { value } => value != 0,
                Exit::KnownSat => true,
            };
            return Trace {
                levels,
                exit,
                asymmetric,
            };
        }
        let v = current
            .pick(cfg.heuristic)
            .expect("a non-constant term mentions a live variable");
        row.eliminated = Some(v);
        levels.push(row);
        current = current.eliminate(v).expect("picked variable is live");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryOutcome {
    pub verdict: Verdict,
    pub trace: Trace,
}

/// Satisfiability of a nonempty problem via [`algorithm1`] on `+f`:
/// unsatisfiable exactly when the chain closes with a symmetric result.
pub fn solve_symmetry(f: &Cnf, cfg: &SolverConfig) -> Result<SymmetryOutcome> {
    let f = f.normalize();
    if f.is_clause_free() {
        return Err(Error::EmptyProblem);
    }
    let trace = algorithm1(&SignedSum::single(f), cfg);
    Ok(SymmetryOutcome {
        verdict: Verdict::from_sat(trace.asymmetric),
        trace,
    })
}

/// The exact cofactor recursion: unsatisfiable iff both restrictions on a
/// variable are unsatisfiable.
pub fn solve_exact_recursion(f: &Cnf) -> Verdict {
    match classify(f, DetectorLevel::L0.into()) {
        Classification::TriviallyUnsat => Verdict::Unsat,
        Classification::Tautology => Verdict::Sat,
        _ => {
            let v = f.occurring_vars()[0];
            let lo = f.restrict(v, false).expect("occurring variable");
            if solve_exact_recursion(&lo).is_sat() {
                return Verdict::Sat;
            }
            let hi = f.restrict(v, true).expect("occurring variable");
            solve_exact_recursion(&hi)
        }
    }
}

/// Term counts after `0..=depth` raw eliminations (no simplification, no
/// cancellation). Variables follow `heuristic`, falling back to the lowest
/// live variable once none occurs.
pub fn growth_curve(sum: &SignedSum, heuristic: Heuristic, depth: usize) -> Result<Vec<usize>> {
    let mut current = sum.clone();
    let mut counts = vec![current.len()];
    for _ in 0..depth {
        let Some(v) = current
            .pick(heuristic)
            .or_else(|| current.live_vars.iter().next().copied())
        else {
            break;
        };
        current = current.eliminate(v)?;
        counts.push(current.len());
    }
    Ok(counts)
}

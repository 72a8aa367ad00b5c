//! Method dispatch, the cross-check harness and the benchmark suite.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cnf::{five_clause_example, random_ksat, write_dimacs, Assignment, Cnf};
use crate::error::Result;
use crate::limits::Limits;
use crate::oracle::{brute_force_with, dpll, Verdict};
use crate::symsolver::{
    algorithm1, growth_curve, solve_symmetry, DetectorLevel, Heuristic, SignedSum, SolverConfig,
    Trace,
};
use crate::tabalg::compile_cnf_with;

pub const XCHECK_SCHEMA: &str = "clifsat.xcheck/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Recursive signed-sum symmetry algorithm.
    Symmetry,
    Dpll,
    Brute,
    /// Reflection invariance of the compiled truth table.
    Table,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Symmetry => "symmetry",
            Method::Dpll => "dpll",
            Method::Brute => "brute",
            Method::Table => "table",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solved {
    pub method: Method,
    pub verdict: Verdict,
    pub witness: Option<Assignment>,
    /// Model count, when the method computes it.
    pub model_count: Option<u64>,
    pub trace: Option<Trace>,
    pub note: Option<String>,
}

/// Satisfiability by reflection invariance: a nonempty normalized problem
/// is unsatisfiable iff its idempotent is fixed by every reflection. A
/// problem with no clauses left after normalization is a tautology.
pub fn solve_table(f: &Cnf, lim: &Limits) -> Result<Verdict> {
    let f = f.normalize();
    if f.is_clause_free() {
        return Ok(Verdict::Sat);
    }
    let s = compile_cnf_with(&f, lim)?;
    Ok(Verdict::from_sat(!s.is_symmetric_all()))
}

pub fn solve(f: &Cnf, method: Method, cfg: &SolverConfig, lim: &Limits) -> Result<Solved> {
    let mut out = Solved {
        method,
        verdict: Verdict::Unsat,
        witness: None,
        model_count: None,
        trace: None,
        note: None,
    };
    match method {
        Method::Brute => {
            let r = brute_force_with(f, lim)?;
            out.verdict = r.verdict;
            out.witness = r.witness;
            out.model_count = Some(r.model_count);
        }
        Method::Dpll => {
            let r = dpll(f);
            out.verdict = r.verdict;
            out.witness = r.witness;
        }
        Method::Table => {
            out.verdict = solve_table(f, lim)?;
            let s = compile_cnf_with(f, lim)?;
            out.model_count = Some(s.count_models());
            out.witness = s.dnf_terms().into_iter().next();
        }
        Method::Symmetry => {
            if !f.is_nonempty_normalized() {
                out.verdict = Verdict::Sat;
                out.witness = Some(Assignment::all_false(f.num_vars()));
                out.note = Some("no clauses after normalization: tautology".into());
            } else {
                let r = solve_symmetry(f, cfg)?;
                out.verdict = r.verdict;
                out.trace = Some(r.trace);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XcheckConfig {
    pub n: u32,
    pub m: usize,
    pub k: u32,
    pub count: usize,
    pub seed: u64,
    pub detectors: Vec<DetectorLevel>,
    pub heuristic: Heuristic,
    /// Also run the five-clause unsatisfiable instance (padded to `n`
    /// variables when `n ≥ 3`).
    pub include_five_clause: bool,
}

impl Default for XcheckConfig {
    fn default() -> Self {
        XcheckConfig {
            n: 8,
            m: 34,
            k: 3,
            count: 200,
            seed: 0,
            detectors: DetectorLevel::ALL.to_vec(),
            heuristic: Heuristic::MaxOcc,
            include_five_clause: false,
        }
    }
}

/// Per-instance row of the faithfulness report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance: String,
    pub truth: Verdict,
    pub dpll: Verdict,
    pub table: Verdict,
    #[serde(rename = "verdict_L0", skip_serializing_if = "Option::is_none")]
    pub verdict_l0: Option<Verdict>,
    #[serde(rename = "verdict_L1", skip_serializing_if = "Option::is_none")]
    pub verdict_l1: Option<Verdict>,
    #[serde(rename = "verdict_L2", skip_serializing_if = "Option::is_none")]
    pub verdict_l2: Option<Verdict>,
    pub agree: AgreeFlags,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AgreeFlags {
    pub dpll: bool,
    pub table: bool,
    #[serde(rename = "L0", skip_serializing_if = "Option::is_none")]
    pub l0: Option<bool>,
    #[serde(rename = "L1", skip_serializing_if = "Option::is_none")]
    pub l1: Option<bool>,
    #[serde(rename = "L2", skip_serializing_if = "Option::is_none")]
    pub l2: Option<bool>,
}

/// One row of the agreement matrix: a method versus the brute-force truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub method: String,
    pub agree: usize,
    pub total: usize,
    pub rate: f64,
}

/// An instance on which some method disagreed with the truth, with the
/// DIMACS text needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub instance: String,
    pub method: String,
    pub truth: Verdict,
    pub verdict: Verdict,
    pub dimacs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XcheckReport {
    pub schema: String,
    pub seed: u64,
    pub config: XcheckConfig,
    pub agreement: Vec<AgreementRow>,
    pub disagreements: Vec<Disagreement>,
    pub records: Vec<InstanceRecord>,
}

impl XcheckReport {
    pub fn row(&self, method: &str) -> Option<&AgreementRow> {
        self.agreement.iter().find(|r| r.method == method)
    }
}

/// Seed of instance `i` in a run seeded with `seed`.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// The named instances of a cross-check run, in report order.
pub fn xcheck_instances(cfg: &XcheckConfig) -> Result<Vec<(String, Cnf)>> {
    let mut out = Vec::with_capacity(cfg.count + 1);
    if cfg.include_five_clause {
        let base = five_clause_example();
        let n = cfg.n.max(3);
        out.push((
            "five-clause".to_string(),
            Cnf::new(n, base.clauses().to_vec())?,
        ));
    }
    for i in 0..cfg.count {
        let s = instance_seed(cfg.seed, i);
        out.push((format!("seed-{s}"), random_ksat(cfg.n, cfg.m, cfg.k, s)?));
    }
    Ok(out)
}

/// Runs every instance through brute force, DPLL, the table symmetry test
/// and the symmetry algorithm at each requested detector level.
pub fn xcheck(cfg: &XcheckConfig, lim: &Limits) -> Result<XcheckReport> {
    let instances = xcheck_instances(cfg)?;
    let mut records = Vec::with_capacity(instances.len());
    let mut disagreements = Vec::new();
    for (name, f) in &instances {
        records.push(check_instance(name, f, cfg, lim, &mut disagreements)?);
    }

    let total = records.len();
    let rate = |agree: usize| {
        if total == 0 {
            1.0
        } else {
            agree as f64 / total as f64
        }
    };
    let mut agreement = Vec::new();
    let mut push = |method: String, agree: usize| {
        agreement.push(AgreementRow {
            method,
            agree,
            total,
            rate: rate(agree),
        })
    };
    push(
        "dpll".into(),
        records.iter().filter(|r| r.agree.dpll).count(),
    );
    push(
        "table".into(),
        records.iter().filter(|r| r.agree.table).count(),
    );
    for &level in &cfg.detectors {
        let agree = records
            .iter()
            .filter(|r| level_flag(&r.agree, level) == Some(true))
            .count();
        push(format!("symmetry-{level}"), agree);
    }

    Ok(XcheckReport {
        schema: XCHECK_SCHEMA.into(),
        seed: cfg.seed,
        config: cfg.clone(),
        agreement,
        disagreements,
        records,
    })
}

fn level_flag(flags: &AgreeFlags, level: DetectorLevel) -> Option<bool> {
    match level {
        DetectorLevel::L0 => flags.l0,
        DetectorLevel::L1 => flags.l1,
        DetectorLevel::L2 => flags.l2,
    }
}

fn check_instance(
    name: &str,
    f: &Cnf,
    cfg: &XcheckConfig,
    lim: &Limits,
    disagreements: &mut Vec<Disagreement>,
) -> Result<InstanceRecord> {
    let truth = brute_force_with(f, lim)?.verdict;
    let mut note = |method: String, verdict: Verdict| {
        if verdict != truth {
            disagreements.push(Disagreement {
                instance: name.to_string(),
                method,
                truth,
                verdict,
                dimacs: write_dimacs(f),
            });
        }
        verdict == truth
    };
    let dpll_v = dpll(f).verdict;
    let table_v = solve_table(f, lim)?;
    let mut record = InstanceRecord {
        instance: name.to_string(),
        truth,
        dpll: dpll_v,
        table: table_v,
        verdict_l0: None,
        verdict_l1: None,
        verdict_l2: None,
        agree: AgreeFlags {
            dpll: note("dpll".into(), dpll_v),
            table: note("table".into(), table_v),
            ..AgreeFlags::default()
        },
    };
    for &level in &cfg.detectors {
        let solver = SolverConfig {
            heuristic: cfg.heuristic,
            ..SolverConfig::with_level(level)
        };
        let v = solve(f, Method::Symmetry, &solver, lim)?.verdict;
        let ok = note(format!("symmetry-{level}"), v);
        match level {
            DetectorLevel::L0 => (record.verdict_l0, record.agree.l0) = (Some(v), Some(ok)),
            DetectorLevel::L1 => (record.verdict_l1, record.agree.l1) = (Some(v), Some(ok)),
            DetectorLevel::L2 => (record.verdict_l2, record.agree.l2) = (Some(v), Some(ok)),
        }
    }
    Ok(record)
}

/// Instances for a benchmark sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSuite {
    pub n_values: Vec<u32>,
    /// Clause-to-variable ratio; `m = round(ratio · n)`.
    pub ratio: f64,
    pub k: u32,
    pub per_n: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub detector: DetectorLevel,
    pub heuristic: Heuristic,
}

impl Default for BenchSuite {
    fn default() -> Self {
        BenchSuite {
            n_values: (4..=10).collect(),
            ratio: 4.3,
            k: 3,
            per_n: 5,
            seed: 0,
            methods: vec![Method::Brute, Method::Dpll, Method::Table, Method::Symmetry],
            detector: DetectorLevel::L1,
            heuristic: Heuristic::MaxOcc,
        }
    }
}

/// One CSV line of benchmark output.
///
/// `runtime` rows time a method on an instance; `growth` rows give the raw
/// term count after `depth` eliminations against the bound `2^depth`;
/// `trace` rows give the symmetry algorithm's term count after
/// simplification at each level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub record: String,
    pub n: u32,
    pub m: usize,
    pub seed: u64,
    pub method: Option<String>,
    pub verdict: Option<Verdict>,
    pub micros: Option<u128>,
    pub depth: Option<usize>,
    pub terms: Option<usize>,
    pub bound: Option<u64>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub fn run_bench(suite: &BenchSuite, lim: &Limits) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    let solver = SolverConfig {
        heuristic: suite.heuristic,
        ..SolverConfig::with_level(suite.detector)
    };
    for &n in &suite.n_values {
        let m = (suite.ratio * f64::from(n)).round() as usize;
        for i in 0..suite.per_n {
            let seed = instance_seed(suite.seed, i);
            let f = random_ksat(n, m, suite.k.min(n), seed)?;
            let blank = BenchRow {
                record: String::new(),
                n,
                m,
                seed,
                method: None,
                verdict: None,
                micros: None,
                depth: None,
                terms: None,
                bound: None,
            };
            for &method in &suite.methods {
                let (solved, took) = timed(|| solve(&f, method, &solver, lim));
                let solved = solved?;
                rows.push(BenchRow {
                    record: "runtime".into(),
                    method: Some(method.to_string()),
                    verdict: Some(solved.verdict),
                    micros: Some(took.as_micros()),
                    ..blank.clone()
                });
            }
            let curve = growth_curve(&SignedSum::single(f.clone()), suite.heuristic, n as usize)?;
            for (depth, &terms) in curve.iter().enumerate() {
                rows.push(BenchRow {
                    record: "growth".into(),
                    depth: Some(depth),
                    terms: Some(terms),
                    bound: Some(1u64 << depth),
                    ..blank.clone()
                });
            }
            if f.is_nonempty_normalized() {
                let trace = algorithm1(&SignedSum::single(f.normalize()), &solver);
                for level in &trace.levels {
                    rows.push(BenchRow {
                        record: "trace".into(),
                        method: Some(format!("symmetry-{}", suite.detector)),
                        depth: Some(level.level),
                        terms: Some(level.terms_after_simplify),
                        bound: Some(1u64 << level.level),
                        ..blank.clone()
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_clause_all_methods_unsat() {
        let f = five_clause_example();
        let lim = Limits::default();
        for method in [Method::Brute, Method::Dpll, Method::Table, Method::Symmetry] {
            let r = solve(&f, method, &SolverConfig::default(), &lim).unwrap();
            assert_eq!(r.verdict, Verdict::Unsat, "{method}");
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn table_method_on_tautology() {
        let lim = Limits::default();
        assert_eq!(solve_table(&Cnf::tautology(3), &lim).unwrap(), Verdict::Sat);
        let taut = Cnf::from_dimacs(2, &[&[1, -1]]).unwrap();
        assert_eq!(solve_table(&taut, &lim).unwrap(), Verdict::Sat);
        let r = solve(&taut, Method::Symmetry, &SolverConfig::default(), &lim).unwrap();
        assert_eq!(r.verdict, Verdict::Sat);
        assert!(r.note.is_some());
    }

    #[test]
    fn xcheck_small_run() {
        let cfg = XcheckConfig {
            n: 6,
            m: 26,
            count: 30,
            seed: 11,
            include_five_clause: true,
            ..XcheckConfig::default()
        };
        let r = xcheck(&cfg, &Limits::default()).unwrap();
        assert_eq!(r.records.len(), 31);
        assert_eq!(r.records[0].truth, Verdict::Unsat);
        assert_eq!(r.row("dpll").unwrap().agree, 31);
        assert_eq!(r.row("table").unwrap().agree, 31);
        assert_eq!(r.row("symmetry-L2").unwrap().agree, 31);
        let again = xcheck(&cfg, &Limits::default()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn bench_rows_respect_growth_bound() {
        let suite = BenchSuite {
            n_values: vec![4, 5],
            per_n: 2,
            ..BenchSuite::default()
        };
        let rows = run_bench(&suite, &Limits::default()).unwrap();
        assert!(rows.iter().any(|r| r.record == "runtime"));
        for r in rows.iter().filter(|r| r.record == "growth") {
            assert_eq!(r.terms.unwrap() as u64, r.bound.unwrap());
        }
        for r in rows.iter().filter(|r| r.record == "trace") {
            assert!(r.terms.unwrap() as u64 <= r.bound.unwrap());
        }
    }
}

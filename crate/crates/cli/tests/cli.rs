use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clifsat::parse_dimacs;
use serde_json::Value;
use tempfile::TempDir;

const FIVE_CLAUSE: &str =
    "c five-clause example\np cnf 3 5\n1 -2 0\n2 3 0\n-1 -3 0\n-1 -2 3 0\n1 2 -3 0\n";

fn clifsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifsat"))
        .args(args)
        .env_remove("CLIFSAT_MAX_N")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn five_clause_is_unsat_for_every_method() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex.cnf", FIVE_CLAUSE);
    for method in ["symmetry", "table", "dpll", "brute"] {
        for detector in ["l0", "l1", "l2"] {
            let out = clifsat(&["solve", s(&f), "--method", method, "--detector", detector]);
            assert_eq!(out.status.code(), Some(20), "{method} {detector}");
            assert!(String::from_utf8_lossy(&out.stdout).starts_with("UNSAT"));
        }
    }
}

#[test]
fn unit_clause_is_sat() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "unit.cnf", "p cnf 1 1\n1 0\n");
    let out = clifsat(&["solve", s(&f), "--method", "symmetry", "--format", "json"]);
    assert_eq!(out.status.code(), Some(10));
    let report = json(&out);
    assert_eq!(report["schema"], "clifsat.solve/1");
    assert_eq!(report["verdict"], "SAT");
    assert_eq!(report["trace"]["asymmetric"], true);

    let out = clifsat(&["solve", s(&f), "--method", "brute", "--format", "json"]);
    assert_eq!(out.status.code(), Some(10));
    assert_eq!(json(&out)["witness"], serde_json::json!([1]));
}

#[test]
fn solve_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_clifsat"))
        .args(["solve", "-", "--method", "dpll"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(FIVE_CLAUSE.as_bytes())
        .unwrap();
    assert_eq!(child.wait_with_output().unwrap().status.code(), Some(20));
}

#[test]
fn compile_reports_truth_table() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex.cnf", FIVE_CLAUSE);
    let out = clifsat(&["--format", "json", "compile", s(&f)]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["schema"], "clifsat.compile/1");
    assert_eq!(report["bits_hex"], "00");
    assert_eq!(report["model_count"], 0);

    let g = write(&dir, "or.cnf", "p cnf 4 1\n1 2 0\n");
    let report = json(&clifsat(&["--format", "json", "compile", s(&g)]));
    assert_eq!(report["bits_hex"], "eeee");
    assert_eq!(report["model_count"], 12);
}

#[test]
fn symmetry_lists_invariant_variables() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", "p cnf 3 1\n1 2 0\n");
    let out = clifsat(&["--format", "json", "symmetry", s(&f)]);
    assert_eq!(out.status.code(), Some(10));
    let report = json(&out);
    assert_eq!(report["invariant"], serde_json::json!([3]));
    assert_eq!(report["symmetric_all"], false);

    let g = write(&dir, "ex.cnf", FIVE_CLAUSE);
    assert_eq!(clifsat(&["symmetry", s(&g)]).status.code(), Some(20));
}

#[test]
fn gen_writes_valid_dimacs() {
    let out = clifsat(&["gen", "--n", "3", "--m", "5", "--k", "3", "--seed", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let f = parse_dimacs(&text).unwrap();
    assert_eq!((f.num_vars(), f.num_clauses()), (3, 5));
    assert!(f.clauses().iter().all(|c| c.len() == 3));
    // same seed, same bytes
    assert_eq!(
        clifsat(&["gen", "--n", "3", "--m", "5", "--seed", "9"]).stdout,
        out.stdout
    );
}

#[test]
fn verify_passes() {
    let out = clifsat(&["verify", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["schema"], "clifsat.verify/1");
    assert_eq!(report["all_pass"], true);
    assert!(report["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn xcheck_dumps_reproducible_disagreements() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("dump");
    let report_path = dir.path().join("report.json");
    let out = clifsat(&[
        "xcheck",
        "--n",
        "8",
        "--m",
        "34",
        "--count",
        "200",
        "--seed",
        "0",
        "--five-clause",
        "--dump-dir",
        s(&dump),
        "--output",
        s(&report_path),
    ]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["schema"], "clifsat.xcheck/1");
    assert_eq!(report["seed"], 0);
    let rows = report["agreement"].as_array().unwrap();
    let rate = |m: &str| rows.iter().find(|r| r["method"] == m).unwrap()["rate"].as_f64();
    assert_eq!(rate("symmetry-L2"), Some(1.0));
    assert_eq!(rate("dpll"), Some(1.0));
    assert_eq!(rate("table"), Some(1.0));

    let five = &report["records"][0];
    assert_eq!(five["instance"], "five-clause");
    for key in [
        "truth",
        "dpll",
        "table",
        "verdict_L0",
        "verdict_L1",
        "verdict_L2",
    ] {
        assert_eq!(five[key], "UNSAT", "{key}");
    }

    // each dumped file reproduces its disagreement when re-run
    let disagreements = report["disagreements"].as_array().unwrap();
    assert_eq!(fs::read_dir(&dump).unwrap().count(), disagreements.len());
    for d in disagreements {
        let method = d["method"].as_str().unwrap();
        let level = method.strip_prefix("symmetry-").unwrap().to_lowercase();
        let file = dump.join(format!(
            "{}-{}.cnf",
            d["instance"].as_str().unwrap(),
            method
        ));
        let rerun = clifsat(&[
            "solve",
            s(&file),
            "--method",
            "symmetry",
            "--detector",
            &level,
        ]);
        let truth = clifsat(&["solve", s(&file), "--method", "brute"]);
        let code = |v: &Value| if v == "SAT" { Some(10) } else { Some(20) };
        assert_eq!(rerun.status.code(), code(&d["verdict"]));
        assert_eq!(truth.status.code(), code(&d["truth"]));
    }
}

#[test]
fn bench_growth_matches_bound() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = clifsat(&[
        "bench",
        "--n-min",
        "4",
        "--n-max",
        "6",
        "--per-n",
        "2",
        "--output",
        s(&csv_path),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (record, terms, bound) = (col("record"), col("terms"), col("bound"));
    let mut growth = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        match cells[record] {
            "growth" => {
                assert_eq!(cells[terms], cells[bound], "{line}");
                growth += 1;
            }
            "trace" => {
                let t: u64 = cells[terms].parse().unwrap();
                let b: u64 = cells[bound].parse().unwrap();
                assert!(t <= b, "{line}");
            }
            _ => {}
        }
    }
    // n + 1 depths per instance, two instances per n
    assert_eq!(growth, 2 * (5 + 6 + 7));
}

#[test]
fn errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.cnf", "p cnf x 1\n1 0\n");
    let out = clifsat(&["solve", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    assert_eq!(
        clifsat(&["solve", "/nonexistent.cnf"]).status.code(),
        Some(1)
    );

    let f = write(&dir, "ex.cnf", FIVE_CLAUSE);
    let guarded = clifsat(&["--max-n", "2", "solve", s(&f), "--method", "table"]);
    assert_eq!(guarded.status.code(), Some(1));
    let env_guarded = Command::new(env!("CARGO_BIN_EXE_clifsat"))
        .args(["solve", s(&f), "--method", "brute"])
        .env("CLIFSAT_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(env_guarded.status.code(), Some(1));
    // the flag wins over the environment
    let overridden = Command::new(env!("CARGO_BIN_EXE_clifsat"))
        .args(["--max-n", "3", "solve", s(&f), "--method", "brute"])
        .env("CLIFSAT_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(20));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ex.cnf", FIVE_CLAUSE);
    let args = ["--format", "json", "solve", s(&f), "--detector", "l0"];
    assert_eq!(clifsat(&args).stdout, clifsat(&args).stdout);
    let x = ["--format", "json", "xcheck", "--count", "20", "--seed", "5"];
    assert_eq!(clifsat(&x).stdout, clifsat(&x).stdout);
}

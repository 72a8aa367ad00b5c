use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use clifsat::clifford::{verify_relations_with, DEFAULT_SAMPLES};
use clifsat::cnf::parse_dimacs_with_warnings;
use clifsat::harness::{run_bench, solve, xcheck, BenchSuite, Method, XcheckConfig};
use clifsat::symsolver::SolverConfig;
use clifsat::{random_ksat, write_dimacs, Cnf, DetectorLevel, Heuristic, Limits, Verdict};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;

#[derive(Parser)]
#[command(
    name = "clifsat",
    version,
    about = "SAT via reflection symmetry of Clifford idempotents"
)]
struct Cli {
    /// Cap on the variable count for every dense backend (overrides CLIFSAT_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a DIMACS problem. Exits 10 for SAT, 20 for UNSAT.
    Solve(SolveArgs),
    /// Print the truth table of the compiled idempotent.
    Compile { input: PathBuf },
    /// Check reflection invariance of the compiled idempotent per variable.
    Symmetry { input: PathBuf },
    /// Check the algebra identities of the exact Clifford model.
    Verify(VerifyArgs),
    /// Cross-check every method against brute force on random instances.
    Xcheck(XcheckArgs),
    /// Write a random k-SAT instance as DIMACS.
    Gen(GenArgs),
    /// Time the methods and record term growth as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Symmetry,
    Dpll,
    Brute,
    Table,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Symmetry => Method::Symmetry,
            MethodArg::Dpll => Method::Dpll,
            MethodArg::Brute => Method::Brute,
            MethodArg::Table => Method::Table,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    L0,
    L1,
    L2,
}

impl From<LevelArg> for DetectorLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::L0 => DetectorLevel::L0,
            LevelArg::L1 => DetectorLevel::L1,
            LevelArg::L2 => DetectorLevel::L2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HeuristicArg {
    Maxocc,
    Lowest,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::Maxocc => Heuristic::MaxOcc,
            HeuristicArg::Lowest => Heuristic::Lowest,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS file, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Symmetry)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = LevelArg::L1)]
    detector: LevelArg,
    #[arg(long, value_enum, default_value_t = HeuristicArg::Maxocc)]
    heuristic: HeuristicArg,
    /// Cancel +S against -S between levels (comparison mode only).
    #[arg(long)]
    cancel: bool,
    /// Recorded in the report; every method is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of variables (generators come in pairs, 2n in total).
    #[arg(long, default_value_t = 3)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Args)]
struct XcheckArgs {
    #[arg(long, default_value_t = 8)]
    n: u32,
    #[arg(long, default_value_t = 34)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [LevelArg::L0, LevelArg::L1, LevelArg::L2])]
    detectors: Vec<LevelArg>,
    #[arg(long, value_enum, default_value_t = HeuristicArg::Maxocc)]
    heuristic: HeuristicArg,
    /// Add the five-clause unsatisfiable example to the run.
    #[arg(long)]
    five_clause: bool,
    /// Write each disagreeing instance here as DIMACS.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    /// Write the full JSON report here.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 4)]
    n_min: u32,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    #[arg(long, default_value_t = 4.3)]
    ratio: f64,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 5)]
    per_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Brute, MethodArg::Dpll, MethodArg::Table, MethodArg::Symmetry])]
    methods: Vec<MethodArg>,
    #[arg(long, value_enum, default_value_t = LevelArg::L1)]
    detector: LevelArg,
    #[arg(long, value_enum, default_value_t = HeuristicArg::Maxocc)]
    heuristic: HeuristicArg,
    /// CSV destination; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct SolveReport<'a> {
    schema: &'static str,
    instance: String,
    n: u32,
    m: usize,
    method: Method,
    detector: DetectorLevel,
    heuristic: Heuristic,
    seed: u64,
    verdict: Verdict,
    witness: Option<Vec<i64>>,
    model_count: Option<u64>,
    note: Option<&'a str>,
    trace: Option<&'a clifsat::symsolver::Trace>,
}

#[derive(Serialize)]
struct CompileReport {
    schema: &'static str,
    n: u32,
    bits_hex: String,
    model_count: u64,
}

#[derive(Serialize)]
struct SymmetryReport {
    schema: &'static str,
    n: u32,
    nonempty: bool,
    /// Variables whose reflection leaves the idempotent unchanged.
    invariant: Vec<u32>,
    symmetric_all: bool,
    verdict: Verdict,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema: &'static str,
    n: u32,
    seed: u64,
    samples: usize,
    all_pass: bool,
    checks: &'a clifsat::clifford::Report,
}

fn limits(cli: &Cli) -> Limits {
    cli.max_n.map_or_else(Limits::from_env, Limits::uniform)
}

fn read_problem(path: &Path) -> Result<(String, Cnf)> {
    let (name, text) = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        ("<stdin>".to_string(), s)
    } else {
        let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        (path.display().to_string(), s)
    };
    let (f, warnings) =
        parse_dimacs_with_warnings(&text).with_context(|| format!("parsing {name}"))?;
    for w in warnings {
        log::warn!("{name}: {w}");
    }
    Ok((name, f))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Sat => EXIT_SAT,
        Verdict::Unsat => EXIT_UNSAT,
    }
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<u8> {
    let (name, f) = read_problem(&args.input)?;
    let cfg = SolverConfig {
        heuristic: args.heuristic.into(),
        cancel: args.cancel,
        ..SolverConfig::with_level(args.detector.into())
    };
    let solved = solve(&f, args.method.into(), &cfg, &limits(cli))?;
    let report = SolveReport {
        schema: "clifsat.solve/1",
        instance: name,
        n: f.num_vars(),
        m: f.num_clauses(),
        method: solved.method,
        detector: cfg.detector.level,
        heuristic: cfg.heuristic,
        seed: args.seed,
        verdict: solved.verdict,
        witness: solved.witness.as_ref().map(|w| w.to_dimacs()),
        model_count: solved.model_count,
        note: solved.note.as_deref(),
        trace: solved.trace.as_ref(),
    };
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("{}", report.verdict);
            if let Some(w) = &report.witness {
                let lits: Vec<String> = w.iter().map(i64::to_string).collect();
                println!("witness: {}", lits.join(" "));
            }
            if let Some(c) = report.model_count {
                println!("models: {c}");
            }
            let mut meta = format!("method: {}", report.method);
            if solved.method == Method::Symmetry {
                meta += &format!(
                    " detector: {} heuristic: {:?}",
                    report.detector, report.heuristic
                );
            }
            println!("{meta} seed: {}", report.seed);
            if let Some(trace) = report.trace {
                println!("levels: {} exit: {:?}", trace.levels.len(), trace.exit);
            }
            if let Some(note) = report.note {
                println!("note: {note}");
            }
        }
    }
    Ok(verdict_code(report.verdict))
}

fn cmd_compile(cli: &Cli, input: &Path) -> Result<u8> {
    let (_, f) = read_problem(input)?;
    let s = clifsat::tabalg::compile_cnf_with(&f, &limits(cli))?;
    let report = CompileReport {
        schema: "clifsat.compile/1",
        n: s.num_vars(),
        bits_hex: s.to_hex(),
        model_count: s.count_models(),
    };
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("n: {}", report.n);
            println!("bits_hex: {}", report.bits_hex);
            println!("models: {}", report.model_count);
        }
    }
    Ok(0)
}

fn cmd_symmetry(cli: &Cli, input: &Path) -> Result<u8> {
    let (_, f) = read_problem(input)?;
    let g = f.normalize();
    let s = clifsat::tabalg::compile_cnf_with(&g, &limits(cli))?;
    let mut invariant = Vec::new();
    for v in 1..=f.num_vars() {
        if s.is_symmetric_in(v)? {
            invariant.push(v);
        }
    }
    let nonempty = !g.is_clause_free();
    let symmetric_all = s.is_symmetric_all();
    let report = SymmetryReport {
        schema: "clifsat.symmetry/1",
        n: f.num_vars(),
        nonempty,
        invariant,
        symmetric_all,
        // an empty normalized problem compiles to 𝟙: symmetric yet satisfiable
        verdict: Verdict::from_sat(!nonempty || !symmetric_all),
    };
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            let vars: Vec<String> = report.invariant.iter().map(u32::to_string).collect();
            println!("{}", report.verdict);
            println!("invariant under: [{}]", vars.join(", "));
            println!(
                "symmetric in all {} variables: {}",
                report.n, report.symmetric_all
            );
        }
    }
    Ok(verdict_code(report.verdict))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    let lim = limits(cli);
    if args.n > lim.clifford_max_n {
        bail!(
            "n = {} exceeds the Clifford guard {}",
            args.n,
            lim.clifford_max_n
        );
    }
    let checks = verify_relations_with(args.n, args.seed, args.samples)?;
    let report = VerifyReport {
        schema: "clifsat.verify/1",
        n: args.n,
        seed: args.seed,
        samples: args.samples,
        all_pass: checks.all_pass(),
        checks: &checks,
    };
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            for c in &checks.checks {
                let status = if c.counterexample.is_none() {
                    "pass"
                } else {
                    "FAIL"
                };
                println!("{status}  {}", c.identity);
                if let Some(cx) = &c.counterexample {
                    println!("      counterexample: {cx}");
                }
            }
            println!("seed: {}", args.seed);
        }
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

fn cmd_xcheck(cli: &Cli, args: &XcheckArgs) -> Result<u8> {
    let cfg = XcheckConfig {
        n: args.n,
        m: args.m,
        k: args.k,
        count: args.count,
        seed: args.seed,
        detectors: args.detectors.iter().map(|&l| l.into()).collect(),
        heuristic: args.heuristic.into(),
        include_five_clause: args.five_clause,
    };
    let report = xcheck(&cfg, &limits(cli))?;
    if let Some(dir) = &args.dump_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for d in &report.disagreements {
            let path = dir.join(format!("{}-{}.cnf", d.instance, d.method));
            fs::write(&path, &d.dimacs).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let Some(out) = &args.output {
        fs::write(out, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", out.display()))?;
    }
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!(
                "instances: {} (n={} m={} k={} seed={})",
                report.records.len(),
                cfg.n,
                cfg.m,
                cfg.k,
                report.seed
            );
            for row in &report.agreement {
                println!(
                    "{:<12} {:>5}/{:<5} {:6.2}%",
                    row.method,
                    row.agree,
                    row.total,
                    100.0 * row.rate
                );
            }
            println!("disagreements: {}", report.disagreements.len());
        }
    }
    Ok(0)
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    let f = random_ksat(args.n, args.m, args.k, args.seed)?;
    let text = format!(
        "c random {}-SAT seed {}\n{}",
        args.k,
        args.seed,
        write_dimacs(&f)
    );
    write_output(args.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_bench(cli: &Cli, args: &BenchArgs) -> Result<u8> {
    if args.n_min > args.n_max {
        bail!("--n-min {} is above --n-max {}", args.n_min, args.n_max);
    }
    let suite = BenchSuite {
        n_values: (args.n_min..=args.n_max).collect(),
        ratio: args.ratio,
        k: args.k,
        per_n: args.per_n,
        seed: args.seed,
        methods: args.methods.iter().map(|&m| m.into()).collect(),
        detector: args.detector.into(),
        heuristic: args.heuristic.into(),
    };
    log::info!("bench seed {}", suite.seed);
    let rows = run_bench(&suite, &limits(cli))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row)?;
    }
    let text = String::from_utf8(w.into_inner()?)?;
    write_output(args.output.as_deref(), &text)?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(cli, a),
        Command::Compile { input } => cmd_compile(cli, input),
        Command::Symmetry { input } => cmd_symmetry(cli, input),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Xcheck(a) => cmd_xcheck(cli, a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(cli, a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! `setopt`: preferred extensions of argumentation frameworks, subset and
//! cardinality optima of CNF knowledge bases, and benchmark runs.
//!
//! Exit codes: 0 on success, 1 on input or usage errors, 2 when a resource
//! cap (solution cap or timeout) aborted the run.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use setopt_core::af::{self, format_extensions, AfError};
use setopt_core::bench::{self, SuiteConfig, SystemConfig};
use setopt_core::dimacs;
use setopt_core::enumerate::{self, EnumError, EnumerationConfig};
use setopt_core::sat::SolverConfig;
use setopt_core::Criterion;

const PROBLEMS: &[&str] = &["EE-PR", "SE-PR", "SE-GR"];
const FORMATS: &[&str] = &["apx"];

#[derive(Parser, Debug)]
#[command(name = "setopt", version, about = "Subset-optimal enumeration by iterated cardinality optimization")]
struct Cli {
    /// List supported problems and exit
    #[arg(long)]
    problems: bool,
    /// List supported input formats and exit
    #[arg(long)]
    formats: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an argumentation problem on an apx file
    Solve(SolveArgs),
    /// Compute Setmax/Setmin/Cardmax/Cardmin of a DIMACS knowledge base
    Optimize(OptimizeArgs),
    /// Run the preferred-extension benchmark over a directory of apx files
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Seed for randomized branching; 0 keeps branching deterministic by activity
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the per-iteration enumeration trace to standard error
    #[arg(long)]
    trace: bool,
    /// Print one line per solver restart to standard error
    #[arg(long)]
    solver_trace: bool,
    /// Solutions taken per cardinality-optimization call
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    batch_limit: Option<u64>,
    /// Abort with exit code 2 once more solutions than this would be printed
    #[arg(long)]
    max_solutions: Option<usize>,
    /// Wallclock limit in seconds; exceeding it exits with code 2
    #[arg(long)]
    timeout: Option<f64>,
}

impl RunArgs {
    fn config(&self, start: Instant) -> EnumerationConfig {
        EnumerationConfig {
            batch_limit: self.batch_limit.map(|b| b as usize),
            max_solutions: self.max_solutions,
            deadline: self.timeout.map(|t| start + Duration::from_secs_f64(t)),
            solver: SolverConfig {
                seed: self.seed,
                random_var_freq: if self.seed == 0 { 0.0 } else { 0.01 },
                trace: self.solver_trace,
                ..SolverConfig::default()
            },
            ..EnumerationConfig::default()
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Problem: EE-PR, SE-PR or SE-GR
    #[arg(long = "p", short = 'p')]
    problem: String,
    /// Input framework
    #[arg(long = "f", short = 'f')]
    file: PathBuf,
    /// Input format
    #[arg(long = "fo", default_value = "apx")]
    format: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Mode {
    Setmax,
    Setmin,
    Cardmax,
    Cardmin,
}

impl From<Mode> for Criterion {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Setmax => Criterion::Setmax,
            Mode::Setmin => Criterion::Setmin,
            Mode::Cardmax => Criterion::Cardmax,
            Mode::Cardmin => Criterion::Cardmin,
        }
    }
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Knowledge base in DIMACS CNF
    #[arg(long)]
    cnf: PathBuf,
    /// Relevant atoms; defaults to every atom
    #[arg(long)]
    relevant: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Directory of .apx instances
    #[arg(long)]
    dir: PathBuf,
    /// Per-run wallclock cutoff in seconds
    #[arg(long, default_value_t = bench::DEFAULT_CUTOFF)]
    cutoff: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write one JSON record per run to this file
    #[arg(long)]
    report: Option<PathBuf>,
    /// Cross-check outputs against the brute-force oracle on small instances
    #[arg(long)]
    verify: bool,
    /// Built-in system as NAME or NAME:BATCH_LIMIT; repeatable
    #[arg(long = "system")]
    systems: Vec<String>,
    /// External ICCMA-style solver as NAME=COMMAND [ARGS...]; repeatable
    #[arg(long = "external")]
    externals: Vec<String>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::SolutionCap { .. } | EnumError::Interrupted => Failure::Resource(e.to_string()),
            EnumError::InvalidBatchLimit => Failure::Input(e.to_string()),
        }
    }
}

impl From<AfError> for Failure {
    fn from(e: AfError) -> Self {
        match e {
            AfError::Enumeration(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn solve(args: &SolveArgs) -> Result<(), Failure> {
    let start = Instant::now();
    if !PROBLEMS.contains(&args.problem.as_str()) {
        return Err(Failure::Input(format!(
            "unsupported problem `{}`; supported: {}",
            args.problem,
            PROBLEMS.join(", ")
        )));
    }
    if !FORMATS.contains(&args.format.as_str()) {
        return Err(Failure::Input(format!("unsupported format `{}`", args.format)));
    }
    let framework = af::parse_apx(&read(&args.file)?)?;
    let cfg = args.run.config(start);
    match args.problem.as_str() {
        "EE-PR" => {
            let p = af::enumerate_preferred(&framework, &cfg)?;
            if args.run.trace {
                eprint!("{}", p.trace.render());
            }
            println!("{}", format_extensions(&p.extensions));
        }
        "SE-PR" => println!("{}", af::first_preferred(&framework, &cfg)?),
        "SE-GR" => println!("{}", af::grounded_extension(&framework)),
        _ => unreachable!("checked above"),
    }
    Ok(())
}

fn optimize(args: &OptimizeArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let k = dimacs::parse_cnf(&read(&args.cnf)?).map_err(|e| Failure::Input(format!("{}: {e}", args.cnf.display())))?;
    let r = match &args.relevant {
        Some(p) => dimacs::parse_relevant(&read(p)?, k.universe())
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => k.all_atoms(),
    };
    let res = enumerate::solve_criterion(&k, &r, args.mode.into(), &args.run.config(start))?;
    if args.run.trace {
        eprint!("{}", res.trace.render());
    }
    let mut out = String::new();
    for p in res.restrictions() {
        let mut names = k.universe().render(p);
        names.sort_unstable();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn parse_system(spec: &str) -> Result<SystemConfig, Failure> {
    let (name, batch) = match spec.split_once(':') {
        Some((n, b)) => {
            let b: usize = b
                .parse()
                .ok()
                .filter(|&b| b >= 1)
                .ok_or_else(|| Failure::Input(format!("invalid batch limit in `{spec}`")))?;
            (n, Some(b))
        }
        None => (spec, None),
    };
    Ok(SystemConfig::Builtin {
        name: name.to_string(),
        batch_limit: batch,
    })
}

fn parse_external(spec: &str) -> Result<SystemConfig, Failure> {
    let (name, cmd) = spec
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("expected NAME=COMMAND, got `{spec}`")))?;
    let mut words = cmd.split_whitespace();
    let program = words
        .next()
        .ok_or_else(|| Failure::Input(format!("empty command in `{spec}`")))?;
    Ok(SystemConfig::External {
        name: name.to_string(),
        program: program.into(),
        args: words.map(str::to_string).collect(),
    })
}

fn run_bench(args: &BenchArgs) -> Result<(), Failure> {
    if args.cutoff.is_nan() || args.cutoff <= 0.0 {
        return Err(Failure::Input("cutoff must be positive".into()));
    }
    let mut systems = args.systems.iter().map(|s| parse_system(s)).collect::<Result<Vec<_>, _>>()?;
    for e in &args.externals {
        systems.push(parse_external(e)?);
    }
    if systems.is_empty() {
        systems.push(SystemConfig::builtin("setopt"));
    }
    let cfg = SuiteConfig {
        cutoff: args.cutoff,
        jobs: args.jobs,
        verify: args.verify,
    };
    let records = bench::run_suite(&args.dir, &systems, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(path) = &args.report {
        fs::write(path, bench::write_records(&records))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if records.is_empty() {
        println!("no instances found in {}", args.dir.display());
        return Ok(());
    }
    let report = bench::ipc_score(&records, args.cutoff).map_err(|e| Failure::Input(e.to_string()))?;
    print!("{}", report.render_table());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.problems {
        println!("[{}]", PROBLEMS.join(","));
        return ExitCode::SUCCESS;
    }
    if cli.formats {
        println!("[{}]", FORMATS.join(","));
        return ExitCode::SUCCESS;
    }
    let result = match &cli.command {
        Some(Command::Solve(a)) => solve(a),
        Some(Command::Optimize(a)) => optimize(a),
        Some(Command::Bench(a)) => run_bench(a),
        None => {
            eprintln!("setopt: no subcommand given; see --help");
            return ExitCode::from(1);
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("setopt: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("setopt: {msg}");
            ExitCode::from(2)
        }
    }
}

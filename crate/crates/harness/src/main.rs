use std::path::PathBuf;
use std::process::ExitCode;

use apery_core::primes::represent_x2_2y2;
use apery_harness::config::{default_jobs, ListSpec, Names, PathSel, RawConfig, SweepConfig};
use apery_harness::identity::{run_identities, IdentityRun};
use apery_harness::record::rep_string;
use apery_harness::summary::{combined_exit_code, meta_path, write_meta, write_summary_csv, Summary};
use apery_harness::{run_sweep, HarnessError, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "apery", version, about = "Verify congruences and identities for Apery-type polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one check over a parameter grid.
    Verify(VerifyArgs),
    /// Run a suite of exact identity checks.
    Identity(IdentityArgs),
    /// Search for counterexamples to a conjecture.
    Scan(ScanArgs),
    /// Write a prime as x^2 + 2y^2.
    Rep {
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    check: Option<String>,
    /// Prime range lo:hi (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    primes: Option<String>,
    /// n range lo:hi (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// lo:hi, a list, or both, e.g. -5:5,10.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// +1, -1 or both.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// kk1, odd_power or both.
    #[arg(long)]
    variant: Option<String>,
    /// exact, fast or both.
    #[arg(long)]
    path: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// jsonl or csv.
    #[arg(long)]
    format: Option<String>,
    /// Largest p^a for the prime power checks.
    #[arg(long)]
    limit: Option<u64>,
    /// Outer values per chunk.
    #[arg(long)]
    chunk: Option<usize>,
    /// Summary CSV path.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// With --path both, run outer values above this bound fast only.
    #[arg(long)]
    both_below: Option<u64>,
    #[arg(long, hide = true)]
    stop_after_chunks: Option<usize>,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    /// Bound on l (pfaff_special, square_expansion, lem03).
    #[arg(long)]
    l_max: Option<u64>,
    /// Bound on n (alt_sum, plus_sum, column_sum, thm1, delannoy_integrality).
    #[arg(long)]
    n_max: Option<u64>,
    /// Bound on r (amkr).
    #[arg(long)]
    r_max: Option<u32>,
    /// Bound on m (amkr, lagrange, half_integer) and on m + k (column_sum).
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "jsonl")]
    format: String,
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// 1.2 or 4.4.
    #[arg(long)]
    conjecture: String,
    /// Prime range for 1.2.
    #[arg(long, default_value = "3:100000")]
    primes: String,
    /// Below this bound 1.2 also runs the exact path.
    #[arg(long, default_value_t = 500)]
    both_below: u64,
    /// n range for 4.4.
    #[arg(long, default_value = "1:150")]
    n: String,
    #[arg(long, default_value = "-10:10", allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value = "2,3,4")]
    r: String,
    #[arg(long, default_value = "2,3")]
    m: String,
    #[arg(long, default_value = "+1,-1", allow_hyphen_values = true)]
    eps: String,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    chunk: Option<usize>,
    /// Directory for per-check records, checkpoints and summary.csv.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn list(s: Option<String>) -> Option<ListSpec> {
    s.map(ListSpec::Text)
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let file = match &args.config {
        Some(p) => RawConfig::from_toml_file(p)?,
        None => RawConfig::default(),
    };
    let flags = RawConfig {
        check: args.check,
        primes: args.primes,
        n: args.n,
        x: list(args.x),
        r: list(args.r),
        a: list(args.a),
        m: list(args.m),
        eps: list(args.eps),
        variant: args.variant.map(Names::One),
        path: args.path,
        jobs: args.jobs,
        out: args.out,
        checkpoint: args.checkpoint,
        format: args.format,
        limit: args.limit,
        chunk: args.chunk,
        summary: args.summary,
        both_below: args.both_below,
    };
    let mut cfg = file.merge(flags).resolve()?;
    cfg.stop_after_chunks = args.stop_after_chunks;
    let summary = run_sweep(&cfg)?;
    report(&summary);
    Ok(summary.exit_code())
}

fn identity(args: IdentityArgs) -> Result<i32> {
    let mut run = IdentityRun::new(&args.suite);
    let b = &mut run.bounds;
    if let Some(l) = args.l_max {
        b.l = l;
        b.lem = l;
    }
    if let Some(n) = args.n_max {
        b.n = n;
        b.column_n = n;
        b.poly_n = n;
    }
    if let Some(r) = args.r_max {
        b.r = r;
    }
    if let Some(m) = args.m_max {
        b.amkr_m = m;
        b.lagrange_m = m;
        b.half_m = m;
        b.column_mk = m;
    }
    run.jobs = args.jobs.unwrap_or_else(default_jobs);
    run.out = args.out;
    run.format = args.format.parse()?;
    run.summary = args.summary;
    let summaries = run_identities(&run)?;
    summaries.iter().for_each(report);
    Ok(combined_exit_code(&summaries))
}

fn in_dir(dir: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    dir.as_ref().map(|d| d.join(name))
}

fn scan(args: ScanArgs) -> Result<i32> {
    let base = |check: &str| RawConfig {
        check: Some(check.to_string()),
        jobs: args.jobs,
        chunk: args.chunk,
        out: in_dir(&args.out_dir, &format!("{check}.jsonl")),
        checkpoint: in_dir(&args.out_dir, &format!("{check}.ckpt")),
        ..RawConfig::default()
    };
    let configs: Vec<SweepConfig> = match args.conjecture.as_str() {
        "1.2" => ["conj12", "cor15"]
            .into_iter()
            .map(|check| {
                RawConfig {
                    primes: Some(args.primes.clone()),
                    path: Some(PathSel::Both.as_str().to_string()),
                    both_below: Some(args.both_below),
                    ..base(check)
                }
                .resolve()
            })
            .collect::<Result<_>>()?,
        "4.4" => vec![RawConfig {
            n: Some(args.n.clone()),
            x: list(Some(args.x.clone())),
            r: list(Some(args.r.clone())),
            m: list(Some(args.m.clone())),
            eps: list(Some(args.eps.clone())),
            ..base("conj44")
        }
        .resolve()?],
        other => return Err(HarnessError::config(format!("unknown conjecture {other:?}; expected 1.2 or 4.4"))),
    };
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let mut summaries = Vec::new();
    let mut meta = Vec::new();
    for cfg in &configs {
        let started = std::time::SystemTime::now();
        let s = run_sweep(cfg)?;
        report(&s);
        meta.push((cfg.echo(), started, std::time::SystemTime::now()));
        summaries.push(s);
    }
    if let Some(path) = in_dir(&args.out_dir, "summary.csv") {
        write_summary_csv(&path, &summaries)?;
        let runs: Vec<_> = meta
            .into_iter()
            .zip(&summaries)
            .map(|((echo, a, b), s)| (echo, s, a, b))
            .collect();
        write_meta(&meta_path(&path), &runs)?;
    }
    Ok(combined_exit_code(&summaries))
}

fn rep(p: u64) -> Result<i32> {
    let r = represent_x2_2y2(p).map_err(|e| HarnessError::config(e.to_string()))?;
    println!("{}", rep_string(&r));
    Ok(0)
}

fn report(s: &Summary) {
    let c = &s.counts;
    eprintln!(
        "{}: {} tuples, {} passed, {} failed, {} skipped, {} divergences, {} counterexamples, {} ms{}",
        s.check,
        c.tuples,
        c.passes,
        c.fails,
        c.skips,
        c.divergences,
        c.counterexamples,
        s.wall_ms,
        if s.interrupted { " (stopped early)" } else { "" }
    );
    if let Some(f) = &c.first_failure {
        eprintln!("  first failure: {f}");
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Identity(a) => identity(a),
        Command::Scan(a) => scan(a),
        Command::Rep { prime } => rep(prime),
    };
    match result {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code())
        }
    }
}

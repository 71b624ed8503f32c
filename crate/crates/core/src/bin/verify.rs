//! Batch verification CLI.
//!
//! Exit codes: 0 all checks passed, 1 failures occurred, 2 configuration
//! error. Findings (displayed-formula discrepancies) never fail the run.

use clap::Parser;
use gspin_exact::harness::{run, SuiteConfig, SuiteName};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "verify",
    about = "Run exact-arithmetic verification suites over a range of ranks"
)]
struct Cli {
    /// Suite: rootdata | weyl | so | dual | orbit | measure | bruhat | mellin | all
    #[arg(long, env = "VERIFY_SUITE", default_value = "all")]
    suite: String,

    /// Rank range lo..hi (inclusive), e.g. 2..6
    #[arg(long, env = "VERIFY_N", default_value = "2..4", value_name = "LO..HI")]
    n: String,

    /// Trials per (suite, n)
    #[arg(long, env = "VERIFY_TRIALS", default_value_t = 25)]
    trials: u64,

    /// Master seed
    #[arg(long, env = "VERIFY_SEED", default_value_t = 7)]
    seed: u64,

    /// Prime p for the valuation checks
    #[arg(long, env = "VERIFY_PRIME", default_value_t = 5)]
    prime: u64,

    /// Largest n at which symbolic modes run
    #[arg(long = "symbolic-max-n", env = "VERIFY_SYMBOLIC_MAX_N", default_value_t = 3)]
    symbolic_max_n: usize,

    /// Write the JSON report here (stdout when omitted)
    #[arg(long, env = "VERIFY_REPORT")]
    report: Option<PathBuf>,
}

fn parse_range(s: &str) -> Option<(usize, usize)> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo.trim().parse().ok()?;
        let hi = hi.trim().parse().ok()?;
        Some((lo, hi))
    } else {
        let v = s.trim().parse().ok()?;
        Some((v, v))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(suite) = SuiteName::parse(&cli.suite) else {
        eprintln!("error: unknown suite {:?}", cli.suite);
        return ExitCode::from(2);
    };
    let Some((n_lo, n_hi)) = parse_range(&cli.n) else {
        eprintln!("error: bad n-range {:?} (expected LO..HI)", cli.n);
        return ExitCode::from(2);
    };
    let config = SuiteConfig {
        suite,
        n_lo,
        n_hi,
        prime: cli.prime,
        trials: cli.trials,
        seed: cli.seed,
        symbolic_max_n: cli.symbolic_max_n,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        println!("{json}");
    }
    for rec in &report.records {
        eprintln!(
            "suite={} n={} trials={} passed={} failed={} ({} ms)",
            rec.suite, rec.n, rec.trials, rec.passed, rec.failed, rec.wall_time_ms
        );
    }
    for f in &report.findings {
        eprintln!("finding [{} n={}]: {}", f.suite, f.n, f.note);
    }
    if report.total_failures() > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

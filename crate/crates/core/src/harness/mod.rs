//! Batch verification driver: runs named suites over a configured
//! (n-range, prime, trials, seed), aggregates pass/fail counts and failure
//! payloads, collects findings (places where a displayed formula disagrees
//! with the exact computation), and emits a machine-readable JSON report.
//!
//! Determinism: the per-trial RNG seed is
//! `splitmix64(splitmix64(splitmix64(master ^ fnv1a(suite)) ^ n) ^ trial)`,
//! so identical configs give byte-identical reports (wall_time aside).

mod suites;

use crate::exact::is_prime;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::fmt;
use std::time::Instant;

pub use suites::FINDING_PROBE_SEED;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    RootData,
    Weyl,
    So,
    Dual,
    Orbit,
    Measure,
    Bruhat,
    Mellin,
    All,
}

impl SuiteName {
    pub const ALL_CONCRETE: [SuiteName; 8] = [
        SuiteName::RootData,
        SuiteName::Weyl,
        SuiteName::So,
        SuiteName::Dual,
        SuiteName::Orbit,
        SuiteName::Measure,
        SuiteName::Bruhat,
        SuiteName::Mellin,
    ];

    pub fn parse(s: &str) -> Option<SuiteName> {
        Some(match s {
            "rootdata" => SuiteName::RootData,
            "weyl" => SuiteName::Weyl,
            "so" => SuiteName::So,
            "dual" => SuiteName::Dual,
            "orbit" => SuiteName::Orbit,
            "measure" => SuiteName::Measure,
            "bruhat" => SuiteName::Bruhat,
            "mellin" => SuiteName::Mellin,
            "all" => SuiteName::All,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::RootData => "rootdata",
            SuiteName::Weyl => "weyl",
            SuiteName::So => "so",
            SuiteName::Dual => "dual",
            SuiteName::Orbit => "orbit",
            SuiteName::Measure => "measure",
            SuiteName::Bruhat => "bruhat",
            SuiteName::Mellin => "mellin",
            SuiteName::All => "all",
        }
    }

    /// The n-range a suite accepts.
    pub fn valid_range(&self) -> (usize, usize) {
        match self {
            SuiteName::RootData => (1, 8),
            SuiteName::Weyl => (1, 8),
            SuiteName::So => (1, 8),
            SuiteName::Dual => (1, 8),
            SuiteName::Orbit => (2, 8),
            SuiteName::Measure => (2, 8),
            SuiteName::Bruhat => (1, 8),
            SuiteName::Mellin => (2, 10),
            SuiteName::All => (1, 10),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub n_lo: usize,
    pub n_hi: usize,
    pub prime: u64,
    pub trials: u64,
    pub seed: u64,
    pub symbolic_max_n: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown suite name {0:?}")]
    UnknownSuite(String),
    #[error("empty n-range {lo}..{hi}")]
    EmptyRange { lo: usize, hi: usize },
    #[error("n-range {lo}..{hi} lies outside the guard {glo}..{ghi} for suite {suite}")]
    OutOfRange {
        suite: String,
        lo: usize,
        hi: usize,
        glo: usize,
        ghi: usize,
    },
    #[error("trials must be >= 1")]
    ZeroTrials,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_lo > self.n_hi {
            return Err(ConfigError::EmptyRange {
                lo: self.n_lo,
                hi: self.n_hi,
            });
        }
        if self.trials == 0 {
            return Err(ConfigError::ZeroTrials);
        }
        if !is_prime(self.prime) {
            return Err(ConfigError::NotPrime(self.prime));
        }
        let (glo, ghi) = self.suite.valid_range();
        if self.n_lo < glo || self.n_hi > ghi {
            return Err(ConfigError::OutOfRange {
                suite: self.suite.to_string(),
                lo: self.n_lo,
                hi: self.n_hi,
                glo,
                ghi,
            });
        }
        Ok(())
    }
}

/// One failed check inside a trial.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub operation: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub seed: u64,
}

/// A displayed-formula discrepancy established by exact computation. Findings are
/// a separate channel from failures: they do not fail the run.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub suite: String,
    pub n: usize,
    pub note: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub n: usize,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub failures: Vec<FailureRecord>,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub config: SuiteConfig,
    pub records: Vec<SuiteRecord>,
    pub findings: Vec<Finding>,
    /// per-n exponent ledgers {symbol: {p, q}} emitted by the mellin suite
    pub ledgers: std::collections::BTreeMap<String, crate::mellin_ledger::ExpVector>,
}

impl SuiteReport {
    pub fn total_failures(&self) -> u64 {
        self.records.iter().map(|r| r.failed).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with wall_time zeroed: the determinism-comparison form.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        for r in &mut copy.records {
            r.wall_time_ms = 0;
        }
        copy.to_json()
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv1a(s: &str) -> u64 {
    let mut h = FNV_OFFSET;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// splitmix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Per-trial seed derived from (master seed, suite name, n, trial index).
pub fn trial_seed(master: u64, suite: &str, n: usize, trial: u64) -> u64 {
    mix64(mix64(mix64(master ^ fnv1a(suite)) ^ n as u64) ^ trial)
}

/// Accumulates the checks of one trial.
pub struct TrialCtx {
    pub n: usize,
    pub prime: u64,
    pub symbolic_max_n: usize,
    pub seed: u64,
    pub rng: ChaCha12Rng,
    failures: Vec<FailureRecord>,
}

impl TrialCtx {
    pub fn check(&mut self, operation: &str, inputs: String, expected: String, got: String) {
        if expected != got {
            self.failures.push(FailureRecord {
                operation: operation.to_string(),
                inputs,
                expected,
                got,
                seed: self.seed,
            });
        }
    }

    pub fn check_bool(&mut self, operation: &str, inputs: String, ok: bool) {
        self.check(operation, inputs, "true".into(), ok.to_string());
    }

    pub fn check_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        operation: &str,
        inputs: String,
        expected: &T,
        got: &T,
    ) {
        if expected != got {
            self.failures.push(FailureRecord {
                operation: operation.to_string(),
                inputs,
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
                seed: self.seed,
            });
        }
    }
}

/// Run the configured suites and assemble the report.
pub fn run(config: &SuiteConfig) -> Result<SuiteReport, ConfigError> {
    config.validate()?;
    let suites: Vec<SuiteName> = match config.suite {
        SuiteName::All => SuiteName::ALL_CONCRETE.to_vec(),
        s => vec![s],
    };
    let mut records = Vec::new();
    let mut findings = Vec::new();
    let mut ledgers = std::collections::BTreeMap::new();
    for suite in suites {
        let (glo, ghi) = suite.valid_range();
        let lo = config.n_lo.max(glo);
        let hi = config.n_hi.min(ghi);
        if lo > hi {
            continue;
        }
        for n in lo..=hi {
            let start = Instant::now();
            let mut passed = 0u64;
            let mut failed = 0u64;
            let mut failures = Vec::new();
            for trial in 0..config.trials {
                let seed = trial_seed(config.seed, suite.as_str(), n, trial);
                let mut ctx = TrialCtx {
                    n,
                    prime: config.prime,
                    symbolic_max_n: config.symbolic_max_n,
                    seed,
                    rng: <ChaCha12Rng as rand::SeedableRng>::seed_from_u64(seed),
                    failures: Vec::new(),
                };
                suites::run_trial(suite, &mut ctx);
                if ctx.failures.is_empty() {
                    passed += 1;
                } else {
                    failed += 1;
                    failures.extend(ctx.failures);
                }
            }
            suites::collect_findings(suite, n, &mut findings);
            if suite == SuiteName::Mellin {
                if let Some(l) = suites::ledger_for_report(n) {
                    ledgers.insert(format!("n={n}"), l);
                }
            }
            records.push(SuiteRecord {
                suite: suite.as_str().to_string(),
                n,
                trials: config.trials,
                passed,
                failed,
                failures,
                wall_time_ms: start.elapsed().as_millis(),
            });
        }
    }
    Ok(SuiteReport {
        schema: 1,
        config: config.clone(),
        records,
        findings,
        ledgers,
    })
}

//! Verification suites for the bicomplex toolkit and their report output.

pub mod config;
pub mod output;
pub mod suites;

use bvk_core::{Exec, ResidualReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use config::{ConfigError, Format, Suite, SuiteConfig, DEFAULT_SEED};
pub use output::{emit_report, ReportFile, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub reports: Vec<ResidualReport>,
}

impl SuiteRun {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResidualReport> {
        self.reports.iter().filter(|r| !r.pass)
    }
}

/// Runs the configured suites. Each suite draws from its own stream of
/// the seeded generator, so its cases do not depend on which other suites
/// run. Reports are ordered by suite, then case id.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteRun, ConfigError> {
    run_suite_with(cfg, Exec::default())
}

pub fn run_suite_with(cfg: &SuiteConfig, exec: Exec) -> Result<SuiteRun, ConfigError> {
    cfg.validate()?;
    let mut reports = Vec::new();
    for suite in cfg.suite.expand() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite as u64);
        let mut cases = match suite {
            Suite::Algebra => suites::algebra::cases(&mut rng, cfg.seed),
            Suite::Calculus => suites::calculus::cases(cfg, exec),
            Suite::Pseudoanalytic => suites::pseudo::cases(cfg, exec)?,
            Suite::Schrodinger => suites::schrodinger::cases(cfg, &mut rng, exec)?,
            Suite::All => unreachable!("expanded above"),
        };
        cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        reports.extend(cases);
    }
    if let Some(t) = cfg.tol {
        for r in &mut reports {
            override_tolerance(r, t);
        }
    }
    Ok(SuiteRun { reports })
}

fn override_tolerance(r: &mut ResidualReport, tol: f64) {
    if r.tolerance < config::STRUCTURAL_TOL {
        r.tolerance = tol;
        r.pass = r.max_residual <= tol;
    }
}

//! Seeded identity suites. Each check measures one residual and compares it
//! with a fixed tolerance; an evaluation error counts as a failure and is
//! reported by its variant name.

mod algebraic;
mod spectral;
mod transforms;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eigen::Params;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Gamma,
    Series,
    Eigen,
    Gram,
    Scattering,
    Romanovski,
    Roundtrip,
    Plancherel,
    Difference,
    Section4,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Gamma,
        Suite::Series,
        Suite::Eigen,
        Suite::Gram,
        Suite::Scattering,
        Suite::Romanovski,
        Suite::Roundtrip,
        Suite::Plancherel,
        Suite::Difference,
        Suite::Section4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::Series => "series",
            Suite::Eigen => "eigen",
            Suite::Gram => "gram",
            Suite::Scattering => "scattering",
            Suite::Romanovski => "romanovski",
            Suite::Roundtrip => "roundtrip",
            Suite::Plancherel => "plancherel",
            Suite::Difference => "difference",
            Suite::Section4 => "section4",
        }
    }

    fn checks(self, cfg: &VerifyConfig) -> Vec<Check> {
        match self {
            Suite::Gamma => algebraic::gamma_checks(),
            Suite::Series => algebraic::series_checks(),
            Suite::Eigen => spectral::eigen_checks(),
            Suite::Gram => spectral::gram_checks(),
            Suite::Scattering => spectral::scattering_checks(),
            Suite::Romanovski => spectral::romanovski_checks(),
            Suite::Roundtrip => transforms::roundtrip_checks(cfg),
            Suite::Plancherel => transforms::plancherel_checks(),
            Suite::Difference => transforms::difference_checks(),
            Suite::Section4 => transforms::section4_checks(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown suite {s:?}; expected one of {}, all",
                Suite::ALL.map(Suite::name).join(", ")
            ))
        })
    }
}

/// One suite or every suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(s) => vec![s],
            SuiteSelection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            Ok(SuiteSelection::All)
        } else {
            s.parse().map(SuiteSelection::One)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Fixes (α, β) in the suites that would otherwise use their defaults or
    /// draw them at random.
    pub params: Option<Params>,
    pub nu_max: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0, params: None, nu_max: 40.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    /// NaN when the check raised an error.
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    pub note: String,
}

/// What a check reports on success.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Measurement {
    pub residual: f64,
    pub samples: usize,
    pub note: String,
}

impl Measurement {
    pub fn new(residual: f64, samples: usize) -> Self {
        Self { residual, samples, note: String::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

type CheckFn = Box<dyn Fn(&Context, &mut ChaCha8Rng) -> Result<Measurement> + Send + Sync>;

pub(crate) struct Check {
    name: &'static str,
    tolerance: f64,
    run: CheckFn,
}

pub(crate) fn check<F>(name: &'static str, tolerance: f64, run: F) -> Check
where
    F: Fn(&Context, &mut ChaCha8Rng) -> Result<Measurement> + Send + Sync + 'static,
{
    Check { name, tolerance, run: Box::new(run) }
}

/// What a check may read from the configuration.
pub(crate) struct Context {
    pub params: Option<Params>,
    pub nu_max: f64,
}

impl Context {
    pub fn params_or(&self, alpha: f64, beta: f64) -> Result<Params> {
        self.params.map_or_else(|| Params::new(alpha, beta), Ok)
    }
}

/// 64-bit FNV-1a.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(*b)).wrapping_mul(0x0100_0000_01b3))
}

/// Every check owns a stream derived from the seed and its full name, so
/// results do not depend on which other checks run or in what order.
fn check_rng(seed: u64, suite: Suite, name: &str) -> ChaCha8Rng {
    let key = fnv1a(format!("{}/{}", suite.name(), name).as_bytes());
    ChaCha8Rng::seed_from_u64(seed ^ key)
}

fn run_check(suite: Suite, c: &Check, cfg: &VerifyConfig) -> CheckResult {
    let ctx = Context { params: cfg.params, nu_max: cfg.nu_max };
    let mut rng = check_rng(cfg.seed, suite, c.name);
    let base = CheckResult {
        suite,
        name: c.name.to_string(),
        measured: f64::NAN,
        tolerance: c.tolerance,
        passed: false,
        samples: 0,
        note: String::new(),
    };
    match (c.run)(&ctx, &mut rng) {
        Ok(m) => CheckResult {
            // NaN residuals fail
            passed: m.residual < c.tolerance,
            measured: m.residual,
            samples: m.samples,
            note: m.note,
            ..base
        },
        Err(e) => CheckResult { note: e.to_string(), ..base },
    }
}

/// Runs the selected suites. Output is grouped by suite in declaration order
/// and sorted by check name within a suite.
pub fn run(selection: SuiteSelection, cfg: &VerifyConfig) -> Vec<CheckResult> {
    let jobs: Vec<(Suite, Check)> =
        selection.suites().into_iter().flat_map(|s| s.checks(cfg).into_iter().map(move |c| (s, c))).collect();
    let mut results = par::map_slice(&jobs, |(s, c)| run_check(*s, c, cfg));
    results.sort_by(|a, b| (a.suite, &a.name).cmp(&(b.suite, &b.name)));
    results
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckResult> {
    run(SuiteSelection::One(suite), cfg)
}

/// Names of every check a suite would run under `cfg`.
pub fn check_names(suite: Suite, cfg: &VerifyConfig) -> Vec<&'static str> {
    let mut names: Vec<_> = suite.checks(cfg).iter().map(|c| c.name).collect();
    names.sort_unstable();
    names
}

/// Largest relative deviation `|got − want| / max(|want|, floor)`.
pub(crate) fn rel_dev(got: crate::C64, want: crate::C64, floor: f64) -> f64 {
    (got - want).norm() / want.norm().max(floor)
}

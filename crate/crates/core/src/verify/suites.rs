use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::ExactReal;
use crate::real::{BigReal, DEFAULT_PRECISION};
use crate::Rational;

use super::checks::{check_best_constants, check_identity12, check_steckin_example, check_wilker};
use super::grid::{SampleGrid, DEFAULT_COUNT};
use super::report::{Verdict, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Steckin,
    Wilker,
    Identity12,
    Constants,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Steckin,
        Suite::Wilker,
        Suite::Identity12,
        Suite::Constants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Steckin => "steckin",
            Suite::Wilker => "wilker",
            Suite::Identity12 => "identity12",
            Suite::Constants => "constants",
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
        Suite::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub precision: u32,
    pub grid_count: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            precision: DEFAULT_PRECISION,
            grid_count: DEFAULT_COUNT,
            seed: 12,
        }
    }
}

pub struct SuiteOutcome {
    pub suite: Suite,
    pub reports: Vec<VerifyReport>,
}

impl SuiteOutcome {
    pub fn verdict(&self) -> Verdict {
        self.reports
            .iter()
            .fold(Verdict::Pass, |v, r| v.worst(r.verdict))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "verdict": self.verdict().as_str(),
            "reports": self.reports.iter().map(VerifyReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn eps_probes(prec: u32) -> Vec<BigReal> {
    ["1e-2", "1e-3", "1e-4"]
        .iter()
        .map(|s| BigReal::parse_decimal(s, prec).expect("literal"))
        .collect()
}

/// `(name, limit at a+, limit at b-)` for the endpoint-constant suite.
pub fn constant_cases() -> Vec<(&'static str, ExactReal, ExactReal)> {
    let pi_pow = |num: i64, e: i32| ExactReal::monomial(Rational::from_integer(num.into()), e);
    vec![
        ("h1", ExactReal::ratio(1, 3), pi_pow(4, -2)),
        ("h2", ExactReal::ratio(2, 15), pi_pow(16, -4)),
        (
            "wilker",
            ExactReal::integer(2),
            ExactReal::monomial(Rational::new(1.into(), 4.into()), 2),
        ),
        ("steckin-g", pi_pow(2, -1), ExactReal::integer(0)),
        (
            "cusa",
            ExactReal::integer(4),
            ExactReal::monomial(Rational::new(3.into(), 2.into()), 1),
        ),
        (
            "steckin-product",
            ExactReal::pi().pow(2),
            ExactReal::integer(8),
        ),
    ]
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    let prec = cfg.precision;
    let half_pi = ExactReal::monomial(Rational::new(1.into(), 2.into()), 1);
    let grid = || SampleGrid::default_for(&ExactReal::integer(0), &half_pi, cfg.grid_count, prec);
    let reports = match suite {
        Suite::Steckin => vec![check_steckin_example(&grid()?, prec)?],
        Suite::Wilker => vec![check_wilker(&grid()?, prec)?],
        Suite::Identity12 => ["wilker", "h1"]
            .iter()
            .map(|name| check_identity12(&catalog::lookup(name)?.series, 8, 200, cfg.seed, prec))
            .collect::<Result<_>>()?,
        Suite::Constants => constant_cases()
            .iter()
            .map(|(name, lo, hi)| {
                check_best_constants(&catalog::lookup(name)?, lo, hi, &eps_probes(prec), prec)
            })
            .collect::<Result<_>>()?,
    };
    Ok(SuiteOutcome { suite, reports })
}

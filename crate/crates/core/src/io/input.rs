use serde::{Deserialize, Serialize};

use super::parse::parse_polynomial_in;
use crate::decider::DecideConfig;
use crate::duval::{Precision, SectionSampling};
use crate::error::{Error, Result};
use crate::germ::ThreefoldGerm;
use crate::series::{TruncatedSeries, Vars};

pub const MIN_TRUNCATION: u32 = 6;

fn default_curve() -> [String; 3] {
    ["x".into(), "y".into(), "t".into()]
}

fn default_trunc() -> u32 {
    super::DEFAULT_ORDER
}

fn default_samples() -> usize {
    SectionSampling::default().samples
}

/// A germ and the parameters to decide it with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermInput {
    pub equation: String,
    /// Three equations cutting out the curve.
    #[serde(default = "default_curve")]
    pub curve: [String; 3],
    #[serde(default = "default_trunc", alias = "truncation")]
    pub trunc: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl GermInput {
    pub fn new(equation: &str) -> Self {
        GermInput {
            equation: equation.to_string(),
            curve: default_curve(),
            trunc: default_trunc(),
            seed: 0,
            samples: default_samples(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trunc < MIN_TRUNCATION {
            return Err(Error::Input(format!(
                "truncation {} is below the minimum {MIN_TRUNCATION}",
                self.trunc
            )));
        }
        if self.samples == 0 {
            return Err(Error::Input("samples must be positive".into()));
        }
        Ok(())
    }

    pub fn equation(&self) -> Result<TruncatedSeries> {
        parse_polynomial_in(&self.equation, &Vars::xyzt(), self.trunc)
    }

    pub fn germ(&self) -> Result<ThreefoldGerm> {
        self.validate()?;
        let f = self.equation()?;
        if self.curve == default_curve() {
            return ThreefoldGerm::new(f);
        }
        let c = |i: usize| parse_polynomial_in(&self.curve[i], &Vars::xyzt(), self.trunc);
        ThreefoldGerm::with_curve(f, [c(0)?, c(1)?, c(2)?])
    }

    /// Sampling from `seed`/`samples`, at the fixed precision `trunc` the
    /// germ is parsed at.
    pub fn config(&self) -> DecideConfig {
        DecideConfig {
            sampling: SectionSampling {
                samples: self.samples,
                seed: self.seed,
            },
            precision: Precision::fixed(self.trunc),
        }
    }
}

/// Reads an input file: a JSON config object, a JSON list of them, or one
/// expression per line (`#` starts a comment). Lines become inputs built by `line`.
pub fn read_inputs(text: &str, line: impl Fn(&str) -> GermInput) -> Result<Vec<GermInput>> {
    let trimmed = text.trim_start();
    let bad = |e: serde_json::Error| Error::Input(format!("config document: {e}"));
    if trimmed.starts_with('{') {
        return Ok(vec![serde_json::from_str(trimmed).map_err(bad)?]);
    }
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(bad);
    }
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(line)
        .collect())
}

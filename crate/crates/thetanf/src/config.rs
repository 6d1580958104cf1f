use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thetanf_core::numfield::{MAX_DEGREE, MIN_DEGREE};
use thetanf_core::{BigInt, BigRational};

use crate::error::{PipelineError, Result};

/// Smallest precision accepted: enough to separate the three fields of
/// discriminant 35537.
pub const MIN_PRECISION: u64 = 30;
pub const DEFAULT_PRECISION: u64 = 200;
/// Exponent cut-off of the theta column in text tables.
pub const DISPLAY_PRECISION: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(format!("unknown format {s:?}, expected json or text")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Theta coefficients are computed for exponents `0..=precision`.
    pub precision: u64,
    pub degrees: RangeInclusive<usize>,
    /// LLL parameter used before enumeration.
    pub delta: BigRational,
    /// Skip fields whose discriminant is not fundamental (otherwise flag them).
    pub require_fundamental: bool,
    /// Skip fields with `gcd(n, d) > 1` (otherwise flag them).
    pub require_coprime: bool,
    /// Only keep records tagged with this Galois group; untagged records are
    /// processed and flagged.
    pub galois: Option<String>,
    pub format: OutputFormat,
    /// Worker threads for per-field analysis; `None` uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision: DEFAULT_PRECISION,
            degrees: MIN_DEGREE..=MAX_DEGREE,
            delta: BigRational::new(BigInt::from(3), BigInt::from(4)),
            require_fundamental: true,
            require_coprime: true,
            galois: None,
            format: OutputFormat::Json,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn with_precision(mut self, precision: u64) -> Self {
        self.precision = precision;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < MIN_PRECISION {
            return Err(PipelineError::Config(format!(
                "precision {} is below the minimum {MIN_PRECISION}",
                self.precision
            )));
        }
        let (lo, hi) = (*self.degrees.start(), *self.degrees.end());
        if lo < MIN_DEGREE || hi > MAX_DEGREE || lo > hi {
            return Err(PipelineError::Config(format!(
                "degree range {lo}..={hi} not inside {MIN_DEGREE}..={MAX_DEGREE}"
            )));
        }
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        if self.delta <= quarter || self.delta > BigRational::from_integer(BigInt::from(1)) {
            return Err(PipelineError::Config(format!("LLL delta {} outside (1/4, 1]", self.delta)));
        }
        if self.threads == Some(0) {
            return Err(PipelineError::Config("thread count must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RunConfig::default();
        assert_eq!(c.precision, 200);
        assert!(c.require_fundamental && c.require_coprime);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_low_precision_and_bad_delta() {
        assert!(RunConfig::default().with_precision(29).validate().is_err());
        let c = RunConfig { delta: BigRational::new(BigInt::from(1), BigInt::from(4)), ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { degrees: 1..=3, ..RunConfig::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("text".parse::<OutputFormat>().unwrap(), OutputFormat::Text);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}

//! Sweep configuration: grid ranges, horizons and the reporting constants.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable that overrides the configured parallelism.
pub const THREADS_ENV: &str = "BRIGKIT_THREADS";

/// Inclusive integer interval `[lo, hi]`, serialized as `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange(pub i64, pub i64);

impl IntRange {
    pub fn lo(&self) -> i64 {
        self.0
    }

    pub fn hi(&self) -> i64 {
        self.1
    }

    pub fn is_empty(&self) -> bool {
        self.0 > self.1
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.1.abs_diff(self.0) + 1
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.0..=self.1
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

impl FromStr for IntRange {
    type Err = String;

    /// `LO:HI` or a single value.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("invalid range bound {t:?}: {e}"))
        };
        match s.split_once(':') {
            Some((lo, hi)) => Ok(IntRange(parse(lo)?, parse(hi)?)),
            None => {
                let v = parse(s)?;
                Ok(IntRange(v, v))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

/// The part of a sweep configuration that determines the report contents.
/// Parallelism and the output location are deliberately excluded so that
/// reports do not depend on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub a: IntRange,
    pub b: IntRange,
    pub p: IntRange,
    pub q: IntRange,
    /// Last index of the growth checks.
    pub n_horizon: u64,
    /// Stand-in for the non-explicit constant of the non-real zero bound.
    pub c4: u64,
    /// Constant of the reported non-real growth threshold, as a decimal or
    /// `num/den` string.
    pub c5: String,
    /// The brute-force zero oracle runs to `max(search bound, oracle_horizon)`.
    pub oracle_horizon: u64,
    /// Also evaluate the sharper per-sub-case real bounds.
    pub sharp: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            a: IntRange(-12, 12),
            b: IntRange(-12, 12),
            p: IntRange(-8, 8),
            q: IntRange(-8, 8),
            n_horizon: 200,
            c4: 1000,
            c5: "50".into(),
            oracle_horizon: 2000,
            sharp: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(flatten)]
    pub grid: GridSpec,
    pub parallelism: usize,
    pub output_path: PathBuf,
    pub format: Format,
}

/// All fields optional, for reading configuration files.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    a: Option<IntRange>,
    b: Option<IntRange>,
    p: Option<IntRange>,
    q: Option<IntRange>,
    n_horizon: Option<u64>,
    c4: Option<u64>,
    c5: Option<serde_json::Value>,
    oracle_horizon: Option<u64>,
    sharp: Option<bool>,
    parallelism: Option<usize>,
    output_path: Option<PathBuf>,
    format: Option<Format>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid: GridSpec::default(),
            parallelism: 1,
            output_path: PathBuf::from("report.json"),
            format: Format::Json,
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = digits
            .parse::<num_bigint::BigInt>()
            .map_err(|e| format!("invalid decimal {s:?}: {e}"))?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))
}

impl SweepConfig {
    /// Reads a JSON configuration; missing fields take their defaults.
    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        let partial: PartialConfig = serde_json::from_str(text)
            .map_err(|e| CliError::usage(format!("invalid sweep config: {e}")))?;
        let mut cfg = SweepConfig::default();
        let g = &mut cfg.grid;
        macro_rules! take {
            ($dst:expr, $src:expr) => {
                if let Some(v) = $src {
                    $dst = v;
                }
            };
        }
        take!(g.a, partial.a);
        take!(g.b, partial.b);
        take!(g.p, partial.p);
        take!(g.q, partial.q);
        take!(g.n_horizon, partial.n_horizon);
        take!(g.c4, partial.c4);
        take!(g.oracle_horizon, partial.oracle_horizon);
        take!(g.sharp, partial.sharp);
        if let Some(c5) = partial.c5 {
            g.c5 = match c5 {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(CliError::usage(format!("invalid c5 {other}"))),
            };
        }
        take!(cfg.parallelism, partial.parallelism);
        take!(cfg.output_path, partial.output_path);
        take!(cfg.format, partial.format);
        Ok(cfg)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn c5(&self) -> BigRational {
        parse_rational(&self.grid.c5).expect("validated")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let g = &self.grid;
        for (name, r) in [("a", g.a), ("b", g.b), ("p", g.p), ("q", g.q)] {
            if r.is_empty() {
                return Err(CliError::usage(format!("empty range for {name}: {r}")));
            }
        }
        if g.n_horizon < 2 {
            return Err(CliError::usage("n_horizon must be at least 2"));
        }
        if self.parallelism < 1 {
            return Err(CliError::usage("parallelism must be at least 1"));
        }
        let c5 = parse_rational(&g.c5).map_err(CliError::usage)?;
        if c5 < BigRational::from_integer(0.into()) {
            return Err(CliError::usage("c5 must be non-negative"));
        }
        Ok(())
    }

    /// Worker count after applying the environment override.
    pub fn effective_parallelism(&self) -> Result<usize, CliError> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(CliError::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
            },
            Err(_) => Ok(self.parallelism),
        }
    }

    pub fn grid_points(&self) -> u64 {
        let g = &self.grid;
        g.a.len() * g.b.len() * g.p.len() * g.q.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!("-3:4".parse::<IntRange>().unwrap(), IntRange(-3, 4));
        assert_eq!("7".parse::<IntRange>().unwrap(), IntRange(7, 7));
        assert!("a:b".parse::<IntRange>().is_err());
        assert_eq!(IntRange(2, 1).len(), 0);
        assert_eq!(IntRange(-2, 2).len(), 5);
    }

    #[test]
    fn partial_json_fills_defaults() {
        let cfg = SweepConfig::from_json_str(r#"{"a": [1, 2], "c5": 25, "format": "csv"}"#).unwrap();
        assert_eq!(cfg.grid.a, IntRange(1, 2));
        assert_eq!(cfg.grid.b, IntRange(-12, 12));
        assert_eq!(cfg.grid.c5, "25");
        assert_eq!(cfg.format, Format::Csv);
        cfg.validate().unwrap();
        assert!(SweepConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = SweepConfig::default();
        cfg.validate().unwrap();
        cfg.grid.p = IntRange(1, 0);
        assert!(cfg.validate().is_err());
        let mut cfg = SweepConfig::default();
        cfg.grid.n_horizon = 1;
        assert!(cfg.validate().is_err());
        let cfg = SweepConfig { parallelism: 0, ..SweepConfig::default() };
        assert!(cfg.validate().is_err());
        let mut cfg = SweepConfig::default();
        cfg.grid.c5 = "x".into();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2.5").unwrap(), BigRational::new(5.into(), 2.into()));
        assert_eq!(parse_rational("7/3").unwrap(), BigRational::new(7.into(), 3.into()));
        assert_eq!(parse_rational("50").unwrap(), BigRational::from_integer(50.into()));
    }
}

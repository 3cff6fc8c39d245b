//! TOML run configuration.
//!
//! Every table and key is optional; missing values take the defaults below.
//! Unknown keys are rejected.
//!
//! ```toml
//! [params]            # "generic", an integer, "p/q" or a decimal
//! a = "generic"
//! lambda = 1
//! beta = "1/2"
//!
//! [degrees]           # polynomial ansatz degrees in x, t, u
//! x = 2
//! t = 2
//! u = 2
//!
//! [series]
//! seeds = [1, 1, 0, 0, 0]
//! order = 12
//!
//! [simulate]
//! family = "set2"
//! binding = { a0 = 1, a = 1, c = "7/5" }
//! half_width = 20.0
//! points = 512
//! dt = 1e-3
//! scheme = "linearly-implicit"
//! stencil_order = 8
//! t_end = 1.0
//! snapshots = 10
//! drift_tolerance = 1e-6
//! error_tolerance = 1e-3
//!
//! [output]
//! dir = "out"
//! format = "json"     # or "csv"
//! timestamp = true
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gk_core::diffalg::{Param, PdeInstance};
use gk_core::numerics::Scheme;
use gk_core::symmetry::AnsatzDegrees;
use gk_core::tanhsolve::{FamilyId, TanhSymbol};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A physical parameter: left symbolic or bound to a finite rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Generic,
    Rational(BigRational),
}

/// Parses `"p/q"`, an integer or a plain decimal such as `-1.25` or `1e-3`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (
            &s[..i],
            s[i + 1..].parse::<i32>().map_err(|_| format!("bad exponent in {s:?}"))?,
        ),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("not a number: {s:?}"));
    }
    let n = BigInt::from_str(&digits).map_err(|_| format!("not a number: {s:?}"))?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = if shift >= 0 {
        num_traits::pow(ten, shift as usize)
    } else {
        num_traits::pow(ten, (-shift) as usize).recip()
    };
    Ok(BigRational::from_integer(n) * scale)
}

impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Str(String),
        }
        let v = match Raw::deserialize(d)? {
            Raw::Int(n) => ParamValue::Rational(BigRational::from_integer(n.into())),
            Raw::Float(x) if x.is_finite() => {
                ParamValue::Rational(parse_rational(&x.to_string()).map_err(serde::de::Error::custom)?)
            }
            Raw::Float(x) => return Err(serde::de::Error::custom(format!("{x} is not finite"))),
            Raw::Str(s) if s == "generic" => ParamValue::Generic,
            Raw::Str(s) => ParamValue::Rational(parse_rational(&s).map_err(serde::de::Error::custom)?),
        };
        Ok(v)
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Generic => f.write_str("generic"),
            ParamValue::Rational(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub a: Option<ParamValue>,
    pub lambda: Option<ParamValue>,
    pub alpha: Option<ParamValue>,
    pub mu: Option<ParamValue>,
    pub beta: Option<ParamValue>,
    pub c: Option<ParamValue>,
}

impl ParamsConfig {
    pub fn get(&self, p: Param) -> &ParamValue {
        const GENERIC: ParamValue = ParamValue::Generic;
        let v = match p {
            Param::A => &self.a,
            Param::Lambda => &self.lambda,
            Param::Alpha => &self.alpha,
            Param::Mu => &self.mu,
            Param::Beta => &self.beta,
            Param::C => &self.c,
        };
        v.as_ref().unwrap_or(&GENERIC)
    }

    /// The equation with the bound coefficients substituted.
    pub fn pde(&self) -> PdeInstance {
        Param::ALL.iter().fold(PdeInstance::generic(), |pde, &p| match self.get(p) {
            ParamValue::Rational(r) => pde.with(p, r.clone()),
            ParamValue::Generic => pde,
        })
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreesConfig {
    #[serde(default = "two")]
    pub x: u32,
    #[serde(default = "two")]
    pub t: u32,
    #[serde(default = "two")]
    pub u: u32,
}

fn two() -> u32 {
    2
}

impl Default for DegreesConfig {
    fn default() -> Self {
        DegreesConfig { x: 2, t: 2, u: 2 }
    }
}

impl From<DegreesConfig> for AnsatzDegrees {
    fn from(d: DegreesConfig) -> Self {
        AnsatzDegrees { x: d.x, t: d.t, u: d.u }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SeriesConfig {
    pub seeds: Vec<ParamValue>,
    pub order: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        let one = ParamValue::Rational(BigRational::from_integer(1.into()));
        let zero = ParamValue::Rational(BigRational::from_integer(0.into()));
        SeriesConfig {
            seeds: vec![one.clone(), one, zero.clone(), zero.clone(), zero],
            order: 12,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateConfig {
    pub family: FamilyId,
    pub binding: BTreeMap<String, ParamValue>,
    pub half_width: f64,
    pub points: usize,
    pub dt: f64,
    pub scheme: Scheme,
    pub stencil_order: u32,
    pub t_end: f64,
    pub snapshots: usize,
    pub drift_tolerance: f64,
    pub error_tolerance: f64,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        let r = |n, d| ParamValue::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)));
        SimulateConfig {
            family: FamilyId::Set2,
            binding: [("a0", r(1, 1)), ("a", r(1, 1)), ("c", r(7, 5))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            half_width: 20.0,
            points: 512,
            dt: 1e-3,
            scheme: Scheme::LinearlyImplicit,
            stencil_order: 8,
            t_end: 1.0,
            snapshots: 10,
            drift_tolerance: 1e-6,
            error_tolerance: 1e-3,
        }
    }
}

impl SimulateConfig {
    pub fn binding(&self) -> Result<BTreeMap<TanhSymbol, BigRational>, CliError> {
        self.binding
            .iter()
            .map(|(k, v)| {
                let sym = TanhSymbol::from_name(k)
                    .ok_or_else(|| CliError::Config(format!("unknown symbol {k:?} in simulate.binding")))?;
                match v {
                    ParamValue::Rational(r) => Ok((sym, r.clone())),
                    ParamValue::Generic => Err(CliError::Config(format!(
                        "simulate.binding.{k} must be a number"
                    ))),
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    #[default]
    Json,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub format: Format,
    pub timestamp: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("out"),
            format: Format::Json,
            timestamp: true,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub degrees: DegreesConfig,
    pub series: SeriesConfig,
    pub simulate: SimulateConfig,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7/5").unwrap(), q(7, 5));
        assert_eq!(parse_rational("1.4").unwrap(), q(7, 5));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("3E2").unwrap(), q(300, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn parameter_forms() {
        let cfg = RunConfig::parse(
            "[params]\na = \"generic\"\nlambda = 2\nalpha = 0.5\nmu = \"-1/3\"\n",
        )
        .unwrap();
        assert_eq!(cfg.params.get(Param::A), &ParamValue::Generic);
        assert_eq!(cfg.params.get(Param::Lambda), &ParamValue::Rational(q(2, 1)));
        assert_eq!(cfg.params.get(Param::Alpha), &ParamValue::Rational(q(1, 2)));
        assert_eq!(cfg.params.get(Param::Mu), &ParamValue::Rational(q(-1, 3)));
        assert_eq!(cfg.params.get(Param::Beta), &ParamValue::Generic);
    }

    #[test]
    fn strict_keys() {
        assert!(RunConfig::parse("[params]\ngamma = 1\n").is_err());
        assert!(RunConfig::parse("[outptu]\ndir = \"x\"\n").is_err());
        assert!(RunConfig::parse("[params]\na = nan\n").is_err());
        assert!(RunConfig::parse("[params]\na = \"fast\"\n").is_err());
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(AnsatzDegrees::from(cfg.degrees), AnsatzDegrees { x: 2, t: 2, u: 2 });
        assert_eq!(cfg.series.seeds.len(), 5);
        assert_eq!(cfg.simulate.points, 512);
        assert_eq!(cfg.output.format, Format::Json);
        let b = cfg.simulate.binding().unwrap();
        assert_eq!(b[&TanhSymbol::from_name("c").unwrap()], q(7, 5));
    }
}

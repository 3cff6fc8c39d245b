use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::diffalg::{Param, ParamPoly};
use crate::poly::{int, rational_to_f64, Alphabet, Poly};

/// Highest ansatz degree supported by the alphabet.
pub const MAX_ANSATZ_DEGREE: usize = 5;

/// Equation parameters followed by the ansatz coefficients `a0..a5`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TanhAlphabet;

impl Alphabet for TanhAlphabet {
    const NAMES: &'static [&'static str] = &[
        "a", "lambda", "alpha", "mu", "beta", "c", "a0", "a1", "a2", "a3", "a4", "a5",
    ];
}

pub type TanhPoly = Poly<TanhAlphabet>;

/// A variable of [`TanhAlphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TanhSymbol {
    Param(Param),
    Coef(u8),
}

impl TanhSymbol {
    pub fn index(self) -> usize {
        match self {
            TanhSymbol::Param(p) => p.index(),
            TanhSymbol::Coef(i) => Param::ALL.len() + i as usize,
        }
    }

    pub fn name(self) -> &'static str {
        TanhAlphabet::NAMES[self.index()]
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let i = TanhAlphabet::index_of(name)?;
        Some(if i < Param::ALL.len() {
            TanhSymbol::Param(Param::ALL[i])
        } else {
            TanhSymbol::Coef((i - Param::ALL.len()) as u8)
        })
    }

    pub fn poly(self) -> TanhPoly {
        Poly::var(self.index())
    }
}

impl fmt::Display for TanhSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<TanhSymbol> for String {
    fn from(s: TanhSymbol) -> String {
        s.name().to_string()
    }
}

impl TryFrom<String> for TanhSymbol {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        TanhSymbol::from_name(&s).ok_or_else(|| format!("unknown symbol '{s}'"))
    }
}

pub fn lift_param(p: &ParamPoly) -> TanhPoly {
    p.lift()
}

/// Polynomial in `Y = tanh(z)`; `coeffs[k]` multiplies `Y^k`. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPolynomial {
    coeffs: Vec<TanhPoly>,
}

impl YPolynomial {
    pub fn zero() -> Self {
        YPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: TanhPoly) -> Self {
        Self::from_coefficients(vec![c])
    }

    pub fn y() -> Self {
        Self::from_coefficients(vec![Poly::zero(), Poly::one()])
    }

    pub fn from_coefficients(mut coeffs: Vec<TanhPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        YPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[TanhPoly] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> TanhPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coefficients((0..n).map(|k| self.coefficient(k) + o.coefficient(k)).collect())
    }

    pub fn scale(&self, c: &TanhPoly) -> Self {
        Self::from_coefficients(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        Self::from_coefficients(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Poly::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_coefficients(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&int(k as i64)))
                .collect(),
        )
    }

    /// `d/dz` through `dY/dz = 1 - Y^2`.
    pub fn d_z(&self) -> Self {
        let dy = self.derivative_y();
        dy.add(&dy.mul(&Self::y()).mul(&Self::y()).scale(&Poly::from_int(-1)))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&TanhPoly) -> TanhPoly) -> Self {
        Self::from_coefficients(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients evaluated at a full rational point, as floats.
    pub fn numeric(&self, point: &[BigRational]) -> Vec<f64> {
        self.coeffs.iter().map(|c| rational_to_f64(&c.eval(point))).collect()
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*Y"),
                _ => format!("({c})*Y^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Horner evaluation of float coefficients.
pub fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
}

/// `tanh` that returns exactly `+-1` for `|z| > 350`.
pub fn tanh_guarded(z: f64) -> f64 {
    if z > 350.0 {
        1.0
    } else if z < -350.0 {
        -1.0
    } else {
        z.tanh()
    }
}

//! Power-series solutions `U(z) = sum c_n z^n` of the travelling-wave ODE
//!
//! ```text
//! (a - c) U' + lambda U U' - alpha U^2 U' + mu U''' + beta U^(5) = 0
//! ```
//!
//! Matching the coefficient of `z^n` gives
//!
//! ```text
//! beta (n+1)...(n+5) c_{n+5} = (c - a)(n+1) c_{n+1}
//!     - lambda sum_k (n-k+1) c_k c_{n-k+1}
//!     + alpha sum_k sum_i (n-k+1) c_{n-k+1} c_i c_{k-i}
//!     - mu (n+1)(n+2)(n+3) c_{n+3}
//! ```
//!
//! with `c_0..c_4` free. The series is formal; evaluation is guarded by a
//! user radius rather than a convergence estimate.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::diffalg::{param, Param, ParamAlphabet};
use crate::error::{Error, Result};
use crate::poly::{int, rational_to_f64, RatFunc};

/// Number of free seed coefficients.
pub const SEEDS: usize = 5;

/// Field operations the recurrence needs.
pub trait SeriesScalar: Clone + PartialEq + Debug {
    fn zero_scalar() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` when `o` is zero.
    fn div(&self, o: &Self) -> Option<Self>;
    fn vanishes(&self) -> bool;
}

impl SeriesScalar for BigRational {
    fn zero_scalar() -> Self {
        int(0)
    }
    fn from_int(n: i64) -> Self {
        int(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Symbolic coefficients: rational functions of the equation parameters.
pub type SymbolicScalar = RatFunc<ParamAlphabet>;

impl SeriesScalar for SymbolicScalar {
    fn zero_scalar() -> Self {
        RatFunc::zero()
    }
    fn from_int(n: i64) -> Self {
        RatFunc::from_rational(int(n))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
    fn vanishes(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

/// Equation parameters and wave speed.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesParams<S> {
    pub a: S,
    pub lambda: S,
    pub alpha: S,
    pub mu: S,
    pub beta: S,
    pub c: S,
}

impl SeriesParams<SymbolicScalar> {
    /// All six parameters left as symbols.
    pub fn symbolic() -> Self {
        let s = |p| RatFunc::from_poly(param(p));
        SeriesParams {
            a: s(Param::A),
            lambda: s(Param::Lambda),
            alpha: s(Param::Alpha),
            mu: s(Param::Mu),
            beta: s(Param::Beta),
            c: s(Param::C),
        }
    }
}

fn coef<S: SeriesScalar>(cs: &[S], i: usize) -> S {
    cs.get(i).cloned().unwrap_or_else(S::zero_scalar)
}

fn falling(n: usize, k: usize) -> i64 {
    (1..=k).map(|j| (n + j) as i64).product()
}

/// `c_5` from the seeds (the `n = 0` case of the recurrence).
pub fn closed_c5<S: SeriesScalar>(seeds: &[S], p: &SeriesParams<S>) -> Result<S> {
    if seeds.len() < SEEDS {
        return Err(Error::InvalidArgument(format!(
            "need {SEEDS} seed coefficients, got {}",
            seeds.len()
        )));
    }
    let (c0, c1, c3) = (&seeds[0], &seeds[1], &seeds[3]);
    let num = p
        .c
        .mul(c1)
        .sub(&p.a.mul(c1))
        .sub(&p.lambda.mul(c0).mul(c1))
        .add(&p.alpha.mul(c0).mul(c0).mul(c1))
        .sub(&S::from_int(6).mul(&p.mu).mul(c3));
    num.div(&S::from_int(120).mul(&p.beta))
        .ok_or(Error::DivisionByZero("beta"))
}

/// `c_{n+5}` from `c_0..c_{n+4}`.
pub fn recurrence_step<S: SeriesScalar>(n: usize, cs: &[S], p: &SeriesParams<S>) -> Result<S> {
    if cs.len() < n + 5 {
        return Err(Error::InvalidArgument(format!(
            "recurrence at n = {n} needs {} coefficients, got {}",
            n + 5,
            cs.len()
        )));
    }
    let mut num = p
        .c
        .sub(&p.a)
        .mul(&S::from_int((n + 1) as i64))
        .mul(&cs[n + 1]);
    let mut quad = S::zero_scalar();
    let mut cubic = S::zero_scalar();
    for k in 0..=n {
        let w = S::from_int((n - k + 1) as i64).mul(&cs[n - k + 1]);
        quad = quad.add(&w.mul(&cs[k]));
        let mut sq = S::zero_scalar();
        for i in 0..=k {
            sq = sq.add(&cs[i].mul(&cs[k - i]));
        }
        cubic = cubic.add(&w.mul(&sq));
    }
    num = num.sub(&p.lambda.mul(&quad));
    num = num.add(&p.alpha.mul(&cubic));
    num = num.sub(&p.mu.mul(&S::from_int(falling(n, 3))).mul(&cs[n + 3]));
    num.div(&p.beta.mul(&S::from_int(falling(n, 5))))
        .ok_or(Error::DivisionByZero("beta"))
}

/// Truncated series `c_0..c_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution<S> {
    coefficients: Vec<S>,
    params: SeriesParams<S>,
}

impl<S: SeriesScalar> SeriesSolution<S> {
    /// Wraps given coefficients, e.g. to inject a defect.
    pub fn from_coefficients(coefficients: Vec<S>, params: SeriesParams<S>) -> Result<Self> {
        if coefficients.len() < SEEDS + 1 {
            return Err(Error::InvalidArgument("truncation order must be at least 5".into()));
        }
        Ok(SeriesSolution {
            coefficients,
            params,
        })
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [S] {
        &mut self.coefficients
    }

    pub fn params(&self) -> &SeriesParams<S> {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients of the ODE left-hand side with the truncated polynomial inserted.
    pub fn residual_coefficients(&self) -> Vec<S> {
        let cs = &self.coefficients;
        let p = &self.params;
        let d1 = derivative(cs, 1);
        let uu1 = convolve(cs, &d1);
        let uuu1 = convolve(cs, &uu1);
        let d3 = derivative(cs, 3);
        let d5 = derivative(cs, 5);
        let len = uuu1.len();
        let a_c = p.a.sub(&p.c);
        (0..len)
            .map(|m| {
                a_c.mul(&coef(&d1, m))
                    .add(&p.lambda.mul(&coef(&uu1, m)))
                    .sub(&p.alpha.mul(&coef(&uuu1, m)))
                    .add(&p.mu.mul(&coef(&d3, m)))
                    .add(&p.beta.mul(&coef(&d5, m)))
            })
            .collect()
    }

    /// Lowest power of z with a nonzero residual coefficient; `None` when
    /// the truncated polynomial solves the ODE exactly.
    pub fn residual_order(&self) -> Option<usize> {
        self.residual_coefficients().iter().position(|r| !r.vanishes())
    }
}

fn derivative<S: SeriesScalar>(cs: &[S], k: usize) -> Vec<S> {
    (k..cs.len())
        .map(|i| S::from_int(falling(i - k, k)).mul(&cs[i]))
        .collect()
}

fn convolve<S: SeriesScalar>(f: &[S], g: &[S]) -> Vec<S> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero_scalar(); f.len() + g.len() - 1];
    for (i, x) in f.iter().enumerate() {
        if x.vanishes() {
            continue;
        }
        for (j, y) in g.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Fills `c_5` and `c_6..c_N` from five seeds.
pub fn generate<S: SeriesScalar>(
    seeds: &[S],
    params: &SeriesParams<S>,
    order: usize,
) -> Result<SeriesSolution<S>> {
    if order < SEEDS {
        return Err(Error::InvalidArgument(format!(
            "truncation order must be at least 5, got {order}"
        )));
    }
    if seeds.len() != SEEDS {
        return Err(Error::InvalidArgument(format!(
            "need {SEEDS} seed coefficients, got {}",
            seeds.len()
        )));
    }
    let mut cs = seeds.to_vec();
    cs.push(closed_c5(seeds, params)?);
    for n in 1..=order - SEEDS {
        if cs.len() > order {
            break;
        }
        let next = recurrence_step(n, &cs, params)?;
        cs.push(next);
    }
    cs.truncate(order + 1);
    Ok(SeriesSolution {
        coefficients: cs,
        params: params.clone(),
    })
}

/// Default evaluation radius in z.
pub const DEFAULT_RADIUS: f64 = 1.0;

impl SeriesSolution<BigRational> {
    fn check_radius(&self, z: f64, radius: f64) -> Result<()> {
        if z.abs() > radius {
            log::warn!("series evaluated at |z| = {} beyond radius {radius}", z.abs());
            return Err(Error::OutsideRadius { z, radius });
        }
        Ok(())
    }

    /// `z = x - c t` in floating point.
    pub fn z(&self, x: f64, t: f64) -> f64 {
        x - rational_to_f64(&self.params.c) * t
    }

    /// Horner evaluation of `U(x - c t)`.
    pub fn evaluate(&self, x: f64, t: f64, radius: f64) -> Result<f64> {
        let z = self.z(x, t);
        self.check_radius(z, radius)?;
        Ok(self.evaluate_z(z))
    }

    pub fn evaluate_z(&self, z: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + rational_to_f64(c))
    }

    /// Exact value at rational `(x, t)`.
    pub fn evaluate_exact(&self, x: &BigRational, t: &BigRational, radius: f64) -> Result<BigRational> {
        let z = x - &self.params.c * t;
        self.check_radius(z.to_f64().unwrap_or(f64::INFINITY), radius)?;
        Ok(self.evaluate_z_exact(&z))
    }

    pub fn evaluate_z_exact(&self, z: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(int(0), |acc, c| acc * z + c)
    }

    /// `(z, U(z))` at `count` evenly spaced points of `[-radius, radius]`.
    pub fn sample(&self, radius: f64, count: usize) -> Vec<(f64, f64)> {
        let n = count.max(2) - 1;
        (0..=n)
            .map(|i| {
                let z = -radius + 2.0 * radius * i as f64 / n as f64;
                (z, self.evaluate_z(z))
            })
            .collect()
    }
}

/// Whether `r` is zero or has the form `q / beta^k`.
pub fn has_beta_power_denominator(r: &SymbolicScalar) -> bool {
    let d = r.denom();
    d.len() == 1 && {
        let (e, c) = d.terms().next().unwrap();
        let beta = Param::Beta.index();
        c.is_positive()
            && (0..crate::poly::MAX_VARS).all(|i| i == beta || e.0[i] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn unit_params(c: i64) -> SeriesParams<BigRational> {
        SeriesParams {
            a: int(1),
            lambda: int(1),
            alpha: int(1),
            mu: int(1),
            beta: int(1),
            c: int(c),
        }
    }

    fn seeds(v: [i64; 5]) -> Vec<BigRational> {
        v.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn c5_examples() {
        let p = unit_params(2);
        assert_eq!(closed_c5(&seeds([0; 5]), &p).unwrap(), int(0));
        assert_eq!(closed_c5(&seeds([1, 1, 0, 0, 0]), &p).unwrap(), rat(1, 120));
        let mut z = p.clone();
        z.beta = int(0);
        assert_eq!(
            closed_c5(&seeds([1, 1, 0, 0, 0]), &z),
            Err(Error::DivisionByZero("beta"))
        );
    }

    #[test]
    fn symbolic_c5_vanishes_without_c1_c3() {
        let p = SeriesParams::symbolic();
        let c0 = RatFunc::from_poly(param(Param::A).pow(2) + param(Param::Mu));
        let z = SymbolicScalar::zero();
        let s = [c0, z.clone(), z.clone(), z.clone(), z];
        assert!(closed_c5(&s, &p).unwrap().is_zero());
    }

    #[test]
    fn recurrence_pins() {
        let p = unit_params(2);
        let s = generate(&seeds([1, 1, 0, 0, 0]), &p, 10).unwrap();
        let expect = [
            int(1),
            int(1),
            int(0),
            int(0),
            int(0),
            rat(1, 120),
            rat(1, 720),
            rat(1, 5040),
            rat(-1, 40320),
            int(0),
            rat(1, 453600),
        ];
        assert_eq!(s.coefficients(), &expect);
        assert!(s.residual_order().unwrap() >= 6);
    }

    #[test]
    fn zero_series() {
        let s = generate(&seeds([0; 5]), &unit_params(2), 9).unwrap();
        assert!(s.coefficients().iter().all(Zero::is_zero));
        assert_eq!(s.residual_order(), None);
        assert_eq!(s.evaluate(0.3, 0.1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn perturbed_c5_breaks_lowest_order() {
        let mut s = generate(&seeds([1, 1, 0, 0, 0]), &unit_params(2), 10).unwrap();
        s.coefficients_mut()[5] += int(1);
        assert_eq!(s.residual_order(), Some(0));
    }

    #[test]
    fn evaluation() {
        let s = generate(&seeds([1, 0, 0, 0, 0]), &unit_params(2), 8).unwrap();
        assert_eq!(s.evaluate(2.0, 1.0, 1.0).unwrap(), 1.0);
        assert!(matches!(s.evaluate(5.0, 0.0, 1.0), Err(Error::OutsideRadius { .. })));
        let s = generate(&seeds([1, 1, 0, 0, 0]), &unit_params(2), 10).unwrap();
        let exact = rational_to_f64(&s.evaluate_z_exact(&rat(1, 10)));
        let float = s.evaluate_z(0.1);
        assert!(((exact - float) / exact).abs() < 1e-12);
    }

    #[test]
    fn order_bounds() {
        assert!(generate(&seeds([1, 0, 0, 0, 0]), &unit_params(2), 4).is_err());
        assert!(generate(&seeds([1, 0, 0, 0, 0])[..4], &unit_params(2), 6).is_err());
        let s = generate(&seeds([1, 1, 0, 0, 0]), &unit_params(2), 5).unwrap();
        assert_eq!(s.order(), 5);
    }
}

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::Zero;

use super::jet::{JetVar, Monomial, MAX_JET_ORDER};
use super::param::{param, Param, ParamPoly};
use crate::error::{Error, Result};
use crate::poly::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    T,
}

/// Polynomial in jet variables with parameter-polynomial coefficients.
///
/// Terms live in a `BTreeMap` under the canonical monomial order and zero
/// coefficients are never stored, so `==` is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, ParamPoly>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(ParamPoly::constant(r))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn param(p: Param) -> Self {
        Self::constant(param(p))
    }

    pub fn var(v: JetVar) -> Self {
        Self::term(ParamPoly::one(), Monomial::var(v))
    }

    pub fn x() -> Self {
        Self::var(JetVar::X)
    }

    pub fn t() -> Self {
        Self::var(JetVar::T)
    }

    pub fn u() -> Self {
        Self::var(JetVar::BASE_U)
    }

    /// The jet variable u with `nx` x-derivatives and `nt` t-derivatives.
    pub fn u_deriv(nx: u8, nt: u8) -> Self {
        Self::var(JetVar::deriv(nx, nt))
    }

    pub fn term(c: ParamPoly, m: Monomial) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ParamPoly {
        self.terms.get(m).cloned().unwrap_or_else(ParamPoly::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = DiffPoly::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.scale(r))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = DiffPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn jet_vars(&self) -> BTreeSet<JetVar> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect()
    }

    /// Highest derivative order of any jet variable present.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|m| m.max_order()).max().unwrap_or(0)
    }

    pub fn any_var(&self, pred: impl Fn(&JetVar) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors().iter().any(|(v, _)| pred(v)))
    }

    /// Partial derivative with respect to one jet coordinate.
    pub fn partial(&self, v: JetVar) -> Self {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c.scale(&int(e as i64)));
            }
        }
        out
    }

    /// Total derivative `D_x` or `D_t`, exact Leibniz rule on every monomial.
    pub fn total_derivative(&self, dir: Direction) -> Result<Self> {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for &(v, _) in m.factors() {
                let dv = match (v, dir) {
                    (JetVar::X, Direction::X) | (JetVar::T, Direction::T) => None,
                    (JetVar::X, Direction::T) | (JetVar::T, Direction::X) => continue,
                    (JetVar::U { x, t }, Direction::X) => Some(JetVar::U { x: x + 1, t }),
                    (JetVar::U { x, t }, Direction::T) => Some(JetVar::U { x, t: t + 1 }),
                };
                if let Some(dv) = dv {
                    if dv.order() > MAX_JET_ORDER {
                        return Err(Error::JetOrderOverflow {
                            order: dv.order(),
                            bound: MAX_JET_ORDER,
                        });
                    }
                }
                let (e, rest) = m.lower(v).unwrap();
                let mono = match dv {
                    Some(dv) => rest.mul(&Monomial::var(dv)),
                    None => rest,
                };
                out.add_term(mono, c.scale(&int(e as i64)));
            }
        }
        Ok(out)
    }

    pub fn d_x(&self) -> Result<Self> {
        self.total_derivative(Direction::X)
    }

    pub fn d_t(&self) -> Result<Self> {
        self.total_derivative(Direction::T)
    }

    /// Applies `D_x^nx D_t^nt`.
    pub fn total_derivative_multi(&self, nx: u32, nt: u32) -> Result<Self> {
        let mut p = self.clone();
        for _ in 0..nx {
            p = p.d_x()?;
        }
        for _ in 0..nt {
            p = p.d_t()?;
        }
        Ok(p)
    }

    /// Replaces jet variables by polynomials; `None` keeps the variable.
    pub fn substitute(&self, mut f: impl FnMut(JetVar) -> Option<DiffPoly>) -> Self {
        let mut cache: HashMap<JetVar, Option<DiffPoly>> = HashMap::new();
        let mut powers: HashMap<(JetVar, u16), DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut acc = DiffPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                match cache.entry(v).or_insert_with(|| f(v)) {
                    None => kept = kept.mul(&Monomial::power(v, e)),
                    Some(r) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| r.pow(e as u32));
                        acc = &acc * &*pw;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            if !kept.is_one() {
                acc = acc.mul_monomial(&kept);
            }
            out += &acc;
        }
        out
    }

    /// Substitutes values for parameters, e.g. to instantiate a degenerate case.
    pub fn map_coefficients(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Splits every term into a monomial in the selected variables times the rest.
    pub fn collect_by(&self, pred: impl Fn(&JetVar) -> bool) -> BTreeMap<Monomial, DiffPoly> {
        let mut out: BTreeMap<Monomial, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_diffpoly(f, self)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({self})")
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += &rhs;
        self
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= &rhs;
        self
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl From<JetVar> for DiffPoly {
    fn from(v: JetVar) -> Self {
        DiffPoly::var(v)
    }
}

impl From<ParamPoly> for DiffPoly {
    fn from(c: ParamPoly) -> Self {
        DiffPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn u() -> DiffPoly {
        DiffPoly::u()
    }

    #[test]
    fn ring_examples() {
        assert_eq!((&u() + &u()).to_string(), "2*u");
        let ux = DiffPoly::u_deriv(1, 0);
        let prod = &u() * &ux;
        assert_eq!(prod.to_string(), "u*u[1,0]");
        let lam = DiffPoly::param(Param::Lambda);
        let a = &lam * &prod;
        let b = &(-&lam) * &prod;
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(u().pow(2).d_x().unwrap().to_string(), "2*u*u[1,0]");
        assert_eq!(
            DiffPoly::u_deriv(1, 0).d_t().unwrap(),
            DiffPoly::u_deriv(1, 1)
        );
        let xu = &DiffPoly::x() * &u();
        assert_eq!(xu.d_x().unwrap(), &u() + &(&DiffPoly::x() * &DiffPoly::u_deriv(1, 0)));
        assert!(DiffPoly::t().d_x().unwrap().is_zero());
        assert_eq!(DiffPoly::t().d_t().unwrap(), DiffPoly::one());
    }

    #[test]
    fn jet_order_bound_is_enforced() {
        let p = DiffPoly::u_deriv(10, 0);
        assert!(matches!(
            p.d_x(),
            Err(Error::JetOrderOverflow { order: 11, .. })
        ));
        assert!(DiffPoly::u_deriv(9, 0).d_t().is_ok());
    }

    #[test]
    fn mixed_derivatives_coincide() {
        let p = DiffPoly::u();
        assert_eq!(p.d_x().unwrap().d_t().unwrap(), p.d_t().unwrap().d_x().unwrap());
    }

    #[test]
    fn collect_examples() {
        let ux = JetVar::deriv(1, 0);
        let p = &DiffPoly::param(Param::A).mul_monomial(&Monomial::var(ux))
            + &(&u() * &DiffPoly::var(ux));
        let map = p.collect_by(|v| *v == ux);
        assert_eq!(map.len(), 1);
        assert_eq!(
            map[&Monomial::var(ux)],
            &DiffPoly::param(Param::A) + &u()
        );
        assert!(DiffPoly::zero().collect_by(|_| true).is_empty());
    }

    #[test]
    fn substitution_replaces_variables() {
        let p = &u().pow(2) + &DiffPoly::x();
        let q = p.substitute(|v| (v == JetVar::BASE_U).then(|| DiffPoly::rational(rat(1, 2))));
        assert_eq!(q.to_string(), "(1/4) + x");
    }
}

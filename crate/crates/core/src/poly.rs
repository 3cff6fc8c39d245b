//! Sparse multivariate polynomials with exact rational coefficients, and the
//! field of rational functions built on top of them.
//!
//! A polynomial is tied to an [`Alphabet`], a static list of variable names.
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under a graded
//! order, so two polynomials are equal iff their maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Upper bound on the number of variables in any alphabet.
pub const MAX_VARS: usize = 12;

/// A static variable alphabet.
pub trait Alphabet:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const NAMES: &'static [&'static str];

    fn len() -> usize {
        Self::NAMES.len()
    }

    fn index_of(name: &str) -> Option<usize> {
        Self::NAMES.iter().position(|n| *n == name)
    }
}

/// Exponent vector. Entries past the alphabet length are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponents(pub [u16; MAX_VARS]);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn unit(var: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[var] = 1;
        Exponents(e)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow in polynomial product");
        }
        Exponents(e)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Exponents(e))
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].min(other.0[i]);
        }
        Exponents(e)
    }
}

// Graded order: total degree first, then inverse lexicographic so that, within a
// degree, earlier alphabet letters sort first. This is a monomial order.
impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<S: Alphabet> {
    terms: BTreeMap<Exponents, BigRational>,
    _alphabet: PhantomData<S>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl<S: Alphabet> Poly<S> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
            _alphabet: PhantomData,
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Exponents::default(), c);
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(index: usize) -> Self {
        assert!(index < S::len(), "variable index out of range");
        Self::monomial(BigRational::one(), Exponents::unit(index))
    }

    pub fn named(name: &str) -> Self {
        let i = S::index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(i)
    }

    pub fn monomial(c: BigRational, e: Exponents) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            _alphabet: PhantomData,
        }
    }

    fn mul_monomial(&self, e: &Exponents, c: &BigRational) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(e), v * c)).collect(),
            _alphabet: PhantomData,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (de, dc) = divisor.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading() {
            let qe = re.div(&de)?;
            let qc = rc / &dc;
            rem -= &divisor.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Exponents::default();
        };
        it.fold(*first, |acc, e| acc.gcd(e))
    }

    /// Positive rational `r` such that `self / r` has coprime integer coefficients.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Divides out rational and monomial content, leaving a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let m = self.monomial_content();
        let mut c = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.div(&m).unwrap(), v / &c))
                .collect(),
            _alphabet: PhantomData,
        }
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k > 0 {
                let mut ne = *e;
                ne.0[var] -= 1;
                out.add_term(ne, c * int(k as i64));
            }
        }
        out
    }

    /// Evaluates at a full rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate().take(S::len()) {
                if k > 0 {
                    t *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &k) in e.0.iter().enumerate().take(S::len()) {
                if k > 0 {
                    t *= point[i].powi(k as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces some variables with rational functions; `None` keeps the variable.
    pub fn substitute(&self, values: &[Option<RatFunc<S>>]) -> RatFunc<S> {
        let mut acc = RatFunc::zero();
        for (e, c) in &self.terms {
            let mut keep = Exponents::default();
            let mut t = RatFunc::from_poly(Self::constant(c.clone()));
            for (i, &k) in e.0.iter().enumerate().take(S::len()) {
                if k == 0 {
                    continue;
                }
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(v) => t = &t * &v.pow(k as u32),
                    None => keep.0[i] = k,
                }
            }
            if !keep.is_one() {
                t = &t * &RatFunc::from_poly(Self::monomial(BigRational::one(), keep));
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Reinterprets the polynomial in a larger alphabet sharing the same leading names.
    pub fn lift<T: Alphabet>(&self) -> Poly<T> {
        debug_assert!(S::NAMES.iter().zip(T::NAMES).all(|(a, b)| a == b));
        Poly {
            terms: self.terms.clone(),
            _alphabet: PhantomData,
        }
    }

    /// Restricts to a smaller alphabet; fails if a dropped variable is used.
    pub fn restrict<T: Alphabet>(&self) -> Option<Poly<T>> {
        let n = T::len();
        for e in self.terms.keys() {
            if e.0[n..].iter().any(|&k| k > 0) {
                return None;
            }
        }
        Some(Poly {
            terms: self.terms.clone(),
            _alphabet: PhantomData,
        })
    }

    /// Number of terms plus total degree; used to pick cheap pivots.
    pub fn complexity(&self) -> usize {
        self.terms.len() * 4 + self.total_degree() as usize
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled quotient when numerator or denominator overflow f64.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift >= 0 {
            r / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Renders a rational the way coefficients appear in printed expressions:
/// bare for non-negative integers, parenthesised otherwise.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() && !r.is_negative() {
        format!("{}", r.numer())
    } else if r.is_integer() {
        format!("({})", r.numer())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

pub(crate) fn fmt_monomial<S: Alphabet>(e: &Exponents) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &k) in e.0.iter().enumerate().take(S::len()) {
        match k {
            0 => {}
            1 => out.push(S::NAMES[i].to_string()),
            _ => out.push(format!("{}^{}", S::NAMES[i], k)),
        }
    }
    out
}

impl<S: Alphabet> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars = fmt_monomial::<S>(e);
            if vars.is_empty() {
                write!(f, "{}", fmt_rational(c))?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(c), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<S: Alphabet> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<S: Alphabet> AddAssign<&Poly<S>> for Poly<S> {
    fn add_assign(&mut self, rhs: &Poly<S>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<S: Alphabet> SubAssign<&Poly<S>> for Poly<S> {
    fn sub_assign(&mut self, rhs: &Poly<S>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<S: Alphabet> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Alphabet> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Alphabet> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl<S: Alphabet> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            _alphabet: PhantomData,
        }
    }
}

macro_rules! forward_owned {
    ($ty:ident, $tr:ident, $m:ident) => {
        impl<S: Alphabet> $tr for $ty<S> {
            type Output = $ty<S>;
            fn $m(self, rhs: $ty<S>) -> $ty<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);

impl<S: Alphabet> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

/// Quotient of two polynomials. Zero testing is exact (numerator emptiness);
/// cancellation is best effort and never needed for correctness.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<S: Alphabet> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Alphabet> RatFunc<S> {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn new(num: Poly<S>, den: Poly<S>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut r = RatFunc { num, den };
        r.normalize();
        Some(r)
    }

    pub fn numer(&self) -> &Poly<S> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<Poly<S>> {
        self.den.as_constant().map(|d| self.num.scale(&d.recip()))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let m = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !m.is_one() {
            self.num = self.num.div_exact(&Poly::monomial(BigRational::one(), m)).unwrap();
            self.den = self.den.div_exact(&Poly::monomial(BigRational::one(), m)).unwrap();
        }
        if !self.den.as_constant().is_some() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Poly::one();
            } else if let Some(q) = self.den.div_exact(&self.num) {
                self.num = Poly::one();
                self.den = q;
            }
        }
        let lead = self.den.leading().unwrap().1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    pub fn complexity(&self) -> usize {
        self.num.complexity() + self.den.complexity()
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| self.num.eval(point) / d)
    }
}

impl<S: Alphabet> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<S: Alphabet> fmt::Debug for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl<S: Alphabet> Add for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn add(self, rhs: &RatFunc<S>) -> RatFunc<S> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut r = if self.den == rhs.den {
            RatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
        } else {
            RatFunc {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            }
        };
        r.normalize();
        r
    }
}

impl<S: Alphabet> Sub for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn sub(self, rhs: &RatFunc<S>) -> RatFunc<S> {
        self + &(-rhs)
    }
}

impl<S: Alphabet> Mul for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn mul(self, rhs: &RatFunc<S>) -> RatFunc<S> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let mut r = RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        };
        r.normalize();
        r
    }
}

impl<S: Alphabet> Neg for &RatFunc<S> {
    type Output = RatFunc<S>;
    fn neg(self) -> RatFunc<S> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);

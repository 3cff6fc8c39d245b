use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Largest total derivative order any jet variable may carry.
pub const MAX_JET_ORDER: u32 = 10;

/// A coordinate of the jet space of u(x, t).
///
/// `U { x: 0, t: 0 }` is the dependent variable itself; there is no separate
/// "derivative of order zero".
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum JetVar {
    X,
    T,
    U { x: u8, t: u8 },
}

impl JetVar {
    pub const BASE_U: JetVar = JetVar::U { x: 0, t: 0 };

    pub fn deriv(x: u8, t: u8) -> JetVar {
        JetVar::U { x, t }
    }

    /// Derivative order; zero for x, t and u.
    pub fn order(&self) -> u32 {
        match *self {
            JetVar::U { x, t } => x as u32 + t as u32,
            _ => 0,
        }
    }

    pub fn is_derivative(&self) -> bool {
        self.order() > 0
    }

    pub fn has_t_derivative(&self) -> bool {
        matches!(*self, JetVar::U { t, .. } if t > 0)
    }

    fn key(&self) -> (u8, u32, u8) {
        match *self {
            JetVar::X => (0, 0, 0),
            JetVar::T => (0, 0, 1),
            JetVar::U { x, t } => (1, x as u32 + t as u32, t),
        }
    }
}

impl Ord for JetVar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for JetVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            JetVar::X => write!(f, "x"),
            JetVar::T => write!(f, "t"),
            JetVar::U { x: 0, t: 0 } => write!(f, "u"),
            JetVar::U { x, t } => write!(f, "u[{x},{t}]"),
        }
    }
}

/// Power product of jet variables, factors sorted by variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: SmallVec<[(JetVar, u16); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: JetVar) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: JetVar, e: u16) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.factors.push((v, e));
        }
        m
    }

    pub fn from_factors(iter: impl IntoIterator<Item = (JetVar, u16)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in iter {
            m = m.mul(&Monomial::power(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(JetVar, u16)] {
        &self.factors
    }

    pub fn exponent(&self, v: JetVar) -> u16 {
        self.factors
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| *e as u32).sum()
    }

    /// Sum of derivative orders counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|(v, e)| v.order() * *e as u32).sum()
    }

    pub fn max_order(&self) -> u32 {
        self.factors.iter().map(|(v, _)| v.order()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Lowers the exponent of `v` by one; `None` if `v` is absent.
    /// Returns the removed exponent alongside the quotient.
    pub fn lower(&self, v: JetVar) -> Option<(u16, Monomial)> {
        let pos = self.factors.iter().position(|(w, _)| *w == v)?;
        let mut out = self.clone();
        let e = out.factors[pos].1;
        if e == 1 {
            out.factors.remove(pos);
        } else {
            out.factors[pos].1 -= 1;
        }
        Some((e, out))
    }

    /// Splits into the part built from variables satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&JetVar) -> bool) -> (Monomial, Monomial) {
        let mut yes = Monomial::one();
        let mut no = Monomial::one();
        for &(v, e) in &self.factors {
            if pred(&v) {
                yes.factors.push((v, e));
            } else {
                no.factors.push((v, e));
            }
        }
        (yes, no)
    }
}

// Canonical order: derivative weight, then degree, then factors lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.factors.as_slice().cmp(other.factors.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order() {
        let vars = [
            JetVar::deriv(0, 2),
            JetVar::X,
            JetVar::deriv(1, 0),
            JetVar::BASE_U,
            JetVar::T,
            JetVar::deriv(0, 1),
            JetVar::deriv(1, 1),
        ];
        let mut sorted = vars.to_vec();
        sorted.sort();
        let names: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
        assert_eq!(
            names,
            ["x", "t", "u", "u[1,0]", "u[0,1]", "u[1,1]", "u[0,2]"]
        );
    }

    #[test]
    fn monomial_product_merges_exponents() {
        let m = Monomial::from_factors([(JetVar::BASE_U, 1), (JetVar::deriv(1, 0), 1)]);
        let sq = m.mul(&m);
        assert_eq!(sq.to_string(), "u^2*u[1,0]^2");
        assert_eq!(sq.weight(), 2);
        let (e, rest) = sq.lower(JetVar::BASE_U).unwrap();
        assert_eq!(e, 2);
        assert_eq!(rest.to_string(), "u*u[1,0]^2");
    }
}

use std::fmt;

use crate::diffalg::{DiffPoly, JetVar};
use crate::error::{Error, Result};

/// Infinitesimal generator `xi1 d/dx + xi2 d/dt + eta d/du` of a point transformation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    xi1: DiffPoly,
    xi2: DiffPoly,
    eta: DiffPoly,
}

impl VectorField {
    /// Components must be functions of x, t and u only.
    pub fn new(xi1: DiffPoly, xi2: DiffPoly, eta: DiffPoly) -> Result<Self> {
        for (name, c) in [("xi1", &xi1), ("xi2", &xi2), ("eta", &eta)] {
            if c.any_var(|v| v.is_derivative()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} depends on a derivative of u: {c}"
                )));
            }
        }
        Ok(VectorField { xi1, xi2, eta })
    }

    pub fn zero() -> Self {
        VectorField {
            xi1: DiffPoly::zero(),
            xi2: DiffPoly::zero(),
            eta: DiffPoly::zero(),
        }
    }

    /// Space translation.
    pub fn d_x() -> Self {
        VectorField {
            xi1: DiffPoly::one(),
            ..Self::zero()
        }
    }

    /// Time translation.
    pub fn d_t() -> Self {
        VectorField {
            xi2: DiffPoly::one(),
            ..Self::zero()
        }
    }

    pub fn xi1(&self) -> &DiffPoly {
        &self.xi1
    }

    pub fn xi2(&self) -> &DiffPoly {
        &self.xi2
    }

    pub fn eta(&self) -> &DiffPoly {
        &self.eta
    }

    pub fn is_zero(&self) -> bool {
        self.xi1.is_zero() && self.xi2.is_zero() && self.eta.is_zero()
    }

    /// Action on a function of x, t, u.
    pub fn apply(&self, f: &DiffPoly) -> DiffPoly {
        let mut out = &self.xi1 * &f.partial(JetVar::X);
        out += &(&self.xi2 * &f.partial(JetVar::T));
        out += &(&self.eta * &f.partial(JetVar::BASE_U));
        out
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            xi1: &self.xi1 + &other.xi1,
            xi2: &self.xi2 + &other.xi2,
            eta: &self.eta + &other.eta,
        }
    }

    pub fn scale(&self, c: &DiffPoly) -> VectorField {
        VectorField {
            xi1: &self.xi1 * c,
            xi2: &self.xi2 * c,
            eta: &self.eta * c,
        }
    }
}

/// Lie bracket `[v, w]`, component-wise `v(w^i) - w(v^i)`.
pub fn commutator(v: &VectorField, w: &VectorField) -> VectorField {
    VectorField {
        xi1: &v.apply(&w.xi1) - &w.apply(&v.xi1),
        xi2: &v.apply(&w.xi2) - &w.apply(&v.xi2),
        eta: &v.apply(&w.eta) - &w.apply(&v.eta),
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, d) in [(&self.xi1, "D_x"), (&self.xi2, "D_t"), (&self.eta, "D_u")] {
            if c.is_zero() {
                continue;
            }
            if *c == DiffPoly::one() {
                parts.push(d.to_string());
            } else {
                parts.push(format!("({c})*{d}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::parse_diffpoly;

    fn p(s: &str) -> DiffPoly {
        parse_diffpoly(s).unwrap()
    }

    #[test]
    fn translations_commute() {
        assert!(commutator(&VectorField::d_t(), &VectorField::d_x()).is_zero());
    }

    #[test]
    fn bracket_is_alternating() {
        let v = VectorField::new(p("x*u"), p("t^2"), p("u + x")).unwrap();
        assert!(commutator(&v, &v).is_zero());
    }

    #[test]
    fn dilation_bracket() {
        let xdx = VectorField::new(p("x"), p("0"), p("0")).unwrap();
        let br = commutator(&xdx, &VectorField::d_x());
        assert_eq!(br, VectorField::new(p("-1"), p("0"), p("0")).unwrap());
    }

    #[test]
    fn derivative_components_rejected() {
        assert!(VectorField::new(p("u[1,0]"), p("0"), p("0")).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(VectorField::d_x().to_string(), "D_x");
        let v = VectorField::new(p("lambda*t"), p("0"), p("1")).unwrap();
        assert_eq!(v.to_string(), "(lambda*t)*D_x + D_u");
    }
}

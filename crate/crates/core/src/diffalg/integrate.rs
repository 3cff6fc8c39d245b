use super::diffpoly::DiffPoly;
use super::jet::{JetVar, Monomial};
use crate::error::{Error, Result};
use crate::poly::int;

/// Finds `psi` with `D_x psi = p` by repeated integration by parts.
///
/// `p` may depend on x, t, u and pure x-derivatives of u. At each step the
/// highest derivative `u_k` must enter linearly; its coefficient is
/// integrated with respect to `u_{k-1}` and the x-derivative of that
/// antiderivative is subtracted, which strictly lowers the top order. The
/// integration constant is zero.
pub fn integrate_x(p: &DiffPoly) -> Result<DiffPoly> {
    if p.any_var(|v| v.has_t_derivative()) {
        return Err(Error::InvalidArgument(
            "x-integration needs an expression free of t-derivatives".into(),
        ));
    }
    let mut psi = DiffPoly::zero();
    let mut rem = p.clone();
    while !rem.is_zero() {
        let k = rem.max_order() as u8;
        if k == 0 {
            if rem.any_var(|v| *v == JetVar::BASE_U) {
                return Err(Error::NotADivergence {
                    remainder: rem.to_string(),
                });
            }
            for (m, c) in rem.terms() {
                let n = m.exponent(JetVar::X) as i64;
                let mono = m.mul(&Monomial::var(JetVar::X));
                psi.add_term(mono, c.scale(&int(n + 1).recip()));
            }
            break;
        }
        let top = JetVar::deriv(k, 0);
        let below = JetVar::deriv(k - 1, 0);
        let mut antider = DiffPoly::zero();
        for (m, c) in rem.terms() {
            match m.exponent(top) {
                0 => {}
                1 => {
                    let (_, rest) = m.lower(top).unwrap();
                    let e = rest.exponent(below) as i64;
                    let mono = rest.mul(&Monomial::var(below));
                    antider.add_term(mono, c.scale(&int(e + 1).recip()));
                }
                _ => {
                    return Err(Error::NotADivergence {
                        remainder: rem.to_string(),
                    })
                }
            }
        }
        rem -= &antider.d_x()?;
        psi += &antider;
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::text::parse_diffpoly;

    fn parse(s: &str) -> DiffPoly {
        parse_diffpoly(s).unwrap()
    }

    #[test]
    fn integrates_exact_derivatives() {
        for src in [
            "u^3*u[2,0] + u[5,0]*u[1,0]",
            "x^2*u*u[3,0] + t*u",
            "beta*u[1,0]^2*u[3,0]",
            "x",
        ] {
            let q = parse(src);
            let p = q.d_x().unwrap();
            let psi = integrate_x(&p).unwrap();
            assert_eq!(psi.d_x().unwrap(), p, "integrating D_x({src})");
        }
    }

    #[test]
    fn rejects_non_divergences() {
        assert!(matches!(
            integrate_x(&parse("u")),
            Err(Error::NotADivergence { .. })
        ));
        assert!(integrate_x(&parse("u[2,0]^2")).is_err());
        assert!(integrate_x(&parse("x*u[1,0]*u[2,0]^2")).is_err());
        assert!(integrate_x(&parse("u[0,1]")).is_err());
    }
}

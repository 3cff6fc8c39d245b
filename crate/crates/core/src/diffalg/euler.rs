use std::collections::BTreeMap;

use super::diffpoly::DiffPoly;
use super::jet::{JetVar, Monomial};
use crate::error::Result;

/// Variational derivative with respect to u.
///
/// The alternating sum over derivative coordinates is truncated at the
/// highest jet order present in `p`, where it terminates exactly.
pub fn euler_operator(p: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for v in p.jet_vars() {
        let JetVar::U { x, t } = v else { continue };
        let dp = p.partial(v);
        let term = dp.total_derivative_multi(x as u32, t as u32)?;
        if (x + t) % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    Ok(out)
}

/// Groups `p` by monomials in the selected free variables.
///
/// The returned values contain none of the free variables, and summing
/// `key * value` over the map gives back `p`.
pub fn collect_coefficients(
    p: &DiffPoly,
    free: impl Fn(&JetVar) -> bool,
) -> BTreeMap<Monomial, DiffPoly> {
    p.collect_by(free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::text::parse_diffpoly;

    fn parse(s: &str) -> DiffPoly {
        parse_diffpoly(s).unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_operator(&parse("u^3")).unwrap(), parse("3*u^2"));
        assert_eq!(
            euler_operator(&parse("1/2*u[1,0]^2")).unwrap(),
            parse("-u[2,0]")
        );
        let q = parse("u^2*u[2,0]");
        assert!(euler_operator(&q.d_x().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn euler_sees_explicit_coordinates() {
        // x*u_x = D_x(x*u) - u, so E_u gives -1.
        assert_eq!(euler_operator(&parse("x*u[1,0]")).unwrap(), parse("-1"));
        assert_eq!(euler_operator(&parse("t*u[0,1]")).unwrap(), parse("-1"));
    }

    #[test]
    fn collect_reassembles() {
        let p = parse("u[1,0]*u[2,0] + u[2,0] + x*u");
        let free = |v: &JetVar| v.is_derivative();
        let map = collect_coefficients(&p, free);
        assert_eq!(map.len(), 3);
        let mut back = DiffPoly::zero();
        for (k, v) in &map {
            back += &v.mul_monomial(k);
        }
        assert_eq!(back, p);
        assert_eq!(map[&Monomial::one()], parse("x*u"));
    }
}

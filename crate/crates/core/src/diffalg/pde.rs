use std::collections::HashMap;

use num_rational::BigRational;

use super::diffpoly::DiffPoly;
use super::jet::JetVar;
use super::param::{param, Param, ParamPoly};
use crate::error::Result;
use crate::poly::RatFunc;

/// The Gardner-Kawahara equation
/// `u_t + a u_x + lambda u u_x - alpha u^2 u_x + mu u_xxx + beta u_xxxxx = 0`
/// with each coefficient either symbolic or bound to a rational.
#[derive(Clone, Debug, PartialEq)]
pub struct PdeInstance {
    a: ParamPoly,
    lambda: ParamPoly,
    alpha: ParamPoly,
    mu: ParamPoly,
    beta: ParamPoly,
}

impl Default for PdeInstance {
    fn default() -> Self {
        Self::generic()
    }
}

impl PdeInstance {
    /// All five coefficients symbolic.
    pub fn generic() -> Self {
        PdeInstance {
            a: param(Param::A),
            lambda: param(Param::Lambda),
            alpha: param(Param::Alpha),
            mu: param(Param::Mu),
            beta: param(Param::Beta),
        }
    }

    /// Binds one coefficient to a rational value. Binding `c` is a no-op since
    /// the wave speed does not appear in the equation.
    pub fn with(mut self, p: Param, value: BigRational) -> Self {
        let v = ParamPoly::constant(value);
        match p {
            Param::A => self.a = v,
            Param::Lambda => self.lambda = v,
            Param::Alpha => self.alpha = v,
            Param::Mu => self.mu = v,
            Param::Beta => self.beta = v,
            Param::C => {}
        }
        self
    }

    pub fn param(&self, p: Param) -> ParamPoly {
        match p {
            Param::A => self.a.clone(),
            Param::Lambda => self.lambda.clone(),
            Param::Alpha => self.alpha.clone(),
            Param::Mu => self.mu.clone(),
            Param::Beta => self.beta.clone(),
            Param::C => param(Param::C),
        }
    }

    /// The x-derivative part `F` with `u_t = -F` on solutions.
    pub fn spatial_part(&self) -> DiffPoly {
        let u = DiffPoly::u();
        let ux = DiffPoly::u_deriv(1, 0);
        let mut f = ux.scale(&self.a);
        f += &(&u * &ux).scale(&self.lambda);
        f -= &(&u.pow(2) * &ux).scale(&self.alpha);
        f += &DiffPoly::u_deriv(3, 0).scale(&self.mu);
        f += &DiffPoly::u_deriv(5, 0).scale(&self.beta);
        f
    }

    /// Left-hand side as a canonical differential polynomial.
    pub fn lhs(&self) -> DiffPoly {
        &DiffPoly::u_deriv(0, 1) + &self.spatial_part()
    }

    /// Replaces `u_t` and all its differential consequences using the equation.
    pub fn substitute_evolution(&self, p: &DiffPoly) -> Result<DiffPoly> {
        let mut table = EvolutionTable::new(self);
        let mut reps: HashMap<JetVar, DiffPoly> = HashMap::new();
        for v in p.jet_vars() {
            if let JetVar::U { x, t } = v {
                if t > 0 {
                    reps.insert(v, table.replacement(x, t)?);
                }
            }
        }
        if reps.is_empty() {
            return Ok(p.clone());
        }
        Ok(p.substitute(|v| reps.get(&v).cloned()))
    }
}

/// Memoised expressions for `u[x,t]` with `t >= 1` in terms of x-derivatives only.
struct EvolutionTable {
    neg_f: DiffPoly,
    cache: HashMap<(u8, u8), DiffPoly>,
}

impl EvolutionTable {
    fn new(pde: &PdeInstance) -> Self {
        EvolutionTable {
            neg_f: -&pde.spatial_part(),
            cache: HashMap::new(),
        }
    }

    fn replacement(&mut self, x: u8, t: u8) -> Result<DiffPoly> {
        if let Some(r) = self.cache.get(&(x, t)) {
            return Ok(r.clone());
        }
        let r = if t == 1 {
            if x == 0 {
                self.neg_f.clone()
            } else {
                self.replacement(x - 1, 1)?.d_x()?
            }
        } else {
            // D_t of an x-only expression only introduces first t-derivatives.
            let prev = self.replacement(x, t - 1)?.d_t()?;
            let mut reps = HashMap::new();
            for v in prev.jet_vars() {
                if let JetVar::U { x: k, t: 1 } = v {
                    reps.insert(v, self.replacement(k, 1)?);
                }
            }
            prev.substitute(|v| reps.get(&v).cloned())
        };
        self.cache.insert((x, t), r.clone());
        Ok(r)
    }
}

/// Substitutes a rational value for one parameter inside a coefficient.
pub fn bind_param(c: &ParamPoly, p: Param, value: &BigRational) -> ParamPoly {
    let mut vals: Vec<Option<RatFunc<_>>> = vec![None; 6];
    vals[p.index()] = Some(RatFunc::from_rational(value.clone()));
    c.substitute(&vals)
        .as_poly()
        .expect("binding a parameter to a rational keeps polynomials polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::text::parse_diffpoly;
    use crate::poly::{int, rat};

    fn parse(s: &str) -> DiffPoly {
        parse_diffpoly(s).unwrap()
    }

    #[test]
    fn lhs_is_canonical() {
        let pde = PdeInstance::generic();
        let expected = parse(
            "u[0,1] + a*u[1,0] + lambda*u*u[1,0] - alpha*u^2*u[1,0] + mu*u[3,0] + beta*u[5,0]",
        );
        assert_eq!(pde.lhs(), expected);
    }

    #[test]
    fn u_t_is_replaced() {
        let pde = PdeInstance::generic();
        let r = pde.substitute_evolution(&DiffPoly::u_deriv(0, 1)).unwrap();
        assert_eq!(
            r,
            parse("-a*u[1,0] - lambda*u*u[1,0] + alpha*u^2*u[1,0] - mu*u[3,0] - beta*u[5,0]")
        );
        let rx = pde.substitute_evolution(&DiffPoly::u_deriv(1, 1)).unwrap();
        assert_eq!(rx, r.d_x().unwrap());
    }

    #[test]
    fn lhs_vanishes_on_solutions() {
        let pde = PdeInstance::generic();
        assert!(pde.substitute_evolution(&pde.lhs()).unwrap().is_zero());
        let dt_lhs = pde.lhs().d_t().unwrap();
        assert!(pde.substitute_evolution(&dt_lhs).unwrap().is_zero());
    }

    #[test]
    fn second_time_derivative() {
        let pde = PdeInstance::generic()
            .with(Param::Mu, int(0))
            .with(Param::Beta, int(0))
            .with(Param::Lambda, int(0))
            .with(Param::Alpha, int(0));
        // u_t = -a u_x  =>  u_tt = a^2 u_xx
        let r = pde.substitute_evolution(&DiffPoly::u_deriv(0, 2)).unwrap();
        assert_eq!(r, parse("a^2*u[2,0]"));
    }

    #[test]
    fn binding_a_parameter() {
        let c = parse_diffpoly("a*lambda + alpha").unwrap();
        let c = c.coefficient(&crate::diffalg::Monomial::one());
        let b = bind_param(&c, Param::Alpha, &rat(2, 1));
        assert_eq!(b.to_string(), "2 + a*lambda");
    }
}

//! Zero-order multipliers and conserved currents.
//!
//! A multiplier `Lambda(x, t, u)` makes `Lambda * Delta` a total divergence,
//! which the Euler operator detects exactly. For an evolution equation
//! `u_t + F = 0` the current follows from integration by parts: the density
//! is `int Lambda du`, and the flux is the x-antiderivative of
//! `Lambda F - d/dt(density)` (explicit t-dependence only).

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::diffalg::{euler_operator, integrate_x, DiffPoly, JetVar, Monomial, PdeInstance};
use crate::error::{Error, Result};
use crate::poly::int;
use crate::symmetry::{AnsatzDegrees, Component, DeterminingSystem, Unknown};

/// A function of x, t and u only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier(DiffPoly);

impl Multiplier {
    pub fn new(p: DiffPoly) -> Result<Self> {
        if p.any_var(|v| v.is_derivative()) {
            return Err(Error::InvalidArgument(format!(
                "multiplier must have jet order zero: {p}"
            )));
        }
        Ok(Multiplier(p))
    }

    pub fn poly(&self) -> &DiffPoly {
        &self.0
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Flux `psi1` and density `psi2` with `D_x psi1 + D_t psi2 = Lambda * Delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservedCurrent {
    pub flux: DiffPoly,
    pub density: DiffPoly,
}

fn multiplier_unknowns(degrees: AnsatzDegrees) -> Vec<Unknown> {
    degrees
        .monomials()
        .into_iter()
        .map(|(x, t, u)| Unknown {
            component: Component::Multiplier,
            x,
            t,
            u,
        })
        .collect()
}

/// `E_u[Lambda * Delta] = 0` for a polynomial ansatz, split into coefficients
/// of derivative monomials and powers of x, t, u.
pub fn multiplier_determining_system(
    pde: &PdeInstance,
    degrees: AnsatzDegrees,
) -> Result<DeterminingSystem> {
    let unknowns = multiplier_unknowns(degrees);
    let delta = pde.lhs();
    let residuals: Vec<DiffPoly> = unknowns
        .par_iter()
        .map(|u| euler_operator(&(&u.monomial() * &delta)))
        .collect::<Result<_>>()?;
    Ok(DeterminingSystem::from_residuals(degrees, unknowns, &residuals))
}

pub fn solve_multipliers(sys: &DeterminingSystem) -> Vec<Multiplier> {
    sys.nullspace()
        .into_iter()
        .map(|v| Multiplier(sys.assemble(&v, Component::Multiplier)))
        .collect()
}

/// Antiderivative in u of a polynomial in x, t, u.
fn integrate_u(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(JetVar::BASE_U) as i64;
        out.add_term(
            m.mul(&Monomial::var(JetVar::BASE_U)),
            c.scale(&int(e + 1).recip()),
        );
    }
    out
}

/// Builds the current of a multiplier. Fails with [`Error::NotADivergence`]
/// when `Lambda * Delta` is not a divergence.
pub fn reconstruct_current(lambda: &Multiplier, pde: &PdeInstance) -> Result<ConservedCurrent> {
    let density = integrate_u(lambda.poly());
    let rest = &(lambda.poly() * &pde.spatial_part()) - &density.partial(JetVar::T);
    let flux = integrate_x(&rest)?;
    Ok(ConservedCurrent { flux, density })
}

/// `D_x psi1 + D_t psi2 - Lambda * Delta`; zero exactly when the current is valid.
pub fn current_residual(
    lambda: &Multiplier,
    cur: &ConservedCurrent,
    pde: &PdeInstance,
) -> Result<DiffPoly> {
    let div = &cur.flux.d_x()? + &cur.density.d_t()?;
    Ok(&div - &(lambda.poly() * &pde.lhs()))
}

/// Exact identity check, not just on solutions.
pub fn verify_current(lambda: &Multiplier, cur: &ConservedCurrent, pde: &PdeInstance) -> bool {
    current_residual(lambda, cur, pde).is_ok_and(|r| r.is_zero())
}

/// Neither component vanishes on solutions.
pub fn is_nontrivial(cur: &ConservedCurrent, pde: &PdeInstance) -> Result<bool> {
    Ok(!pde.substitute_evolution(&cur.flux)?.is_zero()
        && !pde.substitute_evolution(&cur.density)?.is_zero())
}

/// The current of `Lambda = u` with `mu*u*u[1,0]` in place of `mu*u*u[2,0]`
/// in the flux. It fails the divergence identity and serves as a negative
/// control in reports and tests.
pub fn misprinted_quadratic_current(pde: &PdeInstance) -> ConservedCurrent {
    let u = DiffPoly::u();
    let u1 = DiffPoly::u_deriv(1, 0);
    let u2 = DiffPoly::u_deriv(2, 0);
    let u3 = DiffPoly::u_deriv(3, 0);
    let u4 = DiffPoly::u_deriv(4, 0);
    let p = |name| DiffPoly::constant(pde.param(name));
    use crate::diffalg::Param::*;
    let half = crate::poly::rat(1, 2);
    let mut flux = (&p(A) * &u.pow(2)).scale_rational(&half);
    flux += &(&p(Lambda) * &u.pow(3)).scale_rational(&crate::poly::rat(1, 3));
    flux -= &(&p(Alpha) * &u.pow(4)).scale_rational(&crate::poly::rat(1, 4));
    flux += &(&p(Mu) * &(&u * &u1));
    flux -= &(&p(Mu) * &u1.pow(2)).scale_rational(&half);
    flux += &(&p(Beta) * &(&u * &u4));
    flux -= &(&p(Beta) * &(&u1 * &u3));
    flux += &(&p(Beta) * &u2.pow(2)).scale_rational(&half);
    ConservedCurrent {
        flux,
        density: u.pow(2).scale_rational(&half),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurrentEntry {
    pub multiplier: String,
    pub flux: String,
    pub density: String,
    pub verified: bool,
    pub nontrivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    pub degrees: AnsatzDegrees,
    pub unknowns: usize,
    pub equations: usize,
    pub multipliers: Vec<String>,
    pub currents: Vec<CurrentEntry>,
    pub notes: Vec<String>,
}

impl ConservationReport {
    pub fn compute(pde: &PdeInstance, degrees: AnsatzDegrees) -> Result<Self> {
        let sys = multiplier_determining_system(pde, degrees)?;
        let mults = solve_multipliers(&sys);
        let mut currents = Vec::new();
        for m in &mults {
            let cur = reconstruct_current(m, pde)?;
            currents.push(CurrentEntry {
                multiplier: m.to_string(),
                flux: cur.flux.to_string(),
                density: cur.density.to_string(),
                verified: verify_current(m, &cur, pde),
                nontrivial: is_nontrivial(&cur, pde)?,
            });
        }
        let mut notes = Vec::new();
        let quad = Multiplier(DiffPoly::u());
        if mults.contains(&quad) {
            let bad = misprinted_quadratic_current(pde);
            let r = current_residual(&quad, &bad, pde)?;
            notes.push(format!(
                "flux for multiplier u with term mu*u*u[1,0] fails the divergence identity \
                 (residual {r}); the reconstructed flux carries mu*u*u[2,0]"
            ));
        }
        Ok(ConservationReport {
            degrees,
            unknowns: sys.unknowns.len(),
            equations: sys.equations.len(),
            multipliers: mults.iter().map(ToString::to_string).collect(),
            currents,
            notes,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "ansatz degrees (x,t,u) = ({},{},{}); {} unknowns, {} equations\n",
            self.degrees.x, self.degrees.t, self.degrees.u, self.unknowns, self.equations
        );
        for c in &self.currents {
            s.push_str(&format!(
                "Lambda = {}\n  psi1 = {}\n  psi2 = {}\n  verified = {}, nontrivial = {}\n",
                c.multiplier, c.flux, c.density, c.verified, c.nontrivial
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::VectorField;
use super::prolong::invariance_residual;
use crate::diffalg::{collect_coefficients, DiffPoly, JetVar, Monomial, ParamAlphabet, ParamPoly, PdeInstance};
use crate::error::Result;
use crate::linalg::{Echelon, SparseRow};

/// Maximum polynomial degree in x, t and u of every unknown function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzDegrees {
    pub x: u32,
    pub t: u32,
    pub u: u32,
}

impl AnsatzDegrees {
    pub const fn new(x: u32, t: u32, u: u32) -> Self {
        AnsatzDegrees { x, t, u }
    }

    pub fn monomials(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for i in 0..=self.x {
            for j in 0..=self.t {
                for k in 0..=self.u {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

impl Default for AnsatzDegrees {
    fn default() -> Self {
        AnsatzDegrees::new(2, 2, 2)
    }
}

/// Which unknown function a coefficient belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Xi1,
    Xi2,
    Eta,
    Multiplier,
}

/// Coefficient of `x^i t^j u^k` in one unknown function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unknown {
    pub component: Component,
    pub x: u32,
    pub t: u32,
    pub u: u32,
}

impl Unknown {
    pub fn monomial(&self) -> DiffPoly {
        Monomial::from_factors([
            (JetVar::X, self.x as u16),
            (JetVar::T, self.t as u16),
            (JetVar::BASE_U, self.u as u16),
        ])
        .into_diffpoly()
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.component {
            Component::Xi1 => "xi1",
            Component::Xi2 => "xi2",
            Component::Eta => "eta",
            Component::Multiplier => "Lambda",
        };
        write!(f, "{name}[x^{} t^{} u^{}]", self.x, self.t, self.u)
    }
}

trait IntoDiffPoly {
    fn into_diffpoly(self) -> DiffPoly;
}

impl IntoDiffPoly for Monomial {
    fn into_diffpoly(self) -> DiffPoly {
        DiffPoly::term(ParamPoly::one(), self)
    }
}

/// Homogeneous linear system in the ansatz coefficients.
#[derive(Clone, Debug)]
pub struct DeterminingSystem {
    pub degrees: AnsatzDegrees,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<SparseRow<ParamAlphabet>>,
}

impl DeterminingSystem {
    /// Assembles the system from the residual produced by each unknown alone.
    ///
    /// Every residual must be linear in its unknown, so the coefficient of
    /// each jet monomial (including powers of x, t, u) gives one equation.
    pub fn from_residuals(
        degrees: AnsatzDegrees,
        unknowns: Vec<Unknown>,
        residuals: &[DiffPoly],
    ) -> Self {
        let mut rows: BTreeMap<(Monomial, Monomial), SparseRow<ParamAlphabet>> = BTreeMap::new();
        for (k, r) in residuals.iter().enumerate() {
            for (dmono, rest) in collect_coefficients(r, |v| v.is_derivative()) {
                for (base, c) in rest.terms() {
                    rows.entry((dmono.clone(), base.clone()))
                        .or_default()
                        .push((k, c.clone()));
                }
            }
        }
        DeterminingSystem {
            degrees,
            unknowns,
            equations: rows.into_values().collect(),
        }
    }

    /// Evaluates every equation at a given assignment of the unknowns.
    pub fn residuals_at(&self, values: &[ParamPoly]) -> Vec<ParamPoly> {
        self.equations
            .iter()
            .map(|row| {
                row.iter().fold(ParamPoly::zero(), |acc, (k, c)| {
                    &acc + &(c * &values[*k])
                })
            })
            .collect()
    }

    pub fn echelon(&self) -> Echelon<ParamAlphabet> {
        Echelon::new(&self.equations, self.unknowns.len())
    }

    /// Exact nullspace basis over generic parameters.
    pub fn nullspace(&self) -> Vec<Vec<ParamPoly>> {
        self.echelon().nullspace()
    }

    /// Assembles `sum value_k * x^i t^j u^k` for one component.
    pub fn assemble(&self, values: &[ParamPoly], component: Component) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (unk, v) in self.unknowns.iter().zip(values) {
            if unk.component == component && !v.is_zero() {
                out += &unk.monomial().scale(v);
            }
        }
        out
    }
}

fn symmetry_unknowns(degrees: AnsatzDegrees) -> Vec<Unknown> {
    let mut out = Vec::new();
    for component in [Component::Xi1, Component::Xi2, Component::Eta] {
        for (x, t, u) in degrees.monomials() {
            out.push(Unknown { component, x, t, u });
        }
    }
    out
}

fn basis_field(unk: &Unknown) -> VectorField {
    let m = unk.monomial();
    let z = DiffPoly::zero();
    let (xi1, xi2, eta) = match unk.component {
        Component::Xi1 => (m, z.clone(), z),
        Component::Xi2 => (z.clone(), m, z),
        Component::Eta => (z.clone(), z, m),
        Component::Multiplier => unreachable!("not a vector-field component"),
    };
    VectorField::new(xi1, xi2, eta).expect("ansatz monomials are order zero")
}

/// Determining equations for point symmetries under a polynomial ansatz.
pub fn determining_system(pde: &PdeInstance, degrees: AnsatzDegrees) -> Result<DeterminingSystem> {
    let unknowns = symmetry_unknowns(degrees);
    let residuals: Vec<DiffPoly> = unknowns
        .par_iter()
        .map(|u| invariance_residual(&basis_field(u), pde))
        .collect::<Result<_>>()?;
    Ok(DeterminingSystem::from_residuals(degrees, unknowns, &residuals))
}

/// One generator per nullspace basis vector.
pub fn solve_determining(sys: &DeterminingSystem) -> Vec<VectorField> {
    sys.nullspace()
        .into_iter()
        .map(|v| {
            VectorField::new(
                sys.assemble(&v, Component::Xi1),
                sys.assemble(&v, Component::Xi2),
                sys.assemble(&v, Component::Eta),
            )
            .expect("ansatz monomials are order zero")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::Param;
    use crate::poly::int;

    #[test]
    fn constant_ansatz_gives_translations() {
        let pde = PdeInstance::generic();
        let sys = determining_system(&pde, AnsatzDegrees::new(0, 0, 0)).unwrap();
        assert_eq!(sys.unknowns.len(), 3);
        let basis = solve_determining(&sys);
        assert_eq!(basis.len(), 2);
        assert!(basis.contains(&VectorField::d_x()));
        assert!(basis.contains(&VectorField::d_t()));
    }

    #[test]
    fn pinned_time_translation_satisfies_every_equation() {
        let pde = PdeInstance::generic();
        let sys = determining_system(&pde, AnsatzDegrees::new(0, 0, 0)).unwrap();
        // unknown order: xi1, xi2, eta
        let values = vec![ParamPoly::zero(), ParamPoly::one(), ParamPoly::zero()];
        assert!(sys.residuals_at(&values).iter().all(|r| r.is_zero()));
        let bad = vec![ParamPoly::zero(), ParamPoly::zero(), ParamPoly::one()];
        assert!(sys.residuals_at(&bad).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn empty_system_single_unknown() {
        let sys = DeterminingSystem {
            degrees: AnsatzDegrees::new(0, 0, 0),
            unknowns: vec![Unknown {
                component: Component::Eta,
                x: 0,
                t: 0,
                u: 0,
            }],
            equations: vec![],
        };
        let basis = solve_determining(&sys);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].eta(), &DiffPoly::one());
    }

    #[test]
    fn vanishing_alpha_admits_galilean_boost() {
        let pde = PdeInstance::generic().with(Param::Alpha, int(0));
        let sys = determining_system(&pde, AnsatzDegrees::new(1, 1, 1)).unwrap();
        let basis = solve_determining(&sys);
        let printed: Vec<String> = basis.iter().map(|v| v.to_string()).collect();
        assert_eq!(printed, ["D_x", "D_t", "(lambda*t)*D_x + D_u"]);
    }
}

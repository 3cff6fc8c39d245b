use std::collections::BTreeMap;

use super::field::VectorField;
use crate::diffalg::{DiffPoly, JetVar, PdeInstance};
use crate::error::{Error, Result};

/// Highest prolongation order supported.
pub const MAX_PROLONGATION: u32 = 5;

/// A vector field together with its prolongation coefficients `eta^J`,
/// keyed by the multi-index `(x-count, t-count)`.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    base: VectorField,
    coefficients: BTreeMap<(u8, u8), DiffPoly>,
}

impl ProlongedField {
    pub fn base(&self) -> &VectorField {
        &self.base
    }

    /// `eta^J`; the empty multi-index gives the base `eta`.
    pub fn coefficient(&self, nx: u8, nt: u8) -> Option<&DiffPoly> {
        if (nx, nt) == (0, 0) {
            return Some(self.base.eta());
        }
        self.coefficients.get(&(nx, nt))
    }

    pub fn coefficients(&self) -> &BTreeMap<(u8, u8), DiffPoly> {
        &self.coefficients
    }
}

/// Computes `D_J Q` for the characteristic `Q = eta - xi1 u_x - xi2 u_t`,
/// walking one index at a time and caching intermediate derivatives.
struct CharacteristicDerivatives<'a> {
    field: &'a VectorField,
    cache: BTreeMap<(u8, u8), DiffPoly>,
}

impl<'a> CharacteristicDerivatives<'a> {
    fn new(field: &'a VectorField) -> Self {
        let q = &(field.eta() - &(field.xi1() * &DiffPoly::u_deriv(1, 0)))
            - &(field.xi2() * &DiffPoly::u_deriv(0, 1));
        let mut cache = BTreeMap::new();
        cache.insert((0, 0), q);
        CharacteristicDerivatives { field, cache }
    }

    fn get(&mut self, nx: u8, nt: u8) -> Result<DiffPoly> {
        if let Some(d) = self.cache.get(&(nx, nt)) {
            return Ok(d.clone());
        }
        let d = if nt > 0 {
            self.get(nx, nt - 1)?.d_t()?
        } else {
            self.get(nx - 1, 0)?.d_x()?
        };
        self.cache.insert((nx, nt), d.clone());
        Ok(d)
    }

    /// `eta^J = D_J Q + xi1 u_{J,x} + xi2 u_{J,t}`.
    fn coefficient(&mut self, nx: u8, nt: u8) -> Result<DiffPoly> {
        let mut c = self.get(nx, nt)?;
        c += &(self.field.xi1() * &DiffPoly::u_deriv(nx + 1, nt));
        c += &(self.field.xi2() * &DiffPoly::u_deriv(nx, nt + 1));
        Ok(c)
    }
}

/// Prolongs `vf` to every multi-index of order `1..=order`.
pub fn prolong(vf: &VectorField, order: u32) -> Result<ProlongedField> {
    if order == 0 || order > MAX_PROLONGATION {
        return Err(Error::InvalidArgument(format!(
            "prolongation order must be in 1..={MAX_PROLONGATION}, got {order}"
        )));
    }
    let mut chars = CharacteristicDerivatives::new(vf);
    let mut coefficients = BTreeMap::new();
    for total in 1..=order as u8 {
        for nt in 0..=total {
            let nx = total - nt;
            coefficients.insert((nx, nt), chars.coefficient(nx, nt)?);
        }
    }
    Ok(ProlongedField {
        base: vf.clone(),
        coefficients,
    })
}

/// `pr V (Delta)` restricted to solutions: `u_t` and its consequences are
/// eliminated through the equation. Zero iff `vf` is a point symmetry.
pub fn invariance_residual(vf: &VectorField, pde: &PdeInstance) -> Result<DiffPoly> {
    let delta = pde.lhs();
    let mut chars = CharacteristicDerivatives::new(vf);
    let mut out = vf.apply(&delta);
    for v in delta.jet_vars() {
        if let JetVar::U { x, t } = v {
            if x + t == 0 {
                continue;
            }
            let eta_j = chars.coefficient(x, t)?;
            out += &(&eta_j * &delta.partial(v));
        }
    }
    pde.substitute_evolution(&out)
}

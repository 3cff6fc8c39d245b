use std::fmt;

use serde::Serialize;

use crate::diffalg::{integrate_x, param, DiffPoly, JetVar, Param, ParamPoly, PdeInstance};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrationLevel {
    Unintegrated,
    OnceIntegrated,
}

/// Polynomial ODE in U(z) and its z-derivatives.
///
/// Stored as a differential polynomial whose jet variable `u[k,0]` stands for
/// the k-th derivative of U, so `D_x` acts as `d/dz`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedOde {
    poly: DiffPoly,
    level: IntegrationLevel,
}

impl ReducedOde {
    pub fn new(poly: DiffPoly, level: IntegrationLevel) -> Result<Self> {
        if poly.any_var(|v| matches!(v, JetVar::X | JetVar::T) || v.has_t_derivative()) {
            return Err(Error::InvalidArgument(format!(
                "reduced ODE must depend on U and its z-derivatives only: {poly}"
            )));
        }
        Ok(ReducedOde { poly, level })
    }

    pub fn poly(&self) -> &DiffPoly {
        &self.poly
    }

    pub fn level(&self) -> IntegrationLevel {
        self.level
    }

    /// Highest derivative order of U present.
    pub fn order(&self) -> u32 {
        self.poly.max_order()
    }

    /// `d/dz` of the left-hand side.
    pub fn derivative(&self) -> Result<DiffPoly> {
        self.poly.d_x()
    }

    /// Coefficient of `U^p (U')^q ...` given as pairs (derivative order, power).
    pub fn coefficient(&self, factors: &[(u8, u16)]) -> ParamPoly {
        let m = crate::diffalg::Monomial::from_factors(
            factors.iter().map(|&(k, e)| (JetVar::deriv(k, 0), e)),
        );
        self.poly.coefficient(&m)
    }
}

impl fmt::Display for ReducedOde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::diffalg::write_with_names(f, &self.poly, |v| match v {
            JetVar::U { x: 0, .. } => "U".to_string(),
            JetVar::U { x, .. } => format!("U^({x})"),
            other => other.to_string(),
        })
    }
}

/// Both forms of the travelling-wave reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub unintegrated: ReducedOde,
    pub once_integrated: ReducedOde,
}

/// Substitutes `u(x, t) = U(z)`, `z = x - c t`; integrates once in z with zero constant.
pub fn travelling_wave_reduce(pde: &PdeInstance) -> Result<Reduction> {
    let minus_c = -&param(Param::C);
    let reduced = pde.lhs().substitute(|v| match v {
        JetVar::U { x, t } => {
            let coeff = minus_c.pow(t as u32);
            Some(DiffPoly::u_deriv(x + t, 0).scale(&coeff))
        }
        _ => None,
    });
    let unintegrated = ReducedOde::new(reduced, IntegrationLevel::Unintegrated)?;
    let integrated = integrate_x(unintegrated.poly())?;
    Ok(Reduction {
        unintegrated,
        once_integrated: ReducedOde::new(integrated, IntegrationLevel::OnceIntegrated)?,
    })
}

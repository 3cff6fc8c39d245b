use super::ypoly::{lift_param, TanhPoly, TanhSymbol, YPolynomial, MAX_ANSATZ_DEGREE};
use crate::diffalg::{DiffPoly, JetVar, PdeInstance};
use crate::error::{Error, Result};
use crate::symmetry::{travelling_wave_reduce, IntegrationLevel, ReducedOde};

/// Degree M of the tanh polynomial that balances the top derivative
/// `U^(k)` (Y-degree M + k) against the top pure power `U^p` (degree pM).
pub fn balance(ode: &ReducedOde) -> Result<u32> {
    if ode.level() != IntegrationLevel::OnceIntegrated {
        return Err(Error::InvalidArgument(
            "balancing expects the once-integrated ODE".into(),
        ));
    }
    let mut top_order = 0u32;
    let mut top_power = 0u32;
    for (m, _) in ode.poly().terms() {
        let order = m.max_order();
        if order > 0 {
            if m.degree() == 1 {
                top_order = top_order.max(order);
            }
        } else {
            top_power = top_power.max(m.exponent(JetVar::BASE_U) as u32);
        }
    }
    if top_order == 0 {
        return Err(Error::NoBalance("no linear derivative term"));
    }
    if top_power < 2 {
        return Err(Error::NoBalance("no nonlinear power of U"));
    }
    let (num, den) = (top_order, top_power - 1);
    if num % den != 0 {
        return Err(Error::NonIntegerBalance {
            num: num as i64,
            den: den as i64,
        });
    }
    Ok(num / den)
}

/// `U = a0 + a1 Y + ... + aM Y^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TanhAnsatz {
    coefficients: Vec<TanhPoly>,
}

impl TanhAnsatz {
    /// All coefficients left as the symbols `a0..aM`.
    pub fn symbolic(m: u32) -> Result<Self> {
        if m == 0 || m as usize > MAX_ANSATZ_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "ansatz degree must be in 1..={MAX_ANSATZ_DEGREE}, got {m}"
            )));
        }
        Ok(TanhAnsatz {
            coefficients: (0..=m as u8).map(|i| TanhSymbol::Coef(i).poly()).collect(),
        })
    }

    pub fn from_coefficients(coefficients: Vec<TanhPoly>) -> Result<Self> {
        if coefficients.len() < 2 || coefficients.len() > MAX_ANSATZ_DEGREE + 1 {
            return Err(Error::InvalidArgument(format!(
                "ansatz needs 2..={} coefficients, got {}",
                MAX_ANSATZ_DEGREE + 1,
                coefficients.len()
            )));
        }
        Ok(TanhAnsatz { coefficients })
    }

    pub fn m(&self) -> u32 {
        self.coefficients.len() as u32 - 1
    }

    pub fn coefficients(&self) -> &[TanhPoly] {
        &self.coefficients
    }

    pub fn profile(&self) -> YPolynomial {
        YPolynomial::from_coefficients(self.coefficients.clone())
    }

    /// `U, U', ..., U^(n)` as Y-polynomials.
    pub fn derivatives(&self, n: usize) -> Vec<YPolynomial> {
        let mut out = vec![self.profile()];
        for k in 0..n {
            let next = out[k].d_z();
            out.push(next);
        }
        out
    }
}

fn substitute_poly(p: &DiffPoly, ansatz: &TanhAnsatz) -> YPolynomial {
    let derivs = ansatz.derivatives(p.max_order() as usize);
    let mut out = YPolynomial::zero();
    for (m, c) in p.terms() {
        let mut term = YPolynomial::constant(lift_param(c));
        for &(v, e) in m.factors() {
            if let JetVar::U { x, .. } = v {
                term = term.mul(&derivs[x as usize].pow(e as u32));
            }
        }
        out = out.add(&term);
    }
    out
}

/// The ODE left-hand side with `U` replaced by the ansatz and `d/dz` by `(1 - Y^2) d/dY`.
pub fn substitute_ansatz(ode: &ReducedOde, ansatz: &TanhAnsatz) -> YPolynomial {
    substitute_poly(ode.poly(), ansatz)
}

/// One equation per power `Y^0..Y^d`, where d is the degree of the
/// symbolic substitution (so generic coefficients never drop an equation).
pub fn algebraic_system(ode: &ReducedOde, ansatz: &TanhAnsatz) -> Vec<TanhPoly> {
    let y = substitute_ansatz(ode, ansatz);
    let generic = substitute_ansatz(ode, &TanhAnsatz::symbolic(ansatz.m()).expect("valid degree"));
    let n = generic.coefficients().len().max(y.coefficients().len());
    (0..n).map(|k| y.coefficient(k)).collect()
}

/// `(a - c) U + (lambda/2) U^2 - (alpha/3) U^3 + mu U'' + beta U''''`.
pub fn once_integrated_ode(pde: &PdeInstance) -> Result<ReducedOde> {
    Ok(travelling_wave_reduce(pde)?.once_integrated)
}

/// The once-integrated form with its derivative orders one too high
/// (`mu U''' + beta U'''''`). No tanh family satisfies it.
pub fn uncorrected_ode(pde: &PdeInstance) -> Result<ReducedOde> {
    let good = once_integrated_ode(pde)?;
    let shifted = good.poly().substitute(|v| match v {
        JetVar::U { x, t } if x > 0 => Some(DiffPoly::u_deriv(x + 1, t)),
        _ => None,
    });
    ReducedOde::new(shifted, IntegrationLevel::OnceIntegrated)
}

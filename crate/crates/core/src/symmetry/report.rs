use serde::Serialize;

use super::determining::{determining_system, solve_determining, AnsatzDegrees};
use super::field::{commutator, VectorField};
use super::reduce::travelling_wave_reduce;
use crate::diffalg::PdeInstance;
use crate::error::Result;

/// Generators, their brackets and the travelling-wave reduction, in text form.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub degrees: AnsatzDegrees,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub generators: Vec<String>,
    /// `commutators[i][j]` is `[V_i, V_j]` written in the generator basis when
    /// possible, otherwise as a raw field.
    pub commutators: Vec<Vec<String>>,
    pub reduced_ode: String,
    pub once_integrated_ode: String,
    #[serde(skip)]
    pub fields: Vec<VectorField>,
}

impl SymmetryReport {
    pub fn compute(pde: &PdeInstance, degrees: AnsatzDegrees) -> Result<Self> {
        let sys = determining_system(pde, degrees)?;
        let rank = sys.echelon().rank();
        let fields = solve_determining(&sys);
        let commutators = fields
            .iter()
            .map(|v| {
                fields
                    .iter()
                    .map(|w| express(&commutator(v, w), &fields))
                    .collect()
            })
            .collect();
        let red = travelling_wave_reduce(pde)?;
        Ok(SymmetryReport {
            degrees,
            unknowns: sys.unknowns.len(),
            equations: sys.equations.len(),
            rank,
            generators: fields.iter().map(|v| v.to_string()).collect(),
            commutators,
            reduced_ode: red.unintegrated.to_string(),
            once_integrated_ode: red.once_integrated.to_string(),
            fields,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "ansatz degrees (x,t,u) = ({},{},{}); {} unknowns, {} equations, rank {}\n",
            self.degrees.x, self.degrees.t, self.degrees.u, self.unknowns, self.equations, self.rank
        );
        for (i, g) in self.generators.iter().enumerate() {
            s.push_str(&format!("V{} = {g}\n", i + 1));
        }
        for (i, row) in self.commutators.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                s.push_str(&format!("[V{}, V{}] = {c}\n", i + 1, j + 1));
            }
        }
        s.push_str(&format!("reduced ODE: {} = 0\n", self.reduced_ode));
        s.push_str(&format!("once integrated: {} = 0\n", self.once_integrated_ode));
        s
    }
}

/// Writes `f` as `+-V_k` if it matches a generator up to sign.
fn express(f: &VectorField, basis: &[VectorField]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let neg = f.scale(&-crate::diffalg::DiffPoly::one());
    for (k, b) in basis.iter().enumerate() {
        if b == f {
            return format!("V{}", k + 1);
        }
        if *b == neg {
            return format!("-V{}", k + 1);
        }
    }
    f.to_string()
}

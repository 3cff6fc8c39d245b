//! Tanh-method solitary waves.
//!
//! The once-integrated travelling-wave ODE is balanced to find the degree M
//! of `U = sum a_i tanh(z)^i`, derivatives become `(1 - Y^2) d/dY` on
//! polynomials in `Y = tanh(z)`, and the coefficient of every power of Y
//! must vanish. The resulting system is exposed as is; the known families
//! are checked against it exactly rather than solved for.

mod ansatz;
mod family;
mod figures;
mod ypoly;

pub use ansatz::{
    algebraic_system, balance, once_integrated_ode, substitute_ansatz, uncorrected_ode, TanhAnsatz,
};
pub use family::{
    closed_form_derivatives, eval_solution, verify_family, BoundSolution, FamilyId, FamilyReport,
    SolutionFamily, TanhReport, WaveDerivatives, MAX_DERIVATIVE,
};
pub use figures::{standard_figures, Axis, Figure, FigureData, FigureKind};
pub use ypoly::{
    horner, tanh_guarded, TanhAlphabet, TanhPoly, TanhSymbol, YPolynomial, MAX_ANSATZ_DEGREE,
};

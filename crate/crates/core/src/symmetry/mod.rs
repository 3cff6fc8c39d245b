//! Point symmetries: prolongation, determining equations under a polynomial
//! ansatz, their exact solution, Lie brackets, and the travelling-wave
//! reduction.
//!
//! The adjoint representation is not computed: the recovered algebra is the
//! abelian span of the two translations, on which it acts trivially.

mod determining;
mod field;
mod prolong;
mod reduce;
mod report;

pub use determining::{
    determining_system, solve_determining, AnsatzDegrees, Component, DeterminingSystem, Unknown,
};
pub use field::{commutator, VectorField};
pub use prolong::{invariance_residual, prolong, ProlongedField, MAX_PROLONGATION};
pub use reduce::{travelling_wave_reduce, IntegrationLevel, ReducedOde, Reduction};
pub use report::SymmetryReport;

//! Symbolic-numeric toolkit for the Gardner-Kawahara equation
//!
//! `u_t + a u_x + lambda u u_x - alpha u^2 u_x + mu u_xxx + beta u_xxxxx = 0`.
//!
//! * [`diffalg`]: exact jet-space algebra (total derivatives, Euler operator,
//!   evolution substitution).
//! * [`symmetry`]: prolongation, determining equations, point symmetries and
//!   travelling-wave reduction.
//! * [`conslaw`]: zero-order multipliers and conserved currents.
//! * [`series`]: power-series solutions of the reduced ODE.
//! * [`tanhsolve`]: tanh-ansatz algebraic systems and closed-form families.
//! * [`numerics`]: periodic method-of-lines integrator and conserved integrals.

pub mod conslaw;
pub mod diffalg;
pub mod error;
pub mod linalg;
pub mod numerics;
pub mod poly;
pub mod series;
pub mod symmetry;
pub mod tanhsolve;

pub use error::{Error, Result};

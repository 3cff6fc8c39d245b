//! Exact differential-polynomial algebra over the jet space of u(x, t).

mod diffpoly;
mod euler;
mod integrate;
mod jet;
mod param;
mod pde;
mod text;

pub use diffpoly::{Direction, DiffPoly};
pub use euler::{collect_coefficients, euler_operator};
pub use integrate::integrate_x;
pub use jet::{JetVar, Monomial, MAX_JET_ORDER};
pub use param::{param, Param, ParamAlphabet, ParamPoly};
pub use pde::{bind_param, PdeInstance};
pub use text::{parse_diffpoly, parse_param_poly, write_with_names};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("jet order {order} exceeds the bound {bound}")]
    JetOrderOverflow { order: u32, bound: u32 },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("expression is not a total divergence; remainder {remainder}")]
    NotADivergence { remainder: String },

    #[error("balance {num}/{den} is not a positive integer")]
    NonIntegerBalance { num: i64, den: i64 },

    #[error("cannot balance: {0}")]
    NoBalance(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter {name} = {given} is inconsistent with the family (expected {expected})")]
    ConstraintViolation {
        name: String,
        given: String,
        expected: String,
    },

    #[error("missing parameter {0}")]
    MissingParameter(String),

    #[error("|z| = {z} is outside the evaluation radius {radius}")]
    OutsideRadius { z: f64, radius: f64 },

    #[error("stencil of half-width {half_width} does not fit a grid of {points} points")]
    StencilTooWide { half_width: usize, points: usize },

    #[error("time step {dt} exceeds the explicit stability limit {limit}")]
    StabilityViolated { dt: f64, limit: f64 },

    #[error("non-finite value at grid index {index}, t = {time}")]
    NonFinite { index: usize, time: f64 },

    #[error("linear solve failed: {0}")]
    LinearSolve(String),
}

pub type Result<T> = std::result::Result<T, Error>;

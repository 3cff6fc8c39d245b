//! Method of lines on a periodic grid.
//!
//! Space is discretized by central finite differences of order 4, 6 or 8.
//! The nonlinear terms are written in conservative form,
//! `-(lambda/2) (u^2)_x + (alpha/3) (u^3)_x`, so the discrete sum of u is
//! conserved to round-off. Time stepping is either classical RK4 or a
//! linearly implicit IMEX Runge-Kutta scheme that treats
//! `a u_x + mu u_xxx + beta u_xxxxx` implicitly. The implicit stage
//! equations are circulant and are solved exactly by FFT diagonalization
//! with the stencil's own symbol.

mod stencil;
mod stepper;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use stencil::Stencil;
pub use stepper::{
    explicit_stability_limit, integrate, Scheme, Stepper, StepperConfig, Trajectory,
    RK4_IMAGINARY_AXIS_LIMIT,
};

/// Periodic grid `x_j = -L + j dx`, `j = 0..N`, `dx = 2L/N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_width: f64,
    points: usize,
}

impl Grid {
    pub const MIN_POINTS: usize = 32;

    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "domain half-width must be positive, got {half_width}"
            )));
        }
        if points < Self::MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {} points, got {points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Grid { half_width, points })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.x(j)).collect()
    }

    /// Angular wavenumber of FFT bin `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        let n = self.points as i64;
        let k = if (m as i64) <= n / 2 { m as i64 } else { m as i64 - n };
        std::f64::consts::PI * k as f64 / self.half_width
    }

    /// Index of the grid point at `-x_j`.
    pub fn mirror_index(&self, j: usize) -> usize {
        (self.points - j) % self.points
    }
}

/// Field values and time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridState {
    pub u: Vec<f64>,
    pub t: f64,
}

impl GridState {
    pub fn new(u: Vec<f64>, t: f64) -> Result<Self> {
        let s = GridState { u, t };
        s.check_finite()?;
        Ok(s)
    }

    pub fn from_fn(grid: &Grid, t: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid.xs().into_iter().map(f).collect(), t)
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.u.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite {
                index,
                time: self.t,
            }),
            None => Ok(()),
        }
    }
}

/// Coefficients of the equation in floating point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdeParams {
    pub a: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub mu: f64,
    pub beta: f64,
}

impl PdeParams {
    /// The coefficients of the equation for `v(x, t) = u(-x, t)`.
    pub fn mirrored(&self) -> Self {
        PdeParams {
            a: -self.a,
            lambda: -self.lambda,
            alpha: -self.alpha,
            mu: -self.mu,
            beta: -self.beta,
        }
    }
}

/// Periodic finite difference of order `derivative` with the given accuracy.
pub fn spatial_derivative(u: &[f64], grid: &Grid, derivative: u32, accuracy: u32) -> Result<Vec<f64>> {
    Stencil::central(derivative, accuracy)?.apply(u, grid.dx())
}

/// Rectangle-rule integrals of the densities `u` and `u^2/2`.
pub fn conserved_quantities(state: &GridState, grid: &Grid) -> (f64, f64) {
    let dx = grid.dx();
    let mass: f64 = state.u.iter().sum::<f64>() * dx;
    let quad: f64 = state.u.iter().map(|v| v * v).sum::<f64>() * dx / 2.0;
    (mass, quad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_geometry() {
        let g = Grid::new(20.0, 512).unwrap();
        assert_eq!(g.dx(), 40.0 / 512.0);
        assert_eq!(g.x(0), -20.0);
        assert_eq!(g.mirror_index(0), 0);
        assert_eq!(g.x(g.mirror_index(3)), -g.x(3));
        assert!(Grid::new(1.0, 16).is_err());
        assert!(Grid::new(0.0, 64).is_err());
    }

    #[test]
    fn constant_quadrature() {
        let g = Grid::new(5.0, 64).unwrap();
        let s = GridState::from_fn(&g, 0.0, |_| 3.0).unwrap();
        let (m, q) = conserved_quantities(&s, &g);
        assert!((m - 30.0).abs() < 1e-12);
        assert!((q - 45.0).abs() < 1e-12);
        let z = GridState::from_fn(&g, 0.0, |_| 0.0).unwrap();
        assert_eq!(conserved_quantities(&z, &g), (0.0, 0.0));
    }

    #[test]
    fn rejects_nan() {
        assert!(matches!(
            GridState::new(vec![0.0, f64::NAN], 0.5),
            Err(Error::NonFinite { index: 1, .. })
        ));
    }
}

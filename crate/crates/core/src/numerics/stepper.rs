use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::stencil::Stencil;
use super::{conserved_quantities, Grid, GridState, PdeParams};
use crate::error::{Error, Result};

/// RK4 is stable for purely imaginary `z = dt * lambda` with `|z| <= 2 sqrt 2`.
pub const RK4_IMAGINARY_AXIS_LIMIT: f64 = 2.0 * std::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    ExplicitRk4,
    /// ARS(2,3,2): implicit on the linear part, explicit on the nonlinear part.
    LinearlyImplicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub scheme: Scheme,
    pub stencil_order: u32,
}

impl Default for StepperConfig {
    fn default() -> Self {
        StepperConfig {
            dt: 1e-3,
            scheme: Scheme::LinearlyImplicit,
            stencil_order: 8,
        }
    }
}

const GAMMA: f64 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
const DELTA: f64 = -2.0 * std::f64::consts::SQRT_2 / 3.0;

/// Precomputed operators for one grid, parameter set and configuration.
pub struct Stepper {
    grid: Grid,
    params: PdeParams,
    cfg: StepperConfig,
    d1: Stencil,
    /// Combined weights of `-(a D1 + mu D3 + beta D5)` including `dx` scaling.
    linear: Vec<f64>,
    /// `L` maps `exp(i kappa x)` to `i * sigma * exp(i kappa x)`.
    sigma: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Stepper {
    pub fn new(grid: Grid, params: PdeParams, cfg: StepperConfig) -> Result<Self> {
        if !(cfg.dt.is_finite() && cfg.dt > 0.0) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {}", cfg.dt)));
        }
        if ![4, 6, 8].contains(&cfg.stencil_order) {
            return Err(Error::InvalidArgument(format!(
                "stencil order must be 4, 6 or 8, got {}",
                cfg.stencil_order
            )));
        }
        let acc = cfg.stencil_order;
        let d1 = Stencil::central(1, acc)?;
        let d3 = Stencil::central(3, acc)?;
        let d5 = Stencil::central(5, acc)?;
        let p = d5.half_width();
        let n = grid.len();
        if 2 * p + 1 > n {
            return Err(Error::StencilTooWide {
                half_width: p,
                points: n,
            });
        }
        let dx = grid.dx();
        let mut linear = vec![0.0; 2 * p + 1];
        for (s, c) in [(&d1, params.a), (&d3, params.mu), (&d5, params.beta)] {
            let q = s.half_width();
            let scale = c / dx.powi(s.derivative as i32);
            for (k, w) in s.weights.iter().enumerate() {
                linear[p - q + k] -= w * scale;
            }
        }
        let sigma = (0..n)
            .map(|m| {
                let theta = grid.wavenumber(m) * dx;
                -(params.a * d1.odd_symbol(theta, dx)
                    + params.mu * d3.odd_symbol(theta, dx)
                    + params.beta * d5.odd_symbol(theta, dx))
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Stepper {
            grid,
            params,
            cfg,
            d1,
            linear,
            sigma,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn config(&self) -> &StepperConfig {
        &self.cfg
    }

    /// Largest `|sigma|` over the grid's modes.
    pub fn spectral_radius(&self) -> f64 {
        self.sigma.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    fn linear_op(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len();
        let p = self.linear.len() / 2;
        (0..n)
            .map(|i| {
                let mut s = 0.0;
                for (k, w) in self.linear.iter().enumerate() {
                    s += w * u[(i + n + k - p) % n];
                }
                s
            })
            .collect()
    }

    fn nonlinear_op(&self, u: &[f64]) -> Vec<f64> {
        let (l, al) = (self.params.lambda, self.params.alpha);
        if l == 0.0 && al == 0.0 {
            return vec![0.0; u.len()];
        }
        let flux: Vec<f64> = u
            .iter()
            .map(|v| -0.5 * l * v * v + al / 3.0 * v * v * v)
            .collect();
        self.d1.apply(&flux, self.grid.dx()).expect("width checked")
    }

    /// Solves `(I - h L) v = r`.
    fn implicit_solve(&self, r: &[f64], h: f64) -> Vec<f64> {
        let n = r.len();
        let mut buf: Vec<Complex<f64>> = r.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.sigma) {
            *b /= Complex::new(1.0, -h * s);
        }
        self.inverse.process(&mut buf);
        let inv_n = 1.0 / n as f64;
        buf.iter().map(|c| c.re * inv_n).collect()
    }

    fn rhs(&self, u: &[f64]) -> Vec<f64> {
        let mut f = self.linear_op(u);
        for (a, b) in f.iter_mut().zip(self.nonlinear_op(u)) {
            *a += b;
        }
        f
    }

    fn rk4(&self, u: &[f64], dt: f64) -> Vec<f64> {
        let axpy = |a: &[f64], h: f64, b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + h * y).collect()
        };
        let k1 = self.rhs(u);
        let k2 = self.rhs(&axpy(u, dt / 2.0, &k1));
        let k3 = self.rhs(&axpy(u, dt / 2.0, &k2));
        let k4 = self.rhs(&axpy(u, dt, &k3));
        (0..u.len())
            .map(|i| u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect()
    }

    fn ars232(&self, u: &[f64], dt: f64) -> Vec<f64> {
        let n = u.len();
        let h = GAMMA * dt;
        let n1 = self.nonlinear_op(u);
        let r2: Vec<f64> = (0..n).map(|i| u[i] + dt * GAMMA * n1[i]).collect();
        let u2 = self.implicit_solve(&r2, h);
        let l2 = self.linear_op(&u2);
        let n2 = self.nonlinear_op(&u2);
        let r3: Vec<f64> = (0..n)
            .map(|i| u[i] + dt * ((1.0 - GAMMA) * l2[i] + DELTA * n1[i] + (1.0 - DELTA) * n2[i]))
            .collect();
        let u3 = self.implicit_solve(&r3, h);
        let l3 = self.linear_op(&u3);
        let n3 = self.nonlinear_op(&u3);
        (0..n)
            .map(|i| {
                u[i] + dt * ((1.0 - GAMMA) * (l2[i] + n2[i]) + GAMMA * (l3[i] + n3[i]))
            })
            .collect()
    }

    /// One step of size `cfg.dt`.
    pub fn step(&self, state: &GridState) -> Result<GridState> {
        let dt = self.cfg.dt;
        if self.cfg.scheme == Scheme::ExplicitRk4 {
            let limit = RK4_IMAGINARY_AXIS_LIMIT / self.spectral_radius();
            if dt > limit {
                return Err(Error::StabilityViolated { dt, limit });
            }
        }
        let u = match self.cfg.scheme {
            Scheme::ExplicitRk4 => self.rk4(&state.u, dt),
            Scheme::LinearlyImplicit => self.ars232(&state.u, dt),
        };
        GridState::new(u, state.t + dt)
    }
}

/// Largest stable RK4 step for the linear part on this grid. When `beta`
/// dominates this is `K dx^5 / |beta|` with K = 0.1605, 0.1067, 0.0817 for
/// stencil orders 4, 6, 8 (measured by the `stability_sweep` test).
pub fn explicit_stability_limit(grid: &Grid, params: &PdeParams, stencil_order: u32) -> Result<f64> {
    let cfg = StepperConfig {
        dt: 1.0,
        scheme: Scheme::ExplicitRk4,
        stencil_order,
    };
    let s = Stepper::new(*grid, *params, cfg)?;
    Ok(RK4_IMAGINARY_AXIS_LIMIT / s.spectral_radius())
}

/// Snapshots and per-step conserved integrals `(t, mass, quadratic)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub states: Vec<GridState>,
    pub diagnostics: Vec<(f64, f64, f64)>,
}

impl Trajectory {
    pub fn last(&self) -> &GridState {
        self.states.last().expect("initial state is always recorded")
    }

    /// Largest relative change of each integral from its initial value.
    pub fn max_relative_drift(&self) -> (f64, f64) {
        let (_, m0, q0) = self.diagnostics[0];
        let rel = |v: f64, v0: f64| {
            if v0 == 0.0 {
                v.abs()
            } else {
                ((v - v0) / v0).abs()
            }
        };
        self.diagnostics.iter().fold((0.0, 0.0), |(dm, dq), &(_, m, q)| {
            (dm.max(rel(m, m0)), dq.max(rel(q, q0)))
        })
    }
}

/// Advances to exactly `t_end` with a step no larger than `cfg.dt`,
/// recording `snapshots` evenly spaced states after the initial one.
pub fn integrate(
    u0: &GridState,
    grid: &Grid,
    params: &PdeParams,
    cfg: &StepperConfig,
    t_end: f64,
    snapshots: usize,
) -> Result<Trajectory> {
    let span = t_end - u0.t;
    if span < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "end time {t_end} precedes start time {}",
            u0.t
        )));
    }
    if span == 0.0 {
        let (m, q) = conserved_quantities(u0, grid);
        return Ok(Trajectory {
            states: vec![u0.clone()],
            diagnostics: vec![(u0.t, m, q)],
        });
    }
    let steps = ((span / cfg.dt) - 1e-9).ceil().max(1.0) as usize;
    let mut cfg = *cfg;
    cfg.dt = span / steps as f64;
    let stepper = Stepper::new(*grid, *params, cfg)?;
    let snapshots = snapshots.clamp(1, steps);
    let mut state = u0.clone();
    let (m, q) = conserved_quantities(&state, grid);
    let mut traj = Trajectory {
        states: vec![state.clone()],
        diagnostics: vec![(state.t, m, q)],
    };
    let mut next_snap = 1;
    for k in 1..=steps {
        state = stepper.step(&state)?;
        if k == steps {
            state.t = t_end;
        }
        let (m, q) = conserved_quantities(&state, grid);
        traj.diagnostics.push((state.t, m, q));
        if k * snapshots >= next_snap * steps {
            traj.states.push(state.clone());
            next_snap += 1;
        }
    }
    Ok(traj)
}

use std::collections::BTreeMap;
use std::f64::consts::PI;

use gk_core::diffalg::Param;
use gk_core::numerics::{
    conserved_quantities, explicit_stability_limit, integrate, spatial_derivative, Grid,
    GridState, PdeParams, Scheme, Stepper, StepperConfig,
};
use gk_core::poly::{int, rat, rational_to_f64};
use gk_core::tanhsolve::{BoundSolution, SolutionFamily, TanhSymbol};

fn set2() -> BoundSolution {
    let given: BTreeMap<_, _> = [
        (TanhSymbol::Coef(0), int(1)),
        (TanhSymbol::Param(Param::A), int(1)),
        (TanhSymbol::Param(Param::C), rat(7, 5)),
    ]
    .into_iter()
    .collect();
    SolutionFamily::set2().bind(&given).unwrap()
}

fn params_of(b: &BoundSolution) -> PdeParams {
    let p = |q| rational_to_f64(b.param(q));
    PdeParams {
        a: p(Param::A),
        lambda: p(Param::Lambda),
        alpha: p(Param::Alpha),
        mu: p(Param::Mu),
        beta: p(Param::Beta),
    }
}

fn linf_error(b: &BoundSolution, grid: &Grid, s: &GridState) -> f64 {
    grid.xs()
        .iter()
        .zip(&s.u)
        .map(|(x, u)| (u - b.u(*x, s.t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn derivative_convergence_rates() {
    let l = 5.0;
    for (d, acc) in [(5, 8), (1, 4), (1, 8), (3, 6), (5, 4)] {
        let mut errs = Vec::new();
        // coarse grids keep the 5th-derivative case above round-off
        for n in [32, 64] {
            let g = Grid::new(l, n).unwrap();
            let k = 2.0 * PI / l;
            let u: Vec<f64> = g.xs().iter().map(|x| (k * x).sin()).collect();
            let du = spatial_derivative(&u, &g, d, acc).unwrap();
            // d-th derivative of sin is k^d times sin shifted by d quarter turns
            let err = g
                .xs()
                .iter()
                .zip(&du)
                .map(|(x, v)| (v - k.powi(d as i32) * (k * x + d as f64 * PI / 2.0).sin()).abs())
                .fold(0.0, f64::max);
            errs.push(err);
        }
        let rate = (errs[0] / errs[1]).log2();
        assert!((rate - acc as f64).abs() < 0.3, "d={d} acc={acc} rate={rate}");
    }
}

#[test]
fn constant_field_has_zero_derivatives() {
    let g = Grid::new(3.0, 64).unwrap();
    for d in [1, 3, 5] {
        for acc in [4, 6, 8] {
            let du = spatial_derivative(&[2.5; 64], &g, d, acc).unwrap();
            assert!(du.iter().all(|v| v.abs() < 1e-9));
        }
    }
}

#[test]
fn linear_dispersion_relation() {
    let l = PI;
    let g = Grid::new(l, 128).unwrap();
    let p = PdeParams {
        a: 0.5,
        lambda: 0.0,
        alpha: 0.0,
        mu: 0.3,
        beta: 0.02,
    };
    let k = 2.0;
    let u0 = GridState::from_fn(&g, 0.0, |x| (k * x).cos()).unwrap();
    let cfg = StepperConfig {
        dt: 1e-3,
        scheme: Scheme::LinearlyImplicit,
        stencil_order: 8,
    };
    let tr = integrate(&u0, &g, &p, &cfg, 1.0, 1).unwrap();
    let u = &tr.last().u;
    let (mut c, mut s) = (0.0, 0.0);
    for (x, v) in g.xs().iter().zip(u) {
        c += v * (k * x).cos();
        s += v * (k * x).sin();
    }
    let n = g.len() as f64 / 2.0;
    let amp = (c * c + s * s).sqrt() / n;
    let phase = (s / n).atan2(c / n);
    let omega = p.a * k - p.mu * k.powi(3) + p.beta * k.powi(5);
    assert!((amp - 1.0).abs() < 1e-4, "amplitude {amp}");
    assert!(((phase - omega) / omega).abs() < 1e-4, "phase {phase} vs {omega}");
}

#[test]
fn set2_travelling_wave() {
    let b = set2();
    let g = Grid::new(20.0, 512).unwrap();
    let u0 = GridState::from_fn(&g, 0.0, |x| b.u(x, 0.0)).unwrap();
    let tr = integrate(&u0, &g, &params_of(&b), &StepperConfig::default(), 1.0, 4).unwrap();
    let err = linf_error(&b, &g, tr.last());
    let (dm, dq) = tr.max_relative_drift();
    println!("Linf = {err:e}, mass drift = {dm:e}, quadratic drift = {dq:e}");
    assert!(err < 1e-3);
    assert!(dm < 1e-6 && dq < 1e-6);
}

#[test]
fn spatial_convergence_on_set2() {
    let b = set2();
    let mut errs = Vec::new();
    for n in [128, 256] {
        let g = Grid::new(20.0, n).unwrap();
        let u0 = GridState::from_fn(&g, 0.0, |x| b.u(x, 0.0)).unwrap();
        let cfg = StepperConfig {
            dt: 2e-4,
            scheme: Scheme::LinearlyImplicit,
            stencil_order: 4,
        };
        let tr = integrate(&u0, &g, &params_of(&b), &cfg, 0.2, 1).unwrap();
        errs.push(linf_error(&b, &g, tr.last()));
    }
    let rate = (errs[0] / errs[1]).log2();
    println!("errors {errs:?} rate {rate}");
    assert!(rate >= 3.5, "rate {rate}");
}

#[test]
fn mirror_symmetry() {
    let g = Grid::new(10.0, 128).unwrap();
    let p = PdeParams {
        a: 0.4,
        lambda: 0.8,
        alpha: 0.3,
        mu: 0.2,
        beta: 0.05,
    };
    let f = |x: f64| (-(x - 1.0) * (x - 1.0)).exp() * 0.8 + 0.1 * (0.3 * PI * x).sin();
    let u0 = GridState::from_fn(&g, 0.0, f).unwrap();
    let m0 = GridState::from_fn(&g, 0.0, |x| f(-x)).unwrap();
    let cfg = StepperConfig::default();
    let a = integrate(&u0, &g, &p, &cfg, 0.5, 1).unwrap();
    let b = integrate(&m0, &g, &p.mirrored(), &cfg, 0.5, 1).unwrap();
    let (ua, ub) = (&a.last().u, &b.last().u);
    for j in 0..g.len() {
        assert!((ua[j] - ub[g.mirror_index(j)]).abs() < 1e-10);
    }
}

#[test]
fn determinism() {
    let b = set2();
    let g = Grid::new(20.0, 128).unwrap();
    let u0 = GridState::from_fn(&g, 0.0, |x| b.u(x, 0.0)).unwrap();
    let run = || integrate(&u0, &g, &params_of(&b), &StepperConfig::default(), 0.1, 3).unwrap();
    assert_eq!(run(), run());
}

#[test]
fn rk4_conserves_discrete_mass_and_agrees_with_imex() {
    let b = set2();
    let g = Grid::new(20.0, 64).unwrap();
    let p = params_of(&b);
    let limit = explicit_stability_limit(&g, &p, 4).unwrap();
    let u0 = GridState::from_fn(&g, 0.0, |x| b.u(x, 0.0)).unwrap();
    let rk = StepperConfig {
        dt: 0.5 * limit,
        scheme: Scheme::ExplicitRk4,
        stencil_order: 4,
    };
    let st = Stepper::new(g, p, rk).unwrap();
    let next = st.step(&u0).unwrap();
    let (m0, _) = conserved_quantities(&u0, &g);
    let (m1, _) = conserved_quantities(&next, &g);
    assert!(((m1 - m0) / m0).abs() < 1e-12);

    let t = 0.05;
    let a = integrate(&u0, &g, &p, &rk, t, 1).unwrap();
    let imex = StepperConfig {
        dt: 1e-4,
        scheme: Scheme::LinearlyImplicit,
        stencil_order: 4,
    };
    let c = integrate(&u0, &g, &p, &imex, t, 1).unwrap();
    let diff = a.last().u.iter().zip(&c.last().u).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(diff < 1e-6, "diff {diff}");
}

/// Records `K = dt_max |beta| / dx^5` for each stencil order with beta alone.
#[test]
fn stability_sweep() {
    let p = PdeParams {
        a: 0.0,
        lambda: 0.0,
        alpha: 0.0,
        mu: 0.0,
        beta: 1.0,
    };
    for (order, expected) in [(4, 0.1605), (6, 0.1067), (8, 0.0817)] {
        let mut ks = Vec::new();
        for n in [64, 128, 256] {
            let g = Grid::new(10.0, n).unwrap();
            let dt = explicit_stability_limit(&g, &p, order).unwrap();
            ks.push(dt / g.dx().powi(5));
        }
        println!("order {order}: K = {ks:?}");
        for k in ks {
            assert!((k - expected).abs() / expected < 0.01, "order {order}: {k}");
        }
    }
}

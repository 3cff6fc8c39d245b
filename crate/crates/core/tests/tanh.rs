mod support;

use gk_core::diffalg::{Param, PdeInstance};
use gk_core::poly::{rat, RatFunc};
use gk_core::tanhsolve::{
    algebraic_system, once_integrated_ode, substitute_ansatz, uncorrected_ode, verify_family,
    FamilyId, SolutionFamily, TanhAnsatz, TanhPoly, TanhReport, TanhSymbol,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::random_binding;

#[test]
fn families_verify_only_against_corrected_form() {
    let pde = PdeInstance::generic();
    let good = once_integrated_ode(&pde).unwrap();
    let bad = uncorrected_ode(&pde).unwrap();
    for id in FamilyId::ALL {
        let f = id.family();
        assert!(verify_family(&f, &good), "{id}");
        assert!(!verify_family(&f, &bad), "{id}");
    }
}

#[test]
fn substitution_of_family_is_exactly_zero() {
    let good = once_integrated_ode(&PdeInstance::generic()).unwrap();
    for id in FamilyId::ALL {
        let res = id.family().residuals(&good);
        assert_eq!(res.len(), 7);
        assert!(res.iter().all(RatFunc::is_zero));
    }
}

#[test]
fn perturbed_beta_breaks_set2() {
    let good = once_integrated_ode(&PdeInstance::generic()).unwrap();
    let a = TanhSymbol::Param(Param::A).poly();
    let c = TanhSymbol::Param(Param::C).poly();
    let beta = RatFunc::from_poly(&(a - c) * &TanhPoly::constant(rat(1, 41)));
    let f = SolutionFamily::set2().with_constraint(TanhSymbol::Param(Param::Beta), beta);
    assert!(!verify_family(&f, &good));
}

#[test]
fn bound_family_gives_zero_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for id in FamilyId::ALL {
        let b = random_binding(&id.family(), &mut rng);
        let ode = once_integrated_ode(&b.pde()).unwrap();
        let ansatz = TanhAnsatz::from_coefficients(
            (0..3)
                .map(|i| TanhPoly::constant(b.value(TanhSymbol::Coef(i)).clone()))
                .collect(),
        )
        .unwrap();
        // c stays symbolic in the ODE; bind it through the coefficient map
        let c = b.speed().clone();
        let y = substitute_ansatz(&ode, &ansatz).map(|p| {
            let mut vals = vec![None; 12];
            vals[Param::C.index()] = Some(RatFunc::from_rational(c.clone()));
            p.substitute(&vals).as_poly().unwrap()
        });
        assert!(y.is_zero(), "{id}: {y}");
        assert_eq!(algebraic_system(&ode, &ansatz).len(), 7);
    }
}

#[test]
fn pde_residual_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for id in FamilyId::ALL {
        let f = id.family();
        for _ in 0..10 {
            let b = random_binding(&f, &mut rng);
            for _ in 0..100 {
                let x = rng.gen_range(-10.0..10.0);
                let t = rng.gen_range(-2.0..2.0);
                let r = b.pde_residual(x, t);
                assert!(r.abs() < 1e-10, "{id}: residual {r} at ({x}, {t})");
            }
        }
    }
}

#[test]
fn derivatives_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let b = random_binding(&SolutionFamily::set2(), &mut rng);
    let h = 1e-3;
    for _ in 0..10 {
        let x = rng.gen_range(-3.0..3.0);
        let t = rng.gen_range(0.0..1.0);
        let d = b.derivatives(x, t, 2).unwrap();
        let fd1 = (-b.u(x + 2.0 * h, t) + 8.0 * b.u(x + h, t) - 8.0 * b.u(x - h, t)
            + b.u(x - 2.0 * h, t))
            / (12.0 * h);
        let fd2 = (-b.u(x + 2.0 * h, t) + 16.0 * b.u(x + h, t) - 30.0 * b.u(x, t)
            + 16.0 * b.u(x - h, t)
            - b.u(x - 2.0 * h, t))
            / (12.0 * h * h);
        let scale = d.x[1].abs().max(1.0);
        assert!((d.x[1] - fd1).abs() / scale < 1e-8);
        assert!((d.x[2] - fd2).abs() / d.x[2].abs().max(1.0) < 1e-6);
        let fdt = (b.u(x, t + h) - b.u(x, t - h)) / (2.0 * h);
        assert!((d.t - fdt).abs() / d.t.abs().max(1.0) < 1e-5);
    }
}

#[test]
fn travelling_wave_and_boundedness() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for id in FamilyId::ALL {
        let b = random_binding(&id.family(), &mut rng);
        let c = gk_core::poly::rational_to_f64(b.speed());
        let a0 = b.value_f64(TanhSymbol::Coef(0));
        let bound = b.value_f64(TanhSymbol::Coef(1)).abs() + b.value_f64(TanhSymbol::Coef(2)).abs();
        for _ in 0..50 {
            let x = rng.gen_range(-20.0..20.0);
            let t = rng.gen_range(-5.0..5.0);
            let dl = rng.gen_range(-3.0..3.0);
            let u = b.u(x, t);
            assert!((u - b.u(x + c * dl, t + dl)).abs() < 1e-9 * (1.0 + u.abs()));
            assert!((u - a0).abs() <= bound + 1e-12);
        }
    }
}

#[test]
fn report() {
    let r = TanhReport::compute().unwrap();
    assert_eq!(r.balance, 2);
    assert_eq!(r.equations.len(), 7);
    assert!(r.all_verified());
    assert!(r.families.iter().all(|f| !f.verified_against_uncorrected));
}

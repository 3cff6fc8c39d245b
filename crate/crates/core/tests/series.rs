mod support;

use gk_core::poly::{int, rat};
use gk_core::series::{
    generate, has_beta_power_denominator, recurrence_step, SeriesParams, SeriesScalar,
    SymbolicScalar,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{random_rational, series_oracle as oracle};

fn params_of(p: &[BigRational; 6]) -> SeriesParams<BigRational> {
    SeriesParams {
        a: p[0].clone(),
        lambda: p[1].clone(),
        alpha: p[2].clone(),
        mu: p[3].clone(),
        beta: p[4].clone(),
        c: p[5].clone(),
    }
}

#[test]
fn matches_coefficient_matching_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let mut p: [BigRational; 6] = std::array::from_fn(|_| random_rational(&mut rng));
        while p[4].is_zero() {
            p[4] = random_rational(&mut rng);
        }
        let seeds: Vec<_> = (0..5).map(|_| random_rational(&mut rng)).collect();
        let s = generate(&seeds, &params_of(&p), 12).unwrap();
        assert_eq!(s.coefficients(), oracle(&seeds, &p, 12).as_slice());
        assert!(s.residual_order().is_none_or(|k| k >= 8));
    }
}

#[test]
fn linear_dispersive_degeneration() {
    let p = [int(0), int(0), int(0), int(0), int(1), int(1)];
    let seeds = [int(0), int(1), int(0), int(0), int(0)];
    let s = generate(&seeds, &params_of(&p), 8).unwrap();
    assert_eq!(s.coefficients()[5], rat(1, 120));
    assert_eq!(s.coefficients()[6], int(0));
    assert_eq!(s.coefficients(), oracle(&seeds, &p, 8).as_slice());
}

#[test]
fn symbolic_linear_recurrence() {
    let mut p = SeriesParams::symbolic();
    p.lambda = SymbolicScalar::zero_scalar();
    p.alpha = SymbolicScalar::zero_scalar();
    let sym = |name: &str| {
        SymbolicScalar::from_poly(gk_core::diffalg::parse_param_poly(name).unwrap())
    };
    // generic coefficients stand in as symbols through distinct parameter combinations
    let cs: Vec<SymbolicScalar> = vec![sym("a*c"), sym("mu + 1"), sym("2"), sym("c + 3"), sym("a"), sym("mu*c")];
    for n in 0..=1 {
        let got = recurrence_step(n, &cs, &p).unwrap();
        let k = |m: usize| SymbolicScalar::from_int(m as i64);
        let prod = |from: usize, len: usize| (1..=len).fold(k(1), |acc, j| acc.mul(&k(from + j)));
        let rhs = p.c.sub(&p.a).mul(&k(n + 1)).mul(&cs[n + 1])
            .sub(&p.mu.mul(&prod(n, 3)).mul(&cs[n + 3]));
        assert_eq!(got.mul(&p.beta.mul(&prod(n, 5))), rhs);
    }
}

#[test]
fn symbolic_generation_has_beta_power_denominators() {
    let p = SeriesParams::symbolic();
    let seeds: Vec<SymbolicScalar> = (1..=5).map(SymbolicScalar::from_int).collect();
    let s = generate(&seeds, &p, 7).unwrap();
    assert_eq!(s.coefficients().len(), 8);
    assert!(s.coefficients().iter().all(has_beta_power_denominator));
    assert!(s.residual_order().is_none_or(|k| k >= 3));
}

#[test]
fn scaling_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let p: [BigRational; 6] = std::array::from_fn(|i| if i == 4 { int(2) } else { random_rational(&mut rng) });
        let seeds: Vec<_> = (0..5).map(|_| random_rational(&mut rng)).collect();
        let sc = rat(3, 2);
        let base = generate(&seeds, &params_of(&p), 10).unwrap();
        let mut q = p.clone();
        q[1] = &p[1] / &sc;
        q[2] = &p[2] / (&sc * &sc);
        let scaled_seeds: Vec<_> = seeds.iter().map(|c| c * &sc).collect();
        let scaled = generate(&scaled_seeds, &params_of(&q), 10).unwrap();
        for (x, y) in base.coefficients().iter().zip(scaled.coefficients()) {
            assert_eq!(x * &sc, *y);
        }
    }
}

//! Oracles and random generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gk_core::diffalg::{param, DiffPoly, JetVar, Monomial, Param, ParamPoly};
use gk_core::poly::{int, rat};
use gk_core::tanhsolve::{BoundSolution, SolutionFamily, TanhSymbol};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// z^m coefficient of the residual of
/// `(a - c) U' + lambda U U' - alpha U^2 U' + mu U''' + beta U^(5)`
/// for the dense coefficient list `cs`.
pub fn ode_coefficient(cs: &[BigRational], p: &[BigRational; 6], m: usize) -> BigRational {
    let [a, lambda, alpha, mu, beta, c] = p;
    let get = |i: usize| cs.get(i).cloned().unwrap_or_else(BigRational::zero);
    let deriv = |k: usize, i: usize| {
        let mut f = get(i + k);
        for j in 1..=k {
            f *= int((i + j) as i64);
        }
        f
    };
    let mut uu1 = BigRational::zero();
    let mut uuu1 = BigRational::zero();
    for i in 0..=m {
        uu1 += get(i) * deriv(1, m - i);
        for j in 0..=m - i {
            uuu1 += get(i) * get(j) * deriv(1, m - i - j);
        }
    }
    (a - c) * deriv(1, m) + lambda * uu1 - alpha * uuu1 + mu * deriv(3, m) + beta * deriv(5, m)
}

/// Independent coefficient matching: each z^m coefficient is affine in
/// c_{m+5}, so two evaluations determine it.
pub fn series_oracle(seeds: &[BigRational], p: &[BigRational; 6], order: usize) -> Vec<BigRational> {
    let mut cs = seeds.to_vec();
    for m in 0..=order - 5 {
        cs.push(BigRational::zero());
        let r0 = ode_coefficient(&cs, p, m);
        *cs.last_mut().unwrap() = int(1);
        let r1 = ode_coefficient(&cs, p, m);
        *cs.last_mut().unwrap() = -&r0 / (r1 - &r0);
    }
    cs
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

/// Random free parameters for `f`, redrawn until the binding is valid and
/// the wave is non-degenerate.
pub fn random_binding(f: &SolutionFamily, rng: &mut ChaCha8Rng) -> BoundSolution {
    loop {
        let given: BTreeMap<TanhSymbol, BigRational> = f
            .free
            .iter()
            .map(|s| {
                let n: i64 = rng.gen_range(-12..=12);
                (*s, rat(n, rng.gen_range(1..=6)))
            })
            .collect();
        if let Ok(b) = f.bind(&given) {
            if b.speed() != b.param(Param::A) && b.value(TanhSymbol::Coef(2)) != &int(0) {
                return b;
            }
        }
    }
}

fn random_jet_var(rng: &mut ChaCha8Rng, max_order: u8) -> JetVar {
    match rng.gen_range(0..8) {
        0 => JetVar::X,
        1 => JetVar::T,
        _ => {
            let o = rng.gen_range(0..=max_order);
            let t = rng.gen_range(0..=o);
            JetVar::deriv(o - t, t)
        }
    }
}

/// Up to four terms, each with up to three jet factors and a coefficient
/// that is a small rational times at most one parameter.
pub fn random_diffpoly(rng: &mut ChaCha8Rng, max_order: u8) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let mut c = ParamPoly::constant(rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)));
        if rng.gen_bool(0.5) {
            c = &c * &param(Param::ALL[rng.gen_range(0..6)]);
        }
        let factors: Vec<(JetVar, u16)> = (0..rng.gen_range(0..=3))
            .map(|_| (random_jet_var(rng, max_order), rng.gen_range(1..=2)))
            .collect();
        p.add_term(Monomial::from_factors(factors), c);
    }
    p
}

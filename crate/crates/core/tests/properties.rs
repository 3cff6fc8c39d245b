use gk_core::diffalg::{euler_operator, parse_diffpoly, DiffPoly, JetVar, Monomial, Param, ParamPoly};
use gk_core::poly::rat;
use proptest::prelude::*;

fn jet_var(max_order: u8) -> impl Strategy<Value = JetVar> {
    prop_oneof![
        1 => Just(JetVar::X),
        1 => Just(JetVar::T),
        6 => (0..=max_order).prop_flat_map(move |o| (0..=o).prop_map(move |t| JetVar::deriv(o - t, t))),
    ]
}

fn coefficient() -> impl Strategy<Value = ParamPoly> {
    (-6i64..=6, 1i64..=3, proptest::option::of(0usize..6)).prop_map(|(n, d, p)| {
        let c = ParamPoly::constant(rat(n, d));
        match p {
            Some(i) => &c * &gk_core::diffalg::param(Param::ALL[i]),
            None => c,
        }
    })
}

fn diffpoly(max_order: u8) -> impl Strategy<Value = DiffPoly> {
    proptest::collection::vec(
        (coefficient(), proptest::collection::vec((jet_var(max_order), 1u16..=2), 0..=3)),
        0..=4,
    )
    .prop_map(|terms| {
        let mut p = DiffPoly::zero();
        for (c, factors) in terms {
            p.add_term(Monomial::from_factors(factors), c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn leibniz_rule(p in diffpoly(3), q in diffpoly(3)) {
        let pq = &p * &q;
        prop_assert_eq!(pq.d_x().unwrap(), &(&p.d_x().unwrap() * &q) + &(&p * &q.d_x().unwrap()));
        prop_assert_eq!(pq.d_t().unwrap(), &(&p.d_t().unwrap() * &q) + &(&p * &q.d_t().unwrap()));
    }

    #[test]
    fn total_derivatives_commute(p in diffpoly(3)) {
        prop_assert_eq!(p.d_x().unwrap().d_t().unwrap(), p.d_t().unwrap().d_x().unwrap());
    }

    #[test]
    fn euler_annihilates_divergences(p in diffpoly(3), q in diffpoly(3)) {
        let div = &p.d_x().unwrap() + &q.d_t().unwrap();
        prop_assert!(div.max_order() <= 4);
        prop_assert!(euler_operator(&div).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip(p in diffpoly(4)) {
        prop_assert_eq!(parse_diffpoly(&p.to_string()).unwrap(), p);
    }
}

mod common;

use common::{bounds, sample};
use pcross_core::action::{is_finite_type, validate_global};
use pcross_core::globalize::{check_round_trip, globalize, verify_enveloping};
use pcross_core::linalg::Subspace;
use pcross_core::{fixtures, Error};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn round_trip_recovers_the_action(s in sample(bounds(4, 6, false))) {
        let pair = globalize(&s.action).unwrap();
        let v = verify_enveloping(&pair);
        prop_assert!(v.is_ok(), "{}", v);
        let r = check_round_trip(&pair).unwrap();
        prop_assert!(r.is_ok(), "{}", r);
        let g = validate_global(&pair.global);
        prop_assert!(g.is_ok(), "{}", g);
    }

    #[test]
    fn enveloping_algebra_is_unital_and_bounded(s in sample(bounds(4, 6, false))) {
        let a = &s.action;
        prop_assert!(is_finite_type(a).unwrap().finite_type);
        let pair = globalize(a).unwrap();
        let t = pair.global.algebra();
        for i in 0..t.dim() {
            let b = t.basis_vector(i);
            prop_assert_eq!(t.mul(t.unit(), &b), b.clone());
            prop_assert_eq!(t.mul(&b, t.unit()), b);
        }
        let order = a.group().order().unwrap();
        prop_assert!(t.dim() <= order * a.dim());
        let e = a.group().identity();
        let only_identity = a.support().iter().all(|g| *g == e || a.ideal(g).is_zero());
        prop_assert_eq!(t.dim() == order * a.dim(), only_identity);
    }

    /// The enveloping action is unique up to isomorphism, so its dimension
    /// is that of `Σ_g β_g(T e)` inside the global action the sample was cut
    /// from.
    #[test]
    fn dimension_matches_the_source_global_action(s in sample(bounds(4, 6, false))) {
        let src = &s.global;
        let t = src.algebra();
        let te: Vec<_> = (0..t.dim()).map(|i| t.mul(&t.basis_vector(i), &s.idempotent)).collect();
        let images = src
            .group()
            .elements()
            .unwrap()
            .into_iter()
            .flat_map(|g| {
                let m = src.beta(&g);
                te.iter().map(move |v| m.apply(v)).collect::<Vec<_>>()
            });
        let span = Subspace::span(t.field(), t.dim(), images);
        let pair = globalize(&s.action).unwrap();
        prop_assert_eq!(pair.global.algebra().dim(), span.dim());
    }
}

#[test]
fn c3_restriction_envelope_is_three_dimensional() {
    let pair = globalize(&fixtures::c3_restriction()).unwrap();
    assert_eq!(pair.global.algebra().dim(), 3);
    assert!(check_round_trip(&pair).unwrap().is_ok());
}

#[test]
fn integer_actions_are_not_globalized() {
    assert!(matches!(globalize(&fixtures::z_pair()), Err(Error::UnsupportedGroup(_))));
}

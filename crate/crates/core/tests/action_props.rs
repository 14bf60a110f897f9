mod common;

use common::{bounds, sample};
use pcross_core::action::{
    fixed_ring, is_finite_type, quotient_action, restrict_global, validate_action, validate_global,
};
use pcross_core::algebra::direct_sum;
use pcross_core::linalg::{vector, Matrix, Subspace};
use pcross_core::{Algebra, FieldSpec, GlobalAction, GroupElement, GroupModel};
use proptest::prelude::*;
use std::collections::BTreeMap;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restrictions_validate((s, mask) in sample(bounds(6, 8, true)).prop_flat_map(|s| {
        let k = s.copy_units.len();
        (Just(s), prop::collection::vec(any::<bool>(), k))
    })) {
        let t = s.global.algebra();
        prop_assert!(validate_global(&s.global).is_ok());
        let mut e = t.zero_vector();
        for (u, keep) in s.copy_units.iter().zip(mask) {
            if keep {
                e = vector::add(&e, u);
            }
        }
        let r = restrict_global(&s.global, &e).unwrap();
        let report = validate_action(&r.action);
        prop_assert!(report.is_ok(), "{}", report);
        // R = T e
        let te = Subspace::span(t.field(), t.dim(), (0..t.dim()).map(|i| t.mul(&t.basis_vector(i), &e)));
        prop_assert_eq!(r.action.dim(), te.dim());
        prop_assert_eq!(r.embedding.cols(), te.dim());
    }

    #[test]
    fn fixed_ring_is_a_subalgebra(s in sample(bounds(6, 8, true))) {
        let a = &s.action;
        let r = a.algebra();
        let fr = fixed_ring(a);
        for x in fr.basis() {
            for y in fr.basis() {
                prop_assert!(fr.contains(&r.mul(x, y)));
            }
        }
        // the full restriction is the global action itself
        let full = restrict_global(&s.global, s.global.algebra().unit()).unwrap().action;
        if full.is_untwisted() {
            prop_assert!(fixed_ring(&full).contains(full.algebra().unit()));
        }
    }

    #[test]
    fn quotient_by_zero_is_the_identity(s in sample(bounds(5, 6, true))) {
        let a = &s.action;
        let q = quotient_action(a, &Subspace::zero(a.field(), a.dim())).unwrap();
        prop_assert_eq!(q.action.dim(), a.dim());
        prop_assert_eq!(validate_action(&q.action), validate_action(a));
        for g in a.support() {
            prop_assert_eq!(q.action.ideal(&g).dim(), a.ideal(&g).dim());
        }
    }

    #[test]
    fn finite_groups_have_finite_type(s in sample(bounds(6, 8, true))) {
        let ft = is_finite_type(&s.action).unwrap();
        prop_assert!(ft.finite_type);
        prop_assert!(ft.witness.is_none());
    }
}

/// C2 on `M2 x Q` by conjugation with diag(1, -1) on the first factor and
/// twist `u = (2 I, 3)`: a genuinely twisted global action.
fn twisted_c2() -> GlobalAction {
    let q = FieldSpec::Rationals;
    let t = direct_sum(&Algebra::matrix_algebra(q, 2), &Algebra::scalars(q)).unwrap();
    let mut beta = Matrix::identity(q, 5);
    // e12 and e21 change sign
    beta.set(1, 1, q.int(-1));
    beta.set(2, 2, q.int(-1));
    let g = GroupElement::Index(1);
    let u = vec![q.int(2), q.zero(), q.zero(), q.int(2), q.int(3)];
    let mut twist = BTreeMap::new();
    twist.insert((g.clone(), g), u);
    GlobalAction::finite(t, GroupModel::cyclic(2).unwrap(), vec![Matrix::identity(q, 5), beta], twist).unwrap()
}

#[test]
fn twisted_restrictions_validate() {
    let b = twisted_c2();
    assert!(validate_global(&b).is_ok(), "{}", validate_global(&b));
    let q = FieldSpec::Rationals;
    for e in [
        vec![q.one(), q.zero(), q.zero(), q.one(), q.zero()],
        vec![q.zero(), q.zero(), q.zero(), q.zero(), q.one()],
        b.algebra().unit().to_vec(),
    ] {
        let r = restrict_global(&b, &e).unwrap();
        assert!(validate_action(&r.action).is_ok());
        assert!(!r.action.is_untwisted());
    }
}

#[test]
fn z_pair_is_not_of_finite_type() {
    let ft = is_finite_type(&pcross_core::fixtures::z_pair()).unwrap();
    assert!(!ft.finite_type);
    assert_eq!(ft.witness.as_deref(), Some("3"));
}

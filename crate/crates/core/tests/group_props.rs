use pcross_core::group::{subgroup_closure, validate_group, GroupElement, GroupModel};
use proptest::prelude::*;

fn finite_group() -> impl Strategy<Value = GroupModel> {
    let cyclic = (1usize..=12).prop_map(|n| GroupModel::cyclic(n).unwrap());
    let symmetric = (1usize..=4).prop_map(|n| GroupModel::symmetric(n).unwrap());
    let product = (1usize..=4, 1usize..=4).prop_map(|(a, b)| {
        GroupModel::direct_product(&GroupModel::cyclic(a).unwrap(), &GroupModel::cyclic(b).unwrap()).unwrap()
    });
    prop_oneof![cyclic, symmetric, product]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructors_validate(g in finite_group()) {
        let r = validate_group(&g);
        prop_assert!(r.is_ok(), "{}", r);
    }

    #[test]
    fn closure_is_a_subgroup((g, picks) in finite_group().prop_flat_map(|g| {
        let n = g.order().unwrap();
        (Just(g), prop::collection::vec(0..n, 0..3))
    })) {
        let gens: Vec<GroupElement> = picks.into_iter().map(GroupElement::Index).collect();
        let h = subgroup_closure(&g, &gens).unwrap();
        prop_assert!(h.contains(&g.identity()));
        for x in &gens {
            prop_assert!(h.contains(x));
        }
        for a in &h {
            prop_assert!(h.contains(&g.inv(a)));
            for b in &h {
                prop_assert!(h.contains(&g.op(a, b)));
            }
        }
        // Lagrange
        prop_assert_eq!(g.order().unwrap() % h.len(), 0);
    }
}

#[test]
fn symmetric_group_orders() {
    let orders: Vec<usize> = (1..=4).map(|n| GroupModel::symmetric(n).unwrap().order().unwrap()).collect();
    assert_eq!(orders, vec![1, 2, 6, 24]);
    // S3 is not abelian
    let s3 = GroupModel::symmetric(3).unwrap();
    let els = s3.elements().unwrap();
    assert!(els.iter().any(|a| els.iter().any(|b| s3.op(a, b) != s3.op(b, a))));
}

#[test]
fn integers_are_additive() {
    let z = GroupModel::Integers;
    assert_eq!(z.op(&GroupElement::int(3), &GroupElement::int(-5)), GroupElement::int(-2));
    assert_eq!(z.inv(&GroupElement::int(4)), GroupElement::int(-4));
    assert!(validate_group(&z).is_ok());
    assert!(subgroup_closure(&z, &[GroupElement::int(2)]).is_err());
}

use pcross_core::algebra::{
    center, direct_sum, frobenius_form, jacobson_radical, quotient, symmetric_form, validate_algebra,
    SYMBOLIC_MAX_DIM,
};
use pcross_core::lab::{random_sample, Bounds};
use pcross_core::linalg::{vector, FieldSpec, Matrix, Scalar};
use pcross_core::Algebra;
use proptest::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Block {
    K,
    Dual,
    Ut2,
    M2,
}

fn block(f: FieldSpec, b: Block) -> Algebra {
    match b {
        Block::K => Algebra::scalars(f),
        Block::Dual => Algebra::dual_numbers(f),
        Block::Ut2 => Algebra::upper_triangular(f),
        Block::M2 => Algebra::matrix_algebra(f, 2),
    }
}

fn dim_of(b: Block) -> usize {
    match b {
        Block::K => 1,
        Block::Dual => 2,
        Block::Ut2 => 3,
        Block::M2 => 4,
    }
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        3 => Just(FieldSpec::Rationals),
        1 => Just(FieldSpec::Prime(2)),
        1 => Just(FieldSpec::Prime(3)),
        1 => Just(FieldSpec::Prime(5)),
    ]
}

fn blocks() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec(prop_oneof![Just(Block::K), Just(Block::Dual), Just(Block::Ut2), Just(Block::M2)], 1..=3)
        .prop_filter("desk scale", |bs| bs.iter().map(|&b| dim_of(b)).sum::<usize>() <= 8)
}

fn assemble(f: FieldSpec, bs: &[Block]) -> Algebra {
    bs.iter().skip(1).fold(block(f, bs[0]), |acc, &b| direct_sum(&acc, &block(f, b)).unwrap())
}

fn random_algebra() -> impl Strategy<Value = Algebra> {
    (any::<u64>(), field()).prop_map(|(seed, f)| {
        let bounds = Bounds {
            max_dim: 6,
            max_order: 4,
            twist: false,
        };
        random_sample(seed, &bounds, f).unwrap().action.algebra().clone()
    })
}

/// `x^(dim + 1) = 0` by repeated multiplication.
fn nilpotent(a: &Algebra, x: &[Scalar]) -> bool {
    let mut p = x.to_vec();
    for _ in 0..a.dim() {
        p = a.mul(&p, x);
    }
    vector::is_zero(&p)
}

fn gram_det(a: &Algebra, form: &[Scalar]) -> Scalar {
    let n = a.dim();
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| vector::dot(form, &a.basis_product(i, j)))
        .collect();
    Matrix::new(a.field(), n, n, data).unwrap().det().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_is_nilpotent_ideal_with_semisimple_quotient(a in random_algebra()) {
        let rad = jacobson_radical(&a).unwrap();
        prop_assert!(a.check_ideal(&rad).is_ok());
        for x in rad.basis() {
            prop_assert!(nilpotent(&a, x));
        }
        let top = quotient(&a, &rad).unwrap();
        prop_assert!(jacobson_radical(&top.algebra).unwrap().is_zero());
    }

    #[test]
    fn block_sums_match_known_invariants((f, bs) in (field(), blocks())) {
        let a = assemble(f, &bs);
        prop_assert!(validate_algebra(&a).is_ok());
        let count = |b: Block| bs.iter().filter(|&&x| x == b).count();
        let rad = count(Block::Dual) + count(Block::Ut2);
        prop_assert_eq!(jacobson_radical(&a).unwrap().dim(), rad);
        let z = count(Block::K) + 2 * count(Block::Dual) + count(Block::Ut2) + count(Block::M2);
        prop_assert_eq!(center(&a).dim(), z);
        let has_ut = count(Block::Ut2) > 0;
        let fr = frobenius_form(&a);
        let sy = symmetric_form(&a);
        prop_assert_eq!(fr.found(), !has_ut);
        prop_assert_eq!(sy.found(), !has_ut);
        if has_ut {
            // UT2 has a two-dimensional cocenter but a one-dimensional center
            prop_assert!(sy.decided);
            prop_assert!(fr.decided || a.dim() > SYMBOLIC_MAX_DIM);
        }
    }

    #[test]
    fn form_witnesses_recheck(a in random_algebra()) {
        let fr = frobenius_form(&a);
        if let Some(form) = &fr.form {
            prop_assert!(!gram_det(&a, form).is_zero());
        }
        let sy = symmetric_form(&a);
        if let Some(form) = &sy.form {
            prop_assert!(!gram_det(&a, form).is_zero());
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    prop_assert_eq!(
                        vector::dot(form, &a.basis_product(i, j)),
                        vector::dot(form, &a.basis_product(j, i))
                    );
                }
            }
        }
        if a.is_commutative() && (fr.decided || fr.found()) && (sy.decided || sy.found()) {
            prop_assert_eq!(fr.found(), sy.found());
        }
    }

    #[test]
    fn center_commutes(a in random_algebra()) {
        for z in center(&a).basis() {
            for i in 0..a.dim() {
                let b = a.basis_vector(i);
                prop_assert_eq!(a.mul(z, &b), a.mul(&b, z));
            }
        }
    }
}

#[test]
fn matrix_algebra_center_is_scalars() {
    for n in 1..=3 {
        let m = Algebra::matrix_algebra(FieldSpec::Rationals, n);
        assert_eq!(center(&m).dim(), 1);
        assert!(jacobson_radical(&m).unwrap().is_zero());
    }
}

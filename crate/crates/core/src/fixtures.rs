//! The worked examples used by the lab, the CLI fixtures and the tests.

use crate::action::{restrict_global, GlobalAction, Piece, TwistedPartialAction};
use crate::algebra::Algebra;
use crate::group::{GroupElement, GroupModel};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar};
use std::collections::BTreeMap;

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn int_matrix<const N: usize>(rows: [[i64; N]; N]) -> Matrix {
    Matrix::from_rows(q(), N, &rows.map(|r| r.map(|x| q().int(x)).to_vec())).expect("square")
}

/// `Z` acting on `Q e1 ⊕ Q e2` with `α_1(e1) = e2`, all other
/// `D_n` zero.
pub fn z_pair() -> TwistedPartialAction {
    let r = Algebra::diagonal(q(), 2);
    let (zero, one) = (q().zero(), q().one());
    let mut pieces = BTreeMap::new();
    pieces.insert(
        GroupElement::int(0),
        Piece {
            idempotent: vec![one.clone(), one.clone()],
            alpha: Matrix::identity(q(), 2),
        },
    );
    pieces.insert(
        GroupElement::int(1),
        Piece {
            idempotent: vec![zero.clone(), one.clone()],
            alpha: int_matrix([[0, 0], [1, 0]]),
        },
    );
    pieces.insert(
        GroupElement::int(-1),
        Piece {
            idempotent: vec![one, zero],
            alpha: int_matrix([[0, 1], [0, 0]]),
        },
    );
    TwistedPartialAction::new(r, GroupModel::Integers, pieces, BTreeMap::new()).expect("well formed")
}

/// `Z` acting on `Q` with only `D_0` nonzero.
pub fn z_point() -> TwistedPartialAction {
    let mut pieces = BTreeMap::new();
    pieces.insert(
        GroupElement::int(0),
        Piece {
            idempotent: vec![q().one()],
            alpha: Matrix::identity(q(), 1),
        },
    );
    TwistedPartialAction::new(Algebra::scalars(q()), GroupModel::Integers, pieces, BTreeMap::new())
        .expect("well formed")
}

/// The shift `e_i -> e_{i+1}` truncated to the window `{-2, ..., 2}`: the shift on
/// `Q^5` (basis `e_-2 .. e_2`, the ends falling off) and the idempotent
/// `e_0` to restrict to.
pub fn shift_window() -> (GlobalAction, Vec<Scalar>) {
    let names = (-2..=2).map(|i| format!("e{i}")).collect();
    let t = Algebra::diagonal(q(), 5);
    let t = Algebra::new(
        q(),
        names,
        (0..5)
            .map(|i| (0..5).map(|j| t.basis_product(i, j)).collect())
            .collect(),
        t.unit().to_vec(),
    )
    .expect("diagonal algebra");
    let shift = |d: i64| {
        let cols: Vec<Vec<Scalar>> = (0..5i64)
            .map(|j| {
                let k = j + d;
                if (0..5).contains(&k) {
                    vector::unit(q(), 5, k as usize)
                } else {
                    vector::zero(q(), 5)
                }
            })
            .collect();
        Matrix::from_columns(q(), 5, &cols).expect("shape")
    };
    let b = GlobalAction::integers(t, shift(1), shift(-1)).expect("square maps");
    (b, vector::unit(q(), 5, 2))
}

/// `C3` permuting the three factors of `Q^3` cyclically.
pub fn c3_shift() -> GlobalAction {
    let t = Algebra::diagonal(q(), 3);
    let maps = (0..3)
        .map(|k| {
            let cols: Vec<Vec<Scalar>> = (0..3).map(|j| vector::unit(q(), 3, (j + k) % 3)).collect();
            Matrix::from_columns(q(), 3, &cols).expect("shape")
        })
        .collect();
    GlobalAction::finite(t, GroupModel::cyclic(3).expect("order 3"), maps, BTreeMap::new()).expect("well formed")
}

/// The restriction of [`c3_shift`] to `e1 + e2`.
pub fn c3_restriction() -> TwistedPartialAction {
    let e = vec![q().one(), q().one(), q().zero()];
    restrict_global(&c3_shift(), &e).expect("central idempotent").action
}

/// `C2` acting trivially on the dual numbers.
pub fn dual_trivial_c2() -> TwistedPartialAction {
    TwistedPartialAction::trivial(Algebra::dual_numbers(q()), GroupModel::cyclic(2).expect("order 2"))
        .expect("well formed")
}

/// `C2` acting on the dual numbers by `x -> -x`. The dual numbers are
/// symmetric; the skew group algebra is not.
pub fn dual_sign_c2() -> TwistedPartialAction {
    let r = Algebra::dual_numbers(q());
    let mut pieces = BTreeMap::new();
    for (i, m) in [int_matrix([[1, 0], [0, 1]]), int_matrix([[1, 0], [0, -1]])].into_iter().enumerate() {
        pieces.insert(
            GroupElement::Index(i),
            Piece {
                idempotent: r.unit().to_vec(),
                alpha: m,
            },
        );
    }
    TwistedPartialAction::new(r, GroupModel::cyclic(2).expect("order 2"), pieces, BTreeMap::new()).expect("well formed")
}

/// `C2` acting trivially on `GF(2)`: the crossed product is `GF(2)[C2]`.
pub fn gf2_trivial_c2() -> TwistedPartialAction {
    let f = FieldSpec::Prime(2);
    TwistedPartialAction::trivial(Algebra::scalars(f), GroupModel::cyclic(2).expect("order 2")).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{validate_action, validate_global};

    #[test]
    fn fixtures_validate() {
        for a in [
            z_pair(),
            z_point(),
            c3_restriction(),
            dual_trivial_c2(),
            dual_sign_c2(),
            gf2_trivial_c2(),
        ] {
            assert!(validate_action(&a).is_ok(), "{}", validate_action(&a));
        }
        assert!(validate_global(&c3_shift()).is_ok());
        let (b, e) = shift_window();
        assert!(validate_global(&b).has_violation("automorphism"));
        let res = restrict_global(&b, &e).unwrap();
        assert_eq!(res.action.dim(), 1);
        assert_eq!(res.action.support(), vec![GroupElement::int(0)]);
    }
}

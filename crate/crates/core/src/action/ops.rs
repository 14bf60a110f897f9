use super::{Piece, TwistedPartialAction};
use crate::algebra::{quotient, Quotient};
use crate::error::{Error, Result};
use crate::group::{is_subgroup, FiniteGroup, GroupElement, GroupModel};
use crate::linalg::{vector, Matrix, Subspace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A subgroup of a finite group (explicit elements) or of `Z` (`dZ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    Elements(Vec<GroupElement>),
    Multiples(BigInt),
}

impl Subgroup {
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (Subgroup::Elements(v), g) => v.contains(g),
            (Subgroup::Multiples(d), GroupElement::Integer(n)) => {
                if d.is_zero() {
                    n.is_zero()
                } else {
                    n.is_multiple_of(d)
                }
            }
            _ => false,
        }
    }

    /// Image in `G` of an element of the restricted group.
    pub fn include(&self, h: &GroupElement) -> GroupElement {
        match (self, h) {
            (Subgroup::Elements(v), GroupElement::Index(i)) => v[*i].clone(),
            (Subgroup::Multiples(d), GroupElement::Integer(n)) => GroupElement::Integer(n * d),
            _ => panic!("element of the wrong kind"),
        }
    }

    fn project(&self, g: &GroupElement) -> Option<GroupElement> {
        match (self, g) {
            (Subgroup::Elements(v), g) => v.iter().position(|x| x == g).map(GroupElement::Index),
            (Subgroup::Multiples(d), GroupElement::Integer(n)) if !d.is_zero() && n.is_multiple_of(d) => {
                Some(GroupElement::Integer(n / d))
            }
            _ => None,
        }
    }
}

/// The action of a subgroup `H`, re-expressed over `H` as a group in its own
/// right (a table for finite `H`, `Z` for `dZ` with `n d -> n`).
pub fn restrict_subgroup(a: &TwistedPartialAction, h: &Subgroup) -> Result<TwistedPartialAction> {
    let g = a.group();
    let model = match h {
        Subgroup::Elements(v) => {
            if !is_subgroup(g, v) {
                return Err(Error::NotSubgroup(
                    v.iter().map(|x| g.label(x)).collect::<Vec<_>>().join(", "),
                ));
            }
            let table = v
                .iter()
                .map(|x| {
                    v.iter()
                        .map(|y| v.iter().position(|z| *z == g.op(x, y)).expect("closed"))
                        .collect()
                })
                .collect();
            let identity = v.iter().position(|x| *x == g.identity()).expect("contains e");
            let labels = v.iter().map(|x| g.label(x)).collect();
            GroupModel::Finite(FiniteGroup::from_table(table, identity, labels)?)
        }
        Subgroup::Multiples(d) => {
            if *g != GroupModel::Integers {
                return Err(Error::NotSubgroup("dZ needs the group Z".into()));
            }
            if d.is_negative() {
                return Err(Error::NotSubgroup(format!("{d}Z: use a nonnegative generator")));
            }
            if d.is_zero() {
                return restrict_subgroup(a, &Subgroup::Elements(vec![g.identity()]));
            }
            GroupModel::Integers
        }
    };
    let pieces: BTreeMap<GroupElement, Piece> = a
        .pieces()
        .iter()
        .filter_map(|(x, p)| h.project(x).map(|y| (y, p.clone())))
        .collect();
    let twist = a
        .explicit_twists()
        .iter()
        .filter_map(|((x, y), w)| Some(((h.project(x)?, h.project(y)?), w.clone())))
        .collect();
    TwistedPartialAction::new(a.algebra().clone(), model, pieces, twist)
}

#[derive(Debug, Clone)]
pub struct QuotientAction {
    pub action: TwistedPartialAction,
    pub quotient: Quotient,
}

/// The induced action `ᾱ_g(a + I) = α_g(a) + I` on `R/I`, for an ideal
/// with `α_g(I ∩ D_{g⁻¹}) ⊆ I`.
pub fn quotient_action(a: &TwistedPartialAction, ideal: &Subspace) -> Result<QuotientAction> {
    let alg = a.algebra();
    let q = quotient(alg, ideal)?;
    for g in a.support() {
        let one_gi = a.idempotent(&a.group().inv(&g));
        for v in ideal.basis() {
            let x = alg.mul(v, &one_gi);
            let y = a.apply(&g, &x);
            if !ideal.contains(&y) {
                return Err(Error::NotInvariant(format!(
                    "alpha_{}({}) = {} leaves the ideal",
                    a.label(&g),
                    alg.display(&x),
                    alg.display(&y)
                )));
            }
        }
    }
    let pieces = a
        .pieces()
        .iter()
        .map(|(g, p)| {
            let alpha = q.projection.mul(&p.alpha)?.mul(&q.lift)?;
            Ok((
                g.clone(),
                Piece {
                    idempotent: q.project(&p.idempotent),
                    alpha,
                },
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let twist = a
        .explicit_twists()
        .iter()
        .map(|(k, w)| (k.clone(), q.project(w)))
        .collect();
    let action = TwistedPartialAction::new(q.algebra.clone(), a.group().clone(), pieces, twist)?;
    Ok(QuotientAction { action, quotient: q })
}

/// `R^α = {x : α_g(x 1_{g⁻¹}) = x 1_g for all g}`.
pub fn fixed_ring(a: &TwistedPartialAction) -> Subspace {
    let alg = a.algebra();
    let f = a.field();
    let n = a.dim();
    let mut rows = Subspace::zero(f, n);
    for g in a.support() {
        let m = a.alpha(&g).sub(&alg.right_matrix(&a.idempotent(&g))).expect("square");
        for r in m.row_vectors() {
            if !vector::is_zero(&r) {
                rows.insert(r);
            }
        }
    }
    let system = Matrix::from_rows(f, n, rows.basis()).expect("shape");
    Subspace::span(f, n, system.kernel_basis().expect("uniform field"))
}

/// Outcome of the finite-type test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteType {
    pub finite_type: bool,
    /// A covering set `g_1..g_n` when finite type holds; otherwise the
    /// candidate set the witness defeats.
    pub covering: Vec<String>,
    /// When finite type fails: a `g` with `Σ_i D_{g g_i} = 0 != R`.
    pub witness: Option<String>,
    pub explanation: String,
}

/// Whether some finite `g_1..g_n` has `Σ_i D_{g g_i} = R` for every `g`.
///
/// For finite groups the whole group covers, since `D_e = R`. For `Z` with
/// finite support and `R != 0`, any finite `F` is pushed off the support by
/// `g = max(supp) - min(F) + 1`; the report uses `F = supp`.
pub fn is_finite_type(a: &TwistedPartialAction) -> Result<FiniteType> {
    if a.is_unbounded() {
        return Err(Error::InfiniteSupport);
    }
    let g = a.group();
    if let Some(elements) = g.elements() {
        return Ok(FiniteType {
            finite_type: true,
            covering: elements.iter().map(|x| g.label(x)).collect(),
            witness: None,
            explanation: "finite group: the whole group covers because D_e = R".into(),
        });
    }
    if a.dim() == 0 {
        return Ok(FiniteType {
            finite_type: true,
            covering: Vec::new(),
            witness: None,
            explanation: "zero algebra: the empty sum is R".into(),
        });
    }
    let ints: Vec<BigInt> = a
        .support()
        .into_iter()
        .map(|x| match x {
            GroupElement::Integer(n) => n,
            GroupElement::Index(_) => unreachable!("Z support"),
        })
        .collect();
    let max = ints.iter().max().expect("contains 0").clone();
    let min = ints.iter().min().expect("contains 0").clone();
    let witness: BigInt = &max - &min + 1;
    Ok(FiniteType {
        finite_type: false,
        covering: ints.iter().map(|n| n.to_string()).collect(),
        witness: Some(witness.to_string()),
        explanation: format!(
            "support lies in [{min}, {max}]; for any finite F, g = max(supp) - min(F) + 1 puts g + F outside the support, so the sum of the D_(g+f) is 0 != R (here F = supp, g = {witness})"
        ),
    })
}

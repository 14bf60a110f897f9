//! Unital twisted partial actions of a group on a structure-constant algebra.
//!
//! Each supported `g` carries the central idempotent `1_g` generating
//! `D_g = R 1_g` and the matrix of `x -> α_g(x 1_{g⁻¹})`, which is zero off
//! `D_{g⁻¹}`. Twist entries that are not given default to `1_g 1_{gh}`.

mod global;
mod ops;
mod validate;

pub use global::{restrict_global, restrict_global_with_basis, validate_global, GlobalAction, GlobalMaps, Restriction};
pub use ops::{
    fixed_ring, is_finite_type, quotient_action, restrict_subgroup, FiniteType, QuotientAction, Subgroup,
};
pub use validate::validate_action;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::linalg::{vector, FieldSpec, Matrix, Scalar, Subspace};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// `1_g`.
    pub idempotent: Vec<Scalar>,
    /// `x -> α_g(x 1_{g⁻¹})` on the whole algebra.
    pub alpha: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPartialAction {
    algebra: Algebra,
    group: GroupModel,
    pieces: BTreeMap<GroupElement, Piece>,
    twist: BTreeMap<(GroupElement, GroupElement), Vec<Scalar>>,
    unbounded: bool,
    inverses: InverseCache,
}

/// Lazily computed `α_g⁻¹` matrices; invisible to equality.
#[derive(Debug, Clone, Default)]
struct InverseCache(OnceLock<std::result::Result<BTreeMap<GroupElement, Matrix>, String>>);

impl PartialEq for InverseCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for InverseCache {}

impl TwistedPartialAction {
    /// Assembles action data after shape checks. Pieces whose idempotent is
    /// zero are dropped, except at the identity. [`validate_action`] checks
    /// the axioms.
    pub fn new(
        algebra: Algebra,
        group: GroupModel,
        pieces: BTreeMap<GroupElement, Piece>,
        twist: BTreeMap<(GroupElement, GroupElement), Vec<Scalar>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let f = algebra.field();
        let e = group.identity();
        for (g, p) in &pieces {
            if !group.contains(g) {
                return Err(Error::Malformed(format!("{g} is not a group element")));
            }
            if p.idempotent.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "1_{} has {} coordinates, expected {n}",
                    group.label(g),
                    p.idempotent.len()
                )));
            }
            if p.alpha.rows() != n || p.alpha.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "alpha_{} is {}x{}, expected {n}x{n}",
                    group.label(g),
                    p.alpha.rows(),
                    p.alpha.cols()
                )));
            }
            if p.alpha.field() != f || p.idempotent.iter().any(|s| s.field() != f) {
                return Err(Error::FieldMismatch(format!("action data for {}", group.label(g))));
            }
        }
        if !pieces.contains_key(&e) {
            return Err(Error::Malformed("the identity must be in the support".into()));
        }
        for ((g, h), w) in &twist {
            if !group.contains(g) || !group.contains(h) {
                return Err(Error::Malformed(format!("twist entry ({g}, {h}) outside the group")));
            }
            if w.len() != n || w.iter().any(|s| s.field() != f) {
                return Err(Error::DimensionMismatch(format!(
                    "twist entry ({}, {}) has the wrong shape",
                    group.label(g),
                    group.label(h)
                )));
            }
        }
        let pieces = pieces
            .into_iter()
            .filter(|(g, p)| *g == e || !vector::is_zero(&p.idempotent))
            .collect();
        Ok(Self {
            algebra,
            group,
            pieces,
            twist,
            unbounded: false,
            inverses: InverseCache::default(),
        })
    }

    /// The global action of a finite group with every `α_g` the identity.
    pub fn trivial(algebra: Algebra, group: GroupModel) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::UnsupportedGroup("trivial action needs a finite group".into()))?;
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let pieces = elements
            .into_iter()
            .map(|g| {
                (
                    g,
                    Piece {
                        idempotent: algebra.unit().to_vec(),
                        alpha: id.clone(),
                    },
                )
            })
            .collect();
        Self::new(algebra, group, pieces, BTreeMap::new())
    }

    /// Flags an action whose support is not finite (cofinitely many nonzero
    /// ideals). Such actions can be described but not built.
    pub fn mark_unbounded(mut self) -> Self {
        self.unbounded = true;
        self
    }

    pub fn is_unbounded(&self) -> bool {
        self.unbounded
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Supported elements in canonical order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.pieces.keys().cloned().collect()
    }

    pub fn support_set(&self) -> BTreeSet<GroupElement> {
        self.pieces.keys().cloned().collect()
    }

    pub fn in_support(&self, g: &GroupElement) -> bool {
        self.pieces.contains_key(g)
    }

    pub fn piece(&self, g: &GroupElement) -> Option<&Piece> {
        self.pieces.get(g)
    }

    pub fn pieces(&self) -> &BTreeMap<GroupElement, Piece> {
        &self.pieces
    }

    pub fn explicit_twists(&self) -> &BTreeMap<(GroupElement, GroupElement), Vec<Scalar>> {
        &self.twist
    }

    /// `1_g`, zero off the support.
    pub fn idempotent(&self, g: &GroupElement) -> Vec<Scalar> {
        match self.pieces.get(g) {
            Some(p) => p.idempotent.clone(),
            None => self.algebra.zero_vector(),
        }
    }

    /// `D_g = R 1_g`.
    pub fn ideal(&self, g: &GroupElement) -> Subspace {
        self.algebra.ideal_of_idempotent(&self.idempotent(g))
    }

    /// Matrix of `x -> α_g(x 1_{g⁻¹})`, zero off the support.
    pub fn alpha(&self, g: &GroupElement) -> Matrix {
        match self.pieces.get(g) {
            Some(p) => p.alpha.clone(),
            None => Matrix::zeros(self.field(), self.dim(), self.dim()),
        }
    }

    pub fn apply(&self, g: &GroupElement, x: &[Scalar]) -> Vec<Scalar> {
        match self.pieces.get(g) {
            Some(p) => p.alpha.apply(x),
            None => self.algebra.zero_vector(),
        }
    }

    /// `1_g 1_{gh}`, the identity of the corner where `w_{g,h}` lives.
    pub fn corner_unit(&self, g: &GroupElement, h: &GroupElement) -> Vec<Scalar> {
        let gh = self.group.op(g, h);
        self.algebra.mul(&self.idempotent(g), &self.idempotent(&gh))
    }

    /// `w_{g,h}`: the explicit entry, or `1_g 1_{gh}`.
    pub fn twist(&self, g: &GroupElement, h: &GroupElement) -> Vec<Scalar> {
        match self.twist.get(&(g.clone(), h.clone())) {
            Some(w) => w.clone(),
            None => self.corner_unit(g, h),
        }
    }

    /// Whether every twist entry equals its default `1_g 1_{gh}`.
    pub fn is_untwisted(&self) -> bool {
        self.twist.iter().all(|((g, h), w)| *w == self.corner_unit(g, h))
    }

    /// Matrix of `x -> α_g⁻¹(x 1_g)`, the inverse of `α_g: D_{g⁻¹} -> D_g`
    /// extended by zero. With a twist this differs from `α_{g⁻¹}`.
    pub fn alpha_inverse(&self, g: &GroupElement) -> Result<Matrix> {
        let n = self.dim();
        let f = self.field();
        if !self.in_support(g) {
            return Ok(Matrix::zeros(f, n, n));
        }
        let source = self.ideal(&self.group.inv(g));
        let alpha = self.alpha(g);
        let images: Vec<Vec<Scalar>> = source.basis().iter().map(|v| alpha.apply(v)).collect();
        let image_matrix = Matrix::from_columns(f, n, &images)?;
        let one_g = self.idempotent(g);
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let y = self.algebra.mul(&self.algebra.basis_vector(j), &one_g);
            let c = image_matrix.solve(&y)?.ok_or_else(|| {
                Error::NotInvertible(format!(
                    "alpha_{} does not reach {}",
                    self.group.label(g),
                    self.algebra.display(&y)
                ))
            })?;
            cols.push(source.combine(&c));
        }
        Matrix::from_columns(f, n, &cols)
    }

    /// `α_g⁻¹` for every `g` in the support, computed once.
    pub fn alpha_inverses(&self) -> Result<&BTreeMap<GroupElement, Matrix>> {
        self.inverses
            .0
            .get_or_init(|| {
                self.pieces
                    .keys()
                    .map(|g| Ok((g.clone(), self.alpha_inverse(g)?)))
                    .collect::<Result<_>>()
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Error::NotInvertible(e.clone()))
    }

    pub fn label(&self, g: &GroupElement) -> String {
        self.group.label(g)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::fixtures::*;
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn z_pair_accessors() {
        let a = z_pair();
        assert_eq!(a.support(), vec![GroupElement::int(-1), GroupElement::int(0), GroupElement::int(1)]);
        assert_eq!(a.ideal(&GroupElement::int(2)).dim(), 0);
        let q = FieldSpec::Rationals;
        assert_eq!(a.apply(&GroupElement::int(1), &[q.one(), q.zero()]), vec![q.zero(), q.one()]);
        assert!(a.is_untwisted());
        let inv = a.alpha_inverse(&GroupElement::int(1)).unwrap();
        assert_eq!(inv.apply(&[q.zero(), q.one()]), vec![q.one(), q.zero()]);
    }

    #[test]
    fn identity_required() {
        let q = FieldSpec::Rationals;
        let err = TwistedPartialAction::new(
            Algebra::scalars(q),
            GroupModel::Integers,
            BTreeMap::new(),
            BTreeMap::new(),
        );
        assert!(err.is_err());
    }
}

use super::{Piece, TwistedPartialAction};
use crate::algebra::{validate_algebra, Algebra};
use crate::error::{Error, Result};
use crate::group::{validate_group, GroupElement, GroupModel};
use crate::linalg::{vector, Matrix, Scalar};
use crate::report::Report;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalMaps {
    /// One automorphism per element of a finite group.
    Table(BTreeMap<GroupElement, Matrix>),
    /// `Z` acting through powers of `forward` (and of `backward` for negative
    /// exponents). On a truncated window these need not be inverse to each
    /// other, and [`validate_global`] says so.
    Generator { forward: Matrix, backward: Matrix },
}

/// A twisted global action `(T, β, u)`. Missing twist entries are `1_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalAction {
    algebra: Algebra,
    group: GroupModel,
    maps: GlobalMaps,
    twist: BTreeMap<(GroupElement, GroupElement), Vec<Scalar>>,
}

impl GlobalAction {
    /// Action of a finite group; `maps` lists `β_g` in element order.
    pub fn finite(
        algebra: Algebra,
        group: GroupModel,
        maps: Vec<Matrix>,
        twist: BTreeMap<(GroupElement, GroupElement), Vec<Scalar>>,
    ) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::UnsupportedGroup("table of maps needs a finite group".into()))?;
        if maps.len() != elements.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for a group of order {}",
                maps.len(),
                elements.len()
            )));
        }
        let n = algebra.dim();
        for m in &maps {
            if m.rows() != n || m.cols() != n || m.field() != algebra.field() {
                return Err(Error::DimensionMismatch("automorphism matrix of the wrong shape".into()));
            }
        }
        for ((g, h), u) in &twist {
            if !group.contains(g) || !group.contains(h) || u.len() != n {
                return Err(Error::Malformed("twist entry of the wrong shape".into()));
            }
        }
        Ok(Self {
            algebra,
            group,
            maps: GlobalMaps::Table(elements.into_iter().zip(maps).collect()),
            twist,
        })
    }

    /// Untwisted action of `Z` through a generator and its (claimed) inverse.
    pub fn integers(algebra: Algebra, forward: Matrix, backward: Matrix) -> Result<Self> {
        let n = algebra.dim();
        for m in [&forward, &backward] {
            if m.rows() != n || m.cols() != n || m.field() != algebra.field() {
                return Err(Error::DimensionMismatch("generator matrix of the wrong shape".into()));
            }
        }
        Ok(Self {
            algebra,
            group: GroupModel::Integers,
            maps: GlobalMaps::Generator { forward, backward },
            twist: BTreeMap::new(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn maps(&self) -> &GlobalMaps {
        &self.maps
    }

    pub fn explicit_twists(&self) -> &BTreeMap<(GroupElement, GroupElement), Vec<Scalar>> {
        &self.twist
    }

    pub fn beta(&self, g: &GroupElement) -> Matrix {
        match (&self.maps, g) {
            (GlobalMaps::Table(t), g) => t.get(g).cloned().expect("map for every element"),
            (GlobalMaps::Generator { forward, backward }, GroupElement::Integer(k)) => {
                let base = if k.is_negative() { backward } else { forward };
                let e = k.abs().to_u64().expect("exponent fits");
                let mut acc = Matrix::identity(self.algebra.field(), self.algebra.dim());
                for _ in 0..e {
                    acc = base.mul(&acc).expect("square");
                }
                acc
            }
            _ => panic!("group element of the wrong kind"),
        }
    }

    pub fn twist(&self, g: &GroupElement, h: &GroupElement) -> Vec<Scalar> {
        self.twist
            .get(&(g.clone(), h.clone()))
            .cloned()
            .unwrap_or_else(|| self.algebra.unit().to_vec())
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist.values().all(|u| u == self.algebra.unit())
    }
}

/// Checks that each `β_g` is an automorphism, `β_e = id`, the composition
/// rule `β_g β_h = Ad(u_{g,h}) β_{gh}`, normalization and the cocycle
/// identity.
pub fn validate_global(b: &GlobalAction) -> Report {
    let mut r = Report::new("global action");
    let t = &b.algebra;
    r.absorb("algebra", validate_algebra(t));
    if b.group.is_finite() {
        r.absorb("group", validate_group(&b.group));
    }
    if !r.is_ok() {
        return r;
    }
    let n = t.dim();
    let f = t.field();
    let id = Matrix::identity(f, n);
    let check_auto = |r: &mut Report, label: String, m: &Matrix| {
        r.require("automorphism", m.det().map(|d| !d.is_zero()).unwrap_or(false), || {
            format!("beta_{label} is singular")
        });
        r.require("automorphism", m.apply(t.unit()) == t.unit(), || {
            format!("beta_{label}(1) != 1")
        });
        'pairs: for i in 0..n {
            for j in 0..n {
                let lhs = m.apply(&t.basis_product(i, j));
                let rhs = t.mul(&m.apply(&t.basis_vector(i)), &m.apply(&t.basis_vector(j)));
                if lhs != rhs {
                    r.fail(
                        "automorphism",
                        format!("beta_{label} is not multiplicative on ({}, {})", t.names()[i], t.names()[j]),
                    );
                    break 'pairs;
                }
            }
        }
    };
    match &b.maps {
        GlobalMaps::Generator { forward, backward } => {
            check_auto(&mut r, "1".into(), forward);
            let fb = forward.mul(backward).expect("square");
            let bf = backward.mul(forward).expect("square");
            r.require("automorphism", fb == id && bf == id, || {
                "beta_1 and beta_-1 are not mutually inverse".into()
            });
        }
        GlobalMaps::Table(maps) => {
            let e = b.group.identity();
            r.require("beta_e = id", maps[&e] == id, || "beta_e differs from the identity".into());
            for (g, m) in maps {
                check_auto(&mut r, b.group.label(g), m);
            }
            if !r.is_ok() {
                return r;
            }
            r.check("twist invertible");
            r.check("composition");
            r.check("cocycle");
            r.check("normalized twist");
            let elements: Vec<&GroupElement> = maps.keys().collect();
            for g in &elements {
                for w in [b.twist(g, &e), b.twist(&e, g)] {
                    if w != t.unit() {
                        r.fail("normalized twist", format!("u involving e and {} is not 1", b.group.label(g)));
                    }
                }
            }
            for g in &elements {
                for h in &elements {
                    let gh = b.group.op(g, h);
                    let u = b.twist(g, h);
                    let Some(u_inv) = t.corner_inverse(&u, t.unit()) else {
                        r.fail(
                            "twist invertible",
                            format!("u_({},{}) is not invertible", b.group.label(g), b.group.label(h)),
                        );
                        continue;
                    };
                    let (bg, bh, bgh) = (&maps[*g], &maps[*h], &maps[&gh]);
                    for i in 0..n {
                        let x = t.basis_vector(i);
                        let lhs = bg.apply(&bh.apply(&x));
                        let rhs = t.mul(&t.mul(&u, &bgh.apply(&x)), &u_inv);
                        if lhs != rhs {
                            r.fail(
                                "composition",
                                format!(
                                    "g = {}, h = {}, x = {}",
                                    b.group.label(g),
                                    b.group.label(h),
                                    t.names()[i]
                                ),
                            );
                            break;
                        }
                    }
                    for k in &elements {
                        let hk = b.group.op(h, k);
                        let lhs = t.mul(&bg.apply(&b.twist(h, k)), &b.twist(g, &hk));
                        let rhs = t.mul(&u, &b.twist(&gh, k));
                        if lhs != rhs {
                            r.fail(
                                "cocycle",
                                format!(
                                    "g = {}, h = {}, t = {}",
                                    b.group.label(g),
                                    b.group.label(h),
                                    b.group.label(k)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    r
}

/// The partial action obtained by restricting a global action to an ideal,
/// together with how the ideal sits inside `T`.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub action: TwistedPartialAction,
    /// `dim T x dim R`: columns are the chosen basis of `R` inside `T`.
    pub embedding: Matrix,
}

impl Restriction {
    /// Coordinates in `R` of a vector of `T` lying in `R`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.embedding.solve(v).ok().flatten()
    }
}

/// Restricts `(T, β, u)` to `R = T e` for a central idempotent `e`, with
/// `D_g = R β_g(R)`, `1_g = e β_g(e)`, `α_g = β_g` on `D_{g⁻¹}` and
/// `w_{g,h} = u_{g,h} e β_g(e) β_{gh}(e)`.
pub fn restrict_global(b: &GlobalAction, e: &[Scalar]) -> Result<Restriction> {
    let t = &b.algebra;
    check_idempotent(t, e)?;
    let basis = t.ideal_of_idempotent(e).basis().to_vec();
    restrict_global_with_basis(b, e, basis)
}

/// As [`restrict_global`], with the basis of `T e` supplied by the caller.
pub fn restrict_global_with_basis(b: &GlobalAction, e: &[Scalar], basis: Vec<Vec<Scalar>>) -> Result<Restriction> {
    let t = &b.algebra;
    let f = t.field();
    check_idempotent(t, e)?;
    let ideal = t.ideal_of_idempotent(e);
    let span = crate::linalg::Subspace::span(f, t.dim(), basis.iter().cloned());
    if span != ideal || basis.len() != ideal.dim() {
        return Err(Error::Malformed("supplied basis does not span T e".into()));
    }
    let names = t.embedded_names(&basis, "r");
    let r = t.subalgebra(&basis, names, e)?;
    let embedding = Matrix::from_columns(f, t.dim(), &basis)?;
    let coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        embedding
            .solve(v)?
            .ok_or_else(|| Error::Malformed(format!("{} leaves the ideal", t.display(v))))
    };

    let support = restricted_support(b, e)?;
    let unit_of = |g: &GroupElement| -> Vec<Scalar> { t.mul(e, &b.beta(g).apply(e)) };
    let mut pieces = BTreeMap::new();
    for g in &support {
        let one_g = unit_of(g);
        let one_gi = unit_of(&b.group.inv(g));
        let beta = b.beta(g);
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|x| coords(&beta.apply(&t.mul(x, &one_gi))))
            .collect::<Result<_>>()?;
        pieces.insert(
            g.clone(),
            Piece {
                idempotent: coords(&one_g)?,
                alpha: Matrix::from_columns(f, r.dim(), &cols)?,
            },
        );
    }
    let mut twist = BTreeMap::new();
    if !b.is_untwisted() {
        for g in &support {
            for s in &support {
                let h = b.group.op(&b.group.inv(g), s);
                let w = t.mul(&t.mul(&b.twist(g, &h), &unit_of(g)), &unit_of(s));
                twist.insert((g.clone(), h), coords(&w)?);
            }
        }
    }
    let action = TwistedPartialAction::new(r, b.group.clone(), pieces, twist)?;
    Ok(Restriction { action, embedding })
}

fn check_idempotent(t: &Algebra, e: &[Scalar]) -> Result<()> {
    if e.len() != t.dim() {
        return Err(Error::DimensionMismatch("idempotent of the wrong length".into()));
    }
    if !t.is_central_idempotent(e) {
        return Err(Error::NotCentralIdempotent(t.display(e)));
    }
    Ok(())
}

/// The identity and the elements with `e β_g(e) != 0`. For `Z` the orbit of `e` is followed in
/// both directions until it dies out; a repeating orbit with a nonzero
/// overlap means infinitely many nonzero ideals.
fn restricted_support(b: &GlobalAction, e: &[Scalar]) -> Result<Vec<GroupElement>> {
    let t = &b.algebra;
    match &b.maps {
        GlobalMaps::Table(maps) => Ok(maps
            .iter()
            .filter(|(g, m)| **g == b.group.identity() || !vector::is_zero(&t.mul(e, &m.apply(e))))
            .map(|(g, _)| g.clone())
            .collect()),
        GlobalMaps::Generator { forward, backward } => {
            let limit = 4 * t.dim() + 16;
            let mut support = vec![GroupElement::int(0)];
            for (step, sign) in [(forward, 1i64), (backward, -1i64)] {
                let mut seen: Vec<Vec<Scalar>> = vec![e.to_vec()];
                let mut x = e.to_vec();
                let mut k = 0i64;
                loop {
                    x = step.apply(&x);
                    k += 1;
                    if vector::is_zero(&x) {
                        break;
                    }
                    if let Some(start) = seen.iter().position(|y| *y == x) {
                        let recurring = seen[start..].iter().any(|y| !vector::is_zero(&t.mul(e, y)));
                        if recurring {
                            return Err(Error::InfiniteSupport);
                        }
                        break;
                    }
                    if !vector::is_zero(&t.mul(e, &x)) {
                        support.push(GroupElement::int(sign * k));
                    }
                    seen.push(x.clone());
                    if seen.len() > limit {
                        return Err(Error::Malformed("orbit of the idempotent does not settle".into()));
                    }
                }
            }
            support.sort();
            Ok(support)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::validate_action;
    use super::*;
    use crate::linalg::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// C3 cyclically shifting the coordinates of Q^3.
    fn c3_shift() -> GlobalAction {
        let t = Algebra::diagonal(q(), 3);
        let shift = |k: usize| {
            let cols: Vec<Vec<Scalar>> = (0..3).map(|j| vector::unit(q(), 3, (j + k) % 3)).collect();
            Matrix::from_columns(q(), 3, &cols).unwrap()
        };
        GlobalAction::finite(t, GroupModel::cyclic(3).unwrap(), (0..3).map(shift).collect(), BTreeMap::new())
            .unwrap()
    }

    #[test]
    fn c3_shift_is_global() {
        assert!(validate_global(&c3_shift()).is_ok());
    }

    #[test]
    fn restrict_c3_to_two_coordinates() {
        let b = c3_shift();
        let e = vec![q().one(), q().one(), q().zero()];
        let res = restrict_global(&b, &e).unwrap();
        let a = &res.action;
        assert!(validate_action(a).is_ok(), "{}", validate_action(a));
        assert_eq!(a.support().len(), 3);
        for g in [GroupElement::Index(1), GroupElement::Index(2)] {
            assert_eq!(a.ideal(&g).dim(), 1);
        }
        // 1_g = e * shift(e) = (1,1,0)(0,1,1) = e2
        assert_eq!(a.idempotent(&GroupElement::Index(1)), vec![q().zero(), q().one()]);
    }

    #[test]
    fn restrict_to_everything_is_global() {
        let b = c3_shift();
        let res = restrict_global(&b, b.algebra().unit()).unwrap();
        for g in res.action.support() {
            assert_eq!(res.action.ideal(&g).dim(), 3);
            assert_eq!(res.action.alpha(&g), b.beta(&g));
        }
    }

    #[test]
    fn shift_window() {
        // Z shifting e_{-2..2}, truncated at the ends; R = K e_0
        let t = Algebra::diagonal(q(), 5);
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
            Matrix::from_columns(q(), 5, &cols).unwrap()
        };
        let b = GlobalAction::integers(t, shift(1), shift(-1)).unwrap();
        let report = validate_global(&b);
        assert!(report.has_violation("automorphism"), "truncation is not invertible");
        let res = restrict_global(&b, &vector::unit(q(), 5, 2)).unwrap();
        assert_eq!(res.action.support(), vec![GroupElement::int(0)]);
        assert!(validate_action(&res.action).is_ok());
    }

    #[test]
    fn periodic_orbit_is_infinite_support() {
        let t = Algebra::diagonal(q(), 2);
        let swap = Matrix::from_rows(q(), 2, &[vec![q().zero(), q().one()], vec![q().one(), q().zero()]]).unwrap();
        let b = GlobalAction::integers(t, swap.clone(), swap).unwrap();
        assert!(validate_global(&b).is_ok());
        let err = restrict_global(&b, &[q().one(), q().zero()]);
        assert!(matches!(err, Err(Error::InfiniteSupport)));
    }

    #[test]
    fn non_central_idempotent_rejected() {
        let m = Algebra::matrix_algebra(q(), 2);
        let id = Matrix::identity(q(), 4);
        let b = GlobalAction::finite(m, GroupModel::cyclic(1).unwrap(), vec![id], BTreeMap::new()).unwrap();
        let e11 = vector::unit(q(), 4, 0);
        assert!(matches!(restrict_global(&b, &e11), Err(Error::NotCentralIdempotent(_))));
    }

    #[test]
    fn twisted_c2_restriction() {
        // C2 acting trivially on Q^2 with u_{g,g} = (2, 3); restrict to e1
        let t = Algebra::diagonal(q(), 2);
        let g = GroupElement::Index(1);
        let mut twist = BTreeMap::new();
        twist.insert((g.clone(), g.clone()), vec![q().int(2), q().int(3)]);
        let id = Matrix::identity(q(), 2);
        let b = GlobalAction::finite(t, GroupModel::cyclic(2).unwrap(), vec![id.clone(), id], twist).unwrap();
        assert!(validate_global(&b).is_ok(), "{}", validate_global(&b));
        let res = restrict_global(&b, &[q().one(), q().zero()]).unwrap();
        assert!(!res.action.is_untwisted());
        assert_eq!(res.action.twist(&g, &g), vec![q().int(2)]);
        assert!(validate_action(&res.action).is_ok());
    }
}

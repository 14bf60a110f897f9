use super::TwistedPartialAction;
use crate::algebra::validate_algebra;
use crate::group::{validate_group, GroupElement};
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::report::Report;
use std::collections::BTreeMap;

/// Checks the twisted partial action axioms exactly on ideal bases.
///
/// Triples are drawn from the support: outside it every ideal involved is
/// zero and the axioms hold trivially, which is what makes the check finite
/// for `Z`.
pub fn validate_action(a: &TwistedPartialAction) -> Report {
    let mut report = Report::new("twisted partial action");
    if a.group().is_finite() {
        report.absorb("group", validate_group(a.group()));
    }
    report.absorb("algebra", validate_algebra(a.algebra()));
    if !report.is_ok() {
        return report;
    }
    if a.is_unbounded() {
        report.fail(
            "finite support",
            "action is flagged with unbounded support; only finitely supported actions are checked",
        );
        return report;
    }
    let v = Validator::new(a);
    v.support(&mut report);
    v.idempotents(&mut report);
    if !report.is_ok() {
        return report;
    }
    v.identity(&mut report);
    v.pieces(&mut report);
    v.twist_entries(&mut report);
    if !report.is_ok() {
        return report;
    }
    v.axiom_ii(&mut report);
    v.axiom_iii(&mut report);
    v.axiom_iv(&mut report);
    v.axiom_v(&mut report);
    report
}

struct Validator<'a> {
    a: &'a TwistedPartialAction,
    support: Vec<GroupElement>,
    ideals: BTreeMap<GroupElement, Subspace>,
}

impl<'a> Validator<'a> {
    fn new(a: &'a TwistedPartialAction) -> Self {
        let support = a.support();
        let ideals = support.iter().map(|g| (g.clone(), a.ideal(g))).collect();
        Self { a, support, ideals }
    }

    fn l(&self, g: &GroupElement) -> String {
        self.a.label(g)
    }

    fn show(&self, x: &[Scalar]) -> String {
        self.a.algebra().display(x)
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.a.algebra().mul(x, y)
    }

    fn op(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.a.group().op(g, h)
    }

    fn inv(&self, g: &GroupElement) -> GroupElement {
        self.a.group().inv(g)
    }

    /// Basis of `R 1_{g1} 1_{g2} ...`.
    fn product_ideal(&self, gs: &[&GroupElement]) -> Subspace {
        let alg = self.a.algebra();
        let mut e = alg.unit().to_vec();
        for g in gs {
            e = self.mul(&e, &self.a.idempotent(g));
        }
        alg.ideal_of_idempotent(&e)
    }

    fn support(&self, r: &mut Report) {
        let group = self.a.group();
        r.require("support contains e", self.a.in_support(&group.identity()), || {
            "identity missing from support".into()
        });
        r.check("support closed under inverses");
        for g in &self.support {
            let gi = self.inv(g);
            if !self.a.in_support(&gi) {
                r.fail(
                    "support closed under inverses",
                    format!("D_{} != 0 but D_{} = 0", self.l(g), self.l(&gi)),
                );
            }
        }
    }

    fn idempotents(&self, r: &mut Report) {
        r.check("central idempotents");
        for g in &self.support {
            let e = self.a.idempotent(g);
            if !self.a.algebra().is_central_idempotent(&e) {
                r.fail(
                    "central idempotents",
                    format!("1_{} = {} is not a central idempotent", self.l(g), self.show(&e)),
                );
            }
        }
    }

    fn identity(&self, r: &mut Report) {
        let e = self.a.group().identity();
        let alg = self.a.algebra();
        r.require("identity: 1_e = 1_R", self.a.idempotent(&e) == alg.unit(), || {
            format!("1_e = {}", self.show(&self.a.idempotent(&e)))
        });
        let id = Matrix::identity(self.a.field(), self.a.dim());
        r.require("identity: alpha_e = id", self.a.alpha(&e) == id, || {
            "alpha_e differs from the identity".into()
        });
    }

    fn pieces(&self, r: &mut Report) {
        let alg = self.a.algebra();
        for rule in ["annihilation", "bijective", "multiplicative", "alpha(1_{g^-1}) = 1_g"] {
            r.check(rule);
        }
        for g in &self.support {
            let gi = self.inv(g);
            let Some(src) = self.ideals.get(&gi) else { continue };
            let dst = &self.ideals[g];
            let alpha = self.a.alpha(g);
            let one_gi = self.a.idempotent(&gi);
            // α_g(x) = α_g(x 1_{g⁻¹}) for all x
            let annihilates = (0..alg.dim()).all(|j| {
                let b = alg.basis_vector(j);
                alpha.apply(&b) == alpha.apply(&self.mul(&b, &one_gi))
            });
            if !annihilates {
                r.fail(
                    "annihilation",
                    format!("alpha_{} is nonzero off D_{}", self.l(g), self.l(&gi)),
                );
            }
            let image = src.image(&alpha);
            if image != *dst || src.dim() != dst.dim() {
                r.fail(
                    "bijective",
                    format!(
                        "alpha_{} maps D_{} (dim {}) onto a space of dim {} but D_{} has dim {}",
                        self.l(g),
                        self.l(&gi),
                        src.dim(),
                        image.dim(),
                        self.l(g),
                        dst.dim()
                    ),
                );
            }
            'pairs: for x in src.basis() {
                for y in src.basis() {
                    let lhs = alpha.apply(&self.mul(x, y));
                    let rhs = self.mul(&alpha.apply(x), &alpha.apply(y));
                    if lhs != rhs {
                        r.fail(
                            "multiplicative",
                            format!(
                                "alpha_{}({} * {}) = {} but alpha_{}({}) alpha_{}({}) = {}",
                                self.l(g),
                                self.show(x),
                                self.show(y),
                                self.show(&lhs),
                                self.l(g),
                                self.show(x),
                                self.l(g),
                                self.show(y),
                                self.show(&rhs)
                            ),
                        );
                        break 'pairs;
                    }
                }
            }
            let u = alpha.apply(&one_gi);
            if u != self.a.idempotent(g) {
                r.fail(
                    "alpha(1_{g^-1}) = 1_g",
                    format!("alpha_{}(1_{}) = {}", self.l(g), self.l(&gi), self.show(&u)),
                );
            }
        }
    }

    fn twist_entries(&self, r: &mut Report) {
        let alg = self.a.algebra();
        r.check("twist in corner");
        r.check("twist invertible");
        for ((g, h), w) in self.a.explicit_twists() {
            let gh = self.op(g, h);
            if !(self.a.in_support(g) && self.a.in_support(&gh)) && !vector::is_zero(w) {
                r.fail(
                    "twist in corner",
                    format!("w_({},{}) = {} but D_{} D_{} = 0", self.l(g), self.l(h), self.show(w), self.l(g), self.l(&gh)),
                );
            }
        }
        for g in &self.support {
            for s in &self.support {
                let h = self.op(&self.inv(g), s);
                let w = self.a.twist(g, &h);
                let corner = self.a.corner_unit(g, &h);
                if self.mul(&w, &corner) != w {
                    r.fail(
                        "twist in corner",
                        format!("w_({},{}) = {} is not in D_{} D_{}", self.l(g), self.l(&h), self.show(&w), self.l(g), self.l(s)),
                    );
                } else if alg.corner_inverse(&w, &corner).is_none() {
                    r.fail(
                        "twist invertible",
                        format!("w_({},{}) = {} has no inverse in D_{} D_{}", self.l(g), self.l(&h), self.show(&w), self.l(g), self.l(s)),
                    );
                }
            }
        }
    }

    /// α_g(D_{g⁻¹} ∩ D_h) = D_g ∩ D_{gh}, for g in the support and h in
    /// supp ∪ g⁻¹ supp.
    fn axiom_ii(&self, r: &mut Report) {
        r.check("ideal transport");
        for g in &self.support {
            let gi = self.inv(g);
            let alpha = self.a.alpha(g);
            let mut hs: Vec<GroupElement> = self.support.clone();
            hs.extend(self.support.iter().map(|s| self.op(&gi, s)));
            hs.sort();
            hs.dedup();
            for h in hs {
                let gh = self.op(g, &h);
                let lhs = self.product_ideal(&[&gi, &h]).image(&alpha);
                let rhs = self.product_ideal(&[g, &gh]);
                if lhs != rhs {
                    r.fail(
                        "ideal transport",
                        format!(
                            "g = {}, h = {}: alpha_g(D_g^-1 D_h) = {} but D_g D_gh = {}",
                            self.l(g),
                            self.l(&h),
                            lhs,
                            rhs
                        ),
                    );
                    return;
                }
            }
        }
    }

    /// α_g α_h(a) = w_{g,h} α_{gh}(a) w_{g,h}⁻¹ on D_{h⁻¹} D_{h⁻¹g⁻¹}.
    fn axiom_iii(&self, r: &mut Report) {
        r.check("composition");
        let alg = self.a.algebra();
        for h in &self.support {
            let hi = self.inv(h);
            let alpha_h = self.a.alpha(h);
            for s in &self.support {
                // s = gh
                let g = self.op(s, &hi);
                let gh = s;
                let domain = self.product_ideal(&[&hi, &self.inv(gh)]);
                if domain.is_zero() {
                    continue;
                }
                let w = self.a.twist(&g, h);
                let Some(w_inv) = alg.corner_inverse(&w, &self.a.corner_unit(&g, h)) else {
                    continue; // reported by twist_entries
                };
                let alpha_g = self.a.alpha(&g);
                let alpha_gh = self.a.alpha(gh);
                for x in domain.basis() {
                    let lhs = alpha_g.apply(&alpha_h.apply(x));
                    let rhs = self.mul(&self.mul(&w, &alpha_gh.apply(x)), &w_inv);
                    if lhs != rhs {
                        r.fail(
                            "composition",
                            format!(
                                "g = {}, h = {}, a = {}: alpha_g alpha_h(a) = {} but w alpha_gh(a) w^-1 = {}",
                                self.l(&g),
                                self.l(h),
                                self.show(x),
                                self.show(&lhs),
                                self.show(&rhs)
                            ),
                        );
                        return;
                    }
                }
            }
        }
    }

    /// w_{g,e} = w_{e,g} = 1_g.
    fn axiom_iv(&self, r: &mut Report) {
        r.check("normalized twist");
        let e = self.a.group().identity();
        for g in &self.support {
            let one_g = self.a.idempotent(g);
            for (w, name) in [(self.a.twist(g, &e), "w_(g,e)"), (self.a.twist(&e, g), "w_(e,g)")] {
                if w != one_g {
                    r.fail(
                        "normalized twist",
                        format!("g = {}: {name} = {} but 1_g = {}", self.l(g), self.show(&w), self.show(&one_g)),
                    );
                }
            }
        }
    }

    /// α_g(a w_{h,t}) w_{g,ht} = α_g(a) w_{g,h} w_{gh,t} on D_{g⁻¹} D_h D_{ht}.
    fn axiom_v(&self, r: &mut Report) {
        r.check("cocycle");
        for g in &self.support {
            let gi = self.inv(g);
            let alpha_g = self.a.alpha(g);
            for h in &self.support {
                let hi = self.inv(h);
                let gh = self.op(g, h);
                for s in &self.support {
                    // s = ht
                    let t = self.op(&hi, s);
                    let ht = s;
                    let domain = self.product_ideal(&[&gi, h, ht]);
                    if domain.is_zero() {
                        continue;
                    }
                    let w_ht = self.a.twist(h, &t);
                    let w_g_ht = self.a.twist(g, ht);
                    let w_gh = self.a.twist(g, h);
                    let w_gh_t = self.a.twist(&gh, &t);
                    for x in domain.basis() {
                        let lhs = self.mul(&alpha_g.apply(&self.mul(x, &w_ht)), &w_g_ht);
                        let rhs = self.mul(&self.mul(&alpha_g.apply(x), &w_gh), &w_gh_t);
                        if lhs != rhs {
                            r.fail(
                                "cocycle",
                                format!(
                                    "g = {}, h = {}, t = {}, a = {}: {} vs {}",
                                    self.l(g),
                                    self.l(h),
                                    self.l(&t),
                                    self.show(x),
                                    self.show(&lhs),
                                    self.show(&rhs)
                                ),
                            );
                            return;
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{Piece, TwistedPartialAction};
    use super::*;
    use crate::algebra::Algebra;
    use crate::group::GroupModel;
    use crate::linalg::FieldSpec;

    #[test]
    fn z_pair_is_valid() {
        let r = validate_action(&z_pair());
        assert!(r.is_ok(), "{r}");
        assert!(validate_action(&z_point()).is_ok());
    }

    #[test]
    fn sign_flip_breaks_multiplicativity() {
        let a = z_pair();
        let q = FieldSpec::Rationals;
        let mut pieces = a.pieces().clone();
        let one = GroupElement::int(1);
        let m = Matrix::from_rows(q, 2, &[vec![q.zero(), q.zero()], vec![q.int(-1), q.zero()]]).unwrap();
        pieces.get_mut(&one).unwrap().alpha = m;
        let bad = TwistedPartialAction::new(a.algebra().clone(), a.group().clone(), pieces, BTreeMap::new())
            .unwrap();
        let r = validate_action(&bad);
        assert!(r.has_violation("multiplicative"), "{r}");
    }

    #[test]
    fn trivial_actions_are_valid() {
        let q = FieldSpec::Rationals;
        for g in [GroupModel::cyclic(3).unwrap(), GroupModel::symmetric(3).unwrap()] {
            let a = TwistedPartialAction::trivial(Algebra::matrix_algebra(q, 2), g).unwrap();
            assert!(validate_action(&a).is_ok());
        }
    }

    #[test]
    fn missing_inverse_reported() {
        let a = z_pair();
        let mut pieces = a.pieces().clone();
        pieces.remove(&GroupElement::int(-1));
        let bad = TwistedPartialAction::new(a.algebra().clone(), a.group().clone(), pieces, BTreeMap::new())
            .unwrap();
        assert!(validate_action(&bad).has_violation("support closed under inverses"));
    }

    #[test]
    fn bad_twist_reported() {
        let q = FieldSpec::Rationals;
        let c2 = GroupModel::cyclic(2).unwrap();
        let a = TwistedPartialAction::trivial(Algebra::scalars(q), c2.clone()).unwrap();
        let (e, g) = (GroupElement::Index(0), GroupElement::Index(1));
        // w_{e,g} must be 1
        let mut twist = BTreeMap::new();
        twist.insert((e, g.clone()), vec![q.int(2)]);
        let bad = TwistedPartialAction::new(a.algebra().clone(), c2.clone(), a.pieces().clone(), twist).unwrap();
        assert!(validate_action(&bad).has_violation("normalized twist"));
        // a central scalar twist on a commutative algebra is a cocycle when
        // w_{g,g} is arbitrary and the rest is 1
        let mut twist = BTreeMap::new();
        twist.insert((g.clone(), g.clone()), vec![q.int(5)]);
        let ok = TwistedPartialAction::new(a.algebra().clone(), c2.clone(), a.pieces().clone(), twist).unwrap();
        assert!(validate_action(&ok).is_ok(), "{}", validate_action(&ok));
        let mut twist = BTreeMap::new();
        twist.insert((g.clone(), g), vec![q.zero()]);
        let zero = TwistedPartialAction::new(a.algebra().clone(), c2, a.pieces().clone(), twist).unwrap();
        assert!(validate_action(&zero).has_violation("twist invertible"));
    }

    #[test]
    fn unbounded_flag_is_reported() {
        let a = z_point().mark_unbounded();
        assert!(validate_action(&a).has_violation("finite support"));
    }

    #[test]
    fn non_annihilating_matrix_reported() {
        let a = z_pair();
        let q = FieldSpec::Rationals;
        let mut pieces: BTreeMap<GroupElement, Piece> = a.pieces().clone();
        // also sends e2 to e2, though e2 is outside D_{-1}
        pieces.get_mut(&GroupElement::int(1)).unwrap().alpha =
            Matrix::from_rows(q, 2, &[vec![q.zero(), q.zero()], vec![q.one(), q.one()]]).unwrap();
        let bad = TwistedPartialAction::new(a.algebra().clone(), a.group().clone(), pieces, BTreeMap::new())
            .unwrap();
        assert!(validate_action(&bad).has_violation("annihilation"));
    }
}

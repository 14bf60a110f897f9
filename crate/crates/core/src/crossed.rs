//! Partial crossed products `R ⋆_{α,w} G = ⊕_g D_g δ_g`.
//!
//! Elements are finitely supported maps `g -> a_g ∈ D_g`, multiplied by
//! `(a δ_g)(b δ_h) = α_g(α_g⁻¹(a) b) w_{g,h} δ_{gh}`. For finite support the
//! product is also materialized as a structure-constant algebra on the basis
//! `{v δ_g}` with `v` running over the reduced basis of each `D_g`.

use crate::action::{restrict_subgroup, quotient_action, Subgroup, TwistedPartialAction};
use crate::algebra::{quotient, Algebra};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::report::Report;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

/// A finitely supported element `Σ a_g δ_g`; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossedElement {
    terms: BTreeMap<GroupElement, Vec<Scalar>>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `a δ_g`.
    pub fn term(g: GroupElement, a: Vec<Scalar>) -> Self {
        let mut x = Self::zero();
        x.add_term(g, a);
        x
    }

    pub fn add_term(&mut self, g: GroupElement, a: Vec<Scalar>) {
        match self.terms.get_mut(&g) {
            Some(v) => {
                let sum = vector::add(v, &a);
                if vector::is_zero(&sum) {
                    self.terms.remove(&g);
                } else {
                    *v = sum;
                }
            }
            None => {
                if !vector::is_zero(&a) {
                    self.terms.insert(g, a);
                }
            }
        }
    }

    pub fn add(&self, other: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        for (g, a) in &other.terms {
            out.add_term(g.clone(), a.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Vec<Scalar>> {
        &self.terms
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&Vec<Scalar>> {
        self.terms.get(g)
    }

    /// `supp(x) = {g : a_g != 0}`.
    pub fn support(&self) -> Vec<GroupElement> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn display(&self, a: &TwistedPartialAction) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(g, v)| term_name(a, g, v))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn term_name(a: &TwistedPartialAction, g: &GroupElement, v: &[Scalar]) -> String {
    let shown = a.algebra().display(v);
    let coeff = if shown.contains(' ') { format!("({shown})") } else { shown };
    format!("{coeff}δ{}", a.label(g))
}

/// Multiplies two crossed elements directly from the action data. This is
/// the lazy path used for `Z`.
pub fn cross_multiply(a: &TwistedPartialAction, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
    multiply_with(a, a.alpha_inverses()?, x, y)
}

fn check_member(a: &TwistedPartialAction, x: &CrossedElement) -> Result<()> {
    for (g, v) in &x.terms {
        if v.len() != a.dim() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient at {} has {} coordinates",
                a.label(g),
                v.len()
            )));
        }
        if a.algebra().mul(v, &a.idempotent(g)) != *v {
            return Err(Error::Malformed(format!(
                "coefficient {} is not in D_{}",
                a.algebra().display(v),
                a.label(g)
            )));
        }
    }
    Ok(())
}

fn multiply_with(
    a: &TwistedPartialAction,
    inverses: &BTreeMap<GroupElement, Matrix>,
    x: &CrossedElement,
    y: &CrossedElement,
) -> Result<CrossedElement> {
    check_member(a, x)?;
    check_member(a, y)?;
    let alg = a.algebra();
    let mut out = CrossedElement::zero();
    for (g, ag) in &x.terms {
        let Some(inverse) = inverses.get(g) else {
            continue;
        };
        let pre = inverse.apply(ag);
        let alpha = &a.pieces()[g].alpha;
        for (h, bh) in &y.terms {
            let inner = alg.mul(&pre, bh);
            if vector::is_zero(&inner) {
                continue;
            }
            let c = alg.mul(&alpha.apply(&inner), &a.twist(g, h));
            out.add_term(a.group().op(g, h), c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
struct Block {
    g: GroupElement,
    ideal: Subspace,
    offset: usize,
}

/// The crossed product of a finitely supported action, with its
/// structure-constant algebra.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    action: TwistedPartialAction,
    blocks: Vec<Block>,
    index: BTreeMap<GroupElement, usize>,
    inverses: BTreeMap<GroupElement, Matrix>,
    algebra: Algebra,
}

/// Builds `R ⋆ G` as an explicit algebra. Basis order: support elements in
/// canonical order, then the reduced basis of each `D_g`.
pub fn build_crossed(a: &TwistedPartialAction) -> Result<CrossedProduct> {
    if a.is_unbounded() {
        return Err(Error::InfiniteSupport);
    }
    let mut blocks = Vec::new();
    let mut index = BTreeMap::new();
    let mut inverses = BTreeMap::new();
    let mut offset = 0;
    for g in a.support() {
        let ideal = a.ideal(&g);
        if ideal.is_zero() {
            continue;
        }
        inverses.insert(g.clone(), a.alpha_inverse(&g)?);
        index.insert(g.clone(), blocks.len());
        let d = ideal.dim();
        blocks.push(Block { g, ideal, offset });
        offset += d;
    }
    let n = offset;
    let f = a.field();
    let basis: Vec<CrossedElement> = blocks
        .iter()
        .flat_map(|b| b.ideal.basis().iter().map(|v| CrossedElement::term(b.g.clone(), v.clone())))
        .collect();
    let names: Vec<String> = blocks
        .iter()
        .flat_map(|b| b.ideal.basis().iter().map(|v| term_name(a, &b.g, v)))
        .collect();
    let mut cp = CrossedProduct {
        action: a.clone(),
        blocks,
        index,
        inverses,
        algebra: Algebra::zero(f),
    };
    let rows: Vec<Vec<Vec<Scalar>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let p = multiply_with(a, &cp.inverses, &basis[i], &basis[j])?;
                    cp.to_coords(&p)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let e = a.group().identity();
    let unit = cp.to_coords(&CrossedElement::term(e, a.algebra().unit().to_vec()))?;
    cp.algebra = Algebra::new(f, names, rows, unit)?;
    Ok(cp)
}

impl CrossedProduct {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn action(&self) -> &TwistedPartialAction {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Group elements with a nonzero block, in basis order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.blocks.iter().map(|b| b.g.clone()).collect()
    }

    /// Coordinates occupied by the block of `g`.
    pub fn block_range(&self, g: &GroupElement) -> Range<usize> {
        match self.index.get(g) {
            Some(&i) => {
                let b = &self.blocks[i];
                b.offset..b.offset + b.ideal.dim()
            }
            None => 0..0,
        }
    }

    /// The group element and `R`-coordinates of basis vector `i`.
    pub fn basis_term(&self, i: usize) -> (GroupElement, Vec<Scalar>) {
        let b = self
            .blocks
            .iter()
            .rev()
            .find(|b| b.offset <= i)
            .expect("index in range");
        (b.g.clone(), b.ideal.basis()[i - b.offset].clone())
    }

    pub fn multiply(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
        multiply_with(&self.action, &self.inverses, x, y)
    }

    pub fn to_coords(&self, x: &CrossedElement) -> Result<Vec<Scalar>> {
        let mut out = vector::zero(self.action.field(), self.blocks.iter().map(|b| b.ideal.dim()).sum());
        for (g, v) in x.terms() {
            let Some(&bi) = self.index.get(g) else {
                return Err(Error::Malformed(format!(
                    "nonzero coefficient at {} where D = 0",
                    self.action.label(g)
                )));
            };
            let b = &self.blocks[bi];
            let c = b.ideal.coords(v).ok_or_else(|| {
                Error::Malformed(format!(
                    "{} is not in D_{}",
                    self.action.algebra().display(v),
                    self.action.label(g)
                ))
            })?;
            out[b.offset..b.offset + c.len()].clone_from_slice(&c);
        }
        Ok(out)
    }

    pub fn from_coords(&self, c: &[Scalar]) -> CrossedElement {
        let mut x = CrossedElement::zero();
        for b in &self.blocks {
            let part = &c[b.offset..b.offset + b.ideal.dim()];
            x.add_term(b.g.clone(), b.ideal.combine(part));
        }
        x
    }
}

impl fmt::Display for CrossedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "crossed product of dimension {} over {} with support {{{}}}",
            self.dim(),
            self.action.field(),
            self.blocks
                .iter()
                .map(|b| self.action.label(&b.g))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Splits `x` into its part supported in `H` and the rest.
pub fn subgroup_projection(x: &CrossedElement, h: &Subgroup) -> (CrossedElement, CrossedElement) {
    let mut inside = CrossedElement::zero();
    let mut outside = CrossedElement::zero();
    for (g, v) in x.terms() {
        if h.contains(g) {
            inside.add_term(g.clone(), v.clone());
        } else {
            outside.add_term(g.clone(), v.clone());
        }
    }
    (inside, outside)
}

/// Checks `R⋆G = R⋆H ⊕ A` with `A` spanned by the blocks outside `H`:
/// `R⋆H` (built independently from the restricted action) is a subalgebra
/// matching the `H`-blocks, and `A` is stable under multiplication by `R⋆H`
/// on both sides. Everything is checked on basis elements.
pub fn check_subgroup_decomposition(cp: &CrossedProduct, h: &Subgroup) -> Result<Report> {
    let mut r = Report::new("subgroup decomposition");
    let alg = cp.algebra();
    let n = cp.dim();
    let in_h: Vec<bool> = (0..n).map(|i| h.contains(&cp.basis_term(i).0)).collect();
    let inside: Vec<usize> = (0..n).filter(|&i| in_h[i]).collect();
    let outside: Vec<usize> = (0..n).filter(|&i| !in_h[i]).collect();

    r.check("direct sum");
    let (sum_in, sum_out) = (0..n).fold((0, 0), |(a, b), i| if in_h[i] { (a + 1, b) } else { (a, b + 1) });
    r.require("direct sum", sum_in + sum_out == n, || "blocks do not partition the basis".into());

    let restricted = restrict_subgroup(cp.action(), h)?;
    let sub = build_crossed(&restricted)?;
    r.require("R*H dimension", sub.dim() == inside.len(), || {
        format!("R*H has dimension {} but G-blocks in H span {}", sub.dim(), inside.len())
    });
    if sub.dim() == inside.len() {
        // R*H basis term (h, v) corresponds to (include(h), v)
        let embed = |c: &[Scalar]| -> Result<Vec<Scalar>> {
            let x = sub.from_coords(c);
            let mut y = CrossedElement::zero();
            for (k, v) in x.terms() {
                y.add_term(h.include(k), v.clone());
            }
            cp.to_coords(&y)
        };
        r.check("R*H subalgebra");
        'pairs: for i in 0..sub.dim() {
            for j in 0..sub.dim() {
                let lhs = embed(&sub.algebra().basis_product(i, j))?;
                let rhs = alg.mul(&embed(&sub.algebra().basis_vector(i))?, &embed(&sub.algebra().basis_vector(j))?);
                if lhs != rhs {
                    r.fail(
                        "R*H subalgebra",
                        format!("{} * {}", sub.algebra().names()[i], sub.algebra().names()[j]),
                    );
                    break 'pairs;
                }
            }
        }
    }

    r.check("A stable");
    let escapes = |v: &[Scalar]| inside.iter().any(|&k| !v[k].is_zero());
    'outer: for &i in &inside {
        for &j in &outside {
            let (bi, bj) = (alg.basis_vector(i), alg.basis_vector(j));
            for (prod, side) in [(alg.mul(&bi, &bj), "left"), (alg.mul(&bj, &bi), "right")] {
                if escapes(&prod) {
                    r.fail(
                        "A stable",
                        format!(
                            "{side} multiplication: {} and {} give {} with a component in R*H",
                            alg.names()[i],
                            alg.names()[j],
                            alg.display(&prod)
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(r)
}

/// Checks `(R⋆G)/(I⋆G) ≅ (R/I)⋆G` for an invariant ideal `I` under the basis
/// map `v̄ δ_g -> lift(v̄) 1_g δ_g + I⋆G`.
pub fn check_quotient_isomorphism(a: &TwistedPartialAction, ideal: &Subspace) -> Result<Report> {
    let mut r = Report::new("quotient isomorphism");
    let cp = build_crossed(a)?;
    let alg = a.algebra();
    let mut ig = Subspace::zero(a.field(), cp.dim());
    for g in cp.support() {
        let one_g = a.idempotent(&g);
        for v in ideal.basis() {
            let x = alg.mul(v, &one_g);
            ig.insert(cp.to_coords(&CrossedElement::term(g.clone(), x))?);
        }
    }
    let big = quotient(cp.algebra(), &ig)?;
    let qa = quotient_action(a, ideal)?;
    let small = build_crossed(&qa.action)?;
    r.require("dimension", big.algebra.dim() == small.dim(), || {
        format!("(R*G)/(I*G) has dimension {} but (R/I)*G has {}", big.algebra.dim(), small.dim())
    });
    if big.algebra.dim() != small.dim() {
        return Ok(r);
    }
    let f = a.field();
    let images: Vec<Vec<Scalar>> = (0..small.dim())
        .map(|i| {
            let (g, vbar) = small.basis_term(i);
            let v = alg.mul(&qa.quotient.lift.apply(&vbar), &a.idempotent(&g));
            Ok(big.project(&cp.to_coords(&CrossedElement::term(g, v))?))
        })
        .collect::<Result<_>>()?;
    let phi = Matrix::from_columns(f, big.algebra.dim(), &images)?;
    r.require("bijective", phi.rank() == small.dim(), || "basis map is singular".into());
    r.require("unit", phi.apply(small.algebra().unit()) == big.algebra.unit(), || {
        "unit is not preserved".into()
    });
    r.check("structure constants");
    'pairs: for i in 0..small.dim() {
        for j in 0..small.dim() {
            let lhs = phi.apply(&small.algebra().basis_product(i, j));
            let rhs = big.algebra.mul(&images[i], &images[j]);
            if lhs != rhs {
                r.fail(
                    "structure constants",
                    format!("{} * {}", small.algebra().names()[i], small.algebra().names()[j]),
                );
                break 'pairs;
            }
        }
    }
    Ok(r)
}

/// A left module over `R⋆G` on `K^m`, given by the matrix of each basis
/// element of the crossed product.
#[derive(Debug, Clone)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl Representation {
    /// The left regular module.
    pub fn regular(cp: &CrossedProduct) -> Self {
        let alg = cp.algebra();
        Self {
            dim: alg.dim(),
            matrices: (0..alg.dim()).map(|i| alg.left_matrix(&alg.basis_vector(i))).collect(),
        }
    }

    pub fn act(&self, coords: &[Scalar]) -> Matrix {
        let f = coords.first().map(|c| c.field()).unwrap_or(crate::linalg::FieldSpec::Rationals);
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (c, m) in coords.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("square");
            }
        }
        out
    }
}

/// How the average in the Maschke operator is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `1/|G|`, as in the averaging formula.
    GroupOrder,
    /// `(Σ_g 1_g)⁻¹`. The element `Σ_g 1_g` is central in `R⋆G`; on the
    /// submodule the unnormalized sum acts as multiplication by it, so this
    /// is the normalization that makes the average restrict to the identity
    /// when the action is partial.
    IdempotentSum,
}

/// `Ψ(v) = ν Σ_g w⁻¹_{g⁻¹,g} 1_{g⁻¹} δ_{g⁻¹} π(1_g δ_g v)`, with `ν` chosen by
/// `norm`. The group must be finite.
pub fn maschke_average(cp: &CrossedProduct, rep: &Representation, pi: &Matrix, norm: Normalization) -> Result<Matrix> {
    let a = cp.action();
    let alg = a.algebra();
    let f = a.field();
    let group = a.group();
    let elements = group
        .elements()
        .ok_or_else(|| Error::UnsupportedGroup("averaging needs a finite group".into()))?;
    if pi.rows() != rep.dim || pi.cols() != rep.dim {
        return Err(Error::DimensionMismatch("projection and module differ in size".into()));
    }
    let mut sum = Matrix::zeros(f, rep.dim, rep.dim);
    for g in &elements {
        if !a.in_support(g) {
            continue;
        }
        let gi = group.inv(g);
        let one_gi = a.idempotent(&gi);
        let w = a.twist(&gi, g);
        let w_inv = alg
            .corner_inverse(&w, &one_gi)
            .ok_or_else(|| Error::NotInvertible(format!("w_({},{})", a.label(&gi), a.label(g))))?;
        let left = cp.to_coords(&CrossedElement::term(gi.clone(), alg.mul(&w_inv, &one_gi)))?;
        let right = cp.to_coords(&CrossedElement::term(g.clone(), a.idempotent(g)))?;
        let term = rep.act(&left).mul(pi)?.mul(&rep.act(&right))?;
        sum = sum.add(&term)?;
    }
    let scale = match norm {
        Normalization::GroupOrder => {
            let order = f.int(elements.len() as i64);
            let inv = order
                .inv()
                .ok_or_else(|| Error::NotInvertible(format!("|G| = {} vanishes in {f}", elements.len())))?;
            Matrix::identity(f, rep.dim).scale(&inv)
        }
        Normalization::IdempotentSum => {
            let mut c = alg.zero_vector();
            for g in &elements {
                c = vector::add(&c, &a.idempotent(g));
            }
            let c_inv = alg
                .corner_inverse(&c, alg.unit())
                .ok_or_else(|| Error::NotInvertible(format!("sum of the 1_g = {}", alg.display(&c))))?;
            let e = group.identity();
            rep.act(&cp.to_coords(&CrossedElement::term(e, c_inv))?)
        }
    };
    scale.mul(&sum)
}

/// The three postconditions of the averaging operator: `Ψ|_N = id`,
/// `Ψ² = Ψ` with image in `N`, and commutation with every basis element of
/// `R⋆G`. `N` is the image of `π`.
pub fn check_maschke(rep: &Representation, pi: &Matrix, psi: &Matrix) -> Report {
    let mut r = Report::new("averaging operator");
    let f = pi.field();
    let n_space = Subspace::span(f, rep.dim, pi.columns());
    r.check("restricts to identity on N");
    for v in n_space.basis() {
        let image = psi.apply(v);
        if image != *v {
            r.fail(
                "restricts to identity on N",
                format!("Psi({}) = {}", vector::display(v), vector::display(&image)),
            );
            break;
        }
    }
    let squared = psi.mul(psi).expect("square");
    r.require("idempotent onto N", squared == *psi, || "Psi^2 != Psi".into());
    let image = Subspace::span(f, rep.dim, psi.columns());
    r.require("idempotent onto N", image == n_space, || {
        format!("image of Psi has dimension {} but N has {}", image.dim(), n_space.dim())
    });
    r.check("module map");
    for (i, m) in rep.matrices.iter().enumerate() {
        if m.mul(psi).expect("square") != psi.mul(m).expect("square") {
            r.fail("module map", format!("Psi does not commute with basis element {i}"));
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{validate_action, Piece};
    use crate::algebra::{center, group_algebra, jacobson_radical, validate_algebra};
    use crate::group::GroupModel;
    use crate::linalg::FieldSpec;
    use num_bigint::BigInt;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn z_pair() -> TwistedPartialAction {
        let r = Algebra::diagonal(q(), 2);
        let m = |rows: [[i64; 2]; 2]| Matrix::from_rows(q(), 2, &rows.map(|r| r.map(|x| q().int(x)).to_vec())).unwrap();
        let mut pieces = BTreeMap::new();
        for (g, e, alpha) in [
            (0, [1, 1], m([[1, 0], [0, 1]])),
            (1, [0, 1], m([[0, 0], [1, 0]])),
            (-1, [1, 0], m([[0, 1], [0, 0]])),
        ] {
            pieces.insert(
                GroupElement::int(g),
                Piece {
                    idempotent: e.iter().map(|&x| q().int(x)).collect(),
                    alpha,
                },
            );
        }
        TwistedPartialAction::new(r, GroupModel::Integers, pieces, BTreeMap::new()).unwrap()
    }

    fn e(i: usize) -> Vec<Scalar> {
        vector::unit(q(), 2, i)
    }

    #[test]
    fn z_pair_products() {
        let a = z_pair();
        let (one, minus) = (GroupElement::int(1), GroupElement::int(-1));
        let x = CrossedElement::term(one.clone(), e(1));
        let y = CrossedElement::term(minus, e(0));
        assert_eq!(cross_multiply(&a, &x, &y).unwrap(), CrossedElement::term(GroupElement::int(0), e(1)));
        assert!(cross_multiply(&a, &x, &x).unwrap().is_zero());
        let unit = CrossedElement::term(GroupElement::int(0), vec![q().one(), q().one()]);
        assert_eq!(cross_multiply(&a, &unit, &x).unwrap(), x);
        // coefficients outside D_g are rejected
        let bad = CrossedElement::term(one, e(0));
        assert!(cross_multiply(&a, &bad, &x).is_err());
    }

    #[test]
    fn z_pair_build() {
        let cp = build_crossed(&z_pair()).unwrap();
        assert_eq!(cp.dim(), 4);
        assert!(validate_algebra(cp.algebra()).is_ok());
        assert!(jacobson_radical(cp.algebra()).unwrap().is_zero());
        assert_eq!(center(cp.algebra()).dim(), 1);
        let x = CrossedElement::term(GroupElement::int(1), e(1));
        assert_eq!(cp.from_coords(&cp.to_coords(&x).unwrap()), x);
    }

    #[test]
    fn global_scalars_give_group_algebra() {
        for n in 1..5 {
            let g = GroupModel::cyclic(n).unwrap();
            let a = TwistedPartialAction::trivial(Algebra::scalars(q()), g.clone()).unwrap();
            let cp = build_crossed(&a).unwrap();
            let kg = group_algebra(q(), &g).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(cp.algebra().basis_product(i, j), kg.basis_product(i, j));
                }
            }
        }
    }

    #[test]
    fn projections() {
        let x = CrossedElement::term(GroupElement::int(1), e(1)).add(&CrossedElement::term(GroupElement::int(0), e(0)));
        let (inside, outside) = subgroup_projection(&x, &Subgroup::Multiples(BigInt::from(0)));
        assert_eq!(inside, CrossedElement::term(GroupElement::int(0), e(0)));
        assert_eq!(outside, CrossedElement::term(GroupElement::int(1), e(1)));
        let (all, none) = subgroup_projection(&x, &Subgroup::Multiples(BigInt::from(1)));
        assert_eq!((all, none.is_zero()), (x, true));
        let (z1, z2) = subgroup_projection(&CrossedElement::zero(), &Subgroup::Multiples(BigInt::from(1)));
        assert!(z1.is_zero() && z2.is_zero());
    }

    fn swap_c2() -> TwistedPartialAction {
        let r = Algebra::diagonal(q(), 2);
        let swap = Matrix::from_rows(q(), 2, &[e(1), e(0)]).unwrap();
        let mut pieces = BTreeMap::new();
        for (i, m) in [Matrix::identity(q(), 2), swap].into_iter().enumerate() {
            pieces.insert(
                GroupElement::Index(i),
                Piece {
                    idempotent: vec![q().one(), q().one()],
                    alpha: m,
                },
            );
        }
        TwistedPartialAction::new(r, GroupModel::cyclic(2).unwrap(), pieces, BTreeMap::new()).unwrap()
    }

    #[test]
    fn subgroup_decomposition() {
        let a = swap_c2();
        let cp = build_crossed(&a).unwrap();
        for h in [vec![GroupElement::Index(0)], vec![GroupElement::Index(0), GroupElement::Index(1)]] {
            let r = check_subgroup_decomposition(&cp, &Subgroup::Elements(h)).unwrap();
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn quotient_isomorphism_on_z_pair() {
        let a = z_pair();
        assert!(check_quotient_isomorphism(&a, &Subspace::zero(q(), 2)).unwrap().is_ok());
        assert!(check_quotient_isomorphism(&a, &Subspace::full(q(), 2)).unwrap().is_ok());
    }

    #[test]
    fn maschke_on_swap() {
        let a = swap_c2();
        assert!(validate_action(&a).is_ok());
        let cp = build_crossed(&a).unwrap();
        let rep = Representation::regular(&cp);
        // N = R*G (e1 δ_e): right multiplication by an idempotent
        let eps = cp.to_coords(&CrossedElement::term(GroupElement::Index(0), e(0))).unwrap();
        let pi = cp.algebra().right_matrix(&eps);
        for norm in [Normalization::GroupOrder, Normalization::IdempotentSum] {
            let psi = maschke_average(&cp, &rep, &pi, norm).unwrap();
            let r = check_maschke(&rep, &pi, &psi);
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn maschke_quoted_formula_on_partial_action() {
        // C2 on Q with D_g = 0: the quoted average is half the identity on N
        let mut pieces = BTreeMap::new();
        pieces.insert(
            GroupElement::Index(0),
            Piece {
                idempotent: vec![q().one()],
                alpha: Matrix::identity(q(), 1),
            },
        );
        let a = TwistedPartialAction::new(Algebra::scalars(q()), GroupModel::cyclic(2).unwrap(), pieces, BTreeMap::new())
            .unwrap();
        let cp = build_crossed(&a).unwrap();
        let rep = Representation::regular(&cp);
        let pi = Matrix::identity(q(), 1);
        let quoted = maschke_average(&cp, &rep, &pi, Normalization::GroupOrder).unwrap();
        assert_eq!(quoted, Matrix::identity(q(), 1).scale(&q().parse("1/2").unwrap()));
        assert!(check_maschke(&rep, &pi, &quoted).has_violation("restricts to identity on N"));
        let normalized = maschke_average(&cp, &rep, &pi, Normalization::IdempotentSum).unwrap();
        assert!(check_maschke(&rep, &pi, &normalized).is_ok());
    }

    #[test]
    fn z_point_is_r() {
        let r = Algebra::scalars(q());
        let mut pieces = BTreeMap::new();
        pieces.insert(
            GroupElement::int(0),
            Piece {
                idempotent: vec![q().one()],
                alpha: Matrix::identity(q(), 1),
            },
        );
        let a = TwistedPartialAction::new(r.clone(), GroupModel::Integers, pieces, BTreeMap::new()).unwrap();
        let cp = build_crossed(&a).unwrap();
        assert_eq!(cp.dim(), 1);
        assert_eq!(cp.algebra().basis_product(0, 0), r.basis_product(0, 0));
        assert!(build_crossed(&a.mark_unbounded()).is_err());
    }
}

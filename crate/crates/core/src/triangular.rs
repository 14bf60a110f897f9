//! Triangular matrix algebras `(R, N, S)`, relative partial actions on the
//! bimodule, and the representation `L ⋆ G ≅ (R ⋆ G, M, S ⋆ G)`.

use crate::action::{validate_action, Piece, TwistedPartialAction};
use crate::algebra::{validate_algebra, Algebra};
use crate::crossed::{build_crossed, CrossedElement, CrossedProduct};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::report::Report;
use std::collections::{BTreeMap, BTreeSet};

/// An `(R, S)`-bimodule given by explicit matrices: `left[i]` is `n -> r_i n`
/// and `right[j]` is `n -> n s_j` on the basis of `R` and `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    left_algebra: Algebra,
    right_algebra: Algebra,
    names: Vec<String>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    /// Checks shapes and the bimodule axioms; the error names the first
    /// failing axiom.
    pub fn new(
        left_algebra: Algebra,
        right_algebra: Algebra,
        names: Vec<String>,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self> {
        let m = names.len();
        if left.len() != left_algebra.dim() || right.len() != right_algebra.dim() {
            return Err(Error::DimensionMismatch(
                "one action matrix per basis element of R and of S".into(),
            ));
        }
        if left.iter().chain(&right).any(|x| x.rows() != m || x.cols() != m) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {m}x{m}")));
        }
        let f = left_algebra.field();
        if right_algebra.field() != f || left.iter().chain(&right).any(|x| x.field() != f) {
            return Err(Error::FieldMismatch("bimodule data".into()));
        }
        let b = Self {
            left_algebra,
            right_algebra,
            names,
            left,
            right,
        };
        let report = validate_bimodule(&b);
        match report.violations.first() {
            None => Ok(b),
            Some(v) => Err(Error::Hypothesis(format!("bimodule axiom '{}' fails: {}", v.rule, v.witness))),
        }
    }

    /// `R` as an `(R, R)`-bimodule.
    pub fn regular(r: &Algebra) -> Self {
        let n = r.dim();
        Self {
            left_algebra: r.clone(),
            right_algebra: r.clone(),
            names: r.names().to_vec(),
            left: (0..n).map(|i| r.left_matrix(&r.basis_vector(i))).collect(),
            right: (0..n).map(|i| r.right_matrix(&r.basis_vector(i))).collect(),
        }
    }

    pub fn zero(r: &Algebra, s: &Algebra) -> Self {
        let f = r.field();
        Self {
            left_algebra: r.clone(),
            right_algebra: s.clone(),
            names: Vec::new(),
            left: vec![Matrix::zeros(f, 0, 0); r.dim()],
            right: vec![Matrix::zeros(f, 0, 0); s.dim()],
        }
    }

    pub fn left_algebra(&self) -> &Algebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Algebra {
        &self.right_algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.left_algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn left_basis_matrices(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_basis_matrices(&self) -> &[Matrix] {
        &self.right
    }

    /// The matrix of `n -> r n`.
    pub fn left_matrix(&self, r: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.left, r)
    }

    /// The matrix of `n -> n s`.
    pub fn right_matrix(&self, s: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.right, s)
    }

    pub fn act_left(&self, r: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
        self.left_matrix(r).apply(n)
    }

    pub fn act_right(&self, n: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        self.right_matrix(s).apply(n)
    }
}

fn combine(f: FieldSpec, m: usize, mats: &[Matrix], c: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(f, m, m);
    for (x, coeff) in mats.iter().zip(c) {
        if !coeff.is_zero() {
            out = out.add(&x.scale(coeff)).expect("same shape");
        }
    }
    out
}

/// Left action multiplicative and unital, right action anti-multiplicative
/// and unital, and the two actions commute.
pub fn validate_bimodule(b: &Bimodule) -> Report {
    let mut rep = Report::new("bimodule");
    let (r, s) = (&b.left_algebra, &b.right_algebra);
    let id = Matrix::identity(b.field(), b.dim());
    rep.require("left unit", b.left_matrix(r.unit()) == id, || "1_R does not act as the identity".into());
    rep.require("right unit", b.right_matrix(s.unit()) == id, || "1_S does not act as the identity".into());
    rep.check("left multiplicative");
    'l: for i in 0..r.dim() {
        for j in 0..r.dim() {
            let lhs = b.left_matrix(&r.basis_product(i, j));
            let rhs = b.left[i].mul(&b.left[j]).expect("square");
            if lhs != rhs {
                rep.fail(
                    "left multiplicative",
                    format!("({} {}) n != {} ({} n)", r.names()[i], r.names()[j], r.names()[i], r.names()[j]),
                );
                break 'l;
            }
        }
    }
    rep.check("right multiplicative");
    'r: for i in 0..s.dim() {
        for j in 0..s.dim() {
            let lhs = b.right_matrix(&s.basis_product(i, j));
            let rhs = b.right[j].mul(&b.right[i]).expect("square");
            if lhs != rhs {
                rep.fail(
                    "right multiplicative",
                    format!("n ({} {}) != (n {}) {}", s.names()[i], s.names()[j], s.names()[i], s.names()[j]),
                );
                break 'r;
            }
        }
    }
    rep.check("actions commute");
    'c: for (i, x) in b.left.iter().enumerate() {
        for (j, y) in b.right.iter().enumerate() {
            if x.mul(y).expect("square") != y.mul(x).expect("square") {
                rep.fail(
                    "actions commute",
                    format!("({} n) {} != {} (n {})", r.names()[i], s.names()[j], r.names()[i], s.names()[j]),
                );
                break 'c;
            }
        }
    }
    rep
}

/// `L = (R, N, S)` with basis `R`, then `N`, then `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularAlgebra {
    bimodule: Bimodule,
    algebra: Algebra,
}

pub fn assemble_triangular(bimodule: Bimodule) -> Result<TriangularAlgebra> {
    let report = validate_bimodule(&bimodule);
    if let Some(v) = report.violations.first() {
        return Err(Error::Hypothesis(format!("bimodule axiom '{}' fails: {}", v.rule, v.witness)));
    }
    let r = &bimodule.left_algebra;
    let s = &bimodule.right_algebra;
    let f = r.field();
    let (dr, dn, ds) = (r.dim(), bimodule.dim(), s.dim());
    let total = dr + dn + ds;
    let names = r
        .names()
        .iter()
        .map(|x| format!("r:{x}"))
        .chain(bimodule.names.iter().map(|x| format!("n:{x}")))
        .chain(s.names().iter().map(|x| format!("s:{x}")))
        .collect();
    let mut unit = vector::zero(f, total);
    unit[..dr].clone_from_slice(r.unit());
    unit[dr + dn..].clone_from_slice(s.unit());
    let algebra = Algebra::from_fn(f, names, unit, |i, j| {
        let mut out = vector::zero(f, total);
        let place = |out: &mut Vec<Scalar>, off: usize, v: Vec<Scalar>| {
            for (k, x) in v.into_iter().enumerate() {
                out[off + k] = x;
            }
        };
        if i < dr && j < dr {
            place(&mut out, 0, r.basis_product(i, j));
        } else if i < dr && (dr..dr + dn).contains(&j) {
            place(&mut out, dr, bimodule.left[i].column(j - dr));
        } else if (dr..dr + dn).contains(&i) && j >= dr + dn {
            place(&mut out, dr, bimodule.right[j - dr - dn].column(i - dr));
        } else if i >= dr + dn && j >= dr + dn {
            place(&mut out, dr + dn, s.basis_product(i - dr - dn, j - dr - dn));
        }
        out
    })?;
    Ok(TriangularAlgebra { bimodule, algebra })
}

/// A triple of coordinate vectors, one per corner.
pub type Triple = (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>);

impl TriangularAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn left_algebra(&self) -> &Algebra {
        &self.bimodule.left_algebra
    }

    pub fn right_algebra(&self) -> &Algebra {
        &self.bimodule.right_algebra
    }

    fn dims(&self) -> (usize, usize, usize) {
        (self.left_algebra().dim(), self.bimodule.dim(), self.right_algebra().dim())
    }

    pub fn join(&self, r: &[Scalar], n: &[Scalar], s: &[Scalar]) -> Vec<Scalar> {
        let mut v = r.to_vec();
        v.extend_from_slice(n);
        v.extend_from_slice(s);
        v
    }

    pub fn split(&self, v: &[Scalar]) -> Triple {
        let (dr, dn, _) = self.dims();
        (v[..dr].to_vec(), v[dr..dr + dn].to_vec(), v[dr + dn..].to_vec())
    }

    /// `(1_R, 0, 0)`.
    pub fn left_corner(&self) -> Vec<Scalar> {
        let f = self.algebra.field();
        let (_, dn, ds) = self.dims();
        self.join(self.left_algebra().unit(), &vector::zero(f, dn), &vector::zero(f, ds))
    }

    /// `(0, 0, 1_S)`.
    pub fn right_corner(&self) -> Vec<Scalar> {
        let f = self.algebra.field();
        let (dr, dn, _) = self.dims();
        self.join(&vector::zero(f, dr), &vector::zero(f, dn), self.right_algebra().unit())
    }

    fn embed_r(&self, r: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field();
        let (_, dn, ds) = self.dims();
        self.join(r, &vector::zero(f, dn), &vector::zero(f, ds))
    }

    fn embed_n(&self, n: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field();
        let (dr, _, ds) = self.dims();
        self.join(&vector::zero(f, dr), n, &vector::zero(f, ds))
    }

    fn embed_s(&self, s: &[Scalar]) -> Vec<Scalar> {
        let f = self.algebra.field();
        let (dr, dn, _) = self.dims();
        self.join(&vector::zero(f, dr), &vector::zero(f, dn), s)
    }
}

/// The corners of an ideal `J = (J_1, N_2, J_3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub j1: Subspace,
    pub n2: Subspace,
    pub j3: Subspace,
    /// When `J = cL` for a central idempotent `c = (e, 0, f)`: the
    /// generators `e` of `J_1` and `f` of `J_3`.
    pub central: Option<(Vec<Scalar>, Vec<Scalar>)>,
}

impl IdealDecomposition {
    pub fn reassemble(&self, l: &TriangularAlgebra) -> Subspace {
        let mut span = Subspace::zero(l.algebra.field(), l.algebra.dim());
        for v in self.j1.basis() {
            span.insert(l.embed_r(v));
        }
        for v in self.n2.basis() {
            span.insert(l.embed_n(v));
        }
        for v in self.j3.basis() {
            span.insert(l.embed_s(v));
        }
        span
    }
}

/// Splits an ideal by the corner projections `x -> e_R x e_R`,
/// `e_R x e_S`, `e_S x e_S`.
pub fn decompose_ideal(l: &TriangularAlgebra, j: &Subspace) -> Result<IdealDecomposition> {
    let alg = &l.algebra;
    alg.check_ideal(j).map_err(Error::NotAnIdeal)?;
    let f = alg.field();
    let (dr, dn, ds) = l.dims();
    let (er, es) = (l.left_corner(), l.right_corner());
    let mut j1 = Subspace::zero(f, dr);
    let mut n2 = Subspace::zero(f, dn);
    let mut j3 = Subspace::zero(f, ds);
    for v in j.basis() {
        j1.insert(l.split(&alg.mul(&alg.mul(&er, v), &er)).0);
        n2.insert(l.split(&alg.mul(&alg.mul(&er, v), &es)).1);
        j3.insert(l.split(&alg.mul(&alg.mul(&es, v), &es)).2);
    }
    let central = alg.unit_of_span(j.basis())?.and_then(|c| {
        if !alg.is_central_idempotent(&c) || alg.ideal_of_idempotent(&c) != *j {
            return None;
        }
        let (e, _, fs) = l.split(&c);
        Some((e, fs))
    });
    Ok(IdealDecomposition { j1, n2, j3, central })
}

/// Whether `θ(R, 0, 0) ⊆ (R', 0, 0)` and
/// `θ(0, 0, S) ⊆ (0, 0, S')` for a map `θ: L -> L'`.
pub fn check_corner_preserving(l: &TriangularAlgebra, target: &TriangularAlgebra, theta: &Matrix) -> Report {
    let mut rep = Report::new("corner preservation");
    let f = l.algebra.field();
    let (dr, _, ds) = l.dims();
    let (tr, tn, ts) = target.dims();
    let r_corner = Subspace::span(f, tr + tn + ts, (0..tr).map(|i| vector::unit(f, tr + tn + ts, i)));
    let s_corner = Subspace::span(f, tr + tn + ts, (0..ts).map(|i| vector::unit(f, tr + tn + ts, tr + tn + i)));
    rep.check("R corner");
    for i in 0..dr {
        let img = theta.apply(&l.embed_r(&vector::unit(f, dr, i)));
        if !r_corner.contains(&img) {
            rep.fail("R corner", format!("image of {} leaves (R', 0, 0)", l.left_algebra().names()[i]));
            break;
        }
    }
    rep.check("S corner");
    for i in 0..ds {
        let img = theta.apply(&l.embed_s(&vector::unit(f, ds, i)));
        if !s_corner.contains(&img) {
            rep.fail("S corner", format!("image of {} leaves (0, 0, S')", l.right_algebra().names()[i]));
            break;
        }
    }
    rep
}

/// Partial actions on `R` and `S` with a compatible relative partial action
/// on `N`. `alpha2[g]` is a full matrix on `N` that kills the complement of
/// `N_{g⁻¹}`.
#[derive(Debug, Clone)]
pub struct RelativePartialAction {
    pub bimodule: Bimodule,
    pub alpha1: TwistedPartialAction,
    pub alpha3: TwistedPartialAction,
    pub modules: BTreeMap<GroupElement, Subspace>,
    pub alpha2: BTreeMap<GroupElement, Matrix>,
}

impl RelativePartialAction {
    pub fn module(&self, g: &GroupElement) -> Subspace {
        self.modules
            .get(g)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.bimodule.field(), self.bimodule.dim()))
    }

    pub fn map(&self, g: &GroupElement) -> Matrix {
        let m = self.bimodule.dim();
        self.alpha2
            .get(g)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.bimodule.field(), m, m))
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.modules
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(g, _)| g.clone())
            .collect()
    }
}

/// The relative partial action axioms on `N`, with the component actions'
/// own validators absorbed under `alpha1` and `alpha3`.
pub fn validate_relative(rel: &RelativePartialAction) -> Report {
    let mut rep = Report::new("relative partial action");
    rep.absorb("alpha1", validate_action(&rel.alpha1));
    rep.absorb("alpha3", validate_action(&rel.alpha3));
    let grp = rel.alpha1.group();
    let b = &rel.bimodule;
    let f = b.field();
    let m = b.dim();
    let e = grp.identity();
    rep.require(
        "identity: alpha_e = id, N_e = N",
        rel.module(&e) == Subspace::full(f, m) && rel.map(&e) == Matrix::identity(f, m),
        || "N_e or alpha_e differs from N, id".into(),
    );
    let support: BTreeSet<GroupElement> = rel
        .support()
        .into_iter()
        .chain(rel.alpha1.support())
        .chain(rel.alpha3.support())
        .collect();
    rep.check("N_g sub-bimodule");
    rep.check("bijective");
    rep.check("module compatibility");
    for g in &support {
        let ng = rel.module(g);
        let gi = grp.inv(g);
        let ngi = rel.module(&gi);
        let a = rel.map(g);
        let label = rel.alpha1.label(g);
        for n in ng.basis() {
            let moved = (0..b.left_algebra.dim())
                .map(|i| b.left[i].apply(n))
                .chain((0..b.right_algebra.dim()).map(|j| b.right[j].apply(n)));
            if moved.into_iter().any(|x| !ng.contains(&x)) {
                rep.fail("N_g sub-bimodule", format!("N_{label} is not stable"));
                break;
            }
        }
        if ngi.image(&a) != ng || ngi.dim() != ng.dim() {
            rep.fail("bijective", format!("alpha_{label} does not map N_{label}^-1 onto N_{label}"));
        }
        let r_dom = rel.alpha1.ideal(&gi);
        let s_dom = rel.alpha3.ideal(&gi);
        'i: for n in ngi.basis() {
            for r in r_dom.basis() {
                let lhs = a.apply(&b.act_left(r, n));
                let rhs = b.act_left(&rel.alpha1.apply(g, r), &a.apply(n));
                if lhs != rhs {
                    rep.fail("module compatibility", format!("g = {label}: alpha(r n) != alpha1(r) alpha(n)"));
                    break 'i;
                }
            }
            for s in s_dom.basis() {
                let lhs = a.apply(&b.act_right(n, s));
                let rhs = b.act_right(&a.apply(n), &rel.alpha3.apply(g, s));
                if lhs != rhs {
                    rep.fail("module compatibility", format!("g = {label}: alpha(n s) != alpha(n) alpha3(s)"));
                    break 'i;
                }
            }
        }
    }
    rep.check("ideal transport");
    rep.check("composition");
    for g in &support {
        let gi = grp.inv(g);
        let hs: BTreeSet<GroupElement> = support
            .iter()
            .cloned()
            .chain(support.iter().map(|k| grp.op(&gi, k)))
            .collect();
        for h in &hs {
            let gh = grp.op(g, h);
            let lhs = rel.module(&gi).intersection(&rel.module(h)).image(&rel.map(g));
            let rhs = rel.module(g).intersection(&rel.module(&gh));
            if lhs != rhs {
                rep.fail(
                    "ideal transport",
                    format!("g = {}, h = {}", rel.alpha1.label(g), rel.alpha1.label(h)),
                );
            }
            let hi = grp.inv(h);
            let dom = rel.module(h).intersection(&rel.module(&gi)).image(&rel.map(&hi));
            for x in dom.basis() {
                let lhs = rel.map(g).apply(&rel.map(h).apply(x));
                let rhs = rel.map(&gh).apply(x);
                if lhs != rhs {
                    rep.fail(
                        "composition",
                        format!("g = {}, h = {}", rel.alpha1.label(g), rel.alpha1.label(h)),
                    );
                    break;
                }
            }
        }
    }
    rep
}

/// Reads `α_1 = π_R α i_R`, `α_2 = π_N α i_N`, `α_3 = π_S α i_S` off an
/// untwisted partial action on `L` whose maps send `(1^R_{g⁻¹}, 0, 0)` to
/// `(1^R_g, 0, 0)` and `(0, 0, 1^S_{g⁻¹})` to `(0, 0, 1^S_g)`.
pub fn extract_component_actions(l: &TriangularAlgebra, a: &TwistedPartialAction) -> Result<RelativePartialAction> {
    if a.algebra() != &l.algebra {
        return Err(Error::Malformed("the action is not on the triangular algebra".into()));
    }
    if !a.is_untwisted() {
        return Err(Error::Hypothesis("component extraction needs an untwisted partial action".into()));
    }
    let alg = &l.algebra;
    let f = alg.field();
    let (dr, dn, ds) = l.dims();
    let grp = a.group();
    let mut p1 = BTreeMap::new();
    let mut p3 = BTreeMap::new();
    let mut modules = BTreeMap::new();
    let mut alpha2 = BTreeMap::new();
    let block = |m: &Matrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| {
        let mut out = Matrix::zeros(f, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, m.get(r, c).clone());
            }
        }
        out
    };
    for g in a.support() {
        let gi = grp.inv(&g);
        let (eg, n_part, fg) = l.split(&a.idempotent(&g));
        if !vector::is_zero(&n_part) {
            return Err(Error::Hypothesis(format!(
                "g = {}: 1_g has a nonzero N component",
                a.label(&g)
            )));
        }
        let (egi, _, fgi) = l.split(&a.idempotent(&gi));
        let r_img = a.apply(&g, &l.embed_r(&egi));
        if r_img != l.embed_r(&eg) {
            return Err(Error::Hypothesis(format!(
                "g = {}: alpha_g(1^R_g^-1, 0, 0) = {} instead of (1^R_g, 0, 0)",
                a.label(&g),
                alg.display(&r_img)
            )));
        }
        let s_img = a.apply(&g, &l.embed_s(&fgi));
        if s_img != l.embed_s(&fg) {
            return Err(Error::Hypothesis(format!(
                "g = {}: alpha_g(0, 0, 1^S_g^-1) = {} instead of (0, 0, 1^S_g)",
                a.label(&g),
                alg.display(&s_img)
            )));
        }
        let m = a.alpha(&g);
        p1.insert(
            g.clone(),
            Piece {
                idempotent: eg.clone(),
                alpha: block(&m, 0..dr, 0..dr),
            },
        );
        p3.insert(
            g.clone(),
            Piece {
                idempotent: fg.clone(),
                alpha: block(&m, dr + dn..dr + dn + ds, dr + dn..dr + dn + ds),
            },
        );
        let ng = Subspace::span(f, dn, (0..dn).map(|i| l.bimodule.act_left(&eg, &vector::unit(f, dn, i))));
        modules.insert(g.clone(), ng);
        alpha2.insert(g.clone(), block(&m, dr..dr + dn, dr..dr + dn));
    }
    let alpha1 = TwistedPartialAction::new(l.left_algebra().clone(), grp.clone(), p1, BTreeMap::new())?;
    let alpha3 = TwistedPartialAction::new(l.right_algebra().clone(), grp.clone(), p3, BTreeMap::new())?;
    Ok(RelativePartialAction {
        bimodule: l.bimodule.clone(),
        alpha1,
        alpha3,
        modules,
        alpha2,
    })
}

/// The partial action on `(R, R, R)` that applies `α_g` in every corner,
/// with `N` scaled by `χ(g)`. `χ = 1` is the diagonal extension.
pub fn extend_with_character<F>(a: &TwistedPartialAction, chi: F) -> Result<(TriangularAlgebra, TwistedPartialAction)>
where
    F: Fn(&GroupElement) -> Scalar,
{
    if !a.is_untwisted() {
        return Err(Error::Hypothesis("diagonal extension needs an untwisted partial action".into()));
    }
    let r = a.algebra();
    let l = assemble_triangular(Bimodule::regular(r))?;
    let n = r.dim();
    let f = r.field();
    let mut pieces = BTreeMap::new();
    for (g, p) in a.pieces() {
        let mut m = Matrix::zeros(f, 3 * n, 3 * n);
        let c = chi(g);
        for i in 0..n {
            for j in 0..n {
                let x = p.alpha.get(i, j).clone();
                m.set(i, j, x.clone());
                m.set(n + i, n + j, x.clone() * c.clone());
                m.set(2 * n + i, 2 * n + j, x);
            }
        }
        let idempotent = l.join(&p.idempotent, &vector::zero(f, n), &p.idempotent);
        pieces.insert(g.clone(), Piece { idempotent, alpha: m });
    }
    let ext = TwistedPartialAction::new(l.algebra.clone(), a.group().clone(), pieces, BTreeMap::new())?;
    Ok((l, ext))
}

pub fn extend_diagonal(a: &TwistedPartialAction) -> Result<(TriangularAlgebra, TwistedPartialAction)> {
    let one = a.field().one();
    extend_with_character(a, |_| one.clone())
}

/// Both sides of `L ⋆ G ≅ (R ⋆ G, M, S ⋆ G)` and the map between them.
#[derive(Debug, Clone)]
pub struct TriangularIso {
    pub relative: RelativePartialAction,
    pub source: CrossedProduct,
    pub left: CrossedProduct,
    pub right: CrossedProduct,
    /// `(R ⋆ G, M, S ⋆ G)` with `M = ⊕_g N_g δ_g`.
    pub target: TriangularAlgebra,
    /// Coordinates in `L ⋆ G` to coordinates in the target.
    pub map: Matrix,
    pub report: Report,
}

/// Builds `L ⋆ G` and `(R ⋆ G, M, S ⋆ G)` independently and checks that
/// `Σ (r_g, n_g, s_g) δ_g -> (Σ r_g δ_g, Σ n_g δ_g, Σ s_g δ_g)` is a
/// bijective algebra map on all basis products.
pub fn triangular_crossed_iso(l: &TriangularAlgebra, a: &TwistedPartialAction) -> Result<TriangularIso> {
    let rel = extract_component_actions(l, a)?;
    let source = build_crossed(a)?;
    let left = build_crossed(&rel.alpha1)?;
    let right = build_crossed(&rel.alpha3)?;
    let f = l.algebra.field();
    let grp = a.group();
    let b = &rel.bimodule;

    // M = ⊕_g N_g δ_g, blocks in canonical order
    let m_blocks: Vec<(GroupElement, Subspace)> = rel
        .support()
        .into_iter()
        .map(|g| {
            let s = rel.module(&g);
            (g, s)
        })
        .collect();
    let mut offsets = BTreeMap::new();
    let mut names = Vec::new();
    let mut dm = 0;
    for (g, s) in &m_blocks {
        offsets.insert(g.clone(), (dm, s.clone()));
        for v in s.basis() {
            names.push(format!("({})δ{}", display_vec(b.names(), v), grp.label(g)));
        }
        dm += s.dim();
    }
    let m_coords = |x: &BTreeMap<GroupElement, Vec<Scalar>>| -> Result<Vec<Scalar>> {
        let mut out = vector::zero(f, dm);
        for (g, v) in x {
            if vector::is_zero(v) {
                continue;
            }
            let (off, s) = offsets
                .get(g)
                .ok_or_else(|| Error::Malformed(format!("middle term outside N_{}", grp.label(g))))?;
            let c = s
                .coords(v)
                .ok_or_else(|| Error::Malformed(format!("middle term outside N_{}", grp.label(g))))?;
            out[*off..*off + c.len()].clone_from_slice(&c);
        }
        Ok(out)
    };
    let m_term = |i: usize| -> (GroupElement, Vec<Scalar>) {
        let (g, (off, s)) = offsets
            .iter()
            .filter(|(_, (off, _))| *off <= i)
            .max_by_key(|(_, (off, _))| *off)
            .expect("index in range");
        (g.clone(), s.basis()[i - off].clone())
    };
    let acc = |into: &mut BTreeMap<GroupElement, Vec<Scalar>>, g: GroupElement, v: Vec<Scalar>| {
        let slot = into.entry(g).or_insert_with(|| vector::zero(f, b.dim()));
        *slot = vector::add(slot, &v);
    };
    // (r δ_h)(n δ_g) = α_h(α_h⁻¹(r) n) δ_{hg}
    let mut left_mats = Vec::with_capacity(left.dim());
    for i in 0..left.dim() {
        let (h, r) = left.basis_term(i);
        let hi = grp.inv(&h);
        let pre = rel.alpha1.apply(&hi, &r);
        let mut cols = Vec::with_capacity(dm);
        for j in 0..dm {
            let (g, n) = m_term(j);
            let mut out = BTreeMap::new();
            acc(&mut out, grp.op(&h, &g), rel.map(&h).apply(&b.act_left(&pre, &n)));
            cols.push(m_coords(&out)?);
        }
        left_mats.push(Matrix::from_columns(f, dm, &cols)?);
    }
    // (n δ_g)(s δ_h) = α_g(α_g⁻¹(n) s) δ_{gh}
    let mut right_mats = Vec::with_capacity(right.dim());
    for i in 0..right.dim() {
        let (h, s) = right.basis_term(i);
        let mut cols = Vec::with_capacity(dm);
        for j in 0..dm {
            let (g, n) = m_term(j);
            let gi = grp.inv(&g);
            let pre = rel.map(&gi).apply(&n);
            let mut out = BTreeMap::new();
            acc(&mut out, grp.op(&g, &h), rel.map(&g).apply(&b.act_right(&pre, &s)));
            cols.push(m_coords(&out)?);
        }
        right_mats.push(Matrix::from_columns(f, dm, &cols)?);
    }
    let m = Bimodule::new(left.algebra().clone(), right.algebra().clone(), names, left_mats, right_mats)?;
    let target = assemble_triangular(m)?;

    let mut cols = Vec::with_capacity(source.dim());
    for i in 0..source.dim() {
        let (g, v) = source.basis_term(i);
        let (r, n, s) = l.split(&v);
        let rc = left.to_coords(&nonzero_term(&g, r))?;
        let sc = right.to_coords(&nonzero_term(&g, s))?;
        let mut mid = BTreeMap::new();
        mid.insert(g, n);
        let nc = m_coords(&mid)?;
        cols.push(target.join(&rc, &nc, &sc));
    }
    let map = Matrix::from_columns(f, target.algebra.dim(), &cols)?;
    let report = check_iso(&source, &target, &map);
    Ok(TriangularIso {
        relative: rel,
        source,
        left,
        right,
        target,
        map,
        report,
    })
}

fn nonzero_term(g: &GroupElement, v: Vec<Scalar>) -> CrossedElement {
    if vector::is_zero(&v) {
        CrossedElement::zero()
    } else {
        CrossedElement::term(g.clone(), v)
    }
}

fn display_vec(names: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}{n}") })
        .collect();
    terms.join(" + ")
}

fn check_iso(source: &CrossedProduct, target: &TriangularAlgebra, map: &Matrix) -> Report {
    let mut rep = Report::new("triangular representation");
    let (s, t) = (source.algebra(), &target.algebra);
    rep.require("dimension", s.dim() == t.dim(), || format!("{} vs {}", s.dim(), t.dim()));
    rep.require("bijective", map.rank() == s.dim() && s.dim() == t.dim(), || "the map is not invertible".into());
    rep.require("unit", map.apply(s.unit()) == t.unit(), || "the unit is not preserved".into());
    rep.require("algebra", validate_algebra(t).is_ok(), || "the target is not an associative unital algebra".into());
    rep.check("basis products");
    let images: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| map.column(i)).collect();
    'p: for i in 0..s.dim() {
        for j in 0..s.dim() {
            let lhs = map.apply(&s.basis_product(i, j));
            let rhs = t.mul(&images[i], &images[j]);
            if lhs != rhs {
                rep.fail("basis products", format!("{} * {}", s.names()[i], s.names()[j]));
                break 'p;
            }
        }
    }
    rep
}

/// For diagonal extensions: `M` equals `R ⋆ G` as a bimodule over itself.
pub fn check_diagonal_identity(iso: &TriangularIso) -> Report {
    let mut rep = Report::new("diagonal extension");
    let rg = iso.left.algebra();
    let b = iso.target.bimodule();
    rep.require("M = R*G", b.dim() == rg.dim(), || format!("dim M = {}, dim R*G = {}", b.dim(), rg.dim()));
    rep.require("S*G = R*G", iso.right.algebra() == rg, || "the corner crossed products differ".into());
    if b.dim() == rg.dim() {
        rep.check("regular bimodule");
        for i in 0..rg.dim() {
            let e = rg.basis_vector(i);
            if b.left_basis_matrices()[i] != rg.left_matrix(&e) || b.right_basis_matrices()[i] != rg.right_matrix(&e) {
                rep.fail("regular bimodule", format!("basis element {}", rg.names()[i]));
                break;
            }
        }
    }
    rep
}

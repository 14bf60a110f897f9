//! Enveloping actions of untwisted partial actions of finite groups.
//!
//! `R` embeds in the function algebra `F(G, R) = R^G` through
//! `φ(r)(x) = α_x(r 1_{x⁻¹})`, `G` acts by `β_g(f)(x) = f(x g)`, and the
//! enveloping algebra is `T = Σ_g β_g(φ(R))`.

use crate::action::{restrict_global_with_basis, GlobalAction, GlobalMaps, TwistedPartialAction};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{vector, Matrix, Scalar, Subspace};
use crate::report::Report;
use std::collections::BTreeMap;

/// A partial action on `R`, a global action on `T`, and an algebra embedding
/// `R -> T` (columns are the images of `R`'s basis).
#[derive(Debug, Clone)]
pub struct EnvelopingPair {
    pub partial: TwistedPartialAction,
    pub global: GlobalAction,
    pub embedding: Matrix,
}

impl EnvelopingPair {
    /// `φ(1_R)`.
    pub fn unit_image(&self) -> Vec<Scalar> {
        self.embedding.apply(self.partial.algebra().unit())
    }
}

/// Builds the enveloping action. Twisted input and infinite groups are
/// rejected; pairs of that kind can still be checked with
/// [`verify_enveloping`].
pub fn globalize(a: &TwistedPartialAction) -> Result<EnvelopingPair> {
    let group = a.group();
    let elements = group
        .elements()
        .ok_or_else(|| Error::UnsupportedGroup("globalization is constructed for finite groups only".into()))?;
    if !a.is_untwisted() {
        return Err(Error::Hypothesis(
            "twisted partial actions are verified, not globalized".into(),
        ));
    }
    let r = a.algebra();
    let f = a.field();
    let n = r.dim();
    let k = elements.len();
    let pos = |g: &GroupElement| elements.iter().position(|x| x == g).expect("element");

    // R^G with coordinates (x, i) at x * n + i
    let names: Vec<String> = elements
        .iter()
        .flat_map(|x| r.names().iter().map(move |b| format!("{b}[{}]", group.label(x))))
        .collect();
    let mut unit = Vec::with_capacity(n * k);
    for _ in 0..k {
        unit.extend(r.unit().iter().cloned());
    }
    let big = Algebra::from_fn(f, names, unit, |p, q| {
        let mut out = vector::zero(f, n * k);
        if p / n == q / n {
            let x = p / n;
            for (c, v) in r.basis_product(p % n, q % n).into_iter().enumerate() {
                out[x * n + c] = v;
            }
        }
        out
    })?;

    let phi = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n * k);
        for x in &elements {
            out.extend(a.apply(x, v));
        }
        out
    };
    // β_g(f)(x) = f(x g)
    let beta_big = |g: &GroupElement, v: &[Scalar]| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n * k);
        for x in &elements {
            let xg = pos(&group.op(x, g));
            out.extend(v[xg * n..xg * n + n].iter().cloned());
        }
        out
    };

    let images: Vec<Vec<Scalar>> = (0..n).map(|i| phi(&r.basis_vector(i))).collect();
    let mut span = Subspace::zero(f, n * k);
    for g in &elements {
        for v in &images {
            span.insert(beta_big(g, v));
        }
    }
    let basis = span.basis().to_vec();
    let t_unit = big
        .unit_of_span(&basis)?
        .ok_or_else(|| Error::Hypothesis("the enveloping algebra has no identity".into()))?;
    let t_names = big.embedded_names(&basis, "t");
    let t = big.subalgebra(&basis, t_names, &t_unit)?;
    let coords = |v: &[Scalar]| -> Vec<Scalar> { span.coords(v).expect("T is β-stable") };
    let maps: Vec<Matrix> = elements
        .iter()
        .map(|g| {
            let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords(&beta_big(g, b))).collect();
            Matrix::from_columns(f, t.dim(), &cols)
        })
        .collect::<Result<_>>()?;
    let global = GlobalAction::finite(t, group.clone(), maps, BTreeMap::new())?;
    let emb_cols: Vec<Vec<Scalar>> = images.iter().map(|v| coords(v)).collect();
    let embedding = Matrix::from_columns(f, global.algebra().dim(), &emb_cols)?;
    Ok(EnvelopingPair {
        partial: a.clone(),
        global,
        embedding,
    })
}

/// Checks the enveloping conditions: `φ` is an injective algebra map onto an
/// ideal, `T = Σ_g β_g(R)`, `D_g = R ∩ β_g(R)`, `α_g = β_g` on `D_{g⁻¹}`,
/// and `a w_{g,h} = a u_{g,h}` on `D_g D_{gh}`.
pub fn verify_enveloping(pair: &EnvelopingPair) -> Report {
    let mut r = Report::new("enveloping action");
    let a = &pair.partial;
    let b = &pair.global;
    let ra = a.algebra();
    let t = b.algebra();
    let f = a.field();
    let n = ra.dim();
    let emb = &pair.embedding;
    if emb.rows() != t.dim() || emb.cols() != n {
        r.fail("embedding", format!("embedding is {}x{}, expected {}x{n}", emb.rows(), emb.cols(), t.dim()));
        return r;
    }
    let phi = |v: &[Scalar]| emb.apply(v);
    r.require("embedding injective", emb.rank() == n, || "embedding has a kernel".into());
    r.check("embedding multiplicative");
    'pairs: for i in 0..n {
        for j in 0..n {
            let lhs = phi(&ra.basis_product(i, j));
            let rhs = t.mul(&phi(&ra.basis_vector(i)), &phi(&ra.basis_vector(j)));
            if lhs != rhs {
                r.fail(
                    "embedding multiplicative",
                    format!("phi({} {}) != phi({}) phi({})", ra.names()[i], ra.names()[j], ra.names()[i], ra.names()[j]),
                );
                break 'pairs;
            }
        }
    }
    let image = Subspace::span(f, t.dim(), emb.columns());
    r.require("R is an ideal of T", t.check_ideal(&image).is_ok(), || {
        t.check_ideal(&image).err().unwrap_or_default()
    });

    // translates β_g(R), with the elements they were computed for
    let translates: Vec<(GroupElement, Subspace)> = match b.maps() {
        GlobalMaps::Table(maps) => maps.iter().map(|(g, m)| (g.clone(), image.image(m))).collect(),
        GlobalMaps::Generator { .. } => {
            let mut out = vec![(GroupElement::int(0), image.clone())];
            let mut collapsed = None;
            for sign in [1i64, -1] {
                let mut total = image.clone();
                for k in 1..=(t.dim() as i64 + 1) {
                    let g = GroupElement::int(sign * k);
                    let tr = image.image(&b.beta(&g));
                    if tr.dim() < image.dim() {
                        collapsed.get_or_insert((g.clone(), tr.dim()));
                        break;
                    }
                    let grown = total.sum(&tr);
                    out.push((g, tr));
                    if grown.dim() == total.dim() && k > 1 {
                        break;
                    }
                    total = grown;
                }
            }
            if let Some((g, d)) = collapsed {
                r.fail(
                    "T is the sum of the translates",
                    format!(
                        "beta_{}(R) has dimension {d} < dim R = {}: the translate leaves T, which would need every translate of R",
                        b.group().label(&g),
                        image.dim()
                    ),
                );
            }
            out
        }
    };
    let mut total = Subspace::zero(f, t.dim());
    for (_, s) in &translates {
        total = total.sum(s);
    }
    r.require("T is the sum of the translates", total.dim() == t.dim(), || {
        format!("the translates of R span dimension {} of dim T = {}", total.dim(), t.dim())
    });

    r.check("D_g = R ∩ beta_g(R)");
    r.check("alpha_g = beta_g on D_g^-1");
    for (g, tr) in &translates {
        let expected = a.ideal(g).image(emb);
        let actual = image.intersection(tr);
        if expected != actual {
            r.fail(
                "D_g = R ∩ beta_g(R)",
                format!(
                    "g = {}: D_g has dimension {} but R ∩ beta_g(R) has dimension {}",
                    a.label(g),
                    expected.dim(),
                    actual.dim()
                ),
            );
            continue;
        }
        let gi = a.group().inv(g);
        let beta = b.beta(g);
        for x in a.ideal(&gi).basis() {
            let lhs = phi(&a.apply(g, x));
            let rhs = beta.apply(&phi(x));
            if lhs != rhs {
                r.fail(
                    "alpha_g = beta_g on D_g^-1",
                    format!("g = {}, x = {}", a.label(g), ra.display(x)),
                );
                break;
            }
        }
    }

    r.check("a w = a u");
    if let GlobalMaps::Table(maps) = b.maps() {
        let elements: Vec<&GroupElement> = maps.keys().collect();
        'outer: for g in &elements {
            for h in &elements {
                let gh = a.group().op(g, h);
                let corner = ra.ideal_of_idempotent(&a.corner_unit(g, h));
                let w = a.twist(g, h);
                let u = b.twist(g, h);
                for x in corner.basis() {
                    let lhs = phi(&ra.mul(x, &w));
                    let rhs = t.mul(&phi(x), &u);
                    if lhs != rhs {
                        r.fail(
                            "a w = a u",
                            format!("g = {}, h = {}, a = {} (gh = {})", a.label(g), a.label(h), ra.display(x), a.label(&gh)),
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    r
}

/// Restricts the enveloping action back to `φ(R)` on the basis `φ(b_i)` and
/// compares with the original action: same support, same `1_g`, same `α_g`,
/// same twist.
pub fn check_round_trip(pair: &EnvelopingPair) -> Result<Report> {
    let mut r = Report::new("globalization round trip");
    let a = &pair.partial;
    let back = restrict_global_with_basis(&pair.global, &pair.unit_image(), pair.embedding.columns())?;
    let b = &back.action;
    r.require("support", a.support() == b.support(), || {
        format!(
            "{:?} vs {:?}",
            a.support().iter().map(|g| a.label(g)).collect::<Vec<_>>(),
            b.support().iter().map(|g| b.label(g)).collect::<Vec<_>>()
        )
    });
    r.check("idempotents");
    r.check("alpha");
    r.check("twist");
    for g in a.support() {
        if a.idempotent(&g) != b.idempotent(&g) {
            r.fail("idempotents", format!("1_{} differs", a.label(&g)));
        }
        if a.alpha(&g) != b.alpha(&g) {
            r.fail("alpha", format!("alpha_{} differs", a.label(&g)));
        }
        for h in a.support() {
            let k = a.group().op(&a.group().inv(&g), &h);
            if a.twist(&g, &k) != b.twist(&g, &k) {
                r.fail("twist", format!("w_({},{}) differs", a.label(&g), a.label(&k)));
            }
        }
    }
    Ok(r)
}

impl GlobalAction {
    /// The global action viewed as a partial action with every `D_g = T`.
    pub fn to_partial(&self) -> Result<TwistedPartialAction> {
        let GlobalMaps::Table(maps) = self.maps() else {
            return Err(Error::UnsupportedGroup("global actions of Z are not built".into()));
        };
        let t = self.algebra();
        let pieces = maps
            .iter()
            .map(|(g, m)| {
                (
                    g.clone(),
                    crate::action::Piece {
                        idempotent: t.unit().to_vec(),
                        alpha: m.clone(),
                    },
                )
            })
            .collect();
        TwistedPartialAction::new(t.clone(), self.group().clone(), pieces, self.explicit_twists().clone())
    }
}

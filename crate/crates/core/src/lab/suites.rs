use super::random::{random_sample, sign_characters, Bounds, Sample};
use super::claims::*;
use super::{Finding, Verdict};
use crate::action::{
    fixed_ring, is_finite_type, quotient_action, restrict_global, GlobalAction, GlobalMaps, Piece, Subgroup,
    TwistedPartialAction,
};
use crate::algebra::{
    center, frobenius_form, frobenius_form_seeded, is_nondegenerate, is_semisimple, is_symmetric_form,
    jacobson_radical, symmetric_form, symmetric_form_seeded, Algebra,
};
use crate::crossed::{
    build_crossed, check_maschke, check_quotient_isomorphism, check_subgroup_decomposition, maschke_average,
    CrossedElement, CrossedProduct, Normalization, Representation,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::globalize::{check_round_trip, globalize, verify_enveloping, EnvelopingPair};
use crate::group::{GroupElement, GroupModel};
use crate::instance::action_file;
use crate::linalg::{vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::report::Report;
use crate::triangular::{
    assemble_triangular, check_diagonal_identity, extend_diagonal, extend_with_character, triangular_crossed_iso,
    validate_relative, Bimodule, TriangularAlgebra,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

struct Ctx {
    suite: String,
    trial: Option<usize>,
    seed: Option<u64>,
    bounds: Bounds,
    instance: String,
    field: String,
    fingerprint: String,
    toml: String,
}

impl Ctx {
    fn new(suite: &str, trial: Option<(usize, u64)>, bounds: &Bounds, instance: String, a: &TwistedPartialAction) -> Self {
        let file = action_file(a, None);
        Self {
            suite: suite.into(),
            trial: trial.map(|t| t.0),
            seed: trial.map(|t| t.1),
            bounds: *bounds,
            instance,
            field: a.field().to_string(),
            fingerprint: file.fingerprint(),
            toml: file.to_toml(),
        }
    }

    fn finding(
        &self,
        claim: &str,
        verdict: Verdict,
        expected: bool,
        witness: Option<String>,
        data: Vec<(&str, Value)>,
    ) -> Finding {
        Finding {
            suite: self.suite.clone(),
            trial: self.trial,
            seed: self.seed,
            bounds: self.bounds,
            instance: self.instance.clone(),
            field: self.field.clone(),
            fingerprint: self.fingerprint.clone(),
            claim: claim.into(),
            verdict,
            expected,
            witness,
            data: data.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            instance_toml: (verdict == Verdict::Refuted).then(|| self.toml.clone()),
        }
    }

    fn from_report(&self, claim: &str, report: &Report, data: Vec<(&str, Value)>) -> Finding {
        if report.is_ok() {
            self.finding(claim, Verdict::Confirmed, false, None, data)
        } else {
            self.finding(claim, Verdict::Refuted, false, Some(violations(report)), data)
        }
    }

    fn degenerate(&self, claim: &str, why: impl Into<String>) -> Finding {
        self.finding(claim, Verdict::Degenerate, false, Some(why.into()), Vec::new())
    }
}

fn violations(r: &Report) -> String {
    r.violations
        .iter()
        .map(|v| format!("{}: {}", v.rule, v.witness))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Suite-specific caps on `(dim R, |G|)`, chosen so that the largest
/// algebra built per trial stays below a few dozen dimensions.
fn caps(suite: &str) -> (usize, usize) {
    match suite {
        "maschke" | "symmetric" => (4, 6),
        "subgroup" | "quotient" => (4, 8),
        "globalization" | "triangular" => (3, 4),
        _ => (6, 8),
    }
}

fn default_field(suite: &str, seed: u64) -> FieldSpec {
    if suite == "semisimple" {
        let fields = [
            FieldSpec::Rationals,
            FieldSpec::Rationals,
            FieldSpec::Rationals,
            FieldSpec::Prime(3),
            FieldSpec::Prime(5),
            FieldSpec::Prime(2),
        ];
        fields[(seed % fields.len() as u64) as usize]
    } else {
        FieldSpec::Rationals
    }
}

pub(super) fn trial(suite: &str, index: usize, seed: u64, bounds: &Bounds, field: Option<FieldSpec>) -> Result<Vec<Finding>> {
    let (d, o) = caps(suite);
    let mut b = bounds.capped(d, o);
    if matches!(suite, "globalization" | "triangular") {
        b.twist = false;
    }
    let f = field.unwrap_or_else(|| default_field(suite, seed));
    let sample = random_sample(seed, &b, f)?;
    let ctx = Ctx::new(suite, Some((index, seed)), bounds, sample.description.clone(), &sample.action);
    // an independent stream for choices made by the suite itself
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1ab5_u64);
    let a = &sample.action;
    Ok(match suite {
        "artinian" => vec![artinian(&ctx, a)],
        "noetherian" => vec![noetherian(&ctx, a)],
        "semisimple" => vec![semisimple(&ctx, a)],
        "maschke" => maschke(&ctx, a, &mut rng),
        "frobenius" => vec![frobenius(&ctx, a, seed)],
        "symmetric" => vec![symmetric(&ctx, a, seed)],
        "subgroup" => subgroup(&ctx, a),
        "quotient" => vec![quotient(&ctx, a, &mut rng)],
        "globalization" => globalization(&ctx, a),
        "triangular" => triangular(&ctx, &sample, &mut rng),
        "fixedring" => fixedring(&ctx, a, Some(&sample.global)),
        other => {
            return Err(Error::UnknownSuite {
                name: other.into(),
                available: super::SUITES.join(", "),
            })
        }
    })
}

pub(super) fn fixtures(suite: &str, bounds: &Bounds) -> Result<Vec<Finding>> {
    let ctx = |name: &str, a: &TwistedPartialAction| Ctx::new(suite, None, bounds, name.into(), a);
    let q = FieldSpec::Rationals;
    let c2 = || GroupModel::cyclic(2).expect("order 2");
    let trivial = |r: Algebra| TwistedPartialAction::trivial(r, c2()).expect("well formed");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    match suite {
        "artinian" => {
            for (name, a) in [("z-pair", fixtures::z_pair()), ("z-point", fixtures::z_point())] {
                out.push(artinian(&ctx(name, &a), &a));
            }
        }
        "noetherian" => {
            for (name, a) in [("z-pair", fixtures::z_pair()), ("z-point", fixtures::z_point())] {
                out.push(noetherian(&ctx(name, &a), &a));
            }
        }
        "semisimple" => {
            for (name, a) in [("gf2-trivial-c2", fixtures::gf2_trivial_c2()), ("c3-restriction", fixtures::c3_restriction())] {
                out.push(semisimple(&ctx(name, &a), &a));
            }
        }
        "maschke" => {
            for (name, a) in [("c3-restriction", fixtures::c3_restriction()), ("dual-trivial-c2", fixtures::dual_trivial_c2())] {
                out.extend(maschke(&ctx(name, &a), &a, &mut rng));
            }
        }
        "frobenius" | "symmetric" => {
            for (name, a) in [
                ("dual-trivial-c2", fixtures::dual_trivial_c2()),
                ("dual-sign-c2", fixtures::dual_sign_c2()),
                ("upper-triangular-trivial-c2", trivial(Algebra::upper_triangular(q))),
                ("m2-trivial-c2", trivial(Algebra::matrix_algebra(q, 2))),
                ("c3-restriction", fixtures::c3_restriction()),
            ] {
                let c = ctx(name, &a);
                out.push(if suite == "frobenius" {
                    frobenius(&c, &a, 0)
                } else {
                    symmetric(&c, &a, 0)
                });
            }
        }
        "subgroup" => {
            for (name, a) in [("c3-restriction", fixtures::c3_restriction()), ("dual-sign-c2", fixtures::dual_sign_c2())] {
                out.extend(subgroup(&ctx(name, &a), &a));
            }
        }
        "quotient" => {
            for (name, a) in [("dual-trivial-c2", fixtures::dual_trivial_c2()), ("z-pair", fixtures::z_pair())] {
                out.push(quotient(&ctx(name, &a), &a, &mut rng));
            }
        }
        "globalization" => {
            let a = fixtures::c3_restriction();
            out.extend(globalization(&ctx("c3-restriction", &a), &a));
            let (b, e) = fixtures::shift_window();
            let res = restrict_global(&b, &e)?;
            let c = ctx("shift-window", &res.action);
            let pair = EnvelopingPair {
                partial: res.action,
                global: b,
                embedding: res.embedding,
            };
            let report = verify_enveloping(&pair);
            // the window is a truncation of a global action of Z, so a
            // failing translate is anticipated
            let failed = !report.is_ok();
            out.push(c.finding(
                ENVELOPING_WINDOW,
                if failed { Verdict::Refuted } else { Verdict::Confirmed },
                failed,
                failed.then(|| violations(&report)),
                vec![("window", json!("-2..2"))],
            ));
        }
        "triangular" => {
            let qa = trivial(Algebra::scalars(q));
            let sign = extend_with_character(&qa, |g| if *g == GroupElement::Index(1) { q.int(-1) } else { q.one() })?;
            out.extend(triangular_checks(&ctx("qqq-trivial-c2", &qa), extend_diagonal(&qa)?, true));
            out.extend(triangular_checks(&ctx("qqq-sign-c2", &qa), sign, false));
            let zpair = fixtures::z_pair();
            out.extend(triangular_checks(&ctx("z-pair-diagonal", &zpair), extend_diagonal(&zpair)?, true));
        }
        "fixedring" => {
            let zpair = fixtures::z_pair();
            out.extend(fixedring(&ctx("z-pair", &zpair), &zpair, None));
            let c3 = fixtures::c3_shift();
            let full = c3.to_partial()?;
            out.extend(fixedring(&ctx("c3-shift", &full), &full, Some(&c3)));
        }
        other => {
            return Err(Error::UnknownSuite {
                name: other.into(),
                available: super::SUITES.join(", "),
            })
        }
    }
    Ok(out)
}

/// The suite's checks on a caller-supplied instance. Suites that need a
/// global action (fixed-ring averaging) use `global` when given; the
/// triangular suite uses the diagonal extension.
pub(super) fn on_instance(
    suite: &str,
    name: &str,
    a: &TwistedPartialAction,
    global: Option<&GlobalAction>,
    bounds: &Bounds,
    seed: u64,
) -> Result<Vec<Finding>> {
    let ctx = Ctx::new(suite, None, bounds, name.into(), a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match suite {
        "artinian" => vec![artinian(&ctx, a)],
        "noetherian" => vec![noetherian(&ctx, a)],
        "semisimple" => vec![semisimple(&ctx, a)],
        "maschke" => maschke(&ctx, a, &mut rng),
        "frobenius" => vec![frobenius(&ctx, a, seed)],
        "symmetric" => vec![symmetric(&ctx, a, seed)],
        "subgroup" => subgroup(&ctx, a),
        "quotient" => vec![quotient(&ctx, a, &mut rng)],
        "globalization" => globalization(&ctx, a),
        "triangular" => match extend_diagonal(a) {
            Ok(x) => triangular_checks(&ctx, x, true),
            Err(e) => vec![ctx.degenerate(TRIANGULAR, e.to_string())],
        },
        "fixedring" => fixedring(&ctx, a, global),
        other => {
            return Err(Error::UnknownSuite {
                name: other.into(),
                available: super::SUITES.join(", "),
            })
        }
    })
}

fn group_order(a: &TwistedPartialAction) -> Value {
    match a.group().order() {
        Some(n) => json!(n),
        None => json!("infinite"),
    }
}

fn artinian(ctx: &Ctx, a: &TwistedPartialAction) -> Finding {
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return ctx.degenerate(ARTINIAN, e.to_string()),
    };
    let ft = match is_finite_type(a) {
        Ok(ft) => ft,
        Err(e) => return ctx.degenerate(ARTINIAN, e.to_string()),
    };
    let expected_dim: usize = a.support().iter().map(|g| a.ideal(g).dim()).sum();
    let data = vec![
        ("dim_r", json!(a.dim())),
        ("group_order", group_order(a)),
        ("crossed_dim", json!(cp.dim())),
        ("finite_type", json!(ft.finite_type)),
    ];
    if a.group().is_finite() {
        let ok = ft.finite_type && cp.dim() == expected_dim;
        let verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
        ctx.finding(ARTINIAN, verdict, false, (!ok).then(|| format!("dim R*G = {}", cp.dim())), data)
    } else {
        let ok = !ft.finite_type && cp.dim() == expected_dim;
        let witness = ft.witness.as_ref().map(|g| format!("g = {g}"));
        let verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
        ctx.finding(ARTINIAN_FIXTURE, verdict, false, witness, data)
    }
}

fn noetherian(ctx: &Ctx, a: &TwistedPartialAction) -> Finding {
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return ctx.degenerate(NOETHERIAN, e.to_string()),
    };
    let support = a.support();
    let sum: usize = support.iter().map(|g| a.ideal(g).dim()).sum();
    let bound = support.len() * a.dim();
    let ok = cp.dim() == sum && sum <= bound;
    ctx.finding(
        NOETHERIAN,
        if ok { Verdict::Confirmed } else { Verdict::Refuted },
        false,
        (!ok).then(|| format!("dim R*G = {}, sum of dim D_g = {sum}, bound {bound}", cp.dim())),
        vec![
            ("crossed_dim", json!(cp.dim())),
            ("support_size", json!(support.len())),
            ("bound", json!(bound)),
        ],
    )
}

fn semisimple(ctx: &Ctx, a: &TwistedPartialAction) -> Finding {
    let f = a.field();
    let order = a.group().order().unwrap_or(0);
    let invertible = order > 0 && f.int_is_unit(order as i64);
    let claim = if invertible { SEMISIMPLE } else { SEMISIMPLE_CONTROL };
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return ctx.degenerate(claim, e.to_string()),
    };
    let (sr, sc) = match (is_semisimple(a.algebra()), is_semisimple(cp.algebra())) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return ctx.degenerate(claim, e.to_string()),
    };
    let rad = jacobson_radical(cp.algebra()).map(|r| r.dim()).unwrap_or(0);
    let data = vec![
        ("characteristic", json!(f.characteristic())),
        ("group_order", json!(order)),
        ("r_semisimple", json!(sr)),
        ("crossed_semisimple", json!(sc)),
        ("crossed_radical_dim", json!(rad)),
    ];
    if sr == sc {
        ctx.finding(claim, Verdict::Confirmed, false, None, data)
    } else {
        let witness = format!(
            "R semisimple = {sr}, R*G semisimple = {sc}, radical of R*G has dimension {rad}"
        );
        ctx.finding(claim, Verdict::Refuted, !invertible, Some(witness), data)
    }
}

/// Control refutations only ever occur where `|G|` vanishes, transfer
/// findings only where it is invertible.
pub(super) fn semisimple_disjoint(findings: &[Finding]) -> bool {
    findings.iter().filter(|f| f.verdict != Verdict::Degenerate).all(|f| {
        let p = f.data.get("characteristic").and_then(Value::as_u64).unwrap_or(0);
        let n = f.data.get("group_order").and_then(Value::as_u64).unwrap_or(0);
        let divides = p != 0 && n % p == 0;
        match f.claim.as_str() {
            SEMISIMPLE => !divides,
            SEMISIMPLE_CONTROL => divides,
            _ => true,
        }
    })
}

fn idempotent_candidates(a: &TwistedPartialAction) -> Vec<Vec<Scalar>> {
    let r = a.algebra();
    let mut c = vec![r.unit().to_vec()];
    for g in a.support() {
        c.push(a.idempotent(&g));
    }
    for i in 0..r.dim() {
        let b = r.basis_vector(i);
        if r.is_idempotent(&b) {
            c.push(b);
        }
    }
    c.dedup();
    c
}

fn small_vector(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| f.int(rng.random_range(-2i64..=2))).collect()
}

fn is_partial(a: &TwistedPartialAction) -> bool {
    match a.group().elements() {
        Some(els) => els.iter().any(|g| a.idempotent(g) != a.algebra().unit()),
        None => true,
    }
}

/// A projection of the regular module onto `N = (R*G) ε` that is only
/// `R`-linear: `π = π0 + π0 T (1 - π0)` with `π0` right multiplication by
/// `ε` and `T(a δ_g) = Σ_h (a z_{g,h} 1_h) δ_h`.
fn r_linear_projection(cp: &CrossedProduct, rng: &mut ChaCha8Rng) -> Result<(Matrix, Vec<Scalar>)> {
    let a = cp.action();
    let r = a.algebra();
    let f = a.field();
    let n = cp.dim();
    let candidates = idempotent_candidates(a);
    let eps = candidates[rng.random_range(0..candidates.len())].clone();
    let eps_coords = cp.to_coords(&CrossedElement::term(a.group().identity(), eps.clone()))?;
    let pi0 = cp.algebra().right_matrix(&eps_coords);
    let support = cp.support();
    let mut z = BTreeMap::new();
    for g in &support {
        for h in &support {
            if rng.random_bool(0.5) {
                z.insert((g.clone(), h.clone()), small_vector(f, r.dim(), rng));
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let (g, v) = cp.basis_term(i);
        let mut x = CrossedElement::zero();
        for h in &support {
            if let Some(z) = z.get(&(g.clone(), h.clone())) {
                x.add_term(h.clone(), r.mul(&r.mul(&v, z), &a.idempotent(h)));
            }
        }
        cols.push(cp.to_coords(&x)?);
    }
    let t = Matrix::from_columns(f, n, &cols)?;
    let id = Matrix::identity(f, n);
    let pi = pi0.add(&pi0.mul(&t)?.mul(&id.sub(&pi0)?)?)?;
    Ok((pi, eps))
}

fn maschke(ctx: &Ctx, a: &TwistedPartialAction, rng: &mut ChaCha8Rng) -> Vec<Finding> {
    let f = a.field();
    let Some(order) = a.group().order() else {
        return vec![ctx.degenerate(MASCHKE_QUOTED, "infinite group")];
    };
    if !f.int_is_unit(order as i64) {
        return vec![ctx.degenerate(MASCHKE_QUOTED, format!("|G| = {order} vanishes in {f}"))];
    }
    let mut run = || -> Result<Vec<Finding>> {
        let cp = build_crossed(a)?;
        let rep = Representation::regular(&cp);
        let (pi, eps) = r_linear_projection(&cp, rng)?;
        let n_dim = Subspace::span(f, cp.dim(), pi.columns()).dim();
        let data = || {
            vec![
                ("partial", json!(is_partial(a))),
                ("twisted", json!(!a.is_untwisted())),
                ("module_dim", json!(cp.dim())),
                ("submodule_dim", json!(n_dim)),
                ("epsilon", json!(a.algebra().display(&eps))),
            ]
        };
        let quoted = maschke_average(&cp, &rep, &pi, Normalization::GroupOrder)?;
        let normalized = maschke_average(&cp, &rep, &pi, Normalization::IdempotentSum)?;
        Ok(vec![
            ctx.from_report(MASCHKE_QUOTED, &check_maschke(&rep, &pi, &quoted), data()),
            ctx.from_report(MASCHKE_NORMALIZED, &check_maschke(&rep, &pi, &normalized), data()),
        ])
    };
    run().unwrap_or_else(|e| vec![ctx.degenerate(MASCHKE_QUOTED, e.to_string())])
}

/// `λ ∘ π_e`: a form on `R` read off the `δ_e` coefficient.
fn lifted_form(cp: &CrossedProduct, form: &[Scalar]) -> Vec<Scalar> {
    let e = cp.action().group().identity();
    (0..cp.dim())
        .map(|i| {
            let (g, v) = cp.basis_term(i);
            if g == e {
                vector::dot(form, &v)
            } else {
                cp.action().field().zero()
            }
        })
        .collect()
}

fn frobenius(ctx: &Ctx, a: &TwistedPartialAction, seed: u64) -> Finding {
    let fr = frobenius_form(a.algebra());
    let Some(form) = fr.form.clone() else {
        let why = if fr.decided {
            format!("R is not Frobenius ({:?})", fr.method)
        } else {
            format!("no Frobenius form found for R ({:?})", fr.method)
        };
        return ctx.finding(FROBENIUS, Verdict::Degenerate, false, Some(why), vec![("r_decided", json!(fr.decided))]);
    };
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return ctx.degenerate(FROBENIUS, e.to_string()),
    };
    let data = |how: &str| vec![("crossed_dim", json!(cp.dim())), ("method", json!(how))];
    let lifted = lifted_form(&cp, &form);
    if is_nondegenerate(cp.algebra(), &lifted) {
        return ctx.finding(FROBENIUS, Verdict::Confirmed, false, None, data("lambda o pi_e"));
    }
    let search = frobenius_form_seeded(cp.algebra(), seed);
    match (&search.form, search.decided) {
        (Some(_), _) => ctx.finding(FROBENIUS, Verdict::Confirmed, false, None, data(&format!("{:?}", search.method))),
        (None, true) => ctx.finding(
            FROBENIUS,
            Verdict::Refuted,
            false,
            Some(format!("R*G has no Frobenius form ({:?})", search.method)),
            data(&format!("{:?}", search.method)),
        ),
        (None, false) => ctx.degenerate(FROBENIUS, format!("search inconclusive ({:?})", search.method)),
    }
}

fn symmetric(ctx: &Ctx, a: &TwistedPartialAction, seed: u64) -> Finding {
    let sy = symmetric_form(a.algebra());
    let Some(form) = sy.form.clone() else {
        let why = if sy.decided {
            format!("R is not symmetric ({:?})", sy.method)
        } else {
            format!("no symmetric form found for R ({:?})", sy.method)
        };
        return ctx.finding(SYMMETRIC, Verdict::Degenerate, false, Some(why), vec![("r_decided", json!(sy.decided))]);
    };
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return ctx.degenerate(SYMMETRIC, e.to_string()),
    };
    let data = |how: &str| {
        vec![
            ("crossed_dim", json!(cp.dim())),
            ("method", json!(how)),
            ("partial", json!(is_partial(a))),
            ("twisted", json!(!a.is_untwisted())),
        ]
    };
    let lifted = lifted_form(&cp, &form);
    if is_symmetric_form(cp.algebra(), &lifted) && is_nondegenerate(cp.algebra(), &lifted) {
        return ctx.finding(SYMMETRIC, Verdict::Confirmed, false, None, data("lambda o pi_e"));
    }
    let search = symmetric_form_seeded(cp.algebra(), seed);
    let how = format!("{:?}", search.method);
    match (&search.form, search.decided) {
        (Some(_), _) => ctx.finding(SYMMETRIC, Verdict::Confirmed, false, None, data(&how)),
        (None, true) => ctx.finding(
            SYMMETRIC,
            Verdict::Refuted,
            false,
            Some(format!(
                "R has the symmetric form {} but R*G has none: {how}; center of R*G has dimension {}",
                vector::display(&form),
                center(cp.algebra()).dim()
            )),
            data(&how),
        ),
        (None, false) => ctx.degenerate(SYMMETRIC, format!("search inconclusive ({how})")),
    }
}

fn subgroup(ctx: &Ctx, a: &TwistedPartialAction) -> Vec<Finding> {
    let Some(fg) = a.group().finite() else {
        return vec![ctx.degenerate(SUBGROUP, "infinite group")];
    };
    let cp = match build_crossed(a) {
        Ok(cp) => cp,
        Err(e) => return vec![ctx.degenerate(SUBGROUP, e.to_string())],
    };
    fg.subgroups()
        .into_iter()
        .map(|h| {
            let labels: Vec<String> = h.iter().map(|&i| fg.labels()[i].clone()).collect();
            let sub = Subgroup::Elements(h.into_iter().map(GroupElement::Index).collect());
            let data = vec![("subgroup", json!(labels.join(",")))];
            match check_subgroup_decomposition(&cp, &sub) {
                Ok(r) => ctx.from_report(SUBGROUP, &r, data),
                Err(e) => ctx.finding(SUBGROUP, Verdict::Degenerate, false, Some(e.to_string()), data),
            }
        })
        .collect()
}

/// Ideals `eR` for idempotents `e` in the Boolean algebra generated by the
/// `1_g`, with the radical intersected and added, keeping the invariant ones.
fn invariant_ideals(a: &TwistedPartialAction) -> Vec<Subspace> {
    let r = a.algebra();
    let unit = r.unit().to_vec();
    let mut atoms = vec![unit.clone()];
    for g in a.support() {
        let e = a.idempotent(&g);
        let comp = vector::sub(&unit, &e);
        atoms = atoms
            .iter()
            .flat_map(|x| [r.mul(x, &e), r.mul(x, &comp)])
            .filter(|x| !vector::is_zero(x))
            .collect();
    }
    let mut idempotents = Vec::new();
    for mask in 0u32..(1 << atoms.len().min(10)) {
        let mut e = r.zero_vector();
        for (i, x) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e = vector::add(&e, x);
            }
        }
        idempotents.push(e);
    }
    let rad = jacobson_radical(r).ok();
    let mut out: Vec<Subspace> = Vec::new();
    for e in idempotents {
        let base = r.ideal_of_idempotent(&e);
        let mut cands = vec![base.clone()];
        if let Some(rad) = &rad {
            cands.push(base.intersection(rad));
            cands.push(base.sum(rad));
        }
        for c in cands {
            if !out.contains(&c) && quotient_action(a, &c).is_ok() {
                out.push(c);
            }
        }
    }
    out
}

fn quotient(ctx: &Ctx, a: &TwistedPartialAction, rng: &mut ChaCha8Rng) -> Finding {
    let all = invariant_ideals(a);
    let proper: Vec<&Subspace> = all.iter().filter(|s| s.dim() > 0 && s.dim() < a.dim()).collect();
    let ideal = if proper.is_empty() {
        all.first().cloned().unwrap_or_else(|| Subspace::zero(a.field(), a.dim()))
    } else {
        proper[rng.random_range(0..proper.len())].clone()
    };
    let data = vec![
        ("ideal_dim", json!(ideal.dim())),
        ("proper", json!(!proper.is_empty())),
        ("invariant_candidates", json!(all.len())),
    ];
    match check_quotient_isomorphism(a, &ideal) {
        Ok(r) => ctx.from_report(QUOTIENT, &r, data),
        Err(e) => ctx.finding(QUOTIENT, Verdict::Degenerate, false, Some(e.to_string()), data),
    }
}

fn globalization(ctx: &Ctx, a: &TwistedPartialAction) -> Vec<Finding> {
    let pair = match globalize(a) {
        Ok(p) => p,
        Err(e) => return vec![ctx.degenerate(ENVELOPING, e.to_string())],
    };
    let t = pair.global.algebra();
    let order = a.group().order().expect("finite group");
    let mut out = vec![
        ctx.from_report(
            ENVELOPING,
            &verify_enveloping(&pair),
            vec![("dim_t", json!(t.dim())), ("bound", json!(order * a.dim()))],
        ),
        match check_round_trip(&pair) {
            Ok(r) => ctx.from_report(ROUND_TRIP, &r, Vec::new()),
            Err(e) => ctx.finding(ROUND_TRIP, Verdict::Refuted, false, Some(e.to_string()), Vec::new()),
        },
    ];
    let unit_ok = t.mul(t.unit(), t.unit()) == t.unit() && (0..t.dim()).all(|i| t.mul(t.unit(), &t.basis_vector(i)) == t.basis_vector(i));
    out.push(ctx.finding(
        UNITAL,
        if unit_ok { Verdict::Confirmed } else { Verdict::Refuted },
        false,
        (!unit_ok).then(|| "the computed identity of T fails".to_string()),
        vec![("dim_t", json!(t.dim()))],
    ));
    out.push(morita(ctx, a, &pair));
    out
}

fn morita(ctx: &Ctx, a: &TwistedPartialAction, pair: &EnvelopingPair) -> Finding {
    let run = || -> Result<Finding> {
        let rg = build_crossed(a)?;
        let tg = build_crossed(&pair.global.to_partial()?)?;
        let (zr, zt) = (center(rg.algebra()).dim(), center(tg.algebra()).dim());
        let (sr, st) = (is_semisimple(rg.algebra())?, is_semisimple(tg.algebra())?);
        let data = vec![
            ("center_dims", json!([zr, zt])),
            ("semisimple", json!([sr, st])),
            ("dims", json!([rg.dim(), tg.dim()])),
        ];
        let ok = zr == zt && sr == st;
        Ok(ctx.finding(
            MORITA,
            if ok { Verdict::Confirmed } else { Verdict::Refuted },
            false,
            (!ok).then(|| format!("center dims {zr} vs {zt}, semisimple {sr} vs {st}")),
            data,
        ))
    };
    run().unwrap_or_else(|e| ctx.degenerate(MORITA, e.to_string()))
}

fn triangular_checks(ctx: &Ctx, (l, ext): (TriangularAlgebra, TwistedPartialAction), diagonal: bool) -> Vec<Finding> {
    let iso = match triangular_crossed_iso(&l, &ext) {
        Ok(iso) => iso,
        Err(e) => return vec![ctx.degenerate(TRIANGULAR, e.to_string())],
    };
    let data = || vec![("l_dim", json!(l.algebra().dim())), ("crossed_dim", json!(iso.source.dim()))];
    let mut out = vec![
        ctx.from_report(RELATIVE, &validate_relative(&iso.relative), data()),
        ctx.from_report(TRIANGULAR, &iso.report, data()),
    ];
    if diagonal {
        out.push(ctx.from_report(DIAGONAL, &check_diagonal_identity(&iso), data()));
    }
    out
}

/// `(R, 0, S)` with `R` and `S` acted on independently.
fn product_action(r: &TwistedPartialAction, s: &TwistedPartialAction) -> Result<(TriangularAlgebra, TwistedPartialAction)> {
    let l = assemble_triangular(Bimodule::zero(r.algebra(), s.algebra()))?;
    let f = r.field();
    let (dr, ds) = (r.dim(), s.dim());
    let mut pieces = BTreeMap::new();
    let support: std::collections::BTreeSet<GroupElement> = r.support().into_iter().chain(s.support()).collect();
    for g in support {
        let mut m = Matrix::zeros(f, dr + ds, dr + ds);
        let (ar, as_) = (r.alpha(&g), s.alpha(&g));
        for i in 0..dr {
            for j in 0..dr {
                m.set(i, j, ar.get(i, j).clone());
            }
        }
        for i in 0..ds {
            for j in 0..ds {
                m.set(dr + i, dr + j, as_.get(i, j).clone());
            }
        }
        let idempotent = l.join(&r.idempotent(&g), &[], &s.idempotent(&g));
        pieces.insert(g, Piece { idempotent, alpha: m });
    }
    let a = TwistedPartialAction::new(l.algebra().clone(), r.group().clone(), pieces, BTreeMap::new())?;
    Ok((l, a))
}

fn triangular(ctx: &Ctx, sample: &Sample, rng: &mut ChaCha8Rng) -> Vec<Finding> {
    let a = &sample.action;
    let f = a.field();
    let built = match rng.random_range(0..3) {
        0 => extend_diagonal(a).map(|x| (x, true, "diagonal")),
        1 => {
            let chars = sign_characters(a.group());
            let chi = chars[rng.random_range(0..chars.len())].clone();
            extend_with_character(a, |g| match g {
                GroupElement::Index(i) if chi[*i] => f.int(-1),
                _ => f.one(),
            })
            .map(|x| (x, false, "sign character"))
        }
        _ => {
            // S: the restriction of the same global action to another
            // union of block copies
            let mut e = vector::zero(f, sample.global.algebra().dim());
            let mut dim = 0;
            for u in &sample.copy_units {
                let d = u.iter().filter(|x| !x.is_zero()).count();
                if dim + d <= 3 && (dim == 0 || rng.random_bool(0.5)) {
                    e = vector::add(&e, u);
                    dim += d;
                }
            }
            restrict_global(&sample.global, &e)
                .and_then(|s| product_action(a, &s.action))
                .map(|x| (x, false, "zero bimodule"))
        }
    };
    match built {
        Ok((x, diagonal, mode)) => {
            let mut out = triangular_checks(ctx, x, diagonal);
            for finding in &mut out {
                finding.data.insert("mode".into(), json!(mode));
            }
            out
        }
        Err(e) => vec![ctx.degenerate(TRIANGULAR, e.to_string())],
    }
}

fn fixedring(ctx: &Ctx, a: &TwistedPartialAction, global: Option<&GlobalAction>) -> Vec<Finding> {
    let r = a.algebra();
    let fr = fixed_ring(a);
    let mut rep = Report::new("fixed ring");
    rep.require("contains 1", fr.contains(r.unit()), || "1 is not fixed".into());
    rep.check("closed under products");
    'p: for x in fr.basis() {
        for y in fr.basis() {
            if !fr.contains(&r.mul(x, y)) {
                rep.fail("closed under products", format!("{} * {}", r.display(x), r.display(y)));
                break 'p;
            }
        }
    }
    let mut out = vec![ctx.from_report(FIXED_SUBALGEBRA, &rep, vec![("fixed_dim", json!(fr.dim()))])];
    let Some(b) = global else {
        return out;
    };
    let GlobalMaps::Table(maps) = b.maps() else {
        return out;
    };
    let f = b.algebra().field();
    let n = maps.len();
    if !b.is_untwisted() || !f.int_is_unit(n as i64) {
        out.push(ctx.degenerate(FIXED_AVERAGE, "twisted action or |G| not invertible"));
        return out;
    }
    let run = || -> Result<Finding> {
        let t = b.algebra();
        let mut sum = Matrix::zeros(f, t.dim(), t.dim());
        for m in maps.values() {
            sum = sum.add(m)?;
        }
        let p = sum.scale(&f.int(n as i64).inv().expect("invertible"));
        let fixed = fixed_ring(&b.to_partial()?);
        let mut rep = Report::new("averaging");
        rep.require("idempotent", p.mul(&p)? == p, || "P^2 != P".into());
        rep.require("image", Subspace::span(f, t.dim(), p.columns()) == fixed, || {
            "the image of P is not the fixed ring".into()
        });
        rep.require("identity on fixed ring", fixed.basis().iter().all(|v| p.apply(v) == *v), || {
            "P moves a fixed element".into()
        });
        Ok(ctx.from_report(FIXED_AVERAGE, &rep, vec![("fixed_dim", json!(fixed.dim()))]))
    };
    out.push(run().unwrap_or_else(|e| ctx.degenerate(FIXED_AVERAGE, e.to_string())));
    out
}

use crate::Outcome;
use pcross_core::action::{is_finite_type, validate_action, validate_global, fixed_ring};
use pcross_core::algebra::{
    center, frobenius_form, jacobson_radical, symmetric_form, validate_algebra, FormSearch, SearchMethod,
};
use pcross_core::globalize::{check_round_trip, verify_enveloping};
use pcross_core::group::validate_group;
use pcross_core::instance::{algebra_file, global_file, load_instance, parse_field, Instance};
use pcross_core::lab::{run_on_instance, run_suite, summary_text, Bounds, LabConfig, Summary};
use pcross_core::triangular::{
    check_diagonal_identity, extend_diagonal, triangular_crossed_iso, validate_bimodule, validate_relative,
};
use pcross_core::{build_crossed, globalize as envelope, Algebra, Error, GroupModel, Report, Result, Subspace};
use pcross_core::{TwistedPartialAction, linalg::vector};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

fn load(path: &Path, strict: bool) -> Result<Instance> {
    let loaded = load_instance(path, strict)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    Ok(loaded.instance)
}

fn require_action(inst: &Instance) -> Result<&TwistedPartialAction> {
    inst.action
        .as_ref()
        .ok_or_else(|| Error::Hypothesis("the file has no [action] block (or [global] with restrict)".into()))
}

/// Writes `text` to `out`; `-` is stdout. Returns whether stdout was used.
fn write_to(out: &Path, text: &str) -> Result<bool> {
    if out == Path::new("-") {
        print!("{text}");
        return Ok(true);
    }
    std::fs::write(out, text).map_err(|e| Error::Malformed(format!("{}: {e}", out.display())))?;
    Ok(false)
}

fn group_text(g: &GroupModel) -> String {
    match g.order() {
        Some(n) => format!("finite group of order {n}"),
        None => "Z".into(),
    }
}

fn support_text(a: &TwistedPartialAction) -> String {
    let labels: Vec<String> = a.support().iter().map(|g| a.label(g)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Success
    } else {
        Outcome::Failure
    }
}

pub fn validate(path: &Path, strict: bool, as_json: bool) -> Result<Outcome> {
    let inst = load(path, strict)?;
    let mut reports = vec![validate_algebra(&inst.algebra)];
    if let Some(t) = &inst.triangular {
        reports.push(validate_bimodule(t.bimodule()));
    }
    if let Some(g) = &inst.group {
        reports.push(validate_group(g));
    }
    // a broken group makes the action axioms meaningless
    let group_ok = reports.iter().all(|r| r.subject != "group" || r.is_ok());
    if group_ok {
        if let Some(b) = &inst.global {
            reports.push(validate_global(b));
        }
        if let Some(a) = &inst.action {
            reports.push(validate_action(a));
        }
    }
    let ok = reports.iter().all(Report::is_ok);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    } else {
        for r in &reports {
            print!("{r}");
        }
        println!("{}", if ok { "all checks passed" } else { "validation failed" });
    }
    Ok(outcome(ok))
}

pub fn build(path: &Path, strict: bool, out: Option<&Path>) -> Result<Outcome> {
    let inst = load(path, strict)?;
    let a = require_action(&inst)?;
    let cp = build_crossed(a)?;
    let alg = cp.algebra();
    let summary = format!(
        "crossed product: dimension {} over {}\nsupport: {}\nunit: {}\n",
        cp.dim(),
        a.field(),
        support_text(a),
        alg.display(alg.unit())
    );
    let to_stdout = match out {
        Some(p) => {
            let description = format!("crossed product of {}", path.display());
            write_to(p, &algebra_file(alg, Some(description)).to_toml())?
        }
        None => false,
    };
    if to_stdout {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    Ok(Outcome::Success)
}

pub struct Analyses {
    pub radical: bool,
    pub center: bool,
    pub frobenius: bool,
    pub symmetric: bool,
    pub fixed_ring: bool,
    /// Run the fixed ring too when the file has an action.
    pub fixed_ring_if_possible: bool,
}

fn basis_lines(a: &Algebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| a.display(v)).collect()
}

fn method_text(m: &SearchMethod, found: bool) -> String {
    match m {
        SearchMethod::Trivial => "the zero algebra or no admissible form".into(),
        SearchMethod::TraceCandidate => "rescaled regular trace".into(),
        SearchMethod::Cocenter { center, cocenter } => {
            format!("center has dimension {center} but the cocenter {cocenter}")
        }
        SearchMethod::Symbolic { .. } if !found => "the symbolic Gram determinant vanishes identically".into(),
        SearchMethod::Symbolic { points_tried } => {
            format!("symbolic Gram determinant, nonzero after {points_tried} grid points")
        }
        SearchMethod::Grid { points_tried } => format!("grid search over {points_tried} points"),
        SearchMethod::Random {
            samples,
            seed,
            failure_bound,
        } => format!("{samples} random samples (seed {seed}), miss probability at most {failure_bound}"),
    }
}

fn form_text(a: &Algebra, s: &FormSearch) -> String {
    match &s.form {
        Some(form) => format!(
            "{} on ({}) [{}]",
            vector::display(form),
            a.names().join(", "),
            method_text(&s.method, s.found())
        ),
        None if s.decided => format!("none [{}]", method_text(&s.method, s.found())),
        None => format!("not found, undecided [{}]", method_text(&s.method, s.found())),
    }
}

fn form_json(s: &FormSearch) -> Value {
    json!({
        "form": s.form.as_ref().map(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        "decided": s.decided,
        "method": method_text(&s.method, s.found()),
    })
}

pub fn analyze(path: &Path, strict: bool, which: Analyses, crossed: bool, as_json: bool) -> Result<Outcome> {
    let inst = load(path, strict)?;
    let built;
    let (alg, label) = if crossed {
        built = build_crossed(require_action(&inst)?)?;
        (built.algebra(), "crossed product")
    } else {
        (&inst.algebra, "algebra")
    };
    if which.fixed_ring && crossed {
        return Err(Error::Hypothesis("the fixed ring is taken in R, not in the crossed product".into()));
    }
    let mut lines = vec![format!("{label}: dimension {} over {}", alg.dim(), alg.field())];
    let mut doc = serde_json::Map::new();
    doc.insert("subject".into(), json!(label));
    doc.insert("dimension".into(), json!(alg.dim()));
    doc.insert("field".into(), json!(alg.field().to_string()));
    if which.radical {
        let rad = jacobson_radical(alg)?;
        lines.push(format!("radical: dimension {}", rad.dim()));
        lines.extend(basis_lines(alg, &rad).into_iter().map(|b| format!("  {b}")));
        doc.insert("radical".into(), json!(basis_lines(alg, &rad)));
    }
    if which.center {
        let z = center(alg);
        lines.push(format!("center: dimension {}", z.dim()));
        lines.extend(basis_lines(alg, &z).into_iter().map(|b| format!("  {b}")));
        doc.insert("center".into(), json!(basis_lines(alg, &z)));
    }
    if which.frobenius {
        let s = frobenius_form(alg);
        lines.push(format!("frobenius form: {}", form_text(alg, &s)));
        doc.insert("frobenius".into(), form_json(&s));
    }
    if which.symmetric {
        let s = symmetric_form(alg);
        lines.push(format!("symmetric form: {}", form_text(alg, &s)));
        doc.insert("symmetric".into(), form_json(&s));
    }
    let want_fixed = which.fixed_ring || (which.fixed_ring_if_possible && !crossed && inst.action.is_some());
    if want_fixed {
        let a = require_action(&inst)?;
        let fr = fixed_ring(a);
        lines.push(format!("fixed ring: dimension {}", fr.dim()));
        lines.extend(basis_lines(alg, &fr).into_iter().map(|b| format!("  {b}")));
        doc.insert("fixed_ring".into(), json!(basis_lines(alg, &fr)));
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("json"));
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(Outcome::Success)
}

pub fn globalize(path: &Path, strict: bool, out: Option<&Path>) -> Result<Outcome> {
    let inst = load(path, strict)?;
    let a = require_action(&inst)?;
    let pair = envelope(a)?;
    let ft = is_finite_type(a)?;
    let t = pair.global.algebra();
    let verified = verify_enveloping(&pair);
    let round = check_round_trip(&pair)?;
    let global = validate_global(&pair.global);
    let mut text = format!(
        "partial action: {} on R of dimension {}, support {}\n",
        group_text(a.group()),
        a.dim(),
        support_text(a)
    );
    text.push_str(&format!(
        "finite type: {}\n",
        if ft.finite_type { format!("yes, covering {{{}}}", ft.covering.join(", ")) } else { "no".into() }
    ));
    text.push_str(&format!("enveloping algebra: dimension {}\n", t.dim()));
    text.push_str(&format!("image of 1_R: {}\n", t.display(&pair.unit_image())));
    text.push_str(&format!("{global}{verified}{round}"));
    let ok = global.is_ok() && verified.is_ok() && round.is_ok();
    let to_stdout = match out {
        Some(p) => {
            let file = global_file(&pair.global, Some(&pair.unit_image()), Some(format!("enveloping action of {}", path.display())));
            write_to(p, &file.to_toml())?
        }
        None => false,
    };
    if to_stdout {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    Ok(outcome(ok))
}

pub fn triangular(path: &Path, strict: bool) -> Result<Outcome> {
    let inst = load(path, strict)?;
    let a = require_action(&inst)?;
    let (l, act, diagonal) = match &inst.triangular {
        Some(l) => (l.clone(), a.clone(), false),
        None => {
            let (l, ext) = extend_diagonal(a)?;
            (l, ext, true)
        }
    };
    let iso = triangular_crossed_iso(&l, &act)?;
    let dims = |x: &Algebra| x.dim();
    println!(
        "triangular algebra: (R, N, S) of dimensions ({}, {}, {}){}",
        dims(l.left_algebra()),
        l.bimodule().dim(),
        dims(l.right_algebra()),
        if diagonal { ", diagonal extension" } else { "" }
    );
    println!("L * G: dimension {}", iso.source.dim());
    println!(
        "(R * G, M, S * G): dimensions ({}, {}, {})",
        iso.left.dim(),
        iso.target.bimodule().dim(),
        iso.right.dim()
    );
    let rel = validate_relative(&iso.relative);
    print!("{rel}{}", iso.report);
    let mut ok = rel.is_ok() && iso.report.is_ok();
    if diagonal {
        let d = check_diagonal_identity(&iso);
        print!("{d}");
        ok &= d.is_ok();
    }
    Ok(outcome(ok))
}

pub struct LabArgs {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub bounds: Option<(usize, usize)>,
    pub twist: bool,
    pub field: Option<String>,
    pub instance: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub strict: bool,
}

pub fn lab(args: LabArgs) -> Result<Outcome> {
    let findings = match &args.instance {
        Some(path) => {
            let inst = load(path, args.strict)?;
            let a = require_action(&inst)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            run_on_instance(&args.suite, &name, a, inst.global.as_ref(), args.seed)?
        }
        None => {
            let mut cfg = LabConfig::new(args.suite.clone(), args.seed, args.trials);
            let default = Bounds::default();
            let (max_dim, max_order) = args.bounds.unwrap_or((default.max_dim, default.max_order));
            cfg.bounds = Bounds {
                max_dim,
                max_order,
                twist: args.twist,
            };
            cfg.field = args.field.as_deref().map(parse_field).transpose()?;
            run_suite(&cfg)?
        }
    };
    let mut lines = String::new();
    for f in &findings {
        lines.push_str(&f.to_json_line());
        lines.push('\n');
    }
    match &args.out {
        Some(p) => {
            write_to(p, &lines)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(lines.as_bytes())
                .map_err(|e| Error::Malformed(format!("stdout: {e}")))?;
        }
    }
    eprint!("{}", summary_text(&findings));
    Ok(outcome(Summary::of(&findings).refuted == 0))
}

//! Golden-file tests: every command on the shipped fixtures. Each golden
//! file holds the exit code and stdout; run with `PCROSS_BLESS=1` to
//! rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn pcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcross"))
        .args(args)
        .current_dir(root())
        .env_remove("PCROSS_SEED")
        .output()
        .expect("binary runs")
}

fn transcript(out: &Output) -> String {
    format!(
        "exit: {}\n{}",
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout)
    )
}

fn check_golden(name: &str, args: &[&str]) {
    let got = transcript(&pcross(args));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"));
    if std::env::var_os("PCROSS_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name}: pcross {}", args.join(" "));
}

macro_rules! golden {
    ($($name:ident: [$($arg:expr),* $(,)?];)*) => {
        $(
            #[test]
            fn $name() {
                check_golden(stringify!($name), &[$($arg),*]);
            }
        )*
    };
}

golden! {
    validate_z_pair: ["validate", "fixtures/z-pair.toml"];
    validate_z_point: ["validate", "fixtures/z-point.toml"];
    validate_shift_window: ["validate", "fixtures/shift-window.toml"];
    validate_dual_numbers: ["validate", "fixtures/dual-numbers.toml"];
    validate_upper_triangular: ["validate", "fixtures/upper-triangular.toml"];
    validate_m2: ["validate", "fixtures/m2.toml"];
    validate_c3_restriction: ["validate", "fixtures/c3-restriction.toml"];
    validate_triangular_qqq: ["validate", "fixtures/triangular-qqq.toml"];
    validate_broken_latin: ["validate", "crates/cli/tests/data/broken-latin.toml"];
    validate_json: ["validate", "--json", "fixtures/z-point.toml"];
    validate_lenient: ["validate", "--lenient", "crates/cli/tests/data/unknown-field.toml"];

    build_z_pair: ["build", "fixtures/z-pair.toml"];
    build_z_point: ["build", "fixtures/z-point.toml"];
    build_shift_window: ["build", "fixtures/shift-window.toml"];
    build_dual_numbers: ["build", "fixtures/dual-numbers.toml"];
    build_c3_restriction: ["build", "fixtures/c3-restriction.toml"];
    build_trivial_group: ["build", "crates/cli/tests/data/trivial-group.toml"];
    build_to_stdout: ["build", "fixtures/z-pair.toml", "--out", "-"];
    build_without_action: ["build", "fixtures/m2.toml"];

    analyze_upper_triangular: ["analyze", "fixtures/upper-triangular.toml"];
    analyze_m2: ["analyze", "fixtures/m2.toml"];
    analyze_scalars: ["analyze", "crates/cli/tests/data/scalars.toml"];
    analyze_dual_numbers: ["analyze", "fixtures/dual-numbers.toml"];
    analyze_dual_numbers_crossed: ["analyze", "--crossed", "fixtures/dual-numbers.toml"];
    analyze_z_pair_crossed: ["analyze", "--crossed", "--radical", "--center", "fixtures/z-pair.toml"];
    analyze_c3_fixed_ring: ["analyze", "--fixed-ring", "fixtures/c3-restriction.toml"];
    analyze_json: ["analyze", "--json", "fixtures/upper-triangular.toml"];

    globalize_c3_restriction: ["globalize", "fixtures/c3-restriction.toml"];
    globalize_dual_numbers: ["globalize", "fixtures/dual-numbers.toml"];
    globalize_z_pair: ["globalize", "fixtures/z-pair.toml"];
    globalize_to_stdout: ["globalize", "fixtures/c3-restriction.toml", "-o", "-"];

    triangular_qqq: ["triangular", "fixtures/triangular-qqq.toml"];
    triangular_c3_diagonal: ["triangular", "fixtures/c3-restriction.toml"];
    triangular_z_pair_diagonal: ["triangular", "fixtures/z-pair.toml"];

    lab_artinian: ["lab", "artinian", "--trials", "3"];
    lab_semisimple: ["lab", "semisimple", "--trials", "6"];
    lab_symmetric_on_dual_numbers: ["lab", "symmetric", "--instance", "fixtures/dual-numbers.toml"];
    lab_quotient_bounded: ["lab", "quotient", "--seed", "7", "--trials", "3", "--bounds", "4,6", "--no-twist"];

    fixture_list: ["fixture", "--list"];
}

#[test]
fn shipped_fixtures_match_the_generator() {
    let out = pcross(&["fixture", "--list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    for name in names.lines() {
        let generated = pcross(&["fixture", name]);
        assert!(generated.status.success());
        let shipped = std::fs::read(root().join("fixtures").join(format!("{name}.toml"))).unwrap();
        assert_eq!(generated.stdout, shipped, "fixtures/{name}.toml is stale");
    }
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(pcross(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pcross(&["lab", "perfect"]).status.code(), Some(2));
    assert_eq!(pcross(&["lab", "artinian", "--bounds", "6"]).status.code(), Some(2));
    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = pcross(&["validate", empty.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty instance file"));
    let out = pcross(&["validate", "crates/cli/tests/data/unknown-field.toml"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown field(s): extra"));
}

#[test]
fn lab_flags_expected_refutations() {
    let out = pcross(&["lab", "semisimple", "--trials", "0"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let control: Vec<_> = lines.iter().filter(|f| f["verdict"] == "refuted").collect();
    assert!(!control.is_empty());
    assert!(control.iter().all(|f| f["expected"] == true));
}

#[test]
fn lab_seed_comes_from_the_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pcross"));
        c.args(["lab", "noetherian", "--trials", "4"]).current_dir(root());
        match seed {
            Some(s) => c.env("PCROSS_SEED", s),
            None => c.env_remove("PCROSS_SEED"),
        };
        c.output().unwrap().stdout
    };
    assert_eq!(run(Some("11")), run(Some("11")));
    assert_ne!(run(Some("11")), run(None));
    assert_eq!(run(Some("0")), run(None));
}

#[test]
fn built_files_are_reproducible_and_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["z-pair", "z-point", "c3-restriction", "dual-numbers", "triangular-qqq"] {
        let input = format!("fixtures/{name}.toml");
        let a = dir.path().join(format!("{name}-a.toml"));
        let b = dir.path().join(format!("{name}-b.toml"));
        for p in [&a, &b] {
            assert!(pcross(&["build", &input, "-o", p.to_str().unwrap()]).status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{name}");
        let v = pcross(&["validate", a.to_str().unwrap()]);
        assert!(v.status.success(), "{name}: {}", String::from_utf8_lossy(&v.stdout));
        let first = pcross(&["analyze", a.to_str().unwrap()]);
        let second = pcross(&["analyze", b.to_str().unwrap()]);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{name}");
    }
}

/// Structure constants of the algebra block in a file, by basis position.
fn structure(path: &Path) -> (Vec<String>, Vec<(usize, usize, Vec<String>)>) {
    let v: toml::Table = toml::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let alg = &v["algebra"];
    let names: Vec<String> = alg["names"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().into()).collect();
    let pos = |s: &toml::Value| names.iter().position(|n| n == s.as_str().unwrap()).unwrap();
    let mut products: Vec<_> = alg["products"]
        .as_array()
        .map(|ps| {
            ps.iter()
                .map(|p| {
                    let value = p["value"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().into()).collect();
                    (pos(&p["left"]), pos(&p["right"]), value)
                })
                .collect()
        })
        .unwrap_or_default();
    products.sort();
    let unit = alg["unit"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().into()).collect();
    (unit, products)
}

#[test]
fn crossed_product_of_z_point_is_r() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rg.toml");
    assert!(pcross(&["build", "fixtures/z-point.toml", "-o", out.to_str().unwrap()]).status.success());
    assert_eq!(structure(&out), structure(&root().join("fixtures/z-point.toml")));
    let out = dir.path().join("trivial.toml");
    assert!(pcross(&["build", "crates/cli/tests/data/trivial-group.toml", "-o", out.to_str().unwrap()]).status.success());
    assert_eq!(structure(&out), structure(&root().join("crates/cli/tests/data/trivial-group.toml")));
}

use pcross_core::action::Piece;
use pcross_core::lab::{claims, replay, run_on_instance, run_suite, Finding, LabConfig, Verdict, SUITES};
use pcross_core::linalg::{FieldSpec, Matrix};
use pcross_core::{fixtures, Algebra, GroupModel, TwistedPartialAction};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn suite() -> impl Strategy<Value = &'static str> {
    prop::sample::select(SUITES.to_vec())
}

/// Only `D_e` is nonzero.
fn identity_only(r: Algebra, g: GroupModel) -> TwistedPartialAction {
    let mut pieces = BTreeMap::new();
    pieces.insert(
        g.identity(),
        Piece {
            idempotent: r.unit().to_vec(),
            alpha: Matrix::identity(r.field(), r.dim()),
        },
    );
    TwistedPartialAction::new(r, g, pieces, BTreeMap::new()).unwrap()
}

fn degenerate_instances() -> Vec<(&'static str, TwistedPartialAction)> {
    let q = FieldSpec::Rationals;
    vec![
        ("trivial group", TwistedPartialAction::trivial(Algebra::scalars(q), GroupModel::cyclic(1).unwrap()).unwrap()),
        ("zero ideals", identity_only(Algebra::diagonal(q, 2), GroupModel::cyclic(3).unwrap())),
        ("zero ideals gf2", identity_only(Algebra::dual_numbers(FieldSpec::Prime(2)), GroupModel::symmetric(3).unwrap())),
        ("z-pair", fixtures::z_pair()),
        ("z-point", fixtures::z_point()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn refutations_replay_identically((name, seed) in (suite(), any::<u64>())) {
        let mut cfg = LabConfig::new(name, seed, 6);
        cfg.bounds = cfg.bounds.capped(4, 6);
        let findings = run_suite(&cfg).unwrap();
        for f in findings.iter().filter(|f| f.verdict == Verdict::Refuted) {
            let again = replay(f).unwrap();
            prop_assert_eq!(&again, f);
        }
        // a replayed confirmation is the same finding too
        if let Some(f) = findings.iter().find(|f| f.trial.is_some()) {
            prop_assert_eq!(&replay(f).unwrap(), f);
        }
    }

    #[test]
    fn findings_round_trip_through_json((name, seed) in (suite(), any::<u64>())) {
        let findings = run_suite(&LabConfig::new(name, seed, 2)).unwrap();
        for f in &findings {
            let line = f.to_json_line();
            prop_assert!(!line.contains('\n'));
            let back: Finding = serde_json::from_str(&line).unwrap();
            prop_assert_eq!(&back, f);
        }
    }

    /// No characteristic both confirms the semisimple transfer and refutes
    /// its control.
    #[test]
    fn semisimple_outcomes_split_by_characteristic(seed in any::<u64>()) {
        let findings = run_suite(&LabConfig::new("semisimple", seed, 24)).unwrap();
        let chars = |claim: &str, verdict: Verdict| -> Vec<String> {
            findings
                .iter()
                .filter(|f| f.claim == claim && f.verdict == verdict)
                .map(|f| format!("{}/{}", f.field, f.data["group_order"]))
                .collect()
        };
        let confirmed = chars(claims::SEMISIMPLE, Verdict::Confirmed);
        for r in chars(claims::SEMISIMPLE_CONTROL, Verdict::Refuted) {
            prop_assert!(!confirmed.contains(&r), "{}", r);
        }
        prop_assert!(findings.iter().all(|f| !f.is_unexpected_refutation()));
    }
}

#[test]
fn suites_survive_degenerate_instances() {
    for (name, a) in degenerate_instances() {
        for suite in SUITES {
            let findings = run_on_instance(suite, name, &a, None, 7)
                .unwrap_or_else(|e| panic!("{suite} on {name}: {e}"));
            for f in &findings {
                // the quoted averaging formula and the symmetric transfer are
                // refuted on genuine instances; every other claim must hold
                let known = f.claim == claims::MASCHKE_QUOTED || f.claim == claims::SYMMETRIC;
                assert!(known || !f.is_unexpected_refutation(), "{suite} on {name}: {f:?}");
            }
        }
    }
}

#[test]
fn same_seed_same_findings() {
    for suite in ["maschke", "quotient", "triangular"] {
        let cfg = LabConfig::new(suite, 99, 5);
        assert_eq!(run_suite(&cfg).unwrap(), run_suite(&cfg).unwrap(), "{suite}");
    }
}

//! Verification campaigns: each suite checks one transfer statement on the
//! worked examples and on seeded random instances, and reports one
//! [`Finding`] per claim checked.

pub mod claims;
mod random;
mod suites;

pub use random::{random_action, random_sample, Bounds, Sample};

use crate::action::{GlobalAction, TwistedPartialAction};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const SUITES: &[&str] = &[
    "artinian",
    "noetherian",
    "semisimple",
    "maschke",
    "frobenius",
    "symmetric",
    "subgroup",
    "quotient",
    "globalization",
    "triangular",
    "fixedring",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabConfig {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub bounds: Bounds,
    /// Field for random instances; `None` uses the suite's default.
    pub field: Option<FieldSpec>,
}

impl LabConfig {
    pub fn new(suite: impl Into<String>, seed: u64, trials: usize) -> Self {
        Self {
            suite: suite.into(),
            seed,
            trials,
            bounds: Bounds::default(),
            field: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::UnknownSuite {
                name: self.suite.clone(),
                available: SUITES.join(", "),
            });
        }
        self.bounds.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Refuted => "refuted",
            Verdict::Degenerate => "degenerate",
        })
    }
}

/// One claim checked on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub suite: String,
    /// Trial index and seed for random instances; `None` for fixtures.
    pub trial: Option<usize>,
    pub seed: Option<u64>,
    pub bounds: Bounds,
    /// Fixture name, or a description of the random instance.
    pub instance: String,
    pub field: String,
    /// SHA-256 of the serialized instance.
    pub fingerprint: String,
    pub claim: String,
    pub verdict: Verdict,
    /// A refutation the suite anticipates (a control whose hypothesis fails).
    pub expected: bool,
    pub witness: Option<String>,
    #[serde(default)]
    pub data: BTreeMap<String, serde_json::Value>,
    /// The serialized instance, kept for refutations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_toml: Option<String>,
}

impl Finding {
    pub fn is_unexpected_refutation(&self) -> bool {
        self.verdict == Verdict::Refuted && !self.expected
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("findings serialize")
    }
}

/// Runs a suite: fixtures first, then `trials` random instances (in
/// parallel, merged in trial order).
pub fn run_suite(cfg: &LabConfig) -> Result<Vec<Finding>> {
    cfg.validate()?;
    let mut findings = suites::fixtures(&cfg.suite, &cfg.bounds)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.trials).map(|_| rng.random()).collect();
    let trials: Vec<Vec<Finding>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| suites::trial(&cfg.suite, i, s, &cfg.bounds, cfg.field))
        .collect::<Result<_>>()?;
    findings.extend(trials.into_iter().flatten());
    if cfg.suite == "semisimple" {
        assert!(
            suites::semisimple_disjoint(&findings),
            "semisimple confirmations and control refutations overlap in characteristic"
        );
    }
    Ok(findings)
}

/// Runs one suite's checks on a given instance instead of random ones.
pub fn run_on_instance(
    suite: &str,
    name: &str,
    action: &TwistedPartialAction,
    global: Option<&GlobalAction>,
    seed: u64,
) -> Result<Vec<Finding>> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite {
            name: suite.into(),
            available: SUITES.join(", "),
        });
    }
    suites::on_instance(suite, name, action, global, &Bounds::default(), seed)
}

/// Re-runs the instance a finding came from and returns the finding for the
/// same claim.
pub fn replay(f: &Finding) -> Result<Finding> {
    let field = if f.trial.is_some() {
        Some(crate::instance::parse_field(&f.field)?)
    } else {
        None
    };
    let again = match (f.trial, f.seed) {
        (Some(i), Some(s)) => suites::trial(&f.suite, i, s, &f.bounds, field)?,
        _ => suites::fixtures(&f.suite, &f.bounds)?,
    };
    again
        .into_iter()
        .find(|g| g.claim == f.claim && g.instance == f.instance && g.data.get("subgroup") == f.data.get("subgroup"))
        .ok_or_else(|| Error::Malformed(format!("no finding for claim '{}' on replay", f.claim)))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub expected_refutations: usize,
    pub degenerate: usize,
}

impl Summary {
    pub fn of(findings: &[Finding]) -> Self {
        let mut s = Summary::default();
        for f in findings {
            match f.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Degenerate => s.degenerate += 1,
                Verdict::Refuted if f.expected => s.expected_refutations += 1,
                Verdict::Refuted => s.refuted += 1,
            }
        }
        s
    }
}

/// Per-claim tallies, one line per claim, in first-seen order.
pub fn summary_text(findings: &[Finding]) -> String {
    let mut order: Vec<&str> = Vec::new();
    let mut tallies: BTreeMap<&str, Summary> = BTreeMap::new();
    for f in findings {
        if !tallies.contains_key(f.claim.as_str()) {
            order.push(&f.claim);
        }
        let t = tallies.entry(&f.claim).or_default();
        match f.verdict {
            Verdict::Confirmed => t.confirmed += 1,
            Verdict::Degenerate => t.degenerate += 1,
            Verdict::Refuted if f.expected => t.expected_refutations += 1,
            Verdict::Refuted => t.refuted += 1,
        }
    }
    let mut out = String::new();
    for c in order {
        let t = &tallies[c];
        out.push_str(&format!(
            "{c}: {} confirmed, {} refuted, {} expected refutations, {} degenerate\n",
            t.confirmed, t.refuted, t.expected_refutations, t.degenerate
        ));
    }
    let s = Summary::of(findings);
    out.push_str(&format!(
        "total: {} findings, {} unexpected refutations\n",
        findings.len(),
        s.refuted
    ));
    out
}

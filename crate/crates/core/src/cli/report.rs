use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::instance::{Budgets, InstanceSpec};
use crate::fincat::{Outcome, Verdict, Witness};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn new(name: &str, v: Verdict) -> Self {
        CheckReport { name: name.to_string(), outcome: v.outcome, witness: v.witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub outcome: Outcome,
    /// The first failing check, else the first inconclusive one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(checks: Vec<CheckReport>, millis: Option<u64>) -> Self {
        let first = |o: Outcome| checks.iter().find(|c| c.outcome == o);
        let (outcome, witness) = match first(Outcome::Fail).or_else(|| first(Outcome::Inconclusive)) {
            Some(c) => {
                let mut w = c.witness.clone().unwrap_or_else(|| Witness::new(c.name.clone(), ""));
                w.law = format!("{}: {}", c.name, w.law);
                (c.outcome, Some(w))
            }
            None => (Outcome::Pass, None),
        };
        SuiteReport { outcome, witness, millis, checks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub instance: String,
    pub monoid: String,
    /// SHA-256 of the resolved instance, independent of how it was written down.
    pub digest: String,
    pub budgets: Budgets,
    pub suites: BTreeMap<String, SuiteReport>,
}

impl Report {
    pub fn new(spec: &InstanceSpec, suites: BTreeMap<String, SuiteReport>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
            instance: spec.name.clone(),
            monoid: spec.monoid_name.clone(),
            digest: digest(spec),
            budgets: spec.budgets,
            suites,
        }
    }

    /// Fail beats inconclusive beats pass; an empty report passes.
    pub fn outcome(&self) -> Outcome {
        outcome_of(self.suites.values().map(|s| s.outcome))
    }
}

pub fn outcome_of(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes.into_iter().fold(Outcome::Pass, |acc, o| match (acc, o) {
        (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
        (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
        _ => Outcome::Pass,
    })
}

pub fn digest(spec: &InstanceSpec) -> String {
    let canonical = serde_json::to_vec(&(&spec.monoid, &spec.action, spec.point, spec.budgets, spec.selected()))
        .expect("serialisable instance");
    Sha256::digest(&canonical).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

/// Process exit status: 0 all pass, 1 some failure, 3 undecided within budget.
pub fn exit_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Pass => 0,
        Outcome::Fail => 1,
        Outcome::Inconclusive => 3,
    }
}

fn label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::Inconclusive => "INCONCLUSIVE",
    }
}

fn describe_witness(w: &Witness) -> String {
    let mut s = format!("{} at {}", w.law, w.at);
    if let Some(l) = &w.lhs {
        let _ = write!(s, " lhs={l:?}");
    }
    if let Some(r) = &w.rhs {
        let _ = write!(s, " rhs={r:?}");
    }
    s
}

pub fn emit_report(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = if let [single] = reports {
                serde_json::to_string_pretty(single)
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("serialisable report");
            s.push('\n');
            s
        }
        Format::Human => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "{} ({}) digest {} budgets base={} em={} comma={}",
                    r.instance,
                    r.monoid,
                    &r.digest[..12],
                    r.budgets.base,
                    r.budgets.em,
                    r.budgets.comma
                );
                for (name, suite) in &r.suites {
                    let time = suite.millis.map(|ms| format!(" {ms} ms")).unwrap_or_default();
                    let _ = writeln!(out, "  {name:<18} {}{time}", label(suite.outcome));
                    for c in suite.checks.iter().filter(|c| c.outcome != Outcome::Pass) {
                        let w = c.witness.as_ref().map(describe_witness).unwrap_or_default();
                        let _ = writeln!(out, "    {} {}: {w}", label(c.outcome), c.name);
                    }
                }
            }
            out
        }
    }
}

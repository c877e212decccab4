//! Registry of checkable statements about pairings, with a gated checker, a
//! suite runner over a generated corpus and a counterexample miner.
//!
//! Every entry turns an instance into a list of [`Case`]s. A case carries its
//! hypotheses already evaluated and its conclusion as a closure; the only way
//! to run the closure is through [`Case::evaluate`] (all hypotheses true) or
//! [`Case::evaluate_dropping`] (exactly the dropped ones false).

mod alpha;
mod corpus;
mod runner;
mod subject;
mod topology;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, Loaded};
use crate::modules::Certainty;

pub use corpus::{corpus, CorpusConfig, Instance};
pub use runner::{
    mine_counterexamples, run_suite, suite_names, Finding, MineConfig, MineReport, SuiteConfig, SuiteReport, Summary,
};
pub use subject::Subject;

/// Which objects an entry reads from an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// The ring alone.
    Ring,
    /// One module (`N`, or the only module).
    Module,
    /// One pairing (`P`, or the only pairing).
    Pairing,
    /// A map `theta: W' -> W` of left modules.
    Map,
    /// Pairings `P` and `Q`.
    PairingPair,
    /// Modules `N` and `N2`.
    ModulePair,
}

impl Kind {
    pub fn available(self, l: &Loaded) -> bool {
        match self {
            Kind::Ring => true,
            Kind::Module => l.module().is_some(),
            Kind::Pairing => l.pairing().is_some(),
            Kind::Map => l.map().is_some(),
            Kind::PairingPair => l.pairing_pair().is_some(),
            Kind::ModulePair => l.module_pair().is_some(),
        }
    }
}

/// One evaluated hypothesis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyp {
    pub name: String,
    pub holds: bool,
    /// True by finiteness alone (Noetherian, Artinian, cofinite, finitely generated).
    pub vacuous: bool,
}

pub fn hyp(name: &str, holds: bool) -> Hyp {
    Hyp {
        name: name.to_string(),
        holds,
        vacuous: false,
    }
}

pub fn vacuous(name: &str) -> Hyp {
    Hyp {
        name: name.to_string(),
        holds: true,
        vacuous: true,
    }
}

/// Result of evaluating a conclusion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eval {
    pub holds: bool,
    /// Number of parameter tuples examined.
    pub checked: u64,
    /// Some sub-verdict came from a truncated test family.
    pub bounded: bool,
    pub witness: Option<Value>,
}

impl Eval {
    pub fn check(holds: bool, witness: impl FnOnce() -> Value) -> Eval {
        Eval {
            holds,
            checked: 1,
            bounded: false,
            witness: if holds { None } else { Some(witness()) },
        }
    }
}

/// Accumulates a universally quantified conclusion, stopping at the first failure.
#[derive(Debug, Default)]
pub struct Forall {
    checked: u64,
    bounded: bool,
    witness: Option<Value>,
}

impl Forall {
    pub fn new() -> Forall {
        Forall::default()
    }

    /// Records one parameter; returns `false` once a counterexample is known.
    pub fn check(&mut self, holds: bool, witness: impl FnOnce() -> Value) -> bool {
        self.checked += 1;
        if !holds && self.witness.is_none() {
            self.witness = Some(witness());
        }
        self.witness.is_none()
    }

    pub fn bounded(&mut self, certainty: Certainty) {
        self.bounded |= certainty == Certainty::Bounded;
    }

    pub fn done(self) -> Result<Eval> {
        Ok(Eval {
            holds: self.witness.is_none(),
            checked: self.checked,
            bounded: self.bounded,
            witness: self.witness,
        })
    }
}

type Conclusion<'a> = Box<dyn FnOnce() -> Result<Eval> + 'a>;

/// A parameter choice with evaluated hypotheses and a deferred conclusion.
pub struct Case<'a> {
    pub label: String,
    pub hypotheses: Vec<Hyp>,
    conclusion: Conclusion<'a>,
}

impl<'a> Case<'a> {
    pub fn new(label: impl Into<String>, hypotheses: Vec<Hyp>, conclusion: impl FnOnce() -> Result<Eval> + 'a) -> Case<'a> {
        Case {
            label: label.into(),
            hypotheses,
            conclusion: Box::new(conclusion),
        }
    }

    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// The conclusion, if every hypothesis holds.
    pub fn evaluate(self) -> Result<Option<Eval>> {
        if !self.applicable() {
            return Ok(None);
        }
        settle((self.conclusion)()).map(Some)
    }

    /// The conclusion, if exactly the `dropped` hypotheses fail.
    pub fn evaluate_dropping(self, dropped: &[&str]) -> Result<Option<Eval>> {
        let violates_exactly = self
            .hypotheses
            .iter()
            .all(|h| h.holds != dropped.contains(&h.name.as_str()));
        if !violates_exactly {
            return Ok(None);
        }
        settle((self.conclusion)()).map(Some)
    }
}

/// An internal inconsistency raised inside a conclusion is a counterexample.
fn settle(r: Result<Eval>) -> Result<Eval> {
    match r {
        Err(Error::Internal(msg)) => Ok(Eval {
            holds: false,
            checked: 1,
            bounded: false,
            witness: Some(Value::String(msg)),
        }),
        other => other,
    }
}

type CaseFn = for<'a> fn(&'a Subject<'a>) -> Result<Vec<Case<'a>>>;

pub struct TheoremEntry {
    pub id: &'static str,
    /// What is asserted, in words.
    pub statement: &'static str,
    pub kind: Kind,
    /// Names of the hypotheses the cases may carry.
    pub hypotheses: &'static [&'static str],
    pub scale_note: Option<&'static str>,
    cases: CaseFn,
}

impl TheoremEntry {
    pub fn cases<'a>(&self, s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
        (self.cases)(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    /// A size cap stopped the evaluation.
    Skipped,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypState {
    True,
    False,
    Mixed,
    Vacuous,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub total: u64,
    pub applicable: u64,
    pub failed: u64,
    /// Parameter tuples examined inside applicable cases.
    pub checked: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub case: String,
    pub detail: Value,
    /// Self-contained instance on which the failure reproduces.
    pub instance: InstanceDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub hypotheses: BTreeMap<String, HypState>,
    pub cases: CaseCounts,
    pub certainty: Certainty,
    pub witnesses: Vec<Witness>,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

const MAX_WITNESSES: usize = 3;

mod registry;
pub use registry::{entry, registry};

/// Runs one entry on one loaded instance.
pub fn check_subject(e: &TheoremEntry, s: &Subject<'_>, label: &str) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport {
        theorem: e.id.to_string(),
        instance: label.to_string(),
        status: Status::NotApplicable,
        note: None,
        hypotheses: BTreeMap::new(),
        cases: CaseCounts::default(),
        certainty: Certainty::Exact,
        witnesses: Vec::new(),
        elapsed: Duration::ZERO,
    };
    if !e.kind.available(s.loaded) {
        report.note = Some(format!("instance has no {:?} subject", e.kind));
        return report;
    }
    let outcome = (|| -> Result<()> {
        for case in e.cases(s)? {
            report.cases.total += 1;
            for h in &case.hypotheses {
                let st = if h.vacuous {
                    HypState::Vacuous
                } else if h.holds {
                    HypState::True
                } else {
                    HypState::False
                };
                report
                    .hypotheses
                    .entry(h.name.clone())
                    .and_modify(|old| {
                        if *old != st {
                            *old = HypState::Mixed
                        }
                    })
                    .or_insert(st);
            }
            let label = case.label.clone();
            if let Some(ev) = case.evaluate()? {
                report.cases.applicable += 1;
                report.cases.checked += ev.checked;
                if ev.bounded {
                    report.certainty = Certainty::Bounded;
                }
                if !ev.holds {
                    report.cases.failed += 1;
                    if report.witnesses.len() < MAX_WITNESSES {
                        report.witnesses.push(Witness {
                            case: label,
                            detail: ev.witness.unwrap_or(Value::Null),
                            instance: s.document.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    })();
    report.status = match outcome {
        Err(Error::Unsupported(m)) => {
            report.note = Some(format!("unsupported: {m}"));
            Status::NotApplicable
        }
        Err(err @ Error::CapExceeded { .. }) => {
            report.note = Some(err.to_string());
            Status::Skipped
        }
        Err(err) => {
            report.note = Some(err.to_string());
            Status::Error
        }
        Ok(()) if report.cases.failed > 0 => Status::Fail,
        Ok(()) if report.cases.applicable > 0 => Status::Pass,
        Ok(()) => {
            let failing: Vec<&str> = report
                .hypotheses
                .iter()
                .filter(|(_, st)| matches!(st, HypState::False | HypState::Mixed))
                .map(|(n, _)| n.as_str())
                .collect();
            report.note = Some(if failing.is_empty() {
                "not applicable: no cases".to_string()
            } else {
                format!("not applicable: hypothesis {} false", failing.join(", "))
            });
            Status::NotApplicable
        }
    };
    report.elapsed = start.elapsed();
    report
}

/// Checks a registered entry on an instance document.
pub fn check(theorem_id: &str, doc: &InstanceDocument, seed: u64) -> Result<CheckReport> {
    let e = entry(theorem_id)?;
    let loaded = doc.load()?;
    if !e.kind.available(&loaded) {
        return Err(Error::Input(format!(
            "{theorem_id} needs a {:?} instance (names P/Q, N/N2, theta, or a single object)",
            e.kind
        )));
    }
    let s = Subject::new(&loaded, doc, seed);
    Ok(check_subject(e, &s, "instance"))
}

/// Re-evaluates the case a witness names on the instance it carries; true when
/// the failure reproduces.
pub fn replay(theorem_id: &str, w: &Witness, seed: u64) -> Result<bool> {
    let e = entry(theorem_id)?;
    let loaded = w.instance.load()?;
    let s = Subject::new(&loaded, &w.instance, seed);
    for case in e.cases(&s)? {
        if case.label == w.case {
            let dropped: Vec<String> = case
                .hypotheses
                .iter()
                .filter(|h| !h.holds)
                .map(|h| h.name.clone())
                .collect();
            let dropped: Vec<&str> = dropped.iter().map(String::as_str).collect();
            return Ok(match case.evaluate_dropping(&dropped)? {
                Some(ev) => !ev.holds,
                None => false,
            });
        }
    }
    Ok(false)
}

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::corpus::{corpus, CorpusConfig, Instance};
use super::{check_subject, entry, registry, CheckReport, Status, Subject, TheoremEntry};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, RingSpec};
use crate::rings::{self, Ring};

const SUITES: &[&str] = &["qf-core", "semisimple", "tables"];

pub fn suite_names() -> &'static [&'static str] {
    SUITES
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    /// Overrides the suite's default rings.
    pub rings: Option<Vec<RingSpec>>,
    pub seed: u64,
    pub caps: Caps,
}

impl SuiteConfig {
    pub fn new(suite: &str, seed: u64) -> SuiteConfig {
        SuiteConfig {
            suite: suite.to_string(),
            rings: None,
            seed,
            caps: Caps::default(),
        }
    }

    /// The corpus the suite runs over.
    pub fn corpus_config(&self) -> Result<CorpusConfig> {
        let zmods = |ns: &[u64]| ns.iter().map(|&n| RingSpec::Zmod(n)).collect::<Vec<_>>();
        let (rings, max_card, samples) = match self.suite.as_str() {
            "qf-core" => (zmods(&[4, 6, 8, 9]), 8, 12),
            "semisimple" => (zmods(&[2, 3, 5, 6]), 6, 12),
            "tables" => (rings::NAMES.iter().map(|n| RingSpec::Named(n.to_string())).collect(), 4, 12),
            other => {
                return Err(Error::Input(format!(
                    "unknown suite `{other}` (known: {})",
                    SUITES.join(", ")
                )))
            }
        };
        Ok(CorpusConfig {
            rings: self.rings.clone().unwrap_or(rings),
            max_card,
            exhaustive: 16,
            samples,
            pair_card: 4,
            pair_samples: 12,
            seed: self.seed,
            caps: Some(self.caps),
            ..CorpusConfig::default()
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
    pub skipped: u64,
    pub error: u64,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::NotApplicable => s.not_applicable += 1,
                Status::Skipped => s.skipped += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub caps: Caps,
    pub rings: Vec<RingSpec>,
    pub instances: usize,
    pub summary: Summary,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }
}

fn ring_key(spec: &RingSpec) -> String {
    serde_json::to_string(spec).expect("serializable")
}

/// Builds each distinct ring once so instances share predicate caches.
fn ring_table(instances: &[Instance], caps: Caps) -> BTreeMap<String, Result<Ring>> {
    let mut out = BTreeMap::new();
    for i in instances {
        out.entry(ring_key(&i.document.ring))
            .or_insert_with(|| i.document.ring.build().map(|r| r.with_caps(caps)));
    }
    out
}

fn error_report(e: &TheoremEntry, label: &str, err: &Error) -> CheckReport {
    CheckReport {
        theorem: e.id.to_string(),
        instance: label.to_string(),
        status: match err {
            Error::CapExceeded { .. } => Status::Skipped,
            _ => Status::Error,
        },
        note: Some(err.to_string()),
        hypotheses: BTreeMap::new(),
        cases: Default::default(),
        certainty: crate::modules::Certainty::Exact,
        witnesses: Vec::new(),
        elapsed: Default::default(),
    }
}

fn run_instance(inst: &Instance, rings: &BTreeMap<String, Result<Ring>>, seed: u64) -> Vec<CheckReport> {
    let entries: Vec<&TheoremEntry> = registry().iter().filter(|e| e.kind == inst.kind).collect();
    let loaded = match &rings[&ring_key(&inst.document.ring)] {
        Ok(r) => inst.document.load_with(r),
        Err(e) => Err(e.clone()),
    };
    match loaded {
        Ok(l) => {
            let s = Subject::new(&l, &inst.document, seed);
            entries.iter().map(|e| check_subject(e, &s, &inst.label)).collect()
        }
        Err(err) => entries.iter().map(|e| error_report(e, &inst.label, &err)).collect(),
    }
}

/// Runs every registry entry over the suite's corpus. Instances are checked in
/// parallel; the report order is the corpus order, then registry order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let ccfg = cfg.corpus_config()?;
    let instances = corpus(&ccfg)?;
    let rings = ring_table(&instances, cfg.caps);
    let reports: Vec<CheckReport> = instances
        .par_iter()
        .map(|inst| run_instance(inst, &rings, cfg.seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(SuiteReport {
        suite: cfg.suite.clone(),
        seed: cfg.seed,
        caps: cfg.caps,
        rings: ccfg.rings,
        instances: instances.len(),
        summary: Summary::of(&reports),
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MineConfig {
    pub rings: Vec<RingSpec>,
    pub seed: u64,
    pub caps: Caps,
    /// Largest module cardinality in the searched corpus.
    pub max_card: u128,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            rings: rings::NAMES.iter().map(|n| RingSpec::Named(n.to_string())).collect(),
            seed: 0,
            caps: Caps::default(),
            max_card: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub theorem: String,
    pub instance: String,
    pub case: String,
    pub hypotheses: BTreeMap<String, bool>,
    pub witness: Value,
    pub document: InstanceDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MineReport {
    pub theorem: String,
    pub dropped: Vec<String>,
    pub rings: Vec<RingSpec>,
    pub seed: u64,
    pub caps: Caps,
    pub instances: u64,
    /// Cases whose hypotheses failed exactly on the dropped set.
    pub cases: u64,
    /// Instances skipped for exceeding caps or lacking support.
    pub skipped: u64,
    pub findings: Vec<Finding>,
}

struct Mined {
    cases: u64,
    skipped: bool,
    findings: Vec<Finding>,
}

fn mine_instance(e: &TheoremEntry, inst: &Instance, ring: &Result<Ring>, dropped: &[&str], seed: u64) -> Mined {
    let mut m = Mined {
        cases: 0,
        skipped: false,
        findings: Vec::new(),
    };
    let loaded = match ring {
        Ok(r) => inst.document.load_with(r),
        Err(e) => Err(e.clone()),
    };
    let Ok(l) = loaded else {
        m.skipped = true;
        return m;
    };
    let s = Subject::new(&l, &inst.document, seed);
    let cases = match e.cases(&s) {
        Ok(c) => c,
        Err(_) => {
            m.skipped = true;
            return m;
        }
    };
    for case in cases {
        let hypotheses: BTreeMap<String, bool> = case.hypotheses.iter().map(|h| (h.name.clone(), h.holds)).collect();
        let label = case.label.clone();
        match case.evaluate_dropping(dropped) {
            Ok(Some(ev)) => {
                m.cases += 1;
                if !ev.holds {
                    m.findings.push(Finding {
                        theorem: e.id.to_string(),
                        instance: inst.label.clone(),
                        case: label,
                        hypotheses,
                        witness: ev.witness.unwrap_or(Value::Null),
                        document: inst.document.clone(),
                    });
                }
            }
            Ok(None) => {}
            Err(_) => m.skipped = true,
        }
    }
    m
}

/// Searches the corpus of `cfg.rings` for cases where exactly the `dropped`
/// hypotheses fail and the conclusion does too.
pub fn mine_counterexamples(theorem_id: &str, dropped: &[String], cfg: &MineConfig) -> Result<MineReport> {
    let e = entry(theorem_id)?;
    if dropped.is_empty() {
        return Err(Error::Input("at least one hypothesis must be dropped".into()));
    }
    for d in dropped {
        if !e.hypotheses.contains(&d.as_str()) {
            return Err(Error::Input(format!(
                "{theorem_id} has no hypothesis `{d}` (hypotheses: {})",
                e.hypotheses.join(", ")
            )));
        }
    }
    let ccfg = CorpusConfig {
        rings: cfg.rings.clone(),
        max_card: cfg.max_card,
        seed: cfg.seed,
        caps: Some(cfg.caps),
        ..CorpusConfig::default()
    };
    let instances: Vec<Instance> = corpus(&ccfg)?.into_iter().filter(|i| i.kind == e.kind).collect();
    let rings = ring_table(&instances, cfg.caps);
    let names: Vec<&str> = dropped.iter().map(String::as_str).collect();
    let mined: Vec<Mined> = instances
        .par_iter()
        .map(|inst| mine_instance(e, inst, &rings[&ring_key(&inst.document.ring)], &names, cfg.seed))
        .collect();
    let mut report = MineReport {
        theorem: e.id.to_string(),
        dropped: dropped.to_vec(),
        rings: cfg.rings.clone(),
        seed: cfg.seed,
        caps: cfg.caps,
        instances: instances.len() as u64,
        cases: 0,
        skipped: 0,
        findings: Vec::new(),
    };
    for m in mined {
        report.cases += m.cases;
        report.skipped += m.skipped as u64;
        report.findings.extend(m.findings);
    }
    Ok(report)
}

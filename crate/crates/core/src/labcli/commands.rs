use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{parse_instance, Outcome};
use crate::alphacond::{satisfies_alpha, AlphaWitness};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, Loaded, RingSpec};
use crate::modules::{Certainty, Module, Side, Submodule};
use crate::pairings::{DensityVerdict, Pairing};
use crate::rings::{self, BaerWitness, Ring};
use crate::theoremlab::{
    self, check_subject, entry, mine_counterexamples, registry, run_suite, CheckReport, Kind, MineConfig, Status,
    Subject, SuiteConfig, Summary,
};

/// Largest number of submodules `analyze` tabulates when none are named.
const TABLE_LIMIT: usize = 64;

pub(super) struct Context {
    pub seed: Option<u64>,
    pub caps: Option<Caps>,
}

impl Context {
    /// Loads an instance with command-line caps and seed taking precedence.
    fn open(&self, path: &Path) -> Result<Opened> {
        let mut doc = parse_instance(path)?;
        if let Some(c) = self.caps {
            doc.config.get_or_insert_with(Default::default).caps = Some(c);
        }
        if let Some(seed) = self.seed {
            doc.config.get_or_insert_with(Default::default).seed = Some(seed);
        }
        Opened::new(doc, path.display().to_string())
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    fn caps(&self) -> Caps {
        self.caps.unwrap_or_default()
    }
}

/// A loaded document with its effective seed and caps.
pub struct Opened {
    pub document: InstanceDocument,
    pub loaded: Loaded,
    pub label: String,
    pub seed: u64,
    pub caps: Caps,
}

impl Opened {
    pub fn new(document: InstanceDocument, label: String) -> Result<Opened> {
        let seed = document.config.as_ref().and_then(|c| c.seed).unwrap_or(0);
        let caps = document.caps().unwrap_or_default();
        let loaded = document
            .load()
            .map_err(|e| Error::Input(format!("{label}: {e}")))?;
        Ok(Opened {
            document,
            loaded,
            label,
            seed,
            caps,
        })
    }
}

fn pick_pairing<'a>(l: &'a Loaded, name: Option<&str>) -> Result<(String, &'a Pairing)> {
    match name {
        Some(n) => l
            .pairings
            .get(n)
            .map(|p| (n.to_string(), p))
            .ok_or_else(|| Error::Input(format!("no pairing named `{n}`"))),
        None => {
            let p = l
                .pairing()
                .ok_or_else(|| Error::Input("instance has no pairing `P` and not exactly one pairing".into()))?;
            let n = l.pairings.iter().find(|(_, q)| std::ptr::eq(*q, p)).map(|(k, _)| k.clone());
            Ok((n.unwrap_or_default(), p))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummary {
    pub side: Side,
    pub rank: usize,
    pub cardinality: u128,
    pub invariant_factors: Option<Vec<u64>>,
    pub relations: Vec<Vec<u64>>,
}

impl ModuleSummary {
    fn of(m: &Module) -> ModuleSummary {
        ModuleSummary {
            side: m.side(),
            rank: m.rank(),
            cardinality: m.cardinality(),
            invariant_factors: m.invariant_factors(),
            relations: m.relations().generators(),
        }
    }
}

/// Generators of `s` reduced modulo the relations of `m`, zeros dropped.
fn gens(m: &Module, s: &Submodule) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for g in s.generators() {
        let r = m.reduce(&g);
        if !m.is_zero_element(&r) && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn show(gs: &[Vec<u64>]) -> String {
    if gs.is_empty() {
        return "0".into();
    }
    let items: Vec<String> = gs
        .iter()
        .map(|g| format!("({})", g.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("<{}>", items.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleRow {
    pub name: String,
    pub generators: Vec<Vec<u64>>,
    /// Order of `X` modulo the relations of `V`.
    pub order: u128,
    pub closure: Vec<Vec<u64>>,
    pub biperp: Vec<Vec<u64>>,
    /// `X^⊥ ⊆ W`.
    pub perp: Vec<Vec<u64>>,
    pub closed: bool,
    pub orthogonally_closed: bool,
    pub open: bool,
    /// Density of `X` in `V`.
    pub dense: DensityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionSummary {
    /// `|V / W^⊥|`.
    pub quotient_order: u128,
    /// `|*W|`.
    pub dual_order: u128,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub instance: String,
    pub pairing: String,
    pub ring: String,
    pub seed: u64,
    pub caps: Caps,
    pub v: ModuleSummary,
    pub w: ModuleSummary,
    pub beta: Vec<Vec<u64>>,
    /// `W^⊥ ⊆ V`.
    pub radical: Vec<Vec<u64>>,
    pub hausdorff: bool,
    pub dense: bool,
    pub kappa_injective: bool,
    pub chi_injective: bool,
    pub completion: CompletionSummary,
    pub submodules: Vec<SubmoduleRow>,
    /// Set when the submodule lattice was too large to tabulate in full.
    pub truncated: bool,
}

fn submodule_row(p: &Pairing, name: String, x: &Submodule) -> Result<SubmoduleRow> {
    let (v, w) = (p.v(), p.w());
    Ok(SubmoduleRow {
        name,
        generators: gens(v, x),
        order: x.cardinality() / v.relations().cardinality(),
        closure: gens(v, &p.closure(x)?),
        biperp: gens(v, &p.biperp(x)?),
        perp: gens(w, &p.perp_of_v_sub(x)?),
        closed: p.is_closed(x)?,
        orthogonally_closed: p.is_orthogonally_closed(x)?,
        open: p.is_open(x)?,
        dense: p.is_dense(x, &v.full_submodule())?,
    })
}

pub(super) fn analyze(ctx: &Context, path: &Path, pairing: Option<&str>) -> Result<Outcome> {
    let report = analyze_report(&ctx.open(path)?, pairing)?;
    let human = analyze_human(&report);
    Ok(Outcome::new(&report, human, false))
}

/// Closure, perp and density table of a pairing of the document.
pub fn analyze_report(o: &Opened, pairing: Option<&str>) -> Result<AnalyzeReport> {
    let loaded = &o.loaded;
    let (name, p) = pick_pairing(loaded, pairing)?;
    let completion = p.completion()?;
    let mut rows = Vec::new();
    for (sname, (of, x)) in &loaded.submodules {
        if loaded.modules.get(of) == Some(p.v()) {
            rows.push(submodule_row(p, sname.clone(), x)?);
        }
    }
    let mut truncated = false;
    if rows.is_empty() {
        match p.v().submodules() {
            Ok(all) if all.len() <= TABLE_LIMIT => {
                for (i, x) in all.iter().enumerate() {
                    rows.push(submodule_row(p, format!("X{i}"), x)?);
                }
            }
            Ok(_) | Err(Error::CapExceeded { .. }) => truncated = true,
            Err(e) => return Err(e),
        }
    }
    Ok(AnalyzeReport {
        instance: o.label.clone(),
        pairing: name,
        ring: loaded.ring.name().to_string(),
        seed: o.seed,
        caps: o.caps,
        v: ModuleSummary::of(p.v()),
        w: ModuleSummary::of(p.w()),
        beta: p.beta().to_vec(),
        radical: gens(p.v(), &p.radical()?),
        hausdorff: p.is_hausdorff()?,
        dense: p.is_dense_pairing()?,
        kappa_injective: p.kappa()?.1.is_injective()?,
        chi_injective: p.chi()?.1.is_injective()?,
        completion: CompletionSummary {
            quotient_order: completion.module.cardinality(),
            dual_order: completion.dual.module().cardinality(),
            injective: completion.injective,
            surjective: completion.surjective,
        },
        submodules: rows,
        truncated,
    })
}

fn analyze_human(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pairing {} over {} ({})", r.pairing, r.ring, r.instance);
    let _ = writeln!(s, "  |V| = {}  |W| = {}  beta = {:?}", r.v.cardinality, r.w.cardinality, r.beta);
    let _ = writeln!(s, "  W^⊥ = {}", show(&r.radical));
    let _ = writeln!(s, "  Hausdorff: {}  dense: {}", r.hausdorff, r.dense);
    let _ = writeln!(s, "  κ injective: {}  χ injective: {}", r.kappa_injective, r.chi_injective);
    let c = &r.completion;
    let _ = writeln!(
        s,
        "  completion V/W^⊥ -> *W: |V/W^⊥| = {}, |*W| = {}, injective {}, surjective {}",
        c.quotient_order, c.dual_order, c.injective, c.surjective
    );
    if !r.submodules.is_empty() {
        let _ = writeln!(s, "  submodules:");
    }
    for x in &r.submodules {
        let _ = writeln!(
            s,
            "    {}: X = {}  closure = {}  X^⊥⊥ = {}  X^⊥ = {}  closed {}  open {}  dense {}",
            x.name,
            show(&x.generators),
            show(&x.closure),
            show(&x.biperp),
            show(&x.perp),
            x.closed,
            x.open,
            x.dense.dense
        );
    }
    if r.truncated {
        let _ = writeln!(s, "  (submodule lattice too large to tabulate; name submodules in the instance)");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub instance: String,
    pub pairing: String,
    pub ring: String,
    pub seed: u64,
    pub caps: Caps,
    pub alpha: bool,
    pub certainty: Certainty,
    /// Test module and a nonzero kernel element of its α-map.
    pub witness: Option<AlphaWitness>,
    pub dense: bool,
    /// `χ: W -> V*` is injective.
    pub w_embeds: bool,
}

pub(super) fn alpha(ctx: &Context, path: &Path, pairing: Option<&str>) -> Result<Outcome> {
    let report = alpha_report(&ctx.open(path)?, pairing)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "pairing {} over {}: α-condition {} ({:?})",
        report.pairing,
        report.ring,
        if report.alpha { "holds" } else { "fails" },
        report.certainty
    );
    if let Some(w) = &report.witness {
        let _ = writeln!(
            s,
            "  witness: M = R^{} / {}, kernel element {:?} of M ⊗ W",
            w.test_rank,
            show(&w.test_relations),
            w.element
        );
    }
    let _ = writeln!(s, "  dense: {}  W ⊆ V*: {}", report.dense, report.w_embeds);
    Ok(Outcome::new(&report, s, false))
}

/// α-verdict of a pairing of the document.
pub fn alpha_report(o: &Opened, pairing: Option<&str>) -> Result<AlphaReport> {
    let (name, p) = pick_pairing(&o.loaded, pairing)?;
    let verdict = satisfies_alpha(p)?;
    Ok(AlphaReport {
        instance: o.label.clone(),
        pairing: name,
        ring: o.loaded.ring.name().to_string(),
        seed: o.seed,
        caps: o.caps,
        alpha: verdict.holds,
        certainty: verdict.certainty,
        witness: verdict.witness,
        dense: p.is_dense_pairing()?,
        w_embeds: p.chi()?.1.is_injective()?,
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::NotApplicable => "n/a",
        Status::Skipped => "skipped",
        Status::Error => "ERROR",
    }
}

fn failed(s: &Summary) -> bool {
    s.fail > 0 || s.error > 0
}

fn summary_line(s: &Summary) -> String {
    format!(
        "{} pass, {} fail, {} not applicable, {} skipped, {} error",
        s.pass, s.fail, s.not_applicable, s.skipped, s.error
    )
}

/// Lines for the reports that need attention.
fn problem_lines(out: &mut String, reports: &[CheckReport]) {
    for r in reports.iter().filter(|r| matches!(r.status, Status::Fail | Status::Error)) {
        let _ = writeln!(out, "  {:7} {:28} {}", status_word(r.status), r.theorem, r.instance);
        if let Some(n) = &r.note {
            let _ = writeln!(out, "          {n}");
        }
        for w in &r.witnesses {
            let _ = writeln!(out, "          case {}: {}", w.case, w.detail);
        }
    }
}

pub(super) fn suite(ctx: &Context, name: &str, rings: Option<Vec<RingSpec>>) -> Result<Outcome> {
    let cfg = SuiteConfig {
        rings,
        caps: ctx.caps(),
        ..SuiteConfig::new(name, ctx.seed())
    };
    let report = run_suite(&cfg)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "suite {} (seed {}): {} instances, {} checks",
        report.suite,
        report.seed,
        report.instances,
        report.reports.len()
    );
    let _ = writeln!(s, "  {}", summary_line(&report.summary));
    problem_lines(&mut s, &report.reports);
    Ok(Outcome::new(&report, s, failed(&report.summary)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceCheckReport {
    pub instance: String,
    pub seed: u64,
    pub caps: Caps,
    pub summary: Summary,
    pub reports: Vec<CheckReport>,
}

pub(super) fn check_instance(ctx: &Context, path: &Path, theorem: Option<&str>) -> Result<Outcome> {
    let report = check_report(&ctx.open(path)?, theorem)?;
    let mut s = String::new();
    let _ = writeln!(s, "{} (seed {}): {}", report.instance, report.seed, summary_line(&report.summary));
    for r in &report.reports {
        let _ = writeln!(s, "  {:7} {}", status_word(r.status), r.theorem);
    }
    problem_lines(&mut s, &report.reports);
    Ok(Outcome::new(&report, s, failed(&report.summary)))
}

/// Checks one registry entry, or every entry the document supports.
pub fn check_report(o: &Opened, theorem: Option<&str>) -> Result<InstanceCheckReport> {
    let entries: Vec<_> = match theorem {
        Some(id) => {
            let e = entry(id)?;
            if !e.kind.available(&o.loaded) {
                return Err(Error::Input(format!("{id} needs a {} instance", kind_name(e.kind))));
            }
            vec![e]
        }
        None => registry().iter().filter(|e| e.kind.available(&o.loaded)).collect(),
    };
    let subject = Subject::new(&o.loaded, &o.document, o.seed);
    let reports: Vec<CheckReport> = entries.iter().map(|e| check_subject(e, &subject, &o.label)).collect();
    Ok(InstanceCheckReport {
        instance: o.label.clone(),
        seed: o.seed,
        caps: o.caps,
        summary: Summary::of(&reports),
        reports,
    })
}

fn kind_name(k: Kind) -> String {
    serde_json::to_value(k)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub id: String,
    pub kind: Kind,
    pub hypotheses: Vec<String>,
    pub statement: String,
    pub scale_note: Option<String>,
}

pub(super) fn list() -> Outcome {
    let entries: Vec<EntrySummary> = registry()
        .iter()
        .map(|e| EntrySummary {
            id: e.id.to_string(),
            kind: e.kind,
            hypotheses: e.hypotheses.iter().map(|h| h.to_string()).collect(),
            statement: e.statement.to_string(),
            scale_note: e.scale_note.map(str::to_string),
        })
        .collect();
    let mut s = String::new();
    for e in &entries {
        let _ = writeln!(s, "{:28} [{}] {}", e.id, kind_name(e.kind), e.statement);
        if !e.hypotheses.is_empty() {
            let _ = writeln!(s, "{:28}   hypotheses: {}", "", e.hypotheses.join(", "));
        }
    }
    let _ = writeln!(s, "suites: {}", theoremlab::suite_names().join(", "));
    Outcome::new(&entries, s, false)
}

pub(super) fn mine(
    ctx: &Context,
    theorem: &str,
    dropped: &[String],
    rings: Option<Vec<RingSpec>>,
    max_card: u128,
) -> Result<Outcome> {
    let defaults = MineConfig::default();
    let cfg = MineConfig {
        rings: rings.unwrap_or(defaults.rings),
        seed: ctx.seed(),
        caps: ctx.caps(),
        max_card,
    };
    let report = mine_counterexamples(theorem, dropped, &cfg)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} without {}: {} instances, {} cases, {} skipped, {} counterexamples",
        report.theorem,
        report.dropped.join(", "),
        report.instances,
        report.cases,
        report.skipped,
        report.findings.len()
    );
    for f in &report.findings {
        let _ = writeln!(s, "  {} [{}]: {}", f.instance, f.case, f.witness);
    }
    let found = !report.findings.is_empty();
    Ok(Outcome::new(&report, s, found))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingRow {
    pub ring: RingSpec,
    pub name: String,
    pub size: u64,
    pub commutative: bool,
    pub self_injective: Option<bool>,
    pub left_self_injective: Option<bool>,
    /// A map from a right ideal not given by left multiplication.
    pub baer_witness: Option<BaerWitness>,
    pub kasch: Option<bool>,
    pub cogenerator: Option<bool>,
    pub qf: Option<bool>,
    pub semisimple: Option<bool>,
    pub hereditary: Option<bool>,
    pub noetherian: bool,
    pub artinian: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingsReport {
    pub caps: Caps,
    pub rings: Vec<RingRow>,
}

fn fill(row: &mut RingRow, r: &Ring) -> Result<()> {
    let si = r.is_self_injective()?;
    row.self_injective = Some(si.holds);
    row.baer_witness = si.witness;
    row.left_self_injective = Some(r.opposite().is_self_injective()?.holds);
    row.kasch = Some(r.is_kasch()?);
    row.cogenerator = Some(r.is_cogenerator_ring()?);
    row.qf = Some(r.is_qf()?);
    row.semisimple = Some(r.is_semisimple()?);
    row.hereditary = Some(r.is_hereditary()?);
    Ok(())
}

fn ring_row(spec: &RingSpec, caps: Caps) -> Result<(RingRow, bool)> {
    let r = spec.build()?.with_caps(caps);
    let mut row = RingRow {
        ring: spec.clone(),
        name: r.name().to_string(),
        size: r.size(),
        commutative: r.is_commutative(),
        self_injective: None,
        left_self_injective: None,
        baer_witness: None,
        kasch: None,
        cogenerator: None,
        qf: None,
        semisimple: None,
        hereditary: None,
        noetherian: r.is_noetherian(),
        artinian: r.is_artinian(),
        note: None,
    };
    let broken = match fill(&mut row, &r) {
        Ok(()) => false,
        Err(e) => {
            let internal = matches!(e, Error::Internal(_));
            row.note = Some(e.to_string());
            internal
        }
    };
    Ok((row, broken))
}

/// `Z/n` for `2 <= n <= 12` and the library rings.
pub fn default_rings() -> Vec<RingSpec> {
    (2..=12)
        .map(RingSpec::Zmod)
        .chain(rings::NAMES.iter().map(|n| RingSpec::Named(n.to_string())))
        .collect()
}

/// Predicate table; the flag is set when some ring hit an internal inconsistency.
pub fn ring_table(specs: &[RingSpec], caps: Caps) -> Result<(RingsReport, bool)> {
    let mut rows = Vec::new();
    let mut broken = false;
    for spec in specs {
        let (row, b) = ring_row(spec, caps)?;
        broken |= b;
        rows.push(row);
    }
    Ok((RingsReport { caps, rings: rows }, broken))
}

pub(super) fn rings(ctx: &Context, specs: Option<Vec<RingSpec>>) -> Result<Outcome> {
    let specs = specs.unwrap_or_else(default_rings);
    let (report, broken) = ring_table(&specs, ctx.caps())?;
    let rows = &report.rings;
    let yn = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:18} {:>4}  {:5} {:5} {:5} {:5} {:5} {:5} {:5}",
        "ring", "size", "comm", "si", "si-l", "kasch", "qf", "ss", "hered"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:18} {:>4}  {:5} {:5} {:5} {:5} {:5} {:5} {:5}",
            r.name,
            r.size,
            if r.commutative { "yes" } else { "no" },
            yn(r.self_injective),
            yn(r.left_self_injective),
            yn(r.kasch),
            yn(r.qf),
            yn(r.semisimple),
            yn(r.hereditary)
        );
        if let Some(w) = &r.baer_witness {
            let _ = writeln!(s, "{:18} Baer witness: ideal {:?}, map {:?}", "", w.ideal, w.map);
        }
        if let Some(n) = &r.note {
            let _ = writeln!(s, "{:18} {n}", "");
        }
    }
    Ok(Outcome::new(&report, s, broken))
}

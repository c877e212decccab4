//! Instance documents: a ring plus named modules, pairings, submodules and maps.
//!
//! Documents are JSON. Names are resolved when the document is loaded, so a
//! parsed document is always structurally valid but may still fail to load.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::modules::{DualModule, Module, Morphism, Side, Submodule};
use crate::pairings::Pairing;
use crate::rings::{self, Backend, Ring, TableRing};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    Zmod(u64),
    Named(String),
    Table(NamedTable),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedTable {
    pub name: String,
    pub table: TableRing,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    /// Invariant factors `d_1 | d_2 | ...` (`Z/n` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<u64>>>,
    /// The dual `Hom(M, R)` of another module, on the opposite side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_of: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    /// `beta[p][j] = <g_p, h_j>` on the generators of `V` and `W`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<u64>>>,
    /// `(*W, W)` for the named left module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<String>,
    /// `(N, N*)` for the named right module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_right: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleSpec {
    pub of: String,
    pub generators: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub images: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pairings: BTreeMap<String, PairingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub submodules: BTreeMap<String, SubmoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
}

/// A document with every name resolved.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub ring: Ring,
    pub modules: BTreeMap<String, Module>,
    pub pairings: BTreeMap<String, Pairing>,
    /// Submodule together with the name of its module.
    pub submodules: BTreeMap<String, (String, Submodule)>,
    pub maps: BTreeMap<String, Morphism>,
}

impl Loaded {
    /// The object called `preferred`, or the only one if there is exactly one.
    fn pick<'a, T>(map: &'a BTreeMap<String, T>, preferred: &str) -> Option<&'a T> {
        map.get(preferred).or_else(|| if map.len() == 1 { map.values().next() } else { None })
    }

    pub fn pairing(&self) -> Option<&Pairing> {
        Loaded::pick(&self.pairings, "P")
    }

    pub fn module(&self) -> Option<&Module> {
        Loaded::pick(&self.modules, "N")
    }

    pub fn map(&self) -> Option<&Morphism> {
        Loaded::pick(&self.maps, "theta")
    }

    pub fn pairing_pair(&self) -> Option<(&Pairing, &Pairing)> {
        Some((self.pairings.get("P")?, self.pairings.get("Q")?))
    }

    pub fn module_pair(&self) -> Option<(&Module, &Module)> {
        Some((self.modules.get("N")?, self.modules.get("N2")?))
    }
}

fn input(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{path}: {msg}"))
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Input(m) => Error::Input(m),
        other => input(path, other),
    }
}

impl RingSpec {
    pub fn describe(ring: &Ring) -> RingSpec {
        match ring.backend() {
            Backend::ZMod(n) => RingSpec::Zmod(*n),
            Backend::Table(t) => match rings::named(ring.name()) {
                Ok(r) if r.backend() == ring.backend() => RingSpec::Named(ring.name().to_string()),
                _ => RingSpec::Table(NamedTable {
                    name: ring.name().to_string(),
                    table: t.clone(),
                }),
            },
        }
    }

    pub fn build(&self) -> Result<Ring> {
        match self {
            RingSpec::Zmod(n) => Ring::zmod(*n).map_err(at("ring.zmod")),
            RingSpec::Named(name) => rings::named(name).map_err(at("ring.named")),
            RingSpec::Table(t) => Ring::table(&t.name, t.table.clone()).map_err(at("ring.table")),
        }
    }
}

impl ModuleSpec {
    pub fn factors(side: Side, factors: &[u64]) -> ModuleSpec {
        ModuleSpec {
            side: Some(side),
            factors: Some(factors.to_vec()),
            ..ModuleSpec::default()
        }
    }

    /// Generators and relations of an existing module.
    pub fn describe(m: &Module) -> ModuleSpec {
        ModuleSpec {
            side: Some(m.side()),
            gens: Some(m.rank()),
            relations: Some(m.relations().generators()),
            ..ModuleSpec::default()
        }
    }
}

impl InstanceDocument {
    pub fn new(ring: RingSpec) -> InstanceDocument {
        InstanceDocument {
            ring,
            modules: BTreeMap::new(),
            pairings: BTreeMap::new(),
            submodules: BTreeMap::new(),
            maps: BTreeMap::new(),
            config: None,
        }
    }

    pub fn from_json(text: &str) -> Result<InstanceDocument> {
        serde_json::from_str(text).map_err(|e| {
            let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
            if line.is_empty() {
                Error::Input(e.to_string())
            } else {
                Error::Input(format!("{e}\n  | {line}"))
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn with_module(mut self, name: &str, spec: ModuleSpec) -> Self {
        self.modules.insert(name.to_string(), spec);
        self
    }

    pub fn with_pairing(mut self, name: &str, v: &str, w: &str, beta: Vec<Vec<u64>>) -> Self {
        self.pairings.insert(
            name.to_string(),
            PairingSpec {
                v: Some(v.to_string()),
                w: Some(w.to_string()),
                beta: Some(beta),
                ..PairingSpec::default()
            },
        );
        self
    }

    pub fn with_map(mut self, name: &str, source: &str, target: &str, images: Vec<Vec<u64>>) -> Self {
        self.maps.insert(
            name.to_string(),
            MapSpec {
                source: source.to_string(),
                target: target.to_string(),
                images,
            },
        );
        self
    }

    pub fn with_submodule(mut self, name: &str, of: &str, generators: Vec<Vec<u64>>) -> Self {
        self.submodules.insert(
            name.to_string(),
            SubmoduleSpec {
                of: of.to_string(),
                generators,
            },
        );
        self
    }

    pub fn caps(&self) -> Option<Caps> {
        self.config.as_ref().and_then(|c| c.caps)
    }

    pub fn load(&self) -> Result<Loaded> {
        let ring = self.ring.build()?;
        let ring = match self.caps() {
            Some(c) => ring.with_caps(c),
            None => ring,
        };
        self.load_with(&ring)
    }

    /// Loads against an already built ring (sharing its predicate cache), which
    /// must be the ring the document describes.
    pub fn load_with(&self, ring: &Ring) -> Result<Loaded> {
        let mut modules = BTreeMap::new();
        for name in self.modules.keys() {
            self.resolve_module(ring, name, &mut modules, &mut BTreeSet::new())?;
        }
        let mut pairings = BTreeMap::new();
        for (name, spec) in &self.pairings {
            let path = format!("pairings.{name}");
            pairings.insert(name.clone(), self.build_pairing(&path, spec, &modules)?);
        }
        let mut submodules = BTreeMap::new();
        for (name, spec) in &self.submodules {
            let path = format!("submodules.{name}");
            let m = lookup(&modules, &spec.of, &format!("{path}.of"))?;
            check_rows(&format!("{path}.generators"), &spec.generators, None, m.rank())?;
            check_entries(&format!("{path}.generators"), ring, &spec.generators)?;
            let s = m.span(&spec.generators).map_err(at(&path))?;
            submodules.insert(name.clone(), (spec.of.clone(), s));
        }
        let mut maps = BTreeMap::new();
        for (name, spec) in &self.maps {
            let path = format!("maps.{name}");
            let s = lookup(&modules, &spec.source, &format!("{path}.source"))?;
            let t = lookup(&modules, &spec.target, &format!("{path}.target"))?;
            let ipath = format!("{path}.images");
            check_rows(&ipath, &spec.images, Some(s.rank()), t.rank())?;
            check_entries(&ipath, ring, &spec.images)?;
            maps.insert(name.clone(), Morphism::new(s, t, spec.images.clone()).map_err(at(&path))?);
        }
        Ok(Loaded {
            ring: ring.clone(),
            modules,
            pairings,
            submodules,
            maps,
        })
    }

    fn resolve_module(
        &self,
        ring: &Ring,
        name: &str,
        done: &mut BTreeMap<String, Module>,
        visiting: &mut BTreeSet<String>,
    ) -> Result<Module> {
        if let Some(m) = done.get(name) {
            return Ok(m.clone());
        }
        let path = format!("modules.{name}");
        let spec = self
            .modules
            .get(name)
            .ok_or_else(|| input(&path, "no such module"))?;
        if !visiting.insert(name.to_string()) {
            return Err(input(&path, "circular dual_of reference"));
        }
        let m = match (&spec.dual_of, &spec.factors, spec.gens) {
            (Some(of), None, None) => {
                if spec.relations.is_some() || spec.side.is_some() {
                    return Err(input(&path, "dual_of excludes side and relations"));
                }
                if !self.modules.contains_key(of) {
                    return Err(input(&format!("{path}.dual_of"), format!("unknown module `{of}`")));
                }
                let base = self.resolve_module(ring, of, done, visiting)?;
                DualModule::new(&base).map_err(at(&path))?.module().clone()
            }
            (None, Some(factors), None) => {
                if spec.relations.is_some() {
                    return Err(input(&path, "factors excludes relations"));
                }
                let side = spec.side.ok_or_else(|| input(&format!("{path}.side"), "missing"))?;
                Module::from_factors(ring, side, factors).map_err(at(&format!("{path}.factors")))?
            }
            (None, None, Some(gens)) => {
                let side = spec.side.ok_or_else(|| input(&format!("{path}.side"), "missing"))?;
                let rels = spec.relations.clone().unwrap_or_default();
                let rpath = format!("{path}.relations");
                check_rows(&rpath, &rels, None, gens)?;
                check_entries(&rpath, ring, &rels)?;
                Module::fp_module(ring, side, gens, &rels).map_err(at(&path))?
            }
            _ => return Err(input(&path, "give exactly one of factors, gens (with relations) or dual_of")),
        };
        visiting.remove(name);
        done.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn build_pairing(&self, path: &str, spec: &PairingSpec, modules: &BTreeMap<String, Module>) -> Result<Pairing> {
        let explicit = spec.v.is_some() || spec.w.is_some() || spec.beta.is_some();
        match (&spec.canonical, &spec.canonical_right, explicit) {
            (Some(w), None, false) => {
                let m = lookup(modules, w, &format!("{path}.canonical"))?;
                Ok(Pairing::canonical(m).map_err(at(path))?.1)
            }
            (None, Some(n), false) => {
                let m = lookup(modules, n, &format!("{path}.canonical_right"))?;
                Ok(Pairing::canonical_right(m).map_err(at(path))?.1)
            }
            (None, None, true) => {
                let v = lookup(modules, spec.v.as_deref().unwrap_or(""), &format!("{path}.v"))?;
                let w = lookup(modules, spec.w.as_deref().unwrap_or(""), &format!("{path}.w"))?;
                let bpath = format!("{path}.beta");
                let beta = spec.beta.clone().ok_or_else(|| input(&bpath, "missing"))?;
                check_rows(&bpath, &beta, Some(v.rank()), w.rank())?;
                check_entries(&bpath, v.ring(), &beta)?;
                Pairing::new(v, w, beta).map_err(at(&bpath))
            }
            _ => Err(input(path, "give either v, w and beta, or one of canonical / canonical_right")),
        }
    }
}

fn lookup<'a>(modules: &'a BTreeMap<String, Module>, name: &str, path: &str) -> Result<&'a Module> {
    modules
        .get(name)
        .ok_or_else(|| input(path, format!("unknown module `{name}`")))
}

fn check_rows(path: &str, rows: &[Vec<u64>], count: Option<usize>, width: usize) -> Result<()> {
    if let Some(c) = count {
        if rows.len() != c {
            return Err(input(path, format!("expected {c} rows, found {}", rows.len())));
        }
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(input(path, format!("row {i} has {} entries, expected {width}", r.len())));
        }
    }
    Ok(())
}

fn check_entries(path: &str, ring: &Ring, rows: &[Vec<u64>]) -> Result<()> {
    for r in rows {
        if let Some(x) = r.iter().find(|&&x| x >= ring.size()) {
            return Err(input(path, format!("entry {x} is not an element of {}", ring.name())));
        }
    }
    Ok(())
}

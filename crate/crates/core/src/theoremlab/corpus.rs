//! Deterministic instance corpus: module shapes, pairings, maps and pairs of
//! pairings over each configured ring.

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Kind;
use crate::caps::Caps;
use crate::error::Result;
use crate::instance::{InstanceDocument, ModuleSpec, RingSpec};
use crate::modules::{all_morphisms, Module, Side};
use crate::pairings::Pairing;
use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub rings: Vec<RingSpec>,
    /// Most invariant factors per module over `Z/n`.
    pub max_factors: usize,
    /// Largest `|V|`, `|W|` (and module) cardinality.
    pub max_card: u128,
    /// β is enumerated exhaustively when `|V| |W|` is at most this.
    pub exhaustive: u128,
    /// Seeded β samples per `(V, W)` shape otherwise.
    pub samples: usize,
    /// Largest `|V|`, `|W|` in pairs of pairings and pairs of modules.
    pub pair_card: u128,
    /// Most pairs of pairings per ring.
    pub pair_samples: usize,
    pub seed: u64,
    pub caps: Option<Caps>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            rings: Vec::new(),
            max_factors: 2,
            max_card: 16,
            exhaustive: 64,
            samples: 200,
            pair_card: 6,
            pair_samples: 40,
            seed: 0,
            caps: None,
        }
    }
}

/// One corpus member; `kind` selects which registry entries run on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    pub kind: Kind,
    pub document: InstanceDocument,
}

fn divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// Invariant-factor chains `d1 | d2 | ...` of divisors of `n`, shortest first.
pub fn shapes(n: u64, max_factors: usize, max_card: u128) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for s in &frontier {
            let card: u128 = s.iter().map(|&d| d as u128).product();
            for d in divisors(n) {
                if s.last().is_some_and(|&l| d % l != 0) || card * d as u128 > max_card {
                    continue;
                }
                let mut t = s.clone();
                t.push(d);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn card(shape: &[u64]) -> u128 {
    shape.iter().map(|&d| d as u128).product()
}

/// Every admissible β for `Z/n`-modules of the given shapes, or a seeded sample.
fn zmod_betas(n: u64, v: &[u64], w: &[u64], cfg: &CorpusConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<Vec<u64>>> {
    let steps: Vec<Vec<(u64, u64)>> = v
        .iter()
        .map(|&d| w.iter().map(|&e| (n / gcd(d, e), gcd(d, e))).collect())
        .collect();
    let total: u128 = steps.iter().flatten().map(|&(_, c)| c as u128).product();
    let make = |mut idx: u128| -> Vec<Vec<u64>> {
        steps
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(step, count)| {
                        let k = (idx % count as u128) as u64;
                        idx /= count as u128;
                        k * step % n
                    })
                    .collect()
            })
            .collect()
    };
    if card(v) * card(w) <= cfg.exhaustive || total <= cfg.samples as u128 {
        return (0..total).map(make).collect();
    }
    let mut picked = BTreeSet::new();
    picked.insert(0u128);
    while picked.len() < cfg.samples {
        picked.insert(rng.gen_range(0..total));
    }
    picked.into_iter().map(make).collect()
}

fn label_of(ring: &str, parts: &[(&str, String)]) -> String {
    let mut s = ring.to_string();
    for (k, v) in parts {
        s.push_str(&format!(" {k}={v}"));
    }
    s
}

fn compact<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn zmod_corpus(n: u64, spec: &RingSpec, cfg: &CorpusConfig, out: &mut Vec<Instance>) -> Result<()> {
    let ring_label = format!("zmod({n})");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ n.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let doc = || InstanceDocument::new(spec.clone());
    out.push(Instance {
        label: ring_label.clone(),
        kind: Kind::Ring,
        document: doc(),
    });
    let all = shapes(n, cfg.max_factors, cfg.max_card);
    for s in &all {
        out.push(Instance {
            label: label_of(&ring_label, &[("N", compact(s))]),
            kind: Kind::Module,
            document: doc().with_module("N", ModuleSpec::factors(Side::Right, s)),
        });
    }
    for v in &all {
        for w in &all {
            for beta in zmod_betas(n, v, w, cfg, &mut rng) {
                out.push(Instance {
                    label: label_of(&ring_label, &[("V", compact(v)), ("W", compact(w)), ("beta", compact(&beta))]),
                    kind: Kind::Pairing,
                    document: doc()
                        .with_module("V", ModuleSpec::factors(Side::Right, v))
                        .with_module("W", ModuleSpec::factors(Side::Left, w))
                        .with_pairing("P", "V", "W", beta),
                });
            }
        }
    }
    let ring = spec.build()?;
    let cyclic: Vec<u64> = divisors(n).into_iter().filter(|&d| d as u128 <= cfg.max_card).collect();
    for &d in &cyclic {
        for &e in &cyclic {
            let src = Module::from_factors(&ring, Side::Left, &[d])?;
            let tgt = Module::from_factors(&ring, Side::Left, &[e])?;
            for m in all_morphisms(&src, &tgt)? {
                out.push(Instance {
                    label: label_of(&ring_label, &[("W'", compact(&[d])), ("W", compact(&[e])), ("theta", compact(&m.images()))]),
                    kind: Kind::Map,
                    document: doc()
                        .with_module("Wp", ModuleSpec::factors(Side::Left, &[d]))
                        .with_module("W", ModuleSpec::factors(Side::Left, &[e]))
                        .with_map("theta", "Wp", "W", m.images().to_vec()),
                });
            }
        }
    }
    let small: Vec<&Vec<u64>> = all.iter().filter(|s| card(s) <= cfg.pair_card).collect();
    for a in &small {
        for b in &small {
            out.push(Instance {
                label: label_of(&ring_label, &[("N", compact(a)), ("N2", compact(b))]),
                kind: Kind::ModulePair,
                document: doc()
                    .with_module("N", ModuleSpec::factors(Side::Left, a))
                    .with_module("N2", ModuleSpec::factors(Side::Left, b)),
            });
        }
    }
    let mut small_pairings = Vec::new();
    for v in &small {
        for w in &small {
            for beta in zmod_betas(n, v, w, cfg, &mut rng) {
                small_pairings.push(((*v).clone(), (*w).clone(), beta));
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..small_pairings.len() {
        for j in 0..small_pairings.len() {
            pairs.push((i, j));
        }
    }
    if pairs.len() > cfg.pair_samples {
        let mut keep = BTreeSet::new();
        while keep.len() < cfg.pair_samples {
            keep.insert(rng.gen_range(0..pairs.len()));
        }
        pairs = keep.into_iter().map(|k| pairs[k]).collect();
    }
    for (i, j) in pairs {
        let (v, w, b) = &small_pairings[i];
        let (v2, w2, b2) = &small_pairings[j];
        out.push(Instance {
            label: label_of(
                &ring_label,
                &[("P", compact(&(v, w, b))), ("Q", compact(&(v2, w2, b2)))],
            ),
            kind: Kind::PairingPair,
            document: doc()
                .with_module("V", ModuleSpec::factors(Side::Right, v))
                .with_module("W", ModuleSpec::factors(Side::Left, w))
                .with_module("V2", ModuleSpec::factors(Side::Right, v2))
                .with_module("W2", ModuleSpec::factors(Side::Left, w2))
                .with_pairing("P", "V", "W", b.clone())
                .with_pairing("Q", "V2", "W2", b2.clone()),
        });
    }
    Ok(())
}

/// Cyclic modules `R/I` of one side, `R` itself included, up to `max_card`.
fn cyclic_modules(ring: &Ring, side: Side, max_card: u128) -> Result<Vec<Module>> {
    let free = Module::free(ring, side, 1)?;
    let mut out = Vec::new();
    for i in free.submodules()? {
        let m = Module::fp_module(ring, side, 1, &i.generators())?;
        if m.cardinality() <= max_card && m.cardinality() > 1 {
            out.push(m);
        }
    }
    Ok(out)
}

fn table_corpus(spec: &RingSpec, cfg: &CorpusConfig, out: &mut Vec<Instance>) -> Result<()> {
    let ring = spec.build()?;
    let ring = match cfg.caps {
        Some(c) => ring.with_caps(c),
        None => ring,
    };
    let ring_label = ring.name().to_string();
    let doc = || InstanceDocument::new(spec.clone());
    out.push(Instance {
        label: ring_label.clone(),
        kind: Kind::Ring,
        document: doc(),
    });
    let rights = cyclic_modules(&ring, Side::Right, cfg.max_card)?;
    let lefts = cyclic_modules(&ring, Side::Left, cfg.max_card)?;
    let rel = |m: &Module| compact(&m.relations().generators());
    for m in rights.iter().chain(&lefts) {
        out.push(Instance {
            label: label_of(&ring_label, &[("side", format!("{:?}", m.side()).to_lowercase()), ("N", rel(m))]),
            kind: Kind::Module,
            document: doc().with_module("N", ModuleSpec::describe(m)),
        });
    }
    for v in &rights {
        for w in &lefts {
            for b in ring.elements() {
                let beta = vec![vec![b]];
                if Pairing::new(v, w, beta.clone()).is_err() {
                    continue;
                }
                out.push(Instance {
                    label: label_of(&ring_label, &[("V", rel(v)), ("W", rel(w)), ("beta", compact(&beta))]),
                    kind: Kind::Pairing,
                    document: doc()
                        .with_module("V", ModuleSpec::describe(v))
                        .with_module("W", ModuleSpec::describe(w))
                        .with_pairing("P", "V", "W", beta),
                });
            }
        }
    }
    for src in &lefts {
        for tgt in &lefts {
            for m in all_morphisms(src, tgt)? {
                out.push(Instance {
                    label: label_of(&ring_label, &[("W'", rel(src)), ("W", rel(tgt)), ("theta", compact(&m.images()))]),
                    kind: Kind::Map,
                    document: doc()
                        .with_module("Wp", ModuleSpec::describe(src))
                        .with_module("W", ModuleSpec::describe(tgt))
                        .with_map("theta", "Wp", "W", m.images().to_vec()),
                });
            }
        }
    }
    Ok(())
}

/// Every instance for the configured rings, in a fixed order.
pub fn corpus(cfg: &CorpusConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for spec in &cfg.rings {
        match spec {
            RingSpec::Zmod(n) => zmod_corpus(*n, spec, cfg, &mut out)?,
            _ => table_corpus(spec, cfg, &mut out)?,
        }
    }
    if let Some(c) = cfg.caps {
        for inst in &mut out {
            inst.document.config = Some(crate::instance::RunConfig {
                caps: Some(c),
                seed: Some(cfg.seed),
            });
        }
    }
    Ok(out)
}

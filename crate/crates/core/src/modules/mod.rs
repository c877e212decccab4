//! Finitely presented one-sided modules `R^k / Rel` and their constructions.
//!
//! A module is stored as its relation submodule `Rel ⊆ R^k`; elements are
//! canonical coset representatives in `R^k`, and a submodule of the module is a
//! [`Submodule`] of `R^k` containing `Rel`. Right modules take scalars on the
//! right, so a map is determined by generator images and acts by
//! `x -> Σ images[i] x_i`; left modules act by `x -> Σ x_i images[i]`.

mod construct;
mod linear;
mod predicates;
mod submodule;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::exactlin;
use crate::rings::Ring;

pub use construct::{all_morphisms, DualModule, HomModule, TensorProduct};
pub use linear::LinearMap;
pub use predicates::{
    family_of_tests, Certainty, FlatWitness, PurityWitness, TestFamily, Verdict,
};
pub use submodule::{Action, Submodule};
pub(crate) use submodule::{vadd, vscale, vsub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn action(self) -> Action {
        match self {
            Side::Left => Action::Left,
            Side::Right => Action::Right,
        }
    }
}

/// Isomorphism-invariant summary of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Canonical {
    /// Invariant factors `d_1 | d_2 | …` (`Z/n` backend).
    Chain(Vec<u64>),
    /// Number of cosets (table backend).
    Order(u128),
}

/// A finitely presented module `R^k / Rel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    ring: Ring,
    side: Side,
    rel: Submodule,
}

impl Module {
    pub fn new(side: Side, rel: Submodule) -> Module {
        Module {
            ring: rel.ring().clone(),
            side,
            rel,
        }
    }

    /// `R^gens` modulo the submodule spanned by `relations`.
    pub fn fp_module(ring: &Ring, side: Side, gens: usize, relations: &[Vec<u64>]) -> Result<Module> {
        for (i, r) in relations.iter().enumerate() {
            if r.len() != gens {
                return Err(Error::Contract(format!(
                    "relation {i} has {} entries for {gens} generators",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= ring.size()) {
                return Err(Error::Input(format!("relation {i}: {x} is not a ring element")));
            }
        }
        let rel = Submodule::span(ring, gens, relations, side.action())?;
        Ok(Module::new(side, rel))
    }

    pub fn free(ring: &Ring, side: Side, k: usize) -> Result<Module> {
        Module::fp_module(ring, side, k, &[])
    }

    pub fn zero(ring: &Ring, side: Side) -> Module {
        Module::fp_module(ring, side, 0, &[]).expect("rank zero")
    }

    /// `⊕ Z/d_i` over `Z/n`; each `d_i` must divide `n`.
    pub fn from_factors(ring: &Ring, side: Side, factors: &[u64]) -> Result<Module> {
        let n = ring
            .modulus()
            .ok_or_else(|| Error::Unsupported("cyclic decompositions need Z/n".into()))?;
        let k = factors.len();
        let mut rels = Vec::new();
        for (i, &d) in factors.iter().enumerate() {
            if d == 0 || n % d != 0 {
                return Err(Error::Contract(format!("{d} does not divide {n}")));
            }
            let mut r = vec![0; k];
            r[i] = d % n;
            rels.push(r);
        }
        Module::fp_module(ring, side, k, &rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.rel.rank()
    }

    pub fn relations(&self) -> &Submodule {
        &self.rel
    }

    pub fn cardinality(&self) -> u128 {
        self.rel.index()
    }

    /// The same presentation viewed from the other side (only meaningful over commutative rings).
    pub fn with_side(&self, side: Side) -> Result<Module> {
        if side != self.side && !self.ring.is_commutative() {
            return Err(Error::Unsupported(
                "switching sides needs a commutative ring".into(),
            ));
        }
        Ok(Module::new(side, self.rel.clone()))
    }

    /// Elements as canonical representatives, in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        cap_check("module elements", self.cardinality(), self.ring.caps().elements)?;
        self.rel.coset_representatives()
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        self.rel.reduce(v)
    }

    pub fn is_zero_element(&self, v: &[u64]) -> bool {
        self.rel.contains(v)
    }

    /// The `i`-th generator as an element.
    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut e = vec![self.ring.zero(); self.rank()];
        e[i] = self.ring.one();
        self.reduce(&e)
    }

    /// `v · r` for right modules, `r · v` for left modules.
    pub fn scale(&self, v: &[u64], r: u64) -> Vec<u64> {
        self.reduce(&vscale(&self.ring, v, r, self.side.action()))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.reduce(&vadd(&self.ring, a, b))
    }

    pub fn invariant_factors(&self) -> Option<Vec<u64>> {
        let h = self.rel.howell()?;
        if self.rank() == 0 {
            return Some(Vec::new());
        }
        Some(exactlin::invariant_factors(h))
    }

    pub fn canonical(&self) -> Canonical {
        match self.invariant_factors() {
            Some(c) => Canonical::Chain(c),
            None => Canonical::Order(self.cardinality()),
        }
    }

    /// Isomorphism test: invariant factors over `Z/n`, exhaustive search otherwise.
    pub fn is_isomorphic(&self, other: &Module) -> Result<bool> {
        if self.cardinality() != other.cardinality() || self.side != other.side {
            return Ok(false);
        }
        if let (Some(a), Some(b)) = (self.invariant_factors(), other.invariant_factors()) {
            return Ok(a == b);
        }
        Ok(construct::find_isomorphism(self, other)?.is_some())
    }

    /// Least submodule containing `gens` (and the relations).
    pub fn span(&self, gens: &[Vec<u64>]) -> Result<Submodule> {
        let s = Submodule::span(&self.ring, self.rank(), gens, self.side.action())?;
        Ok(s.sum(&self.rel))
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.rel.clone()
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule::full(&self.ring, self.rank()).expect("ambient already within caps")
    }

    /// Every submodule, smallest first.
    pub fn submodules(&self) -> Result<Vec<Submodule>> {
        let reps = self.elements()?;
        let mut cyclic: Vec<Submodule> = Vec::new();
        let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
        for v in &reps {
            let c = self.span(std::slice::from_ref(v))?;
            if seen.insert(c.key(), ()).is_none() {
                cyclic.push(c);
            }
        }
        let mut all: HashMap<Vec<u64>, Submodule> = HashMap::new();
        all.insert(self.rel.key(), self.rel.clone());
        let mut frontier = vec![self.rel.clone()];
        while let Some(s) = frontier.pop() {
            for c in &cyclic {
                if c.is_subset(&s) {
                    continue;
                }
                let t = s.sum(c);
                let key = t.key();
                if !all.contains_key(&key) {
                    cap_check("submodule count", all.len() as u128 + 1, self.ring.caps().search)?;
                    all.insert(key, t.clone());
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<(u128, Vec<u64>, Submodule)> = all
            .into_iter()
            .map(|(k, s)| (s.cardinality(), k, s))
            .collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(out.into_iter().map(|t| t.2).collect())
    }

    /// `M / S` together with the projection.
    pub fn quotient(&self, s: &Submodule) -> Result<(Module, Morphism)> {
        if !self.rel.is_subset(s) {
            return Err(Error::Contract("quotient by a set not containing the relations".into()));
        }
        let q = Module::new(self.side, s.clone());
        let images = (0..self.rank()).map(|i| q.generator(i)).collect();
        let pi = Morphism::new(self, &q, images)?;
        Ok((q, pi))
    }

    /// The submodule `S / Rel` as a module in its own right.
    pub fn submodule_as_module(&self, s: &Submodule) -> Result<Presented> {
        Presented::new(self, s)
    }

    /// `M ⊕ N` with injections and projections.
    pub fn direct_sum(&self, other: &Module) -> Result<DirectSum> {
        if self.ring != other.ring || self.side != other.side {
            return Err(Error::Contract("direct sum needs the same ring and side".into()));
        }
        let sum = Module::new(self.side, self.rel.direct_sum(&other.rel)?);
        let (a, b) = (self.rank(), other.rank());
        let z = self.ring.zero();
        let unit = |k: usize, i: usize| {
            let mut e = vec![z; k];
            e[i] = self.ring.one();
            e
        };
        let inj = |offset: usize, k: usize| -> Vec<Vec<u64>> {
            (0..k).map(|i| unit(a + b, offset + i)).collect()
        };
        let first = Morphism::new(self, &sum, inj(0, a))?;
        let second = Morphism::new(other, &sum, inj(a, b))?;
        let p1 = (0..a + b)
            .map(|i| if i < a { unit(a, i) } else { vec![z; a] })
            .collect();
        let p2 = (0..a + b)
            .map(|i| if i >= a { unit(b, i - a) } else { vec![z; b] })
            .collect();
        let proj_first = Morphism::new(&sum, self, p1)?;
        let proj_second = Morphism::new(&sum, other, p2)?;
        Ok(DirectSum {
            module: sum,
            injections: [first, second],
            projections: [proj_first, proj_second],
        })
    }
}

/// A biproduct with its structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Module,
    pub injections: [Morphism; 2],
    pub projections: [Morphism; 2],
}

/// A subquotient `S / T` of some `R^k` presented as `R^t / K`, where generator
/// `i` corresponds to row `emb[i]` of `S`.
#[derive(Debug, Clone)]
pub struct Presented {
    pub module: Module,
    pub emb: Vec<Vec<u64>>,
    pub ambient: Module,
}

impl Presented {
    /// Presents `s / rel(ambient)`.
    pub fn new(ambient: &Module, s: &Submodule) -> Result<Presented> {
        let ring = ambient.ring();
        let rel = ambient.relations();
        if !rel.is_subset(s) {
            return Err(Error::Contract("submodule does not contain the relations".into()));
        }
        let action = ambient.side().action();
        let mut cur = rel.clone();
        let mut emb = Vec::new();
        let candidates = match s.howell() {
            Some(h) => h.to_rows(),
            None => {
                // large cyclic pieces first, so cyclic submodules get one generator
                let elems = s.elements()?;
                if elems.len() > 1024 {
                    elems
                } else {
                    let mut sized = Vec::with_capacity(elems.len());
                    for v in elems {
                        let c = Submodule::span(ring, s.rank(), std::slice::from_ref(&v), action)?;
                        sized.push((std::cmp::Reverse(c.cardinality()), v));
                    }
                    sized.sort();
                    sized.into_iter().map(|(_, v)| v).collect()
                }
            }
        };
        for v in candidates {
            if !cur.contains(&v) {
                cur = cur.sum(&Submodule::span(ring, s.rank(), std::slice::from_ref(&v), action)?);
                emb.push(v);
                if cur == *s {
                    break;
                }
            }
        }
        let k = s.rank();
        let f = LinearMap::for_side(ring, ambient.side(), emb.clone(), k);
        let relations = Submodule::preimage(&f, rel)?;
        Ok(Presented {
            module: Module::new(ambient.side(), relations),
            emb,
            ambient: ambient.clone(),
        })
    }

    /// The ambient element represented by `y`.
    pub fn to_ambient(&self, y: &[u64]) -> Vec<u64> {
        let f = LinearMap::for_side(
            self.module.ring(),
            self.module.side(),
            self.emb.clone(),
            self.ambient.rank(),
        );
        self.ambient.reduce(&f.apply(y))
    }

    pub fn inclusion(&self) -> Result<Morphism> {
        Morphism::new(&self.module, &self.ambient, self.emb.clone())
    }

    /// Coordinates (reduced in the presented module) of an ambient element, if it lies in the image.
    pub fn coords_of(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        let ring = self.module.ring();
        if let Some(n) = ring.modulus() {
            let k = self.ambient.rank();
            let mut rows = self.emb.clone();
            let t = rows.len();
            rows.extend(self.ambient.relations().generators());
            let a = exactlin::ZnMatrix::from_rows(n, k, &rows);
            return Ok(exactlin::solve(&a, v)?.map(|s| self.module.reduce(&s.particular[..t])));
        }
        let target = self.ambient.reduce(v);
        for y in self.module.elements()? {
            if self.to_ambient(&y) == target {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }
}

/// A module homomorphism given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    images: Vec<Vec<u64>>,
}

impl Morphism {
    /// Validates that relations of the source map into relations of the target.
    pub fn new(source: &Module, target: &Module, images: Vec<Vec<u64>>) -> Result<Morphism> {
        if source.side != target.side || source.ring != target.ring {
            return Err(Error::Contract("morphism between different rings or sides".into()));
        }
        if images.len() != source.rank() || images.iter().any(|v| v.len() != target.rank()) {
            return Err(Error::Contract("morphism images have the wrong shape".into()));
        }
        let images: Vec<Vec<u64>> = images.iter().map(|v| target.reduce(v)).collect();
        let m = Morphism {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        let f = m.linear();
        for r in source.rel.generators() {
            if !target.rel.contains(&f.apply(&r)) {
                return Err(Error::Contract(format!(
                    "morphism is not well defined: relation {r:?} maps outside the relations"
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(m: &Module) -> Morphism {
        let images = (0..m.rank()).map(|i| m.generator(i)).collect();
        Morphism::new(m, m, images).expect("identity is well defined")
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn linear(&self) -> LinearMap {
        LinearMap::for_side(self.source.ring(), self.source.side, self.images.clone(), self.target.rank())
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.target.reduce(&self.linear().apply(x))
    }

    pub fn kernel(&self) -> Result<Submodule> {
        Submodule::preimage(&self.linear(), &self.target.rel)
    }

    pub fn image(&self) -> Result<Submodule> {
        self.target.span(&self.images)
    }

    /// `f^{-1}(s)` for a submodule `s` of the target.
    pub fn preimage(&self, s: &Submodule) -> Result<Submodule> {
        Submodule::preimage(&self.linear(), s)
    }

    /// `f(s)` for a submodule `s` of the source.
    pub fn image_of(&self, s: &Submodule) -> Result<Submodule> {
        let imgs: Vec<Vec<u64>> = s.generators().iter().map(|g| self.linear().apply(g)).collect();
        self.target.span(&imgs)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()? == self.source.rel)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()? == self.target.full_submodule())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.target != other.source {
            return Err(Error::Contract("composition of non-composable maps".into()));
        }
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        Morphism::new(&self.source, &other.target, images)
    }
}

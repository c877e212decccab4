//! Pairings `(V, W)` of a right module `V` and a left module `W` into the ring,
//! the orthogonals they induce and the linear weak topology on `V`.
//!
//! A pairing is stored by its values `B[p][j] = <g_p, h_j>` on generators, so
//! `<v, w> = Σ w_j B[p][j] v_p`.

mod dual;

pub use dual::{an, ke, ring_is_injective_for, DualMap, Outcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modules::{
    DualModule, LinearMap, Module, Morphism, PurityWitness, Side, Submodule, Verdict,
};
use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    v: Module,
    w: Module,
    beta: Vec<Vec<u64>>,
}

/// A morphism `(ξ, θ): (V', W') -> (V, W)` with `ξ: V -> V'` and `θ: W' -> W`.
#[derive(Debug, Clone)]
pub struct PairingMorphism {
    pub source: Pairing,
    pub target: Pairing,
    pub xi: Morphism,
    pub theta: Morphism,
}

/// The basic neighbourhoods of zero in `V`; at finite scale the smallest is `W^⊥`.
#[derive(Debug, Clone)]
pub struct TopologyView {
    pub radical: Submodule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    /// `closure(X) ⊇ Y`.
    pub dense: bool,
    /// `X^⊥ = Y^⊥`.
    pub perp_criterion: bool,
}

#[derive(Debug, Clone)]
pub struct Completion {
    /// `V / W^⊥`.
    pub module: Module,
    pub projection: Morphism,
    pub dual: DualModule,
    /// The map `V / W^⊥ -> *W` induced by `κ_P`.
    pub comparison: Morphism,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone)]
pub struct Subpairing {
    pub pairing: Pairing,
    pub morphism: PairingMorphism,
    pub w_pure: Verdict<PurityWitness>,
}

fn matrix_col(m: &[Vec<u64>], j: usize) -> Vec<u64> {
    m.iter().map(|r| r[j]).collect()
}

impl Pairing {
    /// Checks sides, shape and that relations of either module pair to zero.
    pub fn new(v: &Module, w: &Module, beta: Vec<Vec<u64>>) -> Result<Pairing> {
        if v.ring() != w.ring() {
            return Err(Error::Contract("pairing over two different rings".into()));
        }
        if v.side() != Side::Right || w.side() != Side::Left {
            return Err(Error::Contract("a pairing needs V right and W left".into()));
        }
        if beta.len() != v.rank() || beta.iter().any(|r| r.len() != w.rank()) {
            return Err(Error::Contract(format!(
                "beta must be {} x {}",
                v.rank(),
                w.rank()
            )));
        }
        let p = Pairing {
            v: v.clone(),
            w: w.clone(),
            beta,
        };
        let ring = v.ring();
        // unit vectors, not reduced representatives
        let unit = |k: usize, i: usize| {
            let mut e = vec![ring.zero(); k];
            e[i] = ring.one();
            e
        };
        for k in v.relations().generators() {
            for j in 0..w.rank() {
                let h = unit(w.rank(), j);
                if p.eval(&k, &h) != ring.zero() {
                    return Err(Error::Balance(format!(
                        "relation {k:?} of V pairs with generator {j} of W to {}",
                        p.eval(&k, &h)
                    )));
                }
            }
        }
        for l in w.relations().generators() {
            for q in 0..v.rank() {
                let g = unit(v.rank(), q);
                if p.eval(&g, &l) != ring.zero() {
                    return Err(Error::Balance(format!(
                        "generator {q} of V pairs with relation {l:?} of W to {}",
                        p.eval(&g, &l)
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Builds a pairing from a form on elements, checking additivity in each slot
    /// and `<v r, w> = <v, w> r`, `<v, r w> = r <v, w>` on all elements.
    pub fn from_form(v: &Module, w: &Module, form: impl Fn(&[u64], &[u64]) -> u64) -> Result<Pairing> {
        let ring = v.ring();
        let ve = v.elements()?;
        let we = w.elements()?;
        let scalars: Vec<u64> = ring.elements().collect();
        for a in &ve {
            for x in &we {
                let f = form(a, x);
                for r in &scalars {
                    let ar = v.scale(a, *r);
                    if form(&ar, x) != ring.mul(f, *r) {
                        return Err(Error::Balance(format!(
                            "<v r, w> != <v, w> r at v = {a:?}, r = {}, w = {x:?}",
                            ring.label(*r)
                        )));
                    }
                    let rx = w.scale(x, *r);
                    if form(a, &rx) != ring.mul(*r, f) {
                        return Err(Error::Balance(format!(
                            "<v, r w> != r <v, w> at v = {a:?}, r = {}, w = {x:?}",
                            ring.label(*r)
                        )));
                    }
                }
                for b in &ve {
                    if form(&v.add(a, b), x) != ring.add(f, form(b, x)) {
                        return Err(Error::Balance(format!(
                            "not additive in V at v = {a:?}, v' = {b:?}, w = {x:?}"
                        )));
                    }
                }
                for y in &we {
                    if form(a, &w.add(x, y)) != ring.add(f, form(a, y)) {
                        return Err(Error::Balance(format!(
                            "not additive in W at v = {a:?}, w = {x:?}, w' = {y:?}"
                        )));
                    }
                }
            }
        }
        let beta = (0..v.rank())
            .map(|p| (0..w.rank()).map(|j| form(&v.generator(p), &w.generator(j))).collect())
            .collect();
        let pairing = Pairing::new(v, w, beta)?;
        for a in &ve {
            for x in &we {
                if pairing.eval(a, x) != form(a, x) {
                    return Err(Error::Internal("form differs from its generator matrix".into()));
                }
            }
        }
        Ok(pairing)
    }

    /// The zero pairing.
    pub fn zero(v: &Module, w: &Module) -> Result<Pairing> {
        let z = v.ring().zero();
        Pairing::new(v, w, vec![vec![z; w.rank()]; v.rank()])
    }

    /// `(*W, W)` with evaluation.
    pub fn canonical(w: &Module) -> Result<(DualModule, Pairing)> {
        if w.side() != Side::Left {
            return Err(Error::Contract("the canonical pairing (*W, W) needs W left".into()));
        }
        let d = DualModule::new(w)?;
        let beta = d.generator_values().to_vec();
        let p = Pairing::new(d.module(), w, beta)?;
        Ok((d, p))
    }

    /// `(N, N*)` with evaluation, for a right module `N`.
    pub fn canonical_right(n: &Module) -> Result<(DualModule, Pairing)> {
        if n.side() != Side::Right {
            return Err(Error::Contract("the canonical pairing (N, N*) needs N right".into()));
        }
        let d = DualModule::new(n)?;
        let vals = d.generator_values();
        let beta = (0..n.rank()).map(|p| matrix_col(vals, p)).collect();
        let p = Pairing::new(n, d.module(), beta)?;
        Ok((d, p))
    }

    /// The pairing `(V, W)` induced from `(Y, W)` along `ξ: V -> Y`.
    pub fn pull_back(&self, xi: &Morphism) -> Result<Pairing> {
        if xi.target() != &self.v {
            return Err(Error::Contract("pull-back map must land in V".into()));
        }
        let beta = xi
            .images()
            .iter()
            .map(|y| (0..self.w.rank()).map(|j| self.eval(y, &self.w.generator(j))).collect())
            .collect();
        Pairing::new(xi.source(), &self.w, beta)
    }

    pub fn ring(&self) -> &Ring {
        self.v.ring()
    }

    pub fn v(&self) -> &Module {
        &self.v
    }

    pub fn w(&self) -> &Module {
        &self.w
    }

    pub fn beta(&self) -> &[Vec<u64>] {
        &self.beta
    }

    /// `<v, w> = Σ w_j B[p][j] v_p`.
    pub fn eval(&self, v: &[u64], w: &[u64]) -> u64 {
        let r = self.ring();
        let mut acc = r.zero();
        for (p, &vp) in v.iter().enumerate() {
            if vp == r.zero() {
                continue;
            }
            for (j, &wj) in w.iter().enumerate() {
                acc = r.add(acc, r.mul(r.mul(wj, self.beta[p][j]), vp));
            }
        }
        acc
    }

    /// `κ_P: V -> *W`, `v -> <v, ->`.
    pub fn kappa(&self) -> Result<(DualModule, Morphism)> {
        let d = DualModule::new(&self.w)?;
        let mut images = Vec::new();
        for row in &self.beta {
            let y = d
                .from_values(row)?
                .ok_or_else(|| Error::Internal("κ of a generator is not a functional".into()))?;
            images.push(y);
        }
        let m = Morphism::new(&self.v, d.module(), images)?;
        Ok((d, m))
    }

    /// `χ_P: W -> V*`, `w -> <-, w>`.
    pub fn chi(&self) -> Result<(DualModule, Morphism)> {
        let d = DualModule::new(&self.v)?;
        let mut images = Vec::new();
        for j in 0..self.w.rank() {
            let y = d
                .from_values(&matrix_col(&self.beta, j))?
                .ok_or_else(|| Error::Internal("χ of a generator is not a functional".into()))?;
            images.push(y);
        }
        let m = Morphism::new(&self.w, d.module(), images)?;
        Ok((d, m))
    }

    /// `F^⊥ = { v : <v, f> = 0 for f in F }`.
    pub fn perp_of_w(&self, f: &[Vec<u64>]) -> Result<Submodule> {
        if f.is_empty() {
            return Ok(self.v.full_submodule());
        }
        let r = self.ring();
        let c: Vec<Vec<u64>> = self
            .beta
            .iter()
            .map(|row| {
                f.iter()
                    .map(|x| {
                        x.iter()
                            .zip(row)
                            .fold(r.zero(), |acc, (&xj, &b)| r.add(acc, r.mul(xj, b)))
                    })
                    .collect()
            })
            .collect();
        let map = LinearMap::right(r, c, f.len());
        Submodule::preimage(&map, &Submodule::zero(r, f.len())?)
    }

    pub fn perp_of_w_sub(&self, k: &Submodule) -> Result<Submodule> {
        self.perp_of_w(&k.generators())
    }

    /// `X^⊥ = { w : <x, w> = 0 for x in X }`.
    pub fn perp_of_v(&self, x: &[Vec<u64>]) -> Result<Submodule> {
        if x.is_empty() {
            return Ok(self.w.full_submodule());
        }
        let r = self.ring();
        let d: Vec<Vec<u64>> = (0..self.w.rank())
            .map(|j| {
                x.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .fold(r.zero(), |acc, (p, &vp)| r.add(acc, r.mul(self.beta[p][j], vp)))
                    })
                    .collect()
            })
            .collect();
        let map = LinearMap::left(r, d, x.len());
        Submodule::preimage(&map, &Submodule::zero(r, x.len())?)
    }

    pub fn perp_of_v_sub(&self, x: &Submodule) -> Result<Submodule> {
        self.perp_of_v(&x.generators())
    }

    /// `W^⊥ = Ker κ_P`.
    pub fn radical(&self) -> Result<Submodule> {
        self.perp_of_w_sub(&self.w.full_submodule())
    }

    pub fn topology(&self) -> Result<TopologyView> {
        let radical = self.radical()?;
        let (_, k) = self.kappa()?;
        if k.kernel()? != radical {
            return Err(Error::Internal("W^⊥ differs from Ker κ".into()));
        }
        Ok(TopologyView { radical })
    }

    /// `∩ (X + F^⊥)` over finite `F ⊆ W`, taken over singletons of generators
    /// and the chain of generator prefixes, checked against `X + W^⊥`.
    pub fn closure(&self, x: &Submodule) -> Result<Submodule> {
        let gens = self.w.full_submodule().generators();
        let mut acc = self.v.full_submodule();
        for k in 0..=gens.len() {
            acc = acc.intersect(&x.sum(&self.perp_of_w(&gens[..k])?));
        }
        for g in &gens {
            acc = acc.intersect(&x.sum(&self.perp_of_w(std::slice::from_ref(g))?));
        }
        if acc != x.sum(&self.radical()?) {
            return Err(Error::Internal("closure does not collapse to X + W^⊥".into()));
        }
        Ok(acc)
    }

    pub fn biperp(&self, x: &Submodule) -> Result<Submodule> {
        self.perp_of_w_sub(&self.perp_of_v_sub(x)?)
    }

    pub fn is_closed(&self, x: &Submodule) -> Result<bool> {
        Ok(self.closure(x)? == *x)
    }

    pub fn is_orthogonally_closed(&self, x: &Submodule) -> Result<bool> {
        Ok(self.biperp(x)? == *x)
    }

    /// `X ⊇ F^⊥` for some finite `F`; the reduced test `X ⊇ W^⊥` is compared with
    /// a search over the submodules of `W` (or its generator prefixes when large).
    pub fn is_open(&self, x: &Submodule) -> Result<bool> {
        let reduced = self.radical()?.is_subset(x);
        let searched = if self.w.cardinality() <= 256 {
            let mut found = false;
            for k in self.w.submodules()? {
                if self.perp_of_w_sub(&k)?.is_subset(x) {
                    found = true;
                    break;
                }
            }
            found
        } else {
            let gens = self.w.full_submodule().generators();
            let mut found = false;
            for k in 0..=gens.len() {
                if self.perp_of_w(&gens[..k])?.is_subset(x) {
                    found = true;
                    break;
                }
            }
            found
        };
        if reduced != searched {
            return Err(Error::Internal("openness tests disagree".into()));
        }
        Ok(reduced)
    }

    /// Whether `X` is dense in `Y`.
    pub fn is_dense(&self, x: &Submodule, y: &Submodule) -> Result<DensityVerdict> {
        if !x.is_subset(y) {
            return Err(Error::Contract("is_dense needs X ⊆ Y".into()));
        }
        let dense = y.is_subset(&self.closure(x)?);
        let perp_criterion = self.perp_of_v_sub(x)? == self.perp_of_v_sub(y)?;
        if dense != perp_criterion && self.ring().is_cogenerator_ring()? {
            return Err(Error::Internal(
                "closure and orthogonal density tests disagree over an injective cogenerator".into(),
            ));
        }
        Ok(DensityVerdict {
            dense,
            perp_criterion,
        })
    }

    /// `κ_P(V)` dense in `*W`; at finite scale this is surjectivity of `κ_P`.
    pub fn is_dense_pairing(&self) -> Result<bool> {
        let (_, k) = self.kappa()?;
        k.is_surjective()
    }

    /// `Ker κ_P = 0`.
    pub fn is_hausdorff(&self) -> Result<bool> {
        Ok(self.radical()? == *self.v.relations())
    }

    /// `V / W^⊥` with its comparison map into `*W`.
    pub fn completion(&self) -> Result<Completion> {
        let radical = self.radical()?;
        let (module, projection) = self.v.quotient(&radical)?;
        let (dual, kappa) = self.kappa()?;
        let comparison = Morphism::new(&module, dual.module(), kappa.images().to_vec())?;
        let injective = comparison.is_injective()?;
        let surjective = comparison.is_surjective()?;
        if !injective {
            return Err(Error::Internal("V / W^⊥ -> *W is not injective".into()));
        }
        if surjective != (module.cardinality() == dual.module().cardinality()) {
            return Err(Error::Internal("completion comparison counts disagree".into()));
        }
        if kappa.is_surjective()? && self.ring().is_self_injective()?.holds && !surjective {
            return Err(Error::Internal("dense pairing whose completion is not *W".into()));
        }
        Ok(Completion {
            module,
            projection,
            dual,
            comparison,
            injective,
            surjective,
        })
    }

    /// `Q = (V/V', W')` with the morphism `(π, ι): Q -> P`.
    pub fn subpairing(&self, vp: &Submodule, wp: &Submodule) -> Result<Subpairing> {
        if !self.v.relations().is_subset(vp) || !self.w.relations().is_subset(wp) {
            return Err(Error::Contract("subpairing needs submodules of V and W".into()));
        }
        for a in vp.generators() {
            for b in wp.generators() {
                if self.eval(&a, &b) != self.ring().zero() {
                    return Err(Error::Contract(format!(
                        "<V', W'> is not zero: <{:?}, {:?}> = {}",
                        self.v.reduce(&a),
                        self.w.reduce(&b),
                        self.ring().label(self.eval(&a, &b))
                    )));
                }
            }
        }
        let (q, pi) = self.v.quotient(vp)?;
        let pres = self.w.submodule_as_module(wp)?;
        let beta = (0..self.v.rank())
            .map(|p| pres.emb.iter().map(|e| self.eval(&self.v.generator(p), e)).collect())
            .collect();
        let pairing = Pairing::new(&q, &pres.module, beta)?;
        let iota = pres.inclusion()?;
        let morphism = PairingMorphism::new(&pairing, self, &pi, &iota)?;
        let w_pure = self.w.is_pure_submodule(wp, None)?;
        Ok(Subpairing {
            pairing,
            morphism,
            w_pure,
        })
    }

    /// `(V, W')` for a submodule `W' ⊆ W`.
    pub fn restrict_w(&self, wp: &Submodule) -> Result<Subpairing> {
        self.subpairing(self.v.relations(), wp)
    }
}

impl PairingMorphism {
    /// Checks `<ξ(v), w'> = <v, θ(w')>` on generators (enough by bilinearity).
    pub fn new(source: &Pairing, target: &Pairing, xi: &Morphism, theta: &Morphism) -> Result<PairingMorphism> {
        if xi.source() != target.v() || xi.target() != source.v() {
            return Err(Error::Contract("ξ must map V to V'".into()));
        }
        if theta.source() != source.w() || theta.target() != target.w() {
            return Err(Error::Contract("θ must map W' to W".into()));
        }
        for p in 0..target.v().rank() {
            let g = target.v().generator(p);
            let xg = xi.apply(&g);
            for j in 0..source.w().rank() {
                let h = source.w().generator(j);
                let lhs = source.eval(&xg, &h);
                let rhs = target.eval(&g, &theta.apply(&h));
                if lhs != rhs {
                    return Err(Error::Contract(format!(
                        "<ξ(v), w'> != <v, θ(w')> at generator {p} of V and {j} of W'"
                    )));
                }
            }
        }
        Ok(PairingMorphism {
            source: source.clone(),
            target: target.clone(),
            xi: xi.clone(),
            theta: theta.clone(),
        })
    }

    /// `ξ^{-1}(K'^⊥)` and `θ(K')^⊥`.
    pub fn continuity_sides(&self, kp: &Submodule) -> Result<(Submodule, Submodule)> {
        let lhs = self.xi.preimage(&self.source.perp_of_w_sub(kp)?)?;
        let rhs = self.target.perp_of_w_sub(&self.theta.image_of(kp)?)?;
        Ok((lhs, rhs))
    }
}

use serde::{Deserialize, Serialize};

use super::{Pairing, PairingMorphism};
use crate::error::{Error, Result};
use crate::modules::{DualModule, LinearMap, Module, Morphism, Side, Submodule};

/// `An(L) = { f : f(L) = 0 }` inside the dual of `d.of`.
pub fn an(d: &DualModule, l: &Submodule) -> Result<Submodule> {
    let gens = l.generators();
    if gens.is_empty() {
        return Ok(d.module().full_submodule());
    }
    let c: Vec<Vec<u64>> = d
        .generator_values()
        .iter()
        .map(|y| gens.iter().map(|x| d.eval_values(y, x)).collect())
        .collect();
    let ring = d.of.ring();
    let map = LinearMap::for_side(ring, d.module().side(), c, gens.len());
    Submodule::preimage(&map, &Submodule::zero(ring, gens.len())?)
}

/// `Ke(X) = ∩ Ker f` over `f` in `X ⊆ Hom(N, R)`.
pub fn ke(d: &DualModule, x: &Submodule) -> Result<Submodule> {
    let fs: Vec<Vec<u64>> = x.generators().iter().map(|z| d.values(z)).collect();
    if fs.is_empty() {
        return Ok(d.of.full_submodule());
    }
    let n = &d.of;
    let m: Vec<Vec<u64>> = (0..n.rank()).map(|j| fs.iter().map(|y| y[j]).collect()).collect();
    let ring = n.ring();
    let map = LinearMap::for_side(ring, n.side(), m, fs.len());
    Submodule::preimage(&map, &Submodule::zero(ring, fs.len())?)
}

/// The ring is `M`-injective: every functional on a submodule `U ⊆ M` extends,
/// i.e. `|Hom(M, R)| / |An(U)| = |Hom(U, R)|` for all `U`.
pub fn ring_is_injective_for(m: &Module) -> Result<bool> {
    let d = DualModule::new(m)?;
    let total = d.module().cardinality();
    for u in m.submodules()? {
        let an_size = an(&d, &u)?.cardinality() / d.module().relations().cardinality();
        let restricted = total / an_size;
        let du = DualModule::new(&m.submodule_as_module(&u)?.module)?;
        if restricted != du.module().cardinality() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `θ*: Hom(W, R) -> Hom(W', R)`, `f -> f ∘ θ`, for `θ: W' -> W`.
#[derive(Debug, Clone)]
pub struct DualMap {
    pub theta: Morphism,
    /// `*W`.
    pub outer: DualModule,
    /// `*W'`.
    pub inner: DualModule,
    pub star: Morphism,
}

/// One identity or implication checked on one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: String,
    /// Whether the hypotheses were met (identities are checked either way).
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(id: &str, applicable: bool, holds: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            id: id.to_string(),
            applicable,
            holds,
            detail: detail.into(),
        }
    }

    /// Fails only when the hypotheses hold and the conclusion does not.
    pub fn failed(&self) -> bool {
        self.applicable && !self.holds
    }
}

impl DualMap {
    pub fn new(theta: &Morphism) -> Result<DualMap> {
        let outer = DualModule::new(theta.target())?;
        let inner = DualModule::new(theta.source())?;
        let mut images = Vec::new();
        for y in outer.generator_values() {
            let values: Vec<u64> = theta
                .images()
                .iter()
                .map(|h| outer.eval_values(y, h))
                .collect();
            let z = inner
                .from_values(&values)?
                .ok_or_else(|| Error::Internal("f ∘ θ is not a functional".into()))?;
            images.push(z);
        }
        let star = Morphism::new(outer.module(), inner.module(), images)?;
        Ok(DualMap {
            theta: theta.clone(),
            outer,
            inner,
            star,
        })
    }

    /// `(θ*, θ): (*W', W') -> (*W, W)` for left modules.
    pub fn pairing_morphism(&self) -> Result<PairingMorphism> {
        let (_, source) = Pairing::canonical(self.theta.source())?;
        let (_, target) = Pairing::canonical(self.theta.target())?;
        PairingMorphism::new(&source, &target, &self.star, &self.theta)
    }

    /// Evaluates the dual-map identities on the given submodules of `W'`, `W`
    /// and `*W`. Identities whose hypotheses fail are still evaluated and
    /// reported as not applicable.
    pub fn check_identities(
        &self,
        ks_inner: &[Submodule],
        ks_outer: &[Submodule],
        xs: &[Submodule],
    ) -> Result<Vec<Outcome>> {
        if self.theta.source().side() != Side::Left {
            return Err(Error::Contract("dual-map identities are stated for left modules".into()));
        }
        let ring = self.theta.source().ring();
        let w_inj = ring_is_injective_for(self.theta.target())?;
        let cog = ring.is_cogenerator_ring()?;
        let (_, outer_p) = Pairing::canonical(self.theta.target())?;
        let (_, inner_p) = Pairing::canonical(self.theta.source())?;
        let mut out = Vec::new();
        let mut push = |id: &str, applicable: bool, holds: bool, detail: String| {
            out.push(Outcome::new(id, applicable, holds, detail))
        };

        for (i, kp) in ks_inner.iter().enumerate() {
            let lhs = self.star.preimage(&an(&self.inner, kp)?)?;
            let rhs = an(&self.outer, &self.theta.image_of(kp)?)?;
            push("f*-clos.1", true, lhs == rhs, format!("K' #{i}"));
        }
        for (i, k) in ks_outer.iter().enumerate() {
            let lhs = self.star.image_of(&an(&self.outer, k)?)?;
            let rhs = an(&self.inner, &self.theta.preimage(k)?)?;
            push("f*-clos.2", w_inj, lhs == rhs, format!("K #{i}"));
        }
        let hyp3 = w_inj && cog;
        for (i, x) in xs.iter().enumerate() {
            let sx = self.star.image_of(x)?;
            if outer_p.is_closed(x)? {
                push("f*-clos.3a", hyp3, inner_p.is_closed(&sx)?, format!("X #{i}"));
            }
            let lhs = inner_p.closure(&sx)?;
            let rhs = self.star.image_of(&outer_p.closure(x)?)?;
            push("f*-clos.3b", hyp3, lhs == rhs, format!("X #{i}"));
            let lhs = ke(&self.inner, &sx)?;
            let rhs = self.theta.preimage(&ke(&self.outer, x)?)?;
            push("f*-clos.3c", hyp3, lhs == rhs, format!("X #{i}"));
        }
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        for a in 0..xs.len() {
            for b in a..xs.len() {
                tuples.push(vec![a, b]);
                if xs.len() <= 12 {
                    for c in b..xs.len() {
                        tuples.push(vec![a, b, c]);
                    }
                }
            }
        }
        for t in tuples {
            let mut sum = xs[t[0]].clone();
            let mut closures = outer_p.closure(&xs[t[0]])?;
            for &i in &t[1..] {
                sum = sum.sum(&xs[i]);
                closures = closures.sum(&outer_p.closure(&xs[i])?);
            }
            push("f*-clos.3d", hyp3, outer_p.closure(&sum)? == closures, format!("X {t:?}"));
        }
        Ok(out)
    }
}

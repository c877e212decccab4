use std::cell::OnceCell;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::alphacond::{satisfies_alpha, AlphaWitness};
use crate::error::{Error, Result};
use crate::instance::{InstanceDocument, Loaded};
use crate::modules::{Module, Morphism, Side, Submodule, Verdict};
use crate::pairings::{ring_is_injective_for, Pairing};
use crate::rings::Ring;

/// A loaded instance plus lazily computed facts shared by all entries.
pub struct Subject<'a> {
    pub loaded: &'a Loaded,
    pub document: &'a InstanceDocument,
    pub seed: u64,
    v_subs: OnceCell<Result<Vec<Submodule>>>,
    w_subs: OnceCell<Result<Vec<Submodule>>>,
    alpha: OnceCell<Result<Verdict<AlphaWitness>>>,
    w_inj: OnceCell<Result<bool>>,
    chi_inj: OnceCell<Result<bool>>,
    kappa_inj: OnceCell<Result<bool>>,
}

fn cached<'c, T>(cell: &'c OnceCell<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&'c T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl<'a> Subject<'a> {
    pub fn new(loaded: &'a Loaded, document: &'a InstanceDocument, seed: u64) -> Subject<'a> {
        Subject {
            loaded,
            document,
            seed,
            v_subs: OnceCell::new(),
            w_subs: OnceCell::new(),
            alpha: OnceCell::new(),
            w_inj: OnceCell::new(),
            chi_inj: OnceCell::new(),
            kappa_inj: OnceCell::new(),
        }
    }

    pub fn ring(&self) -> &'a Ring {
        &self.loaded.ring
    }

    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn pairing(&self) -> Result<&'a Pairing> {
        self.loaded
            .pairing()
            .ok_or_else(|| Error::Input("instance has no pairing".into()))
    }

    pub fn module(&self) -> Result<&'a Module> {
        self.loaded
            .module()
            .ok_or_else(|| Error::Input("instance has no module".into()))
    }

    /// The module, as a module of the given side (sides are interchangeable
    /// over commutative rings only).
    pub fn module_on(&self, side: Side) -> Result<Module> {
        on_side(self.module()?, side)
    }

    pub fn map_on_left(&self) -> Result<Morphism> {
        let m = self
            .loaded
            .map()
            .ok_or_else(|| Error::Input("instance has no map".into()))?;
        if m.source().side() == Side::Left {
            return Ok(m.clone());
        }
        let s = on_side(m.source(), Side::Left)?;
        let t = on_side(m.target(), Side::Left)?;
        Morphism::new(&s, &t, m.images().to_vec())
    }

    pub fn v_subs(&self) -> Result<&Vec<Submodule>> {
        cached(&self.v_subs, || self.pairing()?.v().submodules())
    }

    pub fn w_subs(&self) -> Result<&Vec<Submodule>> {
        cached(&self.w_subs, || self.pairing()?.w().submodules())
    }

    pub fn alpha(&self) -> Result<&Verdict<AlphaWitness>> {
        cached(&self.alpha, || satisfies_alpha(self.pairing()?))
    }

    /// `_R R` is `W`-injective for the pairing's `W`.
    pub fn w_injective(&self) -> Result<bool> {
        cached(&self.w_inj, || ring_is_injective_for(self.pairing()?.w())).copied()
    }

    /// `χ_P: W -> V*` is injective.
    pub fn w_embeds(&self) -> Result<bool> {
        cached(&self.chi_inj, || self.pairing()?.chi()?.1.is_injective()).copied()
    }

    /// `κ_P: V -> *W` is injective.
    pub fn v_embeds(&self) -> Result<bool> {
        cached(&self.kappa_inj, || self.pairing()?.kappa()?.1.is_injective()).copied()
    }
}

pub(super) fn on_side(m: &Module, side: Side) -> Result<Module> {
    if m.side() == side {
        Ok(m.clone())
    } else if m.ring().is_commutative() {
        m.with_side(side)
    } else {
        Err(Error::Unsupported(format!("a {side:?} module is needed over a noncommutative ring")))
    }
}

/// `R_R` (right) or `_R R` (left) self-injective.
pub(super) fn self_injective(ring: &Ring, side: Side) -> Result<bool> {
    match side {
        Side::Right => Ok(ring.is_self_injective()?.holds),
        Side::Left => Ok(ring.opposite().is_self_injective()?.holds),
    }
}

/// Generators of `s` modulo the relations of `m`, zero rows dropped.
pub(super) fn show(m: &Module, s: &Submodule) -> Value {
    let mut rows: Vec<Vec<u64>> = s
        .generators()
        .iter()
        .map(|g| m.reduce(g))
        .filter(|g| !m.is_zero_element(g))
        .collect();
    rows.dedup();
    json!(rows)
}

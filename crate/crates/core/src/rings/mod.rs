//! Finite rings: `Z/n` and explicit tables, with cached structural predicates.

mod library;
mod predicates;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exactlin::MAX_MODULUS;

pub use library::{library, named, NAMES};
pub use predicates::{BaerWitness, RightIdeal, SelfInjectivity};

/// Addition and multiplication tables over element indices `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRing {
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    ZMod(u64),
    Table(TableRing),
}

#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) right_ideals: OnceLock<Result<Vec<RightIdeal>>>,
    pub(crate) self_injective: OnceLock<Result<SelfInjectivity>>,
    pub(crate) kasch: OnceLock<Result<bool>>,
    pub(crate) semisimple: OnceLock<Result<bool>>,
    pub(crate) hereditary: OnceLock<Result<bool>>,
}

struct RingData {
    name: String,
    backend: Backend,
    neg: Vec<usize>,
    caps: Caps,
    cache: Cache,
}

/// A finite associative unital ring with `1 != 0`.
///
/// Elements are `u64` indices: residues for `Z/n`, construction order for tables.
/// Cloning is cheap and shares the predicate cache.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingData>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.inner.name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.backend == other.inner.backend
    }
}

impl Eq for Ring {}

impl Ring {
    fn build(name: String, backend: Backend, caps: Caps) -> Ring {
        let neg = match &backend {
            Backend::ZMod(_) => Vec::new(),
            Backend::Table(t) => (0..t.elements.len())
                .map(|a| (0..t.elements.len()).find(|&b| t.add[a][b] == t.zero).unwrap())
                .collect(),
        };
        Ring {
            inner: Arc::new(RingData {
                name,
                backend,
                neg,
                caps,
                cache: Cache::default(),
            }),
        }
    }

    /// The ring `Z/n`.
    pub fn zmod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::Contract(format!("Z/{n} needs n >= 2 so that 1 != 0")));
        }
        if n > MAX_MODULUS {
            return Err(Error::Contract(format!("modulus {n} exceeds 2^31")));
        }
        Ok(Ring::build(format!("Z/{n}"), Backend::ZMod(n), Caps::default()))
    }

    /// Validates the ring axioms exhaustively and builds a table ring.
    pub fn table(name: &str, table: TableRing) -> Result<Ring> {
        validate_table(&table)?;
        Ok(Ring::build(name.to_string(), Backend::Table(table), Caps::default()))
    }

    /// The same ring with different enumeration caps (and a fresh predicate cache).
    pub fn with_caps(&self, caps: Caps) -> Ring {
        let mut r = Ring::build(self.inner.name.clone(), self.inner.backend.clone(), caps);
        Arc::get_mut(&mut r.inner).unwrap().neg = self.inner.neg.clone();
        r
    }

    pub fn caps(&self) -> &Caps {
        &self.inner.caps
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn backend(&self) -> &Backend {
        &self.inner.backend
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.inner.cache
    }

    /// `Some(n)` for the `Z/n` backend.
    pub fn modulus(&self) -> Option<u64> {
        match self.inner.backend {
            Backend::ZMod(n) => Some(n),
            Backend::Table(_) => None,
        }
    }

    pub fn size(&self) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(n) => *n,
            Backend::Table(t) => t.elements.len() as u64,
        }
    }

    pub fn zero(&self) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(_) => 0,
            Backend::Table(t) => t.zero as u64,
        }
    }

    pub fn one(&self) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(_) => 1,
            Backend::Table(t) => t.one as u64,
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(n) => (a + b) % n,
            Backend::Table(t) => t.add[a as usize][b as usize] as u64,
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(n) => (n - a) % n,
            Backend::Table(_) => self.inner.neg[a as usize] as u64,
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(n) => a * b % n,
            Backend::Table(t) => t.mul[a as usize][b as usize] as u64,
        }
    }

    /// Residue of an integer (`Z/n`) or `k * 1` (tables).
    pub fn from_int(&self, k: i64) -> u64 {
        match &self.inner.backend {
            Backend::ZMod(n) => k.rem_euclid(*n as i64) as u64,
            Backend::Table(_) => {
                let mut acc = self.zero();
                for _ in 0..k.unsigned_abs() {
                    acc = self.add(acc, self.one());
                }
                if k < 0 {
                    self.neg(acc)
                } else {
                    acc
                }
            }
        }
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.size()
    }

    pub fn label(&self, a: u64) -> String {
        match &self.inner.backend {
            Backend::ZMod(_) => a.to_string(),
            Backend::Table(t) => t.elements[a as usize].clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match &self.inner.backend {
            Backend::ZMod(_) => true,
            Backend::Table(t) => {
                let k = t.elements.len();
                (0..k).all(|a| (0..k).all(|b| t.mul[a][b] == t.mul[b][a]))
            }
        }
    }

    /// The opposite ring (same elements, reversed multiplication).
    pub fn opposite(&self) -> Ring {
        match &self.inner.backend {
            Backend::ZMod(_) => self.clone(),
            Backend::Table(t) => {
                let k = t.elements.len();
                let mut op = t.clone();
                for a in 0..k {
                    for b in 0..k {
                        op.mul[a][b] = t.mul[b][a];
                    }
                }
                Ring::build(format!("{}^op", self.inner.name), Backend::Table(op), self.inner.caps)
            }
        }
    }

    /// The table rendering of this ring (identity for table rings).
    pub fn to_table(&self) -> TableRing {
        match &self.inner.backend {
            Backend::Table(t) => t.clone(),
            Backend::ZMod(n) => {
                let n = *n as usize;
                TableRing {
                    elements: (0..n).map(|a| a.to_string()).collect(),
                    add: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
                    mul: (0..n).map(|a| (0..n).map(|b| a * b % n).collect()).collect(),
                    zero: 0,
                    one: 1 % n,
                }
            }
        }
    }

    pub(crate) fn check_size(&self, what: &str) -> Result<()> {
        crate::error::cap_check(what, self.size() as u128, self.caps().ring as u128)
    }
}

fn axiom(name: &str, a: usize, b: usize, c: usize) -> Error {
    Error::RingAxiom {
        axiom: name.to_string(),
        a,
        b,
        c,
    }
}

fn validate_table(t: &TableRing) -> Result<()> {
    let k = t.elements.len();
    if k == 0 {
        return Err(Error::Input("ring table has no elements".into()));
    }
    for (name, tab) in [("add", &t.add), ("mul", &t.mul)] {
        if tab.len() != k || tab.iter().any(|row| row.len() != k) {
            return Err(Error::Input(format!("`{name}` table must be {k} x {k}")));
        }
        for (a, row) in tab.iter().enumerate() {
            if let Some(b) = row.iter().position(|&x| x >= k) {
                return Err(axiom(&format!("{name} closed"), a, b, 0));
            }
        }
    }
    if t.zero >= k || t.one >= k {
        return Err(Error::Input("`zero` and `one` must index elements".into()));
    }
    if t.zero == t.one {
        return Err(axiom("one != zero", t.one, t.zero, 0));
    }
    let (add, mul) = (&t.add, &t.mul);
    for a in 0..k {
        if add[t.zero][a] != a || add[a][t.zero] != a {
            return Err(axiom("additive identity", t.zero, a, 0));
        }
        if !(0..k).any(|b| add[a][b] == t.zero) {
            return Err(axiom("additive inverse", a, 0, 0));
        }
        if mul[t.one][a] != a || mul[a][t.one] != a {
            return Err(axiom("multiplicative identity", t.one, a, 0));
        }
        for b in 0..k {
            if add[a][b] != add[b][a] {
                return Err(axiom("additive commutativity", a, b, 0));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    return Err(axiom("additive associativity", a, b, c));
                }
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return Err(axiom("multiplicative associativity", a, b, c));
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    return Err(axiom("left distributivity", a, b, c));
                }
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                    return Err(axiom("right distributivity", a, b, c));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_bounds() {
        assert!(Ring::zmod(1).is_err());
        assert_eq!(Ring::zmod(4).unwrap().size(), 4);
        assert!(Ring::zmod(2).unwrap().is_commutative());
    }

    #[test]
    fn tables_of_zmod_validate() {
        for n in 2..=8 {
            let t = Ring::zmod(n).unwrap().to_table();
            let r = Ring::table("z", t).unwrap();
            assert!(r.is_commutative());
            assert_eq!(r.size(), n);
        }
    }

    #[test]
    fn broken_associativity_names_triple() {
        let mut t = Ring::zmod(3).unwrap().to_table();
        // 2*2 = 1 in Z/3; redirect it to 2 and associativity breaks
        t.mul[2][2] = 2;
        match Ring::table("bad", t) {
            Err(Error::RingAxiom { axiom, .. }) => {
                assert!(axiom.contains("associativity") || axiom.contains("distributivity"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ut2_is_noncommutative() {
        let r = named("ut2_f2").unwrap();
        assert_eq!(r.size(), 8);
        assert!(!r.is_commutative());
        assert!(!r.opposite().is_commutative());
    }
}

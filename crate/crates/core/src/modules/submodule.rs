use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::linear::LinearMap;
use crate::error::{cap_check, Result};
use crate::exactlin::{self, howell_form, ZnMatrix};
use crate::rings::Ring;

/// How a generating set is closed up into a subset of `R^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// Right submodule: closed under `v -> v r`.
    Right,
    /// Left submodule: closed under `v -> r v`.
    Left,
    /// Additive subgroup only.
    Additive,
}

/// Dense index coding of `R^k` in lexicographic order.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Coder {
    s: u64,
    k: usize,
    pub(crate) size: usize,
}

impl Coder {
    pub(crate) fn new(ring: &Ring, k: usize) -> Result<Coder> {
        let s = ring.size();
        let size = (s as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        cap_check(&format!("R^{k} over {}", ring.name()), size, ring.caps().ambient)?;
        Ok(Coder {
            s,
            k,
            size: size as usize,
        })
    }

    pub(crate) fn enc(&self, v: &[u64]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.s as usize + x as usize)
    }

    pub(crate) fn dec(&self, mut i: usize) -> Vec<u64> {
        let mut v = vec![0; self.k];
        for slot in v.iter_mut().rev() {
            *slot = (i as u64) % self.s;
            i /= self.s as usize;
        }
        v
    }
}

pub(crate) fn vadd(ring: &Ring, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

pub(crate) fn vsub(ring: &Ring, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| ring.sub(x, y)).collect()
}

pub(crate) fn vscale(ring: &Ring, a: &[u64], r: u64, action: Action) -> Vec<u64> {
    a.iter()
        .map(|&x| match action {
            Action::Left => ring.mul(r, x),
            _ => ring.mul(x, r),
        })
        .collect()
}

struct SetRepr {
    coder: Coder,
    bits: FixedBitSet,
    gens: OnceLock<Vec<Vec<u64>>>,
}

#[derive(Clone)]
enum Repr {
    Zn(ZnMatrix),
    Set(Arc<SetRepr>),
}

/// A submodule (or additive subgroup) of `R^k` in canonical form.
///
/// Over `Z/n` the form is the Howell matrix of the span; over table rings it is
/// the explicit element set. Equality is equality of sets.
#[derive(Clone)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    repr: Repr,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && match (&self.repr, &other.repr) {
                (Repr::Zn(a), Repr::Zn(b)) => a == b,
                (Repr::Set(a), Repr::Set(b)) => a.bits == b.bits,
                _ => false,
            }
    }
}

impl Eq for Submodule {}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule(rank {}, gens {:?})", self.rank, self.generators())
    }
}

impl Submodule {
    fn from_bits(ring: &Ring, coder: Coder, bits: FixedBitSet) -> Submodule {
        Submodule {
            ring: ring.clone(),
            rank: coder.k,
            repr: Repr::Set(Arc::new(SetRepr {
                coder,
                bits,
                gens: OnceLock::new(),
            })),
        }
    }

    /// The zero submodule of `R^k`.
    pub fn zero(ring: &Ring, k: usize) -> Result<Submodule> {
        Submodule::span(ring, k, &[], Action::Additive)
    }

    /// All of `R^k`.
    pub fn full(ring: &Ring, k: usize) -> Result<Submodule> {
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                let mut e = vec![ring.zero(); k];
                e[i] = ring.one();
                e
            })
            .collect();
        Submodule::span(ring, k, &gens, Action::Right)
    }

    /// Least subset of `R^k` containing `gens` and closed under `action`.
    pub fn span(ring: &Ring, k: usize, gens: &[Vec<u64>], action: Action) -> Result<Submodule> {
        if let Some(n) = ring.modulus() {
            let m = ZnMatrix::from_rows(n, k, gens);
            return Ok(Submodule {
                ring: ring.clone(),
                rank: k,
                repr: Repr::Zn(howell_form(&m)),
            });
        }
        let coder = Coder::new(ring, k)?;
        let mut bits = FixedBitSet::with_capacity(coder.size);
        bits.insert(coder.enc(&vec![ring.zero(); k]));
        let mut additive = Vec::new();
        for g in gens {
            match action {
                Action::Additive => additive.push(g.clone()),
                _ => {
                    for r in ring.elements() {
                        additive.push(vscale(ring, g, r, action));
                    }
                }
            }
        }
        let mut elems: Vec<Vec<u64>> = vec![vec![ring.zero(); k]];
        for g in &additive {
            extend_by_cyclic(ring, &coder, &mut bits, &mut elems, g);
        }
        Ok(Submodule::from_bits(ring, coder, bits))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `k` for a submodule of `R^k`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Howell matrix (only for the `Z/n` backend).
    pub fn howell(&self) -> Option<&ZnMatrix> {
        match &self.repr {
            Repr::Zn(h) => Some(h),
            Repr::Set(_) => None,
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.rank, "vector length");
        match &self.repr {
            Repr::Zn(h) => exactlin::span_contains(h, v),
            Repr::Set(s) => s.bits.contains(s.coder.enc(v)),
        }
    }

    /// Inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &Submodule) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Zn(a), Repr::Zn(b)) => a.rows().all(|r| exactlin::span_contains(b, r)),
            (Repr::Set(a), Repr::Set(b)) => a.bits.is_subset(&b.bits),
            _ => panic!("mixed backends"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cardinality() == 1
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.rank, other.rank);
        match (&self.repr, &other.repr) {
            (Repr::Zn(a), Repr::Zn(b)) => Submodule {
                ring: self.ring.clone(),
                rank: self.rank,
                repr: Repr::Zn(exactlin::span_sum(a, b)),
            },
            (Repr::Set(a), Repr::Set(_)) => {
                if other.is_subset(self) {
                    return self.clone();
                }
                let mut bits = a.bits.clone();
                let mut elems: Vec<Vec<u64>> = a.bits.ones().map(|i| a.coder.dec(i)).collect();
                for g in other.generators() {
                    extend_by_cyclic(&self.ring, &a.coder, &mut bits, &mut elems, &g);
                }
                Submodule::from_bits(&self.ring, a.coder, bits)
            }
            _ => panic!("mixed backends"),
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.rank, other.rank);
        match (&self.repr, &other.repr) {
            (Repr::Zn(a), Repr::Zn(b)) => Submodule {
                ring: self.ring.clone(),
                rank: self.rank,
                repr: Repr::Zn(exactlin::intersect(a, b)),
            },
            (Repr::Set(a), Repr::Set(b)) => {
                let mut bits = a.bits.clone();
                bits.intersect_with(&b.bits);
                Submodule::from_bits(&self.ring, a.coder, bits)
            }
            _ => panic!("mixed backends"),
        }
    }

    pub fn cardinality(&self) -> u128 {
        match &self.repr {
            Repr::Zn(h) => exactlin::span_cardinality(h),
            Repr::Set(s) => s.bits.count_ones(..) as u128,
        }
    }

    /// `|R^k / self|`.
    pub fn index(&self) -> u128 {
        match &self.repr {
            Repr::Zn(h) => exactlin::quotient_cardinality(h),
            Repr::Set(s) => s.coder.size as u128 / s.bits.count_ones(..) as u128,
        }
    }

    /// Canonical additive generators (Howell rows, or a greedy basis in element order).
    pub fn generators(&self) -> Vec<Vec<u64>> {
        match &self.repr {
            Repr::Zn(h) => h.to_rows(),
            Repr::Set(s) => s
                .gens
                .get_or_init(|| {
                    let mut bits = FixedBitSet::with_capacity(s.coder.size);
                    bits.insert(s.coder.enc(&vec![self.ring.zero(); self.rank]));
                    let mut elems = vec![vec![self.ring.zero(); self.rank]];
                    let mut gens = Vec::new();
                    for i in s.bits.ones() {
                        if !bits.contains(i) {
                            let g = s.coder.dec(i);
                            extend_by_cyclic(&self.ring, &s.coder, &mut bits, &mut elems, &g);
                            gens.push(g);
                        }
                    }
                    gens
                })
                .clone(),
        }
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        cap_check("submodule elements", self.cardinality(), self.ring.caps().search)?;
        Ok(match &self.repr {
            Repr::Zn(h) => {
                let n = h.modulus();
                let mut out = vec![vec![0; self.rank]];
                for r in h.rows() {
                    let p = r.iter().find(|&&x| x != 0).copied().unwrap();
                    let mut next = Vec::with_capacity(out.len() * (n / p) as usize);
                    for v in &out {
                        for c in 0..n / p {
                            next.push(v.iter().zip(r).map(|(&a, &b)| (a + c * b) % n).collect());
                        }
                    }
                    out = next;
                }
                out.sort();
                out
            }
            Repr::Set(s) => s.bits.ones().map(|i| s.coder.dec(i)).collect(),
        })
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        match &self.repr {
            Repr::Zn(h) => exactlin::reduce(h, v),
            Repr::Set(s) => s
                .bits
                .ones()
                .map(|i| s.coder.enc(&vadd(&self.ring, v, &s.coder.dec(i))))
                .min()
                .map(|i| s.coder.dec(i))
                .unwrap(),
        }
    }

    /// Canonical representatives of `R^k / self`, in lexicographic order.
    pub fn coset_representatives(&self) -> Result<Vec<Vec<u64>>> {
        cap_check("quotient elements", self.index(), self.ring.caps().search)?;
        Ok(match &self.repr {
            Repr::Zn(h) => {
                let n = h.modulus();
                let mut radix = vec![n; self.rank];
                for r in h.rows() {
                    let c = r.iter().position(|&x| x != 0).unwrap();
                    radix[c] = r[c];
                }
                let mut out = vec![vec![]];
                for &m in &radix {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<u64>| {
                            (0..m).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                out
            }
            Repr::Set(s) => {
                let mut seen = FixedBitSet::with_capacity(s.coder.size);
                let members: Vec<Vec<u64>> = s.bits.ones().map(|i| s.coder.dec(i)).collect();
                let mut out = Vec::new();
                for i in 0..s.coder.size {
                    if seen.contains(i) {
                        continue;
                    }
                    let v = s.coder.dec(i);
                    for m in &members {
                        seen.insert(s.coder.enc(&vadd(&self.ring, &v, m)));
                    }
                    out.push(v);
                }
                out
            }
        })
    }

    /// `{ x : f(x) ∈ target }` inside the domain of `f`.
    pub fn preimage(f: &LinearMap, target: &Submodule) -> Result<Submodule> {
        assert_eq!(f.codomain_rank(), target.rank, "preimage target rank");
        let ring = f.ring();
        match &target.repr {
            Repr::Zn(t) => {
                let a = f.to_zn();
                let h = if a.nrows() == 0 {
                    ZnMatrix::zeros(t.modulus(), 0, 0)
                } else {
                    exactlin::preimage(&a, t)
                };
                Ok(Submodule {
                    ring: ring.clone(),
                    rank: f.domain_rank(),
                    repr: Repr::Zn(h),
                })
            }
            Repr::Set(_) => {
                let coder = Coder::new(ring, f.domain_rank())?;
                let mut bits = FixedBitSet::with_capacity(coder.size);
                for i in 0..coder.size {
                    if target.contains(&f.apply(&coder.dec(i))) {
                        bits.insert(i);
                    }
                }
                Ok(Submodule::from_bits(ring, coder, bits))
            }
        }
    }

    /// `f(self)`, an additive subgroup of the codomain (a submodule when `f` is linear
    /// for the relevant action).
    pub fn image(&self, f: &LinearMap) -> Result<Submodule> {
        assert_eq!(f.domain_rank(), self.rank, "image domain rank");
        let gens: Vec<Vec<u64>> = self.generators().iter().map(|g| f.apply(g)).collect();
        Submodule::span(&self.ring, f.codomain_rank(), &gens, Action::Additive)
    }

    /// `self ⊕ other` inside `R^(k + l)`.
    pub fn direct_sum(&self, other: &Submodule) -> Result<Submodule> {
        let z = self.ring.zero();
        let mut gens: Vec<Vec<u64>> = self
            .generators()
            .into_iter()
            .map(|mut g| {
                g.extend(std::iter::repeat(z).take(other.rank));
                g
            })
            .collect();
        gens.extend(other.generators().into_iter().map(|g| {
            let mut v = vec![z; self.rank];
            v.extend(g);
            v
        }));
        Submodule::span(&self.ring, self.rank + other.rank, &gens, Action::Additive)
    }

    /// A key that identifies the set, for hashing.
    pub fn key(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zn(h) => h.to_rows().concat(),
            Repr::Set(s) => s.bits.as_slice().iter().map(|&b| b as u64).collect(),
        }
    }
}

/// Replaces the closed set `bits` (listed in `elems`) by its sum with the cyclic
/// group generated by `g`.
fn extend_by_cyclic(
    ring: &Ring,
    coder: &Coder,
    bits: &mut FixedBitSet,
    elems: &mut Vec<Vec<u64>>,
    g: &[u64],
) {
    if bits.contains(coder.enc(g)) {
        return;
    }
    let base = elems.clone();
    let mut mult = g.to_vec();
    while !bits.contains(coder.enc(&mult)) {
        for e in &base {
            let x = vadd(ring, e, &mult);
            let i = coder.enc(&x);
            if !bits.contains(i) {
                bits.insert(i);
                elems.push(x);
            }
        }
        mult = vadd(ring, &mult, g);
    }
}

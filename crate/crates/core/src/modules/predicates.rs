use serde::{Deserialize, Serialize};

use super::construct::TensorProduct;
use super::{DualModule, LinearMap, Module, Side, Submodule};
use crate::error::{cap_check, Result};
use crate::exactlin::{self, ZnMatrix};
use crate::rings::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    /// The test family provably suffices.
    Exact,
    /// The test family was truncated at a cap.
    Bounded,
}

/// A decision with its certainty and an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub certainty: Certainty,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn exact(holds: bool, witness: Option<W>) -> Self {
        Verdict {
            holds,
            certainty: Certainty::Exact,
            witness,
        }
    }
}

/// Ideal `I` and a nonzero element of the kernel of `I ⊗ M -> M` (or `M ⊗ I -> M`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatWitness {
    pub ideal_generators: Vec<Vec<u64>>,
    pub element: Vec<u64>,
}

/// Test module (as a presentation) and a nonzero kernel element of the tensored inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityWitness {
    pub test_rank: usize,
    pub test_relations: Vec<Vec<u64>>,
    pub element: Vec<u64>,
}

/// The modules against which tensor-injectivity is tested.
#[derive(Debug, Clone)]
pub struct TestFamily {
    pub modules: Vec<Module>,
    pub certainty: Certainty,
}

/// Test modules of the given side: `Z/d` for `d | n` over `Z/n` (exact), and
/// over table rings the cyclic modules `R/I` plus quotients of `R^2` when
/// `|R|^2 <= 256` (bounded).
pub fn family_of_tests(ring: &Ring, side: Side) -> Result<TestFamily> {
    if let Some(n) = ring.modulus() {
        let modules = (2..=n)
            .filter(|d| n % d == 0)
            .map(|d| Module::from_factors(ring, side, &[d]))
            .collect::<Result<_>>()?;
        return Ok(TestFamily {
            modules,
            certainty: Certainty::Exact,
        });
    }
    let mut modules = Vec::new();
    for rank in 1..=2usize {
        if rank == 2 && ring.size() * ring.size() > 256 {
            break;
        }
        let free = Module::free(ring, side, rank)?;
        for s in free.submodules()? {
            if s.index() > 1 {
                modules.push(Module::new(side, s));
            }
        }
    }
    Ok(TestFamily {
        modules,
        certainty: Certainty::Bounded,
    })
}

/// Ideals of `R` acting on the given side, as submodules of `R^1`.
pub(crate) fn one_sided_ideals(ring: &Ring, side: Side) -> Result<Vec<Submodule>> {
    Module::free(ring, side, 1)?.submodules()
}

impl Module {
    /// Ideal criterion: `I ⊗ M -> M` injective for every right ideal `I` (left
    /// modules), or `M ⊗ I -> M` for every left ideal (right modules).
    pub fn is_flat(&self) -> Result<Verdict<FlatWitness>> {
        let ring = self.ring();
        let ideal_side = self.side().opposite();
        let r1 = Module::free(ring, ideal_side, 1)?;
        for ideal in one_sided_ideals(ring, ideal_side)? {
            let p = r1.submodule_as_module(&ideal)?;
            let gens = p.emb.clone();
            let t = gens.len();
            let col: Vec<Vec<u64>> = gens.iter().map(|g| vec![g[0]]).collect();
            let ident = identity(ring, self.rank());
            let (tensor, map) = match self.side() {
                Side::Left => (
                    TensorProduct::new(&p.module, self)?,
                    LinearMap::sandwich(ring, col, 1, ident, self.rank()),
                ),
                Side::Right => (
                    TensorProduct::new(self, &p.module)?,
                    LinearMap::sandwich(ring, ident, self.rank(), col, 1),
                ),
            };
            debug_assert_eq!(map.domain_rank(), t * self.rank());
            if let Some(e) = tensor.kernel_witness(&map, self.relations())? {
                return Ok(Verdict::exact(
                    false,
                    Some(FlatWitness {
                        ideal_generators: gens,
                        element: e,
                    }),
                ));
            }
        }
        Ok(Verdict::exact(true, None))
    }

    /// Dual basis test: functionals `f_j` with `x = Σ_j f_j(x) g_j` on all of `M`.
    /// Returns the values matrix (`[k][j] = f_j(g_k)`) when projective.
    pub fn is_projective(&self) -> Result<Option<Vec<Vec<u64>>>> {
        self.local_dual_basis(&self.full_submodule())
    }

    /// Functionals `f_j` with `x = Σ_j f_j(x) g_j` for every `x` in `f`.
    pub fn local_dual_basis(&self, f: &Submodule) -> Result<Option<Vec<Vec<u64>>>> {
        let ring = self.ring();
        let b = self.rank();
        if b == 0 {
            return Ok(Some(Vec::new()));
        }
        let rels = self.relations().generators();
        let xs: Vec<Vec<u64>> = f
            .generators()
            .into_iter()
            .filter(|x| !self.relations().contains(x))
            .collect();
        if let Some(n) = ring.modulus() {
            // unknown Y (b x b); equations l Y = 0 and x Y ≡ x modulo the relations
            let rows: Vec<Vec<u64>> = rels.iter().chain(&xs).cloned().collect();
            let m = rows.len();
            let left: Vec<Vec<u64>> = (0..b).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
            let phi = LinearMap::sandwich(ring, left, m, identity(ring, b), b).to_zn();
            let mut all = phi.to_rows();
            for (s, _) in xs.iter().enumerate() {
                for g in &rels {
                    let mut v = vec![0; m * b];
                    v[(rels.len() + s) * b..(rels.len() + s + 1) * b].copy_from_slice(g);
                    all.push(v);
                }
            }
            let mut rhs = vec![0; rels.len() * b];
            for x in &xs {
                rhs.extend_from_slice(x);
            }
            let a = ZnMatrix::from_rows(n, m * b, &all);
            return Ok(exactlin::solve(&a, &rhs)?.map(|sol| {
                (0..b)
                    .map(|k| sol.particular[k * b..(k + 1) * b].to_vec())
                    .collect()
            }));
        }
        let dual = DualModule::new(self)?;
        let values = dual.all_values()?;
        let count = (values.len() as u128).checked_pow(b as u32).unwrap_or(u128::MAX);
        cap_check("dual basis search", count, ring.caps().search)?;
        let mut idx = vec![0usize; b];
        loop {
            let ok = xs.iter().all(|x| {
                let coords: Vec<u64> = idx.iter().map(|&i| dual.eval_values(&values[i], x)).collect();
                self.is_zero_element(&super::vsub(ring, &coords, x))
            });
            if ok {
                return Ok(Some(
                    (0..b)
                        .map(|k| idx.iter().map(|&i| values[i][k]).collect())
                        .collect(),
                ));
            }
            let mut pos = b;
            loop {
                if pos == 0 {
                    return Ok(None);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < values.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Whether the functionals separate points (`M` embeds in a power of `R`);
    /// otherwise a nonzero element killed by every functional.
    pub fn is_cogenerated(&self) -> Result<Verdict<Vec<u64>>> {
        let ring = self.ring();
        let dual = DualModule::new(self)?;
        let gens: Vec<Vec<u64>> = dual
            .generator_values()
            .iter()
            .flat_map(|v| {
                ring.elements()
                    .map(|r| super::vscale(ring, v, r, dual.module().side().action()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let k = self.rank();
        let mat: Vec<Vec<u64>> = (0..k).map(|j| gens.iter().map(|g| g[j]).collect()).collect();
        let f = match self.side() {
            Side::Left => LinearMap::left(ring, mat, gens.len()),
            Side::Right => LinearMap::right(ring, mat, gens.len()),
        };
        let common = Submodule::preimage(&f, &Submodule::zero(ring, gens.len())?)?;
        if common == *self.relations() {
            return Ok(Verdict::exact(true, None));
        }
        let w = common
            .generators()
            .into_iter()
            .find(|g| !self.relations().contains(g))
            .map(|g| self.reduce(&g));
        Ok(Verdict::exact(false, w))
    }

    /// Purity of `k ⊆ self`: tensoring the inclusion with each test module stays
    /// injective. With `test = None` the backend's test family is used.
    pub fn is_pure_submodule(&self, k: &Submodule, test: Option<&Module>) -> Result<Verdict<PurityWitness>> {
        let (family, certainty) = match test {
            Some(t) => (vec![t.clone()], Certainty::Exact),
            None => {
                let fam = family_of_tests(self.ring(), self.side().opposite())?;
                (fam.modules, fam.certainty)
            }
        };
        let p = self.submodule_as_module(k)?;
        for t in &family {
            if let Some(e) = inclusion_tensor_kernel(self, &p.module, &p.emb, t)? {
                return Ok(Verdict {
                    holds: false,
                    certainty: Certainty::Exact,
                    witness: Some(PurityWitness {
                        test_rank: t.rank(),
                        test_relations: t.relations().generators(),
                        element: e,
                    }),
                });
            }
        }
        Ok(Verdict {
            holds: true,
            certainty,
            witness: None,
        })
    }
}

/// Kernel witness of `K ⊗ T -> L ⊗ T` (right `L`) or `T ⊗ K -> T ⊗ L` (left `L`),
/// where `K` is presented by generators `emb` inside `L`.
pub(crate) fn inclusion_tensor_kernel(
    l: &Module,
    k: &Module,
    emb: &[Vec<u64>],
    t: &Module,
) -> Result<Option<Vec<u64>>> {
    let ring = l.ring();
    let ident = identity(ring, t.rank());
    match l.side() {
        Side::Right => {
            let dom = TensorProduct::new(k, t)?;
            let cod = TensorProduct::new(l, t)?;
            let map = LinearMap::sandwich(ring, emb.to_vec(), l.rank(), ident, t.rank());
            dom.kernel_witness(&map, &cod.rel)
        }
        Side::Left => {
            let dom = TensorProduct::new(t, k)?;
            let cod = TensorProduct::new(t, l)?;
            let map = LinearMap::sandwich(ring, ident, t.rank(), emb.to_vec(), l.rank());
            dom.kernel_witness(&map, &cod.rel)
        }
    }
}

pub(crate) fn identity(ring: &Ring, k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

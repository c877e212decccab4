//! The α-map `M ⊗ W -> Hom(V, M)`, `m ⊗ w -> [v -> m <v, w>]`, and the
//! properties of pairings and modules defined through it.

mod suites;

pub use suites::{pw_dicht_suite, rp_rp_suite, Statement, SuiteReport};

use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::modules::{
    family_of_tests, Certainty, DualModule, LinearMap, Module, PurityWitness, Side, Submodule,
    TensorProduct, Verdict,
};
use crate::pairings::Pairing;
use crate::rings::Ring;

/// Test module and a nonzero element of `M ⊗ W` killed by the α-map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaWitness {
    pub test_rank: usize,
    pub test_relations: Vec<Vec<u64>>,
    pub element: Vec<u64>,
}

/// `α_M^P` in coordinates: `M ⊗ W` sits in `R^(a x b)` and `Hom(V, M)` in
/// `M^P`, a map being recorded by its values on the generators of `V`
/// (column `p` of an `a x P` matrix).
#[derive(Debug, Clone)]
pub struct AlphaMap {
    pub pairing: Pairing,
    pub test_module: Module,
    pub domain: TensorProduct,
    pub map: LinearMap,
    /// `a x P` matrices whose columns are relations of `M`.
    pub codomain_rel: Submodule,
}

fn columns_in(rel: &Submodule, cols: usize) -> Result<Submodule> {
    let ring = rel.ring();
    let a = rel.rank();
    let mut gens = Vec::new();
    for g in rel.generators() {
        for p in 0..cols {
            let mut v = vec![ring.zero(); a * cols];
            for (i, &x) in g.iter().enumerate() {
                v[i * cols + p] = x;
            }
            gens.push(v);
        }
    }
    Submodule::span(ring, a * cols, &gens, crate::modules::Action::Additive)
}

fn unit_rows(ring: &Ring, k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

/// Nonzero element of `dom` sent into `target` by `map`, handling empty shapes.
fn kernel_witness(dom: &TensorProduct, map: &LinearMap, target: &Submodule) -> Result<Option<Vec<u64>>> {
    if dom.rank() == 0 {
        return Ok(None);
    }
    if map.codomain_rank() == 0 {
        return Ok(dom
            .rel
            .coset_representatives()?
            .into_iter()
            .find(|t| !dom.is_zero_element(t)));
    }
    dom.kernel_witness(map, target)
}

impl AlphaMap {
    pub fn new(p: &Pairing, m: &Module) -> Result<AlphaMap> {
        if m.side() != Side::Right || m.ring() != p.ring() {
            return Err(Error::Contract("the α-map needs a right test module over the same ring".into()));
        }
        let ring = p.ring();
        let (a, b, np) = (m.rank(), p.w().rank(), p.v().rank());
        let domain = TensorProduct::new(m, p.w())?;
        let g: Vec<Vec<u64>> = (0..b).map(|j| (0..np).map(|q| p.beta()[q][j]).collect()).collect();
        let map = LinearMap::sandwich(ring, unit_rows(ring, a), a, g, np);
        let codomain_rel = columns_in(m.relations(), np)?;
        let am = AlphaMap {
            pairing: p.clone(),
            test_module: m.clone(),
            domain,
            map,
            codomain_rel,
        };
        am.check_formula()?;
        Ok(am)
    }

    /// `α(t)` as its values on the generators of `V`.
    pub fn apply(&self, t: &[u64]) -> Vec<Vec<u64>> {
        let out = self.map.apply(t);
        let (a, np) = (self.test_module.rank(), self.pairing.v().rank());
        (0..np)
            .map(|p| self.test_module.reduce(&(0..a).map(|i| out[i * np + p]).collect::<Vec<_>>()))
            .collect()
    }

    /// `α(t)(v)`.
    pub fn evaluate(&self, t: &[u64], v: &[u64]) -> Vec<u64> {
        let m = &self.test_module;
        let cols = self.apply(t);
        let mut acc = vec![m.ring().zero(); m.rank()];
        for (col, &vp) in cols.iter().zip(v) {
            acc = m.add(&acc, &m.scale(col, vp));
        }
        m.reduce(&acc)
    }

    /// `α(m ⊗ w)(v) = m <v, w>` on all elements when small, else on generators.
    fn check_formula(&self) -> Result<()> {
        let m = &self.test_module;
        let (v, w) = (self.pairing.v(), self.pairing.w());
        let gens = |x: &Module| (0..x.rank()).map(|i| x.generator(i)).collect::<Vec<_>>();
        let total = m.cardinality() * v.cardinality() * w.cardinality();
        let (ms, vs, ws) = if total <= 4096 {
            (m.elements()?, v.elements()?, w.elements()?)
        } else {
            (gens(m), gens(v), gens(w))
        };
        for x in &ms {
            for y in &ws {
                let t = self.domain.pure(x, y);
                for z in &vs {
                    let expect = m.scale(x, self.pairing.eval(z, y));
                    if self.evaluate(&t, z) != expect {
                        return Err(Error::Internal(format!(
                            "α(m ⊗ w)(v) != m <v, w> at m = {x:?}, w = {y:?}, v = {z:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A nonzero element of the kernel, if any.
    pub fn kernel_witness(&self) -> Result<Option<Vec<u64>>> {
        kernel_witness(&self.domain, &self.map, &self.codomain_rel)
    }
}

pub fn alpha_map(p: &Pairing, m: &Module) -> Result<AlphaMap> {
    AlphaMap::new(p, m)
}

/// Whether `α_M^P` is injective; otherwise a nonzero kernel element.
pub fn alpha_injective_for(p: &Pairing, m: &Module) -> Result<Verdict<Vec<u64>>> {
    let w = alpha_map(p, m)?.kernel_witness()?;
    Ok(Verdict::exact(w.is_none(), w))
}

/// The α-condition, tested on the backend's family of right test modules.
pub fn satisfies_alpha(p: &Pairing) -> Result<Verdict<AlphaWitness>> {
    let family = family_of_tests(p.ring(), Side::Right)?;
    for m in &family.modules {
        if let Some(e) = alpha_map(p, m)?.kernel_witness()? {
            return Ok(Verdict::exact(
                false,
                Some(AlphaWitness {
                    test_rank: m.rank(),
                    test_relations: m.relations().generators(),
                    element: e,
                }),
            ));
        }
    }
    Ok(Verdict {
        holds: true,
        certainty: family.certainty,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalProjectivity {
    pub holds: bool,
    /// The α-condition of `(*W, W)`.
    pub alpha_route: Verdict<AlphaWitness>,
    /// Local dual bases exist for every submodule.
    pub dual_basis_route: bool,
    /// Generators of a submodule without a local dual basis.
    pub witness: Option<Vec<Vec<u64>>>,
}

/// Local projectivity of a left module, decided by the α-condition of
/// `(*W, W)` and independently by local dual bases; the two must agree.
pub fn is_locally_projective(w: &Module) -> Result<LocalProjectivity> {
    let (_, can) = Pairing::canonical(w)?;
    let alpha_route = satisfies_alpha(&can)?;
    let mut witness = None;
    for f in w.submodules()? {
        if w.local_dual_basis(&f)?.is_none() {
            witness = Some(f.generators());
            break;
        }
    }
    let dual_basis_route = witness.is_none();
    if alpha_route.holds != dual_basis_route && alpha_route.certainty == Certainty::Exact {
        return Err(Error::Internal(format!(
            "local projectivity routes disagree (α: {}, dual bases: {})",
            alpha_route.holds, dual_basis_route
        )));
    }
    Ok(LocalProjectivity {
        holds: dual_basis_route,
        alpha_route,
        dual_basis_route,
        witness,
    })
}

/// `t ∈ N ⊗ W` inside `M ⊗ W`, decided through `α(t)(v) ∈ N` for all `v` and,
/// independently, by membership in the image of `N ⊗ W`.
pub fn q2_membership(p: &Pairing, m: &Module, n: &Submodule, t: &[u64]) -> Result<bool> {
    if !satisfies_alpha(p)?.holds {
        return Err(Error::Hypothesis("the pairing does not satisfy the α-condition".into()));
    }
    let (by_values, by_tensor) = q2_routes(p, m, n, t)?;
    if by_values != by_tensor {
        return Err(Error::Internal("the two membership tests disagree on an α-pairing".into()));
    }
    Ok(by_values)
}

/// Both membership tests for `t ∈ N ⊗ W`, without requiring the α-condition:
/// `(α(t)(v) ∈ N for all v, t in the image of N ⊗ W)`.
pub fn q2_routes(p: &Pairing, m: &Module, n: &Submodule, t: &[u64]) -> Result<(bool, bool)> {
    if !m.relations().is_subset(n) {
        return Err(Error::Contract("N must be a submodule of M".into()));
    }
    let am = alpha_map(p, m)?;
    let mut by_values = true;
    for v in p.v().elements()? {
        if !n.contains(&am.evaluate(t, &v)) {
            by_values = false;
            break;
        }
    }
    let ring = p.ring();
    let (a, b) = (m.rank(), p.w().rank());
    let mut gens = Vec::new();
    for g in n.generators() {
        for j in 0..b {
            let mut x = vec![ring.zero(); a * b];
            for (i, &gi) in g.iter().enumerate() {
                x[i * b + j] = gi;
            }
            gens.push(x);
        }
    }
    let image = Submodule::span(ring, a * b, &gens, crate::modules::Action::Additive)?.sum(&am.domain.rel);
    Ok((by_values, image.contains(t)))
}

fn commutative(ring: &Ring, what: &str) -> Result<()> {
    if ring.modulus().is_none() {
        return Err(Error::Unsupported(format!("{what} needs bimodules (Z/n backend)")));
    }
    Ok(())
}

/// `(W, V)` read as a pairing with the sides exchanged (commutative rings).
pub fn transpose(p: &Pairing) -> Result<Pairing> {
    commutative(p.ring(), "transposing a pairing")?;
    let beta = (0..p.w().rank())
        .map(|j| (0..p.v().rank()).map(|q| p.beta()[q][j]).collect())
        .collect();
    Pairing::new(&p.w().with_side(Side::Right)?, &p.v().with_side(Side::Left)?, beta)
}

/// `(V_b ⊗ V_a, W_a ⊗ W_b)` with `<v' ⊗ v, w ⊗ w'> = <v, w> <v', w'>`, unchecked.
pub fn product_pairing(a: &Pairing, b: &Pairing) -> Result<Pairing> {
    let ring = a.ring();
    let vt = TensorProduct::new(b.v(), &a.v().with_side(Side::Left)?)?;
    let wt = TensorProduct::new(&a.w().with_side(Side::Right)?, b.w())?;
    let v = Module::new(Side::Right, vt.rel.clone());
    let w = Module::new(Side::Left, wt.rel.clone());
    let (na, nb) = (a.v().rank(), a.w().rank());
    let (ma, mb) = (b.v().rank(), b.w().rank());
    let mut beta = vec![vec![ring.zero(); nb * mb]; ma * na];
    for i in 0..ma {
        for p in 0..na {
            for j in 0..nb {
                for q in 0..mb {
                    beta[i * na + p][j * mb + q] = ring.mul(a.beta()[p][j], b.beta()[i][q]);
                }
            }
        }
    }
    Pairing::new(&v, &w, beta)
}

/// `P ⊗_l P' = (V' ⊗ V, W ⊗ W')`; if both factors satisfy the α-condition so
/// must the product.
pub fn tensor_pairing(p: &Pairing, q: &Pairing) -> Result<Pairing> {
    commutative(p.ring(), "tensor pairings")?;
    let t = product_pairing(p, q)?;
    if satisfies_alpha(p)?.holds && satisfies_alpha(q)?.holds && !satisfies_alpha(&t)?.holds {
        return Err(Error::Internal("tensor pairing of α-pairings fails the α-condition".into()));
    }
    Ok(t)
}

/// `P ⊗_r P' = (V ⊗ V', W' ⊗ W)`; coincides with `P' ⊗_l P` over commutative rings
/// and preserves right α-pairings (α-condition of the transpose).
pub fn tensor_pairing_right(p: &Pairing, q: &Pairing) -> Result<Pairing> {
    commutative(p.ring(), "tensor pairings")?;
    let t = product_pairing(q, p)?;
    let swapped = tensor_pairing(q, p)?;
    if t != swapped {
        return Err(Error::Internal("right and left tensor pairings differ".into()));
    }
    let right_alpha = |x: &Pairing| -> Result<bool> { Ok(satisfies_alpha(&transpose(x)?)?.holds) };
    if right_alpha(p)? && right_alpha(q)? && !right_alpha(&t)? {
        return Err(Error::Internal("tensor pairing of right α-pairings fails".into()));
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityCheck {
    pub injective: bool,
    pub witness: Option<Vec<u64>>,
    /// Whether the hypotheses under which injectivity is guaranteed were met.
    pub hypothesis: bool,
}

/// `M ⊗ R^X -> M^X`, `m ⊗ f -> [x -> m f(x)]` for `|X| = x`.
pub fn beta_map(m: &Module, x: usize) -> Result<InjectivityCheck> {
    if m.side() != Side::Right {
        return Err(Error::Contract("beta_map needs a right module".into()));
    }
    let ring = m.ring();
    cap_check("function module size", x as u128, ring.caps().elements)?;
    let free = Module::free(ring, Side::Left, x)?;
    let dom = TensorProduct::new(m, &free)?;
    let map = LinearMap::sandwich(ring, unit_rows(ring, m.rank()), m.rank(), unit_rows(ring, x), x);
    let target = columns_in(m.relations(), x)?;
    let witness = kernel_witness(&dom, &map, &target)?;
    let injective = witness.is_none();
    if !injective {
        return Err(Error::Internal("M ⊗ R^X -> M^X is not injective".into()));
    }
    Ok(InjectivityCheck {
        injective,
        witness,
        hypothesis: true,
    })
}

/// `δ: E ⊗ E' -> R^(X x X')`, `f ⊗ f' -> [(x, x') -> f(x) f'(x')]`, for a right
/// submodule `E ⊆ R^X` and a left submodule `E' ⊆ R^X'`. The hypothesis is
/// `E'`-purity of `E' ⊆ R^X'` relative to `E`.
pub fn uno_delta(e: &Submodule, ep: &Submodule) -> Result<InjectivityCheck> {
    let ring = e.ring();
    commutative(ring, "δ")?;
    let (x, xp) = (e.rank(), ep.rank());
    let rx = Module::free(ring, Side::Right, x)?;
    let rxp = Module::free(ring, Side::Left, xp)?;
    let pe = rx.submodule_as_module(e)?;
    let pep = rxp.submodule_as_module(ep)?;
    let dom = TensorProduct::new(&pe.module, &pep.module)?;
    let map = LinearMap::sandwich(ring, pe.emb.clone(), x, pep.emb.clone(), xp);
    let target = Submodule::zero(ring, x * xp)?;
    let witness = kernel_witness(&dom, &map, &target)?;
    let hypothesis = rxp.is_pure_submodule(ep, Some(&pe.module))?.holds;
    let injective = witness.is_none();
    if hypothesis && !injective {
        return Err(Error::Internal("δ is not injective although E' is E-pure".into()));
    }
    Ok(InjectivityCheck {
        injective,
        witness,
        hypothesis,
    })
}

#[derive(Debug, Clone)]
pub struct KeFormula {
    /// `Ke(κ(X' ⊗ X))` inside `W ⊗ W'`.
    pub lhs: Submodule,
    /// `Ke(X) ⊗ W' + W ⊗ Ke(X')`.
    pub rhs: Submodule,
    pub equal: bool,
    /// `W` flat and `Ke(X) ⊆ W` pure.
    pub hypothesis: bool,
}

/// Compares `Ke(κ(X' ⊗ X))` with `Ke(X) ⊗ W' + W ⊗ Ke(X')` for `X ⊆ *W`, `X' ⊆ *W'`.
pub fn ke_formula(dw: &DualModule, x: &Submodule, dwp: &DualModule, xp: &Submodule) -> Result<KeFormula> {
    let ring = dw.of.ring();
    commutative(ring, "the kernel formula")?;
    let (w, wp) = (&dw.of, &dwp.of);
    let tensor = TensorProduct::new(&w.with_side(Side::Right)?, wp)?;
    let (b, bp) = (w.rank(), wp.rank());
    let fs: Vec<Vec<u64>> = x.generators().iter().map(|z| dw.values(z)).collect();
    let fps: Vec<Vec<u64>> = xp.generators().iter().map(|z| dwp.values(z)).collect();
    let lhs = if fs.is_empty() || fps.is_empty() || b * bp == 0 {
        Submodule::full(ring, b * bp)?
    } else {
        let l: Vec<Vec<u64>> = (0..b).map(|j| fs.iter().map(|y| y[j]).collect()).collect();
        let r: Vec<Vec<u64>> = (0..bp).map(|q| fps.iter().map(|y| y[q]).collect()).collect();
        let map = LinearMap::sandwich(ring, l, fs.len(), r, fps.len());
        Submodule::preimage(&map, &Submodule::zero(ring, fs.len() * fps.len())?)?
    };
    let kx = crate::pairings::ke(dw, x)?;
    let kxp = crate::pairings::ke(dwp, xp)?;
    let mut gens = Vec::new();
    for k in kx.generators() {
        for q in 0..bp {
            let mut v = vec![ring.zero(); b * bp];
            for (j, &kj) in k.iter().enumerate() {
                v[j * bp + q] = kj;
            }
            gens.push(v);
        }
    }
    for k in kxp.generators() {
        for j in 0..b {
            let mut v = vec![ring.zero(); b * bp];
            v[j * bp..(j + 1) * bp].copy_from_slice(&k);
            gens.push(v);
        }
    }
    let rhs = Submodule::span(ring, b * bp, &gens, crate::modules::Action::Additive)?.sum(&tensor.rel);
    let lhs = lhs.sum(&tensor.rel);
    if !rhs.is_subset(&lhs) {
        return Err(Error::Internal("Ke(X) ⊗ W' + W ⊗ Ke(X') is not inside the kernel".into()));
    }
    let hypothesis = w.is_flat()?.holds && w.is_pure_submodule(&kx, None)?.holds;
    Ok(KeFormula {
        equal: lhs == rhs,
        lhs,
        rhs,
        hypothesis,
    })
}

/// `W -> R^V`, `w -> (<v, w>)_v`, with `R^V` the functions on the elements of `V`.
#[derive(Debug, Clone)]
pub struct FunctionEmbedding {
    pub ambient: Module,
    pub image: Submodule,
    pub injective: bool,
}

impl FunctionEmbedding {
    pub fn new(p: &Pairing) -> Result<FunctionEmbedding> {
        let vs = p.v().elements()?;
        let ambient = Module::free(p.ring(), Side::Left, vs.len())?;
        let rows: Vec<Vec<u64>> = (0..p.w().rank())
            .map(|j| {
                let h = p.w().generator(j);
                vs.iter().map(|v| p.eval(v, &h)).collect()
            })
            .collect();
        let image = ambient.span(&rows)?;
        let injective = image.cardinality() == p.w().cardinality();
        Ok(FunctionEmbedding {
            ambient,
            image,
            injective,
        })
    }

    /// Purity of the image, against one test module or the backend's family.
    pub fn is_pure(&self, test: Option<&Module>) -> Result<Verdict<PurityWitness>> {
        self.ambient.is_pure_submodule(&self.image, test)
    }
}

use super::{LinearMap, Module, Morphism, Presented, Side, Submodule};
use crate::error::{cap_check, Error, Result};
use crate::modules::Action;

/// Places `v` as column `j` (`place_col`) or row `i` of an `a x b` matrix, flattened.
fn place(v: &[u64], a: usize, b: usize, index: usize, as_column: bool, zero: u64) -> Vec<u64> {
    let mut out = vec![zero; a * b];
    for (t, &x) in v.iter().enumerate() {
        let pos = if as_column { t * b + index } else { index * b + t };
        out[pos] = x;
    }
    out
}

/// `k` copies of `s` stacked as the rows of a `k x rank(s)` block.
pub(crate) fn power(s: &Submodule, k: usize) -> Result<Submodule> {
    let ring = s.ring();
    let b = s.rank();
    let mut gens = Vec::new();
    for g in s.generators() {
        for i in 0..k {
            gens.push(place(&g, k, b, i, false, ring.zero()));
        }
    }
    Submodule::span(ring, k * b, &gens, Action::Additive)
}

/// The dual `Hom(M, R)` with its values on the generators of `M`.
///
/// A functional is stored by its values `y_i = f(g_i)`; for a left module `W`
/// the dual is the right module `*W` with `f(w) = Σ w_i y_i`, for a right module
/// `V` it is the left module `V*` with `f(v) = Σ y_i v_i`.
#[derive(Debug, Clone)]
pub struct DualModule {
    pub of: Module,
    pub presented: Presented,
}

impl DualModule {
    pub fn new(m: &Module) -> Result<DualModule> {
        let ring = m.ring();
        let k = m.rank();
        let rels = m.relations().generators();
        let mat: Vec<Vec<u64>> = (0..k).map(|j| rels.iter().map(|l| l[j]).collect()).collect();
        let f = match m.side() {
            Side::Left => LinearMap::right(ring, mat, rels.len()),
            Side::Right => LinearMap::left(ring, mat, rels.len()),
        };
        let values = Submodule::preimage(&f, &Submodule::zero(ring, rels.len())?)?;
        let ambient = Module::free(ring, m.side().opposite(), k)?;
        Ok(DualModule {
            of: m.clone(),
            presented: Presented::new(&ambient, &values)?,
        })
    }

    pub fn module(&self) -> &Module {
        &self.presented.module
    }

    /// Values on the generators of the underlying module.
    pub fn values(&self, y: &[u64]) -> Vec<u64> {
        self.presented.to_ambient(y)
    }

    /// Values of the `i`-th generator of the dual.
    pub fn generator_values(&self) -> &[Vec<u64>] {
        &self.presented.emb
    }

    /// `f(x)` from the values of `f`.
    pub fn eval_values(&self, values: &[u64], x: &[u64]) -> u64 {
        let ring = self.of.ring();
        let mut acc = ring.zero();
        for (&y, &v) in values.iter().zip(x) {
            let t = match self.of.side() {
                Side::Left => ring.mul(v, y),
                Side::Right => ring.mul(y, v),
            };
            acc = ring.add(acc, t);
        }
        acc
    }

    pub fn eval(&self, y: &[u64], x: &[u64]) -> u64 {
        self.eval_values(&self.values(y), x)
    }

    /// Coordinates of the functional with the given values, if it is one.
    pub fn from_values(&self, values: &[u64]) -> Result<Option<Vec<u64>>> {
        self.presented.coords_of(values)
    }

    /// Values of every functional, in the order of `module().elements()`.
    pub fn all_values(&self) -> Result<Vec<Vec<u64>>> {
        Ok(self.module().elements()?.iter().map(|y| self.values(y)).collect())
    }
}

/// `Hom(M, N)` over `Z/n`, a functional being the matrix of generator images.
#[derive(Debug, Clone)]
pub struct HomModule {
    pub source: Module,
    pub target: Module,
    pub presented: Presented,
}

impl HomModule {
    pub fn new(m: &Module, n: &Module) -> Result<HomModule> {
        let ring = m.ring();
        if ring.modulus().is_none() {
            return Err(Error::Unsupported(
                "Hom modules over table rings (only duals are supported)".into(),
            ));
        }
        if m.ring() != n.ring() || m.side() != n.side() {
            return Err(Error::Contract("Hom needs modules over one ring and side".into()));
        }
        let (a, b) = (m.rank(), n.rank());
        let rels = m.relations().generators();
        let t = rels.len();
        let left: Vec<Vec<u64>> = (0..a).map(|i| rels.iter().map(|r| r[i]).collect()).collect();
        let right: Vec<Vec<u64>> = (0..b)
            .map(|j| (0..b).map(|c| u64::from(j == c)).collect())
            .collect();
        let f = LinearMap::sandwich(ring, left, t, right, b);
        let maps = Submodule::preimage(&f, &power(n.relations(), t)?)?;
        let ambient = Module::new(m.side(), power(n.relations(), a)?);
        Ok(HomModule {
            source: m.clone(),
            target: n.clone(),
            presented: Presented::new(&ambient, &maps)?,
        })
    }

    pub fn module(&self) -> &Module {
        &self.presented.module
    }

    /// The homomorphism with coordinates `y`.
    pub fn morphism(&self, y: &[u64]) -> Result<Morphism> {
        let flat = self.presented.to_ambient(y);
        let b = self.target.rank();
        let images = (0..self.source.rank())
            .map(|i| flat[i * b..(i + 1) * b].to_vec())
            .collect();
        Morphism::new(&self.source, &self.target, images)
    }

    pub fn eval(&self, y: &[u64], x: &[u64]) -> Result<Vec<u64>> {
        Ok(self.morphism(y)?.apply(x))
    }
}

/// `M ⊗_R W` for a right module `M` and a left module `W`, as an abelian group.
///
/// Coordinates live in `R^(a x b)`: the element `Σ g_i x_ij ⊗ h_j` has entry
/// `x_ij` at `(i, j)`, and `u ⊗ w` has entries `u_i w_j`.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub left: Module,
    pub right: Module,
    pub rel: Submodule,
}

impl TensorProduct {
    pub fn new(m: &Module, w: &Module) -> Result<TensorProduct> {
        let ring = m.ring();
        if m.ring() != w.ring() {
            return Err(Error::Contract("tensor factors over different rings".into()));
        }
        if !ring.is_commutative() && (m.side() != Side::Right || w.side() != Side::Left) {
            return Err(Error::Contract("tensor needs a right and a left module".into()));
        }
        let (a, b) = (m.rank(), w.rank());
        let mut gens = Vec::new();
        for k in m.relations().generators() {
            for j in 0..b {
                gens.push(place(&k, a, b, j, true, ring.zero()));
            }
        }
        for l in w.relations().generators() {
            for i in 0..a {
                gens.push(place(&l, a, b, i, false, ring.zero()));
            }
        }
        Ok(TensorProduct {
            left: m.clone(),
            right: w.clone(),
            rel: Submodule::span(ring, a * b, &gens, Action::Additive)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.left.rank() * self.right.rank()
    }

    pub fn cardinality(&self) -> u128 {
        self.rel.index()
    }

    pub fn reduce(&self, t: &[u64]) -> Vec<u64> {
        self.rel.reduce(t)
    }

    pub fn is_zero_element(&self, t: &[u64]) -> bool {
        self.rel.contains(t)
    }

    /// The pure tensor `m ⊗ w`.
    pub fn pure(&self, m: &[u64], w: &[u64]) -> Vec<u64> {
        let ring = self.left.ring();
        let mut out = Vec::with_capacity(m.len() * w.len());
        for &x in m {
            for &y in w {
                out.push(ring.mul(x, y));
            }
        }
        self.reduce(&out)
    }

    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        cap_check("tensor elements", self.cardinality(), self.left.ring().caps().elements)?;
        self.rel.coset_representatives()
    }

    /// The tensor product as a module (commutative rings only).
    pub fn as_module(&self) -> Result<Module> {
        if !self.left.ring().is_commutative() {
            return Err(Error::Unsupported(
                "tensor products over noncommutative rings are only abelian groups".into(),
            ));
        }
        Ok(Module::new(Side::Right, self.rel.clone()))
    }

    /// Coordinates map of `f ⊗ g` into `target`.
    pub fn induced(&self, f: &Morphism, g: &Morphism, target: &TensorProduct) -> LinearMap {
        assert_eq!(f.target().rank(), target.left.rank());
        assert_eq!(g.target().rank(), target.right.rank());
        LinearMap::sandwich(
            self.left.ring(),
            f.images().to_vec(),
            target.left.rank(),
            g.images().to_vec(),
            target.right.rank(),
        )
    }

    /// For a map out of this tensor product into `R^c / target_rel`: a nonzero
    /// kernel element if the map is not injective.
    pub fn kernel_witness(&self, map: &LinearMap, target_rel: &Submodule) -> Result<Option<Vec<u64>>> {
        let ker = Submodule::preimage(map, target_rel)?;
        debug_assert!(self.rel.is_subset(&ker), "map must vanish on the relations");
        if ker == self.rel {
            return Ok(None);
        }
        Ok(ker
            .generators()
            .into_iter()
            .find(|g| !self.rel.contains(g))
            .map(|g| self.reduce(&g)))
    }
}

/// Every homomorphism `M -> N`, by exhaustive search over generator images.
pub fn all_morphisms(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    let elems = n.elements()?;
    let count = (elems.len() as u128).checked_pow(m.rank() as u32).unwrap_or(u128::MAX);
    cap_check("homomorphism search", count, m.ring().caps().search)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; m.rank()];
    loop {
        let images: Vec<Vec<u64>> = idx.iter().map(|&i| elems[i].clone()).collect();
        if let Ok(f) = Morphism::new(m, n, images) {
            out.push(f);
        }
        let mut pos = m.rank();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

pub(crate) fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<Morphism>> {
    for f in all_morphisms(m, n)? {
        if f.is_injective()? && f.is_surjective()? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

use crate::exactlin::ZnMatrix;
use crate::rings::Ring;

/// An additive map `R^(a x b) -> R^(c x d)` of the form
/// `X -> Σ L[i][p] X[i][j] R[j][q]` (entries of `X` flattened row-major).
///
/// With `b = d = 1` and `R = [[1]]` this is a right-module map `x -> Σ x_i·…` that
/// sends generator `i` to row `i` of `L`; with `a = c = 1` it is a left-module map.
/// The general form is how maps of tensor products `f ⊗ g` act on coordinates.
#[derive(Debug, Clone)]
pub struct LinearMap {
    ring: Ring,
    left: Vec<Vec<u64>>,
    right: Vec<Vec<u64>>,
    dims: [usize; 4],
}

fn identity(ring: &Ring, k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

impl LinearMap {
    /// `X -> Lᵀ X R` with `L: a x c`, `R: b x d`.
    pub fn sandwich(ring: &Ring, left: Vec<Vec<u64>>, c: usize, right: Vec<Vec<u64>>, d: usize) -> Self {
        let a = left.len();
        let b = right.len();
        assert!(left.iter().all(|r| r.len() == c), "left factor shape");
        assert!(right.iter().all(|r| r.len() == d), "right factor shape");
        LinearMap {
            ring: ring.clone(),
            left,
            right,
            dims: [a, b, c, d],
        }
    }

    /// Right-module map `x -> Σ_i m[i] x_i` with `m: a x c`.
    pub fn right(ring: &Ring, m: Vec<Vec<u64>>, c: usize) -> Self {
        Self::sandwich(ring, m, c, identity(ring, 1), 1)
    }

    /// Left-module map `x -> Σ_i x_i m[i]` with `m: a x c`.
    pub fn left(ring: &Ring, m: Vec<Vec<u64>>, c: usize) -> Self {
        Self::sandwich(ring, identity(ring, 1), 1, m, c)
    }

    /// Module map for the given side (right modules take scalars on the right).
    pub fn for_side(ring: &Ring, side: super::Side, m: Vec<Vec<u64>>, c: usize) -> Self {
        match side {
            super::Side::Right => Self::right(ring, m, c),
            super::Side::Left => Self::left(ring, m, c),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn domain_rank(&self) -> usize {
        self.dims[0] * self.dims[1]
    }

    pub fn codomain_rank(&self) -> usize {
        self.dims[2] * self.dims[3]
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let [a, b, c, d] = self.dims;
        assert_eq!(x.len(), a * b, "linear map input length");
        let r = &self.ring;
        let mut out = vec![r.zero(); c * d];
        for i in 0..a {
            for j in 0..b {
                let xij = x[i * b + j];
                if xij == r.zero() {
                    continue;
                }
                for p in 0..c {
                    let lx = r.mul(self.left[i][p], xij);
                    if lx == r.zero() {
                        continue;
                    }
                    for q in 0..d {
                        let t = r.mul(lx, self.right[j][q]);
                        out[p * d + q] = r.add(out[p * d + q], t);
                    }
                }
            }
        }
        out
    }

    /// Matrix over `Z/n` acting on row vectors (Kronecker product of the factors).
    pub fn to_zn(&self) -> ZnMatrix {
        let n = self.ring.modulus().expect("to_zn needs the Z/n backend");
        let [a, b, c, d] = self.dims;
        let mut m = ZnMatrix::zeros(n, a * b, c * d);
        for i in 0..a {
            for j in 0..b {
                for p in 0..c {
                    for q in 0..d {
                        m.set(i * b + j, p * d + q, self.left[i][p] * self.right[j][q] % n);
                    }
                }
            }
        }
        m
    }
}

//! Exact linear algebra over `Z/nZ`.
//!
//! Vectors are rows and matrices act on the right: the row span of `A` is
//! `{ x A }`. Every routine is deterministic and works on reduced residues
//! in 64-bit words, which is exact for moduli up to `2^31`.
//!
//! The central object is the Howell form: an echelon form with normalized
//! pivots (each pivot divides the modulus), reduced entries above pivots, and
//! the Howell property (every span vector whose first `j` coordinates vanish is
//! a combination of the rows whose pivot column is at least `j`). Two matrices
//! have the same row span iff their Howell forms are equal.

use crate::error::{Error, Result};

/// Largest admissible modulus.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Dense matrix with entries reduced modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ZnMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 2 && modulus <= MAX_MODULUS, "modulus out of range");
        ZnMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        if modulus > 1 {
            for i in 0..n {
                m.set(i, i, 1);
            }
        }
        m
    }

    /// Builds a matrix from rows of (possibly unreduced) integers.
    pub fn from_rows<R: AsRef<[u64]>>(modulus: u64, cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x % modulus;
            }
        }
        m
    }

    /// Builds a matrix from signed integers, reducing into `[0, modulus)`.
    pub fn from_signed(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> Self {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(modulus as i64) as u64).collect())
            .collect();
        Self::from_rows(modulus, cols, &reduced)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.data[r * self.cols + c] = x % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let n = self.modulus;
        let mut out = Self::zeros(n, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % n;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rows, "dimension mismatch in vector product");
        let n = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + xi % n * self.get(i, j)) % n;
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.cols, other.cols, "column mismatch in stack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ZnMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation.
    pub fn augment(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.rows, other.rows, "row mismatch in augment");
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.modulus, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn negate(&self) -> ZnMatrix {
        let n = self.modulus;
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = (n - *x) % n;
        }
        m
    }

    /// Keeps the columns in `range`.
    pub fn columns(&self, range: std::ops::Range<usize>) -> ZnMatrix {
        let rows: Vec<Vec<u64>> = self.rows().map(|r| r[range.clone()].to_vec()).collect();
        Self::from_rows(self.modulus, range.len(), &rows)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, s, t)` with `g = s a + t b = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn to_residue(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// Unit `u` with `u a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    let a1 = a / g;
    let n1 = n / g;
    let u0 = if n1 == 1 {
        0
    } else {
        let (_, s, _) = ext_gcd(a1 as i64, n1 as i64);
        to_residue(s, n1)
    };
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += n1;
    }
    u % n
}

fn is_nonzero(r: &[u64]) -> bool {
    r.iter().any(|&x| x != 0)
}

fn scale_row(r: &[u64], s: u64, n: u64) -> Vec<u64> {
    r.iter().map(|&x| x * s % n).collect()
}

fn axpy(target: &mut [u64], q: u64, src: &[u64], n: u64) {
    // target -= q * src
    let q = q % n;
    if q == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(src) {
        *t = (*t + n - q * s % n) % n;
    }
}

/// Howell form of a list of rows; returns the nonzero canonical rows.
pub(crate) fn howell_rows(n: u64, cols: usize, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut pending: Vec<Vec<u64>> = rows.into_iter().filter(|r| is_nonzero(r)).collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for c in 0..cols {
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(pending.len());
        for r in pending.drain(..) {
            if r[c] == 0 {
                rest.push(r);
                continue;
            }
            pivot = Some(match pivot.take() {
                None => r,
                Some(p) => {
                    let (g, s, t) = ext_gcd(p[c] as i64, r[c] as i64);
                    let (s, t) = (to_residue(s, n), to_residue(t, n));
                    let pa = to_residue(p[c] as i64 / g, n);
                    let ra = to_residue(r[c] as i64 / g, n);
                    let new_p: Vec<u64> = p
                        .iter()
                        .zip(&r)
                        .map(|(&x, &y)| (s * x % n + t * y % n) % n)
                        .collect();
                    let new_r: Vec<u64> = p
                        .iter()
                        .zip(&r)
                        .map(|(&x, &y)| (ra * x % n + n - pa * y % n) % n)
                        .collect();
                    debug_assert_eq!(new_r[c], 0);
                    if is_nonzero(&new_r) {
                        rest.push(new_r);
                    }
                    new_p
                }
            });
        }
        pending = rest;
        let Some(p) = pivot else { continue };
        if p[c] == 0 {
            // the combination collapsed to zero in this column
            if is_nonzero(&p) {
                pending.push(p);
            }
            continue;
        }
        let u = normalizing_unit(p[c], n);
        let p = scale_row(&p, u, n);
        let pc = p[c];
        let ann = scale_row(&p, n / pc, n);
        if is_nonzero(&ann) {
            pending.push(ann);
        }
        for o in out.iter_mut() {
            let q = o[c] / pc;
            axpy(o, q, &p, n);
        }
        out.push(p);
    }
    out
}

/// Unique Howell canonical form of the row span of `a` (zero rows removed).
pub fn howell_form(a: &ZnMatrix) -> ZnMatrix {
    let rows = howell_rows(a.modulus, a.cols, a.to_rows());
    ZnMatrix::from_rows(a.modulus, a.cols, &rows)
}

/// Pivot column of each row of a Howell form.
pub fn pivot_columns(h: &ZnMatrix) -> Vec<usize> {
    h.rows()
        .map(|r| r.iter().position(|&x| x != 0).expect("Howell rows are nonzero"))
        .collect()
}

/// Reduces `v` against a Howell form. The result is the canonical
/// representative of the coset `v + span(h)`: entries in pivot columns lie in
/// `[0, pivot)`.
pub fn reduce(h: &ZnMatrix, v: &[u64]) -> Vec<u64> {
    let n = h.modulus;
    let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
    for r in h.rows() {
        let c = r.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
        let q = v[c] / r[c];
        axpy(&mut v, q, r, n);
    }
    v
}

/// Membership of `v` in the row span of a Howell form.
pub fn span_contains(h: &ZnMatrix, v: &[u64]) -> bool {
    !is_nonzero(&reduce(h, v))
}

/// Rows generating `{ x : x A = 0 }`, in Howell form.
pub fn kernel(a: &ZnMatrix) -> ZnMatrix {
    let n = a.modulus;
    let r = a.rows;
    let aug = a.augment(&ZnMatrix::identity(n, r));
    let h = howell_rows(n, a.cols + r, aug.to_rows());
    let ker: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|row| !is_nonzero(&row[..a.cols]))
        .map(|row| row[a.cols..].to_vec())
        .collect();
    ZnMatrix::from_rows(n, r, &howell_rows(n, r, ker))
}

/// Solution set of `x A = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Canonical particular solution (reduced modulo the kernel).
    pub particular: Vec<u64>,
    /// Howell form of the kernel of `A`.
    pub kernel: ZnMatrix,
}

/// Solves `x A = b`; `Ok(None)` when no solution exists.
pub fn solve(a: &ZnMatrix, b: &[u64]) -> Result<Option<Solution>> {
    if b.len() != a.cols {
        return Err(Error::Contract(format!(
            "solve: right-hand side has length {}, matrix has {} columns",
            b.len(),
            a.cols
        )));
    }
    let n = a.modulus;
    let c = a.cols;
    let r = a.rows;
    let aug = a.augment(&ZnMatrix::identity(n, r));
    let h = howell_rows(n, c + r, aug.to_rows());
    let mut v: Vec<u64> = b.iter().map(|&x| x % n).collect();
    v.extend(std::iter::repeat(0).take(r));
    for row in &h {
        let pc = row.iter().position(|&x| x != 0).unwrap();
        if pc >= c {
            break;
        }
        if v[pc] % row[pc] != 0 {
            return Ok(None);
        }
        let q = v[pc] / row[pc];
        axpy(&mut v, q, row, n);
    }
    if is_nonzero(&v[..c]) {
        return Ok(None);
    }
    let x: Vec<u64> = v[c..].iter().map(|&t| (n - t) % n).collect();
    let kernel = kernel(a);
    let particular = reduce(&kernel, &x);
    debug_assert_eq!(a.apply(&particular), b.iter().map(|&x| x % n).collect::<Vec<_>>());
    Ok(Some(Solution { particular, kernel }))
}

/// Row span intersection of two matrices with the same column count.
pub fn intersect(a: &ZnMatrix, b: &ZnMatrix) -> ZnMatrix {
    assert_eq!(a.cols, b.cols);
    let n = a.modulus;
    if a.rows == 0 || b.rows == 0 {
        return ZnMatrix::zeros(n, 0, a.cols);
    }
    // x a = y b  <=>  (x, y) [a; -b] = 0
    let stacked = a.stack(&b.negate());
    let ker = kernel(&stacked);
    let xs = ker.columns(0..a.rows);
    howell_form(&xs.mul(a))
}

/// Row span sum.
pub fn span_sum(a: &ZnMatrix, b: &ZnMatrix) -> ZnMatrix {
    howell_form(&a.stack(b))
}

/// Preimage `{ x : x A ∈ span(target) }`, in Howell form.
pub fn preimage(a: &ZnMatrix, target: &ZnMatrix) -> ZnMatrix {
    if target.rows == 0 {
        return kernel(a);
    }
    let stacked = a.stack(&target.negate());
    let ker = kernel(&stacked);
    howell_form(&ker.columns(0..a.rows))
}

/// Cardinality of the quotient `Z/n^cols / span(h)` for a Howell form `h`.
pub fn quotient_cardinality(h: &ZnMatrix) -> u128 {
    let n = h.modulus as u128;
    let piv = pivot_columns(h);
    let mut card: u128 = 1;
    for c in 0..h.cols {
        match piv.iter().position(|&p| p == c) {
            Some(i) => card *= h.get(i, c) as u128,
            None => card *= n,
        }
    }
    card
}

/// Cardinality of `span(h)` for a Howell form `h`.
pub fn span_cardinality(h: &ZnMatrix) -> u128 {
    let n = h.modulus as u128;
    h.rows()
        .map(|r| {
            let c = r.iter().position(|&x| x != 0).unwrap();
            n / r[c] as u128
        })
        .product()
}

/// Invariant factors `d_1 | d_2 | ...` of the cokernel `Z/n^cols / rowspan(a)`.
///
/// The matrix is lifted to the integers and stacked with `n I`; the diagonal
/// of the integer Smith form gives the cyclic decomposition. Factors equal to
/// one are dropped, free summands appear as `n`.
pub fn invariant_factors(a: &ZnMatrix) -> Vec<u64> {
    let n = a.modulus as i128;
    let k = a.cols;
    let mut m: Vec<Vec<i128>> = a.rows().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..k {
        let mut row = vec![0i128; k];
        row[i] = n;
        m.push(row);
    }
    let diag = smith_diagonal(m, k);
    let mut out: Vec<u64> = diag
        .into_iter()
        .map(|d| d.unsigned_abs() as u64)
        .filter(|&d| d != 1)
        .collect();
    out.sort_unstable();
    out
}

/// Diagonal of the integer Smith normal form (first `min(rows, cols)` entries).
pub(crate) fn smith_diagonal(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let size = rows.min(cols);
    let mut diag = Vec::with_capacity(size);
    for t in 0..size {
        loop {
            // smallest |entry|, then smallest row, then smallest column
            let mut best: Option<(i128, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let cand = (x.abs(), i, j);
                        if best.map_or(true, |b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                // remaining block is zero
                diag.extend(std::iter::repeat(0).take(size - t));
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = m[i][j];
                        m[t][j] += x;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

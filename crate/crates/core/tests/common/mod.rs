//! Brute-force models of finite `Z/n`-modules `⊕ Z/d_i`, written directly from
//! the definitions and sharing no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dualpair::modules::{Module, Side, Submodule};
use dualpair::rings::Ring;

pub type Set = BTreeSet<usize>;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `⊕ Z/d_i` over `Z/n`, elements indexed in mixed radix (first coordinate fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fin {
    pub n: u64,
    pub d: Vec<u64>,
}

impl Fin {
    pub fn new(n: u64, d: &[u64]) -> Fin {
        assert!(d.iter().all(|&x| x >= 1 && n % x == 0));
        Fin { n, d: d.to_vec() }
    }

    pub fn card(&self) -> usize {
        self.d.iter().map(|&x| x as usize).product()
    }

    pub fn elem(&self, mut i: usize) -> Vec<u64> {
        self.d
            .iter()
            .map(|&d| {
                let c = (i % d as usize) as u64;
                i /= d as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, v: &[u64]) -> usize {
        let mut i = 0;
        for (k, &d) in self.d.iter().enumerate().rev() {
            i = i * d as usize + (v[k] % d) as usize;
        }
        i
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.card()).map(|i| self.elem(i)).collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.elem(a), self.elem(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.index(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.elem(a), self.elem(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.d)
            .map(|((p, q), d)| p + d - q % d)
            .collect();
        self.index(&s)
    }

    /// Subgroup generated by `gens`; over `Z/n` these are the submodules.
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> Set {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set: Set = [0].into_iter().collect();
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    pub fn sum(&self, a: &Set, b: &Set) -> Set {
        self.span(a.iter().chain(b).copied())
    }

    pub fn subgroups(&self) -> Vec<Set> {
        let mut all: BTreeSet<Set> = BTreeSet::new();
        let zero = self.span([]);
        all.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(s) = frontier.pop() {
            for e in 0..self.card() {
                if s.contains(&e) {
                    continue;
                }
                let t = self.span(s.iter().copied().chain([e]));
                if all.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        all.into_iter().collect()
    }

    /// Values on the generators of the functional with dual coordinates `u`:
    /// `y_i = (n / d_i) u_i`, so the dual is again `⊕ Z/d_i`.
    pub fn functional(&self, u: &[u64]) -> Vec<u64> {
        u.iter().zip(&self.d).map(|(&c, &d)| (self.n / d) * c % self.n).collect()
    }

    pub fn dual_coords(&self, values: &[u64]) -> Vec<u64> {
        values
            .iter()
            .zip(&self.d)
            .map(|(&y, &d)| {
                let step = self.n / d;
                assert_eq!(y % self.n % step, 0, "not a functional");
                (y % self.n) / step
            })
            .collect()
    }

    /// `f(x) = Σ x_i y_i` for a functional given by its values.
    pub fn apply(&self, y: &[u64], x: &[u64]) -> u64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum::<u64>() % self.n
    }

    /// The library module with the same invariant factors.
    pub fn module(&self, ring: &Ring, side: Side) -> Module {
        Module::from_factors(ring, side, &self.d).expect("factors divide n")
    }

    /// Library submodule → set of element indices.
    pub fn set_of(&self, s: &Submodule) -> Set {
        s.elements().expect("small").iter().map(|v| self.index(v)).collect()
    }

    /// Library submodule of the dual (given by the dual's value map) → set in the dual.
    pub fn dual_set_of(&self, values: impl IntoIterator<Item = Vec<u64>>) -> Set {
        values.into_iter().map(|y| self.index(&self.dual_coords(&y))).collect()
    }

    pub fn gens_of(&self, s: &Set) -> Vec<Vec<u64>> {
        s.iter().map(|&i| self.elem(i)).collect()
    }
}

/// All divisor chains of `n` (factors `> 1`) with product at most `max_card`.
pub fn chains(n: u64, max_card: usize) -> Vec<Vec<u64>> {
    let divs: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    while let Some(c) = frontier.pop() {
        let card: usize = c.iter().map(|&d| d as usize).product();
        for &d in &divs {
            if c.last().is_some_and(|&l| d % l != 0) || card * d as usize > max_card {
                continue;
            }
            let mut t = c.clone();
            t.push(d);
            out.push(t.clone());
            frontier.push(t);
        }
    }
    out.sort();
    out
}

/// Every `Z/n`-module of order at most `max_card`, up to isomorphism.
pub fn test_modules(n: u64, max_card: usize) -> Vec<Fin> {
    chains(n, max_card).iter().map(|c| Fin::new(n, c)).collect()
}

/// `<v, w> = Σ w_j β_pj v_p` on `V = ⊕ Z/v_p`, `W = ⊕ Z/w_j`.
#[derive(Debug, Clone)]
pub struct Bil {
    pub n: u64,
    pub v: Fin,
    pub w: Fin,
    pub beta: Vec<Vec<u64>>,
    table: Vec<u64>,
}

impl Bil {
    pub fn new(n: u64, v: &[u64], w: &[u64], beta: Vec<Vec<u64>>) -> Bil {
        let mut b = Bil {
            n,
            v: Fin::new(n, v),
            w: Fin::new(n, w),
            beta,
            table: Vec::new(),
        };
        let (vs, ws) = (b.v.elements(), b.w.elements());
        b.table = vs.iter().flat_map(|x| ws.iter().map(|y| b.eval(x, y)).collect::<Vec<_>>()).collect();
        b
    }

    /// The canonical pairing `(*W, W)`: the `p`-th generator of `*W` takes the
    /// value `n / d_p` on the `p`-th generator of `W`.
    pub fn canonical(n: u64, w: &[u64]) -> Bil {
        let beta = (0..w.len())
            .map(|p| (0..w.len()).map(|j| if p == j { n / w[p] % n } else { 0 }).collect())
            .collect();
        Bil::new(n, w, w, beta)
    }

    /// Well defined on the quotients: `v_p β_pj = w_j β_pj = 0`.
    pub fn balanced(&self) -> bool {
        self.beta.iter().enumerate().all(|(p, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &b)| (self.v.d[p] * b) % self.n == 0 && (self.w.d[j] * b) % self.n == 0)
        })
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> u64 {
        let mut acc = 0;
        for (p, &xp) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                acc = (acc + yj * self.beta[p][j] % self.n * xp) % self.n;
            }
        }
        acc
    }

    fn ev(&self, v: usize, w: usize) -> u64 {
        self.table[v * self.w.card() + w]
    }

    /// `X^⊥ ⊆ W`.
    pub fn perp_of_v(&self, x: &Set) -> Set {
        (0..self.w.card()).filter(|&w| x.iter().all(|&v| self.ev(v, w) == 0)).collect()
    }

    /// `K^⊥ ⊆ V`.
    pub fn perp_of_w(&self, k: &Set) -> Set {
        (0..self.v.card()).filter(|&v| k.iter().all(|&w| self.ev(v, w) == 0)).collect()
    }

    pub fn radical(&self) -> Set {
        self.perp_of_w(&(0..self.w.card()).collect())
    }

    /// `v` is in the closure when every neighbourhood `v + K^⊥` (`K ⊆ W`
    /// finitely generated) meets `X`; `K = W` gives the smallest one.
    pub fn closure(&self, x: &Set) -> Set {
        let rad = self.radical();
        (0..self.v.card())
            .filter(|&v| x.iter().any(|&u| rad.contains(&self.v.sub(v, u))))
            .collect()
    }

    pub fn biperp(&self, x: &Set) -> Set {
        self.perp_of_w(&self.perp_of_v(x))
    }

    /// `κ(V) = *W`.
    pub fn dense(&self) -> bool {
        let images: BTreeSet<Vec<u64>> = (0..self.v.card())
            .map(|v| {
                let x = self.v.elem(v);
                (0..self.w.d.len())
                    .map(|j| {
                        let mut e = vec![0; self.w.d.len()];
                        e[j] = 1;
                        self.eval(&x, &e)
                    })
                    .collect()
            })
            .collect();
        images.len() == self.w.card()
    }

    /// `χ: W -> V*` injective.
    pub fn w_embeds(&self) -> bool {
        (1..self.w.card()).all(|w| (0..self.v.card()).any(|v| self.ev(v, w) != 0))
    }

    /// `α_M: M ⊗ W -> Hom(V, M)`, `m ⊗ w -> [v -> m <v, w>]`, is injective.
    /// `M ⊗ W = ⊕ Z/gcd(a_i, b_j)`; a map out of `V` is fixed by its values on
    /// the generators of `V`.
    pub fn alpha_injective(&self, m: &Fin) -> bool {
        let (r, s) = (m.d.len(), self.w.d.len());
        let g: Vec<u64> = (0..r * s).map(|k| gcd(m.d[k / s], self.w.d[k % s])).collect();
        let mut c = vec![0u64; r * s];
        // Odometer over all of M ⊗ W, skipping t = 0.
        loop {
            let mut k = 0;
            while k < c.len() {
                c[k] += 1;
                if c[k] < g[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == c.len() {
                return true;
            }
            let killed = (0..self.v.d.len()).all(|p| {
                (0..r).all(|i| {
                    let val: u64 = (0..s).map(|j| c[i * s + j] * self.beta[p][j] % self.n).sum();
                    val % m.d[i] == 0
                })
            });
            if killed {
                return false;
            }
        }
    }

    pub fn alpha(&self, tests: &[Fin]) -> bool {
        tests.iter().all(|m| self.alpha_injective(m))
    }
}

/// `1_M ⊗ θ: M ⊗ W' -> M ⊗ W` injective, `θ` given by the images of the
/// generators of `W'`.
pub fn tensor_injective(m: &Fin, wp: &Fin, w: &Fin, theta: &[Vec<u64>]) -> bool {
    let n = m.n;
    let (r, s, sp) = (m.d.len(), w.d.len(), wp.d.len());
    let gp: Vec<u64> = (0..r * sp).map(|k| gcd(m.d[k / sp], wp.d[k % sp])).collect();
    let g: Vec<u64> = (0..r * s).map(|k| gcd(m.d[k / s], w.d[k % s])).collect();
    let src = Fin::new(n, &gp);
    for t in 1..src.card() {
        let c = src.elem(t);
        let zero = (0..r).all(|i| {
            (0..s).all(|j| {
                let val: u64 = (0..sp).map(|q| c[i * sp + q] * theta[q][j]).sum();
                val % g[i * s + j] == 0
            })
        });
        if zero {
            return false;
        }
    }
    true
}

/// A map `⊕ Z/b'_q -> ⊕ Z/b_j` given by generator images is well defined.
pub fn is_morphism(wp: &Fin, w: &Fin, theta: &[Vec<u64>]) -> bool {
    theta
        .iter()
        .zip(&wp.d)
        .all(|(img, &b)| img.iter().zip(&w.d).all(|(&x, &d)| (b * x) % d == 0))
}

pub fn apply_map(wp: &Fin, w: &Fin, theta: &[Vec<u64>], x: usize) -> usize {
    let c = wp.elem(x);
    let v: Vec<u64> = (0..w.d.len())
        .map(|j| c.iter().zip(theta).map(|(&a, img)| a * img[j]).sum())
        .collect();
    w.index(&v)
}

pub fn injective(wp: &Fin, w: &Fin, theta: &[Vec<u64>]) -> bool {
    (1..wp.card()).all(|x| apply_map(wp, w, theta, x) != 0)
}

pub fn squarefree(n: u64) -> bool {
    (2..=n).all(|p| n % (p * p) != 0)
}

/// `Z/d` is a projective `Z/n`-module: `Z/n -> Z/d` splits.
pub fn cyclic_projective(n: u64, d: u64) -> bool {
    (0..n).any(|t| (d * t) % n == 0 && t % d == 1 % d)
}

mod common;

use common::{chains, cyclic_projective, gcd, tensor_injective, test_modules, Fin};
use dualpair::modules::{all_morphisms, HomModule, Module, Side, TensorProduct};
use dualpair::rings::Ring;
use proptest::prelude::*;

fn corpus_shapes(n: u64, max_card: usize) -> Vec<Vec<u64>> {
    chains(n, max_card).into_iter().filter(|c| c.len() <= 2).collect()
}

fn right(r: &Ring, d: &[u64]) -> Module {
    Module::from_factors(r, Side::Right, d).unwrap()
}

fn tensor(m: &Module, n: &Module) -> Module {
    TensorProduct::new(m, n).unwrap().as_module().unwrap()
}

#[test]
fn hom_tensor_adjunction_counts() {
    for n in [4u64, 6, 9] {
        let r = Ring::zmod(n).unwrap();
        let shapes = corpus_shapes(n, 16);
        for a in &shapes {
            for b in &shapes {
                let mn = tensor(&right(&r, a), &right(&r, b));
                for c in &shapes {
                    let p = right(&r, c);
                    let lhs = HomModule::new(&mn, &p).unwrap().module().cardinality();
                    let hom_np = HomModule::new(&right(&r, b), &p).unwrap().module().clone();
                    let rhs = HomModule::new(&right(&r, a), &hom_np).unwrap().module().cardinality();
                    let mut oracle = 1u128;
                    for &x in a {
                        for &y in b {
                            for &z in c {
                                oracle *= gcd(gcd(x, y), z) as u128;
                            }
                        }
                    }
                    assert_eq!((lhs, rhs), (oracle, oracle), "Z/{n}: M = {a:?}, N = {b:?}, P = {c:?}");
                }
            }
        }
    }
}

#[test]
fn tensor_distributes_over_direct_sums() {
    for n in [4u64, 6, 8, 12] {
        let r = Ring::zmod(n).unwrap();
        let shapes = corpus_shapes(n, 16);
        for a in &shapes {
            for a2 in &shapes {
                let sum = right(&r, a).direct_sum(&right(&r, a2)).unwrap().module;
                for b in &shapes {
                    let nb = right(&r, b);
                    let lhs = tensor(&sum, &nb);
                    let rhs = tensor(&right(&r, a), &nb).direct_sum(&tensor(&right(&r, a2), &nb)).unwrap().module;
                    assert_eq!(lhs.canonical(), rhs.canonical(), "Z/{n}: {a:?} ⊕ {a2:?} against {b:?}");
                    assert!(lhs.is_isomorphic(&rhs).unwrap());
                }
            }
        }
    }
}

#[test]
fn projective_modules_are_flat() {
    for n in 2..=12u64 {
        let r = Ring::zmod(n).unwrap();
        let semisimple = r.is_semisimple().unwrap();
        for shape in corpus_shapes(n, 64) {
            for side in [Side::Left, Side::Right] {
                let m = Module::from_factors(&r, side, &shape).unwrap();
                let projective = m.is_projective().unwrap().is_some();
                let flat = m.is_flat().unwrap().holds;
                assert!(!projective || flat, "Z/{n}: {shape:?}");
                assert_eq!(projective, shape.iter().all(|&d| cyclic_projective(n, d)), "Z/{n}: {shape:?}");
                assert_eq!(flat, projective, "finite flat modules over Z/{n} are projective");
                if semisimple {
                    assert!(projective && flat);
                }
            }
        }
    }
}

#[test]
fn direct_summands_are_pure() {
    for n in [4u64, 6, 8, 9] {
        let r = Ring::zmod(n).unwrap();
        let tests = test_modules(n, 64);
        let shapes = corpus_shapes(n, 16);
        for a in &shapes {
            for b in &shapes {
                let ds = right(&r, a).direct_sum(&right(&r, b)).unwrap();
                for inj in &ds.injections {
                    let image = inj.image().unwrap();
                    assert!(ds.module.is_pure_submodule(&image, None).unwrap().holds, "Z/{n}: {a:?} ⊕ {b:?}");
                }
                // Brute force: 1 ⊗ ι stays injective against every small module.
                let (fa, fsum) = (Fin::new(n, a), Fin::new(n, &[a.clone(), b.clone()].concat()));
                let iota: Vec<Vec<u64>> = (0..a.len())
                    .map(|i| (0..fsum.d.len()).map(|j| u64::from(i == j)).collect())
                    .collect();
                assert!(tests.iter().all(|m| tensor_injective(m, &fa, &fsum, &iota)));
            }
        }
    }
}

fn small_module() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (2u64..=9, 1usize..=2).prop_flat_map(|(n, k)| {
        let row = prop::collection::vec(0..n, k);
        (Just(n), Just(k), prop::collection::vec(row, 0..=3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn canonical_isomorphism_matches_exhaustive_search(
        (n, k, rels) in small_module(),
        (k2, rels2) in (1usize..=2, prop::collection::vec(prop::collection::vec(0u64..64, 2), 0..=3)),
    ) {
        let r = Ring::zmod(n).unwrap();
        let m = Module::fp_module(&r, Side::Right, k, &rels).unwrap();
        prop_assume!(m.cardinality() <= 32);
        let rels2: Vec<Vec<u64>> = rels2.iter().map(|row| row[..k2].iter().map(|x| x % n).collect()).collect();
        let m2 = Module::fp_module(&r, Side::Right, k2, &rels2).unwrap();
        let canon = right(&r, &m.invariant_factors().unwrap());
        for other in [m2, canon] {
            if other.cardinality() > 32 {
                continue;
            }
            let exhaustive = m.cardinality() == other.cardinality()
                && all_morphisms(&m, &other)
                    .unwrap()
                    .iter()
                    .any(|f| f.is_injective().unwrap() && f.is_surjective().unwrap());
            prop_assert_eq!(m.is_isomorphic(&other).unwrap(), exhaustive);
        }
    }

    #[test]
    fn cardinality_is_the_product_of_invariant_factors((n, k, rels) in small_module()) {
        let r = Ring::zmod(n).unwrap();
        let m = Module::fp_module(&r, Side::Left, k, &rels).unwrap();
        let factors = m.invariant_factors().unwrap();
        prop_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(factors.iter().all(|d| n % d == 0));
        prop_assert_eq!(factors.iter().map(|&d| d as u128).product::<u128>(), m.cardinality());
        prop_assert_eq!(m.elements().unwrap().len() as u128, m.cardinality());
    }
}

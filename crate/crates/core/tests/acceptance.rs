//! Acceptance criteria, each checked against the brute-force models in
//! `common`. Every test prints one PASS/FAIL line; run with `--nocapture`.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Display;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use common::*;
use dualpair::alphacond::{is_locally_projective, ke_formula, product_pairing, q2_membership, q2_routes, satisfies_alpha};
use dualpair::instance::{InstanceDocument, ModuleSpec, RingSpec};
use dualpair::modules::{Certainty, DualModule, Module, Morphism, Side, Submodule};
use dualpair::pairings::{an, ke, Pairing};
use dualpair::rings::{named, BaerWitness, Ring};
use dualpair::theoremlab::{check, corpus, CorpusConfig, Kind, Status};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

type R<T> = Result<T, String>;

fn e<E: Display>(x: E) -> String {
    x.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn criterion(num: u32, name: &str, limit: Option<f64>, body: impl FnOnce() -> R<String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|p| p.into_inner());
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    let res = match (res, limit) {
        (Ok(d), Some(l)) if secs > l => Err(format!("{d}; over the {l} s budget")),
        (r, _) => r,
    };
    let line = match &res {
        Ok(d) => format!("criterion {num:02} {name}: PASS ({d}; {secs:.2} s)\n"),
        Err(m) => format!("criterion {num:02} {name}: FAIL ({m}; {secs:.2} s)\n"),
    };
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    if let Err(m) = res {
        panic!("criterion {num:02} {name} failed: {m}");
    }
}

struct Sample {
    label: String,
    doc: InstanceDocument,
    pairing: Pairing,
    bil: Bil,
}

fn factors(doc: &InstanceDocument, name: &str) -> Vec<u64> {
    doc.modules[name].factors.clone().expect("factor module")
}

fn corpus_of(n: u64, cfg: CorpusConfig) -> R<(Ring, Vec<dualpair::theoremlab::Instance>)> {
    let ring = Ring::zmod(n).map_err(e)?;
    let cfg = CorpusConfig {
        rings: vec![RingSpec::Zmod(n)],
        ..cfg
    };
    Ok((ring, corpus(&cfg).map_err(e)?))
}

fn corpus_pairings(n: u64, cfg: CorpusConfig) -> R<(Ring, Vec<Sample>)> {
    let (ring, insts) = corpus_of(n, cfg)?;
    let mut out = Vec::new();
    for inst in insts.into_iter().filter(|i| i.kind == Kind::Pairing) {
        let doc = inst.document;
        let loaded = doc.load_with(&ring).map_err(e)?;
        let pairing = loaded.pairing().ok_or("corpus pairing without P")?.clone();
        let beta = doc.pairings["P"].beta.clone().ok_or("corpus pairing without beta")?;
        let bil = Bil::new(n, &factors(&doc, "V"), &factors(&doc, "W"), beta);
        ensure!(bil.balanced(), "{}: unbalanced corpus pairing", inst.label);
        out.push(Sample {
            label: inst.label,
            doc,
            pairing,
            bil,
        });
    }
    Ok((ring, out))
}

/// Library submodules of `V` keyed by shape, with the oracle's subgroup count
/// checked once per shape.
fn submodules_of(cache: &mut HashMap<Vec<u64>, Vec<Submodule>>, s: &Sample) -> R<Vec<Submodule>> {
    if let Some(v) = cache.get(&s.bil.v.d) {
        return Ok(v.clone());
    }
    let subs = s.pairing.v().submodules().map_err(e)?;
    let oracle: BTreeSet<Set> = s.bil.v.subgroups().into_iter().collect();
    let lib: BTreeSet<Set> = subs.iter().map(|x| s.bil.v.set_of(x)).collect();
    ensure!(oracle == lib, "submodule lattice of {:?} differs from the oracle", s.bil.v.d);
    cache.insert(s.bil.v.d.clone(), subs.clone());
    Ok(subs)
}

#[test]
fn criterion_01_closure_equals_biperp() {
    criterion(1, "closure = biperp on the zmod corpus", Some(120.0), || {
        let (mut pairings, mut subs) = (0, 0);
        for n in [4, 6, 8, 9, 12] {
            let (_, samples) = corpus_pairings(n, CorpusConfig::default())?;
            let mut cache = HashMap::new();
            for s in &samples {
                pairings += 1;
                for x in submodules_of(&mut cache, s)? {
                    subs += 1;
                    let xs = s.bil.v.set_of(&x);
                    let cl = s.bil.closure(&xs);
                    let lib_cl = s.bil.v.set_of(&s.pairing.closure(&x).map_err(e)?);
                    let lib_bp = s.bil.v.set_of(&s.pairing.biperp(&x).map_err(e)?);
                    ensure!(cl == lib_cl, "{}: closure of {:?} differs from the oracle", s.label, x.generators());
                    ensure!(cl == lib_bp, "{}: X^⊥⊥ of {:?} differs from the closure", s.label, x.generators());
                    ensure!(cl == s.bil.biperp(&xs), "{}: oracle closure and biperp differ", s.label);
                }
            }
        }
        Ok(format!("{pairings} pairings, {subs} submodules"))
    });
}

#[test]
fn criterion_02_annihilator_conditions() {
    criterion(2, "An-Ke identities on modules with at most 3 generators", Some(60.0), || {
        let (mut modules, mut checks) = (0, 0u64);
        for n in [4, 6, 8] {
            let ring = Ring::zmod(n).map_err(e)?;
            for chain in chains(n, 64).into_iter().filter(|c| c.len() <= 3) {
                modules += 1;
                let fin = Fin::new(n, &chain);
                let m = fin.module(&ring, Side::Right);
                let d = DualModule::new(&m).map_err(e)?;
                let dual_set = |s: &Submodule| -> R<Set> {
                    Ok(fin.dual_set_of(s.elements().map_err(e)?.iter().map(|y| d.values(y))))
                };
                let all_u: Vec<Vec<u64>> = (0..fin.card()).map(|u| fin.functional(&fin.elem(u))).collect();
                let oracle_an = |l: &Set| -> Set {
                    (0..fin.card())
                        .filter(|&u| l.iter().all(|&x| fin.apply(&all_u[u], &fin.elem(x)) == 0))
                        .collect()
                };
                let oracle_ke = |xs: &Set| -> Set {
                    (0..fin.card())
                        .filter(|&x| xs.iter().all(|&u| fin.apply(&all_u[u], &fin.elem(x)) == 0))
                        .collect()
                };

                let subs = m.submodules().map_err(e)?;
                let oracle_subs: BTreeSet<Set> = fin.subgroups().into_iter().collect();
                let lib_subs: BTreeSet<Set> = subs.iter().map(|s| fin.set_of(s)).collect();
                ensure!(oracle_subs == lib_subs, "{chain:?}: submodule lattice differs");

                let mut ans = Vec::new();
                for l in &subs {
                    let ls = fin.set_of(l);
                    let a = an(&d, l).map_err(e)?;
                    let oa = oracle_an(&ls);
                    ensure!(dual_set(&a)? == oa, "{chain:?}: An({:?}) differs from the oracle", l.generators());
                    let kea = fin.set_of(&ke(&d, &a).map_err(e)?);
                    ensure!(kea == oracle_ke(&oa), "{chain:?}: KeAn({:?}) differs from the oracle", l.generators());
                    let separated = (0..fin.card())
                        .filter(|x| !ls.contains(x))
                        .all(|x| oa.iter().any(|&u| fin.apply(&all_u[u], &fin.elem(x)) != 0));
                    let (q, _) = m.quotient(l).map_err(e)?;
                    let lib_cog = q.is_cogenerated().map_err(e)?.holds;
                    ensure!(
                        (kea == ls) == separated && separated == lib_cog,
                        "{chain:?}, L = {:?}: KeAn(L) = L is {}, N/L cogenerated is {separated} (library {lib_cog})",
                        l.generators(),
                        kea == ls
                    );
                    ans.push((ls, oa, a));
                    checks += 2;
                }
                for (i, (l1, a1, la1)) in ans.iter().enumerate() {
                    for (l2, a2, la2) in &ans[i..] {
                        let meet: Set = l1.intersection(l2).copied().collect();
                        ensure!(
                            oracle_an(&meet) == fin.sum(a1, a2),
                            "{chain:?}: An(L1 ∩ L2) ≠ An(L1) + An(L2) in the oracle"
                        );
                        checks += 1;
                        if fin.card() <= 32 {
                            let meet_lib = subs[ans.iter().position(|t| t.0 == *l1).unwrap()]
                                .intersect(&subs[ans.iter().position(|t| t.0 == *l2).unwrap()]);
                            let lhs = an(&d, &meet_lib).map_err(e)?;
                            ensure!(lhs == la1.sum(la2), "{chain:?}: library An(L1 ∩ L2) ≠ An(L1) + An(L2)");
                        }
                    }
                }
                for x in d.module().submodules().map_err(e)? {
                    let xs = dual_set(&x)?;
                    let k = ke(&d, &x).map_err(e)?;
                    let ks = fin.set_of(&k);
                    ensure!(ks == oracle_ke(&xs), "{chain:?}: Ke(X) differs from the oracle");
                    ensure!(oracle_an(&ks) == xs, "{chain:?}: AnKe(X) ≠ X in the oracle");
                    ensure!(an(&d, &k).map_err(e)? == x, "{chain:?}: library AnKe(X) ≠ X");
                    checks += 1;
                }
                let doc = InstanceDocument::new(RingSpec::Zmod(n)).with_module("N", ModuleSpec::factors(Side::Right, &chain));
                for id in ["An-Ke.1", "An-Ke.2", "An-Ke.3"] {
                    let r = check(id, &doc, 0).map_err(e)?;
                    ensure!(r.status == Status::Pass, "{chain:?}: {id} is {:?} ({:?})", r.status, r.note);
                }
            }
        }
        Ok(format!("{modules} modules, {checks} identities"))
    });
}

#[test]
fn criterion_03_density_routes_agree() {
    criterion(3, "closure and orthogonal density routes agree", None, || {
        let mut pairs = 0u64;
        for n in [4, 6, 8, 9, 12] {
            let (_, samples) = corpus_pairings(n, CorpusConfig::default())?;
            let mut cache = HashMap::new();
            for s in &samples {
                let subs = submodules_of(&mut cache, s)?;
                let sets: Vec<Set> = subs.iter().map(|x| s.bil.v.set_of(x)).collect();
                let closures: Vec<Set> = sets.iter().map(|x| s.bil.closure(x)).collect();
                let perps: Vec<Set> = sets.iter().map(|x| s.bil.perp_of_v(x)).collect();
                for (i, x) in subs.iter().enumerate() {
                    for (j, y) in subs.iter().enumerate() {
                        if !sets[i].is_subset(&sets[j]) {
                            continue;
                        }
                        pairs += 1;
                        let oracle = sets[j].is_subset(&closures[i]);
                        ensure!(oracle == (perps[i] == perps[j]), "{}: oracle routes disagree", s.label);
                        let v = s.pairing.is_dense(x, y).map_err(e)?;
                        ensure!(
                            v.dense == oracle && v.perp_criterion == oracle,
                            "{}: X = {:?}, Y = {:?}: library ({}, {}), oracle {oracle}",
                            s.label,
                            x.generators(),
                            y.generators(),
                            v.dense,
                            v.perp_criterion
                        );
                    }
                }
            }
        }
        Ok(format!("{pairs} pairs X ⊆ Y"))
    });
}

#[test]
fn criterion_04_local_projectivity_routes() {
    criterion(4, "local projectivity: α route = dual basis route", None, || {
        let mut modules = 0;
        for n in [4, 6, 8, 9] {
            let ring = Ring::zmod(n).map_err(e)?;
            let tests = test_modules(n, 64);
            for chain in chains(n, (n * n) as usize).into_iter().filter(|c| c.len() <= 2) {
                modules += 1;
                let w = Module::from_factors(&ring, Side::Left, &chain).map_err(e)?;
                let lp = is_locally_projective(&w).map_err(e)?;
                let projective = chain.iter().all(|&d| cyclic_projective(n, d));
                let alpha = Bil::canonical(n, &chain).alpha(&tests);
                ensure!(
                    lp.alpha_route.certainty == Certainty::Exact
                        && lp.alpha_route.holds == lp.dual_basis_route
                        && lp.holds == projective
                        && alpha == projective,
                    "Z/{n}, W = {chain:?}: α route {}, dual bases {}, oracle projective {projective}, oracle α {alpha}",
                    lp.alpha_route.holds,
                    lp.dual_basis_route
                );
            }
        }

        let ring = Ring::zmod(4).map_err(e)?;
        let w = Module::from_factors(&ring, Side::Left, &[2]).map_err(e)?;
        let lp = is_locally_projective(&w).map_err(e)?;
        let wit = lp.alpha_route.witness.ok_or("Z/2 over Z/4: no α witness")?;
        ensure!(!lp.holds, "Z/2 over Z/4 reported locally projective");
        ensure!(
            wit.test_rank == 1 && wit.test_relations == vec![vec![2]] && wit.element == vec![1],
            "Z/2 over Z/4: unexpected witness {wit:?}"
        );
        let can = Bil::canonical(4, &[2]);
        let m = Fin::new(4, &[2]);
        ensure!(!can.alpha_injective(&m), "oracle: α_(Z/2) injective for Z/2 over Z/4");
        let image: u64 = can.beta[0][0] % 2;
        ensure!(image == 0, "oracle: α(1 ⊗ 1) ≠ 0");
        Ok(format!("{modules} modules; Z/2 over Z/4 fails at 1 ⊗ 1 with M = Z/2"))
    });
}

fn random_beta(rng: &mut ChaCha8Rng, n: u64, v: &[u64], w: &[u64]) -> Vec<Vec<u64>> {
    v.iter()
        .map(|&a| {
            w.iter()
                .map(|&b| {
                    let g = gcd(a, b);
                    rng.gen_range(0..g) * (n / g) % n
                })
                .collect()
        })
        .collect()
}

fn random_injection(rng: &mut ChaCha8Rng, n: u64, shapes: &[Vec<u64>], w: &Fin) -> (Fin, Vec<Vec<u64>>) {
    for _ in 0..50 {
        let wp = Fin::new(n, shapes.choose(rng).unwrap());
        if wp.card() > w.card() {
            continue;
        }
        let theta: Vec<Vec<u64>> = wp
            .d
            .iter()
            .map(|&b| {
                w.d.iter()
                    .map(|&d| {
                        let step = d / gcd(b, d);
                        rng.gen_range(0..gcd(b, d)) * step
                    })
                    .collect()
            })
            .collect();
        if is_morphism(&wp, w, &theta) && injective(&wp, w, &theta) {
            return (wp, theta);
        }
    }
    let x = w.elem(rng.gen_range(1..w.card()));
    let order = (1..=n).find(|&k| x.iter().zip(&w.d).all(|(&c, &d)| (k * c) % d == 0)).unwrap();
    (Fin::new(n, &[order]), vec![x])
}

#[test]
fn criterion_05_divisor_family_matches_brute_force() {
    criterion(5, "divisor-family α and purity verdicts = brute force", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (mut alpha_true, mut pure_true) = (0, 0);
        for k in 0..50 {
            let n = *[4u64, 6, 8].choose(&mut rng).unwrap();
            let ring = Ring::zmod(n).map_err(e)?;
            let shapes: Vec<Vec<u64>> = chains(n, 16).into_iter().filter(|c| c.len() <= 2).collect();
            let v = shapes.choose(&mut rng).unwrap().clone();
            let w = shapes.choose(&mut rng).unwrap().clone();
            let beta = random_beta(&mut rng, n, &v, &w);
            let bil = Bil::new(n, &v, &w, beta.clone());
            let wf = Fin::new(n, &w);
            let (wp, theta) = random_injection(&mut rng, n, &shapes, &wf);

            let vm = Module::from_factors(&ring, Side::Right, &v).map_err(e)?;
            let wm = Module::from_factors(&ring, Side::Left, &w).map_err(e)?;
            let wpm = Module::from_factors(&ring, Side::Left, &wp.d).map_err(e)?;
            let p = Pairing::new(&vm, &wm, beta.clone()).map_err(e)?;
            let theta_m = Morphism::new(&wpm, &wm, theta.clone()).map_err(e)?;
            ensure!(theta_m.is_injective().map_err(e)?, "#{k}: library says θ is not injective");
            let lib_alpha = satisfies_alpha(&p).map_err(e)?;
            let lib_pure = wm.is_pure_submodule(&theta_m.image().map_err(e)?, None).map_err(e)?;

            let tests = test_modules(n, 64);
            let alpha = bil.alpha(&tests);
            let pure = tests.iter().all(|m| tensor_injective(m, &wp, &wf, &theta));
            ensure!(
                lib_alpha.holds == alpha && lib_alpha.certainty == Certainty::Exact,
                "#{k}: Z/{n}, V = {v:?}, W = {w:?}, β = {beta:?}: library α {}, brute force {alpha}",
                lib_alpha.holds
            );
            ensure!(
                lib_pure.holds == pure,
                "#{k}: Z/{n}, θ: {:?} -> {w:?}, {theta:?}: library pure {}, brute force {pure}",
                wp.d,
                lib_pure.holds
            );
            alpha_true += alpha as u32;
            pure_true += pure as u32;
        }
        Ok(format!("50 instances ({alpha_true} α, {pure_true} pure)"))
    });
}

#[test]
fn criterion_06_q2_routes_agree() {
    criterion(6, "q-2 criterion = image membership", None, || {
        let mut total = 0;
        for n in [4u64, 6] {
            let (ring, mut samples) = corpus_pairings(n, CorpusConfig::default())?;
            let tests = test_modules(n, 64);
            let mut rng = ChaCha8Rng::seed_from_u64(60 + n);
            samples.shuffle(&mut rng);
            let mut alphas = Vec::new();
            for s in samples {
                if alphas.len() == 40 {
                    break;
                }
                if s.bil.alpha(&tests) {
                    ensure!(satisfies_alpha(&s.pairing).map_err(e)?.holds, "{}: library misses α", s.label);
                    alphas.push(s);
                }
            }
            ensure!(!alphas.is_empty(), "no α-pairings over Z/{n}");
            let shapes = chains(n, 16);
            let (mut inside, mut outside) = (0, 0);
            for _ in 0..500 {
                let s = alphas.choose(&mut rng).unwrap();
                let mf = Fin::new(n, shapes.choose(&mut rng).unwrap());
                let m = mf.module(&ring, Side::Right);
                let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..mf.card())).collect();
                let nset = mf.span(gens.iter().copied());
                let nsub = m.span(&gens.iter().map(|&g| mf.elem(g)).collect::<Vec<_>>()).map_err(e)?;
                ensure!(mf.set_of(&nsub) == nset, "library span differs from the oracle");
                let (r, b) = (mf.d.len(), s.bil.w.d.len());
                let t: Vec<u64> = (0..r * b).map(|_| rng.gen_range(0..n)).collect();

                let by_values = (0..s.bil.v.d.len()).all(|p| {
                    let img: Vec<u64> = (0..r)
                        .map(|i| (0..b).map(|j| t[i * b + j] * s.bil.beta[p][j]).sum::<u64>())
                        .collect();
                    nset.contains(&mf.index(&img))
                });
                let g: Vec<u64> = (0..r * b).map(|k| gcd(mf.d[k / b], s.bil.w.d[k % b])).collect();
                let tensor = Fin::new(n, &g);
                let mut image_gens = Vec::new();
                for &x in &nset {
                    let c = mf.elem(x);
                    for j in 0..b {
                        let mut v = vec![0; r * b];
                        for i in 0..r {
                            v[i * b + j] = c[i];
                        }
                        image_gens.push(tensor.index(&v));
                    }
                }
                let by_tensor = tensor.span(image_gens).contains(&tensor.index(&t));
                ensure!(by_values == by_tensor, "{}: oracle routes disagree on an α-pairing", s.label);
                let lib = q2_routes(&s.pairing, &m, &nsub, &t).map_err(e)?;
                ensure!(
                    lib == (by_values, by_tensor),
                    "{}, M = {:?}, t = {t:?}: library {lib:?}, oracle {by_values}",
                    s.label,
                    mf.d
                );
                ensure!(q2_membership(&s.pairing, &m, &nsub, &t).map_err(e)? == by_values, "q2_membership differs");
                if by_values {
                    inside += 1;
                } else {
                    outside += 1;
                }
                total += 1;
            }
            ensure!(inside > 0 && outside > 0, "Z/{n}: samples only exercise one outcome");
        }
        Ok(format!("{total} samples"))
    });
}

#[test]
fn criterion_07_dual_map_identities() {
    criterion(7, "f*-clos (1), (2), (3c), (3d)", None, || {
        let maps: [(u64, u64, u64, u64, &str); 3] =
            [(4, 4, 4, 2, "Z/4 -> Z/4, x -> 2x"), (4, 4, 2, 1, "Z/4 -> Z/2"), (6, 6, 3, 1, "Z/6 -> Z/3")];
        let mut checks = 0;
        for (n, dp, d, t, name) in maps {
            let wp = Fin::new(n, &[dp]);
            let w = Fin::new(n, &[d]);
            let theta = vec![vec![t]];
            let doc = InstanceDocument::new(RingSpec::Zmod(n))
                .with_module("Wp", ModuleSpec::factors(Side::Left, &[dp]))
                .with_module("W", ModuleSpec::factors(Side::Left, &[d]))
                .with_map("theta", "Wp", "W", theta.clone());
            for id in ["f*-clos.1", "f*-clos.2", "f*-clos.3c", "f*-clos.3d"] {
                let r = check(id, &doc, 0).map_err(e)?;
                ensure!(r.status == Status::Pass, "{name}: {id} is {:?} ({:?})", r.status, r.note);
            }

            // Functionals of Z/e are y with e y = 0; θ*(y) = t y.
            let fun = |f: &Fin, u: usize| f.functional(&f.elem(u))[0];
            let star = |u: usize| wp.index(&wp.dual_coords(&[t * fun(&w, u) % n]));
            let th = |x: usize| apply_map(&wp, &w, &theta, x);
            let an_w = |k: &Set| -> Set {
                (0..w.card()).filter(|&u| k.iter().all(|&x| fun(&w, u) * x as u64 % n == 0)).collect()
            };
            let an_wp = |k: &Set| -> Set {
                (0..wp.card()).filter(|&u| k.iter().all(|&x| fun(&wp, u) * x as u64 % n == 0)).collect()
            };
            let ke_w = |xs: &Set| -> Set {
                (0..w.card()).filter(|&x| xs.iter().all(|&u| fun(&w, u) * x as u64 % n == 0)).collect()
            };
            let ke_wp = |xs: &Set| -> Set {
                (0..wp.card()).filter(|&x| xs.iter().all(|&u| fun(&wp, u) * x as u64 % n == 0)).collect()
            };
            for kp in wp.subgroups() {
                let lhs: Set = (0..w.card()).filter(|&u| an_wp(&kp).contains(&star(u))).collect();
                let rhs = an_w(&kp.iter().map(|&x| th(x)).collect());
                ensure!(lhs == rhs, "{name}: (1) fails at K' = {kp:?}");
                checks += 1;
            }
            for k in w.subgroups() {
                let lhs: Set = an_w(&k).iter().map(|&u| star(u)).collect();
                let rhs = an_wp(&(0..wp.card()).filter(|&x| k.contains(&th(x))).collect());
                ensure!(lhs == rhs, "{name}: (2) fails at K = {k:?}");
                checks += 1;
            }
            let dual = Bil::canonical(n, &[d]);
            let xs = w.subgroups();
            for x in &xs {
                let lhs = ke_wp(&x.iter().map(|&u| star(u)).collect());
                let kx = ke_w(x);
                let rhs: Set = (0..wp.card()).filter(|&y| kx.contains(&th(y))).collect();
                ensure!(lhs == rhs, "{name}: (3c) fails at X = {x:?}");
                checks += 1;
            }
            for a in &xs {
                for b in &xs {
                    for c in &xs {
                        let sum = w.sum(&w.sum(a, b), c);
                        let parts = w.sum(&w.sum(&dual.closure(a), &dual.closure(b)), &dual.closure(c));
                        ensure!(dual.closure(&sum) == parts, "{name}: (3d) fails");
                        checks += 1;
                    }
                }
            }
        }
        Ok(format!("3 maps, {checks} oracle identities"))
    });
}

fn zmod_baer(n: u64) -> bool {
    (1..=n).filter(|d| n % d == 0).all(|d| {
        (0..n)
            .filter(|y| ((n / d) * y) % n == 0)
            .all(|y| (0..n).any(|c| (c * d) % n == y))
    })
}

fn zmod_semisimple(n: u64) -> bool {
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let ideal = |d: u64| -> BTreeSet<u64> { (0..n).map(|k| k * d % n).collect() };
    divs.iter().all(|&a| {
        divs.iter().any(|&b| {
            let (ia, ib) = (ideal(a), ideal(b));
            let meet_zero = ia.intersection(&ib).all(|&x| x == 0);
            let spans = ia.iter().flat_map(|x| ib.iter().map(move |y| (x + y) % n)).collect::<BTreeSet<_>>().len() == n as usize;
            meet_zero && spans
        })
    })
}

fn baer_witness_valid(r: &Ring, w: &BaerWitness) -> bool {
    let ideal: BTreeSet<u64> = w.ideal.iter().copied().collect();
    let f: HashMap<u64, u64> = w.map.iter().copied().collect();
    let is_right_ideal = ideal.contains(&r.zero())
        && ideal.iter().all(|&a| ideal.iter().all(|&b| ideal.contains(&r.add(a, b))))
        && ideal.iter().all(|&a| r.elements().all(|s| ideal.contains(&r.mul(a, s))));
    let is_map = f.len() == w.map.len() && ideal.iter().all(|x| f.contains_key(x)) && f.len() == ideal.len();
    if !is_right_ideal || !is_map {
        return false;
    }
    let linear = ideal.iter().all(|&a| {
        ideal.iter().all(|&b| f[&r.add(a, b)] == r.add(f[&a], f[&b]))
            && r.elements().all(|s| f[&r.mul(a, s)] == r.mul(f[&a], s))
    });
    let not_extended = r.elements().all(|c| ideal.iter().any(|&x| r.mul(c, x) != f[&x]));
    linear && not_extended
}

#[test]
fn criterion_08_ring_predicates() {
    criterion(8, "ring predicate table", Some(30.0), || {
        for n in 2..=12u64 {
            let r = Ring::zmod(n).map_err(e)?;
            let si = r.is_self_injective().map_err(e)?.holds;
            let cog = r.is_cogenerator_ring().map_err(e)?;
            ensure!(r.is_qf().map_err(e)?, "Z/{n} not QF");
            ensure!(si == cog && si == zmod_baer(n), "Z/{n}: self-injective {si}, cogenerator {cog}");
            let ss = r.is_semisimple().map_err(e)?;
            ensure!(
                ss == squarefree(n) && ss == zmod_semisimple(n),
                "Z/{n}: semisimple {ss}, squarefree {}",
                squarefree(n)
            );
        }
        let ut = named("ut2_f2").map_err(e)?;
        let si = ut.is_self_injective().map_err(e)?;
        ensure!(!si.holds, "UT2(F2) reported self-injective");
        let w = si.witness.ok_or("UT2(F2): no Baer witness")?;
        let json = serde_json::to_string(&w).map_err(e)?;
        let back: BaerWitness = serde_json::from_str(&json).map_err(e)?;
        ensure!(back == w, "Baer witness does not round-trip");
        ensure!(baer_witness_valid(&ut, &back), "Baer witness {json} does not check out");
        ensure!(!ut.is_qf().map_err(e)?, "UT2(F2) reported QF");
        Ok(format!("Z/2..Z/12 QF; UT2(F2) witness {json}"))
    });
}

#[test]
fn criterion_09_tensor_alpha_and_ke_formula() {
    criterion(9, "p-2.1 and uno.2 on the Z/6 corpus", None, || {
        let n = 6;
        let cfg = CorpusConfig {
            max_card: 6,
            pair_card: 6,
            pair_samples: usize::MAX,
            ..CorpusConfig::default()
        };
        let (ring, insts) = corpus_of(n, cfg)?;
        let tests = test_modules(n, 64);
        let (mut pp, mut mp, mut both_alpha) = (0, 0, 0);
        let mut known = HashMap::new();
        for inst in &insts {
            let doc = &inst.document;
            match inst.kind {
                Kind::PairingPair => {
                    pp += 1;
                    let loaded = doc.load_with(&ring).map_err(e)?;
                    let (p, q) = loaded.pairing_pair().ok_or("pair without P, Q")?;
                    let bp = Bil::new(n, &factors(doc, "V"), &factors(doc, "W"), doc.pairings["P"].beta.clone().unwrap());
                    let bq = Bil::new(n, &factors(doc, "V2"), &factors(doc, "W2"), doc.pairings["Q"].beta.clone().unwrap());
                    let (na, nb, ma, mb) = (bp.v.d.len(), bp.w.d.len(), bq.v.d.len(), bq.w.d.len());
                    let v: Vec<u64> = (0..ma * na).map(|k| gcd(bq.v.d[k / na], bp.v.d[k % na])).collect();
                    let w: Vec<u64> = (0..nb * mb).map(|k| gcd(bp.w.d[k / mb], bq.w.d[k % mb])).collect();
                    let mut beta = vec![vec![0; nb * mb]; ma * na];
                    for i in 0..ma {
                        for pi in 0..na {
                            for j in 0..nb {
                                for qi in 0..mb {
                                    beta[i * na + pi][j * mb + qi] = bp.beta[pi][j] * bq.beta[i][qi] % n;
                                }
                            }
                        }
                    }
                    let prod = Bil::new(n, &v, &w, beta);
                    ensure!(prod.balanced(), "{}: oracle product unbalanced", inst.label);
                    let mut alpha_of = |b: &Bil| *known.entry((b.v.d.clone(), b.w.d.clone(), b.beta.clone())).or_insert_with(|| b.alpha(&tests));
                    let (ap, aq) = (alpha_of(&bp), alpha_of(&bq));
                    let aprod = prod.alpha(&tests);
                    ensure!(!(ap && aq) || aprod, "{}: oracle finds α not preserved", inst.label);
                    let lib = satisfies_alpha(&product_pairing(p, q).map_err(e)?).map_err(e)?.holds;
                    ensure!(lib == aprod, "{}: library product α {lib}, oracle {aprod}", inst.label);
                    let r = check("p-2.1", doc, 0).map_err(e)?;
                    let want = if ap && aq { Status::Pass } else { Status::NotApplicable };
                    ensure!(r.status == want, "{}: p-2.1 is {:?} ({:?})", inst.label, r.status, r.note);
                    both_alpha += (ap && aq) as u32;
                }
                Kind::ModulePair => {
                    mp += 1;
                    let r = check("uno.2", doc, 0).map_err(e)?;
                    ensure!(r.status == Status::Pass, "{}: uno.2 is {:?} ({:?})", inst.label, r.status, r.note);
                    let (wf, wpf) = (Fin::new(n, &factors(doc, "N")), Fin::new(n, &factors(doc, "N2")));
                    let (wm, wpm) = (wf.module(&ring, Side::Left), wpf.module(&ring, Side::Left));
                    let (dw, dwp) = (DualModule::new(&wm).map_err(e)?, DualModule::new(&wpm).map_err(e)?);
                    let (b, bp) = (wf.d.len(), wpf.d.len());
                    let g: Vec<u64> = (0..b * bp).map(|k| gcd(wf.d[k / bp], wpf.d[k % bp])).collect();
                    let tensor = Fin::new(n, &g);
                    let ke_of = |f: &Fin, xs: &Set| -> Set {
                        (0..f.card())
                            .filter(|&x| xs.iter().all(|&u| f.apply(&f.functional(&f.elem(u)), &f.elem(x)) == 0))
                            .collect()
                    };
                    for x in dw.module().submodules().map_err(e)? {
                        let xs = wf.dual_set_of(x.elements().map_err(e)?.iter().map(|y| dw.values(y)));
                        for xp in dwp.module().submodules().map_err(e)? {
                            let xps = wpf.dual_set_of(xp.elements().map_err(e)?.iter().map(|y| dwp.values(y)));
                            let lhs: Set = (0..tensor.card())
                                .filter(|&t| {
                                    let c = tensor.elem(t);
                                    xs.iter().all(|&u| {
                                        let f = wf.functional(&wf.elem(u));
                                        xps.iter().all(|&up| {
                                            let fp = wpf.functional(&wpf.elem(up));
                                            (0..b * bp).map(|k| c[k] * f[k / bp] % n * fp[k % bp]).sum::<u64>() % n == 0
                                        })
                                    })
                                })
                                .collect();
                            let mut gens = Vec::new();
                            for k in ke_of(&wf, &xs) {
                                let kv = wf.elem(k);
                                for q in 0..bp {
                                    let mut v = vec![0; b * bp];
                                    for j in 0..b {
                                        v[j * bp + q] = kv[j];
                                    }
                                    gens.push(tensor.index(&v));
                                }
                            }
                            for k in ke_of(&wpf, &xps) {
                                let kv = wpf.elem(k);
                                for j in 0..b {
                                    let mut v = vec![0; b * bp];
                                    v[j * bp..(j + 1) * bp].copy_from_slice(&kv);
                                    gens.push(tensor.index(&v));
                                }
                            }
                            let rhs = tensor.span(gens);
                            ensure!(lhs == rhs, "{}: oracle Ke formula fails", inst.label);
                            let k = ke_formula(&dw, &x, &dwp, &xp).map_err(e)?;
                            ensure!(
                                k.hypothesis && k.equal && tensor.set_of(&k.lhs) == lhs && tensor.set_of(&k.rhs) == rhs,
                                "{}: library Ke formula differs from the oracle",
                                inst.label
                            );
                        }
                    }
                }
                _ => {}
            }
        }
        ensure!(both_alpha > 0, "no pair of α-pairings exercised");
        Ok(format!("{pp} pairs of pairings ({both_alpha} with both α), {mp} module pairs"))
    });
}

#[test]
fn criterion_10_completion() {
    criterion(10, "completion V/W^⊥ -> *W", None, || {
        let (mut dense, mut sparse) = (0, 0);
        for n in [4, 6, 8, 9, 12] {
            let (ring, samples) = corpus_pairings(n, CorpusConfig::default())?;
            ensure!(ring.is_self_injective().map_err(e)?.holds, "Z/{n} not self-injective");
            for s in &samples {
                let c = s.pairing.completion().map_err(e)?;
                let od = s.bil.dense();
                let quotient = s.bil.v.card() / s.bil.radical().len();
                ensure!(
                    c.injective && c.module.cardinality() == quotient as u128,
                    "{}: V/W^⊥ has order {}, oracle {quotient}",
                    s.label,
                    c.module.cardinality()
                );
                ensure!(s.pairing.is_dense_pairing().map_err(e)? == od, "{}: density differs from the oracle", s.label);
                ensure!(c.surjective == od, "{}: dense {od}, comparison surjective {}", s.label, c.surjective);
                if od {
                    dense += 1;
                } else {
                    sparse += 1;
                }
            }
        }
        Ok(format!("{dense} dense pairings complete to *W, {sparse} non-dense recorded non-surjective"))
    });
}

#[test]
fn criterion_11_suite_is_deterministic() {
    criterion(11, "qf-core suite reports are byte-identical", None, || {
        let run = || -> R<Vec<u8>> {
            let out = Command::new(env!("CARGO_BIN_EXE_dualpair"))
                .args(["theorems", "--suite", "qf-core", "--seed", "7", "--format", "machine"])
                .output()
                .map_err(e)?;
            ensure!(out.status.code() == Some(0), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
            Ok(out.stdout)
        };
        let (a, b) = (run()?, run()?);
        ensure!(a == b, "reports differ");
        let v: serde_json::Value = serde_json::from_slice(&a).map_err(e)?;
        Ok(format!("{} bytes, summary {}", a.len(), v["summary"]))
    });
}

#[test]
fn criterion_12_semisimple_corollary() {
    criterion(12, "dense ⇔ W ⊆ V* ⇔ α over Z/2, Z/3, Z/6", None, || {
        let mut count = 0;
        let mut seen = BTreeSet::new();
        for n in [2, 3, 6] {
            let (_, samples) = corpus_pairings(n, CorpusConfig::default())?;
            let tests = test_modules(n, 64);
            for s in &samples {
                let (d, emb, a) = (s.bil.dense(), s.bil.w_embeds(), s.bil.alpha(&tests));
                ensure!(d == emb && emb == a, "{}: oracle dense {d}, W ⊆ V* {emb}, α {a}", s.label);
                let ld = s.pairing.is_dense_pairing().map_err(e)?;
                let le = s.pairing.chi().map_err(e)?.1.is_injective().map_err(e)?;
                let la = satisfies_alpha(&s.pairing).map_err(e)?.holds;
                ensure!((ld, le, la) == (d, emb, a), "{}: library ({ld}, {le}, {la}), oracle {d}", s.label);
                let r = check("dicht=alp", &s.doc, 0).map_err(e)?;
                ensure!(r.status == Status::Pass, "{}: dicht=alp is {:?}", s.label, r.status);
                seen.insert(d);
                count += 1;
            }
        }
        ensure!(seen.len() == 2, "corpus only exercises one verdict");
        Ok(format!("{count} pairings"))
    });
}

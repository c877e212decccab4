mod common;

use common::{chains, gcd, Bil, Set};
use dualpair::modules::{Module, Side, Submodule};
use dualpair::pairings::Pairing;
use dualpair::rings::Ring;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Case {
    pairing: Pairing,
    bil: Bil,
}

fn random_pairing(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = *[4u64, 6, 8, 9, 12].choose(&mut rng).unwrap();
    let shapes: Vec<Vec<u64>> = chains(n, 16).into_iter().filter(|c| c.len() <= 2).collect();
    let v = shapes.choose(&mut rng).unwrap().clone();
    let w = shapes.choose(&mut rng).unwrap().clone();
    let beta: Vec<Vec<u64>> = v
        .iter()
        .map(|&a| {
            w.iter()
                .map(|&b| {
                    let g = gcd(a, b);
                    rng.gen_range(0..g) * (n / g) % n
                })
                .collect()
        })
        .collect();
    let r = Ring::zmod(n).unwrap();
    let vm = Module::from_factors(&r, Side::Right, &v).unwrap();
    let wm = Module::from_factors(&r, Side::Left, &w).unwrap();
    Case {
        pairing: Pairing::new(&vm, &wm, beta.clone()).unwrap(),
        bil: Bil::new(n, &v, &w, beta),
    }
}

fn pick(subs: &[Submodule], k: usize) -> &Submodule {
    &subs[k % subs.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn galois_connection_and_triple_perp(seed in any::<u64>()) {
        let c = random_pairing(seed);
        let p = &c.pairing;
        let vs = p.v().submodules().unwrap();
        let ws = p.w().submodules().unwrap();
        for x in &vs {
            let xp = p.perp_of_v_sub(x).unwrap();
            prop_assert_eq!(c.bil.w.set_of(&xp), c.bil.perp_of_v(&c.bil.v.set_of(x)));
            prop_assert!(x.is_subset(&p.biperp(x).unwrap()));
            let back = p.perp_of_w_sub(&xp).unwrap();
            prop_assert_eq!(p.perp_of_v_sub(&back).unwrap(), xp);
            for y in &vs {
                if x.is_subset(y) {
                    prop_assert!(p.perp_of_v_sub(y).unwrap().is_subset(&p.perp_of_v_sub(x).unwrap()));
                }
            }
        }
        for k in &ws {
            let kp = p.perp_of_w_sub(k).unwrap();
            prop_assert_eq!(c.bil.v.set_of(&kp), c.bil.perp_of_w(&c.bil.w.set_of(k)));
            prop_assert!(k.is_subset(&p.perp_of_v_sub(&kp).unwrap()));
            prop_assert_eq!(p.perp_of_w_sub(&p.perp_of_v_sub(&kp).unwrap()).unwrap(), kp);
        }
    }

    #[test]
    fn morphisms_of_subpairings_are_continuous(seed in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let c = random_pairing(seed);
        let p = &c.pairing;
        let ws = p.w().submodules().unwrap();
        let wp = pick(&ws, a);
        let vps = p.v().submodules().unwrap();
        let allowed: Vec<Submodule> = vps
            .into_iter()
            .filter(|x| x.is_subset(&p.perp_of_w_sub(wp).unwrap()))
            .collect();
        let vp = pick(&allowed, b);
        let sp = p.subpairing(vp, wp).unwrap();
        let m = &sp.morphism;
        for kp in m.source.w().submodules().unwrap() {
            let (lhs, rhs) = m.continuity_sides(&kp).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let image: Set = c.bil.w.set_of(&m.theta.image_of(&kp).unwrap());
            prop_assert_eq!(c.bil.v.set_of(&rhs), c.bil.perp_of_w(&image));
        }
    }

    #[test]
    fn hausdorff_iff_kappa_injective(seed in any::<u64>()) {
        let c = random_pairing(seed);
        let p = &c.pairing;
        let (_, kappa) = p.kappa().unwrap();
        let h = p.is_hausdorff().unwrap();
        prop_assert_eq!(h, kappa.is_injective().unwrap());
        prop_assert_eq!(h, c.bil.radical().len() == 1);
        let (_, can) = Pairing::canonical(p.w()).unwrap();
        prop_assert!(can.is_hausdorff().unwrap());
    }

    #[test]
    fn closures_of_finite_sums_in_the_dual(seed in any::<u64>(), picks in prop::collection::vec(any::<usize>(), 1..=3)) {
        let c = random_pairing(seed);
        let (_, can) = Pairing::canonical(c.pairing.w()).unwrap();
        let xs = can.v().submodules().unwrap();
        let chosen: Vec<&Submodule> = picks.iter().map(|&k| pick(&xs, k)).collect();
        let sum = chosen.iter().skip(1).fold(chosen[0].clone(), |acc, x| acc.sum(x));
        let parts = chosen
            .iter()
            .skip(1)
            .fold(can.closure(chosen[0]).unwrap(), |acc, x| acc.sum(&can.closure(x).unwrap()));
        prop_assert_eq!(can.closure(&sum).unwrap(), parts);
        prop_assert!(can.is_closed(&sum).unwrap());

        let vs = c.pairing.v().submodules().unwrap();
        let (x, y) = (pick(&vs, picks[0]), pick(&vs, picks[picks.len() - 1]));
        let p = &c.pairing;
        prop_assert_eq!(
            p.closure(&x.sum(y)).unwrap(),
            p.closure(x).unwrap().sum(&p.closure(y).unwrap())
        );
    }
}

//! α-condition, purity and local projectivity statements.

use rand::seq::SliceRandom;
use serde_json::json;

use super::subject::{on_side, self_injective, show, Subject};
use super::topology::{COG, NOETH, QF, SELF_INJ, W_EMB};
use super::{hyp, vacuous, Case, Eval, Forall, Hyp};
use crate::alphacond::{
    alpha_injective_for, beta_map, is_locally_projective, ke_formula, product_pairing, q2_routes, satisfies_alpha,
    transpose, uno_delta, FunctionEmbedding,
};
use crate::error::Result;
use crate::modules::{family_of_tests, DualModule, Module, Side, Submodule, TensorProduct};
use crate::pairings::{ke, Pairing};

const P_ALPHA: &str = "P-alpha";
const Q_ALPHA: &str = "Q-alpha";
const BIMODULE: &str = "bimodule";
const SS: &str = "semisimple";
const HERED: &str = "hereditary";

/// Largest number of parameter tuples examined per instance where sampling is used.
const SAMPLE: usize = 64;

fn single<'a>(label: &str, hyps: Vec<Hyp>, f: impl FnOnce() -> Result<Eval> + 'a) -> Result<Vec<Case<'a>>> {
    Ok(vec![Case::new(label, hyps, f)])
}

fn alpha_hyp(s: &Subject) -> Result<Hyp> {
    Ok(hyp(P_ALPHA, s.alpha()?.holds))
}

fn bimodule(s: &Subject) -> Hyp {
    hyp(BIMODULE, s.ring().is_commutative())
}

pub(super) fn flat<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("W", vec![alpha_hyp(s)?], move || {
        let fl = p.w().is_flat()?;
        let embeds = s.w_embeds()?;
        let mut e = Eval::check(fl.holds && embeds, || json!({"W flat": fl.holds, "W ↪ V*": embeds}));
        e.bounded = fl.certainty == crate::modules::Certainty::Bounded;
        Ok(e)
    })
}

pub(super) fn q2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("M, N ⊆ M, t ∈ M ⊗ W", vec![alpha_hyp(s)?], move || {
        let fam = family_of_tests(p.ring(), Side::Right)?;
        let mut f = Forall::new();
        f.bounded(fam.certainty);
        let mut rng = s.rng(2);
        'outer: for m in &fam.modules {
            let tp = TensorProduct::new(m, p.w())?;
            let mut ts = tp.elements()?;
            if ts.len() > 16 {
                ts.shuffle(&mut rng);
                ts.truncate(16);
            }
            let mut subs = m.submodules()?;
            if subs.len() > 16 {
                subs.shuffle(&mut rng);
                subs.truncate(16);
            }
            for n in &subs {
                for t in &ts {
                    let (by_values, by_tensor) = q2_routes(p, m, n, t)?;
                    if !f.check(by_values == by_tensor, || {
                        json!({"M": m.relations().generators(), "N": show(m, n), "t": t, "by_values": by_values})
                    }) {
                        break 'outer;
                    }
                }
            }
        }
        f.done()
    })
}

pub(super) fn rp_rp_1a<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    rp_rp_1a_cases(s, true)
}

pub(super) fn rp_rp_1a_necessity<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    rp_rp_1a_cases(s, false)
}

fn rp_rp_1a_cases<'a>(s: &'a Subject<'a>, both: bool) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = if both { vec![alpha_hyp(s)?] } else { vec![] };
    single("all W' ⊆ W", hyps, move || {
        let mut f = Forall::new();
        for wp in s.w_subs()? {
            let r = p.restrict_w(wp)?;
            let a = satisfies_alpha(&r.pairing)?;
            f.bounded(a.certainty);
            f.bounded(r.w_pure.certainty);
            let ok = if both { a.holds == r.w_pure.holds } else { !a.holds || r.w_pure.holds };
            if !f.check(ok, || json!({"W'": show(p.w(), wp), "(V, W') α": a.holds, "W' pure": r.w_pure.holds})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn rp_rp_1b<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("orthogonal V' ⊆ V, W' ⊆ W", vec![alpha_hyp(s)?], move || {
        let mut f = Forall::new();
        'outer: for wp in s.w_subs()? {
            let perp = p.perp_of_w_sub(wp)?;
            let mut vps: Vec<Submodule> = s.v_subs()?.iter().filter(|x| x.is_subset(&perp)).cloned().collect();
            if vps.len() > 16 {
                vps = vec![p.v().zero_submodule(), perp];
            }
            for vp in vps {
                let q = p.subpairing(&vp, wp)?;
                let a = satisfies_alpha(&q.pairing)?;
                f.bounded(a.certainty);
                if !f.check(a.holds == q.w_pure.holds, || {
                    json!({"V'": show(p.v(), &vp), "W'": show(p.w(), wp), "Q α": a.holds, "W' pure": q.w_pure.holds})
                }) {
                    break 'outer;
                }
            }
        }
        f.done()
    })
}

/// Statements (i)-(iv) for the pairing induced on `V' ⊆ V` by its inclusion,
/// with `P` in the role of the ambient pairing; also (i) with `W ↪ V'*`.
fn rp_rp_2_statements(s: &Subject, vp: &Submodule) -> Result<[bool; 5]> {
    let p = s.pairing()?;
    let xi = p.v().submodule_as_module(vp)?.inclusion()?;
    let induced = p.pull_back(&xi)?;
    let omega_alpha = s.alpha()?.holds;
    let dense_induced = induced.is_dense_pairing()?;
    let dense_in_y = p.v().full_submodule().is_subset(&p.closure(vp)?);
    let ind_alpha = satisfies_alpha(&induced)?.holds;
    let embeds = induced.chi()?.1.is_injective()?;
    let s1 = omega_alpha && dense_induced;
    Ok([s1, omega_alpha && dense_in_y, ind_alpha, ind_alpha && embeds, s1 && embeds])
}

fn rp_rp_2_cases<'a>(s: &'a Subject<'a>, mode: u8) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = if mode == 0 { vec![] } else { vec![hyp(COG, s.ring().is_cogenerator_ring()?)] };
    single("all V' ⊆ V", hyps, move || {
        let mut f = Forall::new();
        for vp in s.v_subs()? {
            let st = rp_rp_2_statements(s, vp)?;
            let ok = match mode {
                0 => (!st[0] || st[1]) && (!st[1] || st[2]) && (!st[2] || st[3]),
                1 => st[..4].iter().all(|&b| b == st[0]),
                _ => st[4] == st[3],
            };
            if !f.check(ok, || json!({"V'": show(p.v(), vp), "statements": st})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn rp_rp_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    rp_rp_2_cases(s, 0)
}

pub(super) fn rp_rp_2_equiv<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    rp_rp_2_cases(s, 1)
}

pub(super) fn rp_rp_2_strict<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    rp_rp_2_cases(s, 2)
}

pub(super) fn p_rs_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let m = s.module_on(Side::Right)?;
    single("|X| = 1, 2, 3", vec![vacuous(NOETH)], move || {
        let mut f = Forall::new();
        for x in 1..=3usize {
            if m.ring().size().pow(x as u32) as u128 * m.cardinality() > m.ring().caps().elements {
                break;
            }
            let b = beta_map(&m, x)?;
            if !f.check(b.injective, || json!({"x": x, "kernel": b.witness})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn p_rs_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all test modules M", vec![vacuous(NOETH), hyp(W_EMB, s.w_embeds()?)], move || {
        let fe = FunctionEmbedding::new(p)?;
        let fam = family_of_tests(p.ring(), Side::Right)?;
        let mut f = Forall::new();
        f.bounded(fam.certainty);
        for m in &fam.modules {
            let inj = alpha_injective_for(p, m)?.holds;
            let pure = fe.is_pure(Some(m))?.holds;
            if !f.check(inj == pure, || json!({"M": m.relations().generators(), "α_M injective": inj, "M-pure": pure})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn p_rs_2_projective<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = vec![
        vacuous(NOETH),
        hyp(W_EMB, s.w_embeds()?),
        hyp("V-projective", p.v().is_projective()?.is_some()),
    ];
    single("all test modules M", hyps, move || {
        let (d, chi) = p.chi()?;
        let image = chi.image()?;
        let fam = family_of_tests(p.ring(), Side::Right)?;
        let mut f = Forall::new();
        f.bounded(fam.certainty);
        for m in &fam.modules {
            let inj = alpha_injective_for(p, m)?.holds;
            let pure = d.module().is_pure_submodule(&image, Some(m))?.holds;
            if !f.check(inj == pure, || json!({"M": m.relations().generators(), "α_M injective": inj, "M-pure in V*": pure})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn p_rs_3<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("P", vec![vacuous(NOETH), hyp(W_EMB, s.w_embeds()?)], move || {
        let alpha = s.alpha()?;
        let pure = FunctionEmbedding::new(p)?.is_pure(None)?;
        let mut e = Eval::check(alpha.holds == pure.holds, || json!({"α": alpha.holds, "W ⊆ R^V pure": pure.holds}));
        e.bounded = alpha.certainty == crate::modules::Certainty::Bounded;
        Ok(e)
    })
}

fn hereditary_hyps(s: &Subject) -> Result<Vec<Hyp>> {
    Ok(vec![vacuous(NOETH), hyp(HERED, s.ring().is_hereditary()?)])
}

pub(super) fn hered_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let v = s.module_on(Side::Right)?;
    single("(V, V*)", hereditary_hyps(s)?, move || {
        let (_, p) = Pairing::canonical_right(&v)?;
        let a = satisfies_alpha(&p)?;
        let mut e = Eval::check(a.holds, || json!({"witness": a.witness}));
        e.bounded = a.certainty == crate::modules::Certainty::Bounded;
        Ok(e)
    })
}

pub(super) fn hered_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let v = s.module_on(Side::Right)?;
    single("all W ⊆ V*", hereditary_hyps(s)?, move || {
        let (_, p) = Pairing::canonical_right(&v)?;
        let mut f = Forall::new();
        for w in p.w().submodules()? {
            let r = p.restrict_w(&w)?;
            let a = satisfies_alpha(&r.pairing)?;
            f.bounded(a.certainty);
            if !f.check(a.holds == r.w_pure.holds, || json!({"W": show(p.w(), &w), "α": a.holds})) {
                break;
            }
        }
        f.done()
    })
}

fn tensor_cases<'a>(s: &'a Subject<'a>, right: bool) -> Result<Vec<Case<'a>>> {
    let (p, q) = s
        .loaded
        .pairing_pair()
        .ok_or_else(|| crate::error::Error::Input("instance needs pairings P and Q".into()))?;
    let commutative = s.ring().is_commutative();
    let alpha_of = move |x: &Pairing| -> Result<bool> {
        if right {
            Ok(satisfies_alpha(&transpose(x)?)?.holds)
        } else {
            Ok(satisfies_alpha(x)?.holds)
        }
    };
    let mut hyps = vec![hyp(BIMODULE, commutative)];
    if commutative {
        let names = if right { ["P-right-alpha", "Q-right-alpha"] } else { [P_ALPHA, Q_ALPHA] };
        hyps.push(hyp(names[0], alpha_of(p)?));
        hyps.push(hyp(names[1], alpha_of(q)?));
    }
    single(if right { "P ⊗_r Q" } else { "P ⊗_l Q" }, hyps, move || {
        let t = if right { product_pairing(q, p)? } else { product_pairing(p, q)? };
        let holds = alpha_of(&t)?;
        Ok(Eval::check(holds, || json!({"product_alpha": false})))
    })
}

pub(super) fn p_2_left<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    tensor_cases(s, false)
}

pub(super) fn p_2_right<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    tensor_cases(s, true)
}

pub(super) fn uno_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let ring = s.ring();
    let base = vec![vacuous(NOETH), bimodule(s)];
    if !ring.is_commutative() {
        return single("E ⊆ R^X, E' ⊆ R^X'", base, || unreachable_conclusion());
    }
    let mut pairs = Vec::new();
    for x in 1..=2usize {
        let rx = Module::free(ring, Side::Right, x)?;
        for xp in 1..=2usize {
            let rxp = Module::free(ring, Side::Left, xp)?;
            for e in rx.submodules()? {
                for ep in rxp.submodules()? {
                    pairs.push((rx.clone(), e.clone(), rxp.clone(), ep));
                }
            }
        }
    }
    if pairs.len() > SAMPLE * 4 {
        pairs.shuffle(&mut s.rng(11));
        pairs.truncate(SAMPLE * 4);
    }
    let mut out = Vec::new();
    for (rx, e, rxp, ep) in pairs {
        let pe = rx.submodule_as_module(&e)?;
        let pure = rxp.is_pure_submodule(&ep, Some(&pe.module))?.holds;
        let mut hyps = base.clone();
        hyps.push(hyp("E'-E-pure", pure));
        let label = format!("E = {} ⊆ R^{}, E' = {} ⊆ R^{}", show(&rx, &e), rx.rank(), show(&rxp, &ep), rxp.rank());
        out.push(Case::new(label, hyps, move || {
            let d = uno_delta(&e, &ep)?;
            Ok(Eval::check(d.injective, || json!({"kernel": d.witness})))
        }));
    }
    Ok(out)
}

fn unreachable_conclusion() -> Result<Eval> {
    Err(crate::error::Error::Unsupported("δ needs a commutative ring".into()))
}

pub(super) fn uno_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let (n, n2) = s
        .loaded
        .module_pair()
        .ok_or_else(|| crate::error::Error::Input("instance needs modules N and N2".into()))?;
    let base = vec![vacuous(NOETH), bimodule(s)];
    if !s.ring().is_commutative() {
        return single("X ⊆ *W, X' ⊆ *W'", base, || unreachable_conclusion());
    }
    let w = on_side(n, Side::Left)?;
    let wp = on_side(n2, Side::Left)?;
    let flat = w.is_flat()?.holds;
    let dw = DualModule::new(&w)?;
    let dwp = DualModule::new(&wp)?;
    let mut pairs = Vec::new();
    for x in dw.module().submodules()? {
        for xp in dwp.module().submodules()? {
            pairs.push((x.clone(), xp));
        }
    }
    if pairs.len() > SAMPLE * 4 {
        pairs.shuffle(&mut s.rng(12));
        pairs.truncate(SAMPLE * 4);
    }
    let mut out = Vec::new();
    for (x, xp) in pairs {
        let kx = ke(&dw, &x)?;
        let pure = w.is_pure_submodule(&kx, None)?.holds;
        let mut hyps = base.clone();
        hyps.push(hyp("W-flat", flat));
        hyps.push(hyp("Ke(X)-pure", pure));
        let label = format!("X = {}, X' = {}", show(dw.module(), &x), show(dwp.module(), &xp));
        let (dw, dwp) = (dw.clone(), dwp.clone());
        out.push(Case::new(label, hyps, move || {
            let k = ke_formula(&dw, &x, &dwp, &xp)?;
            Ok(Eval::check(k.equal, || {
                json!({"lhs": k.lhs.generators(), "rhs": k.rhs.generators()})
            }))
        }));
    }
    Ok(out)
}

pub(super) fn alph_w<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let w = s.module_on(Side::Left)?;
    single("W", vec![], move || {
        let lp = is_locally_projective(&w)?;
        let projective = w.is_projective()?.is_some();
        let agree = lp.alpha_route.holds == lp.dual_basis_route;
        let mut e = Eval::check(agree && (!projective || lp.holds), || {
            json!({"alpha_route": lp.alpha_route.holds, "dual_basis_route": lp.dual_basis_route, "projective": projective})
        });
        e.bounded = lp.alpha_route.certainty == crate::modules::Certainty::Bounded;
        Ok(e)
    })
}

pub(super) fn proj_gut_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    proj_gut_1_cases(s, false)
}

pub(super) fn proj_gut_1_pure<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    proj_gut_1_cases(s, true)
}

fn proj_gut_1_cases<'a>(s: &'a Subject<'a>, pure_direction: bool) -> Result<Vec<Case<'a>>> {
    let w = s.module_on(Side::Left)?;
    let outer = if pure_direction {
        hyp(SELF_INJ, self_injective(w.ring(), Side::Left)?)
    } else {
        hyp("W-locally-projective", is_locally_projective(&w)?.holds)
    };
    let mut out = Vec::new();
    for k in w.submodules()? {
        let pure = w.is_pure_submodule(&k, None)?;
        let k_mod = w.submodule_as_module(&k)?.module;
        let label = format!("K = {}", show(&w, &k));
        if pure_direction {
            let lp = is_locally_projective(&k_mod)?.holds;
            let hyps = vec![outer.clone(), hyp("K-locally-projective", lp)];
            out.push(Case::new(label, hyps, move || Ok(Eval::check(pure.holds, || json!({"pure": false})))));
        } else {
            let hyps = vec![outer.clone(), hyp("K-pure", pure.holds)];
            out.push(Case::new(label, hyps, move || {
                let lp = is_locally_projective(&k_mod)?.holds;
                Ok(Eval::check(lp, || json!({"locally_projective": false})))
            }));
        }
    }
    Ok(out)
}

pub(super) fn proj_gut_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let w = s.module_on(Side::Left)?;
    single("W ⊆ R^{*W}", vec![vacuous(NOETH)], move || {
        let lp = is_locally_projective(&w)?.holds;
        let (_, can) = Pairing::canonical(&w)?;
        let fe = FunctionEmbedding::new(&can)?;
        let pure = fe.injective && fe.is_pure(None)?.holds;
        Ok(Eval::check(lp == pure, || json!({"locally_projective": lp, "pure": pure})))
    })
}

/// Truth values of (i), (ii), (ii'), (iii), (iv), (v) of the α-pairing
/// characterisation.
fn pw_statements(s: &Subject) -> Result<[bool; 6]> {
    let p = s.pairing()?;
    let lp = is_locally_projective(p.w())?;
    let dense = p.is_dense_pairing()?;
    let embeds = s.w_embeds()?;
    let w_alpha = lp.alpha_route.holds;
    let fe = FunctionEmbedding::new(p)?;
    let pure = fe.injective && fe.is_pure(None)?.holds;
    let projective = p.w().is_projective()?.is_some();
    Ok([
        lp.holds && dense,
        w_alpha && dense,
        s.alpha()?.holds,
        w_alpha && embeds,
        projective && embeds,
        pure,
    ])
}

pub(super) fn pw<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    single("P", vec![hyp(COG, s.ring().is_cogenerator_ring()?)], move || {
        let st = pw_statements(s)?;
        Ok(Eval::check(st[..4].iter().all(|&b| b == st[0]), || json!({"statements": st})))
    })
}

pub(super) fn pw_qf<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    single("P", vec![hyp(QF, s.ring().is_qf()?)], move || {
        let st = pw_statements(s)?;
        Ok(Eval::check(st.iter().all(|&b| b == st[0]), || json!({"statements": st})))
    })
}

pub(super) fn dicht_alp<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("P", vec![hyp(SS, s.ring().is_semisimple()?)], move || {
        let dense = p.is_dense_pairing()?;
        let embeds = s.w_embeds()?;
        let alpha = s.alpha()?.holds;
        Ok(Eval::check(dense == embeds && embeds == alpha, || {
            json!({"dense": dense, "W ⊆ V*": embeds, "α": alpha})
        }))
    })
}

//! Closure, density and annihilator statements.

use std::collections::BTreeSet;

use serde_json::json;

use super::subject::{self_injective, show, Subject};
use super::{hyp, vacuous, Case, Eval, Forall};
use crate::error::Result;
use crate::modules::{DualModule, Side, Submodule};
use crate::pairings::{an, ke, ring_is_injective_for, DualMap, Pairing};

pub(super) const COG: &str = "injective-cogenerator";
pub(super) const QF: &str = "qf";
pub(super) const W_INJ: &str = "W-injective";
pub(super) const N_INJ: &str = "N-injective";
pub(super) const SELF_INJ: &str = "self-injective";
pub(super) const NOETH: &str = "noetherian";
pub(super) const ART: &str = "artinian";
pub(super) const COFINITE: &str = "cofinite";
pub(super) const FG: &str = "finitely-generated";
pub(super) const DENSE: &str = "dense";
pub(super) const W_EMB: &str = "W-embeds";
pub(super) const V_EMB: &str = "V-embeds";

fn cog(s: &Subject) -> Result<bool> {
    s.ring().is_cogenerator_ring()
}

fn qf(s: &Subject) -> Result<bool> {
    s.ring().is_qf()
}

fn single<'a>(label: &str, hyps: Vec<super::Hyp>, f: impl FnOnce() -> Result<Eval> + 'a) -> Result<Vec<Case<'a>>> {
    Ok(vec![Case::new(label, hyps, f)])
}

pub(super) fn lemma1_hausdorff<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("V", vec![], move || {
        let zero = p.v().zero_submodule();
        let closure = p.closure(&zero)?;
        let embeds = p.kappa()?.1.is_injective()?;
        Ok(Eval::check((closure == zero) == embeds, || {
            json!({"closure_of_zero": show(p.v(), &closure), "kappa_injective": embeds})
        }))
    })
}

pub(super) fn lemma1_completion<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = vec![hyp(DENSE, p.is_dense_pairing()?), hyp(W_INJ, s.w_injective()?)];
    single("V / W^⊥", hyps, move || {
        let c = p.completion()?;
        Ok(Eval::check(c.injective && c.surjective, || {
            json!({"injective": c.injective, "surjective": c.surjective})
        }))
    })
}

pub(super) fn lemma1_dual_hausdorff<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let w = s.module_on(Side::Left)?;
    single("(*W, W)", vec![], move || {
        let (_, can) = Pairing::canonical(&w)?;
        Ok(Eval::check(can.is_hausdorff()?, || json!({"radical": show(can.v(), &can.radical().unwrap())})))
    })
}

pub(super) fn lemma1_dual_complete<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let w = s.module_on(Side::Left)?;
    let hyps = vec![hyp(W_INJ, ring_is_injective_for(&w)?)];
    single("(*W, W)", hyps, move || {
        let (_, can) = Pairing::canonical(&w)?;
        let c = can.completion()?;
        Ok(Eval::check(c.surjective, || json!({"surjective": false})))
    })
}

pub(super) fn an_ke_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let n = s.module()?;
    single("all L ⊆ N", vec![], move || {
        let d = DualModule::new(n)?;
        let mut f = Forall::new();
        for l in n.submodules()? {
            let kean = ke(&d, &an(&d, &l)?)?;
            let cog = n.quotient(&l)?.0.is_cogenerated()?;
            f.bounded(cog.certainty);
            if !f.check((kean == l) == cog.holds, || {
                json!({"L": show(n, &l), "KeAn(L)": show(n, &kean), "N/L cogenerated": cog.holds})
            }) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn an_ke_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let n = s.module()?;
    single("all L1, L2 ⊆ N", vec![hyp(N_INJ, ring_is_injective_for(n)?)], move || {
        let d = DualModule::new(n)?;
        let subs = n.submodules()?;
        let ans: Vec<Submodule> = subs.iter().map(|l| an(&d, l)).collect::<Result<_>>()?;
        let mut f = Forall::new();
        'outer: for i in 0..subs.len() {
            for j in i..subs.len() {
                let meet = subs[i].intersect(&subs[j]);
                let lhs = an(&d, &meet)?;
                let rhs = ans[i].sum(&ans[j]);
                if !f.check(lhs == rhs, || json!({"L1": show(n, &subs[i]), "L2": show(n, &subs[j])})) {
                    break 'outer;
                }
            }
        }
        f.done()
    })
}

pub(super) fn an_ke_3<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let n = s.module()?;
    let hyps = vec![hyp(SELF_INJ, self_injective(s.ring(), n.side())?), vacuous(FG)];
    single("all X ⊆ Hom(N, R)", hyps, move || {
        let d = DualModule::new(n)?;
        let mut f = Forall::new();
        for x in d.module().submodules()? {
            let anke = an(&d, &ke(&d, &x)?)?;
            if !f.check(anke == x, || json!({"X": show(d.module(), &x), "AnKe(X)": show(d.module(), &anke)})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn orth_clos_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ V", vec![], move || {
        let mut f = Forall::new();
        for x in s.v_subs()? {
            let c = p.closure(x)?;
            let b = p.biperp(x)?;
            let ok = c.is_subset(&b) && (b != *x || c == *x);
            if !f.check(ok, || json!({"X": show(p.v(), x), "closure": show(p.v(), &c), "biperp": show(p.v(), &b)})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn orth_clos_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ V", vec![vacuous(NOETH)], move || {
        // V/X is finite, hence finitely generated, for every X
        let mut f = Forall::new();
        for x in s.v_subs()? {
            p.is_open(x)?;
            f.check(true, || json!(null));
        }
        f.done()
    })
}

pub(super) fn orth_clos_3<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    orth_clos_3_cases(s, false)
}

pub(super) fn orth_clos_3_open<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    orth_clos_3_cases(s, true)
}

fn orth_clos_3_cases<'a>(s: &'a Subject<'a>, open: bool) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let (d, chi) = p.chi()?;
    let embeds = s.w_embeds()?;
    let mut out = Vec::new();
    for x in s.v_subs()? {
        let cogenerated = p.v().quotient(x)?.0.is_cogenerated()?.holds;
        let matches = an(&d, x)? == chi.image_of(&p.perp_of_v_sub(x)?)?;
        let mut hyps = vec![hyp("V/X-cogenerated", cogenerated), hyp("An(X)=χ(X⊥)", matches)];
        if open {
            hyps.extend([vacuous(NOETH), vacuous(COFINITE), hyp(W_EMB, embeds)]);
        }
        let label = format!("X = {}", show(p.v(), x));
        out.push(Case::new(label, hyps, move || {
            let holds = if open { p.is_open(x)? } else { p.is_closed(x)? };
            Ok(Eval::check(holds, || json!({"X": show(p.v(), x)})))
        }));
    }
    Ok(out)
}

pub(super) fn orth_clos_4a<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ V", vec![vacuous(ART)], move || {
        let mut f = Forall::new();
        for x in s.v_subs()? {
            let open = p.is_open(x)?;
            let closed = p.is_closed(x)?;
            if !f.check(open == closed, || json!({"X": show(p.v(), x), "open": open, "closed": closed})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn orth_clos_4b<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let mut out = Vec::new();
    for x in s.v_subs()? {
        let hyps = vec![vacuous(ART), hyp("X-closed", p.is_closed(x)?), vacuous(COFINITE)];
        out.push(Case::new(format!("X = {}", show(p.v(), x)), hyps, move || {
            let mut f = Forall::new();
            for y in s.v_subs()?.iter().filter(|y| x.is_subset(y)) {
                if !f.check(p.is_closed(y)?, || json!({"X": show(p.v(), x), "Y": show(p.v(), y)})) {
                    break;
                }
            }
            f.done()
        }));
    }
    Ok(out)
}

fn all_closed<'a>(s: &'a Subject<'a>) -> Result<Eval> {
    let p = s.pairing()?;
    let mut f = Forall::new();
    for x in s.v_subs()? {
        if !f.check(p.is_closed(x)?, || json!({"X": show(p.v(), x)})) {
            break;
        }
    }
    f.done()
}

pub(super) fn orth_clos_5a<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let hyps = vec![hyp(V_EMB, s.v_embeds()?), hyp(SELF_INJ, self_injective(s.ring(), Side::Left)?)];
    single("all f.g. X ⊆ V", hyps, move || all_closed(s))
}

pub(super) fn orth_clos_5b<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let hyps = vec![
        hyp(V_EMB, s.v_embeds()?),
        vacuous(FG),
        hyp(SELF_INJ, self_injective(s.ring(), Side::Left)?),
        vacuous(NOETH),
    ];
    single("all X ⊆ V", hyps, move || all_closed(s))
}

pub(super) fn lrs_bet_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ V", vec![hyp(COG, cog(s)?)], move || {
        let mut f = Forall::new();
        for x in s.v_subs()? {
            let c = p.closure(x)?;
            let b = p.biperp(x)?;
            if !f.check(c == b, || json!({"X": show(p.v(), x), "closure": show(p.v(), &c), "biperp": show(p.v(), &b)})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn lrs_bet_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ Y ⊆ V", vec![hyp(COG, cog(s)?)], move || {
        let subs = s.v_subs()?;
        let closures: Vec<Submodule> = subs.iter().map(|x| p.closure(x)).collect::<Result<_>>()?;
        let perps: Vec<Submodule> = subs.iter().map(|x| p.perp_of_v_sub(x)).collect::<Result<_>>()?;
        let mut f = Forall::new();
        'outer: for (i, x) in subs.iter().enumerate() {
            for (j, y) in subs.iter().enumerate() {
                if !x.is_subset(y) {
                    continue;
                }
                let dense = y.is_subset(&closures[i]);
                let perp = perps[i] == perps[j];
                if !f.check(dense == perp, || {
                    json!({"X": show(p.v(), x), "Y": show(p.v(), y), "dense": dense, "perp_equal": perp})
                }) {
                    break 'outer;
                }
            }
        }
        f.done()
    })
}

pub(super) fn lrs_bet_2_embedded<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = vec![hyp(COG, cog(s)?), hyp(W_EMB, s.w_embeds()?)];
    single("all X ⊆ V", hyps, move || {
        let full = p.v().full_submodule();
        let mut f = Forall::new();
        for x in s.v_subs()? {
            let dense = p.closure(x)? == full;
            let perp_zero = p.perp_of_v_sub(x)? == *p.w().relations();
            if !f.check(dense == perp_zero, || json!({"X": show(p.v(), x), "dense": dense})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn lrs_bet_3<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("all X ⊆ V", vec![hyp(QF, qf(s)?), vacuous(COFINITE)], move || {
        let (d, chi) = p.chi()?;
        let mut f = Forall::new();
        for x in s.v_subs()? {
            let closed = p.is_closed(x)?;
            let matches = an(&d, x)? == chi.image_of(&p.perp_of_v_sub(x)?)?;
            if !f.check(closed == matches, || json!({"X": show(p.v(), x), "closed": closed, "An(X)=χ(X⊥)": matches})) {
                break;
            }
        }
        f.done()
    })
}

fn keys(subs: impl IntoIterator<Item = Submodule>) -> BTreeSet<Vec<u64>> {
    subs.into_iter().map(|s| s.key()).collect()
}

fn perp_family(p: &Pairing, ks: &[Submodule]) -> Result<BTreeSet<Vec<u64>>> {
    Ok(keys(ks.iter().map(|k| p.perp_of_w_sub(k)).collect::<Result<Vec<_>>>()?))
}

pub(super) fn lrs_bet_4<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("closed X vs K^⊥", vec![hyp(COG, cog(s)?)], move || {
        let mut closed = Vec::new();
        for x in s.v_subs()? {
            if p.is_closed(x)? {
                closed.push(x.clone());
            }
        }
        let a = keys(closed);
        let b = perp_family(p, s.w_subs()?)?;
        Ok(Eval::check(a == b, || json!({"closed": a.len(), "perps": b.len()})))
    })
}

pub(super) fn lrs_bet_5<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    let hyps = vec![hyp(QF, qf(s)?), hyp(W_EMB, s.w_embeds()?)];
    single("open X vs K^⊥", hyps, move || {
        let mut open = Vec::new();
        for x in s.v_subs()? {
            if p.is_open(x)? {
                open.push(x.clone());
            }
        }
        let a = keys(open);
        let b = perp_family(p, s.w_subs()?)?;
        Ok(Eval::check(a == b, || json!({"open": a.len(), "perps": b.len()})))
    })
}

/// Submodules `W'` and, for each, `V' = 0` and `V' = W'^⊥`.
fn orthogonal_pairs(p: &Pairing, w_subs: &[Submodule]) -> Result<Vec<(Submodule, Submodule)>> {
    let mut out = Vec::new();
    for wp in w_subs {
        out.push((p.v().zero_submodule(), wp.clone()));
        let perp = p.perp_of_w_sub(wp)?;
        if perp != p.v().zero_submodule() {
            out.push((perp, wp.clone()));
        }
    }
    Ok(out)
}

pub(super) fn th_stet_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("subpairings (V/V', W') -> P", vec![], move || {
        let mut f = Forall::new();
        'outer: for (vp, wp) in orthogonal_pairs(p, s.w_subs()?)? {
            let sub = p.subpairing(&vp, &wp)?;
            for kp in sub.pairing.w().submodules()? {
                let (lhs, rhs) = sub.morphism.continuity_sides(&kp)?;
                if !f.check(lhs == rhs, || {
                    json!({"V'": show(p.v(), &vp), "W'": show(p.w(), &wp), "K'": show(sub.pairing.w(), &kp)})
                }) {
                    break 'outer;
                }
            }
        }
        f.done()
    })
}

pub(super) fn th_stet_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    let p = s.pairing()?;
    single("subpairings (V/V', W') -> P", vec![hyp(COG, cog(s)?)], move || {
        let mut f = Forall::new();
        'outer: for (vp, wp) in orthogonal_pairs(p, s.w_subs()?)? {
            let sub = p.subpairing(&vp, &wp)?;
            let q = &sub.pairing;
            for y in q.v().submodules()? {
                if !q.is_closed(&y)? {
                    continue;
                }
                let pre = sub.morphism.xi.preimage(&y)?;
                if !f.check(p.is_orthogonally_closed(&pre)?, || {
                    json!({"V'": show(p.v(), &vp), "W'": show(p.w(), &wp), "Y'": show(q.v(), &y)})
                }) {
                    break 'outer;
                }
            }
        }
        f.done()
    })
}

struct MapCtx {
    dm: DualMap,
    outer_p: Pairing,
    inner_p: Pairing,
}

fn map_ctx(s: &Subject) -> Result<MapCtx> {
    let theta = s.map_on_left()?;
    let dm = DualMap::new(&theta)?;
    let (_, outer_p) = Pairing::canonical(theta.target())?;
    let (_, inner_p) = Pairing::canonical(theta.source())?;
    Ok(MapCtx { dm, outer_p, inner_p })
}

fn map_w_inj(s: &Subject) -> Result<bool> {
    ring_is_injective_for(s.map_on_left()?.target())
}

pub(super) fn fstar_1<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    single("all K' ⊆ W'", vec![], move || {
        let c = map_ctx(s)?;
        let mut f = Forall::new();
        let src = c.dm.theta.source();
        for kp in src.submodules()? {
            let lhs = c.dm.star.preimage(&an(&c.dm.inner, &kp)?)?;
            let rhs = an(&c.dm.outer, &c.dm.theta.image_of(&kp)?)?;
            if !f.check(lhs == rhs, || json!({"K'": show(src, &kp)})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn fstar_2<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    single("all K ⊆ W", vec![hyp(W_INJ, map_w_inj(s)?)], move || {
        let c = map_ctx(s)?;
        let mut f = Forall::new();
        let tgt = c.dm.theta.target();
        for k in tgt.submodules()? {
            let lhs = c.dm.star.image_of(&an(&c.dm.outer, &k)?)?;
            let rhs = an(&c.dm.inner, &c.dm.theta.preimage(&k)?)?;
            if !f.check(lhs == rhs, || json!({"K": show(tgt, &k)})) {
                break;
            }
        }
        f.done()
    })
}

fn fstar_3<'a>(s: &'a Subject<'a>, which: char) -> Result<Vec<Case<'a>>> {
    let hyps = vec![hyp(COG, cog(s)?), hyp(W_INJ, map_w_inj(s)?)];
    single("all X ⊆ *W", hyps, move || {
        let c = map_ctx(s)?;
        let dual = c.dm.outer.module();
        let xs = dual.submodules()?;
        let mut f = Forall::new();
        if which == 'd' {
            let closures: Vec<Submodule> = xs.iter().map(|x| c.outer_p.closure(x)).collect::<Result<_>>()?;
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            for a in 0..xs.len() {
                for b in a..xs.len() {
                    tuples.push(vec![a, b]);
                    if xs.len() <= 12 {
                        tuples.extend((b..xs.len()).map(|t| vec![a, b, t]));
                    }
                }
            }
            for t in tuples {
                let sum = t[1..].iter().fold(xs[t[0]].clone(), |acc, &i| acc.sum(&xs[i]));
                let parts = t[1..].iter().fold(closures[t[0]].clone(), |acc, &i| acc.sum(&closures[i]));
                let lhs = c.outer_p.closure(&sum)?;
                if !f.check(lhs == parts, || json!({"X": t.iter().map(|&i| show(dual, &xs[i])).collect::<Vec<_>>()})) {
                    break;
                }
            }
            return f.done();
        }
        for x in &xs {
            let sx = c.dm.star.image_of(x)?;
            let ok = match which {
                'a' => !c.outer_p.is_closed(x)? || c.inner_p.is_closed(&sx)?,
                'b' => c.inner_p.closure(&sx)? == c.dm.star.image_of(&c.outer_p.closure(x)?)?,
                _ => ke(&c.dm.inner, &sx)? == c.dm.theta.preimage(&ke(&c.dm.outer, x)?)?,
            };
            if !f.check(ok, || json!({"X": show(dual, x)})) {
                break;
            }
        }
        f.done()
    })
}

pub(super) fn fstar_3a<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    fstar_3(s, 'a')
}

pub(super) fn fstar_3b<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    fstar_3(s, 'b')
}

pub(super) fn fstar_3c<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    fstar_3(s, 'c')
}

pub(super) fn fstar_3d<'a>(s: &'a Subject<'a>) -> Result<Vec<Case<'a>>> {
    fstar_3(s, 'd')
}

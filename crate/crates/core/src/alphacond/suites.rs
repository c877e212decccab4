use serde::{Deserialize, Serialize};

use super::{is_locally_projective, satisfies_alpha, FunctionEmbedding};
use crate::error::Result;
use crate::modules::Submodule;
use crate::pairings::{Outcome, Pairing};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub name: String,
    pub holds: bool,
}

/// Truth values of the statements involved and the checks made on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SuiteReport {
    pub statements: Vec<Statement>,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    fn state(&mut self, name: &str, holds: bool) -> bool {
        self.statements.push(Statement {
            name: name.to_string(),
            holds,
        });
        holds
    }

    fn check(&mut self, id: &str, applicable: bool, holds: bool, detail: impl Into<String>) {
        self.outcomes.push(Outcome::new(id, applicable, holds, detail));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.failed())
    }
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

/// Submodule behaviour of the α-condition for `W' ⊆ W`, `V' ⊆ V`, and the
/// statements for the pairing induced on `V'` along its inclusion into `V`.
pub fn rp_rp_suite(p: &Pairing, vp: &Submodule, wp: &Submodule) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let p_alpha = r.state("P α", satisfies_alpha(p)?.holds);

    let restricted = p.restrict_w(wp)?;
    let pure = r.state("W' ⊆ W pure", restricted.w_pure.holds);
    let pp_alpha = r.state("(V, W') α", satisfies_alpha(&restricted.pairing)?.holds);
    r.check("rp-rp.1a", true, implies(pp_alpha, pure), "(V, W') α ⇒ W' pure");
    r.check("rp-rp.1a", p_alpha, pp_alpha == pure, "P α ⇒ ((V, W') α ⇔ W' pure)");

    let orthogonal = vp
        .generators()
        .iter()
        .all(|a| wp.generators().iter().all(|b| p.eval(a, b) == p.ring().zero()));
    if orthogonal {
        let q = p.subpairing(vp, wp)?;
        let q_alpha = r.state("(V/V', W') α", satisfies_alpha(&q.pairing)?.holds);
        r.check("rp-rp.1b", p_alpha, q_alpha == pure, "P α ⇒ ((V/V', W') α ⇔ W' pure)");
    }

    // P plays Ω = (Y, W) and V' ⊆ Y is the source of ξ
    let pres = p.v().submodule_as_module(vp)?;
    let xi = pres.inclusion()?;
    let induced = p.pull_back(&xi)?;
    let dense_induced = induced.is_dense_pairing()?;
    let dense_in_y = p.is_dense(vp, &p.v().full_submodule())?.dense;
    let ind_alpha = satisfies_alpha(&induced)?.holds;
    let (_, chi) = induced.chi()?;
    let embeds = chi.is_injective()?;
    let s1 = r.state("(i) Ω α and P dense", p_alpha && dense_induced);
    let s2 = r.state("(ii) Ω α and ξ(V) dense in Y", p_alpha && dense_in_y);
    let s3 = r.state("(iii) P α", ind_alpha);
    let s4 = r.state("(iv) P α and W ↪ V*", ind_alpha && embeds);
    let s1b = r.state("(i') (i) and W ↪ V*", s1 && embeds);
    r.check("rp-rp.2", true, implies(s1, s2), "(i) ⇒ (ii)");
    r.check("rp-rp.2", true, implies(s2, s3), "(ii) ⇒ (iii)");
    r.check("rp-rp.2", true, implies(s3, s4), "(iii) ⇒ (iv)");
    let cog = p.ring().is_cogenerator_ring()?;
    r.check("rp-rp.2", cog, s1 == s2 && s2 == s3 && s3 == s4, "(i) ⇔ (ii) ⇔ (iii) ⇔ (iv)");
    r.check("rp-rp.2-readings", cog, s1 == s1b, "(i) with and without W ↪ V* agree");
    Ok(r)
}

/// The equivalent characterisations of α-pairings over QF rings, and of dense
/// pairings over semisimple rings.
pub fn pw_dicht_suite(p: &Pairing) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let ring = p.ring();
    let lp = is_locally_projective(p.w())?;
    let dense = r.state("P dense", p.is_dense_pairing()?);
    let (_, chi) = p.chi()?;
    let embeds = r.state("W ↪ V*", chi.is_injective()?);
    let alpha = r.state("P α", satisfies_alpha(p)?.holds);
    let w_lp = r.state("W locally projective", lp.holds);
    let w_alpha = r.state("W α-condition", lp.alpha_route.holds);
    let w_proj = r.state("W projective", p.w().is_projective()?.is_some());
    let fe = FunctionEmbedding::new(p)?;
    let pure = r.state("W ⊆ R^V pure", fe.injective && fe.is_pure(None)?.holds);

    let s = [
        r.state("(i) W locally projective and P dense", w_lp && dense),
        r.state("(ii) W α-condition and P dense", w_alpha && dense),
        r.state("(ii') P α", alpha),
        r.state("(iii) W α-condition and W ↪ V*", w_alpha && embeds),
    ];
    let cog = ring.is_cogenerator_ring()?;
    r.check("PW", cog, s.iter().all(|&x| x == s[0]), "(i)-(iii) equivalent");
    let qf = ring.is_qf()?;
    let more = [w_proj && embeds, pure];
    r.check(
        "PW",
        qf,
        more.iter().all(|&x| x == s[0]),
        "(iv) W projective and W ↪ V*, (v) W ⊆ R^V pure equivalent to (i)",
    );
    let ss = ring.is_semisimple()?;
    r.check("dicht=alp", ss, dense == embeds && embeds == alpha, "dense ⇔ W ⊆ V* ⇔ α");
    Ok(r)
}

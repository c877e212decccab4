use super::alpha as a;
use super::topology as t;
use super::{Kind, TheoremEntry};
use crate::error::{Error, Result};

const NEAR_VACUOUS: &str = "every submodule of *W' is closed when W' is finite, so the conclusion holds by collapse";

macro_rules! entries {
    ($( $id:literal, $kind:ident, [$($h:expr),*], $note:expr, $f:path, $stmt:literal; )*) => {
        &[$(TheoremEntry {
            id: $id,
            statement: $stmt,
            kind: Kind::$kind,
            hypotheses: &[$($h),*],
            scale_note: $note,
            cases: $f,
        }),*]
    };
}

static REGISTRY: &[TheoremEntry] = entries! {
    "lemma1.1", Pairing, [], None, t::lemma1_hausdorff,
        "V is Hausdorff in the weak topology exactly when κ: V -> *W is injective";
    "lemma1.2", Pairing, ["dense", "W-injective"], None, t::lemma1_completion,
        "for a dense pairing with R W-injective, V/W^⊥ -> *W is an isomorphism (the completion of V)";
    "lemma1.3", Module, [], None, t::lemma1_dual_hausdorff,
        "the finite topology on *W is Hausdorff";
    "lemma1.3-complete", Module, ["W-injective"], None, t::lemma1_dual_complete,
        "when R is W-injective, *W is its own completion for the pairing (*W, W)";
    "An-Ke.1", Module, [], None, t::an_ke_1,
        "KeAn(L) = L exactly when N/L is cogenerated by R";
    "An-Ke.2", Module, ["N-injective"], None, t::an_ke_2,
        "An(L1 ∩ L2) = An(L1) + An(L2) when R is N-injective";
    "An-Ke.3", Module, ["self-injective", "finitely-generated"], None, t::an_ke_3,
        "AnKe(X) = X for finitely generated X in the dual when R is self-injective";
    "orth-clos.1", Pairing, [], None, t::orth_clos_1,
        "every orthogonally closed submodule of V is closed, and closure(X) ⊆ X^⊥⊥";
    "orth-clos.2", Pairing, ["noetherian"], None, t::orth_clos_2,
        "open submodules of V are cofinite";
    "orth-clos.3", Pairing, ["V/X-cogenerated", "An(X)=χ(X⊥)"], None, t::orth_clos_3,
        "if V/X is cogenerated and An(X) = χ(X^⊥), then X is closed";
    "orth-clos.3-open", Pairing, ["V/X-cogenerated", "An(X)=χ(X⊥)", "noetherian", "cofinite", "W-embeds"], None,
        t::orth_clos_3_open,
        "under the hypotheses of orth-clos.3, a cofinite X is moreover open";
    "orth-clos.4a", Pairing, ["artinian"], None, t::orth_clos_4a,
        "X is open exactly when it is closed and cofinite";
    "orth-clos.4b", Pairing, ["artinian", "X-closed", "cofinite"], None, t::orth_clos_4b,
        "every submodule containing a closed cofinite X is closed and cofinite";
    "orth-clos.5a", Pairing, ["V-embeds", "self-injective"], None, t::orth_clos_5a,
        "finitely generated submodules of V are closed when V embeds in *W and R is left self-injective";
    "orth-clos.5b", Pairing, ["V-embeds", "finitely-generated", "self-injective", "noetherian"], None, t::orth_clos_5b,
        "all submodules of V are closed under the hypotheses of orth-clos.5a with R Noetherian";
    "lrs-bet.1", Pairing, ["injective-cogenerator"], None, t::lrs_bet_1,
        "closure(X) = X^⊥⊥ for every submodule X of V";
    "lrs-bet.2", Pairing, ["injective-cogenerator"], None, t::lrs_bet_2,
        "X ⊆ Y is dense in Y exactly when X^⊥ = Y^⊥";
    "lrs-bet.2-embedded", Pairing, ["injective-cogenerator", "W-embeds"], None, t::lrs_bet_2_embedded,
        "the density criterion of lrs-bet.2 when W embeds in V*";
    "lrs-bet.3", Pairing, ["qf", "cofinite"], None, t::lrs_bet_3,
        "X is closed exactly when An(X) = χ(X^⊥)";
    "lrs-bet.4", Pairing, ["injective-cogenerator"], None, t::lrs_bet_4,
        "the closed submodules of V are exactly the K^⊥ for submodules K of W";
    "lrs-bet.5", Pairing, ["qf", "W-embeds"], None, t::lrs_bet_5,
        "the open submodules of V are exactly the K^⊥ for finitely generated K ⊆ W";
    "th-stet.1", Pairing, [], None, t::th_stet_1,
        "for a pairing morphism (ξ, θ), ξ^-1(K'^⊥) = θ(K')^⊥, so ξ is continuous";
    "th-stet.2", Pairing, ["injective-cogenerator"], Some(NEAR_VACUOUS), t::th_stet_2,
        "preimages of closed submodules under a pairing morphism are orthogonally closed";
    "f*-clos.1", Map, [], None, t::fstar_1,
        "θ*^-1(An(K')) = An(θ(K')) for K' ⊆ W'";
    "f*-clos.2", Map, ["W-injective"], None, t::fstar_2,
        "θ*(An(K)) = An(θ^-1(K)) for K ⊆ W when R is W'-injective";
    "f*-clos.3a", Map, ["injective-cogenerator", "W-injective"], Some(NEAR_VACUOUS), t::fstar_3a,
        "θ*(X) is closed for closed X ⊆ *W";
    "f*-clos.3b", Map, ["injective-cogenerator", "W-injective"], Some(NEAR_VACUOUS), t::fstar_3b,
        "closure(θ*(X)) = θ*(closure(X)) for X ⊆ *W";
    "f*-clos.3c", Map, ["injective-cogenerator", "W-injective"], None, t::fstar_3c,
        "Ke(θ*(X)) = θ^-1(Ke(X)) for X ⊆ *W";
    "f*-clos.3d", Map, ["injective-cogenerator", "W-injective"], Some(NEAR_VACUOUS), t::fstar_3d,
        "a finite sum of closed submodules of *W is closed";
    "flat", Pairing, ["P-alpha"], None, a::flat,
        "an α-pairing has W flat and W ⊆ V*";
    "q-2", Pairing, ["P-alpha"], None, a::q2,
        "for an α-pairing, t lies in N ⊗ W exactly when its values under every v lie in N";
    "rp-rp.1a", Pairing, ["P-alpha"], None, a::rp_rp_1a,
        "for an α-pairing, (V, W') is an α-pairing exactly when W' ⊆ W is pure";
    "rp-rp.1a-necessity", Pairing, [], None, a::rp_rp_1a_necessity,
        "if (V, W') is an α-pairing then W' ⊆ W is pure";
    "rp-rp.1b", Pairing, ["P-alpha"], None, a::rp_rp_1b,
        "for an α-pairing, a subpairing (V/V', W') is an α-pairing exactly when W' ⊆ W is pure";
    "rp-rp.2", Pairing, [], None, a::rp_rp_2,
        "for the pairing induced on V' ⊆ V: dense in P ⇒ dense in Y ⇒ α ⇒ α with W ↪ V'*";
    "rp-rp.2-equiv", Pairing, ["injective-cogenerator"], None, a::rp_rp_2_equiv,
        "the four statements of rp-rp.2 are equivalent over an injective cogenerator";
    "rp-rp.2-strict", Pairing, ["injective-cogenerator"], None, a::rp_rp_2_strict,
        "requiring W ↪ V'* in the first statement of rp-rp.2 does not change the equivalence";
    "P-rs.1", Module, ["noetherian"], None, a::p_rs_1,
        "M ⊗ R^X -> M^X, m ⊗ f -> [x -> m f(x)] is injective over a Noetherian ring";
    "P-rs.2", Pairing, ["noetherian", "W-embeds"], None, a::p_rs_2,
        "α_M is injective exactly when W ⊆ R^V is M-pure";
    "P-rs.2-projective", Pairing, ["noetherian", "W-embeds", "V-projective"], None, a::p_rs_2_projective,
        "for projective V, α_M is injective exactly when χ(W) ⊆ V* is M-pure";
    "P-rs.3", Pairing, ["noetherian", "W-embeds"], None, a::p_rs_3,
        "P is an α-pairing exactly when W ⊆ R^V is pure";
    "hered.1", Module, ["noetherian", "hereditary"], None, a::hered_1,
        "over a Noetherian hereditary ring, (V, V*) is an α-pairing";
    "hered.2", Module, ["noetherian", "hereditary"], None, a::hered_2,
        "over a Noetherian hereditary ring, (V, W) with W ⊆ V* is an α-pairing exactly when W is pure in V*";
    "p-2.1", PairingPair, ["bimodule", "P-alpha", "Q-alpha"], None, a::p_2_left,
        "the left tensor product of two α-pairings is an α-pairing";
    "p-2.2", PairingPair, ["bimodule", "P-right-alpha", "Q-right-alpha"], None, a::p_2_right,
        "the right tensor product of two right α-pairings is a right α-pairing";
    "uno.1", Ring, ["noetherian", "bimodule", "E'-E-pure"], None, a::uno_1,
        "E ⊗ E' -> R^(X × X'), f ⊗ f' -> [(x, x') -> f(x) f'(x')] is injective when E' ⊆ R^X' is E-pure";
    "uno.2", ModulePair, ["noetherian", "bimodule", "W-flat", "Ke(X)-pure"], None, a::uno_2,
        "Ke(κ(X' ⊗ X)) = Ke(X) ⊗ W' + W ⊗ Ke(X') for W flat and Ke(X) ⊆ W pure";
    "alph-W", Module, [], None, a::alph_w,
        "W satisfies the α-condition exactly when it has local dual bases, and projective modules do";
    "proj-gut.1", Module, ["W-locally-projective", "K-pure"], None, a::proj_gut_1,
        "pure submodules of a locally projective module are locally projective";
    "proj-gut.1-pure-direction", Module, ["self-injective", "K-locally-projective"], None, a::proj_gut_1_pure,
        "over a left self-injective ring, locally projective submodules are pure";
    "proj-gut.2", Module, ["noetherian"], None, a::proj_gut_2,
        "W is locally projective exactly when W ⊆ R^{*W} is pure";
    "PW", Pairing, ["injective-cogenerator"], None, a::pw,
        "locally projective and dense, W α-module and dense, P α, and W α-module with W ⊆ V* are equivalent";
    "PW-qf", Pairing, ["qf"], None, a::pw_qf,
        "over a QF ring the statements of PW are also equivalent to W projective with W ⊆ V*, and to W ⊆ R^V pure";
    "dicht=alp", Pairing, ["semisimple"], None, a::dicht_alp,
        "over a semisimple ring, dense, W ⊆ V* and α are equivalent";
};

pub fn registry() -> &'static [TheoremEntry] {
    REGISTRY
}

pub fn entry(id: &str) -> Result<&'static TheoremEntry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Input(format!("unknown theorem `{id}`")))
}

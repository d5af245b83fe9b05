//! The check registry: id, formula anchor, mode, admissible ensembles and
//! the norm family each check sweeps.
//!
//! Trial-count divisors: `prop-bjn-1` and `prop-bjn-2` decide
//! `w_N`-orthogonality, which nests a radius search inside a complex
//! minimization; they run `trials / 25` trials per dimension on dims
//! `{2, 3, 4}` unless dims are given explicitly.

use super::checks as c;
use super::tally::Tally;
use super::{Mode, Trial};
use crate::complexmat::EnsembleKind::{self, *};
use crate::error::{Error, Result};
use crate::norms::NormSpec;

pub(crate) type Body = fn(&mut Trial) -> Result<()>;
pub(crate) type Anchors = fn(&mut Tally, &[NormSpec]) -> Result<()>;

#[derive(Clone, Copy)]
pub(crate) enum Norms {
    /// The grid, filtered.
    Grid(fn(&NormSpec) -> bool),
    /// A fixed list, independent of the grid.
    Fixed(fn() -> Vec<NormSpec>),
    Free,
}

pub(crate) struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
    pub ensembles: &'static [EnsembleKind],
    pub accepts: &'static [EnsembleKind],
    pub norms: Norms,
    pub dims: Option<&'static [usize]>,
    pub min_dim: usize,
    pub trial_divisor: usize,
    pub anchors: Option<Anchors>,
    pub run: Body,
}

const SINGLES: &[EnsembleKind] = &EnsembleKind::SINGLES;
const GENERIC: &[EnsembleKind] = &[Ginibre, Hermitian, Normal, Nilpotent, RankOne, Accretive];
const GINIBRE: &[EnsembleKind] = &[Ginibre];

fn any(_: &NormSpec) -> bool {
    true
}
fn schatten(n: &NormSpec) -> bool {
    !n.is_operator()
}
fn p_open(n: &NormSpec) -> bool {
    !n.is_operator() && n.p() > 1.0
}
fn p_finite(n: &NormSpec) -> bool {
    !n.is_operator()
}
fn p_ge_2(n: &NormSpec) -> bool {
    !n.is_operator() && n.p() >= 2.0
}
fn op() -> Vec<NormSpec> {
    vec![NormSpec::operator()]
}
fn hs() -> Vec<NormSpec> {
    vec![NormSpec::hilbert_schmidt()]
}
fn trace() -> Vec<NormSpec> {
    vec![NormSpec::trace()]
}

const fn def(id: &'static str, anchor: &'static str, mode: Mode, run: Body) -> CheckDef {
    CheckDef {
        id,
        anchor,
        mode,
        ensembles: GENERIC,
        accepts: SINGLES,
        norms: Norms::Grid(any),
        dims: None,
        min_dim: 1,
        trial_divisor: 1,
        anchors: None,
        run,
    }
}

use Mode::{Equivalence as Eqv, Inequality as Ineq, Scrutiny as Scr};

static REGISTRY: &[CheckDef] = &[
    CheckDef {
        ensembles: SINGLES,
        norms: Norms::Fixed(op),
        ..def("eq-1.1", "½‖A‖ ≤ w(A) ≤ ‖A‖", Ineq, c::eq_1_1)
    },
    CheckDef {
        ensembles: SINGLES,
        norms: Norms::Fixed(op),
        ..def(
            "yamazaki-consistency",
            "w(A) = sup_θ ‖Re(e^{iθ}A)‖ ≥ |⟨Ax, x⟩| for unit x",
            Ineq,
            c::yamazaki,
        )
    },
    CheckDef {
        norms: Norms::Fixed(hs),
        ..def(
            "thm-4.1",
            "max{‖A‖₂/√2, (‖A‖₂ + |tr A²|^{1/2})/2} ≤ w₂(A) ≤ ‖A‖₂",
            Ineq,
            c::thm_4_1,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        accepts: SINGLES,
        norms: Norms::Fixed(hs),
        ..def("prop-w2-upper", "w₂(A) = ‖A‖₂ ⟺ A ∥² A*", Eqv, c::prop_w2_upper)
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Grid(p_finite),
        min_dim: 2,
        ..def(
            "prop-equiv-cota-inf",
            "w₂(A) = ‖A‖₂/√2 ⟺ I ⊥^p A²",
            Eqv,
            c::prop_equiv_cota_inf,
        )
    },
    CheckDef {
        ensembles: SINGLES,
        norms: Norms::Free,
        ..def("rem-aluthge-trace", "|tr(Ã²)| = |tr(A²)|", Ineq, c::rem_aluthge_trace)
    },
    def("lemma-bp-1", "w_N(A) = sup_θ N(Im(e^{iθ}A))", Ineq, c::lemma_bp_1),
    def(
        "lemma-bp-2",
        "w_N(A) = sup_{α²+β²=1} N(α Re A + β Im A)",
        Ineq,
        c::lemma_bp_2,
    ),
    def("lemma-bp-3", "w_N(A) ≤ ½(N(A) + N(A*))", Ineq, c::lemma_bp_3),
    def(
        "lemma-bp-4",
        "w_N(AX ± XA*) ≤ (N(A) + N(A*)) w_N(X)",
        Ineq,
        c::lemma_bp_4,
    ),
    CheckDef {
        ensembles: &[SquareZero],
        norms: Norms::Fixed(op),
        min_dim: 2,
        ..def(
            "lemma-bp-5",
            "w_N(A) = ½N(A) ⇒ Re(e^{iθ}A) ∥^N Im(e^{iθ}A) for all θ",
            Ineq,
            c::lemma_bp_5,
        )
    },
    def(
        "lemma-bp-6-upper",
        "w_N(Ã) ≤ N(|A|^{1/2})² w_N(U)",
        Ineq,
        c::lemma_bp_6_upper,
    ),
    CheckDef {
        ensembles: &[Hermitian],
        accepts: &[Hermitian],
        dims: Some(&[2, 3, 4]),
        trial_divisor: 25,
        ..def(
            "prop-bjn-1",
            "w_N(T) = N(T), T ⊥_{w_N} A ⇒ T ⊥_N A",
            Ineq,
            c::prop_bjn_1,
        )
    },
    CheckDef {
        ensembles: &[SquareZero],
        accepts: &[SquareZero],
        norms: Norms::Fixed(op),
        dims: Some(&[2, 3, 4]),
        min_dim: 2,
        trial_divisor: 25,
        ..def(
            "prop-bjn-2",
            "w_N(T) = ½N(T), T ⊥_N A ⇒ T ⊥_{w_N} A",
            Ineq,
            c::prop_bjn_2,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        ..def(
            "thm-cotasuperior",
            "w_N(A) = ½(N(A) + N(A*)) ⟺ A ∥^N A* ⟺ w_N(A) = N(A)",
            Eqv,
            c::thm_cotasuperior,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Grid(p_open),
        ..def(
            "cor-p-normaloid",
            "w_p(A) = ‖A‖_p ⟺ A ∥^p A* ⟺ trace conditions ⟺ A = αA*, |α| = 1",
            Eqv,
            c::cor_p_normaloid,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Fixed(trace),
        ..def(
            "cor-w1-conditions",
            "w₁(A) = ‖A‖₁ ⟺ A ∥¹ A* ⟺ (A*)² = λ|A||A*| ⟺ |A + λA*| = |A| + |A*| ⟺ |tr(|A|A⁻¹A*)| = ‖A*‖₁",
            Eqv,
            c::cor_w1_conditions,
        )
    },
    CheckDef {
        ensembles: GENERIC,
        norms: Norms::Grid(schatten),
        ..def(
            "prop-p-equiv",
            "2^{-1/p}‖A‖_p ≤ w_p(A) (p ≤ 2), 2^{1/p-1}‖A‖_p ≤ w_p(A) (p ≥ 2), w_p(A) ≤ ‖A‖_p",
            Ineq,
            c::prop_p_equiv,
        )
    },
    CheckDef {
        ensembles: SINGLES,
        norms: Norms::Fixed(trace),
        ..def(
            "prop-w1-degenerate",
            "w₁(T) = ½‖T‖₁ only for T = 0",
            Ineq,
            c::prop_w1_degenerate,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Grid(schatten),
        anchors: Some(c::cor_rank_one_anchors),
        ..def(
            "cor-rank-one",
            "w_p(x⊗y) = ‖x‖‖y‖ ⟺ x, y dependent (p > 1)",
            Eqv,
            c::cor_rank_one,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Free,
        anchors: Some(c::rem_buzano_anchors),
        ..def(
            "rem-buzano",
            "|⟨x, z⟩⟨z, y⟩| ≤ ½(|⟨x, y⟩| + ‖x‖‖y‖), ‖z‖ = 1",
            Ineq,
            c::rem_buzano,
        )
    },
    def(
        "eq-ineq-producto",
        "w_N(AX) ≤ N(AX) ≤ N(A)N(X) ≤ 4w_N(A)w_N(X)",
        Ineq,
        c::eq_ineq_producto,
    ),
    def(
        "thm-product-DNA",
        "w_N(AX) ≤ (N(A) + D_{N,A}) w_N(X) ≤ 2N(A)w_N(X)",
        Ineq,
        c::thm_product_dna,
    ),
    CheckDef {
        ensembles: &[CommutingStarPair],
        accepts: &[CommutingStarPair],
        ..def(
            "cor-commute-star",
            "AX = ±XA* ⇒ w_N(AX) ≤ N(A) w_N(X)",
            Ineq,
            c::cor_commute_star,
        )
    },
    CheckDef {
        ensembles: &[Accretive, AccretiveDissipative],
        accepts: &[Accretive, AccretiveDissipative],
        norms: Norms::Grid(p_ge_2),
        ..def(
            "lemma-bhatia-zhan",
            "‖T‖_p² ≤ ‖A‖_p² + 2^{1-2/p}‖B‖_p² (A ≥ 0), ‖T‖_p² ≤ ‖A‖_p² + ‖B‖_p² (A, B ≥ 0), T = A + iB, p ≥ 2",
            Ineq,
            c::lemma_bhatia_zhan,
        )
    },
    CheckDef {
        ensembles: &[Accretive, AccretiveDissipative],
        accepts: &[Accretive, AccretiveDissipative],
        norms: Norms::Grid(p_ge_2),
        ..def(
            "thm-accretive",
            "w_p(AX) ≤ √(1 + 2^{1-2/p}) ‖A‖ w_p(X) (X accretive), w_p(AX) ≤ √2 ‖A‖ w_p(X) (X accretive-dissipative)",
            Ineq,
            c::thm_accretive,
        )
    },
    CheckDef {
        ensembles: &[SelfadjointProductPair],
        accepts: &[SelfadjointProductPair],
        ..def(
            "eq-cota-nui",
            "w_N(AB) = N(AB) ≤ w_N(BA) for AB Hermitian",
            Ineq,
            c::eq_cota_nui,
        )
    },
    CheckDef {
        ensembles: GINIBRE,
        norms: Norms::Grid(any),
        anchors: Some(c::thm_th987_anchors),
        ..def(
            "thm-th.987",
            "A ∥^p B ⟺ ‖A‖_p|tr(|A|^{p-1}U*B)| = ‖B‖_p tr|A|^p (1 < p < ∞); dependence ⇒ ∥ for p = 1, ∞",
            Eqv,
            c::thm_th987,
        )
    },
    CheckDef {
        ensembles: &[SquareZero, Ginibre],
        norms: Norms::Fixed(hs),
        anchors: Some(c::scrutiny_aluthge_w2_anchors),
        min_dim: 2,
        ..def("scrutiny-aluthge-w2", "w₂(Ã) = w₂(A)", Scr, c::scrutiny_aluthge_w2)
    },
    CheckDef {
        ensembles: &[SquareZero, Ginibre],
        anchors: Some(c::scrutiny_bp_6_lower_anchors),
        min_dim: 2,
        ..def("scrutiny-bp-6-lower", "½w_N(|A|) ≤ w_N(Ã)", Scr, c::scrutiny_bp_6_lower)
    },
];

pub(crate) fn lookup(id: &str) -> Result<&'static CheckDef> {
    REGISTRY
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// All registered ids, in registry order.
pub fn registry_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.id).collect()
}

/// The formula a registered id checks.
pub fn anchor_of(id: &str) -> Result<&'static str> {
    lookup(id).map(|d| d.anchor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique_and_anchored() {
        let ids = registry_ids();
        assert_eq!(ids.len(), 30);
        assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
        for d in REGISTRY {
            assert!(!d.anchor.is_empty(), "{}", d.id);
            assert!(d.ensembles.iter().all(|k| d.accepts.contains(k)), "{}", d.id);
        }
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(lookup("nope"), Err(Error::UnknownCheck(_))));
    }
}

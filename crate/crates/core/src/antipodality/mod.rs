//! Predicates and verifiers on vertex sets: equidistance, subequilateral
//! polytopes, λ, slab tests for (edge-)antipodality, and exact checks of the
//! vertex-count bounds that rest on them.
//!
//! Verifiers return a [`Verdict`]. `Violated` from a bound that is a theorem
//! means the implementation is wrong, and callers surface it as such.

mod lemmas;
mod metric;
mod slab;
mod theorems;

use serde::{Deserialize, Serialize};

pub use lemmas::{
    lemma2_check, lemma3_certificate, lemma3_check, one_plus_sqrt_power_at_least,
    Lemma2Report, Lemma3Certificate, Lemma3Report, Lemma3Side,
};
pub use metric::{
    diameter, is_equidistant, is_subequilateral, lambda, LambdaValue, PairDistances,
    SubequilateralCheck,
};
pub use slab::{
    antipodal_pair, is_antipodal, is_edge_antipodal, AntipodalityCheck, SlabWitness,
};
pub use theorems::{
    bridge_check, equidistant_bound_check, lambda_monotonicity_check, theorem3_check_euclidean,
    theorem_bound, theorem_bound_check, BoundMode, BridgeReport, EquidistantBoundReport,
    MonotonicityReport, Theorem3Report, TheoremBoundReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not_applicable",
        }
    }
}

//! Learners, sample complexity, VC witnesses and the constructions that
//! turn one into the other.

mod complexity;
mod learner;
mod nfl;
mod samples;
mod witness;

pub use complexity::{
    sample_complexity_m, sample_lower_bound, vcbound_from_samplecomplexity, Constants, Provenance, SampleComplexity,
};
pub use learner::{erm_full, erm_positive_learner, erm_positive_staged, split_learner, Learner};
pub use nfl::{
    nfl_adversary, nfl_adversary_with_budget, witness_from_learner, witness_search_fmc, FmcOutcome, NflOutcome,
    DEFAULT_NFL_BUDGET,
};
pub use samples::SampleSpace;
pub use witness::{
    enumerate_good_hypotheses, good_for_witness, learner_from_witness, witness_from_negative, witness_refute,
    Refutation, StageSchedule, Witness,
};

use crate::class::ClassGenerator;

/// `{ h : evens(h) ∈ C0, odds(h) ∈ C1 }`.
pub fn interleave_classes(c0: ClassGenerator, c1: ClassGenerator) -> ClassGenerator {
    ClassGenerator::Interleave(Box::new(c0), Box::new(c1))
}

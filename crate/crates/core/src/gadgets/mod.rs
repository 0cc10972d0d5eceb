//! Strong Weihrauch reductions as executable pipelines.
//!
//! A reduction `f ≤_sW g` is a pair of translators: `forward` (K) maps an
//! instance of `f` to an instance of `g`, and `backward` (H) maps any
//! answer of `g` to an answer of `f` without looking at the original
//! instance. The oracles for `g` are mostly non-computable, so the
//! pipelines run against *tame* realizers: solvers that are total on a
//! decidable sub-domain singled out by a certificate. Certificates are
//! computed by the caller and handed to the realizer only; the gadget
//! code never sees them.

mod appendix;
mod bound_class;
mod dnc_witness;
mod instances;
mod lim_ppac;
mod open_paths;
mod realizers;
mod sort_sup;
mod sort_vcdim;
mod wkl_rpac;

pub use appendix::{appendix_construction, AppendixConstruction, AppendixStage};
pub use bound_class::{bound_class_certificate, BoundToClass, TamePpacFull};
pub use dnc_witness::{decode_dncstar, dnc_certificate, DncSolution, DncStarToWitness, TameWitPositive, WitInstance};
pub use instances::{ChoiceFamily, ConvergingBits, Removal, StreamFamily};
pub use lim_ppac::{decode_ppac, ppac_certificate, LimhatToPpac, PpacCertificate, PpacInstance, Sign, TamePpac};
pub use open_paths::{open_paths_certificate, OpenPaths, OpenPathsCertificate, SortJumpToVcdimNeg, TameVcdimNegative};
pub use realizers::{
    BinaryTree, LimCertificate, LpoCertificate, NatSequence, SupCertificate, TameChoiceN, TameLim, TameLpo, TameMax,
    TameSort, TameSup, TameWkl, VcdimCertificate,
};
pub use sort_sup::{SortToSup, SupToSort};
pub use sort_vcdim::{sort_class, SortToVcdim, TameVcdimFull};
pub use wkl_rpac::{decode_rpac, rpac_certificate, RpacInstance, TameRpac, WklToRpac};

use crate::error::Result;

/// How many positions a tame realizer inspects when it spot-checks an
/// instance against its certificate.
pub const SPOT_CHECK: usize = 64;

/// A strong Weihrauch reduction.
pub trait Reduction {
    /// Instances of the reduced problem.
    type Input;
    /// Instances handed to the oracle.
    type Instance;
    /// Oracle answers.
    type Answer;
    /// Answers of the reduced problem, read to a finite budget.
    type Output;

    fn name(&self) -> &'static str;

    /// The instance translator K.
    fn forward(&self, input: &Self::Input) -> Self::Instance;

    /// The answer translator H, producing `budget` symbols of output.
    fn backward(&self, answer: &Self::Answer, budget: usize) -> Result<Self::Output>;
}

/// A solver that is total on instances carrying a valid certificate and
/// signals [`crate::Error::TameDomain`] when it detects a false one.
pub trait TameRealizer<I> {
    type Answer;
    type Certificate;

    fn problem(&self) -> &'static str;

    fn solve(&self, instance: &I, certificate: &Self::Certificate) -> Result<Self::Answer>;
}

/// `H(oracle(K(input)))` to `budget` symbols.
pub fn run_reduction<G, O>(
    gadget: &G,
    oracle: &O,
    input: &G::Input,
    certificate: &O::Certificate,
    budget: usize,
) -> Result<G::Output>
where
    G: Reduction,
    O: TameRealizer<G::Instance, Answer = G::Answer>,
{
    let instance = gadget.forward(input);
    let answer = oracle.solve(&instance, certificate)?;
    gadget.backward(&answer, budget)
}

//! The no-free-lunch adversary and the witnesses it yields.

use num::{BigUint, Zero};

use super::complexity::SampleComplexity;
use super::learner::Learner;
use super::samples::SampleSpace;
use super::witness::{witness_refute, Witness};
use crate::bits::{Point, Word};
use crate::class::PositiveClass;
use crate::error::{Error, Result};
use crate::risk::{Rational, Sample};

pub const DEFAULT_NFL_BUDGET: u64 = 2_000_000;

/// The adversary's labeling and the exact mass of samples on which the
/// learner's true risk reaches 1/8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NflOutcome {
    pub labeling: Word,
    pub failing: BigUint,
    pub total: BigUint,
}

impl NflOutcome {
    pub fn probability(&self) -> Rational {
        Rational::new(self.failing.clone().into(), self.total.clone().into())
    }
}

/// First labeling `g` of `points` (lexicographically) such that, for `D`
/// uniform on the graph of `g`, `P_{S∼D^n}[L_D(A(S)) ≥ 1/8] ≥ 1/7`.
pub fn nfl_adversary(learner: &Learner, n: usize, points: &[Point]) -> Result<NflOutcome> {
    nfl_adversary_with_budget(learner, n, points, DEFAULT_NFL_BUDGET)
}

/// As [`nfl_adversary`], failing with a resource error after `budget`
/// learner evaluations.
pub fn nfl_adversary_with_budget(learner: &Learner, n: usize, points: &[Point], budget: u64) -> Result<NflOutcome> {
    let k = points.len();
    if k == 0 || k < 2 * n {
        return Err(Error::Precondition(format!("{k} points for sample size {n}; need at least max(1, 2n)")));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::Precondition("points must be distinct".into()));
    }
    if k >= 64 {
        return Err(Error::Resource(format!("2^{k} labelings")));
    }
    let samples = SampleSpace::new(k, n, learner.is_symmetric());
    let mut calls = 0u64;
    for code in 0u64..1 << k {
        let g = Word::binary(code as u128, k);
        let mut failing = BigUint::zero();
        for (indices, weight) in samples.iter() {
            calls += 1;
            if calls > budget {
                return Err(Error::Resource(format!("more than {budget} learner evaluations")));
            }
            let sample = Sample::new(indices.iter().map(|&t| (points[t], g[t])).collect());
            let h = learner.respond(&sample)?;
            let mistakes = (0..k).filter(|&t| h.query(points[t]) != g[t]).count();
            if 8 * mistakes >= k {
                failing += weight;
            }
        }
        if BigUint::from(7u32) * &failing >= *samples.total() {
            return Ok(NflOutcome { labeling: g, failing, total: samples.total().clone() });
        }
    }
    Err(Error::Precondition("no labeling defeats the learner".into()))
}

/// The `2n`-ary witness with `n = max(m⟨4,3⟩, 1)`: on a tuple, the labeling
/// the adversary picks against `A`.
pub fn witness_from_learner(learner: &Learner, m: &SampleComplexity, budget: u64) -> Witness {
    let n = (m.at(31) as usize).max(1);
    let a = learner.clone();
    Witness::new(2 * n, format!("adversary labels against {}, n={n}", learner.description()), move |t| {
        Ok(nfl_adversary_with_budget(&a, n, t, budget)?.labeling)
    })
}

/// Result of the finite-mind-change witness search.
#[derive(Clone, Debug)]
pub struct FmcOutcome {
    pub witness: Witness,
    pub n: usize,
    pub mind_changes: usize,
}

/// Tries `n = 1, 2, ...`: the current guess is the adversary witness for
/// sample size `n`, and at step `t` it is checked against the class with
/// point budget `2n + t`; a refutation moves to `n + 1`.
pub fn witness_search_fmc(
    class: &dyn PositiveClass,
    learner: &Learner,
    stages: usize,
    budget: u64,
) -> Result<FmcOutcome> {
    let mut n = 1;
    let mut mind_changes = 0;
    let mut checked = false;
    let make = |n: usize| {
        let a = learner.clone();
        Witness::new(2 * n, format!("adversary labels against {}, n={n}", learner.description()), move |t| {
            Ok(nfl_adversary_with_budget(&a, n, t, budget)?.labeling)
        })
    };
    let mut f = make(n);
    for t in 1..=stages {
        if witness_refute(class, &f, 2 * n + t)?.is_some() {
            n += 1;
            mind_changes += 1;
            f = make(n);
            checked = false;
        } else {
            checked = true;
        }
    }
    if !checked {
        return Err(Error::Resource(format!("no surviving witness after {stages} stages")));
    }
    Ok(FmcOutcome { witness: f, n, mind_changes })
}

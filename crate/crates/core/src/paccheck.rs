//! Checking the PAC condition on finite distributions, exactly or by
//! seeded Monte Carlo, and searching for evidence against a learner.

use num::{BigInt, BigUint, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{Point, Word};
use crate::class::{Exclusion, FullClass, NegativeClass, PositiveClass};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::learning::{Learner, SampleComplexity, SampleSpace};
use crate::pairing::{cantor_pair, cantor_unpair, decode_sequence};
use crate::risk::{
    inf_risk_exact, inf_risk_stream, inverse_power_of_two, true_risk, Atom, Distribution, Rational, Sample,
};
use crate::vcdim::combinations;

pub const DEFAULT_EXACT_BUDGET: u64 = 2_000_000;

/// z-score of the two-sided 99.9% Wilson score interval used by the Monte
/// Carlo check.
pub const WILSON_Z: f64 = 3.2905;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVerdict {
    pub verdict: Verdict,
    /// `P[L_D(A(S)) ≤ inf_C L_D + 2^{-i}]`.
    pub success: Rational,
    pub inf_risk: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McVerdict {
    pub verdict: Verdict,
    pub successes: u64,
    pub trials: u64,
    pub interval: (f64, f64),
}

impl McVerdict {
    pub fn frequency(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

fn check_params(i: u64, j: u64) -> Result<()> {
    if i > 64 || j > 64 {
        return Err(Error::Range(format!("accuracy/confidence exponents ({i},{j}) above 64")));
    }
    Ok(())
}

fn sample_weight(dist: &Distribution, indices: &[usize], multiplicity: BigUint) -> Rational {
    let mut w = Rational::from_integer(BigInt::from(multiplicity));
    for &t in indices {
        w *= &dist.atoms()[t].p;
    }
    w
}

fn sample_of(dist: &Distribution, indices: &[usize]) -> Sample {
    Sample::new(indices.iter().map(|&t| (dist.atoms()[t].x, dist.atoms()[t].y)).collect())
}

/// Exact success probability over all `|supp D|^n` samples.
pub fn pac_check_exact(
    class: &dyn FullClass,
    learner: &Learner,
    dist: &Distribution,
    i: u64,
    j: u64,
    n: usize,
) -> Result<ExactVerdict> {
    pac_check_exact_with_budget(class, learner, dist, i, j, n, DEFAULT_EXACT_BUDGET)
}

pub fn pac_check_exact_with_budget(
    class: &dyn FullClass,
    learner: &Learner,
    dist: &Distribution,
    i: u64,
    j: u64,
    n: usize,
    budget: u64,
) -> Result<ExactVerdict> {
    check_params(i, j)?;
    let inf = inf_risk_exact(class, dist)?;
    let success = success_mass(learner, dist, n, &(&inf + inverse_power_of_two(i)), budget)?;
    let verdict = if success > Rational::one() - inverse_power_of_two(j) { Verdict::Holds } else { Verdict::Fails };
    Ok(ExactVerdict { verdict, success, inf_risk: inf })
}

/// Mass of samples with `L_D(A(S)) ≤ bound`.
fn success_mass(learner: &Learner, dist: &Distribution, n: usize, bound: &Rational, budget: u64) -> Result<Rational> {
    let space = SampleSpace::new(dist.atoms().len(), n, learner.is_symmetric());
    if space.size() > BigUint::from(budget) {
        return Err(Error::Resource(format!("{} samples exceed the budget of {budget}", space.size())));
    }
    let mut success = Rational::zero();
    for (indices, mult) in space.iter() {
        let h = learner.respond(&sample_of(dist, &indices))?;
        if true_risk(dist, &h) <= *bound {
            success += sample_weight(dist, &indices, mult);
        }
    }
    Ok(success)
}

/// Per-trial generator: trials are independent of scheduling.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Integer weights over a common denominator, for exact sampling.
fn integer_weights(dist: &Distribution) -> Result<(Vec<u128>, u128)> {
    let lcm = dist.atoms().iter().fold(BigInt::one(), |acc, a| num::integer::lcm(acc, a.p.denom().clone()));
    let l = lcm.to_u128().ok_or_else(|| Error::Resource("denominators too large to sample".into()))?;
    let weights = dist
        .atoms()
        .iter()
        .map(|a| (a.p.numer() * &lcm / a.p.denom()).to_u128().expect("numerator below denominator"))
        .collect();
    Ok((weights, l))
}

pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Monte Carlo estimate of the success probability. Trial `t` draws from a
/// generator seeded by `(seed, t)`, so results do not depend on `workers`.
#[allow(clippy::too_many_arguments)]
pub fn pac_check_mc(
    class: &dyn FullClass,
    learner: &Learner,
    dist: &Distribution,
    i: u64,
    j: u64,
    n: usize,
    trials: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<McVerdict> {
    check_params(i, j)?;
    if trials == 0 {
        return Err(Error::Precondition("Monte Carlo check with zero trials".into()));
    }
    let bound = inf_risk_exact(class, dist)? + inverse_power_of_two(i);
    let (weights, total) = integer_weights(dist)?;
    let run = |t: u64| -> Result<bool> {
        let mut rng = trial_rng(seed, t);
        let mut items = Vec::with_capacity(n);
        for _ in 0..n {
            let mut r = rng.random_range(0..total);
            let mut a = 0;
            while r >= weights[a] {
                r -= weights[a];
                a += 1;
            }
            items.push((dist.atoms()[a].x, dist.atoms()[a].y));
        }
        let h = learner.respond(&Sample::new(items))?;
        Ok(true_risk(dist, &h) <= bound)
    };
    let count = || -> Result<u64> {
        (0..trials).into_par_iter().map(|t| run(t).map(u64::from)).try_reduce(|| 0, |a, b| Ok(a + b))
    };
    let successes = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Resource(e.to_string()))?
            .install(count)?,
        None => count()?,
    };
    let interval = wilson_interval(successes, trials, WILSON_Z);
    let target = 1.0 - 0.5f64.powi(j as i32);
    let verdict = if interval.0 > target {
        Verdict::Holds
    } else if interval.1 <= target {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    Ok(McVerdict { verdict, successes, trials, interval })
}

/// Evidence that a learner is not a PAC learner for `C` with range in `H`.
#[derive(Clone, Debug)]
pub enum Evidence {
    /// `A(sample)` lies in the cylinder of a word excluded from `H`.
    OutsideRange { sample: Sample, hypothesis: Hypothesis, excluded: Word },
    /// The failure mass at `n ≥ m⟨i,j⟩` exceeds `2^{-j}`, measured against
    /// an upper approximation of `inf_C L_D`.
    PacFailure { dist: Distribution, i: u64, j: u64, n: usize, failure: Rational, inf_upper: Rational },
}

/// Exact sample enumeration per candidate is skipped above this size.
const REFUTE_SAMPLE_CAP: u64 = 20_000;
/// Members consulted for the upper approximation of the infimum.
const REFUTE_MEMBERS: u64 = 64;

/// Sample number `s`: the finite sequence coded by `s`, each entry `z`
/// read as the labeled point `(z / 2, z mod 2)`.
pub fn sample_at(s: u64) -> Sample {
    Sample::new(decode_sequence(s).into_iter().map(|z| ((z / 2) as Point, z % 2 == 1)).collect())
}

/// Distribution number `c`, or `None` when the code names no distribution.
/// The support is the set of atoms `(z / 2, z mod 2)` for the bits `z` of
/// `a + 1`, the masses a composition of `2^e` chosen by `r`, where
/// `c = ⟨a, ⟨e, r⟩⟩`.
pub fn distribution_at(c: u64) -> Option<Distribution> {
    let (a, rest) = cantor_unpair(c);
    let (e, r) = cantor_unpair(rest);
    let bits = a.checked_add(1)?;
    let support: Vec<u64> = (0..64).filter(|z| (bits >> z) & 1 == 1).collect();
    let s = support.len();
    if e > 8 || (1u64 << e) < s as u64 {
        return None;
    }
    let total = 1usize << e;
    let count = combinations(total - 1, s - 1).count() as u64;
    let cuts = combinations(total - 1, s - 1).nth((r % count) as usize)?;
    let mut parts = Vec::with_capacity(s);
    let mut prev = 0;
    for c in cuts.iter().map(|c| c + 1).chain(std::iter::once(total)) {
        parts.push(c - prev);
        prev = c;
    }
    let atoms = support
        .iter()
        .zip(parts)
        .map(|(&z, part)| Atom {
            x: (z / 2) as Point,
            y: z % 2 == 1,
            p: Rational::new(BigInt::from(part), BigInt::from(total)),
        })
        .collect();
    Distribution::new(atoms).ok()
}

/// Dovetails two searches for `budget` steps: even steps test sample
/// `t/2` against the first `t/2 + 1` exclusions of `H`, odd steps test PAC
/// candidate `t/2 = ⟨⟨⟨i,j⟩, r⟩, c⟩` with `n = m⟨i,j⟩ + r` on
/// distribution `c`.
pub fn refute_learner(
    c_pos: &dyn PositiveClass,
    h_neg: &dyn NegativeClass,
    learner: &Learner,
    m: &SampleComplexity,
    budget: u64,
) -> Result<Option<Evidence>> {
    let mut exclusions: Vec<Word> = Vec::new();
    let mut read = 0u64;
    for t in 0..budget {
        let idx = t / 2;
        if t % 2 == 0 {
            while read <= idx {
                if let Exclusion::Word(w) = h_neg.excluded(read) {
                    exclusions.push(w);
                }
                read += 1;
            }
            let sample = sample_at(idx);
            let h = learner.respond(&sample)?;
            if let Some(e) = exclusions.iter().find(|e| h.prefix(e.len()) == **e) {
                return Ok(Some(Evidence::OutsideRange { sample, hypothesis: h, excluded: e.clone() }));
            }
        } else if let Some(ev) = pac_candidate(c_pos, learner, m, idx)? {
            return Ok(Some(ev));
        }
    }
    Ok(None)
}

fn pac_candidate(
    c_pos: &dyn PositiveClass,
    learner: &Learner,
    m: &SampleComplexity,
    idx: u64,
) -> Result<Option<Evidence>> {
    let (a, c) = cantor_unpair(idx);
    let (ij, r) = cantor_unpair(a);
    let (i, j) = cantor_unpair(ij);
    if i > 64 || j > 64 {
        return Ok(None);
    }
    let Some(dist) = distribution_at(c) else {
        return Ok(None);
    };
    let z = cantor_pair(i, j)?;
    let Some(n) = m.at(z).checked_add(r).and_then(|n| usize::try_from(n).ok()) else {
        return Ok(None);
    };
    let space = SampleSpace::new(dist.atoms().len(), n, learner.is_symmetric());
    if space.size() > BigUint::from(REFUTE_SAMPLE_CAP) {
        return Ok(None);
    }
    let inf_upper = inf_risk_stream(c_pos, &dist, REFUTE_MEMBERS - 1);
    let bound = &inf_upper + inverse_power_of_two(i);
    let success = success_mass(learner, &dist, n, &bound, REFUTE_SAMPLE_CAP)?;
    let failure = Rational::one() - success;
    if failure > inverse_power_of_two(j) {
        return Ok(Some(Evidence::PacFailure { dist, i, j, n, failure, inf_upper }));
    }
    Ok(None)
}

/// Recomputes a piece of evidence from scratch.
pub fn verify_evidence(
    c_pos: &dyn PositiveClass,
    learner: &Learner,
    m: &SampleComplexity,
    ev: &Evidence,
) -> Result<bool> {
    Ok(match ev {
        Evidence::OutsideRange { sample, excluded, .. } => learner.respond(sample)?.prefix(excluded.len()) == *excluded,
        Evidence::PacFailure { dist, i, j, n, .. } => {
            let z = cantor_pair(*i, *j)?;
            if (*n as u64) < m.at(z) {
                return Ok(false);
            }
            let inf_upper = inf_risk_stream(c_pos, dist, REFUTE_MEMBERS - 1);
            let bound = inf_upper + inverse_power_of_two(*i);
            let failure = Rational::one() - success_mass(learner, dist, *n, &bound, DEFAULT_EXACT_BUDGET)?;
            failure > inverse_power_of_two(*j)
        }
    })
}

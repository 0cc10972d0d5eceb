//! SORT′ ≤_sW VCdim with negative information, by the open-paths
//! bookkeeping.
//!
//! Every member of the emitted class is 0 outside a set of *open*
//! coordinates, where it is free. Each zero `k` of the current stream
//! `p_n` gets its own open coordinate; when `p_n(k)` turns to 1 the
//! coordinate is closed, and one fresh coordinate is closed per round.
//! Coordinates below `frontier` have been handled: each is open or closed,
//! and a coordinate is opened only when it is fresh, so nothing that was
//! excluded is ever reopened. In the limit the open coordinates are in
//! bijection with the zeros of `lim p_n`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{ConvergingBits, Reduction, TameRealizer};
use crate::bits::{BitStream, Word};
use crate::class::{words_at_depth, Exclusion, NegativeClass, NegativePrefixClass};
use crate::conat::ConatName;
use crate::error::{Error, Result};
use crate::vcdim::vcdim_of_words;

#[derive(Clone, Debug, Default)]
struct State {
    rounds: usize,
    frontier: u64,
    /// open coordinate ↦ the zero position it tracks
    open: BTreeMap<u64, u64>,
    tracked: BTreeMap<u64, u64>,
    emitted: Vec<Word>,
    /// `emitted.len()` after each round
    round_ends: Vec<usize>,
}

impl State {
    fn round(&mut self, input: &ConvergingBits) {
        let n = self.frontier;
        let p = input.stage(n as usize);
        let mut closing = Vec::new();
        for k in 0..=n {
            let zero = !p.bit(k as usize);
            match (zero, self.tracked.get(&k).copied()) {
                (true, None) => {
                    let i = self.frontier;
                    self.open.insert(i, k);
                    self.tracked.insert(k, i);
                    self.frontier += 1;
                }
                (false, Some(i)) => {
                    self.open.remove(&i);
                    self.tracked.remove(&k);
                    closing.push(i);
                }
                _ => {}
            }
        }
        closing.push(self.frontier);
        self.frontier += 1;
        for i in closing {
            self.close(i);
        }
        self.rounds += 1;
        self.round_ends.push(self.emitted.len());
    }

    /// The minimal words with a 1 at the closed coordinate `i`: zeros at
    /// the closed coordinates below `i`, anything at the open ones.
    fn close(&mut self, i: u64) {
        let free: Vec<u64> = self.open.range(..i).map(|(&j, _)| j).collect();
        for labels in 0..1u64 << free.len() {
            let mut bits = vec![false; i as usize + 1];
            for (t, &j) in free.iter().enumerate() {
                bits[j as usize] = (labels >> t) & 1 == 1;
            }
            bits[i as usize] = true;
            self.emitted.push(Word::from_bits(bits));
        }
    }
}

/// The negative information emitted by the bookkeeping, computed lazily.
pub struct OpenPaths {
    input: ConvergingBits,
    state: Mutex<State>,
}

impl OpenPaths {
    pub fn new(input: ConvergingBits) -> Self {
        OpenPaths { input, state: Mutex::new(State::default()) }
    }

    fn with_rounds<T>(&self, rounds: usize, f: impl FnOnce(&State) -> T) -> T {
        let mut s = self.state.lock().unwrap();
        while s.rounds < rounds {
            s.round(&self.input);
        }
        f(&s)
    }

    /// Open `(coordinate, zero position)` pairs after `rounds` rounds.
    pub fn open_after(&self, rounds: usize) -> Vec<(u64, u64)> {
        self.with_rounds(rounds, |s| s.open.iter().map(|(&i, &k)| (i, k)).collect())
    }

    /// The handled coordinates after `rounds` rounds.
    pub fn frontier_after(&self, rounds: usize) -> u64 {
        self.with_rounds(rounds, |s| s.frontier)
    }

    /// Number of exclusions emitted in the first `rounds` rounds.
    pub fn emitted_after(&self, rounds: usize) -> u64 {
        self.with_rounds(rounds, |s| s.round_ends.get(rounds.wrapping_sub(1)).copied().unwrap_or(0) as u64)
    }
}

impl NegativeClass for OpenPaths {
    fn excluded(&self, i: u64) -> Exclusion {
        let mut s = self.state.lock().unwrap();
        // every round closes at least one coordinate
        while s.emitted.len() as u64 <= i {
            s.round(&self.input);
        }
        Exclusion::Word(s.emitted[i as usize].clone())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SortJumpToVcdimNeg;

impl Reduction for SortJumpToVcdimNeg {
    type Input = ConvergingBits;
    type Instance = Arc<dyn NegativeClass>;
    type Answer = ConatName;
    type Output = Word;

    fn name(&self) -> &'static str {
        "sortjump_to_vcdim_neg"
    }

    fn forward(&self, input: &ConvergingBits) -> Arc<dyn NegativeClass> {
        Arc::new(OpenPaths::new(input.clone()))
    }

    fn backward(&self, answer: &ConatName, budget: usize) -> Result<Word> {
        answer.name_prefix(budget)
    }
}

/// After the first `upto` exclusions, words of length `depth` already show
/// the whole class's VC dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenPathsCertificate {
    pub upto: u64,
    pub depth: usize,
}

/// Certificate for an instance whose limit has finitely many zeros: the
/// bookkeeping is final after the first round that reads a stream index
/// past both the stabilization index and the last zero of the limit.
pub fn open_paths_certificate(input: &ConvergingBits) -> Result<OpenPathsCertificate> {
    let limit = &input.limit;
    if limit.zero_count().is_none() {
        return Err(Error::Domain("the limit has infinitely many zeros".into()));
    }
    let last_zero = (0..limit.prefix.len()).rev().find(|&i| !limit.bit(i)).unwrap_or(0);
    let need = input.stable_from().max(last_zero) as u64;
    let paths = OpenPaths::new(input.clone());
    let mut rounds = 0;
    // the round starting at frontier f reads p_f
    while paths.frontier_after(rounds) < need {
        rounds += 1;
    }
    rounds += 1;
    Ok(OpenPathsCertificate { upto: paths.emitted_after(rounds), depth: paths.frontier_after(rounds) as usize })
}

/// VCdim with negative information, by brute force over the words of the
/// certified depth that survive the certified exclusions.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameVcdimNegative;

impl TameRealizer<Arc<dyn NegativeClass>> for TameVcdimNegative {
    type Answer = ConatName;
    type Certificate = OpenPathsCertificate;

    fn problem(&self) -> &'static str {
        "VCdim-"
    }

    fn solve(&self, class: &Arc<dyn NegativeClass>, cert: &OpenPathsCertificate) -> Result<ConatName> {
        let approx = NegativePrefixClass::from_presentation(&**class, cert.upto);
        let words = words_at_depth(&approx, cert.depth);
        Ok(ConatName::exact(vcdim_of_words(&words, cert.depth)?))
    }
}

//! A computable sequence of hypotheses with an arity-2 witness whose limit
//! encodes the enumerated set.
//!
//! Stage `i` writes `u_i = v_{i,0} 0^{k_{i,0}} v_{i,1} ··· v_{i,m_i}` with
//! `v_{i,j} = 10` when `j` has been enumerated and `01` otherwise. When a
//! number `ι < m_i` shows up late, everything after block `ι-1` is
//! overwritten by zeros up to `|u_i|` and the blocks from `ι` on move past
//! `|u_i|`. Below `|u_i|` bits therefore only ever drop from 1 to 0.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits::{Point, Word};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::learning::Witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixStage {
    /// `R_i`.
    pub set: BTreeSet<u64>,
    /// `m_i = max R_i`.
    pub max: u64,
    /// `k_{i,j}` for `j < m_i`.
    pub pads: Vec<u64>,
    /// `u_i`.
    pub word: Word,
}

impl AppendixStage {
    fn new(set: BTreeSet<u64>, pads: Vec<u64>) -> Self {
        let max = *set.last().expect("nonempty");
        let mut bits = Vec::new();
        for j in 0..=max {
            let hit = set.contains(&j);
            bits.extend([hit, !hit]);
            if j < max {
                bits.extend(std::iter::repeat_n(false, pads[j as usize] as usize));
            }
        }
        AppendixStage { set, max, pads, word: Word::from_bits(bits) }
    }

    /// Length of `v_0 0^{k_0} ··· v_{j-1} 0^{k_{j-1}} v_j`.
    fn through_block(&self, j: u64) -> u64 {
        2 * (j + 1) + self.pads[..j as usize].iter().sum::<u64>()
    }
}

#[derive(Clone, Debug)]
pub struct AppendixConstruction {
    stages: Vec<AppendixStage>,
}

/// Runs the construction on an enumeration `r` of numbers `≥ 1`; stage `i`
/// has read `r(0..=i)`.
pub fn appendix_construction(r: &[u64]) -> Result<AppendixConstruction> {
    if r.is_empty() {
        return Err(Error::Precondition("the enumeration is empty".into()));
    }
    if let Some(i) = r.iter().position(|&x| x == 0) {
        return Err(Error::Precondition(format!("r({i}) = 0; the construction needs values ≥ 1")));
    }
    let first = AppendixStage::new(BTreeSet::from([r[0]]), vec![0; r[0] as usize]);
    let mut stages = vec![first];
    for &iota in &r[1..] {
        let prev = stages.last().unwrap();
        let next = if prev.set.contains(&iota) {
            prev.clone()
        } else {
            let mut set = prev.set.clone();
            set.insert(iota);
            let mut pads = prev.pads.clone();
            if iota > prev.max {
                pads.resize(iota as usize, 0);
            } else {
                let len = prev.word.len() as u64;
                for p in &mut pads[iota as usize..] {
                    *p = 0;
                }
                // block ι-1 is shared; pad it out to |u_i|
                let shared = prev.through_block(iota - 1);
                pads[iota as usize - 1] = len - shared;
            }
            AppendixStage::new(set, pads)
        };
        stages.push(next);
    }
    Ok(AppendixConstruction { stages })
}

impl AppendixConstruction {
    pub fn stages(&self) -> &[AppendixStage] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// `h_i = u_i · 0^ω`.
    pub fn hypothesis(&self, i: usize) -> Hypothesis {
        Hypothesis::new(self.stages[i].word.clone(), false)
    }

    pub fn hypotheses(&self) -> Vec<Hypothesis> {
        (0..self.stages.len()).map(|i| self.hypothesis(i)).collect()
    }

    /// The witness on pairs `n < k`: `(0,1)` if some `h_i` with `i ≤ m`
    /// shows `(1,1)`, where `m` is the first stage with `|u_m| > k`, and
    /// `(1,1)` otherwise. Pairs beyond the last stage's word exhaust the
    /// construction's budget.
    pub fn witness(&self) -> Witness {
        let words: Arc<Vec<Word>> = Arc::new(self.stages.iter().map(|s| s.word.clone()).collect());
        Witness::new(2, "appendix witness", move |t: &[Point]| {
            let (n, k) = (t[0], t[1]);
            let bit = |w: &Word, x: Point| (x as usize) < w.len() && w[x as usize];
            let m = words
                .iter()
                .position(|w| (w.len() as Point) > k)
                .ok_or_else(|| Error::Budget(format!("no stage with |u| > {k}")))?;
            let both = words[..=m].iter().any(|w| bit(w, n) && bit(w, k));
            Ok(Word::from_bits(vec![!both, true]))
        })
    }

    /// Checks the stage-to-stage invariants: even pads, `|u_i|`
    /// nondecreasing, below `|u_i|` only drops from 1 to 0 and a drop
    /// clears everything after it, and new 1s only from `|u_i|` on.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |i: usize, what: &str| Err(Error::Domain(format!("stage {i}: {what}")));
        for (i, s) in self.stages.iter().enumerate() {
            if s.pads.iter().any(|k| k % 2 == 1) {
                return fail(i, "odd pad");
            }
        }
        for (i, pair) in self.stages.windows(2).enumerate() {
            let (a, b) = (&pair[0].word, &pair[1].word);
            if b.len() < a.len() {
                return fail(i, "word got shorter");
            }
            let drop = (0..a.len()).find(|&x| a[x] && !b[x]);
            if (0..a.len()).any(|x| !a[x] && b[x]) {
                return fail(i, "a 0 turned into 1 below |u_i|");
            }
            if let Some(x) = drop {
                if (x..a.len()).any(|y| b[y]) {
                    return fail(i, "a drop left later 1s below |u_i|");
                }
            }
        }
        Ok(())
    }
}

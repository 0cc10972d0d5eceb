//! Finite-stage conversions between positive and negative information.

use std::collections::{BTreeSet, HashSet};

use super::trie::CoverTrie;
use super::{exclusions_upto, words_at_depth, NegativeClass, NegativePrefixClass, PositiveClass};
use crate::bits::Word;
use crate::hypothesis::EventuallyConstant;

/// What a conversion has produced after finitely many steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Snapshot {
    Negative(Vec<Word>),
    Positive(Vec<EventuallyConstant>),
}

impl Snapshot {
    /// The length-`depth` prefixes of the snapshot's class.
    pub fn members_at(&self, depth: usize) -> BTreeSet<Word> {
        match self {
            Snapshot::Positive(ms) => {
                ms.iter().map(|m| Word::from_bits((0..depth).map(|x| m.query(x as u128)).collect())).collect()
            }
            Snapshot::Negative(ws) => {
                let class = NegativePrefixClass::new(CoverTrie::from_words(ws));
                words_at_depth(&class, depth).into_iter().collect()
            }
        }
    }
}

/// Minimal words of length at most `stage` that no member among the first
/// `stage + 1` extends.
pub fn positive_to_negative_stage(class: &dyn PositiveClass, stage: u64) -> Snapshot {
    let depth = stage as usize;
    let mut prefixes: HashSet<Word> = HashSet::new();
    for i in 0..=stage {
        let m = class.member(i);
        for n in 0..=depth {
            prefixes.insert(m.prefix(n));
        }
    }
    let mut out: Vec<Word> = prefixes
        .iter()
        .filter(|p| p.len() < depth)
        .flat_map(|p| [p.child(false), p.child(true)])
        .filter(|c| !prefixes.contains(c))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Snapshot::Negative(out)
}

/// Length-`stage` words that survive the first `stage + 1` exclusions,
/// each continued by zeros.
pub fn negative_to_positive_stage(class: &dyn NegativeClass, stage: u64) -> Snapshot {
    let approx = NegativePrefixClass::new(exclusions_upto(class, stage + 1));
    Snapshot::Positive(
        words_at_depth(&approx, stage as usize).into_iter().map(|w| EventuallyConstant::new(w, false)).collect(),
    )
}

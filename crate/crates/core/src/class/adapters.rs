//! Presentations built from other presentations or from closures.

use std::sync::Arc;

use super::trie::CoverTrie;
use super::{member_extract, Exclusion, FullClass, NegativeClass, PositiveClass};
use crate::bits::{word_at, Word};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::pairing::cantor_unpair;

/// Positive information read off full information: member `i` is the
/// leftmost member above the `i`-th word, or above the root when that word
/// is not extendable.
pub struct PositiveOf {
    class: Arc<dyn FullClass>,
}

impl PositiveOf {
    pub fn new(class: Arc<dyn FullClass>) -> Self {
        PositiveOf { class }
    }
}

impl PositiveClass for PositiveOf {
    fn member(&self, i: u64) -> Hypothesis {
        let w = word_at(i);
        let start: &[bool] = if self.class.tree_query(&w) { &w } else { &[] };
        member_extract(&self.class, start).expect("positive presentation of a nonempty class")
    }

    fn refutation_horizon(&self, budget: usize) -> u64 {
        // every word of length at most `budget`
        (1u64 << (budget + 1).min(63)) - 1
    }
}

/// Negative information read off full information: entry `i` is the
/// `i`-th word when it is dead but its parent is not.
pub struct NegativeOf {
    class: Arc<dyn FullClass>,
}

impl NegativeOf {
    pub fn new(class: Arc<dyn FullClass>) -> Self {
        NegativeOf { class }
    }
}

impl NegativeClass for NegativeOf {
    fn excluded(&self, i: u64) -> Exclusion {
        let w = word_at(i);
        let minimal = !self.class.tree_query(&w) && (w.is_empty() || self.class.tree_query(&w[..w.len() - 1]));
        if minimal {
            Exclusion::Word(w)
        } else {
            Exclusion::Pause
        }
    }
}

/// A finite list of members, enumerated cyclically.
pub struct ListPositive {
    members: Vec<Hypothesis>,
}

impl ListPositive {
    pub fn new(members: Vec<Hypothesis>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Domain("a positive presentation needs at least one member".into()));
        }
        Ok(ListPositive { members })
    }

    pub fn members(&self) -> &[Hypothesis] {
        &self.members
    }
}

impl PositiveClass for ListPositive {
    fn member(&self, i: u64) -> Hypothesis {
        self.members[(i % self.members.len() as u64) as usize].clone()
    }

    fn period(&self) -> Option<u64> {
        Some(self.members.len() as u64)
    }
}

type MemberFn = Arc<dyn Fn(u64) -> Hypothesis + Send + Sync>;

pub struct FnPositive {
    f: MemberFn,
    period: Option<u64>,
}

impl FnPositive {
    pub fn new(f: impl Fn(u64) -> Hypothesis + Send + Sync + 'static, period: Option<u64>) -> Self {
        FnPositive { f: Arc::new(f), period }
    }
}

impl PositiveClass for FnPositive {
    fn member(&self, i: u64) -> Hypothesis {
        (self.f)(i)
    }

    fn period(&self) -> Option<u64> {
        self.period
    }
}

/// Finitely many exclusions followed by pauses.
pub struct ListNegative {
    words: Vec<Word>,
}

impl ListNegative {
    pub fn new(words: Vec<Word>) -> Self {
        ListNegative { words }
    }
}

impl NegativeClass for ListNegative {
    fn excluded(&self, i: u64) -> Exclusion {
        match self.words.get(i as usize) {
            Some(w) => Exclusion::Word(w.clone()),
            None => Exclusion::Pause,
        }
    }
}

pub struct FnNegative {
    f: Arc<dyn Fn(u64) -> Exclusion + Send + Sync>,
}

impl FnNegative {
    pub fn new(f: impl Fn(u64) -> Exclusion + Send + Sync + 'static) -> Self {
        FnNegative { f: Arc::new(f) }
    }
}

impl NegativeClass for FnNegative {
    fn excluded(&self, i: u64) -> Exclusion {
        (self.f)(i)
    }
}

type StagedTree = Arc<dyn Fn(u64, &[bool]) -> bool + Send + Sync>;

/// Negative information for a class given by decidable approximations
/// `alive(s, ·)` that shrink with the stage `s`. Entry `⟨n,s⟩` is the
/// `n`-th word when it is dead at stage `s` but its parent is not.
pub struct ShrinkingNegative {
    alive: StagedTree,
}

impl ShrinkingNegative {
    pub fn new(alive: impl Fn(u64, &[bool]) -> bool + Send + Sync + 'static) -> Self {
        ShrinkingNegative { alive: Arc::new(alive) }
    }
}

impl NegativeClass for ShrinkingNegative {
    fn excluded(&self, i: u64) -> Exclusion {
        let (n, s) = cantor_unpair(i);
        let w = word_at(n);
        if !(self.alive)(s, &w) && (w.is_empty() || (self.alive)(s, &w[..w.len() - 1])) {
            Exclusion::Word(w)
        } else {
            Exclusion::Pause
        }
    }
}

type TreePredicate = Arc<dyn Fn(&[bool]) -> bool + Send + Sync>;

/// Full information from a closure, with optional depth certificates.
pub struct FnFull {
    f: TreePredicate,
    description: String,
    determination: Option<usize>,
    settle: Option<usize>,
}

impl FnFull {
    pub fn new(description: impl Into<String>, f: impl Fn(&[bool]) -> bool + Send + Sync + 'static) -> Self {
        FnFull { f: Arc::new(f), description: description.into(), determination: None, settle: None }
    }

    pub fn with_depths(mut self, determination: Option<usize>, settle: Option<usize>) -> Self {
        self.determination = determination;
        self.settle = settle;
        self
    }
}

impl FullClass for FnFull {
    fn tree_query(&self, w: &[bool]) -> bool {
        (self.f)(w)
    }

    fn determination_depth(&self) -> Option<usize> {
        self.determination
    }

    fn settle_depth(&self) -> Option<usize> {
        self.settle
    }

    fn describe(&self) -> String {
        self.description.clone()
    }
}

/// The closed set left after removing finitely many cylinders: the
/// stage-wise over-approximation of a negatively presented class.
pub struct NegativePrefixClass {
    trie: CoverTrie,
}

impl NegativePrefixClass {
    pub fn new(trie: CoverTrie) -> Self {
        NegativePrefixClass { trie }
    }

    pub fn from_presentation(class: &dyn NegativeClass, upto: u64) -> Self {
        NegativePrefixClass { trie: super::exclusions_upto(class, upto) }
    }
}

impl FullClass for NegativePrefixClass {
    fn tree_query(&self, w: &[bool]) -> bool {
        !self.trie.covered(w)
    }

    fn settle_depth(&self) -> Option<usize> {
        Some(self.trie.max_len())
    }

    fn describe(&self) -> String {
        format!("complement of {} cylinders", self.trie.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::ClassGenerator;

    #[test]
    fn positive_of_full() {
        let g: Arc<dyn FullClass> = Arc::new(ClassGenerator::explicit_negative(vec!["1".parse().unwrap()]));
        let p = PositiveOf::new(g);
        assert_eq!(p.member(0).to_string(), "·0^ω");
        // word 4 is "01"
        assert_eq!(p.member(4).to_string(), "01·0^ω");
        // word 2 is "1", dead, so the root's leftmost member
        assert_eq!(p.member(2).to_string(), "·0^ω");
    }

    #[test]
    fn negative_of_full_lists_minimal_dead_words() {
        let g: Arc<dyn FullClass> = Arc::new(ClassGenerator::templates(&["0*"], false).unwrap());
        let n = NegativeOf::new(g);
        let dead: Vec<String> = (0..15)
            .filter_map(|i| match n.excluded(i) {
                Exclusion::Word(w) => Some(w.to_string()),
                Exclusion::Pause => None,
            })
            .collect();
        assert_eq!(dead, ["1", "001", "011"]);
    }

    #[test]
    fn shrinking_negative() {
        // {0^ω} ∪ {1 0^ω until stage 3}
        let n = ShrinkingNegative::new(|s, w: &[bool]| {
            let zero = w.iter().all(|&b| !b);
            let one = w.first() == Some(&true) && w[1..].iter().all(|&b| !b) && s < 3;
            zero || one
        });
        let trie = crate::class::exclusions_upto(&n, 200);
        assert!(trie.covered(&[true]));
        assert!(!trie.covered(&[false, false]));
    }
}

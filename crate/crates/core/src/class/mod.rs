//! Classes of hypotheses and their three presentations: full information
//! (a decidable pruned tree), positive information (an enumeration of
//! members) and negative information (an enumeration of excluded cylinders).

mod adapters;
mod convert;
mod generator;
mod trie;

use std::sync::{Arc, Mutex};

pub use adapters::{
    FnFull, FnNegative, FnPositive, ListNegative, ListPositive, NegativeOf, NegativePrefixClass, PositiveOf,
    ShrinkingNegative,
};
pub use convert::{negative_to_positive_stage, positive_to_negative_stage, Snapshot};
pub use generator::{ClassFile, ClassGenerator, Sym, TailProfile};
pub use trie::CoverTrie;

use crate::bits::{Point, Word};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;

/// Full information: `tree_query(w)` holds iff some member extends `w`.
pub trait FullClass: Send + Sync {
    fn tree_query(&self, w: &[bool]) -> bool;

    /// A depth `D` such that every extendable word of length at least `D`
    /// has exactly one member above it, that member is constant from
    /// position `D - 1` on, and the VC dimension is already attained by
    /// the length-`D` prefixes.
    fn determination_depth(&self) -> Option<usize> {
        None
    }

    /// A depth `D` such that the leftmost member above any extendable word
    /// `w` with `|w| ≥ D` is `w · b^ω` for a single bit `b`.
    fn settle_depth(&self) -> Option<usize> {
        None
    }

    fn describe(&self) -> String {
        "class".into()
    }
}

/// Positive information: an enumeration of (not necessarily distinct)
/// members. The class is the closure of the enumerated set.
pub trait PositiveClass: Send + Sync {
    fn member(&self, i: u64) -> Hypothesis;

    /// Members repeat with this period, so the first `period` of them are
    /// the whole enumerated set.
    fn period(&self) -> Option<u64> {
        None
    }

    /// How many members a refutation search with the given point budget
    /// inspects.
    fn refutation_horizon(&self, budget: usize) -> u64 {
        match self.period() {
            Some(p) => p,
            None => budget as u64,
        }
    }
}

/// One entry of a negative enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exclusion {
    Word(Word),
    /// Nothing new at this step.
    Pause,
}

/// Negative information: the class is the complement of the union of the
/// enumerated cylinders.
pub trait NegativeClass: Send + Sync {
    fn excluded(&self, i: u64) -> Exclusion;
}

/// Exclusions with index below `upto`, as a cover trie.
pub fn exclusions_upto(class: &dyn NegativeClass, upto: u64) -> CoverTrie {
    let mut t = CoverTrie::new();
    for i in 0..upto {
        if let Exclusion::Word(w) = class.excluded(i) {
            t.insert(&w);
        }
    }
    t
}

/// The exclusions at the listed indices, as a cover trie.
pub fn exclusions_at(class: &dyn NegativeClass, indices: impl IntoIterator<Item = u64>) -> CoverTrie {
    let mut t = CoverTrie::new();
    for i in indices {
        if let Exclusion::Word(w) = class.excluded(i) {
            t.insert(&w);
        }
    }
    t
}

/// All extendable words of length `depth`, in lexicographic order.
pub fn words_at_depth(class: &dyn FullClass, depth: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut w = Word::new();
    collect_words(class, depth, &mut w, &mut out);
    out
}

fn collect_words(class: &dyn FullClass, depth: usize, w: &mut Word, out: &mut Vec<Word>) {
    if !class.tree_query(w) {
        return;
    }
    if w.len() == depth {
        out.push(w.clone());
        return;
    }
    for b in [false, true] {
        w.push(b);
        collect_words(class, depth, w, out);
        w.truncate(w.len() - 1);
    }
}

/// The leftmost member extending `prefix`.
pub fn member_extract(class: &Arc<dyn FullClass>, prefix: &[bool]) -> Result<Hypothesis> {
    if !class.tree_query(prefix) {
        return Err(Error::Precondition(format!("{} is not extendable in {}", Word::from(prefix), class.describe())));
    }
    if let Some(d) = class.settle_depth() {
        let mut w = Word::from(prefix);
        while w.len() < d {
            let b = !class.tree_query(&w.child(false));
            w.push(b);
        }
        let b = !class.tree_query(&w.child(false));
        return Ok(Hypothesis::new(w, b));
    }
    let class = Arc::clone(class);
    let path = Arc::new(Mutex::new(Word::from(prefix)));
    let description = format!("leftmost member of {} above {}", class.describe(), Word::from(prefix));
    Ok(Hypothesis::program(description, move |x: Point| {
        let mut p = path.lock().unwrap();
        while (p.len() as Point) <= x {
            let b = !class.tree_query(&p.child(false));
            p.push(b);
        }
        p[x as usize]
    }))
}

/// Any of the three presentations.
#[derive(Clone)]
pub enum Presentation {
    Full(Arc<dyn FullClass>),
    Positive(Arc<dyn PositiveClass>),
    Negative(Arc<dyn NegativeClass>),
}

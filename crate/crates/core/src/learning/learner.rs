//! Learners and empirical risk minimizers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::{Point, Word};
use crate::class::{member_extract, words_at_depth, FullClass, PositiveClass};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::risk::Sample;

type Respond = Arc<dyn Fn(&Sample) -> Result<Hypothesis> + Send + Sync>;

/// A total map from finite samples to hypotheses.
#[derive(Clone)]
pub struct Learner {
    f: Respond,
    description: String,
    symmetric: bool,
}

impl Learner {
    pub fn new(
        description: impl Into<String>,
        f: impl Fn(&Sample) -> Result<Hypothesis> + Send + Sync + 'static,
    ) -> Self {
        Learner { f: Arc::new(f), description: description.into(), symmetric: false }
    }

    /// Declares that the output depends only on the multiset of labeled
    /// points, which lets exhaustive searches enumerate multisets.
    pub fn symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn constant(h: Hypothesis) -> Self {
        Learner::new(format!("const {h}"), move |_| Ok(h.clone())).symmetric()
    }

    pub fn respond(&self, sample: &Sample) -> Result<Hypothesis> {
        (self.f)(sample)
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for Learner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Learner({})", self.description)
    }
}

/// Mistake counts per point: (labels 0, labels 1).
fn label_counts(sample: &Sample) -> BTreeMap<Point, (usize, usize)> {
    let mut m: BTreeMap<Point, (usize, usize)> = BTreeMap::new();
    for &(x, y) in sample.iter() {
        let e = m.entry(x).or_default();
        if y {
            e.1 += 1;
        } else {
            e.0 += 1;
        }
    }
    m
}

const MAX_ERM_DEPTH: usize = 1 << 16;

/// Empirical risk minimization with full information: among the words of
/// length `max(S) + 1` that extend to members, the lexicographically first
/// one with fewest mistakes, completed to its leftmost member.
pub fn erm_full(class: Arc<dyn FullClass>) -> Result<Learner> {
    if !class.tree_query(&[]) {
        return Err(Error::Domain("ERM over the empty class".into()));
    }
    let description = format!("erm over {}", class.describe());
    Ok(Learner::new(description, move |sample| erm_full_respond(&class, sample)).symmetric())
}

fn erm_full_respond(class: &Arc<dyn FullClass>, sample: &Sample) -> Result<Hypothesis> {
    let Some(m) = sample.max_point() else {
        return member_extract(class, &[]);
    };
    let counts = label_counts(sample);
    let depth = usize::try_from(m)
        .ok()
        .and_then(|m| m.checked_add(1))
        .filter(|&d| d <= MAX_ERM_DEPTH)
        .ok_or_else(|| Error::Resource(format!("ERM to depth {m}")))?;
    if let Some(d) = class.determination_depth().filter(|&d| d <= depth) {
        // one member above each extendable word of length d
        let mut best: Option<(usize, Hypothesis)> = None;
        for w in words_at_depth(&**class, d) {
            let h = member_extract(class, &w)?;
            let cost = mistakes(&counts, &h);
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, h));
            }
        }
        return Ok(best.expect("nonempty class").1);
    }
    let mut best: Option<(usize, Word)> = None;
    let mut w = Word::new();
    erm_search(&**class, &counts, depth, &mut w, 0, &mut best);
    member_extract(class, &best.expect("nonempty class").1)
}

fn mistakes(counts: &BTreeMap<Point, (usize, usize)>, h: &Hypothesis) -> usize {
    counts.iter().map(|(&x, &(c0, c1))| if h.query(x) { c0 } else { c1 }).sum()
}

fn erm_search(
    class: &dyn FullClass,
    counts: &BTreeMap<Point, (usize, usize)>,
    depth: usize,
    w: &mut Word,
    cost: usize,
    best: &mut Option<(usize, Word)>,
) {
    if best.as_ref().is_some_and(|(c, _)| cost >= *c) || !class.tree_query(w) {
        return;
    }
    if w.len() == depth {
        *best = Some((cost, w.clone()));
        return;
    }
    let here = counts.get(&(w.len() as Point)).copied().unwrap_or((0, 0));
    for b in [false, true] {
        let add = if b { here.0 } else { here.1 };
        w.push(b);
        erm_search(class, counts, depth, w, cost + add, best);
        w.truncate(w.len() - 1);
    }
}

/// ERM over the first `stage + 1` enumerated members; the first member
/// with fewest mistakes wins.
pub fn erm_positive_staged(class: &dyn PositiveClass, sample: &Sample, stage: u64) -> Hypothesis {
    let counts = label_counts(sample);
    let mut best: Option<(usize, Hypothesis)> = None;
    for i in 0..=stage {
        let h = class.member(i);
        let cost = mistakes(&counts, &h);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, h));
        }
    }
    best.expect("stage range is nonempty").1
}

/// The learner `S ↦ erm_positive_staged(C, S, stage)`.
pub fn erm_positive_learner(class: Arc<dyn PositiveClass>, stage: u64) -> Learner {
    Learner::new(format!("erm over members 0..={stage}"), move |s| Ok(erm_positive_staged(&*class, s, stage)))
        .symmetric()
}

/// Learners for the two factors of an interleaved class:
/// `A_i(S) = pr_{i+1} A({(2x+i, y) : (x, y) ∈ S})`.
pub fn split_learner(learner: &Learner) -> (Learner, Learner) {
    let make = |parity: usize| {
        let a = learner.clone();
        let l = Learner::new(format!("pr{}∘{}", parity + 1, learner.description()), move |s: &Sample| {
            let lifted = Sample::new(s.iter().map(|&(x, y)| (2 * x + parity as Point, y)).collect());
            Ok(a.respond(&lifted)?.project(parity))
        });
        if learner.is_symmetric() {
            l.symmetric()
        } else {
            l
        }
    };
    (make(0), make(1))
}

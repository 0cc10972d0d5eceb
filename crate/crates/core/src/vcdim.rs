//! Shattering and VC dimension for the three presentations.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bits::Word;
use crate::class::{words_at_depth, ClassGenerator, FullClass, PositiveClass};
use crate::conat::{ConatCertificate, ConatName};
use crate::error::{Error, Result};

/// Whether the extendable words of length `depth` realize every labeling
/// of `points`. With full information this is exact once
/// `depth > max(points)`.
pub fn shatters(class: &dyn FullClass, points: &[usize], depth: usize) -> Result<bool> {
    if let Some(&m) = points.iter().max() {
        if depth <= m {
            return Err(Error::Precondition(format!("depth {depth} does not exceed point {m}")));
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != points.len() {
        return Err(Error::Precondition("points must be distinct".into()));
    }
    Ok(shatters_sorted(class, &sorted))
}

fn shatters_sorted(class: &dyn FullClass, points: &[usize]) -> bool {
    let k = points.len();
    (0..1u64 << k).all(|labels| {
        let label_at = |i: usize| points.iter().position(|&p| p == i).map(|t| (labels >> (k - 1 - t)) & 1 == 1);
        let target = points.last().map_or(0, |&m| m + 1);
        realizable(class, &mut Word::new(), target, &label_at)
    })
}

fn realizable(class: &dyn FullClass, w: &mut Word, target: usize, label_at: &dyn Fn(usize) -> Option<bool>) -> bool {
    if !class.tree_query(w) {
        return false;
    }
    if w.len() == target {
        return true;
    }
    let choices: &[bool] = match label_at(w.len()) {
        Some(false) => &[false],
        Some(true) => &[true],
        None => &[false, true],
    };
    for &b in choices {
        w.push(b);
        let ok = realizable(class, w, target, label_at);
        w.truncate(w.len() - 1);
        if ok {
            return true;
        }
    }
    false
}

/// Largest `d` such that some `d`-set of coordinates below `depth` is
/// shattered by the given words (all of length `depth`).
pub fn vcdim_of_words(words: &[Word], depth: usize) -> Result<u64> {
    if words.is_empty() {
        return Err(Error::Domain("VC dimension of the empty class".into()));
    }
    let mut best = 0;
    for d in 1..=depth {
        if words.len() < 1 << d {
            break;
        }
        if !combinations(depth, d).any(|set| trace_count(words, &set) == 1 << d) {
            break;
        }
        best = d as u64;
    }
    Ok(best)
}

fn trace_count(words: &[Word], set: &[usize]) -> usize {
    words.iter().map(|w| set.iter().fold(0u64, |acc, &i| (acc << 1) | w[i] as u64)).collect::<HashSet<_>>().len()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// VC dimension of the class read at `depth` by listing every extendable
/// word and every coordinate set.
pub fn vcdim_bruteforce(class: &ClassGenerator, depth: usize) -> Result<u64> {
    if !class.is_exact() {
        return Err(Error::Precondition(format!("{class} is not determined by finite data at depth {depth}")));
    }
    if depth > 24 {
        return Err(Error::Resource(format!("brute force at depth {depth}")));
    }
    vcdim_of_words(&words_at_depth(class, depth), depth)
}

/// VC dimension of `{ h_n|_k · 0^ω : n ≤ k }`.
pub fn vcdim_truncated(class: &dyn PositiveClass, k: u64) -> u64 {
    let depth = k as usize;
    let words: Vec<Word> = (0..=k).map(|n| class.member(n).prefix(depth)).collect::<HashSet<_>>().into_iter().collect();
    let mut best = 0;
    for d in 1..=depth {
        let shattered = combinations(depth, d).any(|set| {
            (0..1u64 << d).all(|labels| {
                words.iter().any(|w| set.iter().enumerate().all(|(t, &i)| w[i] == ((labels >> (d - 1 - t)) & 1 == 1)))
            })
        });
        if !shattered {
            break;
        }
        best = d as u64;
    }
    best
}

/// Lower-bound stream for a fully presented class: entry `k` is the
/// largest size of a shattered subset of `{0..k-1}`.
pub fn vcdim_stream_full(class: Arc<dyn FullClass>) -> Result<ConatName> {
    if !class.tree_query(&[]) {
        return Err(Error::Domain("VC dimension of the empty class".into()));
    }
    let certificate = class
        .determination_depth()
        .map(|d| ConatCertificate::Finite { stage: d as u64, value: full_lower_bounds(&*class, d as u64)[d] });
    let memo = std::sync::Mutex::new(vec![0u64]);
    Ok(ConatName::new(
        move |k| {
            let mut m = memo.lock().unwrap();
            while m.len() as u64 <= k {
                let next = step_full(&*class, m.len() as u64, *m.last().unwrap());
                m.push(next);
            }
            m[k as usize]
        },
        certificate,
    ))
}

fn full_lower_bounds(class: &dyn FullClass, upto: u64) -> Vec<u64> {
    let mut v = vec![0u64];
    for k in 1..=upto {
        let next = step_full(class, k, *v.last().unwrap());
        v.push(next);
    }
    v
}

// A new shattered set at stage k must contain coordinate k-1, and one more
// coordinate raises the dimension by at most one.
fn step_full(class: &dyn FullClass, k: u64, prev: u64) -> u64 {
    let last = k as usize - 1;
    let grows = combinations(last, prev as usize).any(|mut set| {
        set.push(last);
        shatters_sorted(class, &set)
    });
    prev + grows as u64
}

/// Lower-bound stream for a positively presented class. `stable_from`
/// certifies the stage from which the truncations stop growing.
pub fn vcdim_stream_positive(class: Arc<dyn PositiveClass>, stable_from: Option<u64>) -> ConatName {
    let certificate = stable_from.map(|s| ConatCertificate::Finite { stage: s, value: vcdim_truncated(&*class, s) });
    ConatName::new(move |k| vcdim_truncated(&*class, k), certificate)
}

/// Stream for a generator, certified when the generator's members are
/// eventually constant.
pub fn vcdim_stream(class: &Arc<ClassGenerator>) -> Result<ConatName> {
    vcdim_stream_full(class.full())
}

/// Stage from which the positive stream of a generator is stable: all
/// members have been listed and the determination depth is reached.
pub fn positive_certificate(class: &Arc<ClassGenerator>) -> Result<Option<u64>> {
    let p = class.positive()?;
    Ok(match (p.period(), class.determination_depth()) {
        (Some(period), Some(d)) => Some((period - 1).max(d as u64)),
        _ => None,
    })
}

//! Tame realizers for the benchmark problems SORT, sup, max, C_ℕ, lim, LPO
//! and WKL.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{TameRealizer, SPOT_CHECK};
use crate::bits::{BitStream, FnNats, NatStream, PeriodicBits, Point, Word};
use crate::conat::{ConatCertificate, ConatName};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;

/// SORT, certified by the number of zeros (`None` for infinitely many).
/// Finding the certified zeros is a search bounded by `max_scan`.
#[derive(Clone, Copy, Debug)]
pub struct TameSort {
    pub max_scan: usize,
}

impl Default for TameSort {
    fn default() -> Self {
        TameSort { max_scan: 1 << 20 }
    }
}

impl TameRealizer<Arc<dyn BitStream>> for TameSort {
    type Answer = PeriodicBits;
    type Certificate = Option<u64>;

    fn problem(&self) -> &'static str {
        "SORT"
    }

    fn solve(&self, p: &Arc<dyn BitStream>, zeros: &Option<u64>) -> Result<PeriodicBits> {
        let Some(n) = *zeros else {
            return Ok(PeriodicBits::constant(false));
        };
        let mut seen = 0;
        let mut i = 0;
        while seen < n {
            if i >= self.max_scan {
                return Err(Error::Budget(format!("SORT: {seen} of {n} certified zeros in {i} bits")));
            }
            seen += !p.bit(i) as u64;
            i += 1;
        }
        if let Some(j) = (i..i + SPOT_CHECK).find(|&j| !p.bit(j)) {
            return Err(Error::TameDomain(format!("SORT: zero number {} at {j}", n + 1)));
        }
        Ok(PeriodicBits { prefix: Word::zeros(n as usize), repeat: Word::from_bits(vec![true]) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SupCertificate {
    /// The supremum is attained at or before this index.
    AttainedBy(usize),
    Unbounded,
}

fn running_max(p: &Arc<dyn NatStream>) -> impl Fn(u64) -> u64 + Send + Sync + 'static {
    let p = Arc::clone(p);
    let memo = Mutex::new(vec![0u64]);
    move |k| {
        let mut m = memo.lock().unwrap();
        while m.len() as u64 <= k {
            let i = m.len() - 1;
            let next = m[i].max(p.at(i));
            m.push(next);
        }
        m[k as usize]
    }
}

fn certified_max(p: &Arc<dyn NatStream>, by: usize, problem: &str) -> Result<u64> {
    let v = (0..=by).map(|i| p.at(i)).max().unwrap_or(0);
    if let Some(j) = (by + 1..by + 1 + SPOT_CHECK).find(|&j| p.at(j) > v) {
        return Err(Error::TameDomain(format!("{problem}: value {} at {j} exceeds {v}", p.at(j))));
    }
    Ok(v)
}

/// sup: ℕ^ℕ → ℕ_∞, answering with a certified conatural name.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameSup;

impl TameRealizer<Arc<dyn NatStream>> for TameSup {
    type Answer = ConatName;
    type Certificate = SupCertificate;

    fn problem(&self) -> &'static str {
        "sup"
    }

    fn solve(&self, p: &Arc<dyn NatStream>, cert: &SupCertificate) -> Result<ConatName> {
        let certificate = match *cert {
            SupCertificate::AttainedBy(by) => {
                let value = certified_max(p, by, "sup")?;
                ConatCertificate::Finite { stage: by as u64 + 1, value }
            }
            SupCertificate::Unbounded => ConatCertificate::Infinite,
        };
        Ok(ConatName::new(running_max(p), Some(certificate)))
    }
}

/// max on bounded streams, certified by an index where it is attained.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameMax;

impl TameRealizer<Arc<dyn NatStream>> for TameMax {
    type Answer = u64;
    type Certificate = usize;

    fn problem(&self) -> &'static str {
        "max"
    }

    fn solve(&self, p: &Arc<dyn NatStream>, by: &usize) -> Result<u64> {
        certified_max(p, *by, "max")
    }
}

/// Choice on ℕ. The instance enumerates the complement of a nonempty set:
/// an entry `v + 1` removes `v`, an entry `0` removes nothing. The
/// certificate is a stage after which no new number is removed.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameChoiceN;

impl TameRealizer<Arc<dyn NatStream>> for TameChoiceN {
    type Answer = u64;
    type Certificate = usize;

    fn problem(&self) -> &'static str {
        "C_N"
    }

    fn solve(&self, p: &Arc<dyn NatStream>, stage: &usize) -> Result<u64> {
        let removed: BTreeSet<u64> = (0..*stage).filter_map(|i| p.at(i).checked_sub(1)).collect();
        if let Some(j) =
            (*stage..stage + SPOT_CHECK).find(|&j| p.at(j).checked_sub(1).is_some_and(|v| !removed.contains(&v)))
        {
            return Err(Error::TameDomain(format!("C_N: {} removed at stage {j}", p.at(j) - 1)));
        }
        Ok((0..).find(|v| !removed.contains(v)).expect("finite removal set"))
    }
}

/// A sequence of natural streams `⟨p_0, p_1, ...⟩`.
pub type NatSequence = Arc<dyn Fn(u64) -> Arc<dyn NatStream> + Send + Sync>;

/// A modulus of convergence: position `i` of the limit is read from the
/// stream with index `modulus(i)`.
#[derive(Clone)]
pub struct LimCertificate {
    pub modulus: Arc<dyn Fn(usize) -> u64 + Send + Sync>,
}

impl LimCertificate {
    /// The sequence is constant from `stage` on.
    pub fn uniform(stage: u64) -> Self {
        LimCertificate { modulus: Arc::new(move |_| stage) }
    }
}

/// lim on Baire space.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameLim;

impl TameRealizer<NatSequence> for TameLim {
    type Answer = Arc<dyn NatStream>;
    type Certificate = LimCertificate;

    fn problem(&self) -> &'static str {
        "lim"
    }

    fn solve(&self, seq: &NatSequence, cert: &LimCertificate) -> Result<Arc<dyn NatStream>> {
        for i in 0..SPOT_CHECK {
            let s = (cert.modulus)(i);
            let (a, b) = (seq(s).at(i), seq(s + 1).at(i));
            if a != b {
                return Err(Error::TameDomain(format!("lim: position {i} changes after stage {s}")));
            }
        }
        let (seq, modulus) = (Arc::clone(seq), Arc::clone(&cert.modulus));
        Ok(Arc::new(FnNats::new(move |i| seq(modulus(i)).at(i))))
    }
}

/// The index of the first nonzero entry, or `None` for the zero stream.
pub type LpoCertificate = Option<usize>;

/// LPO: `p ↦ 1` iff `p = 0^ω`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameLpo;

impl TameRealizer<Arc<dyn NatStream>> for TameLpo {
    type Answer = bool;
    type Certificate = LpoCertificate;

    fn problem(&self) -> &'static str {
        "LPO"
    }

    fn solve(&self, p: &Arc<dyn NatStream>, cert: &LpoCertificate) -> Result<bool> {
        match *cert {
            Some(i) if p.at(i) != 0 => Ok(false),
            Some(i) => Err(Error::TameDomain(format!("LPO: p({i}) = 0"))),
            None => match (0..SPOT_CHECK).find(|&i| p.at(i) != 0) {
                Some(i) => Err(Error::TameDomain(format!("LPO: p({i}) ≠ 0"))),
                None => Ok(true),
            },
        }
    }
}

/// A decidable binary tree, closed under prefixes.
pub type BinaryTree = Arc<dyn Fn(&[bool]) -> bool + Send + Sync>;

/// WKL, certified by a depth from which the tree is pruned: every node of
/// length at least the depth has a child in the tree. The answer is the
/// leftmost path through the leftmost node at that depth.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameWkl;

impl TameRealizer<BinaryTree> for TameWkl {
    type Answer = Hypothesis;
    type Certificate = usize;

    fn problem(&self) -> &'static str {
        "WKL"
    }

    fn solve(&self, tree: &BinaryTree, pruned_from: &usize) -> Result<Hypothesis> {
        let start = leftmost_at(tree, &mut Word::new(), *pruned_from)
            .ok_or_else(|| Error::TameDomain(format!("WKL: no node at depth {pruned_from}")))?;
        let mut path = start;
        while path.len() < pruned_from + SPOT_CHECK {
            match extend(tree, &path) {
                Some(b) => path.push(b),
                None => return Err(Error::TameDomain(format!("WKL: {path} has no child"))),
            }
        }
        let tree = Arc::clone(tree);
        let path = Mutex::new(path);
        Ok(Hypothesis::program("leftmost path", move |x: Point| {
            let mut p = path.lock().unwrap();
            while (p.len() as Point) <= x {
                // past the checked depth a false certificate yields arbitrary bits
                let b = extend(&tree, &p).unwrap_or(false);
                p.push(b);
            }
            p[x as usize]
        }))
    }
}

fn extend(tree: &BinaryTree, w: &Word) -> Option<bool> {
    [false, true].into_iter().find(|&b| tree(&w.child(b)))
}

fn leftmost_at(tree: &BinaryTree, w: &mut Word, depth: usize) -> Option<Word> {
    if !tree(w) {
        return None;
    }
    if w.len() == depth {
        return Some(w.clone());
    }
    for b in [false, true] {
        w.push(b);
        let found = leftmost_at(tree, w, depth);
        w.truncate(w.len() - 1);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// The value of a VC dimension, certified by a depth at which it is
/// attained, or as infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum VcdimCertificate {
    Depth(usize),
    Infinite,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::PeriodicNats;

    fn bits(prefix: &str, repeat: &str) -> Arc<dyn BitStream> {
        Arc::new(PeriodicBits::new(prefix.parse().unwrap(), repeat.parse().unwrap()).unwrap())
    }

    fn nats(prefix: &[u64], repeat: &[u64]) -> Arc<dyn NatStream> {
        Arc::new(PeriodicNats::new(prefix.to_vec(), repeat.to_vec()).unwrap())
    }

    #[test]
    fn sort() {
        let out = TameSort::default().solve(&bits("1101", "1"), &Some(1)).unwrap();
        assert_eq!(out.prefix(5).to_string(), "01111");
        assert!(matches!(TameSort::default().solve(&bits("1101", "1"), &Some(0)), Err(Error::TameDomain(_))));
        let small = TameSort { max_scan: 10 };
        assert!(matches!(small.solve(&bits("", "1"), &Some(1)), Err(Error::Budget(_))));
        assert_eq!(TameSort::default().solve(&bits("", "0"), &None).unwrap().prefix(3).to_string(), "000");
    }

    #[test]
    fn sup_and_max() {
        let p = nats(&[3, 1, 4], &[2]);
        let name = TameSup.solve(&p, &SupCertificate::AttainedBy(2)).unwrap();
        assert_eq!(name.value(), Some(Some(4)));
        assert_eq!(name.lower_bounds(4), vec![0, 3, 3, 4]);
        assert!(TameSup.solve(&p, &SupCertificate::AttainedBy(0)).is_err());
        assert_eq!(TameMax.solve(&p, &2).unwrap(), 4);
        let up: Arc<dyn NatStream> = Arc::new(FnNats::new(|i| i as u64));
        assert_eq!(TameSup.solve(&up, &SupCertificate::Unbounded).unwrap().value(), Some(None));
    }

    #[test]
    fn choice_on_naturals() {
        // removes 0, then 2, then 1
        let p = nats(&[1, 0, 3, 2], &[0]);
        assert_eq!(TameChoiceN.solve(&p, &4).unwrap(), 3);
        assert!(TameChoiceN.solve(&p, &2).is_err());
    }

    #[test]
    fn limit_and_lpo() {
        let seq: NatSequence = Arc::new(|n| Arc::new(FnNats::new(move |i| (i as u64).min(n))) as Arc<dyn NatStream>);
        let cert = LimCertificate { modulus: Arc::new(|i| i as u64) };
        let lim = TameLim.solve(&seq, &cert).unwrap();
        assert_eq!(lim.prefix(5), vec![0, 1, 2, 3, 4]);
        assert!(TameLim.solve(&seq, &LimCertificate::uniform(3)).is_err());

        assert!(TameLpo.solve(&nats(&[], &[0]), &None).unwrap());
        assert!(!TameLpo.solve(&nats(&[0, 5], &[0]), &Some(1)).unwrap());
        assert!(TameLpo.solve(&nats(&[0, 5], &[0]), &None).is_err());
    }

    #[test]
    fn wkl_leftmost_path() {
        // paths avoid "00" and "010"
        let tree: BinaryTree =
            Arc::new(|w: &[bool]| !(w.len() >= 2 && !w[0] && !w[1]) && !(w.len() >= 3 && !w[0] && w[1] && !w[2]));
        let h = TameWkl.solve(&tree, &3).unwrap();
        assert_eq!(h.prefix(5).to_string(), "01100");
        let empty: BinaryTree = Arc::new(|w: &[bool]| w.len() < 2);
        assert!(TameWkl.solve(&empty, &4).is_err());
    }
}

//! Finitely described instances of the benchmark problems.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::{BitStream, PeriodicBits};
use crate::error::{Error, Result};

/// One element removed from the set `A_{n,m} ⊆ {0..m-1}` at a stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Removal {
    pub n: u64,
    #[serde(default = "two")]
    pub m: u64,
    pub element: u64,
    pub stage: u64,
}

fn two() -> u64 {
    2
}

/// A family of sets `A_{n,m} ⊆ {0..m-1}` given by negative enumeration,
/// each missing at most one element. Sets without a removal are full.
/// With `m = 2` throughout this is an instance of the parallelized choice
/// on two points, with general `m` one of finitary DNC.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoiceFamily {
    pub removals: Vec<Removal>,
    #[serde(skip)]
    index: BTreeMap<(u64, u64), (u64, u64)>,
}

impl ChoiceFamily {
    pub fn new(removals: Vec<Removal>) -> Result<Self> {
        let mut f = ChoiceFamily { removals, index: BTreeMap::new() };
        f.build_index()?;
        Ok(f)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ChoiceFamily = serde_json::from_str(s)?;
        ChoiceFamily::new(raw.removals)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    fn build_index(&mut self) -> Result<()> {
        for r in &self.removals {
            if r.m < 2 || r.element >= r.m {
                return Err(Error::Parse(format!("removal of {} from a set of size {}", r.element, r.m)));
            }
            if self.index.insert((r.n, r.m), (r.element, r.stage)).is_some() {
                return Err(Error::Parse(format!("two removals from A_({},{})", r.n, r.m)));
            }
        }
        Ok(())
    }

    /// The element missing from `A_{n,m}` by stage `s`, if any.
    pub fn removed_by(&self, n: u64, m: u64, s: u64) -> Option<u64> {
        self.index.get(&(n, m)).filter(|&&(_, stage)| stage <= s).map(|&(e, _)| e)
    }

    /// Membership in the limit set.
    pub fn contains(&self, n: u64, m: u64, element: u64) -> bool {
        element < m && self.index.get(&(n, m)).is_none_or(|&(e, _)| e != element)
    }

    /// Stage by which every removal has happened.
    pub fn final_stage(&self) -> u64 {
        self.removals.iter().map(|r| r.stage).max().unwrap_or(0)
    }
}

/// A sequence `⟨p_0, p_1, ...⟩` of bit streams, all `0^ω` past the listed
/// ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamFamily {
    pub streams: Vec<PeriodicBits>,
}

impl StreamFamily {
    pub fn new(streams: Vec<PeriodicBits>) -> Result<Self> {
        for s in &streams {
            s.validate()?;
        }
        Ok(StreamFamily { streams })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: StreamFamily = serde_json::from_str(s)?;
        StreamFamily::new(raw.streams)
    }

    pub fn bit(&self, k: u64, i: usize) -> bool {
        self.streams.get(k as usize).is_some_and(|p| p.bit(i))
    }

    /// Index of the first 1 of `p_k`, decidable for periodic streams.
    pub fn first_one(&self, k: u64) -> Option<usize> {
        self.streams.get(k as usize).and_then(|p| p.first_one())
    }
}

/// A sequence of bit streams that is constant from `stages.len()` on,
/// with value `limit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergingBits {
    pub stages: Vec<PeriodicBits>,
    pub limit: PeriodicBits,
}

impl ConvergingBits {
    pub fn new(stages: Vec<PeriodicBits>, limit: PeriodicBits) -> Result<Self> {
        for s in stages.iter().chain([&limit]) {
            s.validate()?;
        }
        Ok(ConvergingBits { stages, limit })
    }

    pub fn constant(p: PeriodicBits) -> Self {
        ConvergingBits { stages: vec![], limit: p }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ConvergingBits = serde_json::from_str(s)?;
        ConvergingBits::new(raw.stages, raw.limit)
    }

    pub fn stage(&self, n: usize) -> &PeriodicBits {
        self.stages.get(n).unwrap_or(&self.limit)
    }

    /// Stabilization index.
    pub fn stable_from(&self) -> usize {
        self.stages.len()
    }
}

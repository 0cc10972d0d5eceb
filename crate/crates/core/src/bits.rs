//! Finite words, bit and natural-number streams, and write-once memo tables.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample points and hypothesis coordinates.
pub type Point = u128;

/// A finite binary word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<bool>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Word(vec![false; n])
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn child(&self, b: bool) -> Word {
        let mut w = self.clone();
        w.0.push(b);
        w
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn truncate(&mut self, n: usize) {
        self.0.truncate(n);
    }

    pub fn extend_from(&mut self, other: &[bool]) {
        self.0.extend_from_slice(other);
    }

    pub fn is_prefix_of(&self, other: &[bool]) -> bool {
        other.len() >= self.len() && other[..self.len()] == self.0[..]
    }

    /// Bits read as a binary number, most significant first.
    pub fn value(&self) -> u128 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u128)
    }

    /// `k`-bit binary numeral of `i`, most significant bit first.
    pub fn binary(i: u128, k: usize) -> Word {
        Word((0..k).rev().map(|t| t < 128 && (i >> t) & 1 == 1).collect())
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        (0..1u64 << n).map(move |v| Word::binary(v as u128, n))
    }
}

impl Deref for Word {
    type Target = [bool];
    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl From<&[bool]> for Word {
    fn from(b: &[bool]) -> Self {
        Word(b.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The `n`-th word in length-lexicographic order: "", "0", "1", "00", ...
pub fn word_at(n: u64) -> Word {
    let m = n as u128 + 1;
    let len = 127 - m.leading_zeros() as usize;
    Word::binary(m, len)
}

/// Inverse of [`word_at`].
pub fn word_index(w: &[bool]) -> Result<u64> {
    if w.len() > 63 {
        return Err(Error::Range(format!("word of length {} has no u64 index", w.len())));
    }
    let v = w.iter().fold(1u64, |acc, &b| (acc << 1) | b as u64);
    Ok(v - 1)
}

/// An infinite binary sequence queried by position.
pub trait BitStream: Send + Sync {
    fn bit(&self, i: usize) -> bool;

    fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.bit(i)).collect())
    }
}

/// An infinite sequence of naturals queried by position.
pub trait NatStream: Send + Sync {
    fn at(&self, i: usize) -> u64;

    fn prefix(&self, n: usize) -> Vec<u64> {
        (0..n).map(|i| self.at(i)).collect()
    }
}

/// `prefix · repeat^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicBits {
    pub prefix: Word,
    pub repeat: Word,
}

impl PeriodicBits {
    pub fn new(prefix: Word, repeat: Word) -> Result<Self> {
        if repeat.is_empty() {
            return Err(Error::Parse("stream repeat part must be nonempty".into()));
        }
        Ok(PeriodicBits { prefix, repeat })
    }

    pub fn constant(b: bool) -> Self {
        PeriodicBits { prefix: Word::new(), repeat: Word(vec![b]) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeat.is_empty() {
            return Err(Error::Parse("stream repeat part must be nonempty".into()));
        }
        Ok(())
    }

    /// Positions of zeros if there are finitely many.
    pub fn zero_count(&self) -> Option<u64> {
        if self.repeat.iter().any(|&b| !b) {
            None
        } else {
            Some(self.prefix.iter().filter(|&&b| !b).count() as u64)
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.prefix
            .iter()
            .position(|&b| b)
            .or_else(|| self.repeat.iter().position(|&b| b).map(|i| i + self.prefix.len()))
    }
}

impl BitStream for PeriodicBits {
    fn bit(&self, i: usize) -> bool {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.repeat[(i - self.prefix.len()) % self.repeat.len()]
        }
    }
}

/// `prefix · repeat^ω` over the naturals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicNats {
    pub prefix: Vec<u64>,
    pub repeat: Vec<u64>,
}

impl PeriodicNats {
    pub fn new(prefix: Vec<u64>, repeat: Vec<u64>) -> Result<Self> {
        let s = PeriodicNats { prefix, repeat };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repeat.is_empty() {
            return Err(Error::Parse("stream repeat part must be nonempty".into()));
        }
        Ok(())
    }

    pub fn sup(&self) -> u64 {
        self.prefix.iter().chain(&self.repeat).copied().max().unwrap_or(0)
    }
}

impl NatStream for PeriodicNats {
    fn at(&self, i: usize) -> u64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.repeat[(i - self.prefix.len()) % self.repeat.len()]
        }
    }
}

/// A bit stream given by a closure, memoized per position.
#[derive(Clone)]
pub struct FnBits {
    f: Arc<dyn Fn(usize) -> bool + Send + Sync>,
    memo: Arc<Memo<usize, bool>>,
}

impl FnBits {
    pub fn new(f: impl Fn(usize) -> bool + Send + Sync + 'static) -> Self {
        FnBits { f: Arc::new(f), memo: Arc::new(Memo::new()) }
    }
}

impl BitStream for FnBits {
    fn bit(&self, i: usize) -> bool {
        self.memo.get_or_insert_with(i, || (self.f)(i))
    }
}

/// A natural-number stream given by a closure, memoized per position.
#[derive(Clone)]
pub struct FnNats {
    f: Arc<dyn Fn(usize) -> u64 + Send + Sync>,
    memo: Arc<Memo<usize, u64>>,
}

impl FnNats {
    pub fn new(f: impl Fn(usize) -> u64 + Send + Sync + 'static) -> Self {
        FnNats { f: Arc::new(f), memo: Arc::new(Memo::new()) }
    }
}

impl NatStream for FnNats {
    fn at(&self, i: usize) -> u64 {
        self.memo.get_or_insert_with(i, || (self.f)(i))
    }
}

/// Write-once memo table. The first value stored for a key is kept forever;
/// later computations of the same key are discarded.
pub struct Memo<K, V> {
    table: Mutex<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo { table: Mutex::new(HashMap::new()) }
    }

    pub fn get(&self, k: &K) -> Option<V> {
        self.table.lock().unwrap().get(k).cloned()
    }

    /// The lock is not held while `f` runs, so `f` may re-enter the memo.
    pub fn get_or_insert_with(&self, k: K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(&k) {
            return v;
        }
        let v = f();
        self.table.lock().unwrap().entry(k).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

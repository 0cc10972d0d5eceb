//! VC witnesses: maps `f` from increasing `k`-tuples to `{0,1}^k` such that
//! no member's trace on a tuple equals `f` of that tuple.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::complexity::{Constants, SampleComplexity};
use super::learner::Learner;
use crate::bits::{Memo, Point, Word};
use crate::class::{CoverTrie, Exclusion, NegativeClass, PositiveClass};
use crate::error::{Error, Result};
use crate::hypothesis::{EventuallyConstant, Hypothesis};
use crate::risk::Sample;
use crate::vcdim::combinations;

type EvalFn = Arc<dyn Fn(&[Point]) -> Result<Word> + Send + Sync>;

/// A witness of arity `k`, evaluated lazily and memoized per tuple.
/// Only strictly increasing tuples are in its domain.
#[derive(Clone)]
pub struct Witness {
    arity: usize,
    f: EvalFn,
    memo: Arc<Memo<Vec<Point>, Word>>,
    description: String,
    file: Option<Arc<WitnessFile>>,
}

impl Witness {
    pub fn new(
        arity: usize,
        description: impl Into<String>,
        f: impl Fn(&[Point]) -> Result<Word> + Send + Sync + 'static,
    ) -> Self {
        Witness { arity, f: Arc::new(f), memo: Arc::new(Memo::new()), description: description.into(), file: None }
    }

    fn with_file(mut self, file: WitnessFile) -> Self {
        self.file = Some(Arc::new(file));
        self
    }

    /// The witness with the same value on every tuple.
    pub fn constant(bits: Word) -> Self {
        let arity = bits.len();
        let name = format!("const{bits}");
        Witness::new(arity, format!("const {bits}"), move |_| Ok(bits.clone())).with_file(WitnessFile::Builtin { name })
    }

    /// A finite table with a default for tuples it does not list.
    pub fn table(arity: usize, default: Word, entries: BTreeMap<Vec<Point>, Word>) -> Result<Self> {
        if default.len() != arity || entries.values().any(|b| b.len() != arity) {
            return Err(Error::Parse(format!("witness table values must have length {arity}")));
        }
        for t in entries.keys() {
            check_tuple(arity, t)?;
        }
        let description = format!("table of {} entries, default {default}", entries.len());
        let file_entries: Option<Vec<TableEntry>> = entries
            .iter()
            .map(|(t, b)| {
                let tuple = t.iter().map(|&x| u64::try_from(x).ok()).collect::<Option<_>>()?;
                Some(TableEntry { tuple, bits: b.clone() })
            })
            .collect();
        let file = file_entries.map(|entries| WitnessFile::Table { arity, default: default.clone(), entries });
        let w = Witness::new(arity, description, move |t| Ok(entries.get(t).unwrap_or(&default).clone()));
        Ok(match file {
            Some(f) => w.with_file(f),
            None => w,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, tuple: &[Point]) -> Result<Word> {
        check_tuple(self.arity, tuple)?;
        if let Some(w) = self.memo.get(&tuple.to_vec()) {
            return Ok(w);
        }
        let w = (self.f)(tuple)?;
        if w.len() != self.arity {
            return Err(Error::Domain(format!("witness returned {} bits, arity is {}", w.len(), self.arity)));
        }
        Ok(self.memo.get_or_insert_with(tuple.to_vec(), || w))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: WitnessFile = serde_json::from_str(s)?;
        match f {
            WitnessFile::Table { arity, default, entries } => {
                let entries =
                    entries.into_iter().map(|e| (e.tuple.into_iter().map(Point::from).collect(), e.bits)).collect();
                Witness::table(arity, default, entries)
            }
            WitnessFile::Builtin { name } => builtin(&name),
        }
    }

    /// The file form of table and constant witnesses; computed witnesses
    /// have none.
    pub fn to_json(&self) -> Option<String> {
        self.file.as_ref().map(|f| serde_json::to_string(&**f).expect("witness file serializes"))
    }
}

impl fmt::Debug for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Witness(arity {}, {})", self.arity, self.description)
    }
}

fn check_tuple(arity: usize, t: &[Point]) -> Result<()> {
    if t.len() != arity {
        return Err(Error::Domain(format!("tuple of length {} for arity {arity}", t.len())));
    }
    if t.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Domain(format!("tuple {t:?} is not strictly increasing")));
    }
    Ok(())
}

/// `constB` for a bit string `B`, e.g. `const1` or `const01`.
fn builtin(name: &str) -> Result<Witness> {
    let bits = name
        .strip_prefix("const")
        .filter(|b| !b.is_empty())
        .ok_or_else(|| Error::Parse(format!("unknown builtin witness {name:?}")))?;
    Ok(Witness::constant(bits.parse()?))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    tuple: Vec<u64>,
    bits: Word,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum WitnessFile {
    Table { arity: usize, default: Word, entries: Vec<TableEntry> },
    Builtin { name: String },
}

/// `supp(h)` is finite and `f(x) ≠ h|x` for every increasing tuple below
/// the largest point of the support.
pub fn good_for_witness(f: &Witness, h: &Hypothesis) -> Result<bool> {
    let h = h.as_const().ok_or_else(|| Error::Domain("goodness needs an eventually constant hypothesis".into()))?;
    let Some(top) = h.max_support()? else {
        return Ok(true);
    };
    let k = f.arity();
    for t in combinations(top as usize, k) {
        let t: Vec<Point> = t.into_iter().map(|x| x as Point).collect();
        let trace = Word::from_bits(t.iter().map(|&x| h.query(x)).collect());
        if f.eval(&t)? == trace {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Good hypotheses with support in `{0..bound}`, ordered by the code
/// `Σ h(x)·2^x`.
pub fn enumerate_good_hypotheses(f: &Witness, bound: usize) -> Result<Vec<EventuallyConstant>> {
    if bound > 24 {
        return Err(Error::Resource(format!("enumerating 2^{} hypotheses", bound + 1)));
    }
    let mut out = Vec::new();
    for code in 0u64..1 << (bound + 1) {
        let bits = (0..=bound).map(|x| (code >> x) & 1 == 1).collect();
        let h = EventuallyConstant::new(Word::from_bits(bits), false);
        if good_for_witness(f, &Hypothesis::Const(h.clone()))? {
            out.push(h);
        }
    }
    Ok(out)
}

/// ERM over the hypotheses good for `f` whose support lies below the
/// largest sample point, with sample complexity `m_{arity}`.
pub fn learner_from_witness(f: &Witness, consts: &Constants) -> (Learner, SampleComplexity) {
    let w = f.clone();
    let learner = Learner::new(format!("erm over hypotheses good for {}", f.description()), move |s| {
        good_erm(&w, s).map(Hypothesis::Const)
    })
    .symmetric();
    (learner, SampleComplexity::formula(f.arity() as u64, consts))
}

fn good_erm(f: &Witness, sample: &Sample) -> Result<EventuallyConstant> {
    let Some(m) = sample.max_point() else {
        return Ok(EventuallyConstant::constant(false));
    };
    let m = usize::try_from(m)
        .ok()
        .filter(|&m| m < 1 << 20)
        .ok_or_else(|| Error::Resource(format!("sample point {m} too large")))?;
    let mut c0 = vec![0usize; m + 1];
    let mut c1 = vec![0usize; m + 1];
    for &(x, y) in sample.iter() {
        if y {
            c1[x as usize] += 1;
        } else {
            c0[x as usize] += 1;
        }
    }
    let k = f.arity();
    if k > m {
        // no k-tuple fits below any admissible support maximum
        let bits = (0..=m).map(|x| c0[x] < c1[x]).collect();
        return Ok(EventuallyConstant::new(Word::from_bits(bits), false));
    }
    let mut best_cost: usize = c1.iter().sum();
    let mut best = vec![false; m + 1];
    for top in 0..=m {
        let fixed: usize = c1[top + 1..].iter().sum::<usize>() + c0[top];
        if fixed >= best_cost {
            continue;
        }
        let mut bits = vec![false; m + 1];
        bits[top] = true;
        let mut search = GoodSearch { f, c0: &c0, c1: &c1, top, best_cost, found: None };
        search.assign(&mut bits, top, fixed)?;
        if let Some(found) = search.found {
            best_cost = search.best_cost;
            best = found;
        }
    }
    Ok(EventuallyConstant::new(Word::from_bits(best), false))
}

struct GoodSearch<'a> {
    f: &'a Witness,
    c0: &'a [usize],
    c1: &'a [usize],
    top: usize,
    best_cost: usize,
    found: Option<Vec<bool>>,
}

impl GoodSearch<'_> {
    // Positions are assigned from top-1 down to 0, zero first, so the first
    // assignment reaching a cost is the one with the smallest code.
    fn assign(&mut self, bits: &mut Vec<bool>, next: usize, cost: usize) -> Result<()> {
        if cost >= self.best_cost {
            return Ok(());
        }
        if next == 0 {
            self.best_cost = cost;
            self.found = Some(bits.clone());
            return Ok(());
        }
        let j = next - 1;
        for b in [false, true] {
            bits[j] = b;
            let add = if b { self.c0[j] } else { self.c1[j] };
            if self.consistent_at(bits, j)? {
                self.assign(bits, j, cost + add)?;
            }
        }
        bits[j] = false;
        Ok(())
    }

    // Tuples whose least element is j, all inside [j, top).
    fn consistent_at(&self, bits: &[bool], j: usize) -> Result<bool> {
        let k = self.f.arity();
        let above = self.top - j - 1;
        for rest in combinations(above, k - 1) {
            let mut t = Vec::with_capacity(k);
            t.push(j as Point);
            t.extend(rest.iter().map(|&r| (j + 1 + r) as Point));
            let trace = Word::from_bits(t.iter().map(|&x| bits[x as usize]).collect());
            if self.f.eval(&t)? == trace {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Stages at which a negative enumeration is inspected.
#[derive(Clone, Debug)]
pub struct StageSchedule {
    pub first: u64,
    pub max: u64,
}

impl Default for StageSchedule {
    fn default() -> Self {
        StageSchedule { first: 64, max: 1 << 22 }
    }
}

impl StageSchedule {
    fn stages(&self) -> impl Iterator<Item = u64> + '_ {
        let mut s = Some(self.first.max(1));
        std::iter::from_fn(move || {
            let cur = s?;
            s = (cur < self.max).then(|| (cur * 2).min(self.max));
            Some(cur)
        })
    }
}

/// Exclusions read so far, shared by all evaluations of one witness.
struct ExclusionCache {
    class: Arc<dyn NegativeClass>,
    words: Mutex<Vec<Option<Word>>>,
    tries: Memo<u64, Arc<CoverTrie>>,
}

impl ExclusionCache {
    fn trie(&self, upto: u64) -> Arc<CoverTrie> {
        self.tries.get_or_insert_with(upto, || {
            let mut words = self.words.lock().unwrap();
            while (words.len() as u64) < upto {
                let i = words.len() as u64;
                words.push(match self.class.excluded(i) {
                    Exclusion::Word(w) => Some(w),
                    Exclusion::Pause => None,
                });
            }
            let mut t = CoverTrie::new();
            for w in words[..upto as usize].iter().flatten() {
                t.insert(w);
            }
            Arc::new(t)
        })
    }
}

/// A `(d+1)`-ary witness from negative information: on a tuple, the first
/// `b` (lexicographically) such that, at the first inspected stage where
/// some `b` is settled, every word of length `max + 1` with trace `b` lies
/// in an excluded cylinder.
pub fn witness_from_negative(class: Arc<dyn NegativeClass>, d: usize, schedule: StageSchedule) -> Witness {
    let cache = Arc::new(ExclusionCache { class, words: Mutex::new(Vec::new()), tries: Memo::new() });
    Witness::new(d + 1, format!("witness from negative information, d={d}"), move |t| {
        let depth = *t.last().unwrap() as usize + 1;
        let k = t.len();
        for stage in schedule.stages() {
            let trie = cache.trie(stage);
            for code in 0u64..1 << k {
                let b = Word::binary(code as u128, k);
                if !trace_alive(&trie, t, &b, depth, &mut Word::new()) {
                    return Ok(b);
                }
            }
        }
        Err(Error::Resource(format!("no trace on {t:?} excluded by stage {}", schedule.max)))
    })
}

fn trace_alive(trie: &CoverTrie, t: &[Point], b: &Word, depth: usize, w: &mut Word) -> bool {
    if trie.covered(w) {
        return false;
    }
    if w.len() == depth {
        return true;
    }
    let pos = w.len() as Point;
    let choices: &[bool] = match t.iter().position(|&x| x == pos) {
        Some(i) if b[i] => &[true],
        Some(_) => &[false],
        None => &[false, true],
    };
    for &c in choices {
        w.push(c);
        let alive = trace_alive(trie, t, b, depth, w);
        w.truncate(w.len() - 1);
        if alive {
            return true;
        }
    }
    false
}

/// A member and tuple on which the witness fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub member: u64,
    pub tuple: Vec<Point>,
}

/// Searches members (up to the presentation's horizon) and tuples with
/// entries below `budget` for `f(x) = h|x`.
pub fn witness_refute(class: &dyn PositiveClass, f: &Witness, budget: usize) -> Result<Option<Refutation>> {
    let k = f.arity();
    if k > budget {
        return Ok(None);
    }
    let tuples: Vec<Vec<Point>> =
        combinations(budget, k).map(|t| t.into_iter().map(|x| x as Point).collect()).collect();
    for i in 0..class.refutation_horizon(budget) {
        let prefix = class.member(i).prefix(budget);
        for t in &tuples {
            let trace = Word::from_bits(t.iter().map(|&x| prefix[x as usize]).collect());
            if f.eval(t)? == trace {
                return Ok(Some(Refutation { member: i, tuple: t.clone() }));
            }
        }
    }
    Ok(None)
}

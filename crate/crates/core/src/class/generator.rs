//! Finite descriptions of classes, their JSON form, and the presentations
//! derived from them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::adapters::{FnPositive, ListNegative, ListPositive, NegativeOf, PositiveOf};
use super::trie::CoverTrie;
use super::{FullClass, NegativeClass, PositiveClass};
use crate::bits::Word;
use crate::error::{Error, Result};
use crate::hypothesis::{EventuallyConstant, Hypothesis};

/// One position of a template or product pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    Zero,
    One,
    Star,
}

impl Sym {
    fn parse(c: char) -> Result<Sym> {
        match c {
            '0' => Ok(Sym::Zero),
            '1' => Ok(Sym::One),
            '*' => Ok(Sym::Star),
            _ => Err(Error::MalformedGenerator(format!("bad pattern symbol {c:?}"))),
        }
    }

    fn allows(self, b: bool) -> bool {
        match self {
            Sym::Zero => !b,
            Sym::One => b,
            Sym::Star => true,
        }
    }

    fn fixed(self) -> Option<bool> {
        match self {
            Sym::Zero => Some(false),
            Sym::One => Some(true),
            Sym::Star => None,
        }
    }

    fn to_char(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Star => '*',
        }
    }
}

fn parse_syms(s: &str) -> Result<Vec<Sym>> {
    s.chars().map(Sym::parse).collect()
}

fn syms_string(s: &[Sym]) -> String {
    s.iter().map(|c| c.to_char()).collect()
}

fn parse_tail_bit(s: &str) -> Result<bool> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(Error::MalformedGenerator(format!("tail must be \"0\" or \"1\", got {s:?}"))),
    }
}

/// On-disk class description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "repr", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClassFile {
    Templates {
        templates: Vec<String>,
        tail: String,
    },
    Product {
        pattern: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pattern_tail: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail: Option<String>,
    },
    Negative {
        excluded: Vec<Word>,
    },
    Positive {
        members: Vec<EventuallyConstant>,
    },
    Union {
        parts: Vec<ClassFile>,
    },
    Interleave {
        even: Box<ClassFile>,
        odd: Box<ClassFile>,
    },
}

/// Where every member has become constant, and whether all members share
/// the same constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailProfile {
    pub from: usize,
    pub uniform: Option<bool>,
}

type TreeFn = Arc<dyn Fn(&[bool]) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum ClassGenerator {
    /// Instantiations of `{0,1,*}` templates, each followed by `tail^ω`.
    Templates {
        templates: Vec<Vec<Sym>>,
        tail: bool,
    },
    /// A finite list of members.
    Members(Vec<EventuallyConstant>),
    /// `pattern · period^ω`, position by position.
    Product {
        pattern: Vec<Sym>,
        period: Vec<Sym>,
    },
    /// Cantor space minus finitely many cylinders.
    ExplicitNegative {
        excluded: Vec<Word>,
        trie: Arc<CoverTrie>,
    },
    Union(Vec<ClassGenerator>),
    /// `{ h : evens(h) ∈ C0, odds(h) ∈ C1 }`.
    Interleave(Box<ClassGenerator>, Box<ClassGenerator>),
    /// An in-memory tree predicate.
    Program {
        description: String,
        tree: TreeFn,
    },
}

impl ClassGenerator {
    pub fn templates(templates: &[&str], tail: bool) -> Result<Self> {
        Ok(ClassGenerator::Templates {
            templates: templates.iter().map(|t| parse_syms(t)).collect::<Result<_>>()?,
            tail,
        })
    }

    pub fn members(members: Vec<EventuallyConstant>) -> Self {
        ClassGenerator::Members(members)
    }

    pub fn product(pattern: &str, period: &str) -> Result<Self> {
        let period = parse_syms(period)?;
        if period.is_empty() {
            return Err(Error::MalformedGenerator("product period must be nonempty".into()));
        }
        Ok(ClassGenerator::Product { pattern: parse_syms(pattern)?, period })
    }

    pub fn explicit_negative(excluded: Vec<Word>) -> Self {
        let trie = Arc::new(CoverTrie::from_words(&excluded));
        ClassGenerator::ExplicitNegative { excluded, trie }
    }

    /// A class given by a tree predicate. The predicate is checked to be
    /// prefix-closed and pruned on all words up to `check_depth`.
    pub fn program(
        description: impl Into<String>,
        tree: impl Fn(&[bool]) -> bool + Send + Sync + 'static,
        check_depth: usize,
    ) -> Result<Self> {
        let description = description.into();
        for n in 0..=check_depth {
            for w in Word::all_of_length(n) {
                let inside = tree(&w);
                if n > 0 && inside && !tree(&w[..n - 1]) {
                    return Err(Error::MalformedGenerator(format!(
                        "{description}: {w} accepted but its parent is not"
                    )));
                }
                if inside && n < check_depth && !tree(&w.child(false)) && !tree(&w.child(true)) {
                    return Err(Error::MalformedGenerator(format!("{description}: {w} accepted but is a dead end")));
                }
            }
        }
        Ok(ClassGenerator::Program { description, tree: Arc::new(tree) })
    }

    pub fn from_file(f: &ClassFile) -> Result<Self> {
        Ok(match f {
            ClassFile::Templates { templates, tail } => ClassGenerator::Templates {
                templates: templates.iter().map(|t| parse_syms(t)).collect::<Result<_>>()?,
                tail: parse_tail_bit(tail)?,
            },
            ClassFile::Product { pattern, pattern_tail, tail } => {
                let period = match (pattern_tail, tail) {
                    (Some(p), _) => parse_syms(p)?,
                    (None, Some(t)) => parse_syms(t)?,
                    (None, None) => vec![Sym::Zero],
                };
                if period.is_empty() {
                    return Err(Error::MalformedGenerator("product tail must be nonempty".into()));
                }
                ClassGenerator::Product { pattern: parse_syms(pattern)?, period }
            }
            ClassFile::Negative { excluded } => ClassGenerator::explicit_negative(excluded.clone()),
            ClassFile::Positive { members } => ClassGenerator::Members(members.clone()),
            ClassFile::Union { parts } => {
                ClassGenerator::Union(parts.iter().map(ClassGenerator::from_file).collect::<Result<_>>()?)
            }
            ClassFile::Interleave { even, odd } => ClassGenerator::Interleave(
                Box::new(ClassGenerator::from_file(even)?),
                Box::new(ClassGenerator::from_file(odd)?),
            ),
        })
    }

    pub fn to_file(&self) -> Option<ClassFile> {
        Some(match self {
            ClassGenerator::Templates { templates, tail } => ClassFile::Templates {
                templates: templates.iter().map(|t| syms_string(t)).collect(),
                tail: (*tail as u8).to_string(),
            },
            ClassGenerator::Members(m) => ClassFile::Positive { members: m.clone() },
            ClassGenerator::Product { pattern, period } => ClassFile::Product {
                pattern: syms_string(pattern),
                pattern_tail: Some(syms_string(period)),
                tail: None,
            },
            ClassGenerator::ExplicitNegative { excluded, .. } => ClassFile::Negative { excluded: excluded.clone() },
            ClassGenerator::Union(parts) => {
                ClassFile::Union { parts: parts.iter().map(|p| p.to_file()).collect::<Option<_>>()? }
            }
            ClassGenerator::Interleave(a, b) => {
                ClassFile::Interleave { even: Box::new(a.to_file()?), odd: Box::new(b.to_file()?) }
            }
            ClassGenerator::Program { .. } => return None,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        if v.get("repr").and_then(|r| r.as_str()) == Some("program") {
            return Err(Error::MalformedGenerator(
                "program classes exist only in memory and cannot be read from a file".into(),
            ));
        }
        let f: ClassFile = serde_json::from_value(v).map_err(|e| Error::MalformedGenerator(e.to_string()))?;
        ClassGenerator::from_file(&f)
    }

    pub fn to_json(&self) -> Result<String> {
        let f = self.to_file().ok_or_else(|| Error::Domain("program classes have no file form".into()))?;
        Ok(serde_json::to_string(&f)?)
    }

    pub fn is_empty(&self) -> bool {
        !self.tree_query(&[])
    }

    /// False only for program classes, whose tree is trusted rather than
    /// derived from finite data.
    pub fn is_exact(&self) -> bool {
        match self {
            ClassGenerator::Program { .. } => false,
            ClassGenerator::Union(parts) => parts.iter().all(|p| p.is_exact()),
            ClassGenerator::Interleave(a, b) => a.is_exact() && b.is_exact(),
            _ => true,
        }
    }

    pub fn tail_profile(&self) -> Option<TailProfile> {
        if self.is_empty() {
            return Some(TailProfile { from: 0, uniform: Some(false) });
        }
        match self {
            ClassGenerator::Templates { templates, tail } => {
                let from = templates
                    .iter()
                    .map(|t| t.iter().rposition(|&s| s != Sym::fixed_sym(*tail)).map_or(0, |i| i + 1))
                    .max()
                    .unwrap_or(0);
                Some(TailProfile { from, uniform: Some(*tail) })
            }
            ClassGenerator::Members(ms) => {
                let from = ms.iter().map(|m| m.word().len()).max().unwrap_or(0);
                let first = ms[0].tail();
                let uniform = ms.iter().all(|m| m.tail() == first).then_some(first);
                Some(TailProfile { from, uniform })
            }
            ClassGenerator::Product { pattern, period } => {
                let c = period[0].fixed()?;
                if period.iter().any(|&s| s != period[0]) {
                    return None;
                }
                let from = pattern.iter().rposition(|&s| s != period[0]).map_or(0, |i| i + 1);
                Some(TailProfile { from, uniform: Some(c) })
            }
            ClassGenerator::ExplicitNegative { .. } | ClassGenerator::Program { .. } => None,
            ClassGenerator::Union(parts) => {
                let profiles: Vec<TailProfile> =
                    parts.iter().filter(|p| !p.is_empty()).map(|p| p.tail_profile()).collect::<Option<_>>()?;
                let from = profiles.iter().map(|p| p.from).max().unwrap_or(0);
                let first = profiles[0].uniform;
                let uniform = if profiles.iter().all(|p| p.uniform == first) { first } else { None };
                Some(TailProfile { from, uniform })
            }
            ClassGenerator::Interleave(a, b) => {
                let (pa, pb) = (a.tail_profile()?, b.tail_profile()?);
                match (pa.uniform, pb.uniform) {
                    (Some(x), Some(y)) if x == y => {
                        Some(TailProfile { from: 2 * pa.from.max(pb.from), uniform: Some(x) })
                    }
                    _ => None,
                }
            }
        }
    }

    pub fn positive(self: &Arc<Self>) -> Result<Arc<dyn PositiveClass>> {
        if self.is_empty() {
            return Err(Error::Domain("the empty class has no positive presentation".into()));
        }
        Ok(match &**self {
            ClassGenerator::Members(ms) => {
                Arc::new(ListPositive::new(ms.iter().cloned().map(Hypothesis::from).collect())?)
            }
            ClassGenerator::Templates { templates, tail } => match template_counts(templates) {
                Some(counts) => {
                    let total: u64 = counts.iter().sum();
                    let templates = templates.clone();
                    let tail = *tail;
                    Arc::new(FnPositive::new(move |i| instantiate(&templates, &counts, tail, i % total), Some(total)))
                }
                None => Arc::new(PositiveOf::new(self.clone())),
            },
            _ => Arc::new(PositiveOf::new(self.clone())),
        })
    }

    pub fn negative(self: &Arc<Self>) -> Arc<dyn NegativeClass> {
        match &**self {
            ClassGenerator::ExplicitNegative { excluded, .. } => Arc::new(ListNegative::new(excluded.clone())),
            _ => Arc::new(NegativeOf::new(self.clone())),
        }
    }

    pub fn full(self: &Arc<Self>) -> Arc<dyn FullClass> {
        self.clone()
    }
}

impl Sym {
    fn fixed_sym(b: bool) -> Sym {
        if b {
            Sym::One
        } else {
            Sym::Zero
        }
    }
}

fn template_counts(templates: &[Vec<Sym>]) -> Option<Vec<u64>> {
    let counts: Option<Vec<u64>> = templates
        .iter()
        .map(|t| {
            let stars = t.iter().filter(|&&s| s == Sym::Star).count() as u32;
            1u64.checked_shl(stars).filter(|_| stars < 40)
        })
        .collect();
    let counts = counts?;
    counts.iter().try_fold(0u64, |a, &c| a.checked_add(c))?;
    Some(counts)
}

fn instantiate(templates: &[Vec<Sym>], counts: &[u64], tail: bool, mut i: u64) -> Hypothesis {
    let mut t = 0;
    while i >= counts[t] {
        i -= counts[t];
        t += 1;
    }
    let stars = counts[t].trailing_zeros() as usize;
    let assignment = Word::binary(i as u128, stars);
    let mut next = assignment.iter();
    let bits = templates[t].iter().map(|s| s.fixed().unwrap_or_else(|| *next.next().unwrap())).collect();
    Hypothesis::new(Word::from_bits(bits), tail)
}

impl FullClass for ClassGenerator {
    fn tree_query(&self, w: &[bool]) -> bool {
        match self {
            ClassGenerator::Templates { templates, tail } => templates
                .iter()
                .any(|t| w.iter().enumerate().all(|(i, &b)| t.get(i).map_or(b == *tail, |s| s.allows(b)))),
            ClassGenerator::Members(ms) => {
                ms.iter().any(|m| w.iter().enumerate().all(|(i, &b)| m.query(i as u128) == b))
            }
            ClassGenerator::Product { pattern, period } => w.iter().enumerate().all(|(i, &b)| {
                let s = if i < pattern.len() { pattern[i] } else { period[(i - pattern.len()) % period.len()] };
                s.allows(b)
            }),
            ClassGenerator::ExplicitNegative { trie, .. } => !trie.covered(w),
            ClassGenerator::Union(parts) => parts.iter().any(|p| p.tree_query(w)),
            ClassGenerator::Interleave(a, b) => {
                let even: Vec<bool> = w.iter().step_by(2).copied().collect();
                let odd: Vec<bool> = w.iter().skip(1).step_by(2).copied().collect();
                a.tree_query(&even) && b.tree_query(&odd)
            }
            ClassGenerator::Program { tree, .. } => tree(w),
        }
    }

    fn determination_depth(&self) -> Option<usize> {
        self.tail_profile().map(|p| p.from + p.uniform.is_none() as usize)
    }

    fn settle_depth(&self) -> Option<usize> {
        match self {
            ClassGenerator::Templates { .. } | ClassGenerator::Members(_) => self.tail_profile().map(|p| p.from),
            ClassGenerator::Product { pattern, period } => {
                let leftmost = |s: &Sym| s.fixed().unwrap_or(false);
                let b = leftmost(&period[0]);
                period.iter().all(|s| leftmost(s) == b).then_some(pattern.len())
            }
            ClassGenerator::ExplicitNegative { trie, .. } => Some(trie.max_len()),
            ClassGenerator::Union(parts) => parts.iter().map(|p| p.settle_depth()).try_fold(0, |a, d| Some(a.max(d?))),
            ClassGenerator::Interleave(..) | ClassGenerator::Program { .. } => None,
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ClassGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassGenerator::Program { description, .. } => write!(f, "program({description})"),
            _ => match self.to_json() {
                Ok(s) => f.write_str(&s),
                Err(_) => f.write_str("class"),
            },
        }
    }
}

impl fmt::Debug for ClassGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::words_at_depth;

    fn strings(ws: Vec<Word>) -> Vec<String> {
        ws.into_iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn templates_tree() {
        let g = ClassGenerator::templates(&["*0*1"], false).unwrap();
        assert_eq!(strings(words_at_depth(&g, 5)), ["00010", "00110", "10010", "10110"]);
        assert_eq!(g.determination_depth(), Some(4));
    }

    #[test]
    fn product_with_periodic_tail() {
        let g =
            ClassGenerator::from_json(r#"{"repr":"product","pattern":"0*01*","pattern_tail":"*","tail":"0"}"#).unwrap();
        assert_eq!(words_at_depth(&g, 6).len(), 8);
        assert_eq!(g.determination_depth(), None);
        let g = ClassGenerator::from_json(r#"{"repr":"product","pattern":"***000","tail":"0"}"#).unwrap();
        assert_eq!(g.tail_profile(), Some(TailProfile { from: 3, uniform: Some(false) }));
    }

    #[test]
    fn mixed_tails_need_one_more_coordinate() {
        let g = ClassGenerator::from_json(
            r#"{"repr":"positive","members":[{"word":"0","tail":"1"},{"word":"1","tail":"0"},{"word":"","tail":"0"},{"word":"","tail":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(g.determination_depth(), Some(2));
    }

    #[test]
    fn negative_class_tree() {
        let g = ClassGenerator::explicit_negative(vec!["1".parse().unwrap()]);
        assert_eq!(strings(words_at_depth(&g, 2)), ["00", "01"]);
        let empty = ClassGenerator::explicit_negative(vec!["0".parse().unwrap(), "1".parse().unwrap()]);
        assert!(empty.is_empty());
    }

    #[test]
    fn interleave_tree() {
        let a = ClassGenerator::templates(&["*"], false).unwrap();
        let b = ClassGenerator::templates(&["1"], false).unwrap();
        let g = ClassGenerator::Interleave(Box::new(a), Box::new(b));
        assert_eq!(strings(words_at_depth(&g, 4)), ["0100", "1100"]);
        assert_eq!(g.determination_depth(), Some(2));
    }

    #[test]
    fn program_classes_are_validated() {
        assert!(ClassGenerator::program("all", |_| true, 6).is_ok());
        let not_tree = ClassGenerator::program("odd-length", |w: &[bool]| w.len().is_multiple_of(2) || w[0], 4);
        assert!(matches!(not_tree, Err(Error::MalformedGenerator(_))));
        let dead_end = ClassGenerator::program("short", |w: &[bool]| w.len() < 3, 5);
        assert!(matches!(dead_end, Err(Error::MalformedGenerator(_))));
    }

    #[test]
    fn strict_parsing() {
        assert!(matches!(
            ClassGenerator::from_json(r#"{"repr":"templates","templates":["0"],"tail":"0","extra":1}"#),
            Err(Error::MalformedGenerator(_))
        ));
        assert!(matches!(
            ClassGenerator::from_json(r#"{"repr":"program","source":"x"}"#),
            Err(Error::MalformedGenerator(_))
        ));
        assert!(ClassGenerator::from_json(r#"{"repr":"templates","templates":["0x"],"tail":"0"}"#).is_err());
    }

    #[test]
    fn file_roundtrip() {
        let src = r#"{"repr":"union","parts":[{"repr":"templates","templates":["*1"],"tail":"0"},{"repr":"negative","excluded":["01"]}]}"#;
        let g = ClassGenerator::from_json(src).unwrap();
        assert_eq!(g.to_json().unwrap(), src);
    }
}

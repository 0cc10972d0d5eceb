//! Hypotheses: points of Cantor space that learners output.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{Memo, Point, Word};
use crate::error::{Error, Result};

/// `word · tail^ω`, kept normalized so trailing copies of `tail` are
/// stripped from `word`. Derived equality is therefore extensional.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyConstant {
    word: Word,
    tail: bool,
}

impl EventuallyConstant {
    pub fn new(word: Word, tail: bool) -> Self {
        let mut bits = word.into_bits();
        while bits.last() == Some(&tail) {
            bits.pop();
        }
        EventuallyConstant { word: Word::from_bits(bits), tail }
    }

    pub fn constant(tail: bool) -> Self {
        EventuallyConstant { word: Word::new(), tail }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn tail(&self) -> bool {
        self.tail
    }

    pub fn query(&self, x: Point) -> bool {
        if x < self.word.len() as Point {
            self.word[x as usize]
        } else {
            self.tail
        }
    }

    /// Largest point mapped to 1, for hypotheses with finite support.
    pub fn max_support(&self) -> Result<Option<Point>> {
        if self.tail {
            return Err(Error::Domain(format!("{self} has infinite support")));
        }
        Ok(self.word.iter().rposition(|&b| b).map(|i| i as Point))
    }
}

impl fmt::Display for EventuallyConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}^ω", self.word, self.tail as u8)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypothesisFile {
    word: Word,
    tail: String,
}

impl Serialize for EventuallyConstant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypothesisFile { word: self.word.clone(), tail: (self.tail as u8).to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EventuallyConstant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = HypothesisFile::deserialize(d)?;
        let tail = match f.tail.as_str() {
            "0" => false,
            "1" => true,
            t => return Err(serde::de::Error::custom(format!("tail must be \"0\" or \"1\", got {t:?}"))),
        };
        Ok(EventuallyConstant::new(f.word, tail))
    }
}

/// A hypothesis computed by a closure, memoized per query.
#[derive(Clone)]
pub struct ProgramHypothesis {
    f: Arc<dyn Fn(Point) -> bool + Send + Sync>,
    memo: Arc<Memo<Point, bool>>,
    description: String,
}

impl ProgramHypothesis {
    pub fn query(&self, x: Point) -> bool {
        self.memo.get_or_insert_with(x, || (self.f)(x))
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

#[derive(Clone)]
pub enum Hypothesis {
    Const(EventuallyConstant),
    Program(ProgramHypothesis),
}

impl Hypothesis {
    pub fn new(word: Word, tail: bool) -> Self {
        Hypothesis::Const(EventuallyConstant::new(word, tail))
    }

    pub fn constant(tail: bool) -> Self {
        Hypothesis::Const(EventuallyConstant::constant(tail))
    }

    pub fn program(description: impl Into<String>, f: impl Fn(Point) -> bool + Send + Sync + 'static) -> Self {
        Hypothesis::Program(ProgramHypothesis {
            f: Arc::new(f),
            memo: Arc::new(Memo::new()),
            description: description.into(),
        })
    }

    pub fn query(&self, x: Point) -> bool {
        match self {
            Hypothesis::Const(h) => h.query(x),
            Hypothesis::Program(p) => p.query(x),
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_bits((0..n).map(|x| self.query(x as Point)).collect())
    }

    pub fn trace(&self, points: &[Point]) -> Word {
        Word::from_bits(points.iter().map(|&x| self.query(x)).collect())
    }

    pub fn as_const(&self) -> Option<&EventuallyConstant> {
        match self {
            Hypothesis::Const(h) => Some(h),
            Hypothesis::Program(_) => None,
        }
    }

    /// The hypothesis `x ↦ h(2x + parity)`.
    pub fn project(&self, parity: usize) -> Hypothesis {
        match self {
            Hypothesis::Const(h) => {
                let bits = h.word.iter().skip(parity).step_by(2).copied().collect();
                Hypothesis::new(Word::from_bits(bits), h.tail)
            }
            Hypothesis::Program(_) => {
                let inner = self.clone();
                Hypothesis::program(format!("pr{}({self})", parity + 1), move |x| inner.query(2 * x + parity as Point))
            }
        }
    }

    /// Agreement on the first `n` coordinates.
    pub fn agrees_upto(&self, other: &Hypothesis, n: usize) -> bool {
        (0..n as Point).all(|x| self.query(x) == other.query(x))
    }
}

impl From<EventuallyConstant> for Hypothesis {
    fn from(h: EventuallyConstant) -> Self {
        Hypothesis::Const(h)
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Const(h) => h.fmt(f),
            Hypothesis::Program(p) => write!(f, "program({})", p.description),
        }
    }
}

impl fmt::Debug for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_makes_equality_extensional() {
        assert_eq!(EventuallyConstant::new(w("0100"), false), EventuallyConstant::new(w("01"), false));
        assert_ne!(EventuallyConstant::new(w("01"), false), EventuallyConstant::new(w("01"), true));
        assert_eq!(EventuallyConstant::new(w("111"), true), EventuallyConstant::constant(true));
    }

    #[test]
    fn json_roundtrip() {
        let h: EventuallyConstant = serde_json::from_str(r#"{"word":"0101","tail":"0"}"#).unwrap();
        assert_eq!(h.to_string(), "0101·0^ω");
        let back = serde_json::to_string(&h).unwrap();
        assert_eq!(back, r#"{"word":"0101","tail":"0"}"#);
        assert!(serde_json::from_str::<EventuallyConstant>(r#"{"word":"01","tail":"0","x":1}"#).is_err());
    }

    #[test]
    fn projection() {
        let h = Hypothesis::new(w("011011"), false);
        assert_eq!(h.project(0).prefix(4).to_string(), "0110");
        assert_eq!(h.project(1).prefix(4).to_string(), "1010");
        let p = Hypothesis::program("odd", |x| x % 2 == 1);
        assert!(p.project(1).query(5));
        assert!(!p.project(0).query(5));
    }

    #[test]
    fn support() {
        assert_eq!(EventuallyConstant::new(w("0100"), false).max_support().unwrap(), Some(1));
        assert!(EventuallyConstant::constant(true).max_support().is_err());
    }
}

//! Names of elements of ℕ ∪ {∞} as monotone lower-bound streams.

use std::fmt;
use std::sync::Arc;

use crate::bits::{Memo, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConatCertificate {
    /// The stream equals `value` from `stage` on.
    Finite { stage: u64, value: u64 },
    /// The stream is unbounded.
    Infinite,
}

/// A nondecreasing stream of lower bounds whose supremum is the named
/// value, optionally with a stabilization certificate.
#[derive(Clone)]
pub struct ConatName {
    bounds: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    memo: Arc<Memo<u64, u64>>,
    certificate: Option<ConatCertificate>,
}

impl ConatName {
    pub fn new(bounds: impl Fn(u64) -> u64 + Send + Sync + 'static, certificate: Option<ConatCertificate>) -> Self {
        ConatName { bounds: Arc::new(bounds), memo: Arc::new(Memo::new()), certificate }
    }

    pub fn exact(n: u64) -> Self {
        ConatName::new(move |_| n, Some(ConatCertificate::Finite { stage: 0, value: n }))
    }

    pub fn infinity() -> Self {
        ConatName::new(|k| k, Some(ConatCertificate::Infinite))
    }

    pub fn lower_bound(&self, k: u64) -> u64 {
        self.memo.get_or_insert_with(k, || (self.bounds)(k))
    }

    pub fn lower_bounds(&self, n: u64) -> Vec<u64> {
        (0..n).map(|k| self.lower_bound(k)).collect()
    }

    pub fn certificate(&self) -> Option<ConatCertificate> {
        self.certificate
    }

    /// `Some(Some(v))` for a certified finite value, `Some(None)` for a
    /// certified ∞.
    pub fn value(&self) -> Option<Option<u64>> {
        match self.certificate? {
            ConatCertificate::Finite { value, .. } => Some(Some(value)),
            ConatCertificate::Infinite => Some(None),
        }
    }

    /// Prefix of the standard name `0^v 1^ω` (or `0^ω` for ∞). Needs a
    /// certificate, since a lower-bound stream alone never confirms a 1.
    pub fn name_prefix(&self, n: usize) -> Result<Word> {
        let v = self.value().ok_or_else(|| Error::TameDomain("value without stabilization certificate".into()))?;
        Ok(Word::from_bits((0..n).map(|i| v.is_some_and(|v| i as u64 >= v)).collect()))
    }
}

impl fmt::Debug for ConatName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConatName({:?}, {:?})", self.lower_bounds(4), self.certificate)
    }
}

/// Reads a name prefix `0^n 1 ...` back as `n`.
pub fn decode_name(name: &[bool]) -> Option<u64> {
    name.iter().position(|&b| b).map(|i| i as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(ConatName::exact(2).name_prefix(5).unwrap().to_string(), "00111");
        assert_eq!(ConatName::infinity().name_prefix(3).unwrap().to_string(), "000");
        let uncertified = ConatName::new(|k| k.min(3), None);
        assert_eq!(uncertified.lower_bounds(6), [0, 1, 2, 3, 3, 3]);
        assert!(uncertified.name_prefix(2).is_err());
        assert_eq!(decode_name(&[false, false, true]), Some(2));
    }
}

//! Sample-complexity functions indexed by `⟨i,j⟩`, where `2^{-i}` is the
//! accuracy and `2^{-j}` the confidence.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, One, ToPrimitive};

use crate::pairing::cantor_unpair;
use crate::risk::Rational;

/// The constants `c` and `C` of the upper and lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub c: u64,
    pub big_c: Rational,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { c: 1, big_c: Rational::one() }
    }
}

/// `m_d⟨i,j⟩ = c · 2^i · (d·i + j)`, saturating at `u64::MAX`.
pub fn sample_complexity_m(d: u64, z: u64, consts: &Constants) -> u64 {
    let (i, j) = cantor_unpair(z);
    let Some(pow) = 1u64.checked_shl(i as u32).filter(|_| i < 64) else {
        return u64::MAX;
    };
    d.checked_mul(i)
        .and_then(|di| di.checked_add(j))
        .and_then(|s| s.checked_mul(pow))
        .and_then(|s| s.checked_mul(consts.c))
        .unwrap_or(u64::MAX)
}

/// `M_d⟨i,j⟩ = C · 2^i · (d + j)`.
pub fn sample_lower_bound(d: u64, z: u64, consts: &Constants) -> Rational {
    let (i, j) = cantor_unpair(z);
    let scale = BigInt::one() << i as usize;
    &consts.big_c * Rational::from_integer(scale * BigInt::from(d as u128 + j as u128))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `m_d` with constant `c`.
    Formula {
        d: u64,
        c: u64,
    },
    /// `max(m_d, ⌈M_d⌉)`: an honest sample complexity that also respects
    /// the lower-bound family.
    Honoring {
        d: u64,
    },
    Constant(u64),
    External(String),
}

/// A function `ℕ → ℕ` read at codes `⟨i,j⟩`.
#[derive(Clone)]
pub struct SampleComplexity {
    f: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    provenance: Provenance,
}

impl SampleComplexity {
    pub fn formula(d: u64, consts: &Constants) -> Self {
        let consts_c = consts.clone();
        SampleComplexity {
            f: Arc::new(move |z| sample_complexity_m(d, z, &consts_c)),
            provenance: Provenance::Formula { d, c: consts.c },
        }
    }

    pub fn honoring(d: u64, consts: &Constants) -> Self {
        let consts = consts.clone();
        SampleComplexity {
            f: Arc::new(move |z| {
                let upper = sample_complexity_m(d, z, &consts);
                let lower = sample_lower_bound(d, z, &consts).ceil().to_integer().to_u64().unwrap_or(u64::MAX);
                upper.max(lower)
            }),
            provenance: Provenance::Honoring { d },
        }
    }

    pub fn constant(n: u64) -> Self {
        SampleComplexity { f: Arc::new(move |_| n), provenance: Provenance::Constant(n) }
    }

    pub fn external(description: impl Into<String>, f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        SampleComplexity { f: Arc::new(f), provenance: Provenance::External(description.into()) }
    }

    pub fn at(&self, z: u64) -> u64 {
        (self.f)(z)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

impl fmt::Display for SampleComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.provenance {
            Provenance::Formula { d, c } => write!(f, "m_{d} (c={c})"),
            Provenance::Honoring { d } => write!(f, "max(m_{d}, M_{d})"),
            Provenance::Constant(n) => write!(f, "const {n}"),
            Provenance::External(s) => f.write_str(s),
        }
    }
}

impl fmt::Debug for SampleComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `⌈m⟨0,0⟩ / C⌉`, the VC bound read off a sample-complexity function.
pub fn vcbound_from_samplecomplexity(m: &SampleComplexity, consts: &Constants) -> u64 {
    let q = Rational::from_integer(BigInt::from(m.at(0))) / &consts.big_c;
    q.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

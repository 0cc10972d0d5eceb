//! The parallelized LPO ≤_sW PPAC with positive or with negative
//! information.
//!
//! `h_k = 0^k 1·0^ω` stands for "p_k contains a 1". With positive
//! information `h_k` joins `{0^ω}` when a 1 of `p_k` shows up, with
//! negative information it leaves `{0^ω} ∪ {h_k : k ∈ ℕ}`. On the Dirac
//! distribution at `(k, 1)` a proper learner returns `h_k` exactly when
//! `h_k` is in the class.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Reduction, StreamFamily, TameRealizer};
use crate::bits::{word_index, Point, Word};
use crate::class::{exclusions_at, FnPositive, NegativePrefixClass, Presentation, ShrinkingNegative};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::learning::{erm_full, erm_positive_learner, Constants, Learner, SampleComplexity};
use crate::pairing::{cantor_pair, cantor_unpair};
use crate::risk::Sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// A class with a VC bound, in the presentation the sign selects.
#[derive(Clone)]
pub struct PpacInstance {
    pub class: Presentation,
    pub d: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct LimhatToPpac {
    pub sign: Sign,
}

fn has_one_by(family: &StreamFamily, k: u64, s: u64) -> bool {
    (0..=s as usize).any(|i| family.bit(k, i))
}

fn code_word(k: u64) -> Word {
    let mut w = Word::zeros(k as usize);
    w.push(true);
    w
}

impl Reduction for LimhatToPpac {
    type Input = StreamFamily;
    type Instance = PpacInstance;
    type Answer = (Learner, SampleComplexity);
    type Output = Word;

    fn name(&self) -> &'static str {
        match self.sign {
            Sign::Positive => "limhat_to_ppac_pos",
            Sign::Negative => "limhat_to_ppac_neg",
        }
    }

    fn forward(&self, family: &StreamFamily) -> PpacInstance {
        let f = family.clone();
        let class = match self.sign {
            Sign::Positive => Presentation::Positive(Arc::new(FnPositive::new(
                move |i| {
                    let (k, s) = cantor_unpair(i);
                    if has_one_by(&f, k, s) {
                        Hypothesis::new(code_word(k), false)
                    } else {
                        Hypothesis::constant(false)
                    }
                },
                None,
            ))),
            Sign::Negative => Presentation::Negative(Arc::new(ShrinkingNegative::new(move |s, w: &[bool]| {
                let ones: Vec<usize> = w.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
                match ones.as_slice() {
                    [] => true,
                    [k] => !has_one_by(&f, *k as u64, s),
                    _ => false,
                }
            }))),
        };
        PpacInstance { class, d: 1 }
    }

    fn backward(&self, (learner, m): &(Learner, SampleComplexity), budget: usize) -> Result<Word> {
        (0..budget as u64).map(|k| decode_ppac(learner, m, k)).collect::<Result<Vec<_>>>().map(Word::from_bits)
    }
}

/// Runs the learner on `n = m⟨2,2⟩` copies of `(k, 1)` and reads bit `k`.
pub fn decode_ppac(learner: &Learner, m: &SampleComplexity, k: u64) -> Result<bool> {
    let z = cantor_pair(2, 2).expect("small pair");
    let n = m.at(z).max(1) as usize;
    let sample = Sample::new(vec![(k as Point, true); n]);
    Ok(learner.respond(&sample)?.query(k as Point))
}

/// What a tame PPAC realizer reads of the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PpacCertificate {
    /// Members `0..=stage` of a positive presentation.
    Stage(u64),
    /// These entries of a negative presentation.
    Entries(Vec<u64>),
}

/// Enough of the presentation to settle every `p_k` with `k < kmax`. For
/// negative information this also lists the entries removing the words
/// with two 1s up to length `kmax`, which ERM would otherwise pick.
pub fn ppac_certificate(family: &StreamFamily, sign: Sign, kmax: u64) -> PpacCertificate {
    let ones = (0..kmax).filter_map(|k| family.first_one(k).map(|s| (k, s as u64)));
    match sign {
        Sign::Positive => {
            PpacCertificate::Stage(ones.map(|(k, s)| cantor_pair(k, s).expect("small pair")).max().unwrap_or(0))
        }
        Sign::Negative => {
            let entry = |w: &Word, s: u64| cantor_pair(word_index(w).expect("short word"), s).expect("small pair");
            let mut entries: Vec<u64> = ones.map(|(k, s)| entry(&code_word(k), s)).collect();
            for len in 2..=kmax as usize {
                for a in 0..len - 1 {
                    let w = Word::from_bits((0..len).map(|i| i == a || i == len - 1).collect());
                    entries.push(entry(&w, 0));
                }
            }
            PpacCertificate::Entries(entries)
        }
    }
}

/// Proper PAC learning on the certified sub-domain: ERM over the members
/// enumerated up to the certified stage, or over the class as approximated
/// by the certified number of exclusions, with sample complexity `m_d`.
#[derive(Clone, Debug, Default)]
pub struct TamePpac {
    pub constants: Constants,
}

impl TameRealizer<PpacInstance> for TamePpac {
    type Answer = (Learner, SampleComplexity);
    type Certificate = PpacCertificate;

    fn problem(&self) -> &'static str {
        "PPAC"
    }

    fn solve(&self, instance: &PpacInstance, cert: &PpacCertificate) -> Result<(Learner, SampleComplexity)> {
        let learner = match (&instance.class, cert) {
            (Presentation::Positive(c), PpacCertificate::Stage(stage)) => erm_positive_learner(Arc::clone(c), *stage),
            (Presentation::Negative(c), PpacCertificate::Entries(entries)) => {
                let trie = exclusions_at(&**c, entries.iter().copied());
                erm_full(Arc::new(NegativePrefixClass::new(trie)))?
            }
            _ => return Err(Error::TameDomain("certificate does not match the presentation".into())),
        };
        Ok((learner, SampleComplexity::formula(instance.d, &self.constants)))
    }
}

//! WKL ≤_sW RPAC, through the parallelized choice on two points.
//!
//! For each `k` the hypotheses `h_{k,0} = 0^{k+1}1·0^ω` and
//! `h_{k,1} = 0^{k+1}11·0^ω` encode the two possible answers. The concept
//! class gains `h_{k,b}` once `1-b` is known to be wrong, and the
//! hypothesis class loses `h_{k,b}` once `b` is known to be wrong, so on
//! the Dirac distribution at `(k+1, 1)` every good learner must return a
//! hypothesis whose bit `k+2` is a correct answer.

use std::sync::Arc;

use super::{ChoiceFamily, Reduction, TameRealizer};
use crate::bits::{word_index, Point, Word};
use crate::class::{FnPositive, NegativeClass, NegativePrefixClass, PositiveClass, ShrinkingNegative};
use crate::error::Result;
use crate::hypothesis::Hypothesis;
use crate::learning::{erm_full, Constants, Learner, SampleComplexity};
use crate::pairing::{cantor_pair, cantor_unpair};
use crate::risk::Sample;

/// `(C, H, d)` with `C` positively and `H` negatively presented.
#[derive(Clone)]
pub struct RpacInstance {
    pub concepts: Arc<dyn PositiveClass>,
    pub hypotheses: Arc<dyn NegativeClass>,
    pub d: u64,
}

/// `0^{k+1} 1 b`, the word isolating `h_{k,b}`.
fn code_word(k: u64, b: bool) -> Word {
    let mut w = Word::zeros(k as usize + 1);
    w.push(true);
    w.push(b);
    w
}

fn code_hypothesis(k: u64, b: bool) -> Hypothesis {
    Hypothesis::new(code_word(k, b), false)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct WklToRpac;

impl Reduction for WklToRpac {
    type Input = ChoiceFamily;
    type Instance = RpacInstance;
    type Answer = (Learner, SampleComplexity);
    type Output = Word;

    fn name(&self) -> &'static str {
        "wkl_to_rpac"
    }

    fn forward(&self, family: &ChoiceFamily) -> RpacInstance {
        let f = family.clone();
        let concepts = FnPositive::new(
            move |i| {
                let (k, s) = cantor_unpair(i);
                match f.removed_by(k, 2, s) {
                    Some(e) => code_hypothesis(k, e == 0),
                    None => Hypothesis::constant(false),
                }
            },
            None,
        );
        let f = family.clone();
        let hypotheses = ShrinkingNegative::new(move |s, w: &[bool]| {
            let Some(a) = w.iter().position(|&b| b) else {
                return true;
            };
            if a == 0 {
                return false;
            }
            let k = a as u64 - 1;
            let rest = &w[a + 1..];
            match rest.split_first() {
                None => true,
                Some((&b, tail)) => !tail.iter().any(|&x| x) && f.removed_by(k, 2, s) != Some(b as u64),
            }
        });
        RpacInstance { concepts: Arc::new(concepts), hypotheses: Arc::new(hypotheses), d: 1 }
    }

    fn backward(&self, (learner, m): &(Learner, SampleComplexity), budget: usize) -> Result<Word> {
        (0..budget as u64).map(|k| decode_rpac(learner, m, k)).collect::<Result<Vec<_>>>().map(Word::from_bits)
    }
}

/// Runs the learner on `n = m⟨2,2⟩` copies of `(k+1, 1)` and reads bit
/// `k+2` of its answer.
pub fn decode_rpac(learner: &Learner, m: &SampleComplexity, k: u64) -> Result<bool> {
    let z = cantor_pair(2, 2).expect("small pair");
    let n = m.at(z).max(1) as usize;
    let sample = Sample::new(vec![(k as Point + 1, true); n]);
    Ok(learner.respond(&sample)?.query(k as Point + 2))
}

/// Number of entries of the hypothesis class's negative information after
/// which every removal for the indices below `kmax` is visible.
pub fn rpac_certificate(family: &ChoiceFamily, kmax: u64) -> u64 {
    family
        .removals
        .iter()
        .filter(|r| r.m == 2 && r.n < kmax)
        .map(|r| {
            let n = word_index(&code_word(r.n, r.element == 1)).expect("short word");
            cantor_pair(n, r.stage).expect("small pair") + 1
        })
        .max()
        .unwrap_or(0)
}

/// RPAC on the certified sub-domain: empirical risk minimization over the
/// hypothesis class as approximated by its first `upto` exclusions, with
/// the sample complexity `m_d`.
#[derive(Clone, Debug, Default)]
pub struct TameRpac {
    pub constants: Constants,
}

impl TameRealizer<RpacInstance> for TameRpac {
    type Answer = (Learner, SampleComplexity);
    type Certificate = u64;

    fn problem(&self) -> &'static str {
        "RPAC"
    }

    fn solve(&self, instance: &RpacInstance, upto: &u64) -> Result<(Learner, SampleComplexity)> {
        let approx = NegativePrefixClass::from_presentation(&*instance.hypotheses, *upto);
        let learner = erm_full(Arc::new(approx))?;
        Ok((learner, SampleComplexity::formula(instance.d, &self.constants)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::exclusions_upto;
    use crate::gadgets::{run_reduction, Removal};
    use crate::vcdim::vcdim_truncated;

    fn family(removals: &[(u64, u64, u64)]) -> ChoiceFamily {
        ChoiceFamily::new(removals.iter().map(|&(n, element, stage)| Removal { n, m: 2, element, stage }).collect())
            .unwrap()
    }

    #[test]
    fn concept_class_gains_the_forced_code() {
        let f = family(&[(0, 0, 2)]);
        let inst = WklToRpac.forward(&f);
        let members: Vec<String> = (0..30)
            .map(|i| inst.concepts.member(i).to_string())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(members, ["011·0^ω", "·0^ω"]);
        assert!(vcdim_truncated(&*inst.concepts, 8) <= 1);
        let trie = exclusions_upto(&*inst.hypotheses, rpac_certificate(&f, 1));
        assert!(trie.covered(&code_word(0, false)));
        assert!(!trie.covered(&code_word(0, true)));
    }

    #[test]
    fn decoding_reads_the_surviving_element() {
        let f = family(&[(0, 0, 2), (2, 1, 5)]);
        let cert = rpac_certificate(&f, 10);
        let out = run_reduction(&WklToRpac, &TameRpac::default(), &f, &cert, 4).unwrap();
        assert!(out[0], "B_0 = {{1}}");
        assert!(!out[2], "B_2 = {{0}}");
        for k in 0..4 {
            assert!(f.contains(k, 2, out[k as usize] as u64));
        }
    }

    #[test]
    fn full_sets_accept_any_answer() {
        let f = family(&[]);
        let (a, m) = TameRpac::default().solve(&WklToRpac.forward(&f), &0).unwrap();
        assert_eq!(m.at(12), 16);
        // the erm tie-break picks the first code word above 0^4 1
        assert!(!decode_rpac(&a, &m, 3).unwrap());
    }
}

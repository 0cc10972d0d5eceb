//! Finitary DNC ≤_sW WIT⁺.
//!
//! For each `n` and `k ≥ 1` the class may contain
//! `0^{2^⟨n,k⟩} · bin_k(i) · 0^ω`, added when `i` is found missing from
//! `A_{n,2^k}`. Blocks for different `⟨n,k⟩` never overlap, so the VC
//! dimension is at most 1. A witness of arity `k` avoids every member's
//! trace on the block of `(n, k)`, so reading its value there in binary
//! gives an element of `A_{n,2^k}`.

use std::sync::Arc;

use super::{ChoiceFamily, Reduction, TameRealizer};
use crate::bits::{Point, Word};
use crate::class::{FnPositive, PositiveClass};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;
use crate::learning::Witness;
use crate::pairing::{cantor_pair, cantor_unpair};

/// `(C, d)` with `C` positively presented.
#[derive(Clone)]
pub struct WitInstance {
    pub class: Arc<dyn PositiveClass>,
    pub d: u64,
}

/// First position of the block of `(n, k)`. Blocks past the point domain
/// are invisible on it.
fn block_start(n: u64, k: u64) -> Result<Point> {
    let c = cantor_pair(n, k)?;
    (c < Point::BITS as u64).then(|| 1 << c).ok_or_else(|| Error::Range(format!("block of ({n},{k}) starts at 2^{c}")))
}

fn block_hypothesis(n: u64, k: u64, i: u64) -> Hypothesis {
    let Ok(start) = block_start(n, k) else {
        return Hypothesis::constant(false);
    };
    let bits = Word::binary(i as u128, k as usize);
    Hypothesis::program(format!("0^(2^<{n},{k}>)·{bits}·0^ω"), move |x: Point| {
        x.checked_sub(start).is_some_and(|o| o < k as Point && bits[o as usize])
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DncStarToWitness;

impl Reduction for DncStarToWitness {
    type Input = ChoiceFamily;
    type Instance = WitInstance;
    type Answer = Witness;
    /// `(2^k, p(0..budget))`.
    type Output = (u64, Vec<u64>);

    fn name(&self) -> &'static str {
        "dncstar_to_witness"
    }

    fn forward(&self, family: &ChoiceFamily) -> WitInstance {
        let f = family.clone();
        let class = FnPositive::new(
            move |i| {
                let (z, s) = cantor_unpair(i);
                let (n, km1) = cantor_unpair(z);
                let k = km1 + 1;
                if k >= 64 {
                    return Hypothesis::constant(false);
                }
                match f.removed_by(n, 1 << k, s) {
                    Some(e) => block_hypothesis(n, k, e),
                    None => Hypothesis::constant(false),
                }
            },
            None,
        );
        WitInstance { class: Arc::new(class), d: 1 }
    }

    fn backward(&self, f: &Witness, budget: usize) -> Result<(u64, Vec<u64>)> {
        let sol = decode_dncstar(f)?;
        let p = (0..budget as u64).map(|n| sol.value(n)).collect::<Result<_>>()?;
        Ok((sol.kpow, p))
    }
}

/// `⟨2^k, p⟩` read off a witness of arity `k`.
#[derive(Clone, Debug)]
pub struct DncSolution {
    pub kpow: u64,
    witness: Witness,
}

impl DncSolution {
    pub fn k(&self) -> u64 {
        self.witness.arity() as u64
    }

    /// `p(n)`, the number whose `k`-bit numeral is the witness value on
    /// the block of `(n, k)`.
    pub fn value(&self, n: u64) -> Result<u64> {
        let k = self.k();
        let start = block_start(n, k)?;
        let tuple: Vec<Point> = (0..k as Point).map(|t| start + t).collect();
        Ok(self.witness.eval(&tuple)?.value() as u64)
    }
}

pub fn decode_dncstar(f: &Witness) -> Result<DncSolution> {
    let k = f.arity();
    if k == 0 || k >= 64 {
        return Err(Error::Domain(format!("witness arity {k} outside 1..64")));
    }
    Ok(DncSolution { kpow: 1 << k, witness: f.clone() })
}

/// Enumeration index by which every removal from a set `A_{n,2^k}` has
/// entered the class.
pub fn dnc_certificate(family: &ChoiceFamily, k: u64) -> u64 {
    family
        .removals
        .iter()
        .filter(|r| k < 64 && r.m == 1 << k)
        .map(|r| cantor_pair(cantor_pair(r.n, k - 1).expect("small pair"), r.stage).expect("small pair"))
        .max()
        .unwrap_or(0)
}

/// WIT⁺ for classes whose members are all enumerated by the certified
/// index: on each tuple the witness returns the first labeling, in binary
/// order, that no enumerated member shows. The arity is `d + 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameWitPositive;

impl TameRealizer<WitInstance> for TameWitPositive {
    type Answer = Witness;
    type Certificate = u64;

    fn problem(&self) -> &'static str {
        "WIT+"
    }

    fn solve(&self, instance: &WitInstance, last: &u64) -> Result<Witness> {
        let arity = instance.d as usize + 1;
        if arity >= 64 {
            return Err(Error::Resource(format!("witness of arity {arity}")));
        }
        let members: Arc<Vec<Hypothesis>> = Arc::new((0..=*last).map(|i| instance.class.member(i)).collect());
        let description = format!("first labeling missed by members 0..={last}");
        Ok(Witness::new(arity, description, move |t: &[Point]| {
            let traces: std::collections::HashSet<Word> = members.iter().map(|h| h.trace(t)).collect();
            (0..1u64 << arity)
                .map(|v| Word::binary(v as u128, arity))
                .find(|b| !traces.contains(b))
                .ok_or_else(|| Error::Domain(format!("members shatter {t:?}")))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{run_reduction, Removal};
    use crate::learning::witness_refute;

    fn family(removals: &[(u64, u64, u64, u64)]) -> ChoiceFamily {
        ChoiceFamily::new(removals.iter().map(|&(n, m, element, stage)| Removal { n, m, element, stage }).collect())
            .unwrap()
    }

    #[test]
    fn constant_witness_on_the_full_family() {
        let sol = decode_dncstar(&Witness::constant("1".parse().unwrap())).unwrap();
        assert_eq!(sol.kpow, 2);
        for n in 0..10 {
            assert_eq!(sol.value(n).unwrap(), 1);
        }
    }

    #[test]
    fn removing_zero_from_a_pair_adds_the_zero_hypothesis() {
        let f = family(&[(0, 2, 0, 0)]);
        let inst = DncStarToWitness.forward(&f);
        let h = inst.class.member(0);
        assert_eq!(h.prefix(8).to_string(), "00000000");
    }

    #[test]
    fn binary_numerals() {
        assert_eq!(Word::binary(2, 2).to_string(), "10");
        let h = block_hypothesis(0, 2, 2);
        // ⟨0,2⟩ = 5, so the block sits at 32 and 33
        assert!(h.query(32) && !h.query(33) && !h.query(31));
    }

    #[test]
    fn tame_witness_decodes_into_the_sets() {
        let f = family(&[(0, 4, 0, 1), (1, 4, 3, 0), (2, 4, 1, 4), (9, 4, 0, 2), (0, 2, 1, 3)]);
        let cert = dnc_certificate(&f, 2);
        let (kpow, p) = run_reduction(&DncStarToWitness, &TameWitPositive, &f, &cert, 10).unwrap();
        assert_eq!(kpow, 4);
        for (n, &v) in p.iter().enumerate() {
            assert!(f.contains(n as u64, 4, v), "p({n}) = {v}");
        }
        assert_ne!(p[0], 0);
        let inst = DncStarToWitness.forward(&f);
        let w = TameWitPositive.solve(&inst, &cert).unwrap();
        assert_eq!(witness_refute(&*inst.class, &w, 12).unwrap(), None);
    }
}

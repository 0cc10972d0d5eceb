mod common;

use std::sync::Arc;

use num::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_distribution, random_model};
use weipac_core::bits::{Point, Word};
use weipac_core::hypothesis::{EventuallyConstant, Hypothesis};
use weipac_core::risk::{
    empirical_risk, inf_risk_exact, inf_risk_stream, parse_rational, true_risk, Atom, Distribution, Rational, Sample,
};

fn hypothesis() -> impl Strategy<Value = EventuallyConstant> {
    (prop::collection::vec(any::<bool>(), 0..10), any::<bool>())
        .prop_map(|(bits, tail)| EventuallyConstant::new(Word::from_bits(bits), tail))
}

fn sample() -> impl Strategy<Value = Sample> {
    prop::collection::vec((0u128..12, any::<bool>()), 1..12).prop_map(Sample::new)
}

fn distribution() -> impl Strategy<Value = Distribution> {
    any::<u64>().prop_map(|s| random_distribution(&mut ChaCha8Rng::seed_from_u64(s), 4, 12))
}

/// The bit of `word · tail^ω` at `x`, read off the raw parts.
fn raw_bit(h: &EventuallyConstant, x: Point) -> bool {
    h.word().get(x as usize).copied().unwrap_or(h.tail())
}

#[test]
fn inf_risk_stream_is_antitone_and_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(236);
    for _ in 0..120 {
        let m = random_model(&mut rng, 6);
        let g = Arc::new(m.generator.clone());
        let dist = random_distribution(&mut rng, 3, 8);
        let pos = g.positive().unwrap();
        // member words up to length 7 lie below index 2^8
        let horizon = pos.period().unwrap_or(1 << 8);
        let stages: std::collections::BTreeSet<u64> =
            (0..16).chain((4..9).map(|e| 1 << e)).chain([horizon, horizon + 3]).collect();
        let stream: Vec<Rational> = stages.iter().map(|&s| inf_risk_stream(&*pos, &dist, s)).collect();
        let last = *stages.last().unwrap();
        assert!(stream.windows(2).all(|p| p[1] <= p[0]), "{} not antitone", m.generator);
        let exact = inf_risk_exact(&*g.full(), &dist).unwrap();
        assert_eq!(*stream.last().unwrap(), exact, "{} on {} at stage {last}", m.generator, dist.to_json());
        assert_eq!(exact, m.inf_risk(&dist));
    }
}

proptest! {
    #[test]
    fn risks_lie_in_the_unit_interval(h in hypothesis(), s in sample(), d in distribution()) {
        let h = Hypothesis::Const(h);
        let e = empirical_risk(&s, &h).unwrap();
        let t = true_risk(&d, &h);
        for r in [e, t] {
            prop_assert!(r >= Rational::zero() && r <= Rational::one());
        }
    }

    #[test]
    fn empirical_risk_counts_mistakes(h in hypothesis(), s in sample()) {
        let wrong = s.iter().filter(|&&(x, y)| raw_bit(&h, x) != y).count();
        let r = empirical_risk(&s, &Hypothesis::Const(h)).unwrap();
        prop_assert_eq!(r, Rational::new(wrong.into(), s.len().into()));
    }

    #[test]
    fn true_risk_is_the_expected_mismatch(h in hypothesis(), d in distribution()) {
        // E[1{h(x) ≠ y}] over a common-denominator expansion of the atoms
        let denom = d.atoms().iter().fold(num::BigInt::one(), |acc, a| num::integer::lcm(acc, a.p.denom().clone()));
        let mut hits = num::BigInt::zero();
        for a in d.atoms() {
            let copies = (&a.p * Rational::from_integer(denom.clone())).to_integer();
            if raw_bit(&h, a.x) != a.y {
                hits += copies;
            }
        }
        prop_assert_eq!(true_risk(&d, &Hypothesis::Const(h)), Rational::new(hits, denom));
    }

    #[test]
    fn validator_accepts_exactly_the_probability_vectors(
        raw in prop::collection::vec((0u128..4, any::<bool>(), -2i64..6), 0..5),
        normalize in any::<bool>(),
    ) {
        let total: i64 = raw.iter().map(|a| a.2).sum();
        let atoms: Vec<Atom> = raw
            .iter()
            .map(|&(x, y, w)| {
                let denom = if normalize && total > 0 { total } else { 4 };
                let p = Rational::new(w.into(), denom.into());
                Atom { x, y, p }
            })
            .collect();
        let mut keys: Vec<(Point, bool)> = atoms.iter().map(|a| (a.x, a.y)).collect();
        keys.sort();
        keys.dedup();
        let sum = atoms.iter().fold(Rational::zero(), |acc, a| acc + &a.p);
        let valid = !atoms.is_empty()
            && atoms.iter().all(|a| a.p > Rational::zero())
            && keys.len() == atoms.len()
            && sum.is_one();
        prop_assert_eq!(Distribution::new(atoms).is_ok(), valid);
    }

    #[test]
    fn rationals_parse_their_display(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn inf_risk_on_random_dimension_zero_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let bits = (0..rng.random_range(0..6)).map(|_| rng.random_bool(0.5)).collect();
        let h = EventuallyConstant::new(Word::from_bits(bits), rng.random_bool(0.5));
        let g = Arc::new(weipac_core::class::ClassGenerator::members(vec![h.clone()]));
        let d = random_distribution(&mut rng, 3, 8);
        assert_eq!(inf_risk_exact(&*g.full(), &d).unwrap(), true_risk(&d, &Hypothesis::Const(h)));
    }
}

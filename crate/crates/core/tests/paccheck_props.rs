mod common;

use std::sync::Arc;

use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_distribution, random_model, random_model_with, success_mass, two_pow_neg, Model};
use weipac_core::bits::Word;
use weipac_core::class::{ClassGenerator, FullClass};
use weipac_core::hypothesis::{EventuallyConstant, Hypothesis};
use weipac_core::learning::{
    erm_full, learner_from_witness, witness_from_negative, Constants, Learner, SampleComplexity, StageSchedule,
};
use weipac_core::paccheck::{pac_check_exact, pac_check_mc, refute_learner, verify_evidence, Evidence};
use weipac_core::pairing::cantor_pair;
use weipac_core::risk::Rational;

fn random_learner(rng: &mut ChaCha8Rng) -> Learner {
    if rng.random_bool(0.5) {
        let bits = (0..rng.random_range(0..5)).map(|_| rng.random_bool(0.5)).collect();
        Learner::constant(Hypothesis::Const(EventuallyConstant::new(Word::from_bits(bits), rng.random_bool(0.5))))
    } else {
        let other = random_model(rng, 4);
        erm_full(Arc::new(other.generator).full()).unwrap()
    }
}

#[test]
fn exact_success_and_failure_partition_the_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(576);
    for _ in 0..60 {
        let m = random_model(&mut rng, 5);
        let learner = random_learner(&mut rng);
        let dist = random_distribution(&mut rng, 3, 6);
        let (i, j, n) = (rng.random_range(0..4), rng.random_range(0..4), rng.random_range(0..4));
        let v = pac_check_exact(&*Arc::new(m.generator.clone()).full(), &learner, &dist, i, j, n).unwrap();
        let inf = m.inf_risk(&dist);
        assert_eq!(v.inf_risk, inf);
        let success = success_mass(&learner, &dist, n, &inf, &two_pow_neg(i)).unwrap();
        let failure = success_mass(&learner, &dist, n, &(Rational::one() + Rational::one()), &Rational::one()).unwrap()
            - &success;
        assert_eq!(v.success, success, "{} on {}", m.generator, dist.to_json());
        assert!((v.success + failure).is_one());
    }
}

#[test]
fn monte_carlo_agrees_with_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(577);
    for t in 0..32 {
        let m = random_model(&mut rng, 5);
        let class = Arc::new(m.generator.clone()).full();
        let learner = random_learner(&mut rng);
        let dist = random_distribution(&mut rng, 3, 6);
        let (i, j, n) = (rng.random_range(0..4), rng.random_range(0..4), rng.random_range(1..4));
        let exact = pac_check_exact(&*class, &learner, &dist, i, j, n).unwrap();
        let mc = pac_check_mc(&*class, &learner, &dist, i, j, n, 10_000, t, None).unwrap();
        let p = num::ToPrimitive::to_f64(&exact.success).unwrap();
        assert!(
            mc.interval.0 <= p && p <= mc.interval.1,
            "#{t}: exact {p} outside [{}, {}] for {} on {}",
            mc.interval.0,
            mc.interval.1,
            m.generator,
            dist.to_json()
        );
    }
}

#[test]
fn monte_carlo_is_deterministic_in_the_seed() {
    let m = random_model(&mut ChaCha8Rng::seed_from_u64(3), 5);
    let class = Arc::new(m.generator.clone()).full();
    let learner = erm_full(class.clone()).unwrap();
    let dist = random_distribution(&mut ChaCha8Rng::seed_from_u64(4), 3, 6);
    let a = pac_check_mc(&*class, &learner, &dist, 1, 1, 3, 2000, 9, Some(1)).unwrap();
    let b = pac_check_mc(&*class, &learner, &dist, 1, 1, 3, 2000, 9, Some(4)).unwrap();
    assert_eq!(a, b);
}

/// Re-derives evidence with the model oracles: a range violation must
/// really leave `H`, and a PAC failure must exceed `2^{-j}` against the
/// true infimum over `C`.
fn evidence_is_sound(c: &Model, h: &ClassGenerator, learner: &Learner, m: &SampleComplexity, ev: &Evidence) -> bool {
    match ev {
        Evidence::OutsideRange { sample, excluded, .. } => {
            learner.respond(sample).unwrap().prefix(excluded.len()) == *excluded && !h.tree_query(excluded)
        }
        Evidence::PacFailure { dist, i, j, n, .. } => {
            let z = cantor_pair(*i, *j).unwrap();
            let success = success_mass(learner, dist, *n, &c.inf_risk(dist), &two_pow_neg(*i)).unwrap();
            *n as u64 >= m.at(z) && Rational::one() - success > two_pow_neg(*j)
        }
    }
}

#[test]
fn refuter_evidence_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(579);
    let mut found = [0usize; 2];
    for _ in 0..80 {
        let c = random_model(&mut rng, 4);
        let h = if rng.random_bool(0.5) { c.generator.clone() } else { random_model(&mut rng, 4).generator };
        let h = Arc::new(h);
        if h.is_empty() {
            continue;
        }
        let learner = random_learner(&mut rng);
        let m = SampleComplexity::constant(rng.random_range(0..3));
        let pos = Arc::new(c.generator.clone()).positive().unwrap();
        if let Some(ev) = refute_learner(&*pos, &*h.negative(), &learner, &m, 400).unwrap() {
            assert!(verify_evidence(&*pos, &learner, &m, &ev).unwrap());
            assert!(evidence_is_sound(&c, &h, &learner, &m, &ev), "{} / {}: {ev:?}", c.generator, h);
            found[matches!(ev, Evidence::PacFailure { .. }) as usize] += 1;
        }
    }
    // both kinds of evidence occur in this corpus
    assert!(found[0] > 0 && found[1] > 0, "{found:?}");
}

#[test]
fn pipeline_learners_are_not_refuted() {
    let mut rng = ChaCha8Rng::seed_from_u64(580);
    let mut tested = 0;
    while tested < 20 {
        let model = random_model_with(&mut rng, 5, 0.3);
        let d = model.dim(8);
        if d > 2 {
            continue;
        }
        let g = Arc::new(model.generator.clone());
        let f = witness_from_negative(g.negative(), d as usize, StageSchedule::default());
        let (learner, m) = learner_from_witness(&f, &Constants::default());
        // the learner is improper, so it is judged relative to all of Cantor space
        let everything = Arc::new(ClassGenerator::explicit_negative(Vec::new()));
        let ev = refute_learner(&*g.positive().unwrap(), &*everything.negative(), &learner, &m, 1000).unwrap();
        assert!(ev.is_none(), "{}: {ev:?}", model.generator);
        tested += 1;
    }
}

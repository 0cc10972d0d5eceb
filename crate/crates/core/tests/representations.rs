mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{prefix_of, random_model, word_bits};
use weipac_core::bits::{word_at, word_index, Word};
use weipac_core::class::{
    exclusions_upto, negative_to_positive_stage, positive_to_negative_stage, ClassGenerator, CoverTrie, FullClass,
    NegativePrefixClass,
};
use weipac_core::conat::{decode_name, ConatName};
use weipac_core::pairing::{cantor_pair, cantor_unpair, decode_sequence, encode_sequence};

const SWEEP: usize = 10;

fn all_words(max: usize) -> impl Iterator<Item = Word> {
    (0..=max).flat_map(Word::all_of_length)
}

/// Checks prefix closure and prunedness of `class` on all words up to
/// `depth`.
fn assert_pruned(class: &dyn FullClass, depth: usize) {
    for w in all_words(depth) {
        if !class.tree_query(&w) {
            continue;
        }
        if !w.is_empty() {
            assert!(class.tree_query(&w[..w.len() - 1]), "{w} is alive but its parent is not");
        }
        assert!(
            class.tree_query(&w.child(false)) || class.tree_query(&w.child(true)),
            "{w} is alive without an alive child"
        );
    }
}

#[test]
fn cantor_pairing_round_trips_on_the_square() {
    let mut seen = std::collections::HashSet::new();
    for n in 0..=1000 {
        for k in 0..=1000 {
            let z = cantor_pair(n, k).unwrap();
            assert_eq!(cantor_unpair(z), (n, k));
            assert!(seen.insert(z));
        }
    }
}

#[test]
fn cantor_pairing_is_onto_an_initial_segment() {
    for z in 0..100_000 {
        let (n, k) = cantor_unpair(z);
        assert_eq!(cantor_pair(n, k).unwrap(), z);
    }
}

#[test]
fn presentations_agree_on_random_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(95);
    // enumerations long enough to reach every word of length ≤ SWEEP
    let horizon = (1u64 << (SWEEP + 1)) - 1;
    for _ in 0..100 {
        let m = random_model(&mut rng, 8);
        let g = Arc::new(m.generator.clone());
        let pos = g.positive().unwrap();
        let mut alive: BTreeSet<Word> = BTreeSet::new();
        for i in 0..pos.refutation_horizon(SWEEP).min(horizon) {
            let h = pos.member(i);
            for n in 0..=SWEEP {
                alive.insert(h.prefix(n));
            }
        }
        let cover = exclusions_upto(&*g.negative(), horizon);
        for w in all_words(SWEEP) {
            let full = g.tree_query(&w);
            let model = m.members.iter().any(|mem| prefix_of(mem, w.len()) == word_bits(&w));
            assert_eq!(full, model, "{}: full verdict on {w}", m.generator);
            assert_eq!(full, alive.contains(&w), "{}: positive verdict on {w}", m.generator);
            assert_eq!(full, !cover.covered(&w), "{}: negative verdict on {w}", m.generator);
        }
    }
}

#[test]
fn generators_are_pruned_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for _ in 0..100 {
        let m = random_model(&mut rng, 8);
        assert_pruned(&m.generator, SWEEP);
    }
    for _ in 0..50 {
        let (a, b) = (random_model(&mut rng, 4), random_model(&mut rng, 4));
        assert_pruned(&weipac_core::learning::interleave_classes(a.generator, b.generator), SWEEP);
    }
}

#[test]
fn cover_tries_give_pruned_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(98);
    for _ in 0..200 {
        let words: Vec<Word> = (0..rng.random_range(0..6))
            .map(|_| {
                let len = rng.random_range(1..=6);
                Word::from_bits((0..len).map(|_| rng.random_bool(0.5)).collect())
            })
            .collect();
        let class = NegativePrefixClass::new(CoverTrie::from_words(&words));
        assert_pruned(&class, SWEEP);
        let explicit = ClassGenerator::explicit_negative(words.clone());
        for w in all_words(8) {
            assert_eq!(class.tree_query(&w), explicit.tree_query(&w));
        }
    }
}

#[test]
fn staged_conversions_stabilize() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let m = random_model(&mut rng, 4);
        let g = Arc::new(m.generator.clone());
        let depth = 5;
        let truth: BTreeSet<Word> = m.prefixes(depth).into_iter().map(Word::from_bits).collect();
        let pos = g.positive().unwrap();
        let from = pos.period().unwrap_or(1 << (depth + 1)).max(depth as u64);
        for s in from..from + 3 {
            let snap = positive_to_negative_stage(&*pos, s);
            assert_eq!(snap.members_at(depth), truth, "{} at stage {s}", m.generator);
        }
    }
    for _ in 0..60 {
        let words: Vec<Word> = (0..rng.random_range(0..4))
            .map(|_| Word::from_bits((0..rng.random_range(1..=4)).map(|_| rng.random_bool(0.5)).collect()))
            .collect();
        let g = Arc::new(ClassGenerator::explicit_negative(words.clone()));
        if g.is_empty() {
            continue;
        }
        let truth: BTreeSet<Word> =
            Word::all_of_length(4).filter(|w| !words.iter().any(|e| e.is_prefix_of(w))).collect();
        for s in 4..8 {
            let snap = negative_to_positive_stage(&*g.negative(), s);
            assert_eq!(snap.members_at(4), truth, "{words:?} at stage {s}");
        }
    }
}

proptest! {
    #[test]
    fn pairing_round_trips(n in 0u64..1 << 31, k in 0u64..1 << 31) {
        let z = cantor_pair(n, k).unwrap();
        prop_assert_eq!(cantor_unpair(z), (n, k));
    }

    #[test]
    fn sequences_round_trip(seq in prop::collection::vec(0u64..6, 0..5)) {
        let code = encode_sequence(&seq).unwrap();
        prop_assert_eq!(decode_sequence(code), seq);
    }

    #[test]
    fn sequence_codes_are_onto(code in 0u64..100_000) {
        prop_assert_eq!(encode_sequence(&decode_sequence(code)).unwrap(), code);
    }

    #[test]
    fn word_numbering_round_trips(n in 0u64..1 << 40) {
        let w = word_at(n);
        prop_assert_eq!(word_index(&w).unwrap(), n);
    }

    #[test]
    fn word_numbering_is_length_lex(a in 0u64..5000, b in 0u64..5000) {
        let (u, v) = (word_at(a), word_at(b));
        let order = u.len().cmp(&v.len()).then_with(|| u.cmp(&v));
        prop_assert_eq!(order, a.cmp(&b));
    }

    #[test]
    fn conat_names_decode(n in 0u64..40, extra in 0usize..20) {
        let name = ConatName::exact(n);
        let prefix = name.name_prefix(n as usize + 1 + extra).unwrap();
        prop_assert_eq!(decode_name(&prefix), Some(n));
        let short = name.name_prefix(n as usize).unwrap();
        prop_assert_eq!(decode_name(&short), None);
    }
}

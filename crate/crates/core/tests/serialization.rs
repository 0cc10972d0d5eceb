mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_distribution, random_model};
use weipac_core::bits::{Point, Word};
use weipac_core::class::{ClassGenerator, FullClass};
use weipac_core::hypothesis::EventuallyConstant;
use weipac_core::learning::{interleave_classes, Witness};
use weipac_core::risk::{Distribution, Sample};

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..max).prop_map(Word::from_bits)
}

fn same_tree(a: &ClassGenerator, b: &ClassGenerator, depth: usize) -> bool {
    (0..=depth).flat_map(Word::all_of_length).all(|w| a.tree_query(&w) == b.tree_query(&w))
}

proptest! {
    #[test]
    fn classes_round_trip(s1 in any::<u64>(), s2 in any::<u64>(), interleave in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s1);
        let mut g = random_model(&mut rng, 6).generator;
        if interleave {
            g = interleave_classes(g, random_model(&mut ChaCha8Rng::seed_from_u64(s2), 3).generator);
        }
        let text = g.to_json().unwrap();
        let back = ClassGenerator::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text);
        prop_assert!(same_tree(&g, &back, 9));
    }

    #[test]
    fn negative_classes_round_trip(ws in prop::collection::vec(word(6), 0..5)) {
        let g = ClassGenerator::explicit_negative(ws);
        let back = ClassGenerator::from_json(&g.to_json().unwrap()).unwrap();
        prop_assert!(same_tree(&g, &back, 8));
    }

    #[test]
    fn hypotheses_round_trip(w in word(12), tail in any::<bool>()) {
        let h = EventuallyConstant::new(w, tail);
        let text = serde_json::to_string(&h).unwrap();
        let back: EventuallyConstant = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(back.to_string(), h.to_string());
    }

    #[test]
    fn distributions_round_trip(seed in any::<u64>()) {
        let d = random_distribution(&mut ChaCha8Rng::seed_from_u64(seed), 5, 20);
        prop_assert_eq!(Distribution::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn samples_round_trip(items in prop::collection::vec((0u128..1000, any::<bool>()), 0..10)) {
        let s = Sample::new(items);
        prop_assert_eq!(Sample::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn table_witnesses_round_trip(
        arity in 1usize..4,
        rows in prop::collection::vec((prop::collection::btree_set(0u64..20, 3), any::<u8>()), 0..6),
        default in any::<u8>(),
    ) {
        let bits = |b: u8| Word::from_bits((0..arity).map(|i| b >> i & 1 == 1).collect());
        let entries: BTreeMap<Vec<Point>, Word> = rows
            .into_iter()
            .map(|(t, b)| (t.into_iter().take(arity).map(Point::from).collect(), bits(b)))
            .collect();
        let f = Witness::table(arity, bits(default), entries.clone()).unwrap();
        let back = Witness::from_json(&f.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.to_json(), f.to_json());
        for t in entries.keys().cloned().chain([(0..arity as Point).collect()]) {
            prop_assert_eq!(back.eval(&t).unwrap(), f.eval(&t).unwrap());
        }
    }

    #[test]
    fn constant_witnesses_round_trip(bits in word(5).prop_filter("nonempty", |w| !w.is_empty())) {
        let f = Witness::constant(bits.clone());
        let back = Witness::from_json(&f.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.arity(), bits.len());
        let t: Vec<Point> = (0..bits.len() as Point).collect();
        prop_assert_eq!(back.eval(&t).unwrap(), bits);
    }
}

#[test]
fn computed_witnesses_have_no_file_form() {
    let f = Witness::new(1, "parity", |t: &[Point]| Ok(Word::from_bits(vec![t[0].is_multiple_of(2)])));
    assert!(f.to_json().is_none());
}

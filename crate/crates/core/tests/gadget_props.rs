mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{shatter_dim, sort_answer, word_bits};
use weipac_core::bits::{BitStream, NatStream, PeriodicBits, PeriodicNats, Word};
use weipac_core::class::words_at_depth;
use weipac_core::gadgets::{
    run_reduction, Reduction, SortToSup, SortToVcdim, SupCertificate, SupToSort, TameSort, TameSup, TameVcdimFull,
    VcdimCertificate,
};

/// 64 bits with at most 8 zeros, followed by 1s.
fn sparse_zeros() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::btree_set(0usize..64, 0..=8).prop_map(|zeros| (0..64).map(|i| !zeros.contains(&i)).collect())
}

fn stream(bits: &[bool]) -> Arc<dyn BitStream> {
    Arc::new(PeriodicBits::new(Word::from_bits(bits.to_vec()), "1".parse().unwrap()).unwrap())
}

proptest! {
    #[test]
    fn sort_through_sup(bits in sparse_zeros()) {
        let zeros = bits.iter().filter(|&&b| !b).count() as u64;
        let input = stream(&bits);
        let cert = SupCertificate::AttainedBy(bits.iter().rposition(|&b| !b).unwrap_or(0));
        let out = run_reduction(&SortToSup, &TameSup, &input, &cert, 64).unwrap();
        prop_assert_eq!(out.to_string(), sort_answer(Some(zeros), 64));
    }

    #[test]
    fn sup_through_sort(prefix in prop::collection::vec(0u64..=8, 0..20), repeat in prop::collection::vec(0u64..=8, 1..4)) {
        let sup = prefix.iter().chain(&repeat).copied().max().unwrap();
        let input: Arc<dyn NatStream> = Arc::new(PeriodicNats::new(prefix, repeat).unwrap());
        let out = run_reduction(&SupToSort, &TameSort::default(), &input, &Some(sup), 64).unwrap();
        prop_assert_eq!(out.to_string(), sort_answer(Some(sup), 64));
    }

    #[test]
    fn vcdim_gadget_class_has_the_zero_count(zeros in prop::collection::btree_set(0usize..12, 0..=4)) {
        let bits: Vec<bool> = (0..12).map(|i| !zeros.contains(&i)).collect();
        let input = stream(&bits);
        let class = SortToVcdim.forward(&input);
        let words: Vec<Vec<bool>> = words_at_depth(&*class, 12).iter().map(word_bits).collect();
        prop_assert_eq!(shatter_dim(&words, 12), zeros.len() as u64);
        let cert = VcdimCertificate::Depth(zeros.iter().max().map_or(0, |z| z + 1));
        let out = run_reduction(&SortToVcdim, &TameVcdimFull, &input, &cert, 20).unwrap();
        prop_assert_eq!(out.to_string(), sort_answer(Some(zeros.len() as u64), 20));
    }
}

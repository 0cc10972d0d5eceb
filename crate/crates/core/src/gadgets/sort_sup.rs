//! SORT ≡_sW sup.

use std::sync::{Arc, Mutex};

use super::Reduction;
use crate::bits::{BitStream, FnBits, FnNats, NatStream, PeriodicBits, Word};
use crate::conat::ConatName;
use crate::error::Result;

/// SORT ≤_sW sup: `q(i)` is the number of zeros in `p|_{i+1}`, and the
/// supremum `n` of `q` answers SORT as `0^n 1^ω` (`0^ω` for ∞).
#[derive(Clone, Copy, Debug, Default)]
pub struct SortToSup;

impl Reduction for SortToSup {
    type Input = Arc<dyn BitStream>;
    type Instance = Arc<dyn NatStream>;
    type Answer = ConatName;
    type Output = Word;

    fn name(&self) -> &'static str {
        "sort_to_sup"
    }

    fn forward(&self, p: &Arc<dyn BitStream>) -> Arc<dyn NatStream> {
        let p = Arc::clone(p);
        let counts = Mutex::new(Vec::<u64>::new());
        Arc::new(FnNats::new(move |i| {
            let mut c = counts.lock().unwrap();
            while c.len() <= i {
                let j = c.len();
                let prev = c.last().copied().unwrap_or(0);
                c.push(prev + !p.bit(j) as u64);
            }
            c[i]
        }))
    }

    fn backward(&self, answer: &ConatName, budget: usize) -> Result<Word> {
        answer.name_prefix(budget)
    }
}

/// sup ≤_sW SORT: one 1 per input position after the first, and one 0 per
/// unit by which the running maximum grows, so the output has exactly
/// `sup p` zeros.
#[derive(Clone, Copy, Debug, Default)]
pub struct SupToSort;

impl Reduction for SupToSort {
    type Input = Arc<dyn NatStream>;
    type Instance = Arc<dyn BitStream>;
    type Answer = PeriodicBits;
    type Output = Word;

    fn name(&self) -> &'static str {
        "sup_to_sort"
    }

    fn forward(&self, p: &Arc<dyn NatStream>) -> Arc<dyn BitStream> {
        let p = Arc::clone(p);
        // emitted bits, the next input position and the running maximum
        let state = Mutex::new((Vec::<bool>::new(), 0usize, 0u64));
        Arc::new(FnBits::new(move |i| {
            let mut s = state.lock().unwrap();
            let (out, next, max) = &mut *s;
            while out.len() <= i {
                let v = p.at(*next);
                if *next > 0 {
                    out.push(true);
                }
                out.extend(std::iter::repeat_n(false, v.saturating_sub(*max) as usize));
                *max = v.max(*max);
                *next += 1;
            }
            out[i]
        }))
    }

    fn backward(&self, sorted: &PeriodicBits, budget: usize) -> Result<Word> {
        Ok(sorted.prefix(budget))
    }
}

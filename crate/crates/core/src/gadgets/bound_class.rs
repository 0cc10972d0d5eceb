//! B ≤_W PPAC with full information and without a dimension bound.
//!
//! The class `0^{n_1}·{0,1}·0^{n_2}·{0,1}···` opens one free coordinate
//! for each unit of the running maximum of the input, so its VC
//! dimension is `max p`. Any sample complexity `m` returned for it
//! satisfies `⌈m⟨0,0⟩ / C⌉ ≥ VCdim`, an upper bound on the input.

use std::sync::{Arc, Mutex};

use super::{Reduction, TameRealizer};
use crate::bits::NatStream;
use crate::class::{words_at_depth, FnFull, FullClass};
use crate::error::Result;
use crate::learning::{erm_full, vcbound_from_samplecomplexity, Constants, Learner, SampleComplexity};
use crate::vcdim::vcdim_of_words;

#[derive(Clone, Debug, Default)]
pub struct BoundToClass {
    pub constants: Constants,
}

/// Free flags and the running maximum, extended on demand.
struct Layout {
    p: Arc<dyn NatStream>,
    free: Vec<bool>,
    opened: u64,
    max: u64,
}

impl Layout {
    fn is_free(&mut self, i: usize) -> bool {
        while self.free.len() <= i {
            let j = self.free.len();
            self.max = self.max.max(self.p.at(j));
            let f = self.opened < self.max;
            self.opened += f as u64;
            self.free.push(f);
        }
        self.free[i]
    }
}

impl Reduction for BoundToClass {
    type Input = Arc<dyn NatStream>;
    type Instance = Arc<dyn FullClass>;
    type Answer = (Learner, SampleComplexity);
    type Output = u64;

    fn name(&self) -> &'static str {
        "bound_to_class"
    }

    fn forward(&self, p: &Arc<dyn NatStream>) -> Arc<dyn FullClass> {
        let layout = Mutex::new(Layout { p: Arc::clone(p), free: Vec::new(), opened: 0, max: 0 });
        Arc::new(FnFull::new("free coordinates up to max p", move |w: &[bool]| {
            let mut l = layout.lock().unwrap();
            w.iter().enumerate().all(|(i, &b)| !b || l.is_free(i))
        }))
    }

    fn backward(&self, (_, m): &(Learner, SampleComplexity), _budget: usize) -> Result<u64> {
        Ok(vcbound_from_samplecomplexity(m, &self.constants))
    }
}

/// A depth past the last free coordinate of the emitted class, for an
/// input whose maximum `max` is attained by index `by`.
pub fn bound_class_certificate(p: &Arc<dyn NatStream>, by: usize) -> usize {
    let max = (0..=by).map(|i| p.at(i)).max().unwrap_or(0);
    let mut layout = Layout { p: Arc::clone(p), free: Vec::new(), opened: 0, max: 0 };
    let mut i = 0;
    while layout.opened < max {
        layout.is_free(i);
        i += 1;
    }
    i
}

/// Proper PAC learning with full information on the certified sub-domain:
/// the dimension `d` is read off the words at the certified depth, the
/// learner is ERM and the sample complexity is `max(m_d, ⌈M_d⌉)`, which
/// honors the lower-bound family the answer translator relies on.
#[derive(Clone, Debug, Default)]
pub struct TamePpacFull {
    pub constants: Constants,
}

impl TameRealizer<Arc<dyn FullClass>> for TamePpacFull {
    type Answer = (Learner, SampleComplexity);
    type Certificate = usize;

    fn problem(&self) -> &'static str {
        "PPAC_inf"
    }

    fn solve(&self, class: &Arc<dyn FullClass>, depth: &usize) -> Result<(Learner, SampleComplexity)> {
        let d = vcdim_of_words(&words_at_depth(&**class, *depth), *depth)?;
        Ok((erm_full(Arc::clone(class))?, SampleComplexity::honoring(d, &self.constants)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{PeriodicNats, Word};
    use crate::gadgets::run_reduction;

    fn nats(prefix: &[u64], repeat: &[u64]) -> Arc<dyn NatStream> {
        Arc::new(PeriodicNats::new(prefix.to_vec(), repeat.to_vec()).unwrap())
    }

    #[test]
    fn constant_two_opens_two_coordinates() {
        let p = nats(&[], &[2]);
        let class = BoundToClass::default().forward(&p);
        let words = words_at_depth(&*class, 6);
        assert_eq!(vcdim_of_words(&words, 6).unwrap(), 2);
        assert_eq!(words.len(), 4);
        assert_eq!(bound_class_certificate(&p, 0), 2);
    }

    #[test]
    fn zero_stream_gives_the_zero_class() {
        let class = BoundToClass::default().forward(&nats(&[], &[0]));
        assert_eq!(words_at_depth(&*class, 4), vec![Word::zeros(4)]);
    }

    #[test]
    fn coordinates_open_as_the_maximum_grows() {
        let p = nats(&[1, 0, 0, 3], &[2]);
        let class = BoundToClass::default().forward(&p);
        let free: Vec<bool> = (0..7)
            .map(|i| {
                let mut w = Word::zeros(i);
                w.push(true);
                class.tree_query(&w)
            })
            .collect();
        assert_eq!(free, [true, false, false, true, true, false, false]);
        let g = BoundToClass::default();
        let cert = bound_class_certificate(&p, 3);
        assert_eq!(run_reduction(&g, &TamePpacFull::default(), &p, &cert, 0).unwrap(), 3);
    }
}

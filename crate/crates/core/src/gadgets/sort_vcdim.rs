//! SORT ≤_sW VCdim with full information.

use std::sync::Arc;

use super::{Reduction, TameRealizer, VcdimCertificate};
use crate::bits::{BitStream, Word};
use crate::class::{FnFull, FullClass};
use crate::conat::{ConatCertificate, ConatName};
use crate::error::Result;
use crate::vcdim::vcdim_stream_full;

/// `{ h : p(i) = 1 ⟹ h(i) = 0 }`: the zeros of `p` are the free
/// coordinates, so the VC dimension is the number of zeros.
pub fn sort_class(p: Arc<dyn BitStream>) -> Arc<dyn FullClass> {
    Arc::new(FnFull::new("free where p is 0", move |w: &[bool]| w.iter().enumerate().all(|(i, &b)| !b || !p.bit(i))))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SortToVcdim;

impl Reduction for SortToVcdim {
    type Input = Arc<dyn BitStream>;
    type Instance = Arc<dyn FullClass>;
    type Answer = ConatName;
    type Output = Word;

    fn name(&self) -> &'static str {
        "sort_to_vcdim"
    }

    fn forward(&self, p: &Arc<dyn BitStream>) -> Arc<dyn FullClass> {
        sort_class(Arc::clone(p))
    }

    fn backward(&self, answer: &ConatName, budget: usize) -> Result<Word> {
        answer.name_prefix(budget)
    }
}

/// VCdim with full information, certified by a depth at which the
/// dimension is attained (or as infinite). The answer is the shattering
/// lower-bound stream.
#[derive(Clone, Copy, Debug, Default)]
pub struct TameVcdimFull;

impl TameRealizer<Arc<dyn FullClass>> for TameVcdimFull {
    type Answer = ConatName;
    type Certificate = VcdimCertificate;

    fn problem(&self) -> &'static str {
        "VCdim"
    }

    fn solve(&self, class: &Arc<dyn FullClass>, cert: &VcdimCertificate) -> Result<ConatName> {
        let stream = vcdim_stream_full(Arc::clone(class))?;
        let certificate = match *cert {
            VcdimCertificate::Depth(d) => {
                ConatCertificate::Finite { stage: d as u64, value: stream.lower_bound(d as u64) }
            }
            VcdimCertificate::Infinite => ConatCertificate::Infinite,
        };
        Ok(ConatName::new(move |k| stream.lower_bound(k), Some(certificate)))
    }
}

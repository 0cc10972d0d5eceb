//! Enumeration of samples drawn from a finite support.

use num::{BigUint, One};

/// Index sequences of length `n` over `k` atoms, or, for learners that
/// ignore order, nondecreasing sequences weighted by their multiplicity.
pub struct SampleSpace {
    k: usize,
    n: usize,
    multisets: bool,
    total: BigUint,
    factorials: Vec<BigUint>,
}

impl SampleSpace {
    pub fn new(k: usize, n: usize, multisets: bool) -> Self {
        let mut factorials = vec![BigUint::one()];
        for i in 1..=n {
            let next = factorials[i - 1].clone() * BigUint::from(i);
            factorials.push(next);
        }
        SampleSpace { k, n, multisets, total: BigUint::from(k).pow(n as u32), factorials }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, BigUint)> + '_ {
        let mut cur: Option<Vec<usize>> = Some(vec![0; self.n]);
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            cur = self.advance(out.clone());
            let weight = if self.multisets { self.multiplicity(&out) } else { BigUint::one() };
            Some((out, weight))
        })
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Number of index sequences or multisets `iter` will produce.
    pub fn size(&self) -> BigUint {
        if self.multisets {
            // C(n + k - 1, n)
            let mut c = BigUint::one();
            for i in 0..self.n {
                c = c * BigUint::from(self.k + i) / BigUint::from(i + 1);
            }
            c
        } else {
            self.total.clone()
        }
    }

    fn advance(&self, mut v: Vec<usize>) -> Option<Vec<usize>> {
        let mut i = self.n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if v[i] + 1 < self.k {
                v[i] += 1;
                let reset = if self.multisets { v[i] } else { 0 };
                for x in &mut v[i + 1..] {
                    *x = reset;
                }
                return Some(v);
            }
        }
    }

    fn multiplicity(&self, v: &[usize]) -> BigUint {
        let mut w = self.factorials[self.n].clone();
        let mut run = 1;
        for i in 1..=v.len() {
            if i < v.len() && v[i] == v[i - 1] {
                run += 1;
            } else {
                w /= &self.factorials[run];
                run = 1;
            }
        }
        w
    }
}

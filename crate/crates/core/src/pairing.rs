//! Cantor pairing and sequence codings over the naturals.

use crate::error::{Error, Result};

/// ⟨n,k⟩ = (n+k)(n+k+1)/2 + k.
pub fn cantor_pair(n: u64, k: u64) -> Result<u64> {
    let s = n.checked_add(k).ok_or_else(|| Error::Range(format!("pair({n},{k}) overflows")))?;
    let tri = (s as u128) * (s as u128 + 1) / 2;
    let z = tri + k as u128;
    u64::try_from(z).map_err(|_| Error::Range(format!("pair({n},{k}) overflows")))
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: u64) -> (u64, u64) {
    let w = (isqrt(8 * z as u128 + 1) - 1) / 2;
    let t = w * (w + 1) / 2;
    let k = z as u128 - t;
    let n = w - k;
    (n as u64, k as u64)
}

/// Bijective numbering of finite sequences of naturals: 0 is the empty
/// sequence, 1 + ⟨len-1, c⟩ a sequence of length `len` whose entries are
/// peeled off `c` by repeated unpairing.
pub fn decode_sequence(code: u64) -> Vec<u64> {
    if code == 0 {
        return Vec::new();
    }
    let (len_minus_one, mut c) = cantor_unpair(code - 1);
    let mut out = Vec::with_capacity(len_minus_one as usize + 1);
    for _ in 0..len_minus_one {
        let (a, rest) = cantor_unpair(c);
        out.push(a);
        c = rest;
    }
    out.push(c);
    out
}

pub fn encode_sequence(seq: &[u64]) -> Result<u64> {
    let Some((&last, init)) = seq.split_last() else {
        return Ok(0);
    };
    let mut c = last;
    for &a in init.iter().rev() {
        c = cantor_pair(a, c)?;
    }
    cantor_pair(init.len() as u64, c)?.checked_add(1).ok_or_else(|| Error::Range("sequence code overflows".into()))
}

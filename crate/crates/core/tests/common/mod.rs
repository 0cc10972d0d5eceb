//! Finite class models and brute-force oracles shared by the integration
//! tests. The oracles work on explicit member lists and never go through
//! the library's tree or shattering code.

#![allow(dead_code)]

use num::{One, Zero};
use rand::Rng;
use weipac_core::bits::{Point, Word};
use weipac_core::class::ClassGenerator;
use weipac_core::hypothesis::{EventuallyConstant, Hypothesis};
use weipac_core::learning::{Learner, Witness};
use weipac_core::risk::{Atom, Distribution, Rational, Sample};

/// A finite class: each member is `word · tail^ω`.
#[derive(Clone, Debug)]
pub struct Model {
    pub generator: ClassGenerator,
    pub members: Vec<(Vec<bool>, bool)>,
}

fn expand(template: &str) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new()];
    for c in template.chars() {
        out = out
            .into_iter()
            .flat_map(|w: Vec<bool>| {
                let opts: &[bool] = match c {
                    '0' => &[false],
                    '1' => &[true],
                    _ => &[false, true],
                };
                opts.iter().map(move |&b| {
                    let mut v = w.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

fn random_template<R: Rng>(rng: &mut R, max_len: usize, star: f64) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.random_bool(star) {
                '*'
            } else if rng.random_bool(0.5) {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

fn random_part<R: Rng>(rng: &mut R, max_len: usize, star: f64) -> Model {
    match rng.random_range(0..3) {
        0 => {
            let count = rng.random_range(1..=3);
            let ts: Vec<String> = (0..count).map(|_| random_template(rng, max_len, star)).collect();
            let tail = rng.random_bool(0.5);
            let refs: Vec<&str> = ts.iter().map(|s| s.as_str()).collect();
            let members = ts.iter().flat_map(|t| expand(t)).map(|w| (w, tail)).collect();
            Model { generator: ClassGenerator::templates(&refs, tail).unwrap(), members }
        }
        1 => {
            let pattern = random_template(rng, max_len, star);
            let tail = rng.random_bool(0.5);
            let period = if tail { "1" } else { "0" };
            let members = expand(&pattern).into_iter().map(|w| (w, tail)).collect();
            Model { generator: ClassGenerator::product(&pattern, period).unwrap(), members }
        }
        _ => {
            let count = rng.random_range(1..=4);
            let members: Vec<(Vec<bool>, bool)> = (0..count)
                .map(|_| {
                    let len = rng.random_range(0..=max_len);
                    let w: String = (0..len).map(|_| if rng.random_bool(0.5) { '1' } else { '0' }).collect();
                    (bits(&w), rng.random_bool(0.5))
                })
                .collect();
            let hs = members.iter().map(|(w, t)| EventuallyConstant::new(Word::from_bits(w.clone()), *t)).collect();
            Model { generator: ClassGenerator::members(hs), members }
        }
    }
}

/// A random finite class whose members are all constant from `max_len`
/// on: templates, products with a constant period, member lists, or a
/// union of two of these.
pub fn random_model<R: Rng>(rng: &mut R, max_len: usize) -> Model {
    random_model_with(rng, max_len, 0.35)
}

pub fn random_model_with<R: Rng>(rng: &mut R, max_len: usize, star: f64) -> Model {
    if rng.random_bool(0.25) {
        let a = random_part(rng, max_len, star);
        let b = random_part(rng, max_len, star);
        let members = a.members.iter().chain(&b.members).cloned().collect();
        Model { generator: ClassGenerator::Union(vec![a.generator, b.generator]), members }
    } else {
        random_part(rng, max_len, star)
    }
}

pub fn bit_of(member: &(Vec<bool>, bool), x: usize) -> bool {
    member.0.get(x).copied().unwrap_or(member.1)
}

pub fn prefix_of(member: &(Vec<bool>, bool), n: usize) -> Vec<bool> {
    (0..n).map(|x| bit_of(member, x)).collect()
}

impl Model {
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<bool>> {
        let mut ws: Vec<Vec<bool>> = self.members.iter().map(|m| prefix_of(m, depth)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// VC dimension of the members' prefixes of length `depth`.
    pub fn dim(&self, depth: usize) -> u64 {
        shatter_dim(&self.prefixes(depth), depth)
    }

    pub fn min_mistakes(&self, sample: &Sample) -> usize {
        self.members.iter().map(|m| sample.iter().filter(|&&(x, y)| bit_of(m, x as usize) != y).count()).min().unwrap()
    }

    /// Whether `h` equals some member, for hypotheses constant from `n` on.
    pub fn contains(&self, h: &Hypothesis, n: usize) -> bool {
        let Some(c) = h.as_const() else { return false };
        if c.word().len() > n {
            return false;
        }
        let p: Vec<bool> = (0..n).map(|x| h.query(x as u128)).collect();
        self.members.iter().any(|m| prefix_of(m, n) == p && m.1 == c.tail())
    }
}

/// Largest `s` such that some `s` positions below `depth` are shattered
/// by `words`, by trying every position set.
pub fn shatter_dim(words: &[Vec<bool>], depth: usize) -> u64 {
    assert!(!words.is_empty());
    let cap = usize::BITS - 1 - words.len().leading_zeros();
    let mut best = 0;
    for mask in 0u32..(1 << depth) {
        let s = mask.count_ones();
        if s <= best || s > cap {
            continue;
        }
        let pos: Vec<usize> = (0..depth).filter(|&i| mask >> i & 1 == 1).collect();
        let mut seen = vec![false; 1 << s];
        for w in words {
            let t = pos.iter().enumerate().fold(0usize, |acc, (j, &i)| acc | (w[i] as usize) << j);
            seen[t] = true;
        }
        if seen.iter().all(|&b| b) {
            best = s;
        }
    }
    best as u64
}

pub fn word_bits(w: &Word) -> Vec<bool> {
    (0..w.len()).map(|i| w[i]).collect()
}

/// `0^z 1^ω` cut to `n` bits, `0^n` for `z = None`.
pub fn sort_answer(zeros: Option<u64>, n: usize) -> String {
    (0..n).map(|i| if zeros.is_some_and(|z| (i as u64) >= z) { '1' } else { '0' }).collect()
}

/// Failure count of `learner` against the uniform distribution on the
/// graph of `g`, over all `k^n` samples.
pub fn nfl_failures(learner: &Learner, n: usize, points: &[Point], g: &[bool]) -> Result<u64, String> {
    let k = points.len();
    let mut failing = 0;
    for code in 0..k.pow(n as u32) {
        let mut c = code;
        let mut items = Vec::new();
        for _ in 0..n {
            items.push((points[c % k], g[c % k]));
            c /= k;
        }
        let h = learner.respond(&Sample::new(items)).map_err(|e| e.to_string())?;
        let wrong = (0..k).filter(|&i| h.query(points[i]) != g[i]).count();
        // L_D(h) = wrong / k ≥ 1/8
        if 8 * wrong >= k {
            failing += 1;
        }
    }
    Ok(failing)
}

/// Independent check of a witness against the model's members on all
/// tuples below `budget`.
pub fn model_refutes(m: &Model, f: &Witness, budget: usize) -> Result<bool, String> {
    let k = f.arity();
    if k > budget {
        return Ok(false);
    }
    let mut t: Vec<usize> = (0..k).collect();
    loop {
        let tuple: Vec<Point> = t.iter().map(|&x| x as Point).collect();
        let b = word_bits(&f.eval(&tuple).map_err(|e| e.to_string())?);
        if m.members.iter().any(|mem| t.iter().zip(&b).all(|(&x, &y)| bit_of(mem, x) == y)) {
            return Ok(true);
        }
        let Some(i) = (0..k).rev().find(|&i| t[i] < budget - k + i) else { return Ok(false) };
        t[i] += 1;
        for j in i + 1..k {
            t[j] = t[j - 1] + 1;
        }
    }
}

/// Up to `max_atoms` distinct atoms with `x < max_x` and random positive
/// masses.
pub fn random_distribution<R: Rng>(rng: &mut R, max_atoms: usize, max_x: u64) -> Distribution {
    let size = rng.random_range(1..=max_atoms.min(2 * max_x as usize));
    let mut atoms: Vec<(Point, bool)> = Vec::new();
    while atoms.len() < size {
        let a = (rng.random_range(0..max_x) as Point, rng.random_bool(0.5));
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    let weights: Vec<i64> = (0..size).map(|_| rng.random_range(1..=10)).collect();
    let total: i64 = weights.iter().sum();
    Distribution::new(
        atoms
            .into_iter()
            .zip(weights)
            .map(|((x, y), w)| Atom { x, y, p: Rational::new(w.into(), total.into()) })
            .collect(),
    )
    .unwrap()
}

/// `L_D` of a model member.
pub fn member_risk(member: &(Vec<bool>, bool), dist: &Distribution) -> Rational {
    let mut r = Rational::zero();
    for a in dist.atoms() {
        if bit_of(member, a.x as usize) != a.y {
            r += &a.p;
        }
    }
    r
}

pub fn hypothesis_risk(h: &Hypothesis, dist: &Distribution) -> Rational {
    let mut r = Rational::zero();
    for a in dist.atoms() {
        if h.query(a.x) != a.y {
            r += &a.p;
        }
    }
    r
}

impl Model {
    pub fn inf_risk(&self, dist: &Distribution) -> Rational {
        self.members.iter().map(|m| member_risk(m, dist)).min().unwrap()
    }
}

/// Mass of the ordered samples of size `n` on which `learner` comes
/// within `slack` of `inf`, by walking all `|supp D|^n` sequences.
pub fn success_mass(
    learner: &Learner,
    dist: &Distribution,
    n: usize,
    inf: &Rational,
    slack: &Rational,
) -> Result<Rational, String> {
    let atoms = dist.atoms();
    let k = atoms.len();
    let bound = inf + slack;
    let mut mass = Rational::zero();
    for code in 0..k.pow(n as u32) {
        let mut c = code;
        let mut weight = Rational::one();
        let mut items = Vec::new();
        for _ in 0..n {
            let a = &atoms[c % k];
            weight *= &a.p;
            items.push((a.x, a.y));
            c /= k;
        }
        let h = learner.respond(&Sample::new(items)).map_err(|e| e.to_string())?;
        if hypothesis_risk(&h, dist) <= bound {
            mass += weight;
        }
    }
    Ok(mass)
}

pub fn two_pow_neg(i: u64) -> Rational {
    Rational::new(1.into(), num::BigInt::from(1u8) << i)
}

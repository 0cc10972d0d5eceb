//! Samples, finitely supported distributions and exact risks.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::{Point, Word};
use crate::class::{FullClass, PositiveClass};
use crate::error::{Error, Result};
use crate::hypothesis::Hypothesis;

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^{-i}`.
pub fn inverse_power_of_two(i: u64) -> Rational {
    BigRational::new(BigInt::one(), BigInt::one() << i as usize)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// A finite labeled sample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sample(pub Vec<(Point, bool)>);

impl Sample {
    pub fn new(items: Vec<(Point, bool)>) -> Self {
        Sample(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_point(&self) -> Option<Point> {
        self.0.iter().map(|&(x, _)| x).max()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Point, bool)> {
        self.0.iter()
    }

    pub fn from_json(s: &str) -> Result<Sample> {
        let raw: Vec<(Point, u8)> = serde_json::from_str(s)?;
        raw.into_iter()
            .map(|(x, y)| match y {
                0 | 1 => Ok((x, y == 1)),
                _ => Err(Error::Parse(format!("label must be 0 or 1, got {y}"))),
            })
            .collect::<Result<_>>()
            .map(Sample)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<(Point, u8)> = self.0.iter().map(|&(x, y)| (x, y as u8)).collect();
        serde_json::to_string(&raw).expect("samples serialize")
    }

    /// Number of labels `h` gets wrong.
    pub fn mistakes(&self, h: &Hypothesis) -> usize {
        self.0.iter().filter(|&&(x, y)| h.query(x) != y).count()
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub x: Point,
    pub y: bool,
    pub p: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomFile {
    x: Point,
    y: u8,
    p: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    atoms: Vec<AtomFile>,
}

/// A finitely supported distribution on `ℕ × {0,1}` with rational masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    atoms: Vec<Atom>,
}

impl Distribution {
    /// Masses must be positive, sum to one, and sit on distinct points.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Domain("distribution with empty support".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut total = Rational::zero();
        for a in &atoms {
            if a.p <= Rational::zero() {
                return Err(Error::Domain(format!("non-positive mass {} at ({}, {})", a.p, a.x, a.y as u8)));
            }
            if !seen.insert((a.x, a.y)) {
                return Err(Error::Domain(format!("repeated atom ({}, {})", a.x, a.y as u8)));
            }
            total += &a.p;
        }
        if !total.is_one() {
            return Err(Error::Domain(format!("masses sum to {total}, not 1")));
        }
        Ok(Distribution { atoms })
    }

    pub fn dirac(x: Point, y: bool) -> Self {
        Distribution { atoms: vec![Atom { x, y, p: Rational::one() }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn max_point(&self) -> Point {
        self.atoms.iter().map(|a| a.x).max().unwrap_or(0)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: DistributionFile = serde_json::from_str(s)?;
        let atoms = f
            .atoms
            .into_iter()
            .map(|a| {
                let y = match a.y {
                    0 | 1 => a.y == 1,
                    _ => return Err(Error::Parse(format!("label must be 0 or 1, got {}", a.y))),
                };
                Ok(Atom { x: a.x, y, p: parse_rational(&a.p)? })
            })
            .collect::<Result<_>>()?;
        Distribution::new(atoms)
    }

    pub fn to_json(&self) -> String {
        let f = DistributionFile {
            atoms: self.atoms.iter().map(|a| AtomFile { x: a.x, y: a.y as u8, p: a.p.to_string() }).collect(),
        };
        serde_json::to_string(&f).expect("distributions serialize")
    }

    /// Per point: mass of label 0 and mass of label 1.
    fn by_point(&self) -> BTreeMap<Point, (Rational, Rational)> {
        let mut m: BTreeMap<Point, (Rational, Rational)> = BTreeMap::new();
        for a in &self.atoms {
            let e = m.entry(a.x).or_insert_with(|| (Rational::zero(), Rational::zero()));
            if a.y {
                e.1 += &a.p;
            } else {
                e.0 += &a.p;
            }
        }
        m
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Fraction of the sample that `h` mislabels.
pub fn empirical_risk(sample: &Sample, h: &Hypothesis) -> Result<Rational> {
    if sample.is_empty() {
        return Err(Error::Domain("empirical risk of an empty sample".into()));
    }
    Ok(rational(sample.mistakes(h) as i64, sample.len() as i64))
}

/// Mass of the atoms that `h` mislabels.
pub fn true_risk(dist: &Distribution, h: &Hypothesis) -> Rational {
    dist.atoms.iter().filter(|a| h.query(a.x) != a.y).fold(Rational::zero(), |acc, a| acc + &a.p)
}

/// `inf_{h ∈ C} L_D(h)`, exact: only coordinates up to the largest support
/// point matter, and full information decides which words of that length
/// extend to members.
pub fn inf_risk_exact(class: &dyn FullClass, dist: &Distribution) -> Result<Rational> {
    if !class.tree_query(&[]) {
        return Err(Error::Domain("infimum over the empty class".into()));
    }
    let points = dist.by_point();
    let depth = dist.max_point() as usize + 1;
    let mut best: Option<Rational> = None;
    let mut w = Word::new();
    inf_search(class, &points, depth, &mut w, Rational::zero(), &mut best);
    Ok(best.expect("nonempty class has a path"))
}

fn inf_search(
    class: &dyn FullClass,
    points: &BTreeMap<Point, (Rational, Rational)>,
    depth: usize,
    w: &mut Word,
    cost: Rational,
    best: &mut Option<Rational>,
) {
    if best.as_ref().is_some_and(|b| cost >= *b) || !class.tree_query(w) {
        return;
    }
    if w.len() == depth {
        *best = Some(cost);
        return;
    }
    let masses = points.get(&(w.len() as Point));
    for b in [false, true] {
        // labelling the point b costs the mass carried by the other label
        let add = masses.map_or(Rational::zero(), |(m0, m1)| if b { m0.clone() } else { m1.clone() });
        w.push(b);
        inf_search(class, points, depth, w, &cost + add, best);
        w.truncate(w.len() - 1);
    }
}

/// Upper approximations of `inf_{h ∈ C} L_D(h)` from the first `stage + 1`
/// members of a positive presentation; nonincreasing in `stage`.
pub fn inf_risk_stream(class: &dyn PositiveClass, dist: &Distribution, stage: u64) -> Rational {
    (0..=stage).map(|i| true_risk(dist, &class.member(i))).min().expect("at least one member")
}

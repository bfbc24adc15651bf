use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::linalg;

/// A tuple `(λ^1, …, λ^{s-1}, ν)` of `s` vectors of length `r`, stored flat
/// block by block.
///
/// Coordinates are integers; every cone here is rational and homogeneous, so
/// rational points are represented by a positive integer multiple (see
/// [`ConePoint::parse_rational`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConePoint {
    r: usize,
    s: usize,
    coords: Vec<i64>,
}

impl ConePoint {
    pub fn new(r: usize, s: usize, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != r * s {
            return Err(Error::Shape(format!(
                "expected {} coordinates for r={r}, s={s}, got {}",
                r * s,
                coords.len()
            )));
        }
        Ok(Self { r, s, coords })
    }

    pub fn zero(r: usize, s: usize) -> Self {
        Self {
            r,
            s,
            coords: vec![0; r * s],
        }
    }

    pub fn from_blocks(blocks: &[Vec<i64>]) -> Result<Self> {
        let s = blocks.len();
        let r = blocks.first().map_or(0, Vec::len);
        if blocks.iter().any(|b| b.len() != r) {
            return Err(Error::Shape("blocks have unequal lengths".into()));
        }
        Ok(Self {
            r,
            s,
            coords: blocks.concat(),
        })
    }

    /// Builds `(λ^1, …, λ^{s-1}, ν)` from partitions, zero-padded to the
    /// longest of them.
    pub fn from_partitions(lams: &[Partition], nu: &Partition) -> Result<Self> {
        let r = lams.iter().chain([nu]).map(Partition::len).max().unwrap_or(0);
        let mut coords = Vec::with_capacity(r * (lams.len() + 1));
        for p in lams.iter().chain([nu]) {
            coords.extend((0..r).map(|i| p.get(i) as i64));
        }
        Ok(Self {
            r,
            s: lams.len() + 1,
            coords,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Block `k`, 0-based; block `s - 1` is `ν`.
    pub fn block(&self, k: usize) -> &[i64] {
        &self.coords[k * self.r..(k + 1) * self.r]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut [i64] {
        let r = self.r;
        &mut self.coords[k * r..(k + 1) * r]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[i64]> {
        self.coords.chunks(self.r.max(1)).take(self.s)
    }

    /// Entry `a` (1-based) of block `k` (1-based), matching `λ^k_a`.
    pub fn entry(&self, k: usize, a: usize) -> i64 {
        self.coords[(k - 1) * self.r + (a - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// `∑_j |λ^j| - |ν|`.
    pub fn trace_slack(&self) -> i64 {
        let nu: i64 = self.block(self.s - 1).iter().sum();
        let lams: i64 = self.coords[..(self.s - 1) * self.r].iter().sum();
        lams - nu
    }

    /// True when every block is weakly decreasing and nonnegative.
    pub fn is_partition_tuple(&self) -> bool {
        self.blocks()
            .all(|b| b.windows(2).all(|w| w[0] >= w[1]) && b.last().is_none_or(|&x| x >= 0))
    }

    pub fn to_partitions(&self) -> Result<(Vec<Partition>, Partition)> {
        if !self.is_partition_tuple() {
            return Err(Error::Domain(format!("{self} is not a tuple of partitions")));
        }
        let mut parts: Vec<Partition> = self
            .blocks()
            .map(|b| Partition::new(b.iter().map(|&x| x as usize).collect()).unwrap())
            .collect();
        let nu = parts.pop().unwrap();
        Ok((parts, nu))
    }

    /// The gcd-reduced representative of the ray through `self`.
    pub fn primitive(&self) -> ConePoint {
        ConePoint {
            r: self.r,
            s: self.s,
            coords: linalg::primitive(&self.coords),
        }
    }

    pub fn is_primitive(&self) -> bool {
        linalg::gcd_slice(&self.coords) == 1
    }

    pub fn scaled(&self, k: i64) -> ConePoint {
        ConePoint {
            r: self.r,
            s: self.s,
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &ConePoint) -> Result<ConePoint> {
        self.check_same_shape(other)?;
        Ok(ConePoint {
            r: self.r,
            s: self.s,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + k * b)
                .collect(),
        })
    }

    /// Componentwise `self ≤ other` in every coordinate.
    pub fn dominated_by(&self, other: &ConePoint) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    pub fn check_shape(&self, r: usize, s: usize) -> Result<()> {
        if self.r != r || self.s != s {
            return Err(Error::Shape(format!(
                "point has (r, s) = ({}, {}), expected ({r}, {s})",
                self.r, self.s
            )));
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &ConePoint) -> Result<()> {
        other.check_shape(self.r, self.s)
    }

    /// Parses text whose entries may be fractions such as `1/2`, returning
    /// the point scaled by the least common denominator together with that
    /// denominator.
    pub fn parse_rational(text: &str) -> Result<(ConePoint, i64)> {
        let blocks: Vec<Vec<(i64, i64)>> = split_blocks(text)
            .into_iter()
            .map(|b| b.iter().map(|t| parse_fraction(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let den = blocks
            .iter()
            .flatten()
            .fold(1i64, |acc, &(_, d)| acc.lcm(&d));
        let scaled: Vec<Vec<i64>> = blocks
            .iter()
            .map(|b| b.iter().map(|&(n, d)| n * (den / d)).collect())
            .collect();
        Ok((ConePoint::from_blocks(&scaled)?, den))
    }
}

fn split_blocks(text: &str) -> Vec<Vec<String>> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    text.split(';')
        .map(|b| b.split(',').map(|t| t.trim().to_string()).collect())
        .collect()
}

fn parse_fraction(t: &str) -> Result<(i64, i64)> {
    let bad = |e: &dyn fmt::Display| Error::Parse(format!("bad coordinate {t:?}: {e}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|e| bad(&e))?;
            let d: i64 = d.trim().parse().map_err(|e| bad(&e))?;
            if d <= 0 {
                return Err(bad(&"denominator must be positive"));
            }
            let g = n.gcd(&d);
            Ok((n / g, d / g))
        }
        None => Ok((t.parse().map_err(|e| bad(&e))?, 1)),
    }
}

impl fmt::Display for ConePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ConePoint {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let blocks = split_blocks(text)
            .into_iter()
            .map(|b| {
                b.iter()
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|e| Error::Parse(format!("bad coordinate {t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ConePoint::from_blocks(&blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    r: usize,
    s: usize,
    blocks: Vec<Vec<i64>>,
}

impl Serialize for ConePoint {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PointJson {
            r: self.r,
            s: self.s,
            blocks: self.blocks().map(<[i64]>::to_vec).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ConePoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PointJson::deserialize(de)?;
        let p = ConePoint::from_blocks(&raw.blocks).map_err(serde::de::Error::custom)?;
        if p.r != raw.r || p.s != raw.s {
            return Err(serde::de::Error::custom(format!(
                "declared (r, s) = ({}, {}) but blocks have ({}, {})",
                raw.r, raw.s, p.r, p.s
            )));
        }
        Ok(p)
    }
}

impl Add for &ConePoint {
    type Output = ConePoint;
    fn add(self, rhs: &ConePoint) -> ConePoint {
        self.add_scaled(1, rhs).expect("shape mismatch in addition")
    }
}

impl Sub for &ConePoint {
    type Output = ConePoint;
    fn sub(self, rhs: &ConePoint) -> ConePoint {
        self.add_scaled(-1, rhs).expect("shape mismatch in subtraction")
    }
}

impl Neg for &ConePoint {
    type Output = ConePoint;
    fn neg(self) -> ConePoint {
        self.scaled(-1)
    }
}

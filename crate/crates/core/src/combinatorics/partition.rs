use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing vector of nonnegative integers.
///
/// The length is the ambient rank the partition lives in; trailing zeros are
/// significant for display but not for comparisons done through [`Partition::trimmed`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn zero(len: usize) -> Self {
        Self {
            parts: vec![0; len],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based); zero past the stored length.
    pub fn get(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// The nonzero parts only.
    pub fn trimmed(&self) -> &[usize] {
        &self.parts[..self.length()]
    }

    /// Zero-pads (or truncates trailing zeros) to `len` parts.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if self.length() > len {
            return Err(Error::Shape(format!(
                "partition {self} has more than {len} nonzero parts"
            )));
        }
        let mut parts = self.trimmed().to_vec();
        parts.resize(len, 0);
        Ok(Self { parts })
    }

    /// Young diagram containment `other ⊆ self`, after zero padding.
    pub fn contains(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|i| other.get(i) <= self.get(i))
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self { parts: Vec::new() });
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `ω_j`: `j` ones followed by `r - j` zeros.
pub fn omega(j: usize, r: usize) -> Result<Partition> {
    if j > r {
        return Err(Error::Range(format!("omega index {j} exceeds rank {r}")));
    }
    let mut parts = vec![1; j];
    parts.resize(r, 0);
    Ok(Partition { parts })
}

/// All partitions with at most `rows` parts, each at most `cols`, as vectors of
/// length `rows`. Colex order: the last part varies slowest.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0; rows];
    fn rec(pos: usize, lo: usize, cols: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        // Fill from the last row upwards so each part is >= the one below it.
        if pos == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for v in lo..=cols {
            cur[pos - 1] = v;
            rec(pos - 1, v, cols, cur, out);
        }
    }
    rec(rows, 0, cols, &mut cur, &mut out);
    out
}

/// Partitions `γ` with `inner ⊆ γ ⊆ outer` and `|γ| = weight`, as vectors of
/// length `outer.len()`.
pub fn partitions_between(inner: &Partition, outer: &Partition, weight: usize) -> Vec<Partition> {
    let n = outer.len().max(inner.len());
    let lo: Vec<usize> = (0..n).map(|i| inner.get(i)).collect();
    let hi: Vec<usize> = (0..n).map(|i| outer.get(i)).collect();
    let mut out = Vec::new();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return out;
    }
    // suffix sums of lo / hi bound the remaining weight
    let mut lo_suffix = vec![0; n + 1];
    let mut hi_suffix = vec![0; n + 1];
    for i in (0..n).rev() {
        lo_suffix[i] = lo_suffix[i + 1] + lo[i];
        hi_suffix[i] = hi_suffix[i + 1] + hi[i];
    }
    let mut cur = vec![0; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        cap: usize,
        left: usize,
        lo: &[usize],
        hi: &[usize],
        lo_suffix: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        let n = lo.len();
        if i == n {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
            }
            return;
        }
        let top = hi[i].min(cap).min(left);
        if lo[i] > top {
            return;
        }
        for v in (lo[i]..=top).rev() {
            let rest = left - v;
            if rest < lo_suffix[i + 1] || rest > v * (n - i - 1) {
                continue;
            }
            cur[i] = v;
            rec(i + 1, v, rest, lo, hi, lo_suffix, cur, out);
        }
    }
    if weight < lo_suffix[0] || weight > hi_suffix[0] {
        return out;
    }
    rec(0, usize::MAX, weight, &lo, &hi, &lo_suffix, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!("0,1".parse::<Partition>().is_err());
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(0, 3).unwrap(), p(&[0, 0, 0]));
        assert_eq!(omega(2, 3).unwrap(), p(&[1, 1, 0]));
        assert_eq!(omega(3, 3).unwrap(), p(&[1, 1, 1]));
        assert!(matches!(omega(4, 3), Err(Error::Range(_))));
    }

    #[test]
    fn text_round_trip() {
        let x: Partition = "2,1,0".parse().unwrap();
        assert_eq!(x, p(&[2, 1, 0]));
        assert_eq!(x.to_string(), "2,1,0");
    }

    #[test]
    fn box_count_is_binomial() {
        // C(rows + cols, rows)
        assert_eq!(partitions_in_box(3, 3).len(), 20);
        assert_eq!(partitions_in_box(5, 3).len(), 56);
        assert_eq!(partitions_in_box(2, 0).len(), 1);
    }

    #[test]
    fn between_respects_bounds() {
        let got = partitions_between(&p(&[1]), &p(&[2, 2]), 3);
        assert_eq!(got, vec![p(&[2, 1])]);
        let got = partitions_between(&p(&[]), &p(&[2, 1, 1]), 2);
        assert_eq!(got, vec![p(&[2, 0, 0]), p(&[1, 1, 0])]);
        assert!(partitions_between(&p(&[3]), &p(&[2]), 3).is_empty());
    }

    #[test]
    fn containment_pads_with_zeros() {
        assert!(p(&[2, 1]).contains(&p(&[2])));
        assert!(!p(&[2]).contains(&p(&[1, 1])));
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A strictly increasing list of 1-based indices in `[ambient]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetD {
    elements: Vec<usize>,
    ambient: usize,
}

impl SubsetD {
    pub fn new(elements: Vec<usize>, ambient: usize) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "subset {elements:?} is not strictly increasing"
            )));
        }
        if elements.first().is_some_and(|&e| e == 0) || elements.last().is_some_and(|&e| e > ambient) {
            return Err(Error::Range(format!(
                "subset {elements:?} is not contained in [1, {ambient}]"
            )));
        }
        Ok(Self { elements, ambient })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// `Ī` inside `[ambient]`.
    pub fn complement(&self) -> SubsetD {
        let elements = (1..=self.ambient).filter(|&a| !self.contains(a)).collect();
        SubsetD {
            elements,
            ambient: self.ambient,
        }
    }

    /// Replaces `from` with `to`, keeping the list sorted. The ambient grows
    /// if `to` falls outside it.
    pub fn swapped(&self, from: usize, to: usize) -> Result<SubsetD> {
        if !self.contains(from) || self.contains(to) || to == 0 {
            return Err(Error::Domain(format!(
                "cannot swap {from} -> {to} in {self}"
            )));
        }
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&e| if e == from { to } else { e })
            .collect();
        elements.sort_unstable();
        Ok(SubsetD {
            elements,
            ambient: self.ambient.max(to),
        })
    }

    /// Same elements viewed inside a different ambient set.
    pub fn with_ambient(&self, ambient: usize) -> Result<SubsetD> {
        SubsetD::new(self.elements.clone(), ambient)
    }

    /// All `d`-element subsets of `[r]` in lexicographic order.
    pub fn all(r: usize, d: usize) -> Vec<SubsetD> {
        let mut out = Vec::new();
        if d > r {
            return out;
        }
        let mut cur: Vec<usize> = (1..=d).collect();
        loop {
            out.push(SubsetD {
                elements: cur.clone(),
                ambient: r,
            });
            // advance to the next combination
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < r - (d - 1 - i) {
                    cur[i] += 1;
                    for k in i + 1..d {
                        cur[k] = cur[k - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Parses `{2,4}` (braces optional).
    pub fn parse(s: &str, ambient: usize) -> Result<SubsetD> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let elements = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad subset element {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        SubsetD::new(elements, ambient)
    }
}

impl fmt::Display for SubsetD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// `τ(I) = (i_d - d ≥ … ≥ i_2 - 2 ≥ i_1 - 1)`.
pub fn tau(subset: &SubsetD) -> Partition {
    let parts = subset
        .elements
        .iter()
        .enumerate()
        .rev()
        .map(|(k, &i)| i - (k + 1))
        .collect();
    Partition::new(parts).expect("tau of an increasing list is a partition")
}

/// Inverse of [`tau`]: the `d`-subset of `[r]` whose `τ` is `lam`, where `d`
/// is the number of stored parts.
pub fn tau_inverse(lam: &Partition, r: usize) -> Result<SubsetD> {
    let d = lam.len();
    if d > r || lam.get(0) > r - d {
        return Err(Error::BoxOverflow {
            partition: lam.to_string(),
            rows: d,
            cols: r.saturating_sub(d),
        });
    }
    let elements = (1..=d).map(|k| lam.get(d - k) + k).collect();
    SubsetD::new(elements, r)
}

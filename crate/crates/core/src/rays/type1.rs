use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{coef_of_subsets, SubsetD};
use crate::cones::{ConePoint, HornDatum};
use crate::error::{Error, Result};

/// A swap datum `(j, a)` on a Horn facet. Both indices are 1-based; `j = s`
/// refers to `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeIDatum {
    pub j: usize,
    pub a: usize,
}

impl fmt::Display for TypeIDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.a)
    }
}

impl TypeIDatum {
    pub fn is_valid_for(&self, h: &HornDatum) -> bool {
        let (r, s) = (h.r(), h.s());
        if self.j == 0 || self.j > s || self.a == 0 || self.a > r {
            return false;
        }
        let set = h.subset(self.j);
        if self.j < s {
            set.contains(self.a) && !set.contains(self.a + 1) && self.a < r
        } else {
            set.contains(self.a) && !set.contains(self.a - 1) && self.a > 1
        }
    }
}

/// All type I data of a facet, ordered by `(j, a)`.
pub fn type1_data(h: &HornDatum) -> Vec<TypeIDatum> {
    (1..=h.s())
        .flat_map(|j| h.subset(j).elements().iter().map(move |&a| TypeIDatum { j, a }))
        .filter(|t| t.is_valid_for(h))
        .collect()
}

/// `(I_1', …, I_{s-1}'; K')`: `a` moved to `a + 1` in `I_j`, or to `a - 1`
/// in `K` when `j = s`. The result need not have coefficient 1.
pub fn swap_datum(h: &HornDatum, t: TypeIDatum) -> Result<(Vec<SubsetD>, SubsetD)> {
    if !t.is_valid_for(h) {
        return Err(Error::Domain(format!("{t} is not a type I datum of {h}")));
    }
    let mut inputs = h.inputs().to_vec();
    let mut output = h.output().clone();
    if t.j < h.s() {
        inputs[t.j - 1] = inputs[t.j - 1].swapped(t.a, t.a + 1)?;
    } else {
        output = output.swapped(t.a, t.a - 1)?;
    }
    Ok((inputs, output))
}

/// The type I ray `r(j, a)` built from consecutive differences given by
/// structure coefficients of neighbouring subset collections.
///
/// `ν_r` is computed twice, from the trace equality and from the coefficient
/// in a one-larger ambient box; disagreement is an internal error.
pub fn type1_point(h: &HornDatum, t: TypeIDatum) -> Result<ConePoint> {
    let (r, s) = (h.r(), h.s());
    let (inputs, output) = swap_datum(h, t)?;
    let mut x = ConePoint::zero(r, s);

    for k in 1..s {
        let set = &inputs[k - 1];
        let mut level = 0i64;
        // λ^k_r = 0; walk upwards accumulating λ^k_{b-1} − λ^k_b
        for b in (2..=r).rev() {
            if set.contains(b) && !set.contains(b - 1) {
                let mut lowered = inputs.clone();
                lowered[k - 1] = set.swapped(b, b - 1)?;
                level += coef_of_subsets(&lowered, &output)? as i64;
            }
            x.block_mut(k - 1)[b - 2] = level;
        }
    }

    let mut diffs = vec![0i64; r];
    for c in 1..r {
        if output.contains(c) && !output.contains(c + 1) {
            diffs[c] = coef_of_subsets(&inputs, &output.swapped(c, c + 1)?)? as i64;
        }
    }

    let lam_total: i64 = x.coords()[..(s - 1) * r].iter().sum();
    let weighted: i64 = (1..r).map(|c| c as i64 * diffs[c]).sum();
    let rest = lam_total - weighted;
    if rest % r as i64 != 0 {
        return Err(Error::InternalConsistency(format!(
            "trace rule gives non-integral nu_r = {rest}/{r} for {h} at {t}"
        )));
    }
    let nu_r_trace = rest / r as i64;
    let nu_r_alt = if output.contains(r) {
        let bigger = output.with_ambient(r + 1)?.swapped(r, r + 1)?;
        coef_of_subsets(&inputs, &bigger)? as i64
    } else {
        0
    };
    if nu_r_trace != nu_r_alt {
        return Err(Error::InternalConsistency(format!(
            "nu_r from trace ({nu_r_trace}) and from the enlarged box ({nu_r_alt}) disagree for {h} at {t}"
        )));
    }

    let nu = x.block_mut(s - 1);
    nu[r - 1] = nu_r_trace;
    for c in (1..r).rev() {
        nu[c - 1] = nu[c] + diffs[c];
    }
    Ok(x)
}

/// The consecutive difference a type I datum controls: `λ^j_a − λ^j_{a+1}`,
/// or `ν_{a-1} − ν_a` when `j = s`.
pub fn datum_difference(x: &ConePoint, t: TypeIDatum) -> i64 {
    if t.j < x.s() {
        x.entry(t.j, t.a) - x.entry(t.j, t.a + 1)
    } else {
        x.entry(t.j, t.a - 1) - x.entry(t.j, t.a)
    }
}

use super::point::ConePoint;
use super::system::{inequality_system, ConeKind};
use crate::combinatorics::{partitions_between, Partition};
use crate::error::{Error, Result};

/// Shrinks block `j` (1-based, `j < s`) of an integral point of `EqLR` to a
/// partition `λ^{j,↓} ⊆ λ^j` so that the trace form vanishes and the result
/// stays in `EqLR` (hence lies in `LR`).
///
/// Tries removing boxes from the bottom rows first and falls back to an
/// exhaustive search over all candidate shapes of the forced weight.
pub fn shadow(x: &ConePoint, j: usize) -> Result<ConePoint> {
    let (r, s) = (x.r(), x.s());
    if j == 0 || j >= s {
        return Err(Error::Domain(format!("block index {j} not in [1, {}]", s - 1)));
    }
    let eqlr = inequality_system(r, s, ConeKind::EqLR)?;
    if !eqlr.contains(x)? {
        return Err(Error::Domain(format!("{x} is not in EqLR_{r}^{s}")));
    }
    let excess = x.trace_slack();
    if excess == 0 {
        return Ok(x.clone());
    }
    let block = x.block(j - 1);
    let target = block.iter().sum::<i64>() - excess;
    if target < 0 {
        // (iv) and the nonnegativity rows rule this out for members
        return Err(Error::InternalConsistency(format!(
            "forced weight {target} is negative for {x}"
        )));
    }

    let with_block = |parts: &[i64]| {
        let mut y = x.clone();
        y.block_mut(j - 1).copy_from_slice(parts);
        y
    };

    let mut greedy = block.to_vec();
    let mut left = excess;
    for part in greedy.iter_mut().rev() {
        let take = left.min(*part);
        *part -= take;
        left -= take;
        if left == 0 {
            break;
        }
    }
    let y = with_block(&greedy);
    if eqlr.contains(&y)? {
        return Ok(y);
    }

    let outer = Partition::new(block.iter().map(|&v| v as usize).collect())?;
    for mu in partitions_between(&Partition::zero(r), &outer, target as usize) {
        let parts: Vec<i64> = mu.parts().iter().map(|&v| v as i64).collect();
        let y = with_block(&parts);
        if eqlr.contains(&y)? {
            return Ok(y);
        }
    }
    Err(Error::InternalConsistency(format!(
        "no shadow of {x} in block {j}"
    )))
}

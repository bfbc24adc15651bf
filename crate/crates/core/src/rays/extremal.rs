use serde::{Deserialize, Serialize};

use crate::cones::{inequality_system, ConeKind, ConePoint, InequalitySystem};
use crate::error::{Error, Result};
use crate::linalg;

/// A primitive integer point spanning a ray, with the rank of the constraint
/// normals tight at it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    pub point: ConePoint,
    pub primitive: bool,
    pub tight_rank: usize,
}

impl Ray {
    /// Reduces `point` to its primitive representative and records its tight
    /// rank in `kind`. Fails if the point is zero or not a member.
    pub fn certify(point: &ConePoint, kind: ConeKind) -> Result<Ray> {
        let sys = inequality_system(point.r(), point.s(), kind)?;
        let point = point.primitive();
        let tight_rank = checked_tight_rank(&point, &sys)?;
        Ok(Ray {
            primitive: point.is_primitive(),
            point,
            tight_rank,
        })
    }

    /// `tight_rank == rs - 1`.
    pub fn is_extremal(&self) -> bool {
        self.tight_rank + 1 == self.point.coords().len()
    }
}

fn checked_tight_rank(x: &ConePoint, sys: &InequalitySystem) -> Result<usize> {
    if x.is_zero() {
        return Err(Error::Domain("the zero vector spans no ray".into()));
    }
    if !sys.contains(x)? {
        return Err(Error::Domain(format!(
            "{x} is not in {}_{}^{}",
            sys.kind, sys.r, sys.s
        )));
    }
    Ok(tight_rank(x.coords(), sys))
}

/// Rank of the coefficient vectors of the forms vanishing at `coords`.
pub(crate) fn tight_rank(coords: &[i64], sys: &InequalitySystem) -> usize {
    let rows: Vec<&[i64]> = sys
        .tight_at(coords)
        .map(|f| f.coefficients.as_slice())
        .collect();
    linalg::rank(&rows)
}

/// Whether `x` spans a one-dimensional face of the pointed cone `kind`.
pub fn is_extremal(x: &ConePoint, kind: ConeKind) -> Result<bool> {
    let sys = inequality_system(x.r(), x.s(), kind)?;
    Ok(checked_tight_rank(x, &sys)? + 1 == sys.dim())
}

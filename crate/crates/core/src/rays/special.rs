use super::extremal::Ray;
use crate::combinatorics::omega;
use crate::cones::{all_horn, horn_slack, ConeKind, ConePoint};
use crate::error::{Error, Result};

/// `(ω_{k_1}, …, ω_{k_{s-1}}, ω_ℓ)` as a point.
pub fn omega_point(ks: &[usize], l: usize, r: usize) -> Result<ConePoint> {
    let parts = ks
        .iter()
        .map(|&k| omega(k, r))
        .collect::<Result<Vec<_>>>()?;
    ConePoint::from_partitions(&parts, &omega(l, r)?)
}

/// `x_j`: `ω_r` in block `j` (1-based) and in `ν`, zero elsewhere.
pub fn x_j(j: usize, r: usize, s: usize) -> Result<ConePoint> {
    let mut ks = vec![0; s - 1];
    ks[j - 1] = r;
    omega_point(&ks, r, r)
}

/// The ω-tuples `(ω_{k_1}, …, ω_{k_{s-1}}, ω_ℓ)` with every `k_i ≤ ℓ` and
/// `∑ k_i ≥ ℓ ≥ 1`, which includes each `x_j`. Each is certified in `EqLR`.
pub fn special_rays(r: usize, s: usize) -> Result<Vec<Ray>> {
    if r == 0 || s < 3 {
        return Err(Error::Range(format!("need r >= 1 and s >= 3, got r={r}, s={s}")));
    }
    let mut out = Vec::new();
    for l in 1..=r {
        let mut ks = vec![0usize; s - 1];
        loop {
            if ks.iter().sum::<usize>() >= l {
                out.push(Ray::certify(&omega_point(&ks, l, r)?, ConeKind::EqLR)?);
            }
            // odometer over [0, l]^(s-1)
            let mut i = 0;
            while i < ks.len() && ks[i] == l {
                ks[i] = 0;
                i += 1;
            }
            if i == ks.len() {
                break;
            }
            ks[i] += 1;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `(ω_ℓ, …, ω_ℓ)` has positive slack on every Horn inequality.
pub fn diagonal_no_facet_check(r: usize, s: usize, l: usize) -> Result<bool> {
    if l == 0 || l > r {
        return Err(Error::Range(format!("need 1 <= l <= r, got l={l}, r={r}")));
    }
    let x = omega_point(&vec![l; s - 1], l, r)?;
    for h in all_horn(r, s)?.iter() {
        if horn_slack(&x, h)? <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ConePoint {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one() {
        let got: Vec<ConePoint> = special_rays(1, 3).unwrap().into_iter().map(|r| r.point).collect();
        assert_eq!(got, vec![pt("0;1;1"), pt("1;0;1"), pt("1;1;1")]);
    }

    #[test]
    fn rank_three_members() {
        let got: Vec<ConePoint> = special_rays(3, 3).unwrap().into_iter().map(|r| r.point).collect();
        assert!(got.contains(&pt("1,1,1;1,1,1;1,1,1")));
        assert!(got.contains(&pt("1,1,0;1,1,0;1,1,0")));
        assert!(!got.contains(&pt("1,0,0;1,0,0;1,1,1")));
        assert!(special_rays(3, 3).unwrap().iter().all(Ray::is_extremal));
    }

    #[test]
    fn x_j_shape() {
        assert_eq!(x_j(2, 2, 3).unwrap(), pt("0,0;1,1;1,1"));
    }

    #[test]
    fn diagonal_examples() {
        assert!(diagonal_no_facet_check(3, 3, 2).unwrap());
        assert!(!diagonal_no_facet_check(3, 3, 1).unwrap());
        assert!(diagonal_no_facet_check(1, 3, 1).unwrap());
        assert!(diagonal_no_facet_check(3, 3, 0).is_err());
    }
}

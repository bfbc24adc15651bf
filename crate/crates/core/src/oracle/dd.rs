use crate::cones::{ConePoint, InequalitySystem, Relation};
use crate::error::{Error, Result};

pub const DD_DEFAULT_MAX_DIM: usize = 9;

type Vector = Vec<i128>;

struct Generator {
    v: Vector,
    // bit i set when processed constraint i vanishes on v
    zeros: Vec<u64>,
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow("double description inner product"))
    })
}

/// `p * u - q * w`, reduced by the gcd of its entries.
fn combine(p: i128, u: &[i128], q: i128, w: &[i128]) -> Result<Vector> {
    let mut out = Vec::with_capacity(u.len());
    for (a, b) in u.iter().zip(w) {
        let x = p
            .checked_mul(*a)
            .zip(q.checked_mul(*b))
            .and_then(|(x, y)| x.checked_sub(y))
            .ok_or(Error::Overflow("double description combination"))?;
        out.push(x);
    }
    Ok(reduce(out))
}

fn reduce(mut v: Vector) -> Vector {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(bits: &[u64]) -> u32 {
    bits.iter().map(|w| w.count_ones()).sum()
}

/// Extremal rays of the cone cut out by `sys`, by the double-description
/// method in exact integer arithmetic, for systems of dimension at most
/// [`DD_DEFAULT_MAX_DIM`].
pub fn dd_rays(sys: &InequalitySystem) -> Result<Vec<ConePoint>> {
    dd_rays_with_limit(sys, DD_DEFAULT_MAX_DIM)
}

pub fn dd_rays_with_limit(sys: &InequalitySystem, max_dim: usize) -> Result<Vec<ConePoint>> {
    let n = sys.dim();
    if n > max_dim {
        return Err(Error::ResourceLimit(format!(
            "double description is limited to dimension {max_dim}, system has {n}"
        )));
    }
    let mut order: Vec<usize> = (0..sys.forms.len()).collect();
    order.sort_by_key(|&i| (sys.forms[i].relation != Relation::Eq, i));
    let words = sys.forms.len().div_ceil(64);

    let mut lineality: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut rays: Vec<Generator> = Vec::new();

    for (step, &fi) in order.iter().enumerate() {
        let form = &sys.forms[fi];
        let a: Vector = form.coefficients.iter().map(|&c| c as i128).collect();
        let equality = form.relation == Relation::Eq;

        let mut pivot = None;
        for (k, l) in lineality.iter().enumerate() {
            if dot(&a, l)? != 0 {
                pivot = Some(k);
                break;
            }
        }
        if let Some(k) = pivot {
            let mut l0 = lineality.swap_remove(k);
            let mut a0 = dot(&a, &l0)?;
            if a0 < 0 {
                l0.iter_mut().for_each(|x| *x = -*x);
                a0 = -a0;
            }
            for l in lineality.iter_mut() {
                let al = dot(&a, l)?;
                if al != 0 {
                    *l = combine(a0, l, al, &l0)?;
                }
            }
            for g in rays.iter_mut() {
                let ag = dot(&a, &g.v)?;
                if ag != 0 {
                    g.v = combine(a0, &g.v, ag, &l0)?;
                }
                set_bit(&mut g.zeros, step);
            }
            if !equality {
                // l0 was tight at every earlier constraint
                let mut zeros = vec![0; words];
                (0..step).for_each(|i| set_bit(&mut zeros, i));
                rays.push(Generator {
                    v: reduce(l0),
                    zeros,
                });
            }
            continue;
        }

        let mut values = Vec::with_capacity(rays.len());
        for g in &rays {
            values.push(dot(&a, &g.v)?);
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < 0).collect();
        let free = n - lineality.len();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[q].zeros)
                    .map(|(x, y)| x & y)
                    .collect();
                if free >= 2 && (popcount(&common) as usize) + 2 < free {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == q || !is_subset(&common, &rays[t].zeros));
                if !adjacent {
                    continue;
                }
                let mut zeros = common;
                set_bit(&mut zeros, step);
                fresh.push(Generator {
                    v: combine(values[p], &rays[q].v, values[q], &rays[p].v)?,
                    zeros,
                });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut g) in rays.into_iter().enumerate() {
            let keep = values[i] == 0 || (values[i] > 0 && !equality);
            if keep {
                if values[i] == 0 {
                    set_bit(&mut g.zeros, step);
                }
                next.push(g);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    if !lineality.is_empty() {
        return Err(Error::Lineality(lineality.len()));
    }
    let mut out = rays
        .into_iter()
        .map(|g| {
            let coords = g
                .v
                .iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("ray coordinate")))
                .collect::<Result<Vec<_>>>()?;
            ConePoint::new(sys.r, sys.s, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{inequality_system, ConeKind};

    #[test]
    fn rank_one_eqlr() {
        let sys = inequality_system(1, 3, ConeKind::EqLR).unwrap();
        let got: Vec<String> = dd_rays(&sys).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["0;1;1", "1;0;1", "1;1;1"]);
    }

    #[test]
    fn rank_two_lr_has_five() {
        let sys = inequality_system(2, 3, ConeKind::LR).unwrap();
        assert_eq!(dd_rays(&sys).unwrap().len(), 5);
    }

    #[test]
    fn non_pointed_cones_are_refused() {
        for kind in [ConeKind::C, ConeKind::EqC] {
            let sys = inequality_system(2, 3, kind).unwrap();
            assert!(matches!(dd_rays(&sys), Err(Error::Lineality(_))));
        }
    }

    #[test]
    fn dimension_ceiling() {
        let sys = inequality_system(4, 3, ConeKind::LR).unwrap();
        assert!(matches!(dd_rays(&sys), Err(Error::ResourceLimit(_))));
    }
}

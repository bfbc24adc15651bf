//! Stable Littlewood-Richardson coefficients by counting LR skew tableaux.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dashmap::DashMap;

use super::partition::{partitions_between, Partition};
use super::subset::{tau, SubsetD};
use crate::error::{Error, Result};

type Key = (Vec<usize>, Vec<usize>, Vec<usize>);

fn cache() -> &'static DashMap<Key, u64> {
    static CACHE: OnceLock<DashMap<Key, u64>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// `c_{λμ}^ν`, independent of any ambient Grassmannian.
pub fn lr_coef(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.weight() + mu.weight() != nu.weight() || !nu.contains(lam) || !nu.contains(mu) {
        return 0;
    }
    if lam.is_zero() || mu.is_zero() {
        return 1;
    }
    // symmetric in (λ, μ): store under a sorted pair
    let (a, b) = if lam.trimmed() <= mu.trimmed() {
        (lam.trimmed(), mu.trimmed())
    } else {
        (mu.trimmed(), lam.trimmed())
    };
    let key = (a.to_vec(), b.to_vec(), nu.trimmed().to_vec());
    if let Some(v) = cache().get(&key) {
        return *v;
    }
    let value = count_lr_tableaux(lam.trimmed(), mu.trimmed(), nu.trimmed());
    cache().insert(key, value);
    value
}

/// Number of semistandard fillings of `outer/inner` with content `content`
/// whose right-to-left, top-to-bottom reading word is a lattice word.
fn count_lr_tableaux(inner: &[usize], content: &[usize], outer: &[usize]) -> u64 {
    let rows = outer.len();
    let inner_at = |i: usize| inner.get(i).copied().unwrap_or(0);
    // cells in reading order
    let mut cells = Vec::new();
    for i in 0..rows {
        for c in (inner_at(i)..outer[i]).rev() {
            cells.push((i, c));
        }
    }
    let width = outer.first().copied().unwrap_or(0);
    let mut grid = vec![vec![0u8; width]; rows];
    let mut counts = vec![0usize; content.len() + 1];

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        inner: &'a [usize],
        outer: &'a [usize],
        content: &'a [usize],
    }

    fn rec(k: usize, ctx: &Ctx<'_>, grid: &mut [Vec<u8>], counts: &mut [usize]) -> u64 {
        if k == ctx.cells.len() {
            return 1;
        }
        let (i, c) = ctx.cells[k];
        // weakly increasing along the row: bounded by the cell to the right
        let mut hi = ctx.content.len().min(i + 1);
        if c + 1 < ctx.outer[i] {
            hi = hi.min(grid[i][c + 1] as usize);
        }
        // strictly increasing down columns
        let mut lo = 1;
        if i > 0 && c >= ctx.inner.get(i - 1).copied().unwrap_or(0) {
            lo = grid[i - 1][c] as usize + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            if counts[v] >= ctx.content[v - 1] {
                continue;
            }
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            counts[v] += 1;
            grid[i][c] = v as u8;
            total += rec(k + 1, ctx, grid, counts);
            counts[v] -= 1;
        }
        grid[i][c] = 0;
        total
    }

    let ctx = Ctx {
        cells: &cells,
        inner,
        outer,
        content,
    };
    rec(0, &ctx, &mut grid, &mut counts)
}

/// Multi-factor structure coefficient `c_{λ^1,…,λ^m}^ν` by a left fold of
/// two-factor expansions, discarding intermediate shapes not inside `ν`.
pub fn multi_coef(lams: &[Partition], nu: &Partition) -> u64 {
    let Some((first, rest)) = lams.split_first() else {
        return u64::from(nu.is_zero());
    };
    let total: usize = lams.iter().map(Partition::weight).sum();
    if total != nu.weight() || lams.iter().any(|l| !nu.contains(l)) {
        return 0;
    }
    let Some((last, middle)) = rest.split_last() else {
        return u64::from(first.trimmed() == nu.trimmed());
    };
    let mut layer: BTreeMap<Partition, u64> = BTreeMap::new();
    layer.insert(Partition::new(first.trimmed().to_vec()).unwrap(), 1);
    for lam in middle {
        let mut next = BTreeMap::new();
        for (kappa, mult) in &layer {
            let weight = kappa.weight() + lam.weight();
            for gamma in partitions_between(kappa, nu, weight) {
                let c = lr_coef(kappa, lam, &gamma);
                if c > 0 {
                    let gamma = Partition::new(gamma.trimmed().to_vec()).unwrap();
                    *next.entry(gamma).or_insert(0) += mult * c;
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|(kappa, mult)| mult * lr_coef(kappa, last, nu))
        .sum()
}

/// `c_{I_1,…,I_{s-1}}^K := c_{τ(I_1),…,τ(I_{s-1})}^{τ(K)}`.
///
/// `K` may live in a larger ambient set than the inputs; the coefficient is
/// the stable one.
pub fn coef_of_subsets(inputs: &[SubsetD], output: &SubsetD) -> Result<u64> {
    let d = output.len();
    if let Some(bad) = inputs.iter().find(|i| i.len() != d) {
        return Err(Error::Datum(format!(
            "subset {bad} has {} elements, expected {d}",
            bad.len()
        )));
    }
    let lams: Vec<Partition> = inputs.iter().map(tau).collect();
    Ok(multi_coef(&lams, &tau(output)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_factor_examples() {
        assert_eq!(lr_coef(&p(&[2, 1]), &p(&[]), &p(&[2, 1])), 1);
        assert_eq!(lr_coef(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coef(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_coef(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coef(&p(&[1]), &p(&[1]), &p(&[1])), 0);
        assert_eq!(lr_coef(&p(&[2]), &p(&[1]), &p(&[1, 1, 1])), 0);
    }

    #[test]
    fn zero_padding_is_irrelevant() {
        assert_eq!(
            lr_coef(&p(&[2, 1, 0, 0]), &p(&[1, 0]), &p(&[3, 1, 0])),
            lr_coef(&p(&[2, 1]), &p(&[1]), &p(&[3, 1]))
        );
    }

    #[test]
    fn multi_factor_examples() {
        assert_eq!(multi_coef(&[p(&[2, 1])], &p(&[2, 1, 0])), 1);
        assert_eq!(multi_coef(&[p(&[1]), p(&[1])], &p(&[2])), 1);
        assert_eq!(multi_coef(&[p(&[2]), p(&[1])], &p(&[3])), 1);
        // s_1^3 = s_3 + 2 s_21 + s_111
        assert_eq!(multi_coef(&[p(&[1]), p(&[1]), p(&[1])], &p(&[2, 1])), 2);
        assert_eq!(multi_coef(&[p(&[1]), p(&[1]), p(&[1])], &p(&[1, 1, 1])), 1);
    }

    #[test]
    fn subset_coefficients() {
        let s = |v: &[usize], r| SubsetD::new(v.to_vec(), r).unwrap();
        assert_eq!(coef_of_subsets(&[s(&[2], 3), s(&[2], 3)], &s(&[3], 3)).unwrap(), 1);
        assert_eq!(coef_of_subsets(&[s(&[1], 3), s(&[1], 3)], &s(&[1], 3)).unwrap(), 1);
        assert_eq!(coef_of_subsets(&[s(&[2], 3), s(&[2], 3)], &s(&[2], 3)).unwrap(), 0);
        // K in the bigger box used by the alternative nu_r rule
        assert_eq!(coef_of_subsets(&[s(&[3], 3), s(&[2], 3)], &s(&[4], 4)).unwrap(), 1);
        assert!(matches!(
            coef_of_subsets(&[s(&[1, 2], 3), s(&[2], 3)], &s(&[3], 3)),
            Err(Error::Datum(_))
        ));
    }
}

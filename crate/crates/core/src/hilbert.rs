//! Indecomposable elements of the lattice-point semigroups of `LR` and
//! `EqLR`, and a bounded search for their Hilbert bases.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::{inequality_system, ConeKind, ConePoint, FormLabel, InequalitySystem, Relation};
use crate::error::{Error, Result};
use crate::rays::{enumerate_rays, RaySet};

/// Largest number of candidate tuples a single search may visit.
pub const SEARCH_LIMIT: u128 = 50_000_000;

/// Result of a bounded search: every indecomposable lattice point whose
/// largest output part is at most `bound`. It is the full Hilbert basis only
/// when the basis happens to fit inside the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedHilbertBasis {
    pub r: usize,
    pub s: usize,
    pub kind: ConeKind,
    pub bound: usize,
    pub complete_up_to_bound: bool,
    pub count: usize,
    pub elements: Vec<ConePoint>,
    pub members_scanned: usize,
}

impl BoundedHilbertBasis {
    pub fn contains(&self, x: &ConePoint) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

fn semigroup_system(x: &ConePoint, kind: ConeKind) -> Result<std::sync::Arc<InequalitySystem>> {
    if !matches!(kind, ConeKind::LR | ConeKind::EqLR) {
        return Err(Error::Domain(format!(
            "lattice semigroups are handled for lr and eqlr, not {kind}"
        )));
    }
    let sys = inequality_system(x.r(), x.s(), kind)?;
    if x.is_zero() || !sys.contains(x)? {
        return Err(Error::Domain(format!(
            "{x} is not a nonzero lattice point of {kind}_{}^{}",
            x.r(),
            x.s()
        )));
    }
    Ok(sys)
}

/// Weakly decreasing nonnegative vectors `p` with `p ≤ bound` entrywise.
fn partitions_under(bound: &[i64]) -> Vec<Vec<i64>> {
    fn go(bound: &[i64], cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == bound.len() {
            out.push(cur.clone());
            return;
        }
        let top = cap.min(bound[cur.len()]);
        for v in 0..=top {
            cur.push(v);
            go(bound, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, i64::MAX, &mut Vec::new(), &mut out);
    out
}

/// Number of weakly decreasing nonnegative vectors under `bound`.
fn count_under(bound: &[i64]) -> u128 {
    // ways[v] = number of valid prefixes ending in value v
    let top = bound.iter().copied().max().unwrap_or(0).max(0) as usize;
    let mut ways = vec![0u128; top + 1];
    if bound.is_empty() {
        return 1;
    }
    for (v, w) in ways.iter_mut().enumerate() {
        *w = u128::from(v as i64 <= bound[0]);
    }
    for &b in &bound[1..] {
        let mut next = vec![0u128; top + 1];
        let mut suffix = 0u128;
        for v in (0..=top).rev() {
            suffix += ways[v];
            if v as i64 <= b {
                next[v] = suffix;
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// A splitting `x = y + (x - y)` into two nonzero members of `kind`, or
/// `None` when `x` is indecomposable. Subtracting a single extremal ray is
/// tried first; the exhaustive fallback only visits `y` with `|y| ≤ |x|/2`.
pub fn decompose(x: &ConePoint, kind: ConeKind) -> Result<Option<(ConePoint, ConePoint)>> {
    let sys = semigroup_system(x, kind)?;
    let (r, s) = (x.r(), x.s());
    if let Some(split) = split_off_ray(x, kind, &sys) {
        return Ok(Some(split));
    }
    let work: u128 = x.blocks().map(count_under).product();
    if work > SEARCH_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "decomposing {x} would visit {work} candidate tuples"
        )));
    }
    let per_block: Vec<Vec<Vec<i64>>> = x.blocks().map(partitions_under).collect();
    let total: i64 = x.coords().iter().sum();
    // the output block is the outer loop so the search splits across workers
    let outer = &per_block[s - 1];
    let found = outer.par_iter().find_map_any(|nu| {
        let mut y = vec![0i64; r * s];
        y[(s - 1) * r..].copy_from_slice(nu);
        search(&per_block, 0, &mut y, x, &sys, total)
    });
    Ok(found.map(|y| {
        let y = ConePoint::new(r, s, y).expect("shape preserved");
        let z = x.add_scaled(-1, &y).expect("shape preserved");
        (y, z)
    }))
}

/// Tries `y = ρ` for each primitive extremal ray `ρ ≤ x`. Any point that is
/// a nonnegative integer combination of two or more rays splits this way.
fn split_off_ray(x: &ConePoint, kind: ConeKind, sys: &InequalitySystem) -> Option<(ConePoint, ConePoint)> {
    let rays = enumerate_rays(x.r(), x.s(), kind).ok()?;
    rays.rays.iter().find_map(|ray| {
        let y = &ray.point;
        if y == x || !y.dominated_by(x) {
            return None;
        }
        let z = x.add_scaled(-1, y).ok()?;
        sys.contains_coords(z.coords()).then(|| (y.clone(), z))
    })
}

fn search(
    per_block: &[Vec<Vec<i64>>],
    k: usize,
    y: &mut Vec<i64>,
    x: &ConePoint,
    sys: &InequalitySystem,
    total: i64,
) -> Option<Vec<i64>> {
    let r = x.r();
    let s = x.s();
    if k == s - 1 {
        let weight: i64 = y.iter().sum();
        if weight == 0 || 2 * weight > total {
            return None;
        }
        if !sys.contains_coords(y) {
            return None;
        }
        let z: Vec<i64> = x.coords().iter().zip(y.iter()).map(|(a, b)| a - b).collect();
        return sys.contains_coords(&z).then(|| y.clone());
    }
    for p in &per_block[k] {
        y[k * r..(k + 1) * r].copy_from_slice(p);
        if let Some(hit) = search(per_block, k + 1, y, x, sys, total) {
            return Some(hit);
        }
    }
    None
}

/// Whether `x` is not the sum of two nonzero lattice points of `kind`.
pub fn is_indecomposable(x: &ConePoint, kind: ConeKind) -> Result<bool> {
    Ok(decompose(x, kind)?.is_none())
}

/// `1 + max ν₁` over the extremal rays of `kind` at `(r, s)`.
pub fn default_bound(r: usize, s: usize, kind: ConeKind) -> Result<usize> {
    let rays = enumerate_rays(r, s, kind)?;
    let top = rays
        .rays
        .iter()
        .map(|ray| ray.point.entry(s, 1))
        .max()
        .unwrap_or(0);
    Ok(top as usize + 1)
}

/// Forms with 0/±1 coefficients as index lists: `∑ x[plus] − ∑ x[minus]`
/// is `≥ 0`, or `= 0` when `exact`.
struct SparseSystem {
    forms: Vec<(Vec<usize>, Vec<usize>, bool)>,
}

impl SparseSystem {
    fn new(sys: &InequalitySystem, keep: impl Fn(&FormLabel) -> bool) -> Self {
        let forms = sys
            .forms
            .iter()
            .filter(|f| keep(&f.label))
            .map(|f| {
                debug_assert!(f.coefficients.iter().all(|c| c.abs() <= 1));
                let c = &f.coefficients;
                let plus = (0..c.len()).filter(|&i| c[i] > 0).collect();
                let minus = (0..c.len()).filter(|&i| c[i] < 0).collect();
                (plus, minus, f.relation == Relation::Eq)
            })
            .collect();
        SparseSystem { forms }
    }

    fn holds(&self, k: usize, coords: &[i64]) -> bool {
        let (plus, minus, exact) = &self.forms[k];
        let p: i64 = plus.iter().map(|&i| coords[i]).sum();
        let m: i64 = minus.iter().map(|&i| coords[i]).sum();
        if *exact {
            p == m
        } else {
            p >= m
        }
    }

    /// Checks the last violated form first; `hot` carries it between calls.
    fn admits(&self, coords: &[i64], hot: &mut usize) -> bool {
        if self.forms.is_empty() {
            return true;
        }
        if !self.holds(*hot, coords) {
            return false;
        }
        for k in 0..self.forms.len() {
            if k != *hot && !self.holds(k, coords) {
                *hot = k;
                return false;
            }
        }
        true
    }
}

/// Members of one box, bucketed by coordinate sum. Each bucket holds rows of
/// `r·s` coordinates back to back; parts never exceed the bound, so `i16` is
/// enough and keeps millions of members affordable.
type Buckets = BTreeMap<i64, Vec<i16>>;

/// All members of `kind` with integer partition blocks and `ν₁ ≤ bound`.
fn members_in_box(r: usize, s: usize, kind: ConeKind, bound: usize) -> Result<Buckets> {
    let sys = inequality_system(r, s, kind)?;
    let nus = partitions_under(&vec![bound as i64; r]);
    let work: u128 = nus
        .iter()
        .map(|nu| count_under(nu).pow((s - 1) as u32))
        .sum();
    if work > SEARCH_LIMIT || bound > i16::MAX as usize {
        return Err(Error::ResourceLimit(format!(
            "bounded search at r={r}, s={s}, B={bound} would visit {work} candidate tuples"
        )));
    }
    // chamber, nonnegativity, containment and trace hold by construction
    let filter = SparseSystem::new(&sys, |l| matches!(l, FormLabel::Horn(_)));
    let found: Vec<Buckets> = nus
        .par_iter()
        .map(|nu| {
            let lams = partitions_under(nu);
            let nu_weight: i64 = nu.iter().sum();
            let mut search = BoxSearch {
                lams: &lams,
                nu_weight,
                coords: vec![0i64; r * s],
                r,
                s,
                kind,
                filter: &filter,
                hot: 0,
                out: Buckets::new(),
            };
            search.coords[(s - 1) * r..].copy_from_slice(nu);
            search.fill(0, 0);
            search.out
        })
        .collect();
    let mut merged = Buckets::new();
    for part in found {
        for (degree, rows) in part {
            merged.entry(degree).or_default().extend(rows);
        }
    }
    Ok(merged)
}

struct BoxSearch<'a> {
    lams: &'a [Vec<i64>],
    nu_weight: i64,
    coords: Vec<i64>,
    r: usize,
    s: usize,
    kind: ConeKind,
    filter: &'a SparseSystem,
    hot: usize,
    out: Buckets,
}

impl BoxSearch<'_> {
    fn fill(&mut self, k: usize, weight: i64) {
        let (r, s) = (self.r, self.s);
        if k == s - 1 {
            let balanced = match self.kind {
                ConeKind::LR => weight == self.nu_weight,
                _ => weight >= self.nu_weight,
            };
            if balanced
                && self.coords.iter().any(|&c| c != 0)
                && self.filter.admits(&self.coords, &mut self.hot)
            {
                self.out
                    .entry(weight + self.nu_weight)
                    .or_default()
                    .extend(self.coords.iter().map(|&c| c as i16));
            }
            return;
        }
        for i in 0..self.lams.len() {
            let lam = &self.lams[i];
            let w: i64 = lam.iter().sum();
            self.coords[k * r..(k + 1) * r].copy_from_slice(lam);
            self.fill(k + 1, weight + w);
        }
    }
}

/// Every indecomposable lattice point of `kind` at `(r, s)` with `ν₁ ≤ bound`.
///
/// Members are processed by increasing coordinate sum. A member is
/// decomposable exactly when subtracting some already accepted element
/// leaves a member, since any summand of a point in the box lies in the box.
pub fn hilbert_basis_bounded(
    r: usize,
    s: usize,
    kind: ConeKind,
    bound: usize,
) -> Result<BoundedHilbertBasis> {
    if !matches!(kind, ConeKind::LR | ConeKind::EqLR) {
        return Err(Error::Domain(format!(
            "lattice semigroups are handled for lr and eqlr, not {kind}"
        )));
    }
    if bound == 0 {
        return Err(Error::Range("the bound must be at least 1".into()));
    }
    let sys = inequality_system(r, s, kind)?;
    let dim = r * s;
    let buckets = members_in_box(r, s, kind, bound)?;
    let members_scanned = buckets.values().map(|rows| rows.len() / dim).sum();
    let sparse = SparseSystem::new(&sys, |_| true);
    let mut accepted: Vec<Vec<i64>> = Vec::new();
    for (_, level) in buckets {
        // each worker retries the element that last split a point
        let fresh: Vec<Vec<i64>> = level
            .par_chunks(dim)
            .map_init(
                || (0usize, 0usize, vec![0i64; dim]),
                |(last, hot, rest), x| {
                    let n = accepted.len();
                    let splits = (0..n).map(|i| (i + *last) % n).find(|&i| {
                        for ((d, &a), &b) in rest.iter_mut().zip(x).zip(&accepted[i]) {
                            *d = a as i64 - b;
                        }
                        rest.iter().all(|&d| d >= 0) && sparse.admits(rest, hot)
                    });
                    match splits {
                        Some(i) => {
                            *last = i;
                            None
                        }
                        None => Some(x.iter().map(|&c| c as i64).collect()),
                    }
                },
            )
            .flatten()
            .collect();
        accepted.extend(fresh);
    }
    let mut basis: Vec<ConePoint> = accepted
        .into_iter()
        .map(|c| ConePoint::new(r, s, c))
        .collect::<Result<_>>()?;
    basis.sort();
    Ok(BoundedHilbertBasis {
        r,
        s,
        kind,
        bound,
        complete_up_to_bound: true,
        count: basis.len(),
        elements: basis,
        members_scanned,
    })
}

/// The first lattice point on each ray, checked to be indecomposable in the
/// ray set's own cone.
pub fn first_lattice_points(rays: &RaySet) -> Result<Vec<ConePoint>> {
    let kind = rays.kind;
    rays.rays
        .par_iter()
        .map(|ray| {
            let p = ray.point.primitive();
            if !is_indecomposable(&p, kind)? {
                return Err(Error::InternalConsistency(format!(
                    "primitive ray point {p} decomposes in {kind}"
                )));
            }
            Ok(p)
        })
        .collect()
}

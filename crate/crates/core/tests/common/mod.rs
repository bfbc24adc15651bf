//! Shared data and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use lrcone::cones::{ConeKind, ConePoint};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn pt(s: &str) -> ConePoint {
    s.parse().unwrap()
}

pub fn pts(list: &[&str]) -> Vec<ConePoint> {
    list.iter().map(|s| pt(s)).collect()
}

/// EqLR rays for r = 1, 2, 3 at s = 3: (on the LR face, strictly equivariant).
pub const EQLR_TABLE: [(&[&str], &[&str]); 3] = [
    (&["1;0;1", "0;1;1"], &["1;1;1"]),
    (
        &["0,0;1,0;1,0", "0,0;1,1;1,1", "1,0;0,0;1,0", "1,1;0,0;1,1", "1,0;1,0;1,1"],
        &["1,0;1,0;1,0", "1,0;1,1;1,1", "1,1;1,0;1,1", "1,1;1,1;1,1", "1,1;1,1;2,1"],
    ),
    (
        &[
            "0,0,0;1,0,0;1,0,0", "0,0,0;1,1,0;1,1,0", "0,0,0;1,1,1;1,1,1", "1,0,0;0,0,0;1,0,0",
            "1,0,0;1,0,0;1,1,0", "1,0,0;1,1,0;1,1,1", "1,1,0;0,0,0;1,1,0", "1,1,0;1,0,0;1,1,1",
            "1,1,0;1,1,0;2,1,1", "1,1,1;0,0,0;1,1,1",
        ],
        &[
            "1,0,0;1,0,0;1,0,0", "1,0,0;1,1,0;1,1,0", "1,0,0;1,1,1;1,1,1", "1,1,0;1,0,0;1,1,0",
            "1,1,0;1,1,0;1,1,0", "1,1,0;1,1,0;1,1,1", "1,1,0;1,1,0;2,1,0", "1,1,0;1,1,1;1,1,1",
            "1,1,0;1,1,1;2,1,1", "1,1,1;1,0,0;1,1,1", "1,1,1;1,1,0;1,1,1", "1,1,1;1,1,0;2,1,1",
            "1,1,1;1,1,1;1,1,1", "1,1,1;1,1,1;2,1,1", "1,1,1;1,1,1;2,2,1", "1,1,1;2,1,1;2,2,1",
            "2,1,1;1,1,1;2,2,1",
        ],
    ),
];

pub const LR_COUNTS: [usize; 7] = [2, 5, 10, 20, 44, 114, 362];
pub const EQLR_COUNTS: [usize; 7] = [3, 10, 27, 72, 195, 532, 1469];
pub const HILBERT_COUNTS: [usize; 6] = [3, 10, 27, 72, 195, 535];

pub const WORKED_FACET: (&str, &str) = ("{2};{2}", "{3}");
pub const WORKED_TYPE1: [&str; 3] = ["1,1,0;1,0,0;1,1,1", "1,0,0;1,1,0;1,1,1", "1,0,0;1,0,0;1,1,0"];
pub const WORKED_TYPE2: [&str; 7] = [
    "0,0,0;1,0,0;1,0,0",
    "0,0,0;1,1,1;1,1,1",
    "1,0,0;0,0,0;1,0,0",
    "1,1,1;0,0,0;1,1,1",
    "1,0,0;1,0,0;1,0,0",
    "1,0,0;1,1,1;1,1,1",
    "1,1,1;1,0,0;1,1,1",
];
pub const WORKED_NON_EXTREMAL: [&str; 2] = ["2,1,1;2,1,1;2,2,2", "2,1,1;2,1,1;3,2,2"];

pub const RANK6_EXTRAS: [&str; 3] = [
    "2,1,1,1,1,1;2,2,2,1,1,1;3,3,2,2,2,1",
    "2,2,1,1,1,1;2,2,1,1,1,1;3,2,2,2,2,1",
    "2,2,2,1,1,1;2,1,1,1,1,1;3,3,2,2,2,1",
];

/// Weakly decreasing nonnegative vectors of length `rows` with parts ≤ `cols`.
pub fn box_partitions(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn go(rows: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for v in 0..=cap {
            cur.push(v);
            go(rows, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// All `s`-tuples of partitions in the `r × bound` box, as cone points.
pub fn box_points(r: usize, s: usize, bound: usize) -> Vec<ConePoint> {
    let parts = box_partitions(r, bound);
    let mut out = Vec::new();
    let mut idx = vec![0usize; s];
    loop {
        let coords: Vec<i64> = idx.iter().flat_map(|&i| parts[i].iter().map(|&x| x as i64)).collect();
        out.push(ConePoint::new(r, s, coords).unwrap());
        let mut k = 0;
        while k < s {
            idx[k] += 1;
            if idx[k] < parts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == s {
            return out;
        }
    }
}

/// A random nonzero combination of `gens` with coefficients in `0..=max`.
pub fn random_combination(gens: &[ConePoint], max: i64, rng: &mut ChaCha8Rng) -> ConePoint {
    let mut x = ConePoint::zero(gens[0].r(), gens[0].s());
    while x.is_zero() {
        for g in gens {
            let c = rng.random_range(0..=max);
            if c > 0 {
                x = x.add_scaled(c, g).unwrap();
            }
        }
    }
    x
}

type Poly = HashMap<Vec<usize>, i64>;

/// Schur polynomial in `n` variables, summed over semistandard tableaux.
fn schur(shape: &[usize], n: usize) -> Poly {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut poly = Poly::new();
    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, n: usize, poly: &mut Poly) {
        if k == cells.len() {
            let mut exp = vec![0; n];
            grid.iter().flatten().for_each(|&v| exp[v - 1] += 1);
            *poly.entry(exp).or_default() += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            grid[i][j] = v;
            fill(k + 1, cells, grid, n, poly);
        }
        grid[i][j] = 0;
    }
    fill(0, &cells, &mut grid, n, &mut poly);
    poly
}

fn multiply(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Coefficients of `s_λ · s_μ` in the Schur basis, computed in `n` variables
/// by repeatedly peeling off the lexicographically largest monomial.
pub fn schur_product(lam: &[usize], mu: &[usize], n: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut poly = multiply(&schur(lam, n), &schur(mu, n));
    let mut out = BTreeMap::new();
    while let Some(top) = poly.keys().max().cloned() {
        let c = poly[&top];
        let shape: Vec<usize> = top.iter().copied().filter(|&x| x > 0).collect();
        for (e, v) in schur(&shape, n) {
            *poly.entry(e).or_default() -= c * v;
        }
        poly.retain(|_, v| *v != 0);
        out.insert(top, c);
    }
    out
}

pub fn kinds_with_rays() -> [ConeKind; 3] {
    [ConeKind::CSL, ConeKind::LR, ConeKind::EqLR]
}

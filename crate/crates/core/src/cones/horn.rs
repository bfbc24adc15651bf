use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::point::ConePoint;
use crate::combinatorics::{coef_of_subsets, tau, Partition, SubsetD};
use crate::error::{Error, Result};

/// `(I_1, …, I_{s-1}; K)`: `d`-subsets of `[r]` with structure coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HornDatum {
    inputs: Vec<SubsetD>,
    output: SubsetD,
}

impl HornDatum {
    /// Validates cardinalities and the coefficient condition.
    pub fn new(inputs: Vec<SubsetD>, output: SubsetD) -> Result<Self> {
        let h = Self::new_unchecked(inputs, output)?;
        let c = coef_of_subsets(&h.inputs, &h.output)?;
        if c != 1 {
            return Err(Error::Datum(format!(
                "{h} has structure coefficient {c}, not 1"
            )));
        }
        Ok(h)
    }

    /// Shape checks only; the coefficient may be anything.
    pub(crate) fn new_unchecked(inputs: Vec<SubsetD>, output: SubsetD) -> Result<Self> {
        let r = output.ambient();
        let d = output.len();
        if inputs.len() < 2 {
            return Err(Error::Datum("need at least two input subsets".into()));
        }
        if d == 0 || d >= r {
            return Err(Error::Datum(format!("subset size {d} is not in [1, {r})")));
        }
        for i in &inputs {
            if i.len() != d || i.ambient() != r {
                return Err(Error::Datum(format!(
                    "subset {i} does not match size {d} in [{r}]"
                )));
            }
        }
        Ok(Self { inputs, output })
    }

    pub fn r(&self) -> usize {
        self.output.ambient()
    }

    pub fn s(&self) -> usize {
        self.inputs.len() + 1
    }

    pub fn d(&self) -> usize {
        self.output.len()
    }

    pub fn inputs(&self) -> &[SubsetD] {
        &self.inputs
    }

    pub fn output(&self) -> &SubsetD {
        &self.output
    }

    /// Subset attached to block `k` (1-based); block `s` is `K`.
    pub fn subset(&self, k: usize) -> &SubsetD {
        if k == self.s() {
            &self.output
        } else {
            &self.inputs[k - 1]
        }
    }

    /// Parses `{2},{2};{3}` for ambient rank `r`.
    pub fn parse(text: &str, r: usize) -> Result<Self> {
        let (ins, out) = text
            .rsplit_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `I_1,...,I_(s-1);K`, got {text:?}")))?;
        let inputs = split_subsets(ins)
            .iter()
            .map(|t| SubsetD::parse(t, r))
            .collect::<Result<Vec<_>>>()?;
        HornDatum::new(inputs, SubsetD::parse(out, r)?)
    }

    /// Parses the input subsets separated by `;` (as in `{2};{2}`) and `K`.
    pub fn parse_parts(inputs: &str, output: &str, r: usize) -> Result<Self> {
        let inputs = inputs
            .split(';')
            .map(|t| SubsetD::parse(t, r))
            .collect::<Result<Vec<_>>>()?;
        HornDatum::new(inputs, SubsetD::parse(output, r)?)
    }
}

fn split_subsets(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch);
            }
            '}' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

impl fmt::Display for HornDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ";{}", self.output)
    }
}

/// All Horn data with subsets of size `d` in `[r]`, `s - 1` inputs, in
/// lexicographic order.
pub fn enumerate_horn(r: usize, s: usize, d: usize) -> Result<Vec<HornDatum>> {
    if s < 3 {
        return Err(Error::Range(format!("s = {s} must be at least 3")));
    }
    if d == 0 || d >= r {
        return Err(Error::Range(format!(
            "no valid d: need 1 <= d < r, got d = {d}, r = {r}"
        )));
    }
    let subsets = SubsetD::all(r, d);
    let taus: Vec<Partition> = subsets.iter().map(tau).collect();
    let weights: Vec<usize> = taus.iter().map(Partition::weight).collect();
    let m = s - 1;
    let mut found: Vec<HornDatum> = (0..subsets.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut local = Vec::new();
            let mut idx = vec![0usize; m];
            idx[0] = first;
            for k in 0..subsets.len() {
                if !taus[k].contains(&taus[first]) || weights[k] < weights[first] {
                    continue;
                }
                tuples(&mut idx, 1, weights[k] - weights[first], k, &taus, &weights, &mut |idx| {
                    let lams: Vec<Partition> = idx.iter().map(|&i| taus[i].clone()).collect();
                    if crate::combinatorics::multi_coef(&lams, &taus[k]) == 1 {
                        local.push(HornDatum {
                            inputs: idx.iter().map(|&i| subsets[i].clone()).collect(),
                            output: subsets[k].clone(),
                        });
                    }
                });
            }
            local
        })
        .collect();
    found.sort();
    Ok(found)
}

// Fills idx[pos..] with input subsets whose tau weights sum to `left`.
fn tuples(
    idx: &mut Vec<usize>,
    pos: usize,
    left: usize,
    out_idx: usize,
    taus: &[Partition],
    weights: &[usize],
    emit: &mut dyn FnMut(&[usize]),
) {
    if pos == idx.len() {
        if left == 0 {
            emit(idx);
        }
        return;
    }
    for i in 0..taus.len() {
        if weights[i] > left || !taus[out_idx].contains(&taus[i]) {
            continue;
        }
        idx[pos] = i;
        tuples(idx, pos + 1, left - weights[i], out_idx, taus, weights, emit);
    }
}

/// Every Horn datum for `(r, s)` over all `1 ≤ d < r`, computed once per
/// `(r, s)` and shared.
pub fn all_horn(r: usize, s: usize) -> Result<Arc<Vec<HornDatum>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<HornDatum>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(r, s)) {
        return Ok(v.clone());
    }
    if s < 3 {
        return Err(Error::Range(format!("s = {s} must be at least 3")));
    }
    let mut all = Vec::new();
    for d in 1..r {
        all.extend(enumerate_horn(r, s, d)?);
    }
    all.sort();
    let all = Arc::new(all);
    cache.lock().unwrap().entry((r, s)).or_insert(all.clone());
    Ok(all)
}

/// `∑_j ∑_{a∈I_j} λ^j_a − ∑_{k∈K} ν_k`.
pub fn horn_slack(x: &ConePoint, h: &HornDatum) -> Result<i64> {
    x.check_shape(h.r(), h.s())?;
    let lhs: i64 = h
        .inputs
        .iter()
        .enumerate()
        .map(|(j, sub)| sub.elements().iter().map(|&a| x.entry(j + 1, a)).sum::<i64>())
        .sum();
    let rhs: i64 = h.output.elements().iter().map(|&k| x.entry(h.s(), k)).sum();
    Ok(lhs - rhs)
}

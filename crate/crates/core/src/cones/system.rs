use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::horn::{all_horn, HornDatum};
use super::point::ConePoint;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// The five cones: eigenvalues of sums (`C`), of majorized sums (`EqC`), the
/// two Littlewood-Richardson cones, and the `SL_r` slice of `LR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    C,
    EqC,
    LR,
    EqLR,
    CSL,
}

impl ConeKind {
    pub const ALL: [ConeKind; 5] = [
        ConeKind::C,
        ConeKind::EqC,
        ConeKind::LR,
        ConeKind::EqLR,
        ConeKind::CSL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConeKind::C => "c",
            ConeKind::EqC => "eqc",
            ConeKind::LR => "lr",
            ConeKind::EqLR => "eqlr",
            ConeKind::CSL => "csl",
        }
    }

    pub fn is_pointed(self) -> bool {
        !matches!(self, ConeKind::C | ConeKind::EqC)
    }
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" => Ok(ConeKind::C),
            "eqc" => Ok(ConeKind::EqC),
            "lr" => Ok(ConeKind::LR),
            "eqlr" => Ok(ConeKind::EqLR),
            "csl" => Ok(ConeKind::CSL),
            other => Err(Error::Parse(format!("unknown cone kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `form · x ≥ 0`
    Geq,
    /// `form · x = 0`
    Eq,
}

/// What a linear form encodes. Blocks and indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormLabel {
    /// `x^(block)_index − x^(block)_(index+1)`
    Chamber { block: usize, index: usize },
    /// `x^(block)_r`
    Nonneg { block: usize },
    /// `∑_j |λ^j| − |ν|`
    Trace,
    /// Horn form of a datum.
    Horn(HornDatum),
    /// `ν_index − λ^block_index`
    Containment { block: usize, index: usize },
}

impl FormLabel {
    /// The coefficient vector this label denotes in `(ℝ^r)^s`.
    pub fn coefficients(&self, r: usize, s: usize) -> Vec<i64> {
        let mut c = vec![0i64; r * s];
        let at = |k: usize, a: usize| (k - 1) * r + (a - 1);
        match self {
            FormLabel::Chamber { block, index } => {
                c[at(*block, *index)] += 1;
                c[at(*block, index + 1)] -= 1;
            }
            FormLabel::Nonneg { block } => c[at(*block, r)] = 1,
            FormLabel::Trace => {
                for k in 1..s {
                    for a in 1..=r {
                        c[at(k, a)] = 1;
                    }
                }
                for a in 1..=r {
                    c[at(s, a)] = -1;
                }
            }
            FormLabel::Horn(h) => {
                for k in 1..s {
                    for &a in h.subset(k).elements() {
                        c[at(k, a)] += 1;
                    }
                }
                for &a in h.output().elements() {
                    c[at(s, a)] -= 1;
                }
            }
            FormLabel::Containment { block, index } => {
                c[at(s, *index)] += 1;
                c[at(*block, *index)] -= 1;
            }
        }
        c
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Form {
    pub coefficients: Vec<i64>,
    pub relation: Relation,
    pub label: FormLabel,
}

impl Form {
    fn new(label: FormLabel, relation: Relation, r: usize, s: usize) -> Self {
        Form {
            coefficients: label.coefficients(r, s),
            relation,
            label,
        }
    }

    pub fn eval(&self, coords: &[i64]) -> i64 {
        crate::linalg::dot(&self.coefficients, coords)
    }

    pub fn holds(&self, coords: &[i64]) -> bool {
        let v = self.eval(coords);
        match self.relation {
            Relation::Geq => v >= 0,
            Relation::Eq => v == 0,
        }
    }
}

/// The exact list of linear conditions cutting out one cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub r: usize,
    pub s: usize,
    pub kind: ConeKind,
    pub forms: Vec<Form>,
}

impl InequalitySystem {
    pub fn dim(&self) -> usize {
        self.r * self.s
    }

    pub fn contains(&self, x: &ConePoint) -> Result<bool> {
        x.check_shape(self.r, self.s)?;
        Ok(self.contains_coords(x.coords()))
    }

    pub(crate) fn contains_coords(&self, coords: &[i64]) -> bool {
        self.forms.iter().all(|f| f.holds(coords))
    }

    /// Forms that vanish at `x` (equalities included when satisfied).
    pub fn tight_at<'a>(&'a self, coords: &'a [i64]) -> impl Iterator<Item = &'a Form> + 'a {
        self.forms.iter().filter(move |f| f.eval(coords) == 0)
    }
}

fn build_system(r: usize, s: usize, kind: ConeKind) -> Result<InequalitySystem> {
    if r == 0 || s < 3 {
        return Err(Error::Range(format!("need r >= 1 and s >= 3, got r={r}, s={s}")));
    }
    let mut forms = Vec::new();
    for block in 1..=s {
        for index in 1..r {
            forms.push(Form::new(FormLabel::Chamber { block, index }, Relation::Geq, r, s));
        }
    }
    let trace_rel = match kind {
        ConeKind::EqC | ConeKind::EqLR => Relation::Geq,
        _ => Relation::Eq,
    };
    forms.push(Form::new(FormLabel::Trace, trace_rel, r, s));
    match kind {
        ConeKind::LR | ConeKind::EqLR => {
            for block in 1..s {
                forms.push(Form::new(FormLabel::Nonneg { block }, Relation::Geq, r, s));
            }
        }
        ConeKind::CSL => {
            for block in 1..s {
                forms.push(Form::new(FormLabel::Nonneg { block }, Relation::Eq, r, s));
            }
        }
        _ => {}
    }
    if kind == ConeKind::EqLR {
        forms.push(Form::new(FormLabel::Nonneg { block: s }, Relation::Geq, r, s));
        for block in 1..s {
            for index in 1..=r {
                forms.push(Form::new(
                    FormLabel::Containment { block, index },
                    Relation::Geq,
                    r,
                    s,
                ));
            }
        }
    }
    for h in all_horn(r, s)?.iter() {
        forms.push(Form::new(FormLabel::Horn(h.clone()), Relation::Geq, r, s));
    }
    Ok(InequalitySystem { r, s, kind, forms })
}

/// The inequality description of `kind` at `(r, s)`, built once and shared.
pub fn inequality_system(r: usize, s: usize, kind: ConeKind) -> Result<Arc<InequalitySystem>> {
    type Cache = Mutex<HashMap<(usize, usize, ConeKind), Arc<InequalitySystem>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(sys) = cache.lock().unwrap().get(&(r, s, kind)) {
        return Ok(sys.clone());
    }
    let sys = Arc::new(build_system(r, s, kind)?);
    Ok(cache
        .lock()
        .unwrap()
        .entry((r, s, kind))
        .or_insert(sys)
        .clone())
}

/// Exact membership of `x` in the cone `kind`.
pub fn member(x: &ConePoint, kind: ConeKind) -> Result<bool> {
    if x.r() == 0 || x.s() < 3 {
        return Err(Error::Shape(format!(
            "point {x} has r={}, s={}; need r >= 1, s >= 3",
            x.r(),
            x.s()
        )));
    }
    inequality_system(x.r(), x.s(), kind)?.contains(x)
}

/// Nonvanishing of the (equivariant) structure constant, via the cone
/// description of its support.
pub fn nonvanishing(lams: &[Partition], nu: &Partition, equivariant: bool) -> Result<bool> {
    let x = ConePoint::from_partitions(lams, nu)?;
    if x.r() == 0 {
        // all partitions empty
        return Ok(true);
    }
    member(&x, if equivariant { ConeKind::EqLR } else { ConeKind::LR })
}

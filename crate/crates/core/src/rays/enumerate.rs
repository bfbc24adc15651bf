//! Cone-level extremal ray enumeration by recursion over Horn facets.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::extremal::{tight_rank, Ray};
use super::induction::{induction_images, FacetDecomposition};
use super::special::{special_rays, x_j};
use crate::cones::{all_horn, inequality_system, ConeKind, ConePoint};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_RANK: usize = 7;

/// Bookkeeping from one enumeration. A nonzero `rejected_nonmember` means a
/// candidate produced by the recursion was outside the cone, which the
/// theory rules out; it is reported rather than hidden.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayStats {
    pub candidates: usize,
    pub distinct: usize,
    pub rejected_nonmember: usize,
    pub rejected_non_extremal: usize,
}

/// Extremal rays of one cone, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySet {
    pub r: usize,
    pub s: usize,
    pub kind: ConeKind,
    pub rays: Vec<Ray>,
    pub stats: RayStats,
}

impl RaySet {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn points(&self) -> Vec<ConePoint> {
        self.rays.iter().map(|r| r.point.clone()).collect()
    }

    pub fn contains(&self, x: &ConePoint) -> bool {
        let p = x.primitive();
        self.rays.binary_search_by(|r| r.point.cmp(&p)).is_ok()
    }

    /// One ray per line in `a,b;c,d;e,f` form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for ray in &self.rays {
            out.push_str(&ray.point.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> RaySetJson {
        RaySetJson {
            r: self.r,
            s: self.s,
            kind: self.kind,
            count: self.rays.len(),
            rays: self.points(),
        }
    }

    /// Rebuilds from JSON, re-certifying every ray.
    pub fn from_json(json: RaySetJson) -> Result<RaySet> {
        if json.count != json.rays.len() {
            return Err(Error::Parse(format!(
                "header count {} but {} rays listed",
                json.count,
                json.rays.len()
            )));
        }
        let mut rays = json
            .rays
            .iter()
            .map(|p| {
                p.check_shape(json.r, json.s)?;
                let ray = Ray::certify(p, json.kind)?;
                if !ray.is_extremal() || ray.point != *p {
                    return Err(Error::Domain(format!("{p} is not a primitive extremal ray")));
                }
                Ok(ray)
            })
            .collect::<Result<Vec<_>>>()?;
        rays.sort();
        Ok(RaySet {
            r: json.r,
            s: json.s,
            kind: json.kind,
            rays,
            stats: RayStats::default(),
        })
    }
}

/// Serialized form: a `{r, s, kind, count}` header and the ray points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RaySetJson {
    pub r: usize,
    pub s: usize,
    pub kind: ConeKind,
    pub count: usize,
    pub rays: Vec<ConePoint>,
}

type Key = (usize, usize, ConeKind);

/// Memoizing ray enumerator. Sub-cone ray sets are shared by every facet of
/// the same `d`, and optionally persisted as content-addressed JSON files.
pub struct RayEnumerator {
    max_rank: usize,
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<Key, Arc<RaySet>>>,
}

impl Default for RayEnumerator {
    fn default() -> Self {
        Self::new()
    }
}

impl RayEnumerator {
    pub fn new() -> Self {
        Self {
            max_rank: DEFAULT_MAX_RANK,
            cache_dir: None,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_rank(mut self, max_rank: usize) -> Self {
        self.max_rank = max_rank;
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn enumerate(&self, r: usize, s: usize, kind: ConeKind) -> Result<Arc<RaySet>> {
        if !kind.is_pointed() {
            return Err(Error::Lineality(s - 1));
        }
        if r == 0 || s < 3 {
            return Err(Error::Range(format!("need r >= 1 and s >= 3, got r={r}, s={s}")));
        }
        if r > self.max_rank {
            return Err(Error::ResourceLimit(format!(
                "rank {r} exceeds the configured ceiling {}; raise it to run this enumeration",
                self.max_rank
            )));
        }
        let key = (r, s, kind);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let set = match self.load_cached(key) {
            Some(set) => set,
            None => {
                let set = self.compute(r, s, kind)?;
                self.store_cached(&set);
                set
            }
        };
        let set = Arc::new(set);
        Ok(self.memo.lock().unwrap().entry(key).or_insert(set).clone())
    }

    fn compute(&self, r: usize, s: usize, kind: ConeKind) -> Result<RaySet> {
        if kind == ConeKind::CSL {
            let lr = self.enumerate(r, s, ConeKind::LR)?;
            let csl = inequality_system(r, s, ConeKind::CSL)?;
            let rays: Vec<Ray> = lr
                .rays
                .iter()
                .filter(|ray| csl.contains_coords(ray.point.coords()))
                .map(|ray| Ray::certify(&ray.point, ConeKind::CSL))
                .collect::<Result<_>>()?;
            let stats = RayStats {
                candidates: lr.len(),
                distinct: lr.len(),
                ..RayStats::default()
            };
            return Ok(RaySet { r, s, kind, rays, stats });
        }

        let mut candidates: Vec<ConePoint> = Vec::new();
        if r == 1 {
            candidates.extend(base_candidates(s, kind)?);
        } else {
            let mut inner: Vec<Vec<ConePoint>> = vec![Vec::new(); r];
            let mut outer: Vec<Vec<ConePoint>> = vec![Vec::new(); r];
            for d in 1..r {
                inner[d] = self.enumerate(d, s, ConeKind::LR)?.points();
                outer[d] = self.enumerate(d, s, kind)?.points();
            }
            let horn = all_horn(r, s)?;
            let per_facet: Vec<Vec<ConePoint>> = horn
                .par_iter()
                .map(|h| {
                    let dec = FacetDecomposition::uncertified(h)?;
                    let mut found: Vec<ConePoint> =
                        dec.type1.iter().map(|(_, ray)| ray.point.clone()).collect();
                    for (_, _, img) in induction_images(&dec, &inner[h.d()], &outer[r - h.d()])? {
                        if !img.is_zero() {
                            found.push(img.primitive());
                        }
                    }
                    Ok(found)
                })
                .collect::<Result<_>>()?;
            candidates.extend(per_facet.into_iter().flatten());
            match kind {
                ConeKind::LR => {
                    for j in 1..s {
                        candidates.push(x_j(j, r, s)?);
                    }
                }
                _ => {
                    candidates.extend(special_rays(r, s)?.into_iter().map(|ray| ray.point));
                    candidates.extend(self.enumerate(r, s, ConeKind::LR)?.points());
                }
            }
        }
        certify_all(r, s, kind, candidates)
    }

    fn cache_path(&self, (r, s, kind): Key) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let digest = Sha256::digest(format!("lrcone/rayset/v1/r={r}/s={s}/kind={kind}"));
        Some(dir.join(format!("{}.json", hex::encode(digest))))
    }

    fn load_cached(&self, key: Key) -> Option<RaySet> {
        let path = self.cache_path(key)?;
        let text = fs::read_to_string(&path).ok()?;
        let json: RaySetJson = serde_json::from_str(&text).ok()?;
        if (json.r, json.s, json.kind) != key {
            return None;
        }
        RaySet::from_json(json).ok()
    }

    fn store_cached(&self, set: &RaySet) {
        let Some(path) = self.cache_path((set.r, set.s, set.kind)) else {
            return;
        };
        // a failed cache write only costs a recomputation later
        let _ = write_atomically(&path, &set.to_json());
    }
}

fn write_atomically(path: &Path, json: &RaySetJson) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(json)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn base_candidates(s: usize, kind: ConeKind) -> Result<Vec<ConePoint>> {
    let mut out = Vec::new();
    match kind {
        ConeKind::EqLR => {
            // (χ_S; 1) for nonempty S ⊆ [s-1]
            for mask in 1u64..(1 << (s - 1)) {
                let mut coords: Vec<i64> = (0..s - 1).map(|j| ((mask >> j) & 1) as i64).collect();
                coords.push(1);
                out.push(ConePoint::new(1, s, coords)?);
            }
        }
        _ => {
            for j in 1..s {
                out.push(x_j(j, 1, s)?);
            }
        }
    }
    Ok(out)
}

fn certify_all(r: usize, s: usize, kind: ConeKind, candidates: Vec<ConePoint>) -> Result<RaySet> {
    let sys = inequality_system(r, s, kind)?;
    let total = candidates.len();
    let distinct: BTreeSet<ConePoint> = candidates.into_iter().filter(|p| !p.is_zero()).collect();
    let n_distinct = distinct.len();
    let verdicts: Vec<(ConePoint, Option<usize>)> = distinct
        .into_par_iter()
        .map(|p| {
            if sys.contains_coords(p.coords()) {
                let rank = tight_rank(p.coords(), &sys);
                (p, Some(rank))
            } else {
                (p, None)
            }
        })
        .collect();
    let mut stats = RayStats {
        candidates: total,
        distinct: n_distinct,
        ..RayStats::default()
    };
    let mut rays = Vec::new();
    for (point, rank) in verdicts {
        match rank {
            None => stats.rejected_nonmember += 1,
            Some(rank) if rank + 1 == sys.dim() => rays.push(Ray {
                primitive: point.is_primitive(),
                point,
                tight_rank: rank,
            }),
            Some(_) => stats.rejected_non_extremal += 1,
        }
    }
    rays.sort();
    Ok(RaySet { r, s, kind, rays, stats })
}

fn global() -> &'static RayEnumerator {
    static ENGINE: OnceLock<RayEnumerator> = OnceLock::new();
    ENGINE.get_or_init(RayEnumerator::new)
}

/// Extremal rays of `kind` (`CSL`, `LR` or `EqLR`) at `(r, s)`, through a
/// process-wide memo with the default rank ceiling.
pub fn enumerate_rays(r: usize, s: usize, kind: ConeKind) -> Result<Arc<RaySet>> {
    global().enumerate(r, s, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_rays(1, 3, ConeKind::LR).unwrap().len(), 2);
        assert_eq!(enumerate_rays(1, 3, ConeKind::EqLR).unwrap().len(), 3);
        assert_eq!(enumerate_rays(1, 3, ConeKind::CSL).unwrap().len(), 0);
        assert_eq!(enumerate_rays(2, 3, ConeKind::LR).unwrap().len(), 5);
        assert_eq!(enumerate_rays(2, 3, ConeKind::EqLR).unwrap().len(), 10);
    }

    #[test]
    fn refuses_non_pointed_and_oversized() {
        assert!(matches!(enumerate_rays(2, 3, ConeKind::C), Err(Error::Lineality(_))));
        let small = RayEnumerator::new().with_max_rank(2);
        assert!(matches!(small.enumerate(3, 3, ConeKind::LR), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("lrcone-cache-test-{}", std::process::id()));
        let first = RayEnumerator::new().with_cache_dir(&dir);
        let a = first.enumerate(2, 3, ConeKind::EqLR).unwrap();
        let second = RayEnumerator::new().with_cache_dir(&dir);
        let b = second.enumerate(2, 3, ConeKind::EqLR).unwrap();
        assert_eq!(a.rays, b.rays);
        assert!(fs::read_dir(&dir).unwrap().count() >= 2);
        let _ = fs::remove_dir_all(&dir);
    }
}

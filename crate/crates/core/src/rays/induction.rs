//! Coordinate split along a Horn facet, the projection onto the type II
//! subcone, and the induction map built from them.

use serde::{Deserialize, Serialize};

use super::extremal::Ray;
use super::type1::{datum_difference, type1_data, type1_point, TypeIDatum};
use crate::cones::{horn_slack, inequality_system, ConeKind, ConePoint, HornDatum};
use crate::error::{Error, Result};

/// Restriction of every block to its subset of the facet and to the
/// complement: a rank-`d` point and a rank-`(r − d)` point.
pub fn pi(x: &ConePoint, h: &HornDatum) -> Result<(ConePoint, ConePoint)> {
    x.check_shape(h.r(), h.s())?;
    let s = h.s();
    let mut inner = Vec::with_capacity(h.d() * s);
    let mut outer = Vec::with_capacity((h.r() - h.d()) * s);
    for k in 1..=s {
        let set = h.subset(k);
        for a in 1..=h.r() {
            if set.contains(a) {
                inner.push(x.entry(k, a));
            } else {
                outer.push(x.entry(k, a));
            }
        }
    }
    Ok((
        ConePoint::new(h.d(), s, inner)?,
        ConePoint::new(h.r() - h.d(), s, outer)?,
    ))
}

/// Reassembles a point from its two restrictions; inverse of [`pi`].
pub fn pi_inverse(inner: &ConePoint, outer: &ConePoint, h: &HornDatum) -> Result<ConePoint> {
    inner.check_shape(h.d(), h.s())?;
    outer.check_shape(h.r() - h.d(), h.s())?;
    let (r, s) = (h.r(), h.s());
    let mut x = ConePoint::zero(r, s);
    for k in 1..=s {
        let set = h.subset(k);
        let (mut p, mut q) = (0, 0);
        let src_in = inner.block(k - 1);
        let src_out = outer.block(k - 1);
        for (a, slot) in x.block_mut(k - 1).iter_mut().enumerate() {
            if set.contains(a + 1) {
                *slot = src_in[p];
                p += 1;
            } else {
                *slot = src_out[q];
                q += 1;
            }
        }
    }
    Ok(x)
}

/// A Horn facet together with its type I rays, and (once computed by
/// [`facet_rays`]) the type II rays found as induction images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetDecomposition {
    pub datum: HornDatum,
    pub type1: Vec<(TypeIDatum, Ray)>,
    pub type2_generators: Vec<ConePoint>,
}

impl FacetDecomposition {
    pub fn new(h: &HornDatum) -> Result<Self> {
        let type1 = type1_data(h)
            .into_iter()
            .map(|t| {
                let p = type1_point(h, t)?;
                Ok((t, Ray::certify(&p, ConeKind::LR)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            datum: h.clone(),
            type1,
            type2_generators: Vec::new(),
        })
    }

    /// Type I data and raw points only, skipping certification.
    pub(crate) fn uncertified(h: &HornDatum) -> Result<Self> {
        let type1 = type1_data(h)
            .into_iter()
            .map(|t| {
                let p = type1_point(h, t)?;
                Ok((
                    t,
                    Ray {
                        primitive: p.is_primitive(),
                        point: p,
                        tight_rank: 0,
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            datum: h.clone(),
            type1,
            type2_generators: Vec::new(),
        })
    }

    pub fn data(&self) -> impl Iterator<Item = TypeIDatum> + '_ {
        self.type1.iter().map(|(t, _)| *t)
    }
}

/// Projection of the facet's span onto the span of its type II subcone:
/// subtracts each type I ray weighted by the consecutive difference its
/// datum controls.
pub fn p2_hat(x: &ConePoint, dec: &FacetDecomposition) -> Result<ConePoint> {
    let slack = horn_slack(x, &dec.datum)?;
    if slack != 0 {
        return Err(Error::Domain(format!(
            "{x} is off the hyperplane of {} (slack {slack})",
            dec.datum
        )));
    }
    let mut out = x.clone();
    for (t, ray) in &dec.type1 {
        let c = datum_difference(x, *t);
        if c != 0 {
            out = out.add_scaled(-c, &ray.point)?;
        }
    }
    Ok(out)
}

/// `p̂₂ ∘ π⁻¹` on `LR_d × upper_{r−d}`, where `upper` is `EqLR` for the
/// equivariant map or `LR` for the classical one.
pub fn ind_hat(
    inner: &ConePoint,
    outer: &ConePoint,
    dec: &FacetDecomposition,
    upper: ConeKind,
) -> Result<ConePoint> {
    let h = &dec.datum;
    let lower = inequality_system(h.d(), h.s(), ConeKind::LR)?;
    if !lower.contains(inner)? {
        return Err(Error::Domain(format!("{inner} is not in LR_{}^{}", h.d(), h.s())));
    }
    let upper_sys = inequality_system(h.r() - h.d(), h.s(), upper)?;
    if !upper_sys.contains(outer)? {
        return Err(Error::Domain(format!(
            "{outer} is not in {upper}_{}^{}",
            h.r() - h.d(),
            h.s()
        )));
    }
    p2_hat(&pi_inverse(inner, outer, h)?, dec)
}

/// Where an induction input came from: a ray of the rank-`d` factor or of the
/// rank-`(r − d)` factor (the other factor being zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Inner,
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageStatus {
    Extremal,
    Zero,
    NonExtremal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InductionImage {
    pub factor: Factor,
    pub source: ConePoint,
    pub image: ConePoint,
    pub status: ImageStatus,
}

/// Everything computed for one facet: the decomposition and an audit of
/// every induction image.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetReport {
    pub kind: ConeKind,
    pub decomposition: FacetDecomposition,
    pub images: Vec<InductionImage>,
}

impl FacetReport {
    pub fn count(&self, status: ImageStatus) -> usize {
        self.images.iter().filter(|i| i.status == status).count()
    }

    /// Type I rays followed by the distinct primitive extremal images.
    pub fn rays(&self) -> Vec<ConePoint> {
        let mut out: Vec<ConePoint> = self
            .decomposition
            .type1
            .iter()
            .map(|(_, r)| r.point.clone())
            .chain(self.decomposition.type2_generators.iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Induction images of the extremal rays of `LR_d × (kind)_{r−d}`: those of
/// the form `a × 0` and `0 × b`.
pub(crate) fn induction_images(
    dec: &FacetDecomposition,
    inner_rays: &[ConePoint],
    outer_rays: &[ConePoint],
) -> Result<Vec<(Factor, ConePoint, ConePoint)>> {
    let h = &dec.datum;
    let zero_inner = ConePoint::zero(h.d(), h.s());
    let zero_outer = ConePoint::zero(h.r() - h.d(), h.s());
    let mut out = Vec::with_capacity(inner_rays.len() + outer_rays.len());
    for a in inner_rays {
        let img = p2_hat(&pi_inverse(a, &zero_outer, h)?, dec)?;
        out.push((Factor::Inner, a.clone(), img));
    }
    for b in outer_rays {
        let img = p2_hat(&pi_inverse(&zero_inner, b, h)?, dec)?;
        out.push((Factor::Outer, b.clone(), img));
    }
    Ok(out)
}

/// The rays of the facet `h` of `kind` (`LR` or `EqLR`): type I rays plus
/// the extremal induction images, with every image classified.
pub fn facet_rays(
    h: &HornDatum,
    kind: ConeKind,
    inner_rays: &[ConePoint],
    outer_rays: &[ConePoint],
) -> Result<FacetReport> {
    if !matches!(kind, ConeKind::LR | ConeKind::EqLR) {
        return Err(Error::Domain(format!(
            "facet rays are defined for lr and eqlr, not {kind}"
        )));
    }
    let mut dec = FacetDecomposition::new(h)?;
    let mut images = Vec::new();
    for (factor, source, image) in induction_images(&dec, inner_rays, outer_rays)? {
        let status = if image.is_zero() {
            ImageStatus::Zero
        } else {
            let ray = Ray::certify(&image, kind)?;
            if ray.is_extremal() {
                dec.type2_generators.push(ray.point);
                ImageStatus::Extremal
            } else {
                ImageStatus::NonExtremal
            }
        };
        images.push(InductionImage {
            factor,
            source,
            image,
            status,
        });
    }
    dec.type2_generators.sort();
    dec.type2_generators.dedup();
    Ok(FacetReport {
        kind,
        decomposition: dec,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ConePoint {
        s.parse().unwrap()
    }

    fn worked() -> FacetDecomposition {
        FacetDecomposition::new(&HornDatum::parse("{2},{2};{3}", 3).unwrap()).unwrap()
    }

    #[test]
    fn pi_examples() {
        let dec = worked();
        let h = &dec.datum;
        let (a, b) = pi(&pt("1,0,0;1,0,1;1,1,0"), h).unwrap();
        assert_eq!((a, b), (pt("0;0;0"), pt("1,0;1,1;1,1")));
        let (a, b) = pi(&pt("0,1,0;0,0,0;0,0,1"), h).unwrap();
        assert_eq!((a, b), (pt("1;0;1"), pt("0,0;0,0;0,0")));
        let (a, b) = pi(&ConePoint::zero(3, 3), h).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert_eq!(pi_inverse(&pt("1;0;1"), &pt("0,0;0,0;0,0"), h).unwrap(), pt("0,1,0;0,0,0;0,0,1"));
    }

    #[test]
    fn p2_hat_examples() {
        let dec = worked();
        assert_eq!(p2_hat(&pt("1,0,0;1,0,1;1,1,0"), &dec).unwrap(), pt("1,0,0;1,1,1;1,1,1"));
        assert!(p2_hat(&pt("0,1,0;0,0,0;0,0,1"), &dec).unwrap().is_zero());
        let fixed = pt("1,0,0;1,1,1;1,1,1");
        assert_eq!(p2_hat(&fixed, &dec).unwrap(), fixed);
        assert!(matches!(p2_hat(&pt("1,1,1;1,1,1;1,1,1"), &dec), Err(Error::Domain(_))));
    }

    #[test]
    fn ind_hat_examples() {
        let dec = worked();
        let eq = ConeKind::EqLR;
        assert_eq!(
            ind_hat(&pt("0;0;0"), &pt("1,0;1,1;1,1"), &dec, eq).unwrap(),
            pt("1,0,0;1,1,1;1,1,1")
        );
        assert!(ind_hat(&pt("1;0;1"), &pt("0,0;0,0;0,0"), &dec, eq).unwrap().is_zero());
        assert_eq!(
            ind_hat(&pt("0;0;0"), &pt("1,1;1,1;1,1"), &dec, eq).unwrap(),
            pt("2,1,1;2,1,1;2,2,2")
        );
        assert!(ind_hat(&pt("1;1;1"), &pt("0,0;0,0;0,0"), &dec, eq).is_err());
    }

    #[test]
    fn empty_type1_data_means_identity_projection() {
        let mut dec = worked();
        dec.type1.clear();
        let x = pt("1,1,0;1,0,0;1,1,1");
        assert_eq!(p2_hat(&x, &dec).unwrap(), x);
    }
}

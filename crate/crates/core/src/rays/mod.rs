//! Extremal rays: type I rays on Horn facets, the induction map onto the
//! type II subcone, special families, and cone-level enumeration.

mod enumerate;
mod extremal;
mod induction;
mod special;
mod type1;

pub use enumerate::{enumerate_rays, RayEnumerator, RaySet, RaySetJson, RayStats, DEFAULT_MAX_RANK};
pub use extremal::{is_extremal, Ray};
pub use induction::{
    facet_rays, ind_hat, p2_hat, pi, pi_inverse, FacetDecomposition, FacetReport, Factor,
    ImageStatus, InductionImage,
};
pub use special::{diagonal_no_facet_check, omega_point, special_rays, x_j};
pub use type1::{datum_difference, swap_datum, type1_data, type1_point, TypeIDatum};

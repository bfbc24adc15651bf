//! Inequality descriptions of the five cones, Horn data, membership oracles
//! and shadows.

mod horn;
mod point;
mod shadow;
mod system;

pub use horn::{all_horn, enumerate_horn, horn_slack, HornDatum};
pub use point::ConePoint;
pub use shadow::shadow;
pub use system::{
    inequality_system, member, nonvanishing, ConeKind, Form, FormLabel, InequalitySystem,
    Relation,
};

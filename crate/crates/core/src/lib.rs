//! Exact computations on Littlewood-Richardson cones and their equivariant
//! analogues: Horn inequalities, membership, extremal rays by recursion over
//! Horn facets, and bounded Hilbert bases of the lattice semigroups.

pub mod combinatorics;
pub mod hilbert;
pub mod cones;
mod error;
pub mod linalg;
pub mod oracle;
pub mod rays;

pub use error::{Error, Result};

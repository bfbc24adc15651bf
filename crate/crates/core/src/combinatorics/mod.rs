//! Partitions, subsets, the `τ` bijection and Littlewood-Richardson numbers.

mod lr;
mod partition;
mod subset;

pub use lr::{coef_of_subsets, lr_coef, multi_coef};
pub use partition::{omega, partitions_between, partitions_in_box, Partition};
pub use subset::{tau, tau_inverse, SubsetD};

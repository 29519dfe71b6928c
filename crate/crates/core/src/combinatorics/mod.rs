//! Partitions, multipartitions, the cyclic shift action and the statistics
//! that feed the fake-degree formula.

mod multipartition;
mod partition;

pub use multipartition::{multipartitions, orbits, Multipartition, MultipartitionOrbit};
pub use partition::{t_factorial, Partition};

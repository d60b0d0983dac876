//! Exact rational arithmetic, combinatorial streams and truncated power
//! series.

pub mod biseries;
pub mod combinat;
pub mod partition;
pub mod rational;
pub mod series;
pub mod vertex;

pub use biseries::BiTruncSeries;
pub use combinat::{
    compositions, partitions_of, partitions_with_len, set_partitions, sub_multisets,
    weak_compositions,
};
pub use num::{BigInt, BigRational};
pub use partition::Partition;
pub use rational::{binom_general, format_rational, parse_rational};
pub use series::TruncSeries;
pub use vertex::{sseries, vertex_multiplicity};

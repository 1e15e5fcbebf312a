//! Permutation statistics.

pub mod local;
pub mod rsk;
pub mod spec;
pub mod subsequences;
pub mod vincular;

pub use local::{
    clicks, cycles_of_length, degree, descent_count, descent_indicator, descent_set, exceedance_count,
    fixed_point_count, inversion_count, j_descent_count, las, peak_count, trace_power,
};
pub use rsk::{height_sup_distance, rsk_shape, HeightFunction};
pub use spec::{DegreeVertex, StatisticSpec};
pub use subsequences::{colored_lis, lds, ldcs, lics, lis};
pub use vincular::{vincular_count, VincularPattern};

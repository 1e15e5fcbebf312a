//! Simulation and exact verification toolkit for statistics of
//! conjugation-invariant random permutations.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`] and [`partition`]: exact permutation arithmetic and integer partitions.
//! * [`rng`] and [`sampling`]: deterministic random streams and the permutation laws
//!   (uniform, Ewens, class-uniform, colored).
//! * [`walks`]: the cycle-merging walk, the splitting operator and the threshold merge.
//! * [`stats`]: LIS/LDS and circular variants, RSK shapes, alternating subsequences,
//!   local statistics and vincular pattern counts.
//! * [`limits`]: reference limit objects (the Ω curve, the descent kernel, moment formulas,
//!   goodness-of-fit tools).
//! * [`oracle`]: exhaustive small-n ground truth in exact rational arithmetic.
//! * [`class_graphs`]: class-partitioned graphs and their derived walks.
//!
//! Conventions: permutations are one-line words over the labels `1..=n`, and composition is
//! `(σ∘τ)(i) = σ(τ(i))`, so `σ∘(i,j)` swaps the entries of the word at positions `i` and `j`.

pub mod class_graphs;
pub mod empirical;
pub mod error;
pub mod fenwick;
pub mod limits;
pub mod montecarlo;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod rational;
pub mod rng;
pub mod sampling;
pub mod stats;
pub mod walks;

pub use empirical::EmpiricalDistribution;
pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::{CycleDecomposition, Permutation, Transposition};
pub use rational::Rational;
pub use rng::RandomSource;

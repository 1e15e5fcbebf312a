//! Exhaustive small-n ground truth in exact rational arithmetic.

pub mod enumerate;
pub mod epsilon;
pub mod law;
pub mod lemmas;
pub mod threshold;
pub mod walk_matrix;

pub use enumerate::{enumerate_sn, lex_rank, SnIter, ENUMERATION_CAP, FINAL_SET_CAP, WALK_MATRIX_CAP};
pub use epsilon::{exact_epsilon, EpsilonTable, Scaling};
pub use law::{exact_law, exact_pushforward, ExactLaw};
pub use lemmas::{lemma_ids, verify_lemma, LemmaReport, Witness};
pub use threshold::{threshold_comparison, threshold_merge_law, ThresholdComparison};
pub use walk_matrix::{class_uniform_law, exact_inverse_step_law, exact_walk_matrix, WalkMatrix};

//! Monte Carlo engine for random-size order statistics.

pub mod ks;
pub mod order_stat;
pub mod rng;
pub mod size_law;
pub mod study;

pub use ks::{ks_distance, ks_two_sample};
pub use order_stat::kth_upper_order_stat;
pub use rng::RngState;
pub use size_law::{sample_size, SampleSizeLaw, SizeLawTemplate, SIZE_LAW_NAMES};
pub use study::{convergence_study, normalized_sample, predicted_limit, ConvergenceRow, StudyConfig, BLOCK};

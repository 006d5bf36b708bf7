//! Limit laws of the k-th upper order statistic under fixed and random
//! sample sizes.
//!
//! The crate evaluates the max-stable laws and their k-th extreme limits,
//! builds the derived families `H_k, F_k, U_k, R_k, T_k, B_k` from a base
//! df, produces norming constants, simulates random-size maxima, and checks
//! the pointwise orderings between the families.

pub mod base;
pub mod error;
pub mod laws;
pub mod level;
pub mod norming;
pub mod ordering;
pub mod quadrature;
pub mod sim;
pub mod special;
pub mod transforms;

pub use base::{catalog, BaseDistribution, BaseParams, CatalogEntry, Mda};
pub use error::{Error, Result};
pub use laws::{LawKind, MaxStableLaw, StabilityNorming};
pub use level::{Level, LevelDf};
pub use norming::{
    base_norming, eta_constant, target_law, transform_norming, verify_norming, NormingConstants, NormingMode, NormingSequence,
};
pub use ordering::{check_ordering, ordering_report, worst_per_claim, ClaimId, OrderingCheck};
pub use sim::{convergence_study, kth_upper_order_stat, ks_distance, ks_two_sample, predicted_limit, ConvergenceRow, RngState, SampleSizeLaw, SizeLawTemplate, StudyConfig};
pub use transforms::{
    burr_ode_residual, limit_law, limit_law_cdf, DerivedDistribution, Family, LimitFamily, LimitLaw, TailTransform, TauSpec,
};

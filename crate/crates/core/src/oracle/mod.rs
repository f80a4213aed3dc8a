//! Independent brute-force verifiers for the closed-form results.
//!
//! * [`grid`]: uniform grid plus golden-section refinement over `theta` (DF)
//!   and `lambda` (JDF).
//! * [`region`]: 2-D search over every jointly decodable rate pair.
//! * [`denoiser`]: exhaustive search for minimal denoising maps on small
//!   finite alphabets.
//! * [`suite`]: closed forms against the grid oracles on random
//!   configurations.
//!
//! The searches never call the closed-form optimizers; they only evaluate
//! rate functions at given parameters. Only `suite` compares the two.

pub mod denoiser;
pub mod grid;
pub mod region;
pub mod suite;

pub use denoiser::{
    additive_channels, denoiser_with_size, is_cancellative, resolves_unambiguously, search_min_denoiser,
    DenoiserInstance, FiniteChannel,
};
pub use grid::{grid_max_df_theta, grid_max_jdf_lambda, GridResult};
pub use region::{grid_max_ma_region, saturated_edge_spread, two_step_xor_rate, RegionGridResult};
pub use suite::{random_configs, run_oracle_suite, SuiteCheck, SuiteReport};

//! Achievable two-way rates for physical network coding over a Gaussian
//! two-way relay channel.
//!
//! Two end nodes `A` and `C` exchange data through a half-duplex relay `B`.
//! The crate covers four relaying schemes:
//!
//! * **DF**, a 3-step decode-and-forward scheme that exploits the direct
//!   `A`-`C` link and broadcasts XOR-combined packets,
//! * **AF**, 2-step amplify-and-forward,
//! * **JDF**, 2-step joint decode-and-forward over the multiple-access
//!   region at the relay,
//! * **DNF**, 2-step denoise-and-forward (an upper bound only).
//!
//! Module map:
//!
//! * [`channel`]: link SNRs, the capacity function, and the multiple-access
//!   rate region the 2-step schemes build on.
//! * [`schemes`]: closed-form rates and their intermediate quantities.
//! * [`oracle`]: brute-force verifiers (grid plus golden-section search,
//!   2-D region search, exhaustive finite-alphabet denoiser search).
//! * [`sim`]: bit-exact execution of the DF and JDF packet procedures.
//! * [`sweep`]: SNR sweeps, CSV and plot-script output.
//!
//! ```
//! use twoway_core::{LinkConfig, schemes};
//!
//! let config = LinkConfig::new(0.0, 1.0, 1.0, 1.0).unwrap();
//! let df = schemes::df_max_rate(&config);
//! assert!((df.rate - 2.0 / 3.0).abs() < 1e-12);
//! ```

// `!(x > 0.0)` style checks reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod oracle;
pub mod schemes;
pub mod sim;
pub mod sweep;

pub use channel::{capacity, db_to_linear, linear_to_db, LinkConfig, MaRegion, RatePair};
pub use error::{Error, Result};
pub use schemes::{Scheme, SchemeDetail, SchemeRate};

use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument is outside the domain of the operation.
    #[error("{name} = {value} is out of range: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The direct link is not weaker than both source-relay links.
    #[error(
        "direct-link SNR {gamma0} must be strictly below both source-relay SNRs \
         (weaker source-relay SNR is {gamma1})"
    )]
    AssumptionViolation { gamma0: f64, gamma1: f64 },

    #[error("packet length mismatch: {left} vs {right} bits")]
    LengthMismatch { left: usize, right: usize },

    #[error("bit index {index} out of range for a packet of {len} bits")]
    OutOfRange { index: usize, len: usize },

    /// A simulated round would schedule an empty packet.
    #[error("degenerate protocol round: {0}")]
    Degenerate(String),

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("invalid sweep: {0}")]
    Sweep(String),

    /// No denoising map of any admissible size satisfies the decodability property.
    #[error("denoiser search exhausted: no mapping with at most {max_size} codewords")]
    SearchExhausted { max_size: usize },

    #[error("alphabet sizes ({alphabet_a}, {alphabet_c}) exceed the exhaustive-search budget of {limit}")]
    Budget {
        alphabet_a: usize,
        alphabet_c: usize,
        limit: usize,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

//! 2-step amplify-and-forward. The relay rebroadcasts a power-normalized
//! copy of what it heard; each end node cancels its own contribution.

use super::{Scheme, SchemeDetail, SchemeRate};
use crate::channel::{cap, LinkConfig, RatePair};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfBreakdown {
    /// Amplification factor giving unit average transmit energy at the relay.
    pub beta: f64,
    /// Effective SNR of the `A -> C` path, which limits `R_A`.
    pub snr_a_to_c: f64,
    /// Effective SNR of the `C -> A` path, which limits `R_C`.
    pub snr_c_to_a: f64,
    pub rate_pair: RatePair,
    pub rate: f64,
}

pub fn af_breakdown(config: &LinkConfig) -> AfBreakdown {
    let n0 = config.noise_power();
    let [_, h1, h2] = config.channel_gains();
    let beta = (1.0 / (h1 + h2 + n0)).sqrt();
    let b2 = beta * beta;
    // after self-interference cancellation the receiver sees the relay's
    // amplified noise plus its own
    let snr_c_to_a = b2 * h1 * h2 / ((b2 * h1 + 1.0) * n0);
    let snr_a_to_c = b2 * h1 * h2 / ((b2 * h2 + 1.0) * n0);
    let rate_pair = RatePair::new(cap(snr_a_to_c), cap(snr_c_to_a));
    AfBreakdown {
        beta,
        snr_a_to_c,
        snr_c_to_a,
        rate_pair,
        rate: rate_pair.sum() / 2.0,
    }
}

pub fn af_max_rate(config: &LinkConfig) -> SchemeRate {
    let b = af_breakdown(config);
    SchemeRate {
        scheme: Scheme::Af,
        rate: b.rate,
        param: None,
        detail: SchemeDetail::Af(b),
    }
}

//! 2-step denoise-and-forward upper bound.
//!
//! The relay does not decode; it maps its observation to one of
//! `max(2^{N R_A}, 2^{N R_C})` denoising codewords (conjectured minimal) and
//! broadcasts that at `C(gamma1)`. Achievability of this cardinality is not
//! proven, so everything here is an upper bound.

use super::{Scheme, SchemeDetail, SchemeRate};
use crate::channel::{cap, LinkConfig, RatePair};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnfBreakdown {
    /// Canonical optimizer `(C(gamma1), C(gamma1))`; any `R_C` between
    /// `C(gamma1)` and `C(gamma2)` gives the same rate.
    pub rate_pair: RatePair,
    pub rate: f64,
}

pub fn dnf_upper_bound(config: &LinkConfig) -> SchemeRate {
    let c1 = cap(config.gamma1());
    SchemeRate {
        scheme: Scheme::Dnf,
        rate: c1,
        param: None,
        detail: SchemeDetail::Dnf(DnfBreakdown {
            rate_pair: RatePair::new(c1, c1),
            rate: c1,
        }),
    }
}

/// Two-way rate when `A` sends at `C(gamma1)` and `C` at `C(gamma)`, for
/// `gamma1 <= gamma <= gamma2`.
pub fn dnf_rate_for_choice(config: &LinkConfig, gamma: f64) -> Result<f64> {
    if !(gamma >= config.gamma1() && gamma <= config.gamma2()) {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            expected: "within [gamma1, gamma2]",
        });
    }
    let (c1, c) = (cap(config.gamma1()), cap(gamma));
    Ok((c1 + c) / (1.0 + c / c1))
}

/// log2 of the conjectured minimal denoising codebook size,
/// `N * max(R_A, R_C)` bits.
pub fn dnf_codebook_cardinality(rate_pair: RatePair, n_symbols: f64) -> Result<f64> {
    if !(rate_pair.rate_a >= 0.0 && rate_pair.rate_c >= 0.0) {
        return Err(Error::Domain {
            name: "rate",
            value: rate_pair.rate_a.min(rate_pair.rate_c),
            expected: ">= 0",
        });
    }
    if !(n_symbols > 0.0) {
        return Err(Error::Domain {
            name: "n_symbols",
            value: n_symbols,
            expected: "> 0",
        });
    }
    Ok(n_symbols * rate_pair.rate_a.max(rate_pair.rate_c))
}

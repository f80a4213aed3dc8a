//! Link parameters, the AWGN capacity function, and the multiple-access rate
//! region seen by the relay when both end nodes transmit at once.
//!
//! All SNRs are linear. Node `A` is always attached to the weaker relay link
//! after normalization (`gamma1 <= gamma2`); the [`LinkConfig::swapped`] flag
//! remembers whether the caller's `A` and `C` had to be exchanged.

use crate::error::{Error, Result};

/// Default absolute slack for [`ma_contains`].
pub const DEFAULT_REGION_SLACK: f64 = 1e-12;

/// Capacity in bits per symbol (bandwidth normalized to 1 Hz) of an AWGN link.
pub fn capacity(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            expected: "finite and >= 0",
        });
    }
    Ok(cap(gamma))
}

/// Unchecked capacity for SNRs that are already validated.
#[inline]
pub(crate) fn cap(gamma: f64) -> f64 {
    gamma.ln_1p() / std::f64::consts::LN_2
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// dB value of a linear SNR; `-inf` for zero.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// SNR triple of the two-way relay channel.
///
/// `gamma0` is the direct `A`-`C` link, `gamma1` the weaker and `gamma2` the
/// stronger source-relay link. Links are reciprocal, so each SNR serves both
/// directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkConfig {
    gamma0: f64,
    gamma1: f64,
    gamma2: f64,
    noise_power: f64,
    swapped: bool,
}

impl LinkConfig {
    /// Builds a normalized configuration from the SNRs of the direct link,
    /// the `A`-relay link and the `C`-relay link.
    ///
    /// The two relay links are sorted so that `gamma1 <= gamma2`. `gamma0 = 0`
    /// (no usable direct link) is accepted; `gamma0 >= min(gamma_a, gamma_c)`
    /// is rejected with [`Error::AssumptionViolation`].
    pub fn new(gamma0: f64, gamma_a: f64, gamma_c: f64, noise_power: f64) -> Result<Self> {
        check_finite("gamma0", gamma0)?;
        check_finite("gamma_a", gamma_a)?;
        check_finite("gamma_c", gamma_c)?;
        check_finite("noise_power", noise_power)?;
        if gamma0 < 0.0 {
            return Err(Error::Domain {
                name: "gamma0",
                value: gamma0,
                expected: ">= 0",
            });
        }
        for (name, value) in [("gamma_a", gamma_a), ("gamma_c", gamma_c), ("noise_power", noise_power)] {
            if value <= 0.0 {
                return Err(Error::Domain {
                    name,
                    value,
                    expected: "> 0",
                });
            }
        }
        let swapped = gamma_a > gamma_c;
        let (gamma1, gamma2) = if swapped {
            (gamma_c, gamma_a)
        } else {
            (gamma_a, gamma_c)
        };
        if gamma0 >= gamma1 {
            return Err(Error::AssumptionViolation { gamma0, gamma1 });
        }
        Ok(Self {
            gamma0,
            gamma1,
            gamma2,
            noise_power,
            swapped,
        })
    }

    /// Configuration without a direct link and unit noise power.
    pub fn relay_only(gamma_a: f64, gamma_c: f64) -> Result<Self> {
        Self::new(0.0, gamma_a, gamma_c, 1.0)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    /// True when the caller's `A` sat on the stronger relay link and the
    /// roles were exchanged during normalization.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Same relay links with the direct link removed.
    pub fn without_direct_link(&self) -> Self {
        Self { gamma0: 0.0, ..*self }
    }

    /// Squared channel gain magnitudes `|h0|^2, |h1|^2, |h2|^2`.
    pub fn channel_gains(&self) -> [f64; 3] {
        [self.gamma0, self.gamma1, self.gamma2].map(|g| g * self.noise_power)
    }

    /// `[C(gamma0), C(gamma1), C(gamma2)]`.
    pub(crate) fn capacities(&self) -> [f64; 3] {
        [cap(self.gamma0), cap(self.gamma1), cap(self.gamma2)]
    }

    /// `C(gamma1 + gamma2)`, the sum capacity of the multiple-access channel.
    pub(crate) fn sum_capacity(&self) -> f64 {
        cap(self.gamma1 + self.gamma2)
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "finite",
        })
    }
}

/// Free-function form of [`LinkConfig::new`].
pub fn make_config(gamma0: f64, gamma_a: f64, gamma_c: f64, noise_power: f64) -> Result<LinkConfig> {
    LinkConfig::new(gamma0, gamma_a, gamma_c, noise_power)
}

/// Step-1 transmission rates of `A` and `C` in bits per symbol.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub rate_a: f64,
    pub rate_c: f64,
}

impl RatePair {
    pub fn new(rate_a: f64, rate_c: f64) -> Self {
        Self { rate_a, rate_c }
    }

    pub fn sum(&self) -> f64 {
        self.rate_a + self.rate_c
    }
}

/// Corner points of the pentagon of jointly decodable rate pairs.
///
/// At `corner_la` the relay decodes `C` first and cancels it, so `A` gets its
/// full single-user rate; `corner_lc` is the reverse ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaRegion {
    pub corner_la: RatePair,
    pub corner_lc: RatePair,
    pub sum_capacity: f64,
}

pub fn ma_region(config: &LinkConfig) -> MaRegion {
    let (g1, g2) = (config.gamma1, config.gamma2);
    MaRegion {
        corner_la: RatePair::new(cap(g1), cap(g2 / (1.0 + g1))),
        corner_lc: RatePair::new(cap(g1 / (1.0 + g2)), cap(g2)),
        sum_capacity: config.sum_capacity(),
    }
}

/// Time-sharing point on the sum-rate face, from `L_C` (`lambda = 0`) to
/// `L_A` (`lambda = 1`).
pub fn ma_rate_pair(config: &LinkConfig, lambda: f64) -> Result<RatePair> {
    check_unit_interval("lambda", lambda)?;
    let region = ma_region(config);
    let (la, lc) = (region.corner_la, region.corner_lc);
    Ok(RatePair::new(
        lc.rate_a + lambda * (la.rate_a - lc.rate_a),
        lc.rate_c + lambda * (la.rate_c - lc.rate_c),
    ))
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "within [0, 1]",
        })
    }
}

/// Whether the relay can jointly decode both packets sent at `pair`.
pub fn ma_contains(config: &LinkConfig, pair: RatePair) -> bool {
    ma_contains_with_slack(config, pair, DEFAULT_REGION_SLACK)
}

pub fn ma_contains_with_slack(config: &LinkConfig, pair: RatePair, slack: f64) -> bool {
    let [_, c1, c2] = config.capacities();
    pair.rate_a >= 0.0
        && pair.rate_c >= 0.0
        && pair.rate_a <= c1 + slack
        && pair.rate_c <= c2 + slack
        && pair.sum() <= config.sum_capacity() + slack
}

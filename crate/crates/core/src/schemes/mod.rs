//! Closed-form two-way rates of the four relaying schemes.
//!
//! Rates are in bits per symbol. Every function takes a validated
//! [`LinkConfig`], so the only runtime errors are out-of-range optimization
//! parameters (`theta`, `lambda`).

use std::fmt;
use std::str::FromStr;

use crate::channel::{LinkConfig, RatePair};
use crate::error::Error;

mod af;
mod df;
mod dnf;
mod jdf;

pub use af::{af_breakdown, af_max_rate, AfBreakdown};
pub use df::{df_max_rate, df_max_rate_no_direct, df_packet_sizes, df_rate, df_theta_star, DfBreakdown};
pub use dnf::{dnf_codebook_cardinality, dnf_rate_for_choice, dnf_upper_bound, DnfBreakdown};
pub use jdf::{jdf_lambda0, jdf_max_rate, jdf_rate, JdfBreakdown, JdfRegime};

/// How the relay combines two unequal packets before broadcasting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XorPath {
    /// The longer packet is split: its head is XOR-ed with the shorter packet
    /// and broadcast at the weak-link rate, its tail goes to the stronger
    /// node alone.
    SplitAndXor,
    /// The shorter packet is zero-padded to the longer one's length and the
    /// XOR is broadcast at the weak-link rate.
    PadAndXor,
}

impl fmt::Display for XorPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XorPath::SplitAndXor => "split-and-xor",
            XorPath::PadAndXor => "pad-and-xor",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Df,
    Af,
    Jdf,
    Dnf,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Df, Scheme::Af, Scheme::Jdf, Scheme::Dnf];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Df => "DF",
            Scheme::Af => "AF",
            Scheme::Jdf => "JDF",
            Scheme::Dnf => "DNF",
        }
    }

    /// Maximal (or, for DNF, upper-bound) two-way rate of this scheme.
    pub fn max_rate(&self, config: &LinkConfig) -> SchemeRate {
        match self {
            Scheme::Df => df_max_rate(config),
            Scheme::Af => af_max_rate(config),
            Scheme::Jdf => jdf_max_rate(config),
            Scheme::Dnf => dnf_upper_bound(config),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "df" => Ok(Scheme::Df),
            "af" => Ok(Scheme::Af),
            "jdf" => Ok(Scheme::Jdf),
            "dnf" => Ok(Scheme::Dnf),
            other => Err(Error::Sweep(format!(
                "unknown scheme `{other}` (expected df, af, jdf or dnf)"
            ))),
        }
    }
}

/// A scheme's two-way rate together with the quantities that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeRate {
    pub scheme: Scheme,
    /// Two-way rate in bits per symbol.
    pub rate: f64,
    /// Optimizing parameter: `theta` for DF, `lambda` for JDF.
    pub param: Option<f64>,
    pub detail: SchemeDetail,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchemeDetail {
    Df(DfBreakdown),
    Af(AfBreakdown),
    Jdf(JdfBreakdown),
    Dnf(DnfBreakdown),
}

impl SchemeRate {
    /// Step-1 rate pair, for the 2-step schemes.
    pub fn rate_pair(&self) -> Option<RatePair> {
        match &self.detail {
            SchemeDetail::Af(b) => Some(b.rate_pair),
            SchemeDetail::Jdf(b) => Some(b.rate_pair),
            SchemeDetail::Dnf(b) => Some(b.rate_pair),
            SchemeDetail::Df(_) => None,
        }
    }
}

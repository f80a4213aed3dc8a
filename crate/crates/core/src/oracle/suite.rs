use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{db_to_linear, LinkConfig};
use crate::error::Result;
use crate::schemes::{df_max_rate, jdf_max_rate, Scheme};

use super::grid::{grid_max_df_theta, grid_max_jdf_lambda};

/// SNR range of randomly drawn relay links, in dB.
pub const RANDOM_SNR_DB: (f64, f64) = (-10.0, 30.0);

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// `count` valid configurations with log-uniform relay SNRs; every other
/// one carries a direct link at a tenth of the weaker relay link.
pub fn random_configs(count: usize, seed: u64) -> Vec<LinkConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = RANDOM_SNR_DB;
    (0..count)
        .map(|i| {
            let ga = db_to_linear(lo + (hi - lo) * unit(&mut rng));
            let gc = db_to_linear(lo + (hi - lo) * unit(&mut rng));
            let g0 = if i % 2 == 0 { 0.0 } else { ga.min(gc) / 10.0 };
            LinkConfig::new(g0, ga, gc, 1.0).expect("direct link below both relay links")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCheck {
    pub scheme: Scheme,
    pub config: LinkConfig,
    pub closed_form: f64,
    pub oracle: f64,
}

impl SuiteCheck {
    pub fn deviation(&self) -> f64 {
        (self.oracle - self.closed_form).abs() / self.closed_form
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    /// Largest relative deviation for `scheme`, 0 if it was not checked.
    pub fn worst(&self, scheme: Scheme) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.scheme == scheme)
            .map(SuiteCheck::deviation)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self, tolerance: f64) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(move |c| !(c.deviation() <= tolerance))
    }
}

/// DF and JDF closed forms against their one-parameter oracles on
/// [`random_configs`]. JDF ignores the direct link.
pub fn run_oracle_suite(count: usize, seed: u64, grid_points: usize, refine_tol: f64) -> Result<SuiteReport> {
    let mut checks = Vec::with_capacity(2 * count);
    for config in random_configs(count, seed) {
        checks.push(SuiteCheck {
            scheme: Scheme::Df,
            config,
            closed_form: df_max_rate(&config).rate,
            oracle: grid_max_df_theta(&config, grid_points, refine_tol)?.best_rate,
        });
        let relay_only = config.without_direct_link();
        checks.push(SuiteCheck {
            scheme: Scheme::Jdf,
            config: relay_only,
            closed_form: jdf_max_rate(&relay_only).rate,
            oracle: grid_max_jdf_lambda(&relay_only, grid_points, refine_tol)?.best_rate,
        });
    }
    Ok(SuiteReport { checks })
}

//! Shared fixtures for the benchmarks.

use twoway_core::{db_to_linear, LinkConfig};

/// Representative link configurations: symmetric, asymmetric with a direct
/// link, saturated JDF regime, and high SNR.
pub fn fixture_configs() -> Vec<(&'static str, LinkConfig)> {
    let high = db_to_linear(30.0);
    vec![
        ("symmetric", LinkConfig::new(0.0, 1.0, 1.0, 1.0).unwrap()),
        ("direct-link", LinkConfig::new(0.1, 1.0, 3.0, 1.0).unwrap()),
        ("saturated", LinkConfig::relay_only(1.0, 3.0).unwrap()),
        ("high-snr", LinkConfig::new(high / 10.0, high, 2.0 * high, 1.0).unwrap()),
    ]
}

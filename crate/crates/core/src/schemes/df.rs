//! 3-step decode-and-forward.
//!
//! `A` sends for `N(1 - theta)` symbols at `C(gamma1)`, then `C` sends for
//! `N theta` symbols at `C(gamma2)`. Each far end overhears part of the
//! packet over the direct link, so the relay only forwards the missing
//! `C(gamma_i) - C(gamma0)` bits per symbol, XOR-combined (split or padded)
//! in a third broadcast step.

use super::{Scheme, SchemeDetail, SchemeRate, XorPath};
use crate::channel::LinkConfig;
use crate::error::{Error, Result};

/// Relative tolerance used to call two packet sizes equal.
const SIZE_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfBreakdown {
    pub theta: f64,
    /// Bits the relay must forward to `C`, per symbol of round length `N`.
    pub size_dbc: f64,
    /// Bits the relay must forward to `A`, per symbol of round length `N`.
    pub size_dba: f64,
    pub delta: f64,
    pub rate: f64,
    pub case: XorPath,
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "theta",
            value: theta,
            expected: "strictly within (0, 1)",
        })
    }
}

/// Sizes in bits of the packets the relay forwards to `C` and to `A`.
pub fn df_packet_sizes(config: &LinkConfig, theta: f64, n_symbols: f64) -> Result<(f64, f64)> {
    check_theta(theta)?;
    if !(n_symbols > 0.0 && n_symbols.is_finite()) {
        return Err(Error::Domain {
            name: "n_symbols",
            value: n_symbols,
            expected: "finite and > 0",
        });
    }
    let [c0, c1, c2] = config.capacities();
    Ok((n_symbols * (1.0 - theta) * (c1 - c0), n_symbols * theta * (c2 - c0)))
}

/// `delta` coefficient of the maximal DF rate.
fn delta(config: &LinkConfig) -> f64 {
    let [c0, c1, c2] = config.capacities();
    (c1 - c0) / (c1 * (c1 + c2 - 2.0 * c0))
}

/// Two-way rate of DF for a given split `theta` of the source time.
pub fn df_rate(config: &LinkConfig, theta: f64) -> Result<DfBreakdown> {
    let (size_dbc, size_dba) = df_packet_sizes(config, theta, 1.0)?;
    let [_, c1, c2] = config.capacities();
    let delivered = (1.0 - theta) * c1 + theta * c2;

    let (case, relay_symbols) = if size_dbc >= size_dba * (1.0 - SIZE_TIE) {
        // head of D_BC XOR D_BA at the weak rate, remainder of D_BC to C only
        (
            XorPath::SplitAndXor,
            size_dba / c1 + (size_dbc - size_dba).max(0.0) / c2,
        )
    } else {
        (XorPath::PadAndXor, size_dba / c1)
    };
    Ok(DfBreakdown {
        theta,
        size_dbc,
        size_dba,
        delta: delta(config),
        rate: delivered / (1.0 + relay_symbols),
        case,
    })
}

/// The `theta` at which both forwarded packets have equal size.
pub fn df_theta_star(config: &LinkConfig) -> f64 {
    let [c0, c1, c2] = config.capacities();
    (c1 - c0) / (c1 + c2 - 2.0 * c0)
}

/// Maximal DF two-way rate, attained at [`df_theta_star`].
pub fn df_max_rate(config: &LinkConfig) -> SchemeRate {
    let [c0, c1, c2] = config.capacities();
    let d = delta(config);
    let rate = c1 * (1.0 + d * (c2 - c1)) / (1.0 + d * (c2 - c0));
    let theta = df_theta_star(config);
    let breakdown = df_rate(config, theta).expect("theta* lies in (0, 1) for valid configs");
    SchemeRate {
        scheme: Scheme::Df,
        rate,
        param: Some(theta),
        detail: SchemeDetail::Df(breakdown),
    }
}

/// Maximal DF rate when the end nodes ignore the direct link.
pub fn df_max_rate_no_direct(config: &LinkConfig) -> f64 {
    let [_, c1, c2] = config.capacities();
    2.0 * c1 * c2 / (c1 + 2.0 * c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::cap;

    fn cfg(g0: f64, g1: f64, g2: f64) -> LinkConfig {
        LinkConfig::new(g0, g1, g2, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn packet_sizes() {
        let (bc, ba) = df_packet_sizes(&cfg(0.0, 1.0, 1.0), 0.5, 1000.0).unwrap();
        assert!(rel(bc, 500.0) < 1e-12 && rel(ba, 500.0) < 1e-12);

        let (bc, ba) = df_packet_sizes(&cfg(0.1, 1.0, 1.0), 0.5, 1000.0).unwrap();
        assert!((bc - 431.248_238_125_032_5).abs() < 1e-9);
        assert!((ba - 431.248_238_125_032_5).abs() < 1e-9);

        let (bc, ba) = df_packet_sizes(&cfg(0.0, 1.0, 3.0), 0.5, 1000.0).unwrap();
        assert!(rel(bc, 500.0) < 1e-12 && rel(ba, 1000.0) < 1e-12);
    }

    #[test]
    fn theta_out_of_range() {
        let c = cfg(0.0, 1.0, 1.0);
        for t in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(df_rate(&c, t).is_err(), "theta {t}");
            assert!(df_packet_sizes(&c, t, 10.0).is_err());
        }
        assert!(df_packet_sizes(&c, 0.5, 0.0).is_err());
    }

    #[test]
    fn rate_examples() {
        let b = df_rate(&cfg(0.0, 1.0, 1.0), 0.5).unwrap();
        assert!(rel(b.rate, 2.0 / 3.0) < 1e-12);
        assert_eq!(b.case, XorPath::SplitAndXor);

        let b = df_rate(&cfg(0.1, 1.0, 1.0), 0.25).unwrap();
        assert_eq!(b.case, XorPath::SplitAndXor);
        assert!((b.rate - 0.607_211_600_605_011_6).abs() < 1e-12);

        let b = df_rate(&cfg(0.1, 1.0, 1.0), 0.75).unwrap();
        assert_eq!(b.case, XorPath::PadAndXor);
        assert!(b.size_dbc < b.size_dba);
    }

    #[test]
    fn rate_matches_symbol_accounting() {
        // duration accounting at N = 10^6 with explicit packet sizes
        let c = cfg(0.1, 1.0, 1.0);
        let n = 1e6;
        let (c0, c1, c2) = (cap(0.1), cap(1.0), cap(1.0));
        let (k1, k2) = (n * 0.75, n * 0.25);
        let (dac, dca) = (k1 * c1, k2 * c2);
        let (dbc, dba) = (k1 * (c1 - c0), k2 * (c2 - c0));
        let total = k1 + k2 + dba / c1 + (dbc - dba) / c2;
        let b = df_rate(&c, 0.25).unwrap();
        assert!(rel(b.rate, (dac + dca) / total) < 1e-12);
    }

    #[test]
    fn theta_star_examples() {
        assert!(rel(df_theta_star(&cfg(0.0, 4.0, 4.0)), 0.5) < 1e-15);
        assert!(rel(df_theta_star(&cfg(0.3, 2.0, 2.0)), 0.5) < 1e-15);
        assert!(rel(df_theta_star(&cfg(0.0, 1.0, 3.0)), 1.0 / 3.0) < 1e-15);
        assert!(rel(df_theta_star(&cfg(0.1, 1.0, 1.0)), 0.5) < 1e-15);
    }

    #[test]
    fn max_rate_examples() {
        assert!(rel(df_max_rate(&cfg(0.0, 1.0, 1.0)).rate, 2.0 / 3.0) < 1e-12);
        assert!((df_max_rate(&cfg(0.1, 1.0, 1.0)).rate - 0.698_690_816_423_308).abs() < 1e-12);
        assert!(rel(df_max_rate(&cfg(0.0, 1.0, 3.0)).rate, 0.8) < 1e-12);
    }

    #[test]
    fn max_rate_equals_rate_at_theta_star() {
        for (g0, g1, g2) in [(0.0, 1.0, 1.0), (0.1, 1.0, 1.0), (0.5, 2.0, 9.0), (3.0, 10.0, 1000.0)] {
            let c = cfg(g0, g1, g2);
            let m = df_max_rate(&c);
            let SchemeDetail::Df(b) = m.detail else { unreachable!() };
            assert!(rel(m.rate, b.rate) < 1e-12);
            assert!(m.rate < cap(g1));
        }
    }

    #[test]
    fn no_direct_examples() {
        assert!(rel(df_max_rate_no_direct(&cfg(0.0, 1.0, 1.0)), 2.0 / 3.0) < 1e-12);
        assert!(rel(df_max_rate_no_direct(&cfg(0.0, 1.0, 3.0)), 0.8) < 1e-12);
        for g in [0.1, 1.0, 7.0, 1000.0] {
            let c = cfg(0.0, g, g);
            assert!(rel(df_max_rate_no_direct(&c), 2.0 / 3.0 * cap(g)) < 1e-12);
        }
        // gamma0 is ignored
        let c = cfg(0.5, 1.0, 3.0);
        assert!(rel(df_max_rate_no_direct(&c), 0.8) < 1e-12);
    }

    #[test]
    fn piecewise_monotone_in_theta() {
        for (g0, g1, g2) in [
            (0.0, 1.0, 1.0),
            (0.1, 1.0, 1.0),
            (0.0, 1.0, 3.0),
            (0.9, 1.0, 50.0),
            (2.0, 3.0, 3.5),
        ] {
            let c = cfg(g0, g1, g2);
            let star = df_theta_star(&c);
            let grid: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
            let mut best = (0.0, f64::MIN);
            let mut prev: Option<(f64, f64)> = None;
            for &t in &grid {
                let r = df_rate(&c, t).unwrap().rate;
                if let Some((pt, pr)) = prev {
                    if t <= star {
                        assert!(r >= pr - 1e-12, "case 1 decreasing at {pt}->{t}");
                    } else if pt >= star {
                        assert!(r <= pr + 1e-12, "case 2 increasing at {pt}->{t}");
                    }
                }
                if r > best.1 {
                    best = (t, r);
                }
                prev = Some((t, r));
            }
            assert!((best.0 - star).abs() <= 1e-3, "argmax {} vs theta* {star}", best.0);
        }
    }
}

//! 2-step joint decode-and-forward.
//!
//! Both end nodes transmit at a rate pair on the sum-rate face of the
//! multiple-access region, parametrized by `lambda`. The relay decodes both
//! packets and broadcasts their XOR: padded when `C` sent more bits, split
//! when `A` did.

use super::{Scheme, SchemeDetail, SchemeRate, XorPath};
use crate::channel::{ma_rate_pair, LinkConfig, RatePair};
use crate::error::Result;

/// Which branch of the maximal JDF rate applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JdfRegime {
    /// `gamma2 <= gamma1 + gamma1^2`: the face crosses the equal-rate line
    /// and the optimum sits at the crossing.
    Crossing,
    /// `gamma2 > gamma1 + gamma1^2`: `C` always out-sends `A` and the rate
    /// saturates at `C(gamma1)`.
    Saturated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JdfBreakdown {
    pub lambda: f64,
    pub rate_pair: RatePair,
    pub lambda0: Option<f64>,
    pub rate: f64,
    pub regime: JdfRegime,
    pub path: XorPath,
}

fn regime(config: &LinkConfig) -> JdfRegime {
    let g1 = config.gamma1();
    if config.gamma2() <= g1 + g1 * g1 {
        JdfRegime::Crossing
    } else {
        JdfRegime::Saturated
    }
}

/// `lambda` at which both end nodes send at the same rate, if the sum-rate
/// face reaches the equal-rate line.
pub fn jdf_lambda0(config: &LinkConfig) -> Option<f64> {
    if regime(config) == JdfRegime::Saturated {
        return None;
    }
    let [_, c1, c2] = config.capacities();
    let s = config.sum_capacity();
    // rounding can push the boundary case a hair past 1
    Some(((2.0 * c2 - s) / (2.0 * (c1 + c2 - s))).clamp(0.0, 1.0))
}

/// Two-way rate of JDF at the face point `lambda`.
pub fn jdf_rate(config: &LinkConfig, lambda: f64) -> Result<JdfBreakdown> {
    let pair = ma_rate_pair(config, lambda)?;
    let [_, c1, c2] = config.capacities();
    let s = config.sum_capacity();
    let (path, rate) = if pair.rate_c >= pair.rate_a {
        (XorPath::PadAndXor, c1 * s / (c1 + pair.rate_c))
    } else {
        let symbols = 1.0 + pair.rate_c / c1 + (pair.rate_a - pair.rate_c) / c2;
        (XorPath::SplitAndXor, s / symbols)
    };
    Ok(JdfBreakdown {
        lambda,
        rate_pair: pair,
        lambda0: jdf_lambda0(config),
        rate,
        regime: regime(config),
        path,
    })
}

/// Maximal JDF two-way rate. The saturated regime reports `lambda = 1`,
/// although every pair between `L_A` and `(C(gamma1), C(gamma1))` is optimal.
pub fn jdf_max_rate(config: &LinkConfig) -> SchemeRate {
    let [_, c1, _] = config.capacities();
    let s = config.sum_capacity();
    let (lambda, rate) = match jdf_lambda0(config) {
        // s <= 2 c1 here, so the rate never exceeds c1; equality holds on the
        // regime boundary, where rounding could otherwise land an ulp above
        Some(l0) => (l0, (c1 * 2.0 * s / (2.0 * c1 + s)).min(c1)),
        None => (1.0, c1),
    };
    let breakdown = jdf_rate(config, lambda).expect("lambda within [0, 1]");
    SchemeRate {
        scheme: Scheme::Jdf,
        rate,
        param: Some(lambda),
        detail: SchemeDetail::Jdf(breakdown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::cap;

    fn cfg(g1: f64, g2: f64) -> LinkConfig {
        LinkConfig::relay_only(g1, g2).unwrap()
    }

    #[test]
    fn lambda0_examples() {
        for g in [0.01, 1.0, 55.0] {
            assert!((jdf_lambda0(&cfg(g, g)).unwrap() - 0.5).abs() < 1e-12);
        }
        assert!((jdf_lambda0(&cfg(1.0, 1.5)).unwrap() - 0.812_810_803_094_343_4).abs() < 1e-12);
        assert_eq!(jdf_lambda0(&cfg(1.0, 3.0)), None);
    }

    #[test]
    fn lambda0_equalizes_rates() {
        for (g1, g2) in [(1.0, 1.0), (1.0, 1.5), (0.5, 0.7), (4.0, 19.0), (10.0, 110.0)] {
            let c = cfg(g1, g2);
            let p = ma_rate_pair(&c, jdf_lambda0(&c).unwrap()).unwrap();
            assert!((p.rate_a - p.rate_c).abs() <= 1e-9, "{g1} {g2}");
        }
    }

    #[test]
    fn rate_examples() {
        let b = jdf_rate(&cfg(1.0, 1.0), 0.5).unwrap();
        assert!((b.rate - 0.884_228_217_395_480_6).abs() < 1e-12);
        let b = jdf_rate(&cfg(1.0, 1.0), 0.0).unwrap();
        assert!((b.rate - 0.792_481_250_360_578).abs() < 1e-12);
        assert_eq!(b.path, XorPath::PadAndXor);
        let b = jdf_rate(&cfg(1.0, 3.0), 1.0).unwrap();
        assert!((b.rate - 1.0).abs() < 1e-12);
        assert_eq!(b.regime, JdfRegime::Saturated);
        let b = jdf_rate(&cfg(1.0, 1.5), 0.9).unwrap();
        assert_eq!(b.path, XorPath::SplitAndXor);
        assert!((b.rate - 0.938_061_787_826_260_3).abs() < 1e-12);
    }

    #[test]
    fn lambda_out_of_range() {
        assert!(jdf_rate(&cfg(1.0, 1.0), -1e-9).is_err());
        assert!(jdf_rate(&cfg(1.0, 1.0), 1.0 + 1e-9).is_err());
    }

    #[test]
    fn max_rate_examples() {
        let m = jdf_max_rate(&cfg(1.0, 1.0));
        assert!((m.rate - 0.884_228_217_395_480_6).abs() < 1e-12);
        assert_eq!(m.param, Some(0.5));
        assert!((jdf_max_rate(&cfg(1.0, 2.0)).rate - 1.0).abs() < 1e-12);
        let m = jdf_max_rate(&cfg(1.0, 3.0));
        assert_eq!(m.rate, 1.0);
        assert_eq!(m.param, Some(1.0));
    }

    #[test]
    fn continuous_at_lambda0() {
        for (g1, g2) in [(1.0, 1.0), (1.0, 1.5), (0.2, 0.21), (3.0, 11.0)] {
            let c = cfg(g1, g2);
            let l0 = jdf_lambda0(&c).unwrap();
            let left = jdf_rate(&c, (l0 - 1e-12).max(0.0)).unwrap().rate;
            let right = jdf_rate(&c, (l0 + 1e-12).min(1.0)).unwrap().rate;
            assert!((left - right).abs() <= 1e-9);
            assert!((jdf_max_rate(&c).rate - jdf_rate(&c, l0).unwrap().rate).abs() <= 1e-9);
        }
    }

    #[test]
    fn boundary_branch_meets_capacity() {
        for g1 in [0.25, 0.5, 1.0, 2.0, 4.0, 100.0] {
            let c = cfg(g1, g1 + g1 * g1);
            assert_eq!(regime(&c), JdfRegime::Crossing);
            assert!((jdf_max_rate(&c).rate - cap(g1)).abs() <= 1e-9 * cap(g1));
        }
    }

    #[test]
    fn strictly_below_capacity_inside_crossing_regime() {
        for (g1, g2) in [(1.0, 1.0), (1.0, 1.99), (5.0, 29.0)] {
            assert!(jdf_max_rate(&cfg(g1, g2)).rate < cap(g1));
        }
    }
}

//! Exhaustive search over the whole multiple-access pentagon, used to check
//! that no jointly decodable pair beats the best point of the sum-rate face.

use crate::channel::{cap, ma_contains, LinkConfig, RatePair};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionGridResult {
    pub best_pair: RatePair,
    pub best_rate: f64,
    /// Points per axis.
    pub grid_points: usize,
    /// `C(gamma1 + gamma2)` minus the sum rate of the best pair.
    pub face_gap: f64,
}

/// Two-way rate of a 2-step decode-and-forward round where `A` and `C`
/// send at `pair` and the relay XOR-broadcasts at the weak-link rate.
///
/// Counted in symbols per unit of step-1 length: the broadcast covers the
/// longer packet, except that when `A`'s packet is longer its unmatched tail
/// only has to reach `C` over the stronger link.
pub fn two_step_xor_rate(config: &LinkConfig, pair: RatePair) -> f64 {
    let (c1, c2) = (cap(config.gamma1()), cap(config.gamma2()));
    let (ra, rc) = (pair.rate_a, pair.rate_c);
    let broadcast = if rc >= ra { rc / c1 } else { rc / c1 + (ra - rc) / c2 };
    (ra + rc) / (1.0 + broadcast)
}

/// Maximizes [`two_step_xor_rate`] over a `grid_points x grid_points` grid
/// covering `[0, C(gamma1)] x [0, C(gamma2)]`, keeping only decodable pairs.
pub fn grid_max_ma_region(config: &LinkConfig, grid_points: usize) -> Result<RegionGridResult> {
    if grid_points < 3 {
        return Err(Error::Domain {
            name: "grid_points",
            value: grid_points as f64,
            expected: ">= 3",
        });
    }
    let (c1, c2) = (cap(config.gamma1()), cap(config.gamma2()));
    let last = (grid_points - 1) as f64;
    let mut best = (RatePair::default(), f64::NEG_INFINITY);
    for i in 0..grid_points {
        let ra = c1 * i as f64 / last;
        for j in 0..grid_points {
            let pair = RatePair::new(ra, c2 * j as f64 / last);
            if !ma_contains(config, pair) {
                continue;
            }
            let rate = two_step_xor_rate(config, pair);
            if rate > best.1 {
                best = (pair, rate);
            }
        }
    }
    Ok(RegionGridResult {
        best_pair: best.0,
        best_rate: best.1,
        grid_points,
        face_gap: cap(config.gamma1() + config.gamma2()) - best.0.sum(),
    })
}

/// Spread (max minus min) of [`two_step_xor_rate`] along the edge from
/// `(C(gamma1), C(gamma1))` up to `L_A`, sampled at `points` pairs.
///
/// The edge only exists in the saturated regime `gamma2 > gamma1 + gamma1^2`;
/// returns `None` otherwise.
pub fn saturated_edge_spread(config: &LinkConfig, points: usize) -> Option<f64> {
    let c1 = cap(config.gamma1());
    let top = cap(config.gamma1() + config.gamma2()) - c1;
    if top <= c1 || points < 2 {
        return None;
    }
    let rates: Vec<f64> = (0..points)
        .map(|k| {
            let rc = c1 + (top - c1) * k as f64 / (points - 1) as f64;
            two_step_xor_rate(config, RatePair::new(c1, rc))
        })
        .collect();
    let max = rates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = rates.iter().cloned().fold(f64::INFINITY, f64::min);
    Some(max - min)
}

//! Grid search with golden-section refinement over a scalar parameter.

use crate::channel::LinkConfig;
use crate::error::{Error, Result};
use crate::schemes::{df_rate, jdf_rate};

/// Points used when the coarse grid is not unimodal and golden-section
/// refinement cannot be trusted.
pub const FALLBACK_GRID_POINTS: usize = 100_001;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const UNIMODAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub best_param: f64,
    pub best_rate: f64,
    pub grid_points: usize,
    /// Golden-section iterations; zero when the fine-grid fallback ran.
    pub refinement_iterations: usize,
}

/// Search interval. Open intervals never evaluate their endpoints.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub open: bool,
}

#[derive(Debug, Clone, Copy)]
struct Best {
    x: f64,
    f: f64,
}

impl Best {
    // ties go to the smaller parameter
    fn offer(&mut self, x: f64, f: f64) {
        if f > self.f || (f == self.f && x < self.x) {
            *self = Best { x, f };
        }
    }
}

fn grid(interval: Interval, points: usize) -> Vec<f64> {
    let last = points - 1;
    let range = if interval.open { 1..last } else { 0..points };
    range
        .map(|i| interval.lo + (interval.hi - interval.lo) * i as f64 / last as f64)
        .collect()
}

/// True when `values` rises (weakly) to its maximum and falls after it.
fn is_unimodal(values: &[f64], peak: usize) -> bool {
    let tol = |v: f64| UNIMODAL_TOL * v.abs().max(1.0);
    values[..=peak].windows(2).all(|w| w[1] >= w[0] - tol(w[0]))
        && values[peak..].windows(2).all(|w| w[1] <= w[0] + tol(w[0]))
}

/// Maximizes `objective` on a uniform grid, then narrows the bracket around
/// the best grid point by golden-section search until it is narrower than
/// `refine_tol`.
pub fn maximize<F>(objective: F, interval: Interval, grid_points: usize, refine_tol: f64) -> Result<GridResult>
where
    F: Fn(f64) -> f64,
{
    if grid_points < 3 {
        return Err(Error::Domain {
            name: "grid_points",
            value: grid_points as f64,
            expected: ">= 3",
        });
    }
    if !(refine_tol > 0.0) {
        return Err(Error::Domain {
            name: "refine_tol",
            value: refine_tol,
            expected: "> 0",
        });
    }

    let xs = grid(interval, grid_points);
    let values: Vec<f64> = xs.iter().map(|&x| objective(x)).collect();
    let mut best = Best { x: xs[0], f: values[0] };
    let mut peak = 0;
    for (i, (&x, &f)) in xs.iter().zip(&values).enumerate() {
        if f > best.f {
            best = Best { x, f };
            peak = i;
        }
    }

    if !is_unimodal(&values, peak) {
        let fine = grid(interval, FALLBACK_GRID_POINTS);
        let mut best = Best {
            x: fine[0],
            f: f64::NEG_INFINITY,
        };
        for x in fine {
            best.offer(x, objective(x));
        }
        return Ok(GridResult {
            best_param: best.x,
            best_rate: best.f,
            grid_points: FALLBACK_GRID_POINTS,
            refinement_iterations: 0,
        });
    }

    // bracket between the neighbouring grid points (or the interval ends)
    let step = (interval.hi - interval.lo) / (grid_points - 1) as f64;
    let mut a = (best.x - step).max(interval.lo);
    let mut b = (best.x + step).min(interval.hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    best.offer(x1, f1);
    best.offer(x2, f2);
    let mut iterations = 0;
    while b - a >= refine_tol {
        iterations += 1;
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = objective(x1);
            best.offer(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = objective(x2);
            best.offer(x2, f2);
        }
    }

    Ok(GridResult {
        best_param: best.x,
        best_rate: best.f,
        grid_points,
        refinement_iterations: iterations,
    })
}

/// Brute-force maximization of the DF rate over `theta` in `(0, 1)`.
pub fn grid_max_df_theta(config: &LinkConfig, grid_points: usize, refine_tol: f64) -> Result<GridResult> {
    maximize(
        |theta| df_rate(config, theta).map_or(f64::NEG_INFINITY, |b| b.rate),
        Interval {
            lo: 0.0,
            hi: 1.0,
            open: true,
        },
        grid_points,
        refine_tol,
    )
}

/// Brute-force maximization of the JDF rate over `lambda` in `[0, 1]`.
pub fn grid_max_jdf_lambda(config: &LinkConfig, grid_points: usize, refine_tol: f64) -> Result<GridResult> {
    maximize(
        |lambda| jdf_rate(config, lambda).map_or(f64::NEG_INFINITY, |b| b.rate),
        Interval {
            lo: 0.0,
            hi: 1.0,
            open: false,
        },
        grid_points,
        refine_tol,
    )
}

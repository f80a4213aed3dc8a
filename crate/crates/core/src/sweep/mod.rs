//! Rate-versus-SNR sweeps over `gamma1` and their CSV / gnuplot output.

use crate::channel::{linear_to_db, LinkConfig};
use crate::error::{Error, Result};
use crate::oracle::{grid_max_df_theta, grid_max_jdf_lambda};
use crate::schemes::{af_max_rate, df_max_rate, dnf_upper_bound, jdf_max_rate, Scheme};

mod output;
mod spec;

pub use output::{emit_csv, emit_plot_script, format_sig, write_csv_file, write_plot_script_file, CSV_DIGITS};
pub use spec::{parse_schemes, DbRange, Gamma0Rule, Gamma2Rule, SweepSpec};

/// Largest relative gap allowed between a closed form and its oracle.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

/// Bracket width for the oracle's golden-section refinement.
const REFINE_TOL: f64 = 1e-12;

/// A closed-form rate next to its brute-force oracle value.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub column: String,
    pub closed_form: f64,
    pub oracle: f64,
}

impl OracleCheck {
    pub fn deviation(&self) -> f64 {
        (self.oracle - self.closed_form).abs() / self.closed_form.abs()
    }
}

/// One `gamma1` grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub gamma1_db: f64,
    pub gamma2_db: f64,
    /// Linear direct-link SNR per rule, in `SweepSpec::gamma0` order.
    pub gamma0: Vec<(Gamma0Rule, f64)>,
    /// DF rate per `gamma0` rule; empty when DF was not requested.
    pub df: Vec<f64>,
    pub af: Option<f64>,
    pub jdf: Option<f64>,
    pub dnf: Option<f64>,
    pub checks: Vec<OracleCheck>,
}

impl SweepRow {
    /// Scheme curves as `(column name, rate)` in output order.
    pub fn curves(&self) -> Vec<(String, f64)> {
        let mut out: Vec<(String, f64)> = self
            .gamma0
            .iter()
            .zip(&self.df)
            .map(|((rule, _), &r)| (df_column(rule), r))
            .collect();
        for (scheme, value) in [(Scheme::Af, self.af), (Scheme::Jdf, self.jdf), (Scheme::Dnf, self.dnf)] {
            if let Some(v) = value {
                out.push((scheme.name().to_string(), v));
            }
        }
        out
    }
}

pub(crate) fn df_column(rule: &Gamma0Rule) -> String {
    format!("DF[gamma0={rule}]")
}

/// Evaluates every requested scheme at each `gamma1` grid point, in
/// ascending order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.gamma1
        .points()
        .into_iter()
        .map(|db| sweep_point(spec, db))
        .collect()
}

fn sweep_point(spec: &SweepSpec, gamma1_db: f64) -> Result<SweepRow> {
    let at_point = |e: Error| Error::Sweep(format!("at gamma1 = {gamma1_db} dB: {e}"));
    let gamma1 = crate::channel::db_to_linear(gamma1_db);
    let gamma2 = spec.gamma2.apply(gamma1);
    // the relay links are fixed by gamma1 and the gamma2 rule; validate each
    // direct-link variant on top of them
    let configs: Vec<(Gamma0Rule, LinkConfig)> = spec
        .gamma0
        .iter()
        .map(|rule| {
            LinkConfig::new(rule.apply(gamma1), gamma1, gamma2, spec.noise_power)
                .map(|c| (*rule, c))
                .map_err(at_point)
        })
        .collect::<Result<_>>()?;
    let relay_only = configs[0].1.without_direct_link();
    let wants = |s: Scheme| spec.schemes.contains(&s);

    let mut row = SweepRow {
        gamma1_db,
        gamma2_db: linear_to_db(gamma2),
        gamma0: configs.iter().map(|(rule, c)| (*rule, c.gamma0())).collect(),
        df: Vec::new(),
        af: wants(Scheme::Af).then(|| af_max_rate(&relay_only).rate),
        jdf: wants(Scheme::Jdf).then(|| jdf_max_rate(&relay_only).rate),
        dnf: wants(Scheme::Dnf).then(|| dnf_upper_bound(&relay_only).rate),
        checks: Vec::new(),
    };
    if wants(Scheme::Df) {
        row.df = configs.iter().map(|(_, c)| df_max_rate(c).rate).collect();
    }

    if spec.verify {
        if wants(Scheme::Df) {
            for ((rule, config), &closed) in configs.iter().zip(&row.df) {
                let oracle = grid_max_df_theta(config, spec.grid_points, REFINE_TOL).map_err(at_point)?;
                row.checks.push(OracleCheck {
                    column: df_column(rule),
                    closed_form: closed,
                    oracle: oracle.best_rate,
                });
            }
        }
        if let Some(closed) = row.jdf {
            let oracle = grid_max_jdf_lambda(&relay_only, spec.grid_points, REFINE_TOL).map_err(at_point)?;
            row.checks.push(OracleCheck {
                column: Scheme::Jdf.name().to_string(),
                closed_form: closed,
                oracle: oracle.best_rate,
            });
        }
        if let Some(bad) = row.checks.iter().find(|c| c.deviation() > VERIFY_TOLERANCE) {
            return Err(Error::Verification(format!(
                "{} at gamma1 = {gamma1_db} dB: closed form {} vs oracle {} (relative deviation {:e})",
                bad.column,
                bad.closed_form,
                bad.oracle,
                bad.deviation()
            )));
        }
    }
    Ok(row)
}

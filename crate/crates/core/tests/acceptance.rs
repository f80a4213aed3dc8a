//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use twoway_core::oracle::{
    additive_channels, denoiser_with_size, grid_max_ma_region, random_configs, run_oracle_suite, search_min_denoiser,
};
use twoway_core::schemes::{df_max_rate, df_max_rate_no_direct, df_rate, jdf_max_rate, jdf_rate, Scheme};
use twoway_core::sim::{run_df, run_jdf};
use twoway_core::sweep::{emit_csv, run_sweep, SweepRow, SweepSpec};
use twoway_core::{capacity, db_to_linear, LinkConfig};

const ORACLE_TOLERANCE: f64 = 1e-6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cap(g: f64) -> f64 {
    capacity(g).unwrap()
}

fn df_oracle() -> Outcome {
    let start = Instant::now();
    let report = run_oracle_suite(200, 2024, 1001, 1e-12).unwrap();
    let elapsed = start.elapsed();
    let worst = report.worst(Scheme::Df);
    outcome(
        worst <= ORACLE_TOLERANCE && elapsed < Duration::from_secs(30),
        format!("200 configs, worst relative deviation {worst:.2e}, {elapsed:.2?}"),
    )
}

fn no_direct_reduction() -> Outcome {
    let grid: Vec<f64> = [-10.0, -3.0, 0.0, 3.0, 6.0, 10.0, 15.0, 20.0, 25.0, 30.0]
        .iter()
        .map(|&db| db_to_linear(db))
        .collect();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &g1 in &grid {
        for k in [1.0, 1.5, 3.0, 10.0, 100.0] {
            let c = LinkConfig::relay_only(g1, k * g1).unwrap();
            worst = worst.max(rel(df_max_rate(&c).rate, df_max_rate_no_direct(&c)));
            count += 1;
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{count} (gamma1, gamma2) points, worst relative gap {worst:.2e}"),
    )
}

fn jdf_oracle() -> Outcome {
    let start = Instant::now();
    let report = run_oracle_suite(200, 2024, 1001, 1e-12).unwrap();
    let worst = report.worst(Scheme::Jdf);
    let mut beat: f64 = f64::NEG_INFINITY;
    for c in random_configs(20, 99) {
        let c = c.without_direct_link();
        let region = grid_max_ma_region(&c, 400).unwrap();
        beat = beat.max(region.best_rate - jdf_max_rate(&c).rate);
    }
    outcome(
        worst <= ORACLE_TOLERANCE && beat <= ORACLE_TOLERANCE,
        format!(
            "200 configs, worst relative deviation {worst:.2e}; 2-D region search exceeds closed form by at most {beat:.2e} over 20 configs, {:.2?}",
            start.elapsed()
        ),
    )
}

fn boundary_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for g1 in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let c = LinkConfig::relay_only(g1, g1 + g1 * g1).unwrap();
        worst = worst.max((jdf_max_rate(&c).rate - cap(g1)).abs());
    }
    outcome(
        worst <= 1e-9,
        format!("gamma1 in {{0.25, 0.5, 1, 2, 4}}, worst gap {worst:.2e}"),
    )
}

fn figure_rows() -> (Vec<SweepRow>, Vec<SweepRow>) {
    (
        run_sweep(&SweepSpec::equal_links()).unwrap(),
        run_sweep(&SweepSpec::quadratic_links()).unwrap(),
    )
}

fn scheme_ordering() -> Outcome {
    let (equal, quad) = figure_rows();
    let mut violations = 0;
    for row in equal.iter().chain(&quad) {
        let dnf = row.dnf.unwrap();
        let c1 = cap(db_to_linear(row.gamma1_db));
        let others = row.df.iter().copied().chain([row.af.unwrap(), row.jdf.unwrap()]);
        violations += others.filter(|&r| r > dnf).count();
        violations += row.df.iter().filter(|&&r| r >= c1).count();
    }
    outcome(
        violations == 0,
        format!("{} rows, {violations} violations", equal.len() + quad.len()),
    )
}

fn af_jdf_crossover() -> Outcome {
    let (equal, _) = figure_rows();
    let gap: Vec<f64> = equal.iter().map(|r| r.jdf.unwrap() - r.af.unwrap()).collect();
    let first = &equal[0];
    let last = equal.last().unwrap();
    let changes = gap.windows(2).filter(|w| w[0] > 0.0 && w[1] < 0.0).count();
    outcome(
        first.gamma1_db == 0.0 && gap[0] > 0.0 && last.gamma1_db == 30.0 && *gap.last().unwrap() < 0.0 && changes >= 1,
        format!(
            "0 dB: JDF {:.4} vs AF {:.4}; 30 dB: JDF {:.4} vs AF {:.4}; {changes} sign change(s)",
            first.jdf.unwrap(),
            first.af.unwrap(),
            last.jdf.unwrap(),
            last.af.unwrap()
        ),
    )
}

fn simulator_convergence() -> Outcome {
    const N: u64 = 1_000_000;
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    let df_cases = [(0.0, 1.0, 1.0, 0.5), (0.1, 1.0, 1.0, 0.5), (0.0, 1.0, 3.0, 0.75)];
    for (g0, g1, g2, theta) in df_cases {
        let c = LinkConfig::new(g0, g1, g2, 1.0).unwrap();
        let t = run_df(&c, N, theta, 7).unwrap();
        worst = worst.max(rel(t.realized_rate, df_rate(&c, theta).unwrap().rate));
        errors += t.bit_errors;
    }
    for (g1, g2, lambda) in [(1.0, 1.0, 0.5), (1.0, 3.0, 1.0), (1.0, 1.5, 0.9)] {
        let c = LinkConfig::relay_only(g1, g2).unwrap();
        let t = run_jdf(&c, N, lambda, 7).unwrap();
        worst = worst.max(rel(t.realized_rate, jdf_rate(&c, lambda).unwrap().rate));
        errors += t.bit_errors;
    }
    outcome(
        worst <= 1e-3 && errors == 0,
        format!("6 configs at N = 10^6, worst relative gap {worst:.2e}, {errors} bit errors"),
    )
}

fn denoiser_conjecture() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (a, c) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        let target = a.max(c);
        for (name, channel) in additive_channels(a, c) {
            let min = search_min_denoiser(&channel).map(|d| d.codebook_size).ok();
            let below = denoiser_with_size(&channel, target - 1).unwrap();
            if min != Some(target) || below.is_some() {
                bad.push(format!("{name} ({a},{c}) -> {min:?}"));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{checked} channels, {elapsed:.2?}, mismatches: [{}]", bad.join(", ")),
    )
}

fn csv_bytes(rows: &[SweepRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    emit_csv(rows, &mut buf).unwrap();
    buf
}

fn curves(rows: &[SweepRow]) -> Vec<(String, Vec<f64>)> {
    let names: Vec<String> = rows[0].curves().into_iter().map(|(n, _)| n).collect();
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), rows.iter().map(|r| r.curves()[i].1).collect()))
        .collect()
}

fn figure_reproduction() -> Outcome {
    let (equal, quad) = figure_rows();
    let (equal2, quad2) = figure_rows();
    let mut problems = Vec::new();

    if csv_bytes(&equal) != csv_bytes(&equal2) || csv_bytes(&quad) != csv_bytes(&quad2) {
        problems.push("CSV bytes differ across reruns".to_string());
    }
    if equal.len() != 31 || quad.len() != 31 {
        problems.push("expected 31 rows per figure".into());
    }
    for (fig, rows) in [("equal", &equal), ("quadratic", &quad)] {
        for (name, values) in curves(rows) {
            if values.windows(2).any(|w| w[1] < w[0]) {
                problems.push(format!("{fig}: {name} decreases"));
            }
        }
        if rows.iter().any(|r| r.dnf.unwrap() != cap(db_to_linear(r.gamma1_db))) {
            problems.push(format!("{fig}: DNF differs from C(gamma1)"));
        }
    }
    if quad.iter().any(|r| rel(r.jdf.unwrap(), r.dnf.unwrap()) > 1e-9) {
        problems.push("quadratic: JDF differs from DNF".into());
    }
    if equal.iter().any(|r| rel(r.jdf.unwrap(), r.dnf.unwrap()) <= 1e-9) {
        problems.push("equal: JDF meets DNF somewhere".into());
    }
    for (e, q) in equal.iter().zip(&quad) {
        if e.dnf != q.dnf {
            problems.push(format!("DNF changes across figures at {} dB", e.gamma1_db));
        }
        if e.df.iter().zip(&q.df).any(|(a, b)| b <= a) || q.af.unwrap() <= e.af.unwrap() {
            problems.push(format!(
                "DF/AF not strictly larger under quadratic rule at {} dB",
                e.gamma1_db
            ));
        }
    }
    let checked = curves(&equal).len() + curves(&quad).len();
    outcome(
        problems.is_empty(),
        format!("2 x 31 rows, {checked} curves; problems: [{}]", problems.join("; ")),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("DF closed form matches theta oracle", df_oracle),
        ("DF reduces to the no-direct-link formula", no_direct_reduction),
        ("JDF closed form matches lambda and region oracles", jdf_oracle),
        ("JDF meets C(gamma1) on the branch boundary", boundary_identity),
        ("DNF bound tops every scheme, DF stays below C(gamma1)", scheme_ordering),
        ("AF and JDF cross between 0 and 30 dB", af_jdf_crossover),
        ("simulator converges with exact bit recovery", simulator_convergence),
        (
            "group-channel denoisers need exactly max(sizes) codewords",
            denoiser_conjecture,
        ),
        (
            "reference sweeps are deterministic and satisfy the sweep invariants",
            figure_reproduction,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        failed += usize::from(!o.ok);
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

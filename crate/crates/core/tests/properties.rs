use proptest::prelude::*;
use twoway_core::channel::{ma_contains, ma_rate_pair, make_config};
use twoway_core::schemes::{
    af_max_rate, df_max_rate, df_max_rate_no_direct, df_rate, df_theta_star, dnf_upper_bound, jdf_lambda0,
    jdf_max_rate, jdf_rate,
};
use twoway_core::sim::{run_df, run_jdf};
use twoway_core::{capacity, db_to_linear, Error, LinkConfig};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn snr_db() -> impl Strategy<Value = f64> {
    -10.0..30.0f64
}

/// Valid configuration with a direct link at `frac` of the weaker relay link.
fn config(max_frac: f64) -> impl Strategy<Value = LinkConfig> {
    (snr_db(), snr_db(), 0.0..max_frac).prop_map(|(a, c, frac)| {
        let (ga, gc) = (db_to_linear(a), db_to_linear(c));
        LinkConfig::new(frac * ga.min(gc), ga, gc, 1.0).unwrap()
    })
}

fn cap(g: f64) -> f64 {
    capacity(g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn capacity_increasing_and_concave(x in 1e-6..1e4f64, h in 1e-6..10.0f64) {
        prop_assert!(cap(x + h) > cap(x));
        // midpoint concavity
        prop_assert!(cap(x + h / 2.0) >= (cap(x) + cap(x + h)) / 2.0 - 1e-15);
    }

    #[test]
    fn corner_sums_match_sum_capacity(c in config(0.9)) {
        let (g1, g2) = (c.gamma1(), c.gamma2());
        let s = cap(g1 + g2);
        prop_assert!(rel(cap(g1) + cap(g2 / (1.0 + g1)), s) <= 1e-12);
        prop_assert!(rel(cap(g1 / (1.0 + g2)) + cap(g2), s) <= 1e-12);
    }

    #[test]
    fn face_points_are_decodable(c in config(0.9)) {
        for i in 0..=1000 {
            let lambda = i as f64 / 1000.0;
            let pair = ma_rate_pair(&c, lambda).unwrap();
            prop_assert!(ma_contains(&c, pair));
            prop_assert!(rel(pair.sum(), cap(c.gamma1() + c.gamma2())) <= 1e-12);
        }
    }

    #[test]
    fn normalization_is_idempotent(c in config(0.9)) {
        let again = make_config(c.gamma0(), c.gamma1(), c.gamma2(), c.noise_power()).unwrap();
        prop_assert_eq!(again.gamma0(), c.gamma0());
        prop_assert_eq!(again.gamma1(), c.gamma1());
        prop_assert_eq!(again.gamma2(), c.gamma2());
        prop_assert!(!again.swapped());
    }

    #[test]
    fn no_direct_link_reduction(c in config(0.9)) {
        let c = c.without_direct_link();
        prop_assert!(rel(df_max_rate(&c).rate, df_max_rate_no_direct(&c)) <= 1e-12);
    }

    #[test]
    fn df_closed_form_is_the_rate_at_its_argmax(c in config(0.9)) {
        let best = df_max_rate(&c).rate;
        prop_assert!(rel(best, df_rate(&c, df_theta_star(&c)).unwrap().rate) <= 1e-12);
        for i in 1..200 {
            prop_assert!(df_rate(&c, i as f64 / 200.0).unwrap().rate <= best * (1.0 + 1e-12));
        }
    }

    #[test]
    fn scheme_ordering(c in config(0.9)) {
        let dnf = dnf_upper_bound(&c).rate;
        let c1 = cap(c.gamma1());
        let df = df_max_rate(&c).rate;
        let jdf = jdf_max_rate(&c).rate;
        prop_assert_eq!(dnf, c1);
        prop_assert!(dnf >= jdf && jdf <= c1 * (1.0 + 1e-12));
        prop_assert!(dnf >= af_max_rate(&c).rate);
        prop_assert!(dnf > df && df < c1);
    }

    #[test]
    fn jdf_continuous_at_crossing(c in config(0.01)) {
        if let Some(l0) = jdf_lambda0(&c) {
            let eps = 1e-12;
            let below = jdf_rate(&c, (l0 - eps).max(0.0)).unwrap().rate;
            let above = jdf_rate(&c, (l0 + eps).min(1.0)).unwrap().rate;
            prop_assert!((below - above).abs() <= 1e-9);
        }
    }

    #[test]
    fn jdf_meets_bound_on_quadratic_rule(g_db in snr_db()) {
        let g1 = db_to_linear(g_db);
        let c = LinkConfig::relay_only(g1, g1 + g1 * g1).unwrap();
        prop_assert!(rel(jdf_max_rate(&c).rate, cap(g1)) <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn df_recovers_every_bit(c in config(0.5), theta in 0.05..0.95f64, seed in any::<u64>()) {
        let t = run_df(&c, 4000, theta, seed);
        prop_assume!(!matches!(t, Err(Error::Degenerate(_))));
        let t = t.unwrap();
        prop_assert!(t.success);
        prop_assert_eq!(t.bit_errors, 0);
        prop_assert!(t.steps.iter().all(|s| s.within_capacity()));
        prop_assert_eq!(&t, &run_df(&c, 4000, theta, seed).unwrap());
    }

    #[test]
    fn jdf_recovers_every_bit(c in config(0.01), lambda in 0.0..=1.0f64, seed in any::<u64>()) {
        let c = c.without_direct_link();
        let t = run_jdf(&c, 4000, lambda, seed);
        prop_assume!(!matches!(t, Err(Error::Degenerate(_))));
        let t = t.unwrap();
        prop_assert!(t.success);
        prop_assert!(t.steps.iter().all(|s| s.within_capacity()));
        prop_assert_eq!(t.to_text(), run_jdf(&c, 4000, lambda, seed).unwrap().to_text());
    }
}

/// Largest `|realized - analytic| * N` over the given sizes.
fn error_constant(run: impl Fn(u64) -> f64, analytic: f64, sizes: &[u64]) -> f64 {
    sizes
        .iter()
        .map(|&n| (run(n) - analytic).abs() * n as f64)
        .fold(0.0, f64::max)
}

#[test]
fn realized_rate_error_shrinks_like_one_over_n() {
    let sizes = [1_000, 10_000, 100_000, 1_000_000];
    let cases = [
        (0.0, 1.0, 1.0, 0.5),
        (0.1, 1.0, 1.0, 0.5),
        (0.0, 1.0, 3.0, 0.75),
        (0.5, 2.0, 20.0, 0.3),
    ];
    for (g0, g1, g2, theta) in cases {
        let c = LinkConfig::new(g0, g1, g2, 1.0).unwrap();
        let analytic = df_rate(&c, theta).unwrap().rate;
        let k = error_constant(|n| run_df(&c, n, theta, 1).unwrap().realized_rate, analytic, &sizes);
        // a handful of rounded symbols and floored bits per round
        assert!(k <= 10.0, "DF {:?}: c = {k}", (g0, g1, g2, theta));
    }
    for (g1, g2, lambda) in [(1.0, 1.0, 0.5), (1.0, 3.0, 1.0), (1.0, 1.5, 0.9), (4.0, 10.0, 0.2)] {
        let c = LinkConfig::relay_only(g1, g2).unwrap();
        let analytic = jdf_rate(&c, lambda).unwrap().rate;
        let k = error_constant(|n| run_jdf(&c, n, lambda, 1).unwrap().realized_rate, analytic, &sizes);
        assert!(k <= 10.0, "JDF {:?}: c = {k}", (g1, g2, lambda));
    }
}

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use twoway_core::oracle::{additive_channels, run_oracle_suite, search_min_denoiser};
use twoway_core::schemes::{df_rate, df_theta_star, jdf_max_rate, jdf_rate, SchemeDetail};
use twoway_core::sim::{run_df, run_jdf};
use twoway_core::sweep::{
    emit_csv, emit_plot_script, format_sig, parse_schemes, run_sweep, DbRange, Gamma0Rule, Gamma2Rule, SweepSpec,
    VERIFY_TOLERANCE,
};
use twoway_core::{capacity, db_to_linear, Error, LinkConfig, Scheme};

mod config;

/// Default directory for sweep output when set.
const OUT_DIR_ENV: &str = "TWOWAY_OUT_DIR";

#[derive(Parser)]
#[command(name = "twoway", version, about = "Two-way relay channel rates, oracles and sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every scheme's rate and breakdown for one configuration.
    Rate(RateArgs),
    /// Sweep gamma1 and write CSV or a gnuplot script.
    Sweep(SweepArgs),
    /// Check closed forms against the brute-force oracles.
    Verify(VerifyArgs),
    /// Run the bit-level DF or JDF protocol once.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct LinkArgs {
    /// Weaker relay-link SNR in dB.
    #[arg(long, allow_hyphen_values = true)]
    gamma1_db: f64,
    /// equal | quad | db:<v> | ratio:<k>
    #[arg(long, default_value = "equal")]
    gamma2: Gamma2Rule,
    /// zero | frac:<f> | db:<v>
    #[arg(long, default_value = "zero")]
    gamma0: Gamma0Rule,
    #[arg(long, default_value_t = 1.0)]
    noise_power: f64,
}

impl LinkArgs {
    fn config(&self) -> twoway_core::Result<LinkConfig> {
        let gamma1 = db_to_linear(self.gamma1_db);
        LinkConfig::new(
            self.gamma0.apply(gamma1),
            gamma1,
            self.gamma2.apply(gamma1),
            self.noise_power,
        )
    }
}

#[derive(Args)]
struct RateArgs {
    #[command(flatten)]
    link: LinkArgs,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Plot,
}

#[derive(Args)]
struct SweepArgs {
    /// key = value file; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// start:stop:step in dB, or a single value [default: 0:30:1]
    #[arg(long, allow_hyphen_values = true)]
    gamma1_db: Option<String>,
    /// equal | quad | db:<v> | ratio:<k> [default: equal]
    #[arg(long)]
    gamma2: Option<String>,
    /// One DF curve per rule; repeat or separate with commas [default: zero,frac:0.1]
    #[arg(long, value_delimiter = ',')]
    gamma0: Vec<String>,
    /// Comma-separated subset of df,af,jdf,dnf [default: all]
    #[arg(long)]
    schemes: Option<String>,
    /// Output file; relative paths resolve against $TWOWAY_OUT_DIR when set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// CSV file the plot script reads [default: --out with a .csv extension]
    #[arg(long)]
    csv_path: Option<String>,
    /// Cross-check DF and JDF against the grid oracles.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    grid_points: Option<usize>,
    #[arg(long)]
    noise_power: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Random configurations per scheme.
    #[arg(long, default_value_t = 200)]
    configs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1001)]
    grid_points: usize,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SimScheme {
    Df,
    Jdf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    scheme: SimScheme,
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long, default_value_t = 1_000_000)]
    n_symbols: u64,
    /// DF time split [default: the optimal one]
    #[arg(long)]
    theta: Option<f64>,
    /// JDF point on the sum-rate face [default: the optimal one]
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the step-by-step transcript here.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    const USAGE: u8 = 1;
    const VERIFICATION: u8 = 2;
    const IO: u8 = 3;

    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: Self::USAGE,
            error: error.into(),
        }
    }

    fn io(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: Self::IO,
            error: error.into(),
        }
    }

    fn verification(error: anyhow::Error) -> Self {
        Self {
            code: Self::VERIFICATION,
            error,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => Self::VERIFICATION,
            Error::Io(_) => Self::IO,
            _ => Self::USAGE,
        };
        Self { code, error: e.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::io(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Failure::USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Rate(args) => rate(args),
        Command::Sweep(args) => sweep(args),
        Command::Verify(args) => verify(args),
        Command::Simulate(args) => simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn g(v: f64) -> String {
    format_sig(v, 9)
}

fn print_config(out: &mut impl Write, c: &LinkConfig) -> io::Result<()> {
    writeln!(
        out,
        "gamma0 = {}, gamma1 = {}, gamma2 = {} (linear){}",
        g(c.gamma0()),
        g(c.gamma1()),
        g(c.gamma2()),
        if c.swapped() { ", A and C relabelled" } else { "" }
    )
}

fn rate(args: RateArgs) -> CmdResult {
    let config = args.link.config()?;
    let mut out = io::stdout().lock();
    print_config(&mut out, &config)?;
    for scheme in Scheme::ALL {
        let r = scheme.max_rate(&config);
        let detail = match &r.detail {
            SchemeDetail::Df(d) => format!(
                "theta {}, |D_BC| {}, |D_BA| {}, delta {}, {}",
                g(d.theta),
                g(d.size_dbc),
                g(d.size_dba),
                g(d.delta),
                d.case
            ),
            SchemeDetail::Af(d) => format!(
                "beta {}, snr A->C {}, snr C->A {}, pair ({}, {})",
                g(d.beta),
                g(d.snr_a_to_c),
                g(d.snr_c_to_a),
                g(d.rate_pair.rate_a),
                g(d.rate_pair.rate_c)
            ),
            SchemeDetail::Jdf(d) => format!(
                "lambda {}, lambda0 {}, pair ({}, {}), {:?}, {}",
                g(d.lambda),
                d.lambda0.map_or("none".into(), g),
                g(d.rate_pair.rate_a),
                g(d.rate_pair.rate_c),
                d.regime,
                d.path
            ),
            SchemeDetail::Dnf(d) => {
                format!(
                    "upper bound, pair ({}, {})",
                    g(d.rate_pair.rate_a),
                    g(d.rate_pair.rate_c)
                )
            }
        };
        writeln!(out, "{:<4}{}  {}", scheme.name(), g(r.rate), detail)?;
    }
    Ok(())
}

fn pick<T>(
    flag: Option<T>,
    file: Option<&String>,
    parse: impl Fn(&str) -> anyhow::Result<T>,
) -> anyhow::Result<Option<T>> {
    match (flag, file) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(s)) => parse(s).map(Some),
        (None, None) => Ok(None),
    }
}

fn build_spec(args: &SweepArgs) -> anyhow::Result<(SweepSpec, Option<PathBuf>, Format)> {
    let file = match &args.config {
        Some(path) => config::load(path)?,
        None => Default::default(),
    };
    let key = |k: &str| file.get(k);
    let core_err = |e: Error| anyhow!(e);

    let range = pick(args.gamma1_db.clone(), key("gamma1-db"), |s| Ok(s.to_string()))?
        .map(|s| s.parse::<DbRange>().map_err(core_err))
        .transpose()?
        .unwrap_or(DbRange::new(0.0, 30.0, 1.0)?);
    let gamma2 = pick(args.gamma2.clone(), key("gamma2"), |s| Ok(s.to_string()))?
        .map(|s| s.parse::<Gamma2Rule>().map_err(core_err))
        .transpose()?
        .unwrap_or(Gamma2Rule::Equal);
    let mut spec = SweepSpec::new(range, gamma2);

    let gamma0: Vec<String> = if !args.gamma0.is_empty() {
        args.gamma0.clone()
    } else if let Some(s) = key("gamma0") {
        s.split(',').map(str::to_string).collect()
    } else {
        Vec::new()
    };
    if !gamma0.is_empty() {
        spec.gamma0 = gamma0
            .iter()
            .map(|s| s.parse().map_err(core_err))
            .collect::<anyhow::Result<_>>()?;
    }
    if let Some(s) = pick(args.schemes.clone(), key("schemes"), |s| Ok(s.to_string()))? {
        spec.schemes = parse_schemes(&s)?;
    }
    spec.verify = args.verify
        || key("verify")
            .map(|s| {
                s.parse::<bool>()
                    .with_context(|| format!("verify must be true or false, got `{s}`"))
            })
            .transpose()?
            .unwrap_or(false);
    if let Some(n) = pick(args.grid_points, key("grid-points"), |s| {
        s.parse().with_context(|| format!("bad grid-points `{s}`"))
    })? {
        spec.grid_points = n;
    }
    if let Some(n0) = pick(args.noise_power, key("noise-power"), |s| {
        s.parse().with_context(|| format!("bad noise-power `{s}`"))
    })? {
        spec.noise_power = n0;
    }
    spec.validate()?;

    let out = pick(args.out.clone(), key("out"), |s| Ok(PathBuf::from(s)))?;
    let format = pick(args.format, key("format"), |s| {
        Format::from_str(s, true).map_err(|_| anyhow!("format must be csv or plot, got `{s}`"))
    })?
    .unwrap_or(Format::Csv);
    Ok((spec, out, format))
}

/// Applies the output-directory default to `out`.
fn resolve_out(out: Option<PathBuf>, format: Format) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(dir)) => Some(dir.join(match format {
            Format::Csv => "sweep.csv",
            Format::Plot => "sweep.gp",
        })),
        (None, None) => None,
    }
}

fn sweep(args: SweepArgs) -> CmdResult {
    let (spec, out, format) = build_spec(&args).map_err(Failure::usage)?;
    let rows = run_sweep(&spec)?;
    let out = resolve_out(out, format);

    let mut buf = Vec::new();
    match format {
        Format::Csv => emit_csv(&rows, &mut buf)?,
        Format::Plot => {
            let csv_path = match (&args.csv_path, &out) {
                (Some(p), _) => p.clone(),
                (None, Some(p)) => p.with_extension("csv").display().to_string(),
                (None, None) => "sweep.csv".to_string(),
            };
            emit_plot_script(&rows, &csv_path, &mut buf)?;
        }
    }
    match out {
        Some(path) => write_file(&path, &buf)?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> CmdResult {
    std::fs::write(path, bytes)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::io)
}

fn verify(args: VerifyArgs) -> CmdResult {
    let mut out = io::stdout().lock();
    let mut failed = 0;

    let report = run_oracle_suite(args.configs, args.seed, args.grid_points, 1e-12)?;
    for scheme in [Scheme::Df, Scheme::Jdf] {
        let worst = report.worst(scheme);
        let ok = worst <= VERIFY_TOLERANCE;
        failed += usize::from(!ok);
        writeln!(
            out,
            "{} {} oracle over {} configs: worst relative deviation {:e}",
            status(ok),
            scheme.name(),
            args.configs,
            worst
        )?;
    }
    for bad in report.failures(VERIFY_TOLERANCE) {
        writeln!(
            out,
            "  {} at gamma = ({}, {}, {}): closed {} oracle {}",
            bad.scheme.name(),
            g(bad.config.gamma0()),
            g(bad.config.gamma1()),
            g(bad.config.gamma2()),
            bad.closed_form,
            bad.oracle
        )?;
    }

    for gamma1 in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let config = LinkConfig::relay_only(gamma1, gamma1 + gamma1 * gamma1)?;
        let gap = (jdf_max_rate(&config).rate - capacity(gamma1)?).abs();
        let ok = gap <= 1e-9;
        failed += usize::from(!ok);
        writeln!(
            out,
            "{} JDF meets C(gamma1) at gamma2 = gamma1 + gamma1^2, gamma1 = {gamma1}: gap {gap:e}",
            status(ok)
        )?;
    }

    for (a, c) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        for (name, channel) in additive_channels(a, c) {
            let found = search_min_denoiser(&channel)?;
            let ok = found.matches_conjecture;
            failed += usize::from(!ok);
            writeln!(
                out,
                "{} denoiser for {name} on sizes ({a}, {c}): minimal codebook {}",
                status(ok),
                found.codebook_size
            )?;
        }
    }

    if failed > 0 {
        return Err(Failure::verification(anyhow!("{failed} check(s) failed")));
    }
    Ok(())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn simulate(args: SimulateArgs) -> CmdResult {
    let config = args.link.config()?;
    let (transcript, analytic) = match args.scheme {
        SimScheme::Df => {
            if args.lambda.is_some() {
                return Err(Failure::usage(anyhow!("--lambda applies to --scheme jdf")));
            }
            let theta = args.theta.unwrap_or_else(|| df_theta_star(&config));
            (
                run_df(&config, args.n_symbols, theta, args.seed)?,
                df_rate(&config, theta)?.rate,
            )
        }
        SimScheme::Jdf => {
            if args.theta.is_some() {
                return Err(Failure::usage(anyhow!("--theta applies to --scheme df")));
            }
            let config = config.without_direct_link();
            let lambda = args
                .lambda
                .unwrap_or_else(|| jdf_max_rate(&config).param.unwrap_or(1.0));
            (
                run_jdf(&config, args.n_symbols, lambda, args.seed)?,
                jdf_rate(&config, lambda)?.rate,
            )
        }
    };

    if let Some(path) = &args.transcript {
        write_file(path, transcript.to_text().as_bytes())?;
    }
    let mut out = io::stdout().lock();
    print_config(&mut out, &config)?;
    if args.transcript.is_none() {
        write!(out, "{}", transcript.to_text())?;
    }
    writeln!(
        out,
        "symbols {}, delivered {} + {} bits, realized rate {}, analytic rate {}, {}, bit errors {}",
        transcript.total_symbols,
        transcript.delivered_ac,
        transcript.delivered_ca,
        g(transcript.realized_rate),
        g(analytic),
        transcript.path,
        transcript.bit_errors
    )?;
    if !transcript.success {
        return Err(Failure::verification(anyhow!(
            "{} bits decoded in error",
            transcript.bit_errors
        )));
    }
    Ok(())
}

//! Command-line front end.
//!
//! Exit status: 0 on success (whatever the test verdict), 2 for usage errors,
//! 3 for data errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::distribution::{DistributionSpec, Law};
use crate::error::Error;
use crate::estimator::{default_window, spacing_terms, EstimatorConfig, TiePolicy};
use crate::measures::{
    extropy, record_varextropy_exponential, varextropy_closed, varextropy_quadrature,
    varextropy_quantile_form,
};
use crate::sample::Sample;
use crate::simulation::{Simulator, TableKind, DEFAULT_REPS};
use crate::uniformity::{run_test_with, Decision, TestReport, DEFAULT_ALPHA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

const DEFAULT_N_LIST: &str = "10,20,30,40,50,80,100";
const DEFAULT_M_LIST: &str = "2,3,4,5,9,14,19,24,30,39,49";

#[derive(Debug, Parser)]
#[command(
    name = "varextropy",
    version,
    about = "Varextropy measures, estimation and uniformity testing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate varextropy from a data file with the m-spacing estimator.
    Estimate(EstimateArgs),
    /// Test uniformity on [0, 1] against a simulated critical value.
    Test(TestArgs),
    /// Simulate a table of critical values (CSV).
    CriticalTable(TableArgs),
    /// Simulate a table of power against an alternative (CSV).
    PowerTable(PowerTableArgs),
    /// Extropy and varextropy of a parametric law.
    Measure(MeasureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Whitespace-separated numbers; lines starting with '#' are ignored.
    #[arg(long, short = 'i')]
    pub input: PathBuf,
    /// Window size m (default: round(sqrt(n)), clamped to [1, n/2]).
    #[arg(long = "window", short = 'm')]
    pub window: Option<usize>,
    /// Break ties by adding k*EPS to the k-th order statistic (default EPS: 1e-10 x range).
    #[arg(long, num_args = 0..=1, default_missing_value = "auto", value_name = "EPS")]
    pub jitter: Option<String>,
    /// Min-max rescale the data onto [0, 1] before use.
    #[arg(long)]
    pub rescale: bool,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub data: DataArgs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the simulation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_N_LIST)]
    pub n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_M_LIST)]
    pub m_list: Vec<usize>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct PowerTableArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Alternative law, e.g. "beta:1,2".
    #[arg(long, default_value = "beta:1,2")]
    pub alt: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureMethod {
    Closed,
    Quadrature,
    Quantile,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// uniform | uniform:a,b | exponential:rate | normal:mean,variance | beta:a,b
    pub dist: String,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MeasureMethod,
    /// Also report the varextropy of the n-th upper record (exponential only).
    #[arg(long)]
    pub n_record: Option<u32>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDistribution(_)
            | Error::NoQuantileForm(_)
            | Error::InvalidWindow { .. }
            | Error::InvalidJitter(_)
            | Error::InvalidAlpha(_)
            | Error::TooFewReplications { .. }
            | Error::InvalidGrid(_)
            | Error::ZeroRecordIndex => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

/// Parses whitespace- (or comma-) separated numbers. Lines whose first
/// non-blank character is `#` are skipped. Errors carry 1-based line numbers.
pub fn parse_observations(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for token in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            match token.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                _ => {
                    return Err(CliError::Data(format!(
                        "line {}: {token:?} is not a finite number",
                        lineno + 1
                    )))
                }
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Data("input contains no observations".into()));
    }
    Ok(values)
}

pub fn read_observations(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_observations(&text).map_err(|e| match e {
        CliError::Data(m) => CliError::Data(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("exponent");
    if exponent < -4 || exponent >= digits as i32 {
        format!("{}e{exponent}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn load_sample(data: &DataArgs, err: &mut dyn Write) -> Result<Sample, CliError> {
    let sample = Sample::new(read_observations(&data.input)?)?;
    if data.rescale {
        writeln!(
            err,
            "warning: rescaling data from [{}, {}] onto [0, 1]; min and max become exactly 0 and 1",
            format_sig(sample.min(), 6),
            format_sig(sample.max(), 6)
        )
        .ok();
        return Ok(sample.rescaled_to_unit());
    }
    Ok(sample)
}

fn estimator_config(data: &DataArgs, n: usize) -> Result<EstimatorConfig, CliError> {
    let m = data.window.unwrap_or_else(|| default_window(n));
    let tie_policy = match data.jitter.as_deref() {
        None => TiePolicy::Error,
        Some("auto") => TiePolicy::Jitter(None),
        Some(eps) => {
            TiePolicy::Jitter(Some(eps.parse().map_err(|_| {
                CliError::Usage(format!("invalid jitter epsilon {eps:?}"))
            })?))
        }
    };
    Ok(EstimatorConfig::new(m).tie_policy(tie_policy))
}

fn simulator(run: &RunArgs) -> Result<Simulator, CliError> {
    let sim = Simulator::new(run.seed, run.reps)?;
    Ok(match run.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => sim.with_threads(t),
        None => sim,
    })
}

fn cmd_estimate(args: &EstimateArgs, err: &mut dyn Write) -> Result<String, CliError> {
    let sample = load_sample(&args.data, err)?;
    let config = estimator_config(&args.data, sample.len())?;
    let statistic = spacing_terms(&sample, &config)?.statistic();
    let (n, m, value) = (sample.len(), config.m, format_sig(statistic, 6));
    Ok(match args.data.format {
        Format::Plain => format!("n = {n}\nm = {m}\ndelta_hat = {value}\n"),
        Format::Csv => format!("n,m,delta_hat\n{n},{m},{value}\n"),
    })
}

/// Renders a report: a verdict sentence followed by `key=value` lines.
pub fn render_report_plain(r: &TestReport) -> String {
    let (cmp, verdict) = match r.decision {
        Decision::Reject => (">=", "reject uniformity"),
        Decision::FailToReject => ("<", "fail to reject uniformity"),
    };
    let mut out = format!(
        "Varextropy uniformity test: statistic {} {cmp} critical value {} at alpha = {}; {verdict}.\n\n",
        format_sig(r.statistic, 6),
        format_sig(r.critical_value, 6),
        r.alpha
    );
    for (key, value) in report_fields(r) {
        writeln!(out, "{key}={value}").unwrap();
    }
    out
}

pub fn render_report_csv(r: &TestReport) -> String {
    let (keys, values): (Vec<_>, Vec<_>) = report_fields(r).into_iter().unzip();
    format!("{}\n{}\n", keys.join(","), values.join(","))
}

fn report_fields(r: &TestReport) -> Vec<(&'static str, String)> {
    vec![
        ("statistic", format_sig(r.statistic, 6)),
        ("critical_value", format_sig(r.critical_value, 6)),
        ("alpha", r.alpha.to_string()),
        ("n", r.n.to_string()),
        ("m", r.m.to_string()),
        ("reps", r.reps.to_string()),
        ("seed", r.seed.to_string()),
        ("decision", r.decision.as_str().to_string()),
    ]
}

fn cmd_test(args: &TestArgs, err: &mut dyn Write) -> Result<String, CliError> {
    // Flag problems are reported before any data problem.
    let simulator = simulator(&args.run)?;
    if !(args.run.alpha > 0.0 && args.run.alpha < 1.0) {
        return Err(Error::InvalidAlpha(args.run.alpha).into());
    }
    let sample = load_sample(&args.data, err)?;
    let config = estimator_config(&args.data, sample.len())?;
    let report = run_test_with(&sample, &config, args.run.alpha, &simulator)?;
    Ok(match args.data.format {
        Format::Plain => render_report_plain(&report),
        Format::Csv => render_report_csv(&report),
    })
}

fn cmd_table(
    table: &TableArgs,
    kind: TableKind,
    alt: Option<&DistributionSpec>,
) -> Result<String, CliError> {
    if table.n_list.is_empty() || table.m_list.is_empty() {
        return Err(CliError::Usage(
            "--n-list and --m-list must be non-empty".into(),
        ));
    }
    let sim = simulator(&table.run)?;
    let t = sim.build_table(kind, &table.n_list, &table.m_list, table.run.alpha, alt)?;
    Ok(t.to_csv())
}

fn cmd_measure(args: &MeasureArgs) -> Result<String, CliError> {
    let dist: DistributionSpec = args.dist.parse()?;
    let j = extropy(&dist)?;
    let vj = match args.method {
        MeasureMethod::Closed => varextropy_closed(&dist)?,
        MeasureMethod::Quadrature => varextropy_quadrature(&dist)?,
        MeasureMethod::Quantile => varextropy_quantile_form(&dist)?,
    };
    let mut fields = vec![
        ("distribution", dist.to_string()),
        ("extropy", format_sig(j.value, 6)),
        ("extropy_method", j.method.as_str().to_string()),
        ("varextropy", format_sig(vj.value, 6)),
        ("varextropy_method", vj.method.as_str().to_string()),
    ];
    if let Some(k) = args.n_record {
        let Law::Exponential { rate } = dist.law() else {
            return Err(CliError::Usage(
                "--n-record is only available for exponential laws".into(),
            ));
        };
        fields.push(("record_index", k.to_string()));
        fields.push((
            "record_varextropy",
            format_sig(record_varextropy_exponential(k, rate)?.value, 6),
        ));
    }
    Ok(match args.format {
        Format::Plain => fields.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
        Format::Csv => {
            let (keys, values): (Vec<_>, Vec<_>) = fields.into_iter().unzip();
            format!("{}\n{}\n", keys.join(","), values.join(","))
        }
    })
}

fn dispatch(cli: &Cli, err: &mut dyn Write) -> Result<String, CliError> {
    match &cli.command {
        Command::Estimate(args) => cmd_estimate(args, err),
        Command::Test(args) => cmd_test(args, err),
        Command::CriticalTable(args) => cmd_table(args, TableKind::Critical, None),
        Command::PowerTable(args) => {
            let alt: DistributionSpec = args.alt.parse()?;
            cmd_table(&args.table, TableKind::Power, Some(&alt))
        }
        Command::Measure(args) => cmd_measure(args),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                write!(err, "{rendered}").ok();
            } else {
                write!(out, "{rendered}").ok();
            }
            return code;
        }
    };
    match dispatch(&cli, err) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DATA;
            }
            EXIT_OK
        }
        Err(e) => {
            writeln!(err, "error: {}", e.message()).ok();
            e.exit_code()
        }
    }
}

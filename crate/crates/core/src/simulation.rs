//! Seeded Monte Carlo engine for critical values and power.
//!
//! Every replicate draws from its own ChaCha8 substream, keyed by the run seed
//! and a stream id derived from `(purpose, n, m, replicate)`. Results are gathered
//! in replicate order, so the output does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::distribution::{DistributionSpec, Law};
use crate::error::{Error, Result};
use crate::estimator::spacing_statistic;
use crate::sample::Sample;

pub const DEFAULT_REPS: usize = 10_000;
pub const MIN_REPS: usize = 1_000;

/// A reproducible random stream: identical `(seed, stream_id)` always yields the
/// same variates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// What a replicate's draws are used for; keeps null and alternative draws apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPurpose {
    Null,
    Alternative,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream id for one replicate of the `(n, m)` cell. Each cell gets its own
/// draws, so table entries are independent estimates.
pub fn stream_id(purpose: StreamPurpose, n: usize, m: usize, replicate: usize) -> u64 {
    let tag = match purpose {
        StreamPurpose::Null => 0x6e75_6c6c,
        StreamPurpose::Alternative => 0x616c_7421,
    };
    [n as u64, m as u64, replicate as u64]
        .into_iter()
        .fold(splitmix64(tag), |acc, k| splitmix64(acc ^ k))
}

/// `n` variates from the open interval `(0, 1)`.
pub fn sample_uniform(n: usize, rng: &RngSpec) -> Sample {
    let mut r = rng.rng();
    let mut v: Vec<f64> = (0..n).map(|_| r.sample(Open01)).collect();
    v.sort_by(f64::total_cmp);
    Sample::from_sorted_unchecked(v)
}

/// Inverse cdf of Beta(1, b): `1 − (1 − u)^{1/b}`.
pub fn beta_one_inverse_cdf(b: f64, u: f64) -> f64 {
    -((1.0 / b) * (-u).ln_1p()).exp_m1()
}

/// `n` Beta(a, b) variates. Beta(1, b) is drawn by inversion; other shapes via
/// `G_a / (G_a + G_b)` with independent gamma variates.
pub fn sample_beta(a: f64, b: f64, n: usize, rng: &RngSpec) -> Result<Sample> {
    draw(&DistributionSpec::beta(a, b)?, n, rng)
}

/// `n` variates from any supported law.
pub fn draw(dist: &DistributionSpec, n: usize, rng: &RngSpec) -> Result<Sample> {
    let mut r = rng.rng();
    let mut v = Vec::with_capacity(n);
    match dist.law() {
        Law::Uniform { low, high } => {
            v.extend((0..n).map(|_| low + (high - low) * r.sample::<f64, _>(Open01)));
        }
        Law::Exponential { rate } => {
            v.extend((0..n).map(|_| -(r.sample::<f64, _>(Open01)).ln() / rate));
        }
        Law::Normal { mean, variance } => {
            let normal = Normal::new(mean, variance.sqrt())
                .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            v.extend((0..n).map(|_| normal.sample(&mut r)));
        }
        Law::Beta { a: 1.0, b } => {
            v.extend((0..n).map(|_| beta_one_inverse_cdf(b, r.sample(Open01))));
        }
        Law::Beta { a, b } => {
            let ga = Gamma::new(a, 1.0).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            let gb = Gamma::new(b, 1.0).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            v.extend((0..n).map(|_| {
                let x = ga.sample(&mut r);
                let y = gb.sample(&mut r);
                x / (x + y)
            }));
        }
    }
    Sample::new(v)
}

/// The `level` empirical quantile as the `ceil(level·N)`-th order statistic.
pub fn order_statistic_quantile(values: &[f64], level: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    // The guard keeps e.g. 0.95 × 10000 from rounding up to 9501.
    let k = ((level * n as f64) - 1e-9).ceil() as usize;
    sorted[k.clamp(1, n) - 1]
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

fn check_window(n: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewObservations { n, required: 2 });
    }
    if m == 0 || m > n / 2 {
        return Err(Error::InvalidWindow { m, n });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Critical,
    Power,
}

impl TableKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TableKind::Critical => "critical",
            TableKind::Power => "power",
        }
    }
}

/// A grid of simulated values keyed by `(n, m)`; invalid pairs are absent.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTable {
    pub kind: TableKind,
    pub alpha: f64,
    pub reps: usize,
    pub seed: u64,
    pub alternative: Option<DistributionSpec>,
    pub n_list: Vec<usize>,
    pub m_list: Vec<usize>,
    pub cells: BTreeMap<(usize, usize), f64>,
}

impl SimulationTable {
    pub fn get(&self, n: usize, m: usize) -> Option<f64> {
        self.cells.get(&(n, m)).copied()
    }

    /// CSV with a `m\n` corner header, one row per `m`, one column per `n`,
    /// four decimals, blank cells where `m > n/2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m\\n");
        for n in &self.n_list {
            write!(out, ",{n}").unwrap();
        }
        out.push('\n');
        for &m in &self.m_list {
            write!(out, "{m}").unwrap();
            for &n in &self.n_list {
                out.push(',');
                if let Some(v) = self.get(n, m) {
                    write!(out, "{v:.4}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses the layout written by [`SimulationTable::to_csv`]. Run metadata is
    /// not part of the CSV and is supplied by the caller.
    pub fn from_csv(
        text: &str,
        kind: TableKind,
        alpha: f64,
        reps: usize,
        seed: u64,
        alternative: Option<DistributionSpec>,
    ) -> Result<Self> {
        let malformed = |msg: String| Error::MalformedTable(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| malformed("empty input".into()))?;
        let mut head = header.split(',');
        if head.next().map(str::trim) != Some("m\\n") {
            return Err(malformed(format!("unexpected header {header:?}")));
        }
        let n_list = head
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| malformed(format!("bad n {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m_list = Vec::new();
        let mut cells = BTreeMap::new();
        for (row, line) in lines.enumerate() {
            let mut fields = line.split(',');
            let m = fields
                .next()
                .and_then(|t| t.trim().parse::<usize>().ok())
                .ok_or_else(|| malformed(format!("bad m in row {}", row + 1)))?;
            m_list.push(m);
            let values: Vec<&str> = fields.collect();
            if values.len() != n_list.len() {
                return Err(malformed(format!(
                    "row {} has {} cells",
                    row + 1,
                    values.len()
                )));
            }
            for (&n, field) in n_list.iter().zip(values) {
                let field = field.trim();
                if field.is_empty() {
                    continue;
                }
                let v = field
                    .parse::<f64>()
                    .map_err(|_| malformed(format!("bad value {field:?}")))?;
                cells.insert((n, m), v);
            }
        }
        Ok(Self {
            kind,
            alpha,
            reps,
            seed,
            alternative,
            n_list,
            m_list,
            cells,
        })
    }
}

/// Monte Carlo runner: a seed, a replication count and an optional dedicated
/// thread pool (the global rayon pool otherwise).
#[derive(Clone)]
pub struct Simulator {
    seed: u64,
    reps: usize,
    pool: Option<Arc<ThreadPool>>,
}

impl std::fmt::Debug for Simulator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Simulator")
            .field("seed", &self.seed)
            .field("reps", &self.reps)
            .field(
                "threads",
                &self.pool.as_ref().map(|p| p.current_num_threads()),
            )
            .finish()
    }
}

impl Simulator {
    pub fn new(seed: u64, reps: usize) -> Result<Self> {
        if reps < MIN_REPS {
            return Err(Error::TooFewReplications {
                reps,
                min: MIN_REPS,
            });
        }
        Ok(Self {
            seed,
            reps,
            pool: None,
        })
    }

    /// Runs replicates on a private pool of `threads` workers.
    pub fn with_threads(mut self, threads: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("failed to build thread pool");
        self.pool = Some(Arc::new(pool));
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn reps(&self) -> usize {
        self.reps
    }

    fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(job),
            None => job(),
        }
    }

    /// `Δ̂` at `(n, m)` for each replicate, in replicate order.
    fn replicate_statistics(
        &self,
        purpose: StreamPurpose,
        n: usize,
        m: usize,
        law: &DistributionSpec,
    ) -> Result<Vec<f64>> {
        check_window(n, m)?;
        self.install(|| {
            (0..self.reps)
                .into_par_iter()
                .map(|r| {
                    let rng = RngSpec::new(self.seed, stream_id(purpose, n, m, r));
                    let sample = draw(law, n, &rng)?;
                    spacing_statistic(sample.order_statistics(), m)
                })
                .collect()
        })
    }

    /// Null distribution of `Δ̂` at `(n, m)`, one value per replicate.
    pub fn null_statistics(&self, n: usize, m: usize) -> Result<Vec<f64>> {
        let uniform = DistributionSpec::standard_uniform();
        self.replicate_statistics(StreamPurpose::Null, n, m, &uniform)
    }

    /// Critical value `C_{1−α}` for `(n, m)`.
    pub fn critical_value(&self, n: usize, m: usize, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        let stats = self.null_statistics(n, m)?;
        Ok(order_statistic_quantile(&stats, 1.0 - alpha))
    }

    /// Rejection rate against `alternative`, with the critical value simulated
    /// from this run's null substreams.
    pub fn power(
        &self,
        n: usize,
        m: usize,
        alpha: f64,
        alternative: &DistributionSpec,
    ) -> Result<f64> {
        let critical = self.critical_value(n, m, alpha)?;
        self.power_at(n, m, critical, alternative)
    }

    /// Rejection rate against `alternative` for a supplied critical value.
    pub fn power_at(
        &self,
        n: usize,
        m: usize,
        critical: f64,
        alternative: &DistributionSpec,
    ) -> Result<f64> {
        let stats = self.replicate_statistics(StreamPurpose::Alternative, n, m, alternative)?;
        Ok(rejection_rate(&stats, critical))
    }

    /// Fills every valid `(n, m)` cell of the grid. `alternative` is required for
    /// power tables.
    pub fn build_table(
        &self,
        kind: TableKind,
        n_list: &[usize],
        m_list: &[usize],
        alpha: f64,
        alternative: Option<&DistributionSpec>,
    ) -> Result<SimulationTable> {
        check_alpha(alpha)?;
        if n_list.is_empty() || m_list.is_empty() {
            return Err(Error::InvalidGrid("n and m lists must be non-empty".into()));
        }
        let alternative = match (kind, alternative) {
            (TableKind::Power, None) => {
                return Err(Error::InvalidGrid(
                    "power table needs an alternative".into(),
                ))
            }
            (TableKind::Power, Some(alt)) => Some(*alt),
            (TableKind::Critical, _) => None,
        };
        let mut cells = BTreeMap::new();
        for &n in n_list {
            for &m in m_list.iter().filter(|&&m| m >= 1 && m <= n / 2) {
                let value = match &alternative {
                    None => self.critical_value(n, m, alpha)?,
                    Some(alt) => self.power(n, m, alpha, alt)?,
                };
                cells.insert((n, m), value);
            }
        }
        Ok(SimulationTable {
            kind,
            alpha,
            reps: self.reps,
            seed: self.seed,
            alternative,
            n_list: n_list.to_vec(),
            m_list: m_list.to_vec(),
            cells,
        })
    }
}

fn rejection_rate(stats: &[f64], critical: f64) -> f64 {
    stats.iter().filter(|&&s| s >= critical).count() as f64 / stats.len() as f64
}

/// Critical value `C_{1−α}(n, m)` from `reps` uniform samples.
pub fn critical_value(n: usize, m: usize, alpha: f64, reps: usize, seed: u64) -> Result<f64> {
    Simulator::new(seed, reps)?.critical_value(n, m, alpha)
}

/// Power against `alternative` with a critical value simulated from the same seed.
pub fn power(
    n: usize,
    m: usize,
    alpha: f64,
    alternative: &DistributionSpec,
    reps: usize,
    seed: u64,
) -> Result<f64> {
    Simulator::new(seed, reps)?.power(n, m, alpha, alternative)
}

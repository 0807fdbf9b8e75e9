//! Sampling campaigns: draw inputs, run one deterministic solve per point,
//! fit the surrogate and summarize.
//!
//! Sample runs execute on a rayon pool; results are gathered in sample
//! order before any reduction, so the outcome does not depend on the thread
//! count or schedule.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DimlessConfig;
use crate::solver1d::{Grid1D, Solver1D, Solver1DOptions, SnapshotPlan};
use crate::solver2d::{Grid2D, Solver2D, Solver2DOptions};
use crate::uq::legendre::{basis_size, LegendreBasis};
use crate::uq::sampling::{sample_inputs, RandomInputSpec};
use crate::uq::stats::{Histogram, Moments, DEFAULT_BINS};
use crate::uq::surrogate::{fit_surrogate, Archive, Channel, FitMethod, GpcSurrogate};

/// Which front coordinate is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseKind {
    /// `S = S* L(τ)`
    #[default]
    Physical,
    /// `S*` on the reference grid.
    Reference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignOptions {
    /// Overrides the `c N²` rule.
    pub samples: Option<usize>,
    /// `c` in `M = c N²` (N = basis size).
    pub sample_factor: f64,
    pub degree: usize,
    pub seed: u64,
    /// `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub method: FitMethod,
    pub bins: usize,
    pub response: ResponseKind,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            samples: None,
            sample_factor: 2.0,
            degree: 4,
            seed: 0,
            threads: None,
            method: FitMethod::Cholesky,
            bins: DEFAULT_BINS,
            response: ResponseKind::Physical,
        }
    }
}

impl CampaignOptions {
    pub fn sample_count(&self, basis: usize) -> usize {
        self.samples
            .unwrap_or_else(|| (self.sample_factor * (basis * basis) as f64).ceil() as usize)
    }
}

/// Surrogate and sample statistics on one channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelStats {
    pub tau: f64,
    pub y: Option<f64>,
    /// `c_0`
    pub mean: f64,
    /// `sqrt(Σ_{n≥1} c_n²)`
    pub std: f64,
    pub sample_mean: f64,
    pub sample_std: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub surrogate: GpcSurrogate,
    pub statistics: Vec<ChannelStats>,
    pub histograms: Vec<Histogram>,
    pub samples: usize,
    pub seed: u64,
    /// Largest probability mass dropped by truncating normal inputs.
    pub truncated_mass: f64,
}

impl Campaign {
    pub fn stats_at(&self, tau: f64, y: Option<f64>) -> Result<&ChannelStats> {
        Ok(&self.statistics[self.surrogate.channel_index(tau, y)?])
    }
}

/// Statistics and histograms for every channel of a fitted surrogate.
pub fn summarize(surrogate: &GpcSurrogate, bins: usize) -> (Vec<ChannelStats>, Vec<Histogram>) {
    surrogate
        .channels
        .iter()
        .enumerate()
        .map(|(k, ch)| {
            let column = surrogate.archive.column(k);
            let m = Moments::from_samples(&column);
            let stats = ChannelStats {
                tau: ch.tau,
                y: ch.y,
                mean: surrogate.mean(k),
                std: surrogate.std(k),
                sample_mean: m.mean,
                sample_std: m.std,
                skewness: m.skewness,
                kurtosis: m.kurtosis,
            };
            (stats, Histogram::new(&column, bins))
        })
        .unzip()
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs `solve` on every point and fails with the lowest failing index.
fn run_samples(
    points: &[Vec<f64>],
    threads: Option<usize>,
    solve: impl Fn(&[f64]) -> Result<Vec<f64>> + Sync,
) -> Result<Vec<Vec<f64>>> {
    let results: Vec<Result<Vec<f64>>> = in_pool(threads, || points.par_iter().map(|p| solve(p)).collect())?;
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| r.is_err()).map(|(i, _)| i).collect();
    results
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|e| Error::Sample { index, failed: failed.clone(), source: Box::new(e) }))
        .collect()
}

fn finish(spec: &RandomInputSpec, points: Vec<Vec<f64>>, responses: Vec<Vec<f64>>, channels: Vec<Channel>, opts: &CampaignOptions) -> Result<Campaign> {
    let supports = spec.parameters.iter().map(|p| p.distribution.support()).collect();
    let basis = LegendreBasis::new(opts.degree, supports)?;
    let samples = points.len();
    let surrogate = fit_surrogate(Archive { points, responses }, channels, basis, opts.method)?;
    let (statistics, histograms) = summarize(&surrogate, opts.bins);
    Ok(Campaign { surrogate, statistics, histograms, samples, seed: opts.seed, truncated_mass: spec.truncated_mass() })
}

/// Draws the campaign's sample points.
pub fn campaign_points(spec: &RandomInputSpec, opts: &CampaignOptions) -> Result<Vec<Vec<f64>>> {
    let n = basis_size(spec.dims(), opts.degree);
    sample_inputs(spec, opts.sample_count(n), n, opts.seed)
}

fn nearest(taus: &[f64], tau: f64) -> usize {
    (0..taus.len())
        .min_by(|&a, &b| (taus[a] - tau).abs().total_cmp(&(taus[b] - tau).abs()))
        .unwrap_or(0)
}

/// 1D campaign with the front recorded at `times`.
pub fn run_uq_1d(
    spec: &RandomInputSpec,
    base: &DimlessConfig,
    grid: Grid1D,
    solver: &Solver1DOptions,
    times: &[f64],
    opts: &CampaignOptions,
) -> Result<Campaign> {
    if times.is_empty() {
        return Err(Error::validation("times", "at least one response time is required"));
    }
    let points = campaign_points(spec, opts)?;
    let solver = Solver1DOptions {
        snapshots: Some(SnapshotPlan::AtTimes(times.to_vec())),
        keep_fields: false,
        ..solver.clone()
    };
    let responses = run_samples(&points, opts.threads, |p| {
        let cfg = spec.bind(base, p)?;
        let run = Solver1D::new(cfg, grid, solver.clone())?.run()?;
        let tr = &run.trace;
        Ok(times
            .iter()
            .map(|&t| {
                let i = nearest(&tr.taus, t);
                match opts.response {
                    ResponseKind::Physical => tr.s_phys[i],
                    ResponseKind::Reference => tr.s_star[i],
                }
            })
            .collect())
    })?;
    let channels = times.iter().map(|&tau| Channel { tau, y: None }).collect();
    finish(spec, points, responses, channels, opts)
}

/// 2D campaign; one channel per `(time, y_j)` pair, time-major.
pub fn run_uq_2d(
    spec: &RandomInputSpec,
    base: &DimlessConfig,
    grid: Grid2D,
    solver: &Solver2DOptions,
    times: &[f64],
    opts: &CampaignOptions,
) -> Result<Campaign> {
    if times.is_empty() {
        return Err(Error::validation("times", "at least one response time is required"));
    }
    let points = campaign_points(spec, opts)?;
    let solver = Solver2DOptions {
        snapshots: Some(SnapshotPlan::AtTimes(times.to_vec())),
        keep_fields: false,
        ..solver.clone()
    };
    let responses = run_samples(&points, opts.threads, |p| {
        let cfg = spec.bind(base, p)?;
        let run = Solver2D::new(cfg, grid, solver.clone())?.run()?;
        let curve = &run.curve;
        let mut out = Vec::with_capacity(times.len() * grid.ny);
        for &t in times {
            let k = nearest(&curve.taus, t);
            match opts.response {
                ResponseKind::Physical => out.extend(curve.s_phys(k)),
                ResponseKind::Reference => out.extend_from_slice(&curve.s_star[k]),
            }
        }
        Ok(out)
    })?;
    let ys = grid.ys();
    let channels = times
        .iter()
        .flat_map(|&tau| ys.iter().map(move |&y| Channel { tau, y: Some(y) }))
        .collect();
    finish(spec, points, responses, channels, opts)
}

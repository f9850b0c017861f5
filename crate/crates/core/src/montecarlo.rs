//! Reproducible Monte Carlo runs over sampled graphs.
//!
//! Trial `t` of a run with master seed `s` samples its graph from
//! `s.derive(t)`, so every trial is a pure function of `(params, s, t)`.
//! Per-trial results are reduced through integer accumulators (groupie
//! counts, their squares, indicator products); integer addition is exact, so
//! the summary does not depend on how trials were split across threads.

use std::ops::Range;

use rayon::prelude::*;

use crate::asymptotics::{predicted_limit, LimitPrediction};
use crate::error::{param, Result};
use crate::generate::{EdgeSampler, ModelParams, RngSeed};
use crate::groupie::groupie_from_counts;

/// Normal quantile used for the 95% interval.
pub const Z95: f64 = 1.96;

/// Graphs expected to have more edges than this are streamed twice instead
/// of buffering their edge list.
const EDGE_BUFFER_LIMIT: f64 = (1u64 << 23) as f64;

/// What one sampled graph contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Number of groupies `N`.
    pub groupies: u64,
    /// Groupie indicators of vertices 0 and 1.
    pub first_pair: (bool, bool),
    pub has_isolated: bool,
    pub edge_count: u64,
}

/// Samples one graph and classifies its vertices without building a
/// [`crate::Graph`].
pub fn simulate_trial(params: &ModelParams, seed: RngSeed) -> Result<TrialOutcome> {
    Ok(run_one(&EdgeSampler::new(*params, seed)?))
}

fn run_one(sampler: &EdgeSampler) -> TrialOutcome {
    let params = sampler.params();
    let n = params.vertex_count();
    let mut degree = vec![0u32; n];
    let mut r = vec![0u64; n];
    let mut e = 0u64;

    if params.pair_count() as f64 * params.p() <= EDGE_BUFFER_LIMIT {
        let mut edges: Vec<(u32, u32)> = Vec::new();
        sampler.for_each_edge(|u, v| edges.push((u as u32, v as u32)));
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        for &(u, v) in &edges {
            r[u as usize] += degree[v as usize] as u64;
            r[v as usize] += degree[u as usize] as u64;
        }
        e = edges.len() as u64;
    } else {
        sampler.for_each_edge(|u, v| {
            degree[u] += 1;
            degree[v] += 1;
            e += 1;
        });
        sampler.for_each_edge(|u, v| {
            r[u] += degree[v] as u64;
            r[v] += degree[u] as u64;
        });
    }

    let flag = |v: usize| groupie_from_counts(n, e, degree[v] as u64, r[v]);
    let groupies = (0..n).filter(|&v| flag(v)).count() as u64;
    TrialOutcome {
        groupies,
        first_pair: (flag(0), n > 1 && flag(1)),
        has_isolated: degree.contains(&0),
        edge_count: e,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOptions {
    /// Run trials on the rayon pool of the caller.
    pub parallel: bool,
    /// Keep every per-trial proportion in the estimate.
    pub keep_trials: bool,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self { parallel: true, keep_trials: false }
    }
}

/// Runs trials `range` of a run with master seed `seed`, in trial order.
pub fn run_trial_range(
    params: &ModelParams,
    range: Range<u64>,
    seed: RngSeed,
    parallel: bool,
) -> Result<Vec<TrialOutcome>> {
    params.validate()?;
    let one = |t: u64| run_one(&EdgeSampler::new(*params, seed.derive(t)).expect("validated"));
    Ok(if parallel {
        range.into_par_iter().map(one).collect()
    } else {
        range.map(one).collect()
    })
}

/// Exact sufficient statistics of the groupie counts of a set of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialAccumulator {
    pub vertices: usize,
    pub trials: u64,
    pub sum: u128,
    pub sum_sq: u128,
}

impl TrialAccumulator {
    pub fn new(vertices: usize) -> Self {
        Self { vertices, trials: 0, sum: 0, sum_sq: 0 }
    }

    pub fn push(&mut self, groupies: u64) {
        self.trials += 1;
        self.sum += groupies as u128;
        self.sum_sq += groupies as u128 * groupies as u128;
    }

    pub fn from_outcomes(vertices: usize, outcomes: &[TrialOutcome]) -> Self {
        let mut acc = Self::new(vertices);
        for o in outcomes {
            acc.push(o.groupies);
        }
        acc
    }

    /// Combines two disjoint sets of trials on the same vertex count.
    pub fn merge(self, other: Self) -> Result<Self> {
        if self.vertices != other.vertices {
            return param("cannot merge runs on different vertex counts");
        }
        Ok(Self {
            vertices: self.vertices,
            trials: self.trials + other.trials,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        })
    }

    /// Mean groupie proportion.
    pub fn mean(&self) -> f64 {
        self.sum as f64 / (self.trials as f64 * self.vertices as f64)
    }

    /// Sample standard deviation of the per-trial proportion (0 for one trial).
    pub fn sample_std(&self) -> f64 {
        if self.trials < 2 {
            return 0.0;
        }
        let t = self.trials as u128;
        let spread = t * self.sum_sq - self.sum * self.sum;
        let var = spread as f64 / (t * (t - 1)) as f64;
        var.sqrt() / self.vertices as f64
    }
}

/// Summary of the groupie proportion `N/n` over a run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationEstimate {
    pub params: ModelParams,
    pub trials: u64,
    pub seed: RngSeed,
    pub mean: f64,
    pub sample_std: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    pub per_trial: Option<Vec<f64>>,
}

impl SimulationEstimate {
    pub fn from_accumulator(params: ModelParams, seed: RngSeed, acc: &TrialAccumulator) -> Self {
        let mean = acc.mean();
        let sample_std = acc.sample_std();
        let stderr = sample_std / (acc.trials as f64).sqrt();
        Self {
            params,
            trials: acc.trials,
            seed,
            mean,
            sample_std,
            stderr,
            ci95: (mean - Z95 * stderr, mean + Z95 * stderr),
            per_trial: None,
        }
    }
}

pub fn run_trials(params: &ModelParams, trials: u64, seed: RngSeed) -> Result<SimulationEstimate> {
    run_trials_with(params, trials, seed, TrialOptions::default())
}

pub fn run_trials_with(
    params: &ModelParams,
    trials: u64,
    seed: RngSeed,
    options: TrialOptions,
) -> Result<SimulationEstimate> {
    if trials == 0 {
        return param("need at least one trial");
    }
    let outcomes = run_trial_range(params, 0..trials, seed, options.parallel)?;
    let n = params.vertex_count();
    let acc = TrialAccumulator::from_outcomes(n, &outcomes);
    let mut estimate = SimulationEstimate::from_accumulator(*params, seed, &acc);
    if options.keep_trials {
        estimate.per_trial = Some(outcomes.iter().map(|o| o.groupies as f64 / n as f64).collect());
    }
    Ok(estimate)
}

/// Sample covariance of the groupie indicators of vertices 0 and 1 across trials.
pub fn estimate_pair_covariance(params: &ModelParams, trials: u64, seed: RngSeed) -> Result<f64> {
    estimate_pair_covariance_with(params, trials, seed, true)
}

pub fn estimate_pair_covariance_with(
    params: &ModelParams,
    trials: u64,
    seed: RngSeed,
    parallel: bool,
) -> Result<f64> {
    if params.vertex_count() < 2 {
        return param("pair covariance needs at least two vertices");
    }
    if trials < 2 {
        return param("pair covariance needs at least two trials");
    }
    let outcomes = run_trial_range(params, 0..trials, seed, parallel)?;
    let (mut s0, mut s1, mut s01) = (0i128, 0i128, 0i128);
    for o in &outcomes {
        let (x0, x1) = (o.first_pair.0 as i128, o.first_pair.1 as i128);
        s0 += x0;
        s1 += x1;
        s01 += x0 * x1;
    }
    let t = trials as i128;
    Ok((t * s01 - s0 * s1) as f64 / (t * (t - 1)) as f64)
}

/// Number of trials whose graph had at least one isolated vertex.
pub fn isolated_vertex_hits(params: &ModelParams, trials: u64, seed: RngSeed) -> Result<u64> {
    if trials == 0 {
        return param("need at least one trial");
    }
    let outcomes = run_trial_range(params, 0..trials, seed, true)?;
    Ok(outcomes.iter().filter(|o| o.has_isolated).count() as u64)
}

/// How the parameters of a sweep grow with the size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepFamily {
    /// `B(size, p)`
    Gnp,
    /// `B(round(alpha * size), size, p)`
    BipartiteRatio { alpha: f64 },
    /// `B(size + c, size, p)`
    BipartiteShift { c: i64 },
}

impl SweepFamily {
    pub fn params(&self, size: usize, p: f64) -> Result<ModelParams> {
        match *self {
            SweepFamily::Gnp => ModelParams::gnp(size, p),
            SweepFamily::BipartiteRatio { alpha } => {
                if !alpha.is_finite() || alpha <= 0.0 {
                    return param(format!("ratio {alpha} must be positive"));
                }
                ModelParams::bipartite((alpha * size as f64).round() as usize, size, p)
            }
            SweepFamily::BipartiteShift { c } => {
                let n1 = size as i64 + c;
                if n1 < 1 {
                    return param(format!("size {size} with shift {c} leaves the first part empty"));
                }
                ModelParams::bipartite(n1 as usize, size, p)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: ModelParams,
    pub trials: u64,
    pub mean: f64,
    pub sample_std: f64,
    pub stderr: f64,
    pub predicted: LimitPrediction,
    /// `|mean - predicted|`
    pub deviation: f64,
}

/// One [`run_trials`] per size, all with the same master seed, against the
/// limit predicted for each parameter set.
pub fn convergence_sweep(
    family: SweepFamily,
    sizes: &[usize],
    p: f64,
    trials: u64,
    seed: RngSeed,
) -> Result<Vec<SweepRow>> {
    convergence_sweep_with(family, sizes, p, trials, seed, TrialOptions::default())
}

pub fn convergence_sweep_with(
    family: SweepFamily,
    sizes: &[usize],
    p: f64,
    trials: u64,
    seed: RngSeed,
    options: TrialOptions,
) -> Result<Vec<SweepRow>> {
    if sizes.is_empty() {
        return param("sweep needs at least one size");
    }
    sizes
        .iter()
        .map(|&size| {
            let params = family.params(size, p)?;
            let predicted = predicted_limit(&params)?;
            let est = run_trials_with(&params, trials, seed, TrialOptions { keep_trials: false, ..options })?;
            Ok(SweepRow {
                params,
                trials,
                mean: est.mean,
                sample_std: est.sample_std,
                stderr: est.stderr,
                deviation: (est.mean - predicted.value).abs(),
                predicted,
            })
        })
        .collect()
}

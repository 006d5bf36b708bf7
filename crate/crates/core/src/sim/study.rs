//! Monte Carlo convergence of normalized random-size order statistics to
//! their predicted limits.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::base::BaseDistribution;
use crate::error::{domain, invalid, Error, Result};
use crate::laws::MaxStableLaw;
use crate::norming::{base_norming, NormingConstants};
use crate::sim::order_stat::kth_upper_order_stat;
use crate::sim::rng::RngState;
use crate::sim::size_law::{sample_size, SampleSizeLaw, SizeLawTemplate};
use crate::sim::ks::ks_distance;
use crate::transforms::{limit_law, LimitFamily, LimitLaw};

/// Replicates per independent random stream. Fixed so that results do not
/// depend on how many workers share the blocks.
pub const BLOCK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    #[serde(rename = "M")]
    pub replicates: usize,
    pub ks: f64,
    pub seed: u64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub base: BaseDistribution,
    pub template: SizeLawTemplate,
    pub k: u32,
    pub n_grid: Vec<u64>,
    pub replicates: usize,
    pub seed: u64,
    /// Rayon threads; `0` uses the global pool.
    pub workers: usize,
    /// Limit to measure against instead of the predicted one.
    pub limit: Option<LimitFamily>,
}

/// The limit law predicted for `template` when the base is in the domain of `g`.
pub fn predicted_limit(template: &SizeLawTemplate, g: MaxStableLaw, k: u32) -> Result<LimitLaw> {
    limit_law(&template.predicted_family(), g, k)
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(job))
}

/// `replicates` draws of `(X_{N-k+1:N} - b) / a`, sorted ascending.
/// Replicate blocks use streams keyed by `(seed, task, block)`.
#[allow(clippy::too_many_arguments)]
pub fn normalized_sample(
    base: &BaseDistribution,
    size_law: &SampleSizeLaw,
    k: u32,
    norming: NormingConstants,
    replicates: usize,
    seed: u64,
    task: u64,
    workers: usize,
) -> Result<Vec<f64>> {
    size_law.validate()?;
    if size_law.min_size() < u64::from(k) {
        return invalid(format!("sample-size law {size_law:?} can fall below k = {k}"));
    }
    let blocks = replicates.div_ceil(BLOCK);
    let run_block = |b: usize| -> Result<Vec<f64>> {
        let mut rng = RngState::for_block(seed, task, b as u64).rng();
        let len = BLOCK.min(replicates - b * BLOCK);
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let n = sample_size(size_law, &mut rng)?;
            let x = kth_upper_order_stat(base, n, k, &mut rng)?;
            out.push((x - norming.b) / norming.a);
        }
        Ok(out)
    };
    let parts: Vec<Result<Vec<f64>>> = with_workers(workers, || (0..blocks).into_par_iter().map(run_block).collect())?;
    let mut all = Vec::with_capacity(replicates);
    for part in parts {
        all.extend(part?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// For each `n` in the grid: draw the normalized order statistics under the
/// coupled sample-size law, using the base's own norming constants, and
/// measure the KS distance to the predicted limit.
pub fn convergence_study(cfg: &StudyConfig) -> Result<Vec<ConvergenceRow>> {
    if cfg.replicates < 1000 {
        return domain(format!("convergence study needs M >= 1000, got {}", cfg.replicates));
    }
    let g = cfg.base.mda().law();
    let limit = match &cfg.limit {
        Some(family) => limit_law(family, g, cfg.k)?,
        None => predicted_limit(&cfg.template, g, cfg.k)?,
    };
    cfg.n_grid
        .iter()
        .map(|&n| {
            let start = Instant::now();
            let law = cfg.template.instantiate(n)?;
            let norming = base_norming(&cfg.base, n)?;
            let sample = normalized_sample(&cfg.base, &law, cfg.k, norming, cfg.replicates, cfg.seed, n, cfg.workers)?;
            let ks = ks_distance(&sample, |x| limit.cdf(x));
            Ok(ConvergenceRow { n, replicates: cfg.replicates, ks, seed: cfg.seed, wall_time_s: start.elapsed().as_secs_f64() })
        })
        .collect()
}

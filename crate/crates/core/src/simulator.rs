//! The finite-armed exploration game and its Monte-Carlo estimation.
//!
//! Round `t` runs: allocation sees rounds `1..t-1`, the environment draws the
//! reward, the recommendation sees rounds `1..t`. Simple regret is scored by
//! the exact expected gap of the recommendation, so a randomized
//! recommendation is never sampled.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::history::{History, Tally};
use crate::instance::{cumulative_regret_from_tally, expected_simple_regret, BanditInstance};
use crate::rng::RngStream;
use crate::strategy::{AllocationStrategy, RecommendationStrategy};

/// `{1, 2, 4, ...} ∪ {n}`.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 1u64;
    while c < horizon {
        out.push(c);
        c *= 2;
    }
    if horizon >= 1 {
        out.push(horizon);
    }
    out
}

/// Checks that checkpoints are strictly increasing and inside `1..=horizon`.
pub fn validate_checkpoints(horizon: u64, checkpoints: &[u64]) -> Result<()> {
    if horizon == 0 {
        return Err(Error::InvalidCheckpoints(
            "horizon must be at least 1".into(),
        ));
    }
    if checkpoints.is_empty() {
        return Err(Error::InvalidCheckpoints("no checkpoints".into()));
    }
    if checkpoints[0] == 0 {
        return Err(Error::InvalidCheckpoints(
            "checkpoint 0 (rounds start at 1)".into(),
        ));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidCheckpoints(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    let last = *checkpoints.last().unwrap();
    if last > horizon {
        return Err(Error::InvalidCheckpoints(format!(
            "checkpoint {last} beyond horizon {horizon}"
        )));
    }
    Ok(())
}

/// Plays one episode up to the last checkpoint, calling `visit` with the
/// checkpoint position, the tally and the floor-round tally after every
/// checkpoint round. Returns the final tally.
pub(crate) fn play<F>(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    track_floor: bool,
    checkpoints: &[u64],
    rng: &mut RngStream,
    mut visit: F,
) -> Result<Tally>
where
    F: FnMut(usize, &Tally, Option<&Tally>) -> Result<()>,
{
    let k = instance.k();
    let arms = instance.arms();
    let horizon = checkpoints.last().copied().unwrap_or(0);
    let mut tally = Tally::new(k);
    let mut floor: Option<Tally> = None;
    let mut next = 0;
    for t in 1..=horizon {
        let arm = allocation.select(&tally, t);
        let reward = arms[arm.index()].sample(rng);
        tally.record(arm, reward);
        if track_floor && t % k as u64 == 0 {
            match floor.as_mut() {
                Some(f) => f.clone_from(&tally),
                None => floor = Some(tally.clone()),
            }
        }
        if t == checkpoints[next] {
            visit(next, &tally, floor.as_ref())?;
            next += 1;
        }
    }
    Ok(tally)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeResult {
    pub checkpoints: Vec<u64>,
    /// `simple_regret[r][c]`: regret of recommendation `r` at checkpoint `c`.
    pub simple_regret: Vec<Vec<f64>>,
    /// `R_t` at each checkpoint.
    pub cumulative_regret: Vec<f64>,
    /// `T_i(t)` at each checkpoint.
    pub counts: Vec<Vec<u64>>,
}

impl EpisodeResult {
    pub fn final_counts(&self) -> &[u64] {
        self.counts.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Runs one episode of `horizon` rounds, scoring every recommendation
/// strategy on the same trajectory.
pub fn run_episode(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    recommendations: &[RecommendationStrategy],
    horizon: u64,
    checkpoints: &[u64],
    rng: &mut RngStream,
) -> Result<EpisodeResult> {
    validate_checkpoints(horizon, checkpoints)?;
    let mut simple = vec![Vec::with_capacity(checkpoints.len()); recommendations.len()];
    let mut cumulative = Vec::with_capacity(checkpoints.len());
    let mut counts = Vec::with_capacity(checkpoints.len());
    let track_floor = recommendations
        .iter()
        .any(RecommendationStrategy::uses_floor_round);
    play(
        instance,
        allocation,
        track_floor,
        checkpoints,
        rng,
        |_, tally, floor| {
            for (r, rec) in recommendations.iter().enumerate() {
                let j = rec.recommend_tally(tally, floor)?;
                simple[r].push(expected_simple_regret(instance, &j)?);
            }
            cumulative.push(cumulative_regret_from_tally(instance, tally)?);
            counts.push(tally.counts());
            Ok(())
        },
    )?;
    Ok(EpisodeResult {
        checkpoints: checkpoints.to_vec(),
        simple_regret: simple,
        cumulative_regret: cumulative,
        counts,
    })
}

/// Like [`run_episode`] but keeps the full [`History`].
pub fn run_episode_with_history(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    horizon: u64,
    rng: &mut RngStream,
) -> History {
    let mut h = History::new(instance.k());
    for t in 1..=horizon {
        let arm = allocation.select(h.tally(), t);
        h.record(arm, instance.arm(arm).sample(rng));
    }
    h
}

/// Monte-Carlo estimate of `E r_n` at each checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveEstimate {
    pub checkpoints: Vec<u64>,
    pub mean: Vec<f64>,
    /// Sample standard deviation over `sqrt(replicates)`; 0 for one replicate.
    pub std_error: Vec<f64>,
    pub mean_cumulative: Vec<f64>,
    pub replicates: u64,
}

/// Mean and standard error of `values`, summed in order.
pub fn mean_and_std_error(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let first = values.clone().next().unwrap();
    if values.clone().all(|x| x == first) {
        return (first, 0.0);
    }
    let mean = values.clone().sum::<f64>() / n as f64;
    let ss: f64 = values.map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (n as f64 - 1.0) / n as f64).sqrt())
}

/// Runs `replicates` independent jobs, replicate `r` on stream `(seed, r)`,
/// each filling its own `stride`-long row of the returned buffer. Results do
/// not depend on the number of worker threads.
pub fn replicate_rows<F>(replicates: u64, stride: usize, seed: u64, job: F) -> Result<Vec<f64>>
where
    F: Fn(&mut RngStream, &mut [f64]) -> Result<()> + Sync,
{
    let mut buf = vec![0.0; replicates as usize * stride];
    if stride == 0 {
        return Ok(buf);
    }
    buf.par_chunks_mut(stride)
        .enumerate()
        .try_for_each(|(r, row)| job(&mut RngStream::new(seed, r as u64), row))?;
    Ok(buf)
}

/// Column statistics over a row-major replicate buffer.
pub(crate) fn column_stats(buf: &[f64], stride: usize, col: usize) -> (f64, f64) {
    mean_and_std_error(buf.iter().skip(col).step_by(stride).copied())
}

/// Estimates the regret curves of one allocation strategy paired with each of
/// `recommendations`, all scored on shared trajectories. Horizon is the last
/// checkpoint.
pub fn estimate_curves(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    recommendations: &[RecommendationStrategy],
    checkpoints: &[u64],
    replicates: u64,
    seed: u64,
) -> Result<Vec<CurveEstimate>> {
    let horizon = checkpoints.last().copied().unwrap_or(0);
    validate_checkpoints(horizon, checkpoints)?;
    if replicates == 0 {
        return Err(Error::InvalidParameter(
            "replicates must be at least 1".into(),
        ));
    }
    let cps = checkpoints.len();
    let recs = recommendations.len();
    // row layout: [rec 0 cps..., rec 1 cps..., ..., cumulative cps...]
    let stride = cps * (recs + 1);
    let track_floor = recommendations
        .iter()
        .any(RecommendationStrategy::uses_floor_round);
    let buf = replicate_rows(replicates, stride, seed, |rng, row| {
        play(
            instance,
            allocation,
            track_floor,
            checkpoints,
            rng,
            |c, tally, floor| {
                for (r, rec) in recommendations.iter().enumerate() {
                    let j = rec.recommend_tally(tally, floor)?;
                    row[r * cps + c] = expected_simple_regret(instance, &j)?;
                }
                row[recs * cps + c] = cumulative_regret_from_tally(instance, tally)?;
                Ok(())
            },
        )
        .map(|_| ())
    })?;

    let mean_cumulative: Vec<f64> = (0..cps)
        .map(|c| column_stats(&buf, stride, recs * cps + c).0)
        .collect();
    Ok((0..recs)
        .map(|r| {
            let (mean, std_error) = (0..cps)
                .map(|c| column_stats(&buf, stride, r * cps + c))
                .unzip();
            CurveEstimate {
                checkpoints: checkpoints.to_vec(),
                mean,
                std_error,
                mean_cumulative: mean_cumulative.clone(),
                replicates,
            }
        })
        .collect())
}

/// Single-pair convenience over [`estimate_curves`].
pub fn estimate_curve(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    recommendation: &RecommendationStrategy,
    checkpoints: &[u64],
    replicates: u64,
    seed: u64,
) -> Result<CurveEstimate> {
    estimate_curves(
        instance,
        allocation,
        std::slice::from_ref(recommendation),
        checkpoints,
        replicates,
        seed,
    )
    .map(|mut v| v.remove(0))
}

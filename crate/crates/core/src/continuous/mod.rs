//! Pure exploration on `X = [0, 1]`.
//!
//! Rounds are grouped into regimes: round `n = t(t+1)/2 + k` is offset `k`
//! of regime `t`. The explorer draws a new candidate point from `lambda` at
//! each regime start and replays candidate `k` at offset `k`; it recommends
//! the empirically best of the first `max(1, floor(sqrt(n)/2))` candidates.
//! The same schedule turns any pure-exploration forecaster into one with
//! sublinear cumulative regret ([`simple_to_cumulative`]).

mod env;
mod explorer;
mod regime;
mod wrapper;

pub use env::{x_cumulative_regret, x_simple_regret, Environment, MeanPayoff, Noise};
pub use explorer::{
    candidate_pool, xarmed_allocate, xarmed_recommend, xarmed_recommend_index, Candidate,
    PointSampler, RegimeExplorer, UniformUnit, XForecaster, XHistory,
};
pub use regime::{exploration_rounds, regime_decompose, regime_start, RegimePosition};
pub use wrapper::{simple_to_cumulative, FiniteArmedX, WrapperTrace};

use crate::error::{Error, Result};
use crate::simulator::{column_stats, replicate_rows, validate_checkpoints, CurveEstimate};

fn check_run(checkpoints: &[u64], replicates: u64) -> Result<u64> {
    let horizon = checkpoints.last().copied().unwrap_or(0);
    validate_checkpoints(horizon, checkpoints)?;
    if replicates == 0 {
        return Err(Error::InvalidParameter(
            "replicates must be at least 1".into(),
        ));
    }
    Ok(horizon)
}

/// Monte-Carlo simple regret of the regime explorer, with the cumulative
/// regret of its own pulls in `mean_cumulative`.
pub fn estimate_xarmed_curve<S: PointSampler + Sync>(
    env: &Environment,
    sampler: &S,
    checkpoints: &[u64],
    replicates: u64,
    seed: u64,
    mu_star_hint: Option<f64>,
) -> Result<CurveEstimate> {
    let horizon = check_run(checkpoints, replicates)?;
    let sup = mu_star_hint
        .or(env.known_supremum())
        .ok_or(Error::MissingSupremum)?;
    let cps = checkpoints.len();
    let buf = replicate_rows(replicates, 2 * cps, seed, |rng, row| {
        let mut h = XHistory::new();
        let mut cumulative = 0.0;
        let mut next = 0;
        for n in 1..=horizon {
            let s = xarmed_allocate(&mut h, n, sampler, rng)?;
            let x = h.candidates()[s].point;
            h.record(s, env.pull(x, rng)?);
            cumulative += sup - env.mean(x);
            if checkpoints[next] == n {
                row[next] = sup - env.mean(xarmed_recommend(&h, n)?);
                row[cps + next] = cumulative;
                next += 1;
            }
        }
        Ok(())
    })?;
    let (mean, std_error) = (0..cps).map(|c| column_stats(&buf, 2 * cps, c)).unzip();
    Ok(CurveEstimate {
        checkpoints: checkpoints.to_vec(),
        mean,
        std_error,
        mean_cumulative: (0..cps)
            .map(|c| column_stats(&buf, 2 * cps, cps + c).0)
            .collect(),
        replicates,
    })
}

/// Monte-Carlo `R'_n / n` of [`simple_to_cumulative`] around a fresh base
/// forecaster per replicate. `mean` and `std_error` are per-round averages,
/// `mean_cumulative` is `R'_n`.
pub fn estimate_wrapper_curve<F, M>(
    make_base: M,
    env: &Environment,
    checkpoints: &[u64],
    replicates: u64,
    seed: u64,
    mu_star_hint: Option<f64>,
) -> Result<CurveEstimate>
where
    F: XForecaster,
    M: Fn() -> Result<F> + Sync,
{
    check_run(checkpoints, replicates)?;
    let cps = checkpoints.len();
    let buf = replicate_rows(replicates, cps, seed, |rng, row| {
        let mut base = make_base()?;
        let tr = simple_to_cumulative(&mut base, env, checkpoints, rng, mu_star_hint)?;
        for (c, (&r, &n)) in tr.cumulative_regret.iter().zip(checkpoints).enumerate() {
            row[c] = r / n as f64;
        }
        Ok(())
    })?;
    let (mean, std_error): (Vec<f64>, Vec<f64>) =
        (0..cps).map(|c| column_stats(&buf, cps, c)).unzip();
    Ok(CurveEstimate {
        checkpoints: checkpoints.to_vec(),
        mean_cumulative: mean
            .iter()
            .zip(checkpoints)
            .map(|(m, &n)| m * n as f64)
            .collect(),
        mean,
        std_error,
        replicates,
    })
}

//! Allocation strategies (uniform, UCB(alpha)) and recommendation strategies
//! (empirical distribution of plays, empirical best arm, most played arm).
//!
//! Everything here is a pure function of the per-arm `(count, sum)`
//! statistics and the round index. All ties break to the smallest arm index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::history::{History, Tally};
use crate::instance::{ArmId, Recommendation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AllocationStrategy {
    Unif,
    Ucb { alpha: f64 },
}

impl AllocationStrategy {
    pub fn ucb(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(AllocationStrategy::Ucb { alpha })
    }

    /// Arm pulled at round `t`, seeing the statistics of rounds `1..t-1`.
    #[inline]
    pub fn select(&self, tally: &Tally, t: u64) -> ArmId {
        match *self {
            AllocationStrategy::Unif => unif_allocate(t, tally.k()),
            AllocationStrategy::Ucb { alpha } => ucb_select(tally, t, alpha),
        }
    }
}

impl fmt::Display for AllocationStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllocationStrategy::Unif => write!(f, "unif"),
            AllocationStrategy::Ucb { alpha } => write!(f, "ucb(alpha={alpha})"),
        }
    }
}

/// Which round the empirical best arm is computed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EbaRoundPolicy {
    /// Use all `n` rounds.
    #[default]
    CurrentRound,
    /// Use only the first `K * floor(n / K)` rounds, so that under uniform
    /// allocation every arm is averaged over the same number of rewards.
    /// Falls back to all rounds while `n < K`.
    FloorMultipleOfK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecommendationStrategy {
    Edp,
    Eba(EbaRoundPolicy),
    Mpa,
}

impl RecommendationStrategy {
    pub fn uses_floor_round(&self) -> bool {
        matches!(
            self,
            RecommendationStrategy::Eba(EbaRoundPolicy::FloorMultipleOfK)
        )
    }

    /// Recommendation from a history.
    pub fn recommend(&self, history: &History) -> Result<Recommendation> {
        match self {
            RecommendationStrategy::Edp => edp_recommend(history),
            RecommendationStrategy::Eba(policy) => eba_recommend(history, *policy),
            RecommendationStrategy::Mpa => mpa_recommend(history),
        }
    }

    /// Recommendation from running statistics. `floor_tally` is the tally as
    /// it stood at the last round that was a multiple of `K` (or `None`
    /// before round `K`); it is only read by the floor EBA policy.
    pub fn recommend_tally(
        &self,
        tally: &Tally,
        floor_tally: Option<&Tally>,
    ) -> Result<Recommendation> {
        match self {
            RecommendationStrategy::Edp => edp_from_tally(tally),
            RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound) => eba_from_tally(tally),
            RecommendationStrategy::Eba(EbaRoundPolicy::FloorMultipleOfK) => {
                eba_from_tally(floor_tally.filter(|f| f.rounds() > 0).unwrap_or(tally))
            }
            RecommendationStrategy::Mpa => mpa_from_tally(tally),
        }
    }
}

impl fmt::Display for RecommendationStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecommendationStrategy::Edp => write!(f, "edp"),
            RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound) => write!(f, "eba"),
            RecommendationStrategy::Eba(EbaRoundPolicy::FloorMultipleOfK) => {
                write!(f, "eba(floor)")
            }
            RecommendationStrategy::Mpa => write!(f, "mpa"),
        }
    }
}

/// Uniform allocation: arm `t mod K`, residue 0 meaning arm `K`, so rounds
/// cycle through arms `1, 2, ..., K`.
#[inline]
pub fn unif_allocate(t: u64, k: usize) -> ArmId {
    debug_assert!(t >= 1 && k >= 1);
    ArmId(((t - 1) % k as u64) as usize)
}

/// `B_{i,t} = mean_{i,t-1} + sqrt(alpha ln t / T_i(t-1))`, natural log; `+inf`
/// for an arm never pulled. Evaluated as `mean + sqrt(alpha ln t) / sqrt(T)`.
#[inline]
pub fn ucb_index(tally: &Tally, arm: ArmId, t: u64, alpha: f64) -> f64 {
    let s = tally.stats(arm);
    if s.count == 0 {
        return f64::INFINITY;
    }
    s.mean + (alpha * (t as f64).ln()).sqrt() * s.inv_sqrt_count
}

/// Smallest index maximizing [`ucb_index`].
pub fn ucb_allocate(history: &History, t: u64, alpha: f64) -> ArmId {
    ucb_select(history.tally(), t, alpha)
}

#[inline]
fn ucb_select(tally: &Tally, t: u64, alpha: f64) -> ArmId {
    let arms = tally.arms();
    if let Some(i) = arms.iter().position(|s| s.count == 0) {
        return ArmId(i);
    }
    let bonus = (alpha * (t as f64).ln()).sqrt();
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, s) in arms.iter().enumerate() {
        let b = s.mean + bonus * s.inv_sqrt_count;
        if b > best_value {
            best = i;
            best_value = b;
        }
    }
    ArmId(best)
}

/// `p_i = T_i(n) / n`.
pub fn edp_recommend(history: &History) -> Result<Recommendation> {
    edp_from_tally(history.tally())
}

fn edp_from_tally(tally: &Tally) -> Result<Recommendation> {
    let n = tally.rounds();
    if n == 0 {
        return Err(Error::EmptyHistory);
    }
    let n = n as f64;
    Ok(Recommendation::Distribution(
        tally.arms().iter().map(|s| s.count as f64 / n).collect(),
    ))
}

/// Empirical best arm among pulled arms.
pub fn eba_recommend(history: &History, policy: EbaRoundPolicy) -> Result<Recommendation> {
    match policy {
        EbaRoundPolicy::CurrentRound => eba_from_tally(history.tally()),
        EbaRoundPolicy::FloorMultipleOfK => {
            let k = history.k() as u64;
            let keep = k * (history.len() / k);
            if keep == 0 {
                eba_from_tally(history.tally())
            } else {
                eba_from_tally(history.truncated(keep).tally())
            }
        }
    }
}

fn eba_from_tally(tally: &Tally) -> Result<Recommendation> {
    let mut best: Option<(usize, f64)> = None;
    for (i, s) in tally.arms().iter().enumerate() {
        if s.count == 0 {
            continue;
        }
        if best.is_none_or(|(_, m)| s.mean > m) {
            best = Some((i, s.mean));
        }
    }
    best.map(|(i, _)| Recommendation::Arm(ArmId(i)))
        .ok_or(Error::NoPulledArm)
}

/// Most played arm.
pub fn mpa_recommend(history: &History) -> Result<Recommendation> {
    mpa_from_tally(history.tally())
}

fn mpa_from_tally(tally: &Tally) -> Result<Recommendation> {
    if tally.rounds() == 0 {
        return Err(Error::EmptyHistory);
    }
    let mut best = 0;
    for (i, s) in tally.arms().iter().enumerate() {
        if s.count > tally.arms()[best].count {
            best = i;
        }
    }
    Ok(Recommendation::Arm(ArmId(best)))
}

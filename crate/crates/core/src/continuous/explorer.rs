use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::regime::regime_decompose;

/// Draws candidate points; the exploration measure `lambda`.
pub trait PointSampler {
    fn sample(&self, rng: &mut RngStream) -> f64;
}

/// Uniform law on `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UniformUnit;

impl PointSampler for UniformUnit {
    fn sample(&self, rng: &mut RngStream) -> f64 {
        rng.unit()
    }
}

impl<F: Fn(&mut RngStream) -> f64> PointSampler for F {
    fn sample(&self, rng: &mut RngStream) -> f64 {
        self(rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub point: f64,
    pub count: u64,
    pub sum: f64,
}

impl Candidate {
    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }
}

/// Candidates in draw order (candidate `s` is drawn at round `s(s+1)/2`)
/// with their pull counts and reward sums.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct XHistory {
    candidates: Vec<Candidate>,
    rounds: u64,
}

impl XHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Records the reward of one pull of candidate `index` (0-based).
    pub fn record(&mut self, index: usize, reward: f64) {
        let c = &mut self.candidates[index];
        c.count += 1;
        c.sum += reward;
        self.rounds += 1;
    }
}

/// Candidate to pull at round `n`: a fresh draw from `sampler` at the start
/// of a regime (appended to `history`), otherwise a replay of candidate `k`.
/// Returns the 0-based candidate index.
pub fn xarmed_allocate(
    history: &mut XHistory,
    n: u64,
    sampler: &impl PointSampler,
    rng: &mut RngStream,
) -> Result<usize> {
    let pos = regime_decompose(n)?;
    if pos.is_start() {
        let point = sampler.sample(rng);
        history.candidates.push(Candidate {
            point,
            count: 0,
            sum: 0.0,
        });
        return Ok(history.candidates.len() - 1);
    }
    if pos.k as usize > history.candidates.len() {
        return Err(Error::ReplayOutOfRange {
            candidate: pos.k,
            drawn: history.candidates.len(),
        });
    }
    Ok(pos.k as usize - 1)
}

/// Size of the candidate pool considered at round `n`, `max(1, floor(sqrt(n)/2))`.
pub fn candidate_pool(n: u64) -> usize {
    ((n.isqrt() / 2) as usize).max(1)
}

/// 0-based index of the recommended candidate.
pub fn xarmed_recommend_index(history: &XHistory, n: u64) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (s, c) in history
        .candidates
        .iter()
        .take(candidate_pool(n))
        .enumerate()
    {
        if c.count == 0 {
            continue;
        }
        let m = c.mean();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((s, m));
        }
    }
    best.map(|(s, _)| s).ok_or(Error::NoCandidate)
}

/// Empirically best point among the first `g(n)` candidates, earliest on ties.
pub fn xarmed_recommend(history: &XHistory, n: u64) -> Result<f64> {
    xarmed_recommend_index(history, n).map(|s| history.candidates[s].point)
}

/// A forecaster on `X`: alternates `allocate` and `observe`, and can be asked
/// for a recommendation at any time. Recommendations that are distributions
/// are realised by drawing from `rng`.
pub trait XForecaster {
    fn allocate(&mut self, rng: &mut RngStream) -> Result<f64>;
    fn observe(&mut self, reward: f64) -> Result<()>;
    fn recommend(&mut self, rng: &mut RngStream) -> Result<f64>;
}

/// The regime-based explorer over [`xarmed_allocate`] / [`xarmed_recommend`].
#[derive(Debug, Clone)]
pub struct RegimeExplorer<S> {
    sampler: S,
    history: XHistory,
    pending: Option<usize>,
}

impl<S: PointSampler> RegimeExplorer<S> {
    pub fn new(sampler: S) -> Self {
        Self {
            sampler,
            history: XHistory::new(),
            pending: None,
        }
    }

    pub fn history(&self) -> &XHistory {
        &self.history
    }
}

impl<S: PointSampler> XForecaster for RegimeExplorer<S> {
    fn allocate(&mut self, rng: &mut RngStream) -> Result<f64> {
        let n = self.history.rounds() + 1;
        let s = xarmed_allocate(&mut self.history, n, &self.sampler, rng)?;
        self.pending = Some(s);
        Ok(self.history.candidates[s].point)
    }

    fn observe(&mut self, reward: f64) -> Result<()> {
        let s = self.pending.take().ok_or_else(|| {
            Error::InvalidParameter("observe called without a pending pull".into())
        })?;
        self.history.record(s, reward);
        Ok(())
    }

    fn recommend(&mut self, _rng: &mut RngStream) -> Result<f64> {
        xarmed_recommend(&self.history, self.history.rounds())
    }
}

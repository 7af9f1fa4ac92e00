use crate::error::{Error, Result};
use crate::history::History;
use crate::instance::{ArmId, Recommendation};
use crate::rng::RngStream;
use crate::strategy::{AllocationStrategy, RecommendationStrategy};

use super::env::Environment;
use super::explorer::XForecaster;
use super::regime::regime_decompose;

/// A finite-armed strategy pair played on the points `points` of `X`.
#[derive(Debug, Clone)]
pub struct FiniteArmedX {
    points: Vec<f64>,
    allocation: AllocationStrategy,
    recommendation: RecommendationStrategy,
    history: History,
    pending: Option<ArmId>,
}

impl FiniteArmedX {
    pub fn new(
        points: Vec<f64>,
        allocation: AllocationStrategy,
        recommendation: RecommendationStrategy,
    ) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewArms(points.len()));
        }
        let k = points.len();
        Ok(Self {
            points,
            allocation,
            recommendation,
            history: History::new(k),
            pending: None,
        })
    }

    pub fn history(&self) -> &History {
        &self.history
    }
}

impl XForecaster for FiniteArmedX {
    fn allocate(&mut self, _rng: &mut RngStream) -> Result<f64> {
        let arm = self
            .allocation
            .select(self.history.tally(), self.history.len() + 1);
        self.pending = Some(arm);
        Ok(self.points[arm.index()])
    }

    fn observe(&mut self, reward: f64) -> Result<()> {
        let arm = self.pending.take().ok_or_else(|| {
            Error::InvalidParameter("observe called without a pending pull".into())
        })?;
        self.history.record(arm, reward);
        Ok(())
    }

    fn recommend(&mut self, rng: &mut RngStream) -> Result<f64> {
        match self.recommendation.recommend(&self.history)? {
            Recommendation::Arm(id) => Ok(self.points[id.index()]),
            Recommendation::Distribution(p) => {
                let u = rng.unit();
                let mut acc = 0.0;
                for (i, q) in p.iter().enumerate() {
                    acc += q;
                    if u < acc {
                        return Ok(self.points[i]);
                    }
                }
                let last = p.iter().rposition(|&q| q > 0.0).unwrap_or(p.len() - 1);
                Ok(self.points[last])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WrapperTrace {
    /// Point played at every round `1..=horizon`.
    pub pulls: Vec<f64>,
    pub checkpoints: Vec<u64>,
    /// `R'_n` at each checkpoint.
    pub cumulative_regret: Vec<f64>,
    pub exploration_rounds: u64,
}

/// Turns a pure-exploration forecaster into an exploration/exploitation one.
///
/// At the start of regime `t` the base forecaster allocates and observes the
/// payoff; those are the only payoffs it ever sees. The other `t` rounds of
/// the regime play its recommendation. Exploitation rewards are not drawn:
/// `R'_n` only needs the mean payoffs of the points played.
pub fn simple_to_cumulative<F: XForecaster + ?Sized>(
    base: &mut F,
    env: &Environment,
    checkpoints: &[u64],
    rng: &mut RngStream,
    mu_star_hint: Option<f64>,
) -> Result<WrapperTrace> {
    let horizon = checkpoints.last().copied().unwrap_or(0);
    crate::simulator::validate_checkpoints(horizon, checkpoints)?;
    let sup = mu_star_hint
        .or(env.known_supremum())
        .ok_or(Error::MissingSupremum)?;
    let mut pulls = Vec::with_capacity(horizon as usize);
    let mut regret = 0.0;
    let mut trace = Vec::with_capacity(checkpoints.len());
    let mut explored = 0;
    let mut next = 0;
    for n in 1..=horizon {
        let x = if regime_decompose(n)?.is_start() {
            let x = base.allocate(rng)?;
            base.observe(env.pull(x, rng)?)?;
            explored += 1;
            x
        } else {
            base.recommend(rng)?
        };
        regret += sup - env.mean(x);
        pulls.push(x);
        if checkpoints[next] == n {
            trace.push(regret);
            next += 1;
        }
    }
    Ok(WrapperTrace {
        pulls,
        checkpoints: checkpoints.to_vec(),
        cumulative_regret: trace,
        exploration_rounds: explored,
    })
}

//! Finite-armed bandit instances, recommendations and the two regret
//! functionals.

use std::fmt;

use crate::arm::ArmDistribution;
use crate::error::{Error, Result};
use crate::history::{History, Tally};

const PROB_SUM_TOL: f64 = 1e-12;

/// Arm identifier.
///
/// Stored 0-based; [`ArmId::label`] and `Display` give the 1-based label
/// used in documentation, CSV output and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArmId(pub usize);

impl ArmId {
    /// Builds an id from a 1-based label.
    pub fn from_label(label: usize) -> Self {
        assert!(label >= 1, "arm labels are 1-based");
        ArmId(label - 1)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for ArmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Output of a recommendation strategy: a single arm `J_n`, or a law `p_n`
/// over arms from which `J_n` would be drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Recommendation {
    Arm(ArmId),
    Distribution(Vec<f64>),
}

impl Recommendation {
    pub fn distribution(p: Vec<f64>) -> Result<Self> {
        if p.iter().any(|&x| !(x >= 0.0)) {
            return Err(Error::InvalidProbabilities("negative entry".into()));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidProbabilities(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Recommendation::Distribution(p))
    }
}

/// `mu_star`, per-arm gaps and the minimal positive gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Gaps {
    pub mu_star: f64,
    pub gaps: Vec<f64>,
    /// `None` when every arm is optimal.
    pub delta_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    arms: Vec<ArmDistribution>,
    means: Vec<f64>,
    gaps: Gaps,
}

impl BanditInstance {
    pub fn new(arms: Vec<ArmDistribution>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::TooFewArms(arms.len()));
        }
        for arm in &arms {
            arm.validate()?;
        }
        let means: Vec<f64> = arms.iter().map(ArmDistribution::mean).collect();
        let mu_star = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gaps: Vec<f64> = means.iter().map(|&m| mu_star - m).collect();
        let delta_min = gaps
            .iter()
            .copied()
            .filter(|&d| d > 0.0)
            .fold(None, |acc: Option<f64>, d| {
                Some(acc.map_or(d, |a| a.min(d)))
            });
        Ok(Self {
            arms,
            means,
            gaps: Gaps {
                mu_star,
                gaps,
                delta_min,
            },
        })
    }

    pub fn bernoulli(ps: &[f64]) -> Result<Self> {
        Self::new(
            ps.iter()
                .map(|&p| ArmDistribution::bernoulli(p))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dirac(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| ArmDistribution::dirac(v))
                .collect::<Result<_>>()?,
        )
    }

    /// One optimal arm at `mu_star`, one at `mu_star - delta` and `k - 2`
    /// arms at `mu_star - 2 delta`, all Bernoulli.
    pub fn a2_scenario(k: usize, delta: f64, mu_star: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewArms(k));
        }
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gap must be positive, got {delta}"
            )));
        }
        let low = mu_star - 2.0 * delta;
        if !(0.0..=1.0).contains(&mu_star) || (k > 2 && low < 0.0) || mu_star - delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "means for mu_star={mu_star}, delta={delta} leave [0, 1]"
            )));
        }
        let mut ps = vec![mu_star, mu_star - delta];
        ps.extend(std::iter::repeat_n(low, k - 2));
        Self::bernoulli(&ps)
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn arm(&self, id: ArmId) -> &ArmDistribution {
        &self.arms[id.index()]
    }

    pub fn k(&self) -> usize {
        self.arms.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn gaps(&self) -> &Gaps {
        &self.gaps
    }

    pub fn gap(&self, id: ArmId) -> f64 {
        self.gaps.gaps[id.index()]
    }

    pub fn mu_star(&self) -> f64 {
        self.gaps.mu_star
    }

    pub fn max_gap(&self) -> f64 {
        self.gaps.gaps.iter().copied().fold(0.0, f64::max)
    }

    /// Minimal positive gap, or [`Error::AllArmsOptimal`].
    pub fn delta_min(&self) -> Result<f64> {
        self.gaps.delta_min.ok_or(Error::AllArmsOptimal)
    }

    /// Smallest optimal index.
    pub fn best_arm(&self) -> ArmId {
        ArmId(self.gaps.gaps.iter().position(|&d| d == 0.0).unwrap_or(0))
    }

    pub fn optimal_count(&self) -> usize {
        self.gaps.gaps.iter().filter(|&&d| d == 0.0).count()
    }

    pub fn suboptimal_gaps(&self) -> impl Iterator<Item = f64> + '_ {
        self.gaps.gaps.iter().copied().filter(|&d| d > 0.0)
    }

    pub fn same_arm_count(&self, k: usize) -> Result<()> {
        if k != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: k,
            });
        }
        Ok(())
    }
}

/// `(mu_star, gaps, delta_min)`; the minimal gap is `None` when all arms
/// share the same mean.
pub fn gaps(instance: &BanditInstance) -> Gaps {
    instance.gaps().clone()
}

/// `r_n = Delta_{J_n}` for an arm, `sum_i p_i Delta_i` for a law over arms.
pub fn expected_simple_regret(instance: &BanditInstance, rec: &Recommendation) -> Result<f64> {
    match rec {
        Recommendation::Arm(id) => {
            if id.index() >= instance.k() {
                return Err(Error::ArmOutOfRange {
                    label: id.label(),
                    arms: instance.k(),
                });
            }
            Ok(instance.gap(*id))
        }
        Recommendation::Distribution(p) => {
            instance.same_arm_count(p.len())?;
            Ok(p.iter()
                .zip(&instance.gaps().gaps)
                .map(|(pi, d)| pi * d)
                .sum())
        }
    }
}

/// `R_n = sum_i T_i(n) Delta_i`.
pub fn cumulative_regret(instance: &BanditInstance, history: &History) -> Result<f64> {
    cumulative_regret_from_tally(instance, history.tally())
}

pub fn cumulative_regret_from_tally(instance: &BanditInstance, tally: &Tally) -> Result<f64> {
    instance.same_arm_count(tally.k())?;
    Ok(tally
        .arms()
        .iter()
        .zip(&instance.gaps().gaps)
        .map(|(s, d)| s.count as f64 * d)
        .sum())
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Mean-payoff function on `[0, 1]`.
#[derive(Clone)]
pub enum MeanPayoff {
    /// `mu_a(x) = max(0, 1 - |x - a| / (rho/2))`, supremum 1 at `a`.
    Tent { center: f64, half_width: f64 },
    /// Caller-supplied function. It must map into `[0, 1]`; continuity is
    /// not checked.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for MeanPayoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanPayoff::Tent { center, half_width } => f
                .debug_struct("Tent")
                .field("center", center)
                .field("half_width", half_width)
                .finish(),
            MeanPayoff::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Noise {
    /// Reward equals `mu(x)`.
    Deterministic,
    /// Reward is Bernoulli(`mu(x)`).
    Bernoulli,
}

impl fmt::Display for Noise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Noise::Deterministic => "deterministic",
            Noise::Bernoulli => "bernoulli",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Environment {
    mean: MeanPayoff,
    noise: Noise,
}

impl Environment {
    pub fn tent(center: f64, half_width: f64, noise: Noise) -> Result<Self> {
        if !(0.0..=1.0).contains(&center) {
            return Err(Error::InvalidParameter(format!(
                "tent center must lie in [0, 1], got {center}"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tent half-width must be positive, got {half_width}"
            )));
        }
        Ok(Self {
            mean: MeanPayoff::Tent { center, half_width },
            noise,
        })
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static, noise: Noise) -> Self {
        Self {
            mean: MeanPayoff::Custom(Arc::new(f)),
            noise,
        }
    }

    pub fn mean_payoff(&self) -> &MeanPayoff {
        &self.mean
    }

    pub fn noise(&self) -> Noise {
        self.noise
    }

    pub fn mean(&self, x: f64) -> f64 {
        match &self.mean {
            MeanPayoff::Tent { center, half_width } => {
                (1.0 - (x - center).abs() / half_width).max(0.0)
            }
            MeanPayoff::Custom(f) => f(x),
        }
    }

    /// `sup_x mu(x)` when known in closed form.
    pub fn known_supremum(&self) -> Option<f64> {
        match self.mean {
            MeanPayoff::Tent { .. } => Some(1.0),
            MeanPayoff::Custom(_) => None,
        }
    }

    /// Draws a reward at `x`, consuming one word of `rng` for either noise.
    pub fn pull(&self, x: f64, rng: &mut RngStream) -> Result<f64> {
        let m = self.mean(x);
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "mean payoff {m} at {x} is outside [0, 1]"
            )));
        }
        let u = rng.unit();
        Ok(match self.noise {
            Noise::Deterministic => m,
            Noise::Bernoulli => {
                if u < m {
                    1.0
                } else {
                    0.0
                }
            }
        })
    }

    fn supremum(&self, hint: Option<f64>) -> Result<f64> {
        hint.or(self.known_supremum()).ok_or(Error::MissingSupremum)
    }
}

/// `sup mu - mu(x)`.
pub fn x_simple_regret(env: &Environment, x: f64, mu_star_hint: Option<f64>) -> Result<f64> {
    Ok(env.supremum(mu_star_hint)? - env.mean(x))
}

/// `n sup mu - sum_t mu(I_t)`.
pub fn x_cumulative_regret(
    env: &Environment,
    pulls: &[f64],
    mu_star_hint: Option<f64>,
) -> Result<f64> {
    let sup = env.supremum(mu_star_hint)?;
    Ok(pulls.iter().map(|&x| sup - env.mean(x)).sum())
}

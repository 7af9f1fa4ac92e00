//! Reward laws on `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

const PROB_SUM_TOL: f64 = 1e-12;

/// A reward distribution supported on `[0, 1]`.
///
/// The serialized form doubles as one record of the instance description
/// document: `{"type": "bernoulli", "p": 0.5}`, `{"type": "dirac", "value": 0.7}`
/// or `{"type": "discrete", "support": [[0.0, 0.25], [1.0, 0.75]]}` where each
/// support entry is `[value, probability]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ArmDistribution {
    Bernoulli { p: f64 },
    Dirac { value: f64 },
    Discrete { support: Vec<(f64, f64)> },
}

fn in_unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

impl ArmDistribution {
    pub fn bernoulli(p: f64) -> Result<Self> {
        let arm = ArmDistribution::Bernoulli { p };
        arm.validate()?;
        Ok(arm)
    }

    pub fn dirac(value: f64) -> Result<Self> {
        let arm = ArmDistribution::Dirac { value };
        arm.validate()?;
        Ok(arm)
    }

    pub fn discrete(support: Vec<(f64, f64)>) -> Result<Self> {
        let arm = ArmDistribution::Discrete { support };
        arm.validate()?;
        Ok(arm)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ArmDistribution::Bernoulli { p } if !in_unit(*p) => Err(Error::InvalidArm(format!(
                "Bernoulli parameter {p} outside [0, 1]"
            ))),
            ArmDistribution::Dirac { value } if !in_unit(*value) => Err(Error::InvalidArm(
                format!("Dirac value {value} outside [0, 1]"),
            )),
            ArmDistribution::Discrete { support } => {
                if support.is_empty() {
                    return Err(Error::InvalidArm("empty discrete support".into()));
                }
                let mut total = 0.0;
                for &(v, q) in support {
                    if !in_unit(v) {
                        return Err(Error::InvalidArm(format!(
                            "support value {v} outside [0, 1]"
                        )));
                    }
                    if !(q >= 0.0) {
                        return Err(Error::InvalidArm(format!("negative probability {q}")));
                    }
                    total += q;
                }
                if (total - 1.0).abs() > PROB_SUM_TOL {
                    return Err(Error::InvalidArm(format!(
                        "probabilities sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Closed-form expectation.
    pub fn mean(&self) -> f64 {
        match self {
            ArmDistribution::Bernoulli { p } => *p,
            ArmDistribution::Dirac { value } => *value,
            ArmDistribution::Discrete { support } => support.iter().map(|&(v, q)| v * q).sum(),
        }
    }

    /// Draws one reward. Consumes exactly one 64-bit word from `rng` for every
    /// kind, Dirac included, so streams stay aligned across arm kinds.
    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let u = rng.unit();
        match self {
            ArmDistribution::Bernoulli { p } => {
                if u < *p {
                    1.0
                } else {
                    0.0
                }
            }
            ArmDistribution::Dirac { value } => *value,
            ArmDistribution::Discrete { support } => {
                let mut acc = 0.0;
                for &(v, q) in support {
                    acc += q;
                    if u < acc {
                        return v;
                    }
                }
                // rounding left u above the last cumulative sum
                support
                    .iter()
                    .rev()
                    .find(|&&(_, q)| q > 0.0)
                    .map(|&(v, _)| v)
                    .unwrap_or(support[0].0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_is_constant() {
        let arm = ArmDistribution::dirac(0.7).unwrap();
        let mut rng = RngStream::new(0, 0);
        for _ in 0..1000 {
            assert_eq!(arm.sample(&mut rng), 0.7);
        }
    }

    #[test]
    fn degenerate_bernoulli() {
        let zero = ArmDistribution::bernoulli(0.0).unwrap();
        let one = ArmDistribution::bernoulli(1.0).unwrap();
        let mut rng = RngStream::new(3, 9);
        for _ in 0..1000 {
            assert_eq!(zero.sample(&mut rng), 0.0);
            assert_eq!(one.sample(&mut rng), 1.0);
        }
    }

    #[test]
    fn bernoulli_sample_mean_converges() {
        let arm = ArmDistribution::bernoulli(0.5).unwrap();
        let mut rng = RngStream::new(11, 0);
        let draws = 1_000_000;
        let total: f64 = (0..draws).map(|_| arm.sample(&mut rng)).sum();
        let tol = 4.0 / (draws as f64).sqrt();
        assert!((total / draws as f64 - 0.5).abs() <= tol);
    }

    #[test]
    fn discrete_mean_and_support() {
        let arm = ArmDistribution::discrete(vec![(0.2, 0.5), (0.6, 0.25), (1.0, 0.25)]).unwrap();
        assert!((arm.mean() - 0.5).abs() < 1e-15);
        let mut rng = RngStream::new(5, 5);
        for _ in 0..1000 {
            let x = arm.sample(&mut rng);
            assert!(x == 0.2 || x == 0.6 || x == 1.0);
        }
    }

    #[test]
    fn rejects_bad_laws() {
        assert!(ArmDistribution::bernoulli(1.5).is_err());
        assert!(ArmDistribution::dirac(-0.1).is_err());
        assert!(ArmDistribution::discrete(vec![(0.5, 0.6)]).is_err());
        assert!(ArmDistribution::discrete(vec![(1.5, 1.0)]).is_err());
        assert!(ArmDistribution::discrete(vec![(0.5, 1.5), (0.1, -0.5)]).is_err());
        assert!(ArmDistribution::bernoulli(f64::NAN).is_err());
    }

    #[test]
    fn instance_record_json() {
        let arms: Vec<ArmDistribution> = serde_json::from_str(
            r#"[{"type":"bernoulli","p":0.5},{"type":"dirac","value":0.7},
                {"type":"discrete","support":[[0.0,0.25],[1.0,0.75]]}]"#,
        )
        .unwrap();
        assert_eq!(arms[0], ArmDistribution::Bernoulli { p: 0.5 });
        assert_eq!(arms[2].mean(), 0.75);
        let bad = serde_json::from_str::<ArmDistribution>(r#"{"type":"bernoulli","p":0.5,"q":1}"#);
        assert!(bad.is_err());
    }
}

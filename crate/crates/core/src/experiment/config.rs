use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::arm::ArmDistribution;
use crate::continuous::{Environment, Noise};
use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::simulator::{default_checkpoints, validate_checkpoints};
use crate::strategy::{AllocationStrategy, EbaRoundPolicy, RecommendationStrategy};

/// One experiment, read from a TOML document. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario_id: String,
    pub seed: u64,
    pub horizon: u64,
    /// Defaults to `1, 2, 4, ...` plus the horizon.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<u64>>,
    #[serde(default = "one")]
    pub replicates: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Leaf budget of the exact oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub allocation: Vec<AllocationConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub recommendation: Vec<RecommendationConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xarmed: Option<XarmedConfig>,
}

fn one() -> u64 {
    1
}

/// Either an explicit arm list or the `a2-scenario` generator
/// (means `mu*`, `mu* - delta` and `k - 2` arms at `mu* - 2 delta`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arms: Option<Vec<ArmDistribution>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_star: Option<f64>,
}

impl InstanceConfig {
    pub fn build(&self) -> Result<BanditInstance> {
        match (&self.arms, self.generator.as_deref()) {
            (Some(arms), None) => {
                if self.k.is_some() || self.delta.is_some() || self.mu_star.is_some() {
                    return Err(Error::Config(
                        "instance: k, delta and mu_star only apply to a generator".into(),
                    ));
                }
                BanditInstance::new(arms.clone())
            }
            (None, Some("a2-scenario")) => {
                let k = self.k.ok_or_else(|| {
                    Error::Config("instance.k is required for a2-scenario".into())
                })?;
                let delta = self.delta.ok_or_else(|| {
                    Error::Config("instance.delta is required for a2-scenario".into())
                })?;
                BanditInstance::a2_scenario(k, delta, self.mu_star.unwrap_or(0.9))
            }
            (None, Some(other)) => Err(Error::Config(format!(
                "unknown instance generator `{other}`"
            ))),
            (Some(_), Some(_)) => Err(Error::Config(
                "instance: give either arms or generator, not both".into(),
            )),
            (None, None) => Err(Error::Config(
                "instance: arms or generator is required".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase", deny_unknown_fields)]
pub enum AllocationConfig {
    Unif,
    Ucb { alpha: f64 },
}

impl AllocationConfig {
    pub fn build(&self) -> Result<AllocationStrategy> {
        match *self {
            AllocationConfig::Unif => Ok(AllocationStrategy::Unif),
            AllocationConfig::Ucb { alpha } => AllocationStrategy::ucb(alpha),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase", deny_unknown_fields)]
pub enum RecommendationConfig {
    Edp,
    Eba {
        #[serde(default)]
        round: EbaRoundPolicy,
    },
    Mpa,
}

impl RecommendationConfig {
    pub fn build(&self) -> RecommendationStrategy {
        match *self {
            RecommendationConfig::Edp => RecommendationStrategy::Edp,
            RecommendationConfig::Eba { round } => RecommendationStrategy::Eba(round),
            RecommendationConfig::Mpa => RecommendationStrategy::Mpa,
        }
    }
}

pub const BOUND_NAMES: [&str; 12] = [
    "unif_eba_sum",
    "unif_eba_mcdiarmid",
    "unif_eba_df",
    "ucb_mpa_dd",
    "ucb_mpa_df",
    "ucb_mpa_weighted",
    "ucb_mpa_beta",
    "edp_df",
    "ucb_eba",
    "lower_df",
    "lower_dd_shape",
    "lower_ucb_shape",
];

/// Bounds evaluated when `names` is omitted: those needing no extra constants.
pub const DEFAULT_BOUNDS: [&str; 8] = [
    "unif_eba_sum",
    "unif_eba_mcdiarmid",
    "unif_eba_df",
    "ucb_mpa_dd",
    "ucb_mpa_df",
    "ucb_mpa_beta",
    "edp_df",
    "lower_df",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// Rounds to evaluate at; defaults to the checkpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<u64>>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_gamma: Option<f64>,
}

fn default_alpha() -> f64 {
    2.0
}

fn default_eta() -> f64 {
    0.5
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            names: None,
            n: None,
            alpha: default_alpha(),
            eta: default_eta(),
            rho_alpha: None,
            weights: None,
            lower_beta: None,
            lower_gamma: None,
        }
    }
}

impl BoundsConfig {
    pub fn names(&self) -> Vec<String> {
        match &self.names {
            Some(n) => n.clone(),
            None => DEFAULT_BOUNDS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XarmedConfig {
    /// Only `tent` can be configured; custom mean functions need the library.
    pub env: String,
    pub center: f64,
    pub half_width: f64,
    pub noise: Noise,
}

impl XarmedConfig {
    pub fn build(&self) -> Result<Environment> {
        match self.env.as_str() {
            "tent" => Environment::tent(self.center, self.half_width, self.noise),
            "custom" => Err(Error::Config(
                "custom mean-payoff functions are library-only: build a continuous::Environment::custom".into(),
            )),
            other => Err(Error::Config(format!("unknown environment `{other}`"))),
        }
    }

    pub fn label(&self) -> String {
        format!("{}:a={},rho2={}", self.env, self.center, self.half_width)
    }
}

/// Parses and validates a TOML experiment document.
pub fn parse_config(document: &str) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig =
        toml::from_str(document).map_err(|e| Error::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn serialize_config(cfg: &ExperimentConfig) -> Result<String> {
    toml::to_string(cfg).map_err(|e| Error::Config(e.to_string()))
}

impl ExperimentConfig {
    /// A config with no instance, strategies or sections.
    pub fn new(scenario_id: impl Into<String>, seed: u64, horizon: u64) -> Self {
        Self {
            scenario_id: scenario_id.into(),
            seed,
            horizon,
            checkpoints: None,
            replicates: 1,
            output: None,
            oracle_budget: None,
            instance: None,
            allocation: Vec::new(),
            recommendation: Vec::new(),
            bounds: None,
            xarmed: None,
        }
    }

    pub fn checkpoints(&self) -> Vec<u64> {
        self.checkpoints
            .clone()
            .unwrap_or_else(|| default_checkpoints(self.horizon))
    }

    /// Checks everything that does not depend on the subcommand.
    pub fn validate(&self) -> Result<()> {
        let cfg_err = |e: Error| Error::Config(e.to_string());
        if self.scenario_id.is_empty() {
            return Err(Error::Config("scenario_id must not be empty".into()));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        validate_checkpoints(self.horizon, &self.checkpoints()).map_err(cfg_err)?;
        if let Some(inst) = &self.instance {
            inst.build().map_err(cfg_err)?;
        }
        for a in &self.allocation {
            a.build().map_err(cfg_err)?;
        }
        if let Some(b) = &self.bounds {
            for name in b.names() {
                if !BOUND_NAMES.contains(&name.as_str()) {
                    return Err(Error::Config(format!("unknown bound `{name}`")));
                }
            }
            if let Some(n) = &b.n {
                if n.is_empty() || n.contains(&0) {
                    return Err(Error::Config(
                        "bounds.n must be a nonempty list of rounds >= 1".into(),
                    ));
                }
            }
        }
        if let Some(x) = &self.xarmed {
            x.build().map_err(cfg_err)?;
        }
        Ok(())
    }

    pub fn build_instance(&self) -> Result<BanditInstance> {
        self.instance
            .as_ref()
            .ok_or_else(|| Error::Config("an [instance] section is required".into()))?
            .build()
    }

    pub fn build_allocations(&self) -> Result<Vec<AllocationStrategy>> {
        if self.allocation.is_empty() {
            return Err(Error::Config(
                "at least one [[allocation]] is required".into(),
            ));
        }
        self.allocation
            .iter()
            .map(AllocationConfig::build)
            .collect()
    }

    pub fn build_recommendations(&self) -> Result<Vec<RecommendationStrategy>> {
        if self.recommendation.is_empty() {
            return Err(Error::Config(
                "at least one [[recommendation]] is required".into(),
            ));
        }
        Ok(self
            .recommendation
            .iter()
            .map(RecommendationConfig::build)
            .collect())
    }
}

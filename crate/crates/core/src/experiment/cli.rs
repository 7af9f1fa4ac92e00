//! The `pure-explore` command line.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arm::ArmDistribution;
use crate::continuous::Noise;
use crate::strategy::EbaRoundPolicy;

use super::config::{
    parse_config, AllocationConfig, BoundsConfig, ExperimentConfig, InstanceConfig,
    RecommendationConfig, XarmedConfig,
};
use super::run::{run_bounds, run_oracle, run_simulate, run_xarmed, write_csv, CsvRecord};

#[derive(Debug, Parser)]
#[command(
    name = "pure-explore",
    version,
    about = "Pure-exploration bandit experiments"
)]
pub struct Cli {
    /// TOML experiment file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// CSV destination (default: the config's output, else stdout).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads. Never changes results.
    #[arg(long, global = true, env = "PURE_EXPLORE_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte-Carlo simple and cumulative regret curves.
    Simulate(RunArgs),
    /// Closed-form bound values.
    Bounds(RunArgs),
    /// Exact expected simple regret by enumeration.
    Oracle(RunArgs),
    /// Continuum-armed regime explorer.
    Xarmed(XarmedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AllocationName {
    Unif,
    Ucb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecommendationName {
    Edp,
    Eba,
    Mpa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    #[arg(long)]
    pub scenario_id: Option<String>,
    #[arg(long)]
    pub horizon: Option<u64>,
    /// Comma-separated rounds.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Option<Vec<u64>>,
    #[arg(long)]
    pub replicates: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: Common,
    /// JSON list of arm records, or `@file`.
    #[arg(long)]
    pub instance: Option<String>,
    /// Replaces the configured allocations (repeatable).
    #[arg(long, value_enum)]
    pub allocation: Vec<AllocationName>,
    /// UCB exploration factor, also used by the UCB bounds.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Replaces the configured recommendations (repeatable).
    #[arg(long, value_enum)]
    pub recommendation: Vec<RecommendationName>,
    /// Compute EBA at round K floor(n/K).
    #[arg(long, value_enum)]
    pub eba_floor: Option<Switch>,
    /// Replaces the configured bound list (repeatable).
    #[arg(long)]
    pub bound: Vec<String>,
    #[arg(long)]
    pub oracle_budget: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct XarmedArgs {
    #[command(flatten)]
    pub common: Common,
    /// `tent:a=<x>,rho2=<x>`.
    #[arg(long)]
    pub env: Option<String>,
    #[arg(long, value_enum)]
    pub noise: Option<NoiseName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseName {
    Deterministic,
    Bernoulli,
}

impl From<NoiseName> for Noise {
    fn from(n: NoiseName) -> Self {
        match n {
            NoiseName::Deterministic => Noise::Deterministic,
            NoiseName::Bernoulli => Noise::Bernoulli,
        }
    }
}

fn parse_env(spec: &str, noise: Noise) -> anyhow::Result<XarmedConfig> {
    if spec == "custom" {
        bail!("custom mean-payoff functions are library-only: build a continuous::Environment::custom in Rust");
    }
    let params = spec
        .strip_prefix("tent:")
        .with_context(|| format!("unknown environment `{spec}` (expected tent:a=<x>,rho2=<x>)"))?;
    let (mut a, mut rho2) = (None, None);
    for kv in params.split(',') {
        let (k, v) = kv
            .split_once('=')
            .with_context(|| format!("malformed `{kv}`"))?;
        let v: f64 = v
            .parse()
            .with_context(|| format!("`{k}` is not a number"))?;
        match k {
            "a" => a = Some(v),
            "rho2" => rho2 = Some(v),
            _ => bail!("unknown tent parameter `{k}`"),
        }
    }
    Ok(XarmedConfig {
        env: "tent".into(),
        center: a.context("tent needs a=<x>")?,
        half_width: rho2.context("tent needs rho2=<x>")?,
        noise,
    })
}

fn base_config(cli: &Cli, common: &Common, default_id: &str) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_config(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => {
            let seed = cli
                .seed
                .context("a seed is required: pass --seed or use a config file")?;
            let horizon = common
                .horizon
                .context("--horizon is required without --config")?;
            ExperimentConfig::new(default_id, seed, horizon)
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(id) = &common.scenario_id {
        cfg.scenario_id = id.clone();
    }
    if let Some(h) = common.horizon {
        cfg.horizon = h;
    }
    if let Some(c) = &common.checkpoints {
        cfg.checkpoints = Some(c.clone());
    }
    if let Some(r) = common.replicates {
        cfg.replicates = r;
    }
    Ok(cfg)
}

fn apply_run_args(cfg: &mut ExperimentConfig, a: &RunArgs) -> anyhow::Result<()> {
    if let Some(inst) = &a.instance {
        let text = match inst.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
            None => inst.clone(),
        };
        let arms: Vec<ArmDistribution> =
            serde_json::from_str(&text).context("parsing --instance")?;
        cfg.instance = Some(InstanceConfig {
            arms: Some(arms),
            generator: None,
            k: None,
            delta: None,
            mu_star: None,
        });
    }
    let alpha = a.alpha.unwrap_or(2.0);
    if !a.allocation.is_empty() {
        cfg.allocation = a
            .allocation
            .iter()
            .map(|n| match n {
                AllocationName::Unif => AllocationConfig::Unif,
                AllocationName::Ucb => AllocationConfig::Ucb { alpha },
            })
            .collect();
    } else if let Some(alpha) = a.alpha {
        for c in &mut cfg.allocation {
            if let AllocationConfig::Ucb { alpha: x } = c {
                *x = alpha;
            }
        }
    }
    if !a.recommendation.is_empty() {
        cfg.recommendation = a
            .recommendation
            .iter()
            .map(|n| match n {
                RecommendationName::Edp => RecommendationConfig::Edp,
                RecommendationName::Eba => RecommendationConfig::Eba {
                    round: Default::default(),
                },
                RecommendationName::Mpa => RecommendationConfig::Mpa,
            })
            .collect();
    }
    if let Some(s) = a.eba_floor {
        let policy = match s {
            Switch::On => EbaRoundPolicy::FloorMultipleOfK,
            Switch::Off => EbaRoundPolicy::CurrentRound,
        };
        for r in &mut cfg.recommendation {
            if let RecommendationConfig::Eba { round } = r {
                *round = policy;
            }
        }
    }
    if !a.bound.is_empty() || a.alpha.is_some() {
        let b = cfg.bounds.get_or_insert_with(BoundsConfig::default);
        if !a.bound.is_empty() {
            b.names = Some(a.bound.clone());
        }
        if let Some(alpha) = a.alpha {
            b.alpha = alpha;
        }
    }
    if let Some(b) = a.oracle_budget {
        cfg.oracle_budget = Some(b);
    }
    cfg.validate()?;
    Ok(())
}

fn emit<R: CsvRecord>(rows: &[R], cli: &Cli, cfg: &ExperimentConfig) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    match cli.output.as_ref().or(cfg.output.as_ref()) {
        Some(path) => {
            fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

fn warn_single_replicate(cfg: &ExperimentConfig) {
    if cfg.replicates == 1 {
        eprintln!("warning: replicates = 1, std_error is reported as 0");
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> anyhow::Result<()> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = cli.threads {
            if t == 0 {
                bail!("--threads must be at least 1");
            }
            b = b.num_threads(t);
        }
        b.build()?
    };
    pool.install(|| match &cli.command {
        Command::Simulate(a) => {
            let mut cfg = base_config(cli, &a.common, "simulate")?;
            apply_run_args(&mut cfg, a)?;
            warn_single_replicate(&cfg);
            emit(&run_simulate(&cfg)?, cli, &cfg)
        }
        Command::Bounds(a) => {
            let mut cfg = base_config(cli, &a.common, "bounds")?;
            apply_run_args(&mut cfg, a)?;
            emit(&run_bounds(&cfg)?, cli, &cfg)
        }
        Command::Oracle(a) => {
            let mut cfg = base_config(cli, &a.common, "oracle")?;
            apply_run_args(&mut cfg, a)?;
            emit(&run_oracle(&cfg)?, cli, &cfg)
        }
        Command::Xarmed(a) => {
            let mut cfg = base_config(cli, &a.common, "xarmed")?;
            let noise = a.noise.map(Noise::from);
            match (&a.env, &mut cfg.xarmed) {
                (Some(spec), _) => {
                    let n = noise
                        .or(cfg.xarmed.as_ref().map(|x| x.noise))
                        .unwrap_or(Noise::Deterministic);
                    cfg.xarmed = Some(parse_env(spec, n)?);
                }
                (None, Some(x)) => {
                    if let Some(n) = noise {
                        x.noise = n;
                    }
                }
                (None, None) => bail!("--env is required without an [xarmed] config section"),
            }
            cfg.validate()?;
            warn_single_replicate(&cfg);
            emit(&run_xarmed(&cfg)?, cli, &cfg)
        }
    })
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_spec() {
        let x = parse_env("tent:a=0.3,rho2=0.2", Noise::Bernoulli).unwrap();
        assert_eq!(
            (x.center, x.half_width, x.noise),
            (0.3, 0.2, Noise::Bernoulli)
        );
        assert!(parse_env("custom", Noise::Bernoulli)
            .unwrap_err()
            .to_string()
            .contains("library"));
        assert!(parse_env("tent:a=0.3", Noise::Bernoulli).is_err());
        assert!(parse_env("tent:a=0.3,rho2=x", Noise::Bernoulli).is_err());
        assert!(parse_env("bump:a=0.3", Noise::Bernoulli).is_err());
    }

    #[test]
    fn flags_only_config() {
        let cli = Cli::parse_from([
            "pure-explore",
            "--seed",
            "3",
            "simulate",
            "--instance",
            r#"[{"type":"bernoulli","p":0.5},{"type":"bernoulli","p":0.8}]"#,
            "--allocation",
            "ucb",
            "--alpha",
            "3",
            "--recommendation",
            "eba",
            "--eba-floor",
            "on",
            "--horizon",
            "20",
        ]);
        let Command::Simulate(a) = &cli.command else {
            panic!()
        };
        let mut cfg = base_config(&cli, &a.common, "simulate").unwrap();
        apply_run_args(&mut cfg, a).unwrap();
        assert_eq!(cfg.allocation, vec![AllocationConfig::Ucb { alpha: 3.0 }]);
        assert_eq!(
            cfg.recommendation,
            vec![RecommendationConfig::Eba {
                round: EbaRoundPolicy::FloorMultipleOfK
            }]
        );
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.checkpoints(), vec![1, 2, 4, 8, 16, 20]);
    }

    #[test]
    fn seed_is_mandatory() {
        let cli = Cli::parse_from([
            "pure-explore",
            "xarmed",
            "--env",
            "tent:a=0.5,rho2=0.1",
            "--horizon",
            "10",
        ]);
        let Command::Xarmed(a) = &cli.command else {
            panic!()
        };
        assert!(base_config(&cli, &a.common, "x")
            .unwrap_err()
            .to_string()
            .contains("seed"));
    }
}

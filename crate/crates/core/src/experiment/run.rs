use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundValue};
use crate::continuous::{estimate_xarmed_curve, UniformUnit};
use crate::error::{Error, Result};
use crate::instance::BanditInstance;
use crate::oracle::{exact_curves, DEFAULT_LEAF_BUDGET};
use crate::simulator::estimate_curves;

use super::config::{BoundsConfig, ExperimentConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRow {
    pub scenario_id: String,
    pub allocation: String,
    pub recommendation: String,
    pub n: u64,
    pub replicates: u64,
    pub mean_simple_regret: f64,
    pub std_error: f64,
    pub mean_cumulative_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub scenario_id: String,
    pub bound: String,
    pub n: u64,
    pub value: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub scenario_id: String,
    pub allocation: String,
    pub recommendation: String,
    pub n: u64,
    pub value: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XarmedRow {
    pub scenario_id: String,
    pub env: String,
    pub noise: String,
    pub n: u64,
    pub replicates: u64,
    pub mean_simple_regret: f64,
    pub std_error: f64,
    pub mean_cumulative_regret: f64,
}

/// One row per (allocation, recommendation, checkpoint), allocations
/// outermost. Every allocation uses the configured seed.
pub fn run_simulate(cfg: &ExperimentConfig) -> Result<Vec<SimulateRow>> {
    cfg.validate()?;
    let instance = cfg.build_instance()?;
    let recs = cfg.build_recommendations()?;
    let checkpoints = cfg.checkpoints();
    let mut rows = Vec::new();
    for alloc in cfg.build_allocations()? {
        let curves = estimate_curves(
            &instance,
            &alloc,
            &recs,
            &checkpoints,
            cfg.replicates,
            cfg.seed,
        )?;
        for (rec, curve) in recs.iter().zip(curves) {
            for (c, &n) in checkpoints.iter().enumerate() {
                rows.push(SimulateRow {
                    scenario_id: cfg.scenario_id.clone(),
                    allocation: alloc.to_string(),
                    recommendation: rec.to_string(),
                    n,
                    replicates: cfg.replicates,
                    mean_simple_regret: curve.mean[c],
                    std_error: curve.std_error[c],
                    mean_cumulative_regret: curve.mean_cumulative[c],
                });
            }
        }
    }
    Ok(rows)
}

fn need(v: Option<f64>, what: &str, bound: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Config(format!("bound `{bound}` needs bounds.{what}")))
}

/// Value of bound `name` at `n`, or `None` where it is undefined (too few
/// rounds for the distribution-free UCB and lower bounds).
fn eval_bound(
    name: &str,
    inst: &BanditInstance,
    b: &BoundsConfig,
    n: u64,
) -> Result<Option<BoundValue>> {
    let k = inst.k();
    let shape = |value: f64| BoundValue {
        value,
        valid: true,
        precondition: "none".into(),
    };
    Ok(Some(match name {
        "unif_eba_sum" => bounds::unif_eba_bound_sum(inst, n)?,
        "unif_eba_mcdiarmid" => bounds::unif_eba_bound_mcdiarmid(inst, n, b.eta)?,
        "unif_eba_df" => bounds::unif_eba_df_bound(k, n)?,
        "ucb_mpa_dd" => bounds::ucb_mpa_dd_bound(inst, n, b.alpha)?,
        "ucb_mpa_df" if n <= k as u64 => return Ok(None),
        "ucb_mpa_df" => bounds::ucb_mpa_df_bound(k, n, b.alpha)?,
        "ucb_mpa_weighted" => {
            let w = b.weights.as_ref().ok_or_else(|| {
                Error::Config("bound `ucb_mpa_weighted` needs bounds.weights".into())
            })?;
            bounds::ucb_mpa_weighted_bound(inst, n, b.alpha, w)?
        }
        "ucb_mpa_beta" => bounds::ucb_mpa_beta_bound(inst, n, b.alpha)?,
        "edp_df" => bounds::edp_df_bound(k, n, b.alpha)?,
        "ucb_eba" => bounds::ucb_eba_bound(inst, n, need(b.rho_alpha, "rho_alpha", name)?)?,
        "lower_df" if n < k as u64 => return Ok(None),
        "lower_df" => shape(bounds::lower_bound_df(k, n)?),
        "lower_dd_shape" => shape(bounds::lower_bound_dd_shape(
            need(b.lower_beta, "lower_beta", name)?,
            need(b.lower_gamma, "lower_gamma", name)?,
            n,
        )?),
        "lower_ucb_shape" => shape(bounds::lower_bound_ucb_shape(
            need(b.lower_beta, "lower_beta", name)?,
            need(b.lower_gamma, "lower_gamma", name)?,
            b.alpha,
            n,
        )?),
        other => return Err(Error::Config(format!("unknown bound `{other}`"))),
    }))
}

/// One row per (bound, n), in the configured bound order. Rounds where a
/// bound is undefined are skipped.
pub fn run_bounds(cfg: &ExperimentConfig) -> Result<Vec<BoundRow>> {
    cfg.validate()?;
    let inst = cfg.build_instance()?;
    let b = cfg.bounds.clone().unwrap_or_default();
    let ns = b.n.clone().unwrap_or_else(|| cfg.checkpoints());
    let mut rows = Vec::new();
    for name in b.names() {
        for &n in &ns {
            if let Some(v) = eval_bound(&name, &inst, &b, n)? {
                rows.push(BoundRow {
                    scenario_id: cfg.scenario_id.clone(),
                    bound: name.clone(),
                    n,
                    value: v.value,
                    valid: v.valid,
                });
            }
        }
    }
    Ok(rows)
}

/// Exact values, same row order as [`run_simulate`].
pub fn run_oracle(cfg: &ExperimentConfig) -> Result<Vec<OracleRow>> {
    cfg.validate()?;
    let instance = cfg.build_instance()?;
    let recs = cfg.build_recommendations()?;
    let checkpoints = cfg.checkpoints();
    let budget = cfg
        .oracle_budget
        .map(u128::from)
        .unwrap_or(DEFAULT_LEAF_BUDGET);
    let mut rows = Vec::new();
    for alloc in cfg.build_allocations()? {
        let exact = exact_curves(&instance, &alloc, &recs, &checkpoints, budget)?;
        for (rec, values) in recs.iter().zip(&exact.values) {
            for (&n, &value) in checkpoints.iter().zip(values) {
                rows.push(OracleRow {
                    scenario_id: cfg.scenario_id.clone(),
                    allocation: alloc.to_string(),
                    recommendation: rec.to_string(),
                    n,
                    value,
                    method: "exact".into(),
                });
            }
        }
    }
    Ok(rows)
}

/// Regime explorer with uniform candidate draws on the configured environment.
pub fn run_xarmed(cfg: &ExperimentConfig) -> Result<Vec<XarmedRow>> {
    cfg.validate()?;
    let x = cfg
        .xarmed
        .as_ref()
        .ok_or_else(|| Error::Config("an [xarmed] section is required".into()))?;
    let env = x.build()?;
    let checkpoints = cfg.checkpoints();
    let est = estimate_xarmed_curve(
        &env,
        &UniformUnit,
        &checkpoints,
        cfg.replicates,
        cfg.seed,
        None,
    )?;
    Ok(checkpoints
        .iter()
        .enumerate()
        .map(|(c, &n)| XarmedRow {
            scenario_id: cfg.scenario_id.clone(),
            env: x.label(),
            noise: x.noise.to_string(),
            n,
            replicates: cfg.replicates,
            mean_simple_regret: est.mean[c],
            std_error: est.std_error[c],
            mean_cumulative_regret: est.mean_cumulative[c],
        })
        .collect())
}

/// A row type with a fixed CSV column layout.
pub trait CsvRecord: DeserializeOwned {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// 17 significant digits, exponent form.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl CsvRecord for SimulateRow {
    const HEADER: &'static [&'static str] = &[
        "scenario_id",
        "allocation",
        "recommendation",
        "n",
        "replicates",
        "mean_simple_regret",
        "std_error",
        "mean_cumulative_regret",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.scenario_id.clone(),
            self.allocation.clone(),
            self.recommendation.clone(),
            self.n.to_string(),
            self.replicates.to_string(),
            num(self.mean_simple_regret),
            num(self.std_error),
            num(self.mean_cumulative_regret),
        ]
    }
}

impl CsvRecord for BoundRow {
    const HEADER: &'static [&'static str] = &["scenario_id", "bound", "n", "value", "valid"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.scenario_id.clone(),
            self.bound.clone(),
            self.n.to_string(),
            num(self.value),
            self.valid.to_string(),
        ]
    }
}

impl CsvRecord for OracleRow {
    const HEADER: &'static [&'static str] = &[
        "scenario_id",
        "allocation",
        "recommendation",
        "n",
        "value",
        "method",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.scenario_id.clone(),
            self.allocation.clone(),
            self.recommendation.clone(),
            self.n.to_string(),
            num(self.value),
            self.method.clone(),
        ]
    }
}

impl CsvRecord for XarmedRow {
    const HEADER: &'static [&'static str] = &[
        "scenario_id",
        "env",
        "noise",
        "n",
        "replicates",
        "mean_simple_regret",
        "std_error",
        "mean_cumulative_regret",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.scenario_id.clone(),
            self.env.clone(),
            self.noise.clone(),
            self.n.to_string(),
            self.replicates.to_string(),
            num(self.mean_simple_regret),
            num(self.std_error),
            num(self.mean_cumulative_regret),
        ]
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Config(format!("csv: {e}"))
}

pub fn write_csv<R: CsvRecord, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

pub fn read_csv<R: CsvRecord, I: Read>(input: I) -> Result<Vec<R>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if header != R::HEADER {
        return Err(csv_err(format!("unexpected header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(csv_err)).collect()
}

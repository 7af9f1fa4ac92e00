//! Closed-form upper and lower bounds on the expected simple regret.
//!
//! Each upper bound is returned with a validity flag for its condition on
//! `n`. Values are computed even when the condition fails so that curves can
//! be drawn across thresholds, and they are never clamped to `max_i Delta_i`.
//! A bound whose base becomes non-positive (too few rounds for the power
//! law) evaluates to `+inf`.
//!
//! Logarithms are natural.

use crate::error::{Error, Result};
use crate::instance::BanditInstance;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub valid: bool,
    pub precondition: String,
}

impl BoundValue {
    fn new(value: f64, valid: bool, precondition: impl Into<String>) -> Self {
        debug_assert!(value >= 0.0 || value.is_nan());
        Self {
            value,
            valid,
            precondition: precondition.into(),
        }
    }
}

fn floor_ratio(n: u64, k: usize) -> f64 {
    (n / k as u64) as f64
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// `base^(2(1 - alpha))`, `+inf` for a non-positive base.
fn power_tail(base: f64, alpha: f64) -> f64 {
    if base <= 0.0 {
        f64::INFINITY
    } else {
        base.powf(2.0 * (1.0 - alpha))
    }
}

/// Uniform allocation with EBA at round `K floor(n/K)`:
/// `sum_{i: Delta_i > 0} Delta_i exp(-Delta_i^2 floor(n/K))`, valid for `n >= K`.
pub fn unif_eba_bound_sum(instance: &BanditInstance, n: u64) -> Result<BoundValue> {
    instance.delta_min()?;
    let k = instance.k();
    let m = floor_ratio(n, k);
    let value = instance
        .suboptimal_gaps()
        .map(|d| d * (-d * d * m).exp())
        .sum();
    Ok(BoundValue::new(
        value,
        n >= k as u64,
        format!("n >= K = {k}"),
    ))
}

/// Bounded-differences version for many arms:
/// `max_i Delta_i * exp(-(1-eta)^2 / 2 * floor(n/K) * Delta^2)`,
/// valid for `n >= max(K, K ln K / (eta^2 Delta^2))`.
pub fn unif_eba_bound_mcdiarmid(instance: &BanditInstance, n: u64, eta: f64) -> Result<BoundValue> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in (0, 1), got {eta}"
        )));
    }
    let delta = instance.delta_min()?;
    let k = instance.k();
    let kf = k as f64;
    let m = floor_ratio(n, k);
    let value = instance.max_gap() * (-(1.0 - eta).powi(2) / 2.0 * m * delta * delta).exp();
    let threshold = kf.max(kf * kf.ln() / (eta * eta * delta * delta));
    Ok(BoundValue::new(
        value,
        n as f64 >= threshold,
        format!("n >= max(K, K ln K / (eta^2 Delta^2)) = {threshold}"),
    ))
}

/// Distribution-free bound for uniform allocation with EBA:
/// `2 sqrt(K ln K / (n + K))`, always valid.
pub fn unif_eba_df_bound(k: usize, n: u64) -> Result<BoundValue> {
    if k < 2 {
        return Err(Error::TooFewArms(k));
    }
    let kf = k as f64;
    let value = 2.0 * (kf * kf.ln() / (n as f64 + kf)).sqrt();
    Ok(BoundValue::new(value, true, "none"))
}

/// UCB(alpha) with MPA: `K / (alpha - 1) * (n/K - 1)^(2(1 - alpha))`, valid
/// for `n >= K + 4 K alpha ln n / Delta^2` and `n >= K (K + 2)`.
pub fn ucb_mpa_dd_bound(instance: &BanditInstance, n: u64, alpha: f64) -> Result<BoundValue> {
    check_alpha(alpha)?;
    let delta = instance.delta_min()?;
    let kf = instance.k() as f64;
    let nf = n as f64;
    let value = kf / (alpha - 1.0) * power_tail(nf / kf - 1.0, alpha);
    let valid = nf >= kf + 4.0 * kf * alpha * nf.ln() / (delta * delta) && nf >= kf * (kf + 2.0);
    Ok(BoundValue::new(
        value,
        valid,
        "n >= K + 4 K alpha ln(n) / Delta^2 and n >= K (K + 2)",
    ))
}

/// Distribution-free UCB(alpha) with MPA:
/// `sqrt(4 K alpha ln n / (n - K)) + K / (alpha - 1) (n/K - 1)^(2(1 - alpha))`,
/// valid for `n >= K (K + 2)`.
pub fn ucb_mpa_df_bound(k: usize, n: u64, alpha: f64) -> Result<BoundValue> {
    check_alpha(alpha)?;
    if k < 2 {
        return Err(Error::TooFewArms(k));
    }
    if n <= k as u64 {
        return Err(Error::InvalidParameter(format!(
            "needs n > K, got n = {n}, K = {k}"
        )));
    }
    let kf = k as f64;
    let nf = n as f64;
    let value = (4.0 * kf * alpha * nf.ln() / (nf - kf)).sqrt()
        + kf / (alpha - 1.0) * power_tail(nf / kf - 1.0, alpha);
    Ok(BoundValue::new(
        value,
        nf >= kf * (kf + 2.0),
        format!("n >= K (K + 2) = {}", k * (k + 2)),
    ))
}

/// Weighted form: for weights `a` with `a_i <= a_{i*}` for suboptimal `i`
/// and optimal `i*`, `1 / (alpha - 1) * sum_{suboptimal i} (a_i n - 1)^(2(1 - alpha))`,
/// valid when every suboptimal arm has `a_i n >= 1 + 4 alpha ln n / Delta_i^2`
/// and `a_i n >= K + 2`.
///
/// Uniform weights give `(K - K*) / K` times [`ucb_mpa_dd_bound`], which
/// bounds the number of suboptimal arms by `K`.
pub fn ucb_mpa_weighted_bound(
    instance: &BanditInstance,
    n: u64,
    alpha: f64,
    weights: &[f64],
) -> Result<BoundValue> {
    check_alpha(alpha)?;
    instance.same_arm_count(weights.len())?;
    instance.delta_min()?;
    if weights.iter().any(|&a| !(a >= 0.0)) {
        return Err(Error::InvalidParameter(
            "weights must be nonnegative".into(),
        ));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let gaps = &instance.gaps().gaps;
    let min_optimal = weights
        .iter()
        .zip(gaps)
        .filter(|(_, &d)| d == 0.0)
        .map(|(&a, _)| a)
        .fold(f64::INFINITY, f64::min);
    if let Some((i, _)) = weights
        .iter()
        .zip(gaps)
        .enumerate()
        .find(|(_, (&a, &d))| d > 0.0 && a > min_optimal)
    {
        return Err(Error::InvalidParameter(format!(
            "weight of suboptimal arm {} exceeds an optimal arm's weight",
            i + 1
        )));
    }

    let nf = n as f64;
    let kf = instance.k() as f64;
    let mut value = 0.0;
    let mut valid = true;
    for (&a, &d) in weights.iter().zip(gaps) {
        if d == 0.0 {
            continue;
        }
        value += power_tail(a * nf - 1.0, alpha);
        valid &= a * nf >= 1.0 + 4.0 * alpha * nf.ln() / (d * d) && a * nf >= kf + 2.0;
    }
    Ok(BoundValue::new(
        value / (alpha - 1.0),
        valid,
        "a_i n >= 1 + 4 alpha ln(n) / Delta_i^2 and a_i n >= K + 2 for suboptimal i",
    ))
}

/// Gap-adapted weights `a_i = beta / Delta_i^2` (suboptimal), `beta / Delta^2`
/// (optimal), and the normaliser `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaWeights {
    pub beta: f64,
    pub optimal_count: usize,
    pub max_gap: f64,
    pub weights: Vec<f64>,
}

pub fn beta_weights(instance: &BanditInstance) -> Result<BetaWeights> {
    let delta = instance.delta_min()?;
    let optimal_count = instance.optimal_count();
    let inv: f64 = optimal_count as f64 / (delta * delta)
        + instance
            .suboptimal_gaps()
            .map(|d| 1.0 / (d * d))
            .sum::<f64>();
    let beta = 1.0 / inv;
    let weights = instance
        .gaps()
        .gaps
        .iter()
        .map(|&d| {
            if d == 0.0 {
                beta / (delta * delta)
            } else {
                beta / (d * d)
            }
        })
        .collect();
    Ok(BetaWeights {
        beta,
        optimal_count,
        max_gap: instance.max_gap(),
        weights,
    })
}

/// `1 / (alpha - 1) * sum_{suboptimal i} (beta n / Delta_i^2 - 1)^(2(1 - alpha))`,
/// valid for `n / ln n >= (4 alpha + 1) / beta` and `n >= (K + 2) Delta'^2 / beta`.
pub fn ucb_mpa_beta_bound(instance: &BanditInstance, n: u64, alpha: f64) -> Result<BoundValue> {
    check_alpha(alpha)?;
    let bw = beta_weights(instance)?;
    let nf = n as f64;
    let kf = instance.k() as f64;
    let value: f64 = instance
        .suboptimal_gaps()
        .map(|d| power_tail(bw.beta * nf / (d * d) - 1.0, alpha))
        .sum::<f64>()
        / (alpha - 1.0);
    let valid = nf / nf.ln() >= (4.0 * alpha + 1.0) / bw.beta
        && nf >= (kf + 2.0) * bw.max_gap * bw.max_gap / bw.beta;
    Ok(BoundValue::new(
        value,
        valid && n > 1,
        format!(
            "n / ln n >= (4 alpha + 1) / beta and n >= (K + 2) Delta'^2 / beta (beta = {})",
            bw.beta
        ),
    ))
}

/// UCB(alpha) with EDP via the cumulative regret:
/// `sqrt((4 alpha ln n + 3/2 + 1 / (2 (alpha - 1))) K n) / n`.
pub fn edp_df_bound(k: usize, n: u64, alpha: f64) -> Result<BoundValue> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let nf = n as f64;
    let c = 4.0 * alpha * nf.ln() + 1.5 + 1.0 / (2.0 * (alpha - 1.0));
    Ok(BoundValue::new(
        (c * k as f64 * nf).sqrt() / nf,
        true,
        "n >= 1",
    ))
}

/// UCB(alpha) with EBA: `sum_{i: Delta_i > 0} 4 / Delta_i * (1/n)^(rho Delta_i^2 / 2)`
/// for a caller-supplied rate `rho > 0` (no closed form is known).
pub fn ucb_eba_bound(instance: &BanditInstance, n: u64, rho_alpha: f64) -> Result<BoundValue> {
    if !(rho_alpha > 0.0) || !rho_alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rho_alpha must be positive, got {rho_alpha}"
        )));
    }
    instance.delta_min()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let inv_n = 1.0 / n as f64;
    let value = instance
        .suboptimal_gaps()
        .map(|d| 4.0 / d * inv_n.powf(rho_alpha * d * d / 2.0))
        .sum();
    Ok(BoundValue::new(value, true, "n >= 1"))
}

/// Minimax lower bound `sqrt(K / n) / 20` over all forecasters, `n >= K >= 2`.
pub fn lower_bound_df(k: usize, n: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::TooFewArms(k));
    }
    if n < k as u64 {
        return Err(Error::InvalidParameter(format!(
            "needs n >= K, got n = {n}, K = {k}"
        )));
    }
    Ok((k as f64 / n as f64).sqrt() / 20.0)
}

fn check_shape(beta: f64, gamma: f64) -> Result<()> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if !(gamma >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must be nonnegative, got {gamma}"
        )));
    }
    Ok(())
}

/// `beta exp(-gamma n)`: shape of the distribution-dependent lower bound;
/// the constants exist but are not known, so they are caller parameters.
pub fn lower_bound_dd_shape(beta: f64, gamma: f64, n: u64) -> Result<f64> {
    check_shape(beta, gamma)?;
    Ok(beta * (-gamma * n as f64).exp())
}

/// `beta n^(-gamma alpha)`: shape of the lower bound for any recommendation
/// fed by UCB(alpha).
pub fn lower_bound_ucb_shape(beta: f64, gamma: f64, alpha: f64, n: u64) -> Result<f64> {
    check_shape(beta, gamma)?;
    Ok(beta * (n as f64).powf(-gamma * alpha))
}

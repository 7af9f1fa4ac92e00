//! Exact expected simple regret by enumeration of reward outcomes.
//!
//! Bernoulli and Dirac arms only. Every strategy in this crate depends on
//! the history only through per-arm `(count, sum)` statistics (plus the same
//! statistics frozen at the last multiple of `K` for floor EBA), so outcome
//! paths are merged on that state and propagated forward level by level.
//! The leaf budget still refers to the unmerged outcome tree.

use std::collections::BTreeMap;

use crate::arm::ArmDistribution;
use crate::error::{Error, Result};
use crate::history::{ArmStats, Tally};
use crate::instance::{expected_simple_regret, BanditInstance};
use crate::simulator::validate_checkpoints;
use crate::strategy::{AllocationStrategy, RecommendationStrategy};

pub const DEFAULT_LEAF_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactCurves {
    pub checkpoints: Vec<u64>,
    /// `values[r][c]`: exact `E r_n` of recommendation `r` at checkpoint `c`.
    pub values: Vec<Vec<f64>>,
    /// Leaves of the unmerged outcome tree at the horizon.
    pub leaves: u128,
    /// Distinct merged states at the horizon.
    pub states: usize,
    /// Sum of leaf probabilities.
    pub total_probability: f64,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    prob: f64,
    paths: u128,
}

type Key = Vec<u64>;

fn encode(tally: &Tally, floor: Option<&Tally>, track_floor: bool, key: &mut Key) {
    key.clear();
    for s in tally.arms() {
        key.push(s.count);
        key.push(s.sum.to_bits());
    }
    if track_floor {
        match floor {
            Some(f) => {
                key.push(1);
                for s in f.arms() {
                    key.push(s.count);
                    key.push(s.sum.to_bits());
                }
            }
            None => key.push(0),
        }
    }
}

fn decode(key: &[u64], k: usize) -> (Tally, Option<Tally>) {
    let read = |chunk: &[u64]| {
        Tally::from_stats(
            chunk
                .chunks_exact(2)
                .map(|c| ArmStats::from_count_sum(c[0], f64::from_bits(c[1])))
                .collect(),
        )
    };
    let tally = read(&key[..2 * k]);
    let floor = match key.get(2 * k) {
        Some(1) => Some(read(&key[2 * k + 1..])),
        _ => None,
    };
    (tally, floor)
}

/// `(reward, probability)` outcomes with positive probability.
fn outcomes(arm: &ArmDistribution) -> Vec<(f64, f64)> {
    match *arm {
        ArmDistribution::Bernoulli { p } => [(1.0, p), (0.0, 1.0 - p)]
            .into_iter()
            .filter(|&(_, q)| q > 0.0)
            .collect(),
        ArmDistribution::Dirac { value } => vec![(value, 1.0)],
        ArmDistribution::Discrete { .. } => unreachable!("rejected before enumeration"),
    }
}

/// Exact curves of one allocation strategy with each recommendation.
pub fn exact_curves(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    recommendations: &[RecommendationStrategy],
    checkpoints: &[u64],
    leaf_budget: u128,
) -> Result<ExactCurves> {
    let horizon = checkpoints.last().copied().unwrap_or(0);
    validate_checkpoints(horizon, checkpoints)?;
    for (i, arm) in instance.arms().iter().enumerate() {
        if matches!(arm, ArmDistribution::Discrete { .. }) {
            return Err(Error::UnsupportedDistribution(i + 1));
        }
    }
    let k = instance.k();
    let branches: Vec<Vec<(f64, f64)>> = instance.arms().iter().map(outcomes).collect();
    let track_floor = recommendations
        .iter()
        .any(RecommendationStrategy::uses_floor_round);

    let mut key = Key::new();
    let mut level: BTreeMap<Key, Node> = BTreeMap::new();
    encode(&Tally::new(k), None, track_floor, &mut key);
    level.insert(
        key.clone(),
        Node {
            prob: 1.0,
            paths: 1,
        },
    );

    let mut values = vec![Vec::with_capacity(checkpoints.len()); recommendations.len()];
    let mut next = 0;
    for t in 1..=horizon {
        let mut following: BTreeMap<Key, Node> = BTreeMap::new();
        let mut paths: u128 = 0;
        for (state, node) in &level {
            let (tally, floor) = decode(state, k);
            let arm = allocation.select(&tally, t);
            let arm_branches = &branches[arm.index()];
            paths = paths.saturating_add(node.paths.saturating_mul(arm_branches.len() as u128));
            if paths > leaf_budget {
                return Err(Error::BudgetExceeded {
                    needed: paths,
                    budget: leaf_budget,
                });
            }
            for &(reward, q) in arm_branches {
                let mut child = tally.clone();
                child.record(arm, reward);
                let child_floor = if track_floor && t % k as u64 == 0 {
                    Some(child.clone())
                } else {
                    floor.clone()
                };
                encode(&child, child_floor.as_ref(), track_floor, &mut key);
                let entry = following.entry(key.clone()).or_insert(Node {
                    prob: 0.0,
                    paths: 0,
                });
                entry.prob += node.prob * q;
                entry.paths += node.paths;
            }
        }
        level = following;

        if t == checkpoints[next] {
            let mut acc = vec![0.0; recommendations.len()];
            for (state, node) in &level {
                let (tally, floor) = decode(state, k);
                for (r, rec) in recommendations.iter().enumerate() {
                    let j = rec.recommend_tally(&tally, floor.as_ref())?;
                    acc[r] += node.prob * expected_simple_regret(instance, &j)?;
                }
            }
            for (r, v) in acc.into_iter().enumerate() {
                values[r].push(v);
            }
            next += 1;
        }
    }

    Ok(ExactCurves {
        checkpoints: checkpoints.to_vec(),
        values,
        leaves: level.values().map(|n| n.paths).sum(),
        states: level.len(),
        total_probability: level.values().map(|n| n.prob).sum(),
    })
}

/// Exact `E r_n` for one allocation/recommendation pair at round `n`, with
/// the default leaf budget.
pub fn exact_expected_simple_regret(
    instance: &BanditInstance,
    allocation: &AllocationStrategy,
    recommendation: &RecommendationStrategy,
    n: u64,
) -> Result<f64> {
    exact_curves(
        instance,
        allocation,
        std::slice::from_ref(recommendation),
        &[n],
        DEFAULT_LEAF_BUDGET,
    )
    .map(|c| c.values[0][0])
}

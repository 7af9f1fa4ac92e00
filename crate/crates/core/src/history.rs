//! Play histories.
//!
//! [`Tally`] keeps the sufficient statistics every strategy in this crate
//! depends on: per-arm pull count and reward sum, accumulated in pull order.
//! [`History`] adds the chronological record and the per-arm reward lists.

use crate::instance::ArmId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmStats {
    pub count: u64,
    pub sum: f64,
    /// `sum / count`, or 0 for an unpulled arm.
    pub mean: f64,
    /// `1 / sqrt(count)`, or +inf for an unpulled arm.
    pub inv_sqrt_count: f64,
}

impl ArmStats {
    pub const EMPTY: ArmStats = ArmStats {
        count: 0,
        sum: 0.0,
        mean: 0.0,
        inv_sqrt_count: f64::INFINITY,
    };

    /// Rebuilds the derived fields from `(count, sum)`. Bitwise identical to
    /// what incremental recording produces for the same sum.
    pub fn from_count_sum(count: u64, sum: f64) -> Self {
        if count == 0 {
            return Self::EMPTY;
        }
        let c = count as f64;
        ArmStats {
            count,
            sum,
            mean: sum / c,
            inv_sqrt_count: 1.0 / c.sqrt(),
        }
    }

    #[inline]
    fn push(&mut self, reward: f64) {
        *self = Self::from_count_sum(self.count + 1, self.sum + reward);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tally {
    arms: Vec<ArmStats>,
    rounds: u64,
}

impl Tally {
    pub fn new(k: usize) -> Self {
        Self {
            arms: vec![ArmStats::EMPTY; k],
            rounds: 0,
        }
    }

    pub fn from_stats(arms: Vec<ArmStats>) -> Self {
        let rounds = arms.iter().map(|s| s.count).sum();
        Self { arms, rounds }
    }

    #[inline]
    pub fn record(&mut self, arm: ArmId, reward: f64) {
        self.arms[arm.index()].push(reward);
        self.rounds += 1;
    }

    pub fn k(&self) -> usize {
        self.arms.len()
    }

    /// Number of rounds played, `n`.
    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn arms(&self) -> &[ArmStats] {
        &self.arms
    }

    pub fn stats(&self, arm: ArmId) -> &ArmStats {
        &self.arms[arm.index()]
    }

    pub fn counts(&self) -> Vec<u64> {
        self.arms.iter().map(|s| s.count).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pull {
    /// 1-based round index `t`.
    pub round: u64,
    pub arm: ArmId,
    pub reward: f64,
}

/// Full record of a finite-armed exploration phase. Single writer.
#[derive(Debug, Clone, PartialEq)]
pub struct History {
    tally: Tally,
    pulls: Vec<Pull>,
    per_arm: Vec<Vec<f64>>,
}

impl History {
    pub fn new(k: usize) -> Self {
        Self {
            tally: Tally::new(k),
            pulls: Vec::new(),
            per_arm: vec![Vec::new(); k],
        }
    }

    /// Appends round `n + 1`.
    pub fn record(&mut self, arm: ArmId, reward: f64) {
        self.tally.record(arm, reward);
        self.pulls.push(Pull {
            round: self.tally.rounds(),
            arm,
            reward,
        });
        self.per_arm[arm.index()].push(reward);
    }

    pub fn k(&self) -> usize {
        self.tally.k()
    }

    pub fn len(&self) -> u64 {
        self.tally.rounds()
    }

    pub fn is_empty(&self) -> bool {
        self.pulls.is_empty()
    }

    pub fn tally(&self) -> &Tally {
        &self.tally
    }

    pub fn pulls(&self) -> &[Pull] {
        &self.pulls
    }

    /// `T_i(n)` for every arm.
    pub fn counts(&self) -> Vec<u64> {
        self.tally.counts()
    }

    /// `X_{i,1..T_i(n)}` in pull order.
    pub fn rewards(&self, arm: ArmId) -> &[f64] {
        &self.per_arm[arm.index()]
    }

    /// The history restricted to its first `rounds` pulls.
    pub fn truncated(&self, rounds: u64) -> History {
        let mut h = History::new(self.k());
        for p in self.pulls.iter().take(rounds as usize) {
            h.record(p.arm, p.reward);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bookkeeping_invariants(k in 2usize..6, pulls in prop::collection::vec((0usize..6, 0.0f64..=1.0), 0..60)) {
            let mut h = History::new(k);
            for &(a, r) in &pulls {
                h.record(ArmId(a % k), r);
            }
            prop_assert_eq!(h.counts().iter().sum::<u64>(), h.len());
            prop_assert_eq!(h.len() as usize, pulls.len());
            for i in 0..k {
                let id = ArmId(i);
                prop_assert_eq!(h.rewards(id).len() as u64, h.tally().stats(id).count);
                let in_order: Vec<f64> = h.pulls().iter().filter(|p| p.arm == id).map(|p| p.reward).collect();
                prop_assert_eq!(h.rewards(id), &in_order[..]);
                let s = h.tally().stats(id);
                prop_assert_eq!(*s, ArmStats::from_count_sum(s.count, s.sum));
            }
            for (j, p) in h.pulls().iter().enumerate() {
                prop_assert_eq!(p.round, j as u64 + 1);
            }
        }
    }

    #[test]
    fn truncation_keeps_prefix() {
        let mut h = History::new(2);
        for (a, r) in [(0, 1.0), (1, 0.0), (0, 0.0), (1, 1.0), (0, 1.0)] {
            h.record(ArmId(a), r);
        }
        let t = h.truncated(4);
        assert_eq!(t.len(), 4);
        assert_eq!(t.counts(), vec![2, 2]);
        assert_eq!(t.rewards(ArmId(0)), &[1.0, 0.0]);
    }
}

use crate::error::{Error, Result};

/// Position `(t, k)` of a round `n = t(t+1)/2 + k`, `0 <= k <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegimePosition {
    pub t: u64,
    pub k: u64,
}

impl RegimePosition {
    pub fn round(self) -> u64 {
        regime_start(self.t) + self.k
    }

    /// Regime starts (`k = 0`) are the exploration rounds.
    pub fn is_start(self) -> bool {
        self.k == 0
    }
}

/// First round of regime `t`, `t(t+1)/2`.
pub fn regime_start(t: u64) -> u64 {
    t * (t + 1) / 2
}

pub fn regime_decompose(n: u64) -> Result<RegimePosition> {
    if n == 0 {
        return Err(Error::InvalidParameter("rounds are numbered from 1".into()));
    }
    // largest t with t(t+1)/2 <= n, i.e. t = floor((sqrt(8n + 1) - 1) / 2)
    let mut t = ((8 * n as u128 + 1).isqrt() as u64 - 1) / 2;
    while regime_start(t + 1) <= n {
        t += 1;
    }
    while regime_start(t) > n {
        t -= 1;
    }
    Ok(RegimePosition {
        t,
        k: n - regime_start(t),
    })
}

/// Number of regime starts among rounds `1..=n`, which is `t(n)`.
pub fn exploration_rounds(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        regime_decompose(n).map(|p| p.t).unwrap_or(0)
    }
}

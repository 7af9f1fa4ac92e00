//! Exact expected simple regret by enumeration, against Monte Carlo.

use pure_explore::oracle::{exact_curves, DEFAULT_LEAF_BUDGET};
use pure_explore::simulator::estimate_curves;
use pure_explore::{AllocationStrategy, BanditInstance, EbaRoundPolicy, RecommendationStrategy};

fn main() -> pure_explore::Result<()> {
    let instance = BanditInstance::bernoulli(&[0.8, 0.5, 0.3])?;
    let alloc = AllocationStrategy::ucb(2.0)?;
    let recs = [
        RecommendationStrategy::Edp,
        RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
        RecommendationStrategy::Mpa,
    ];
    let checkpoints = [3, 6, 9, 12];

    let exact = exact_curves(&instance, &alloc, &recs, &checkpoints, DEFAULT_LEAF_BUDGET)?;
    let mc = estimate_curves(&instance, &alloc, &recs, &checkpoints, 50_000, 3)?;
    println!(
        "{} leaves merged into {} states",
        exact.leaves, exact.states
    );
    for (r, rec) in recs.iter().enumerate() {
        for (c, n) in checkpoints.iter().enumerate() {
            println!(
                "{alloc}+{rec} n={n:>2}: exact {:.5}  mc {:.5} +- {:.5}",
                exact.values[r][c], mc[r].mean[c], mc[r].std_error[c]
            );
        }
    }
    Ok(())
}

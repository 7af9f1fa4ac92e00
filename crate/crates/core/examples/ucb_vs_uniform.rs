//! Monte-Carlo simple-regret curves of the six forecasters on one instance.
//! Uniform allocation ties every count at multiples of K, so MPA then picks
//! arm 1 whatever the rewards.

use pure_explore::simulator::estimate_curves;
use pure_explore::{AllocationStrategy, BanditInstance, EbaRoundPolicy, RecommendationStrategy};

fn main() -> pure_explore::Result<()> {
    let instance = BanditInstance::bernoulli(&[0.4, 0.5, 0.6, 0.5, 0.4])?;
    let checkpoints = [5, 10, 25, 50, 100, 250, 500, 1000];
    let recs = [
        RecommendationStrategy::Edp,
        RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
        RecommendationStrategy::Mpa,
    ];

    print!("{:<18}", "n");
    for n in checkpoints {
        print!("{n:>9}");
    }
    println!();
    for alloc in [AllocationStrategy::Unif, AllocationStrategy::ucb(2.0)?] {
        let curves = estimate_curves(&instance, &alloc, &recs, &checkpoints, 2_000, 7)?;
        for (rec, curve) in recs.iter().zip(&curves) {
            print!("{:<18}", format!("{alloc}+{rec}"));
            for m in &curve.mean {
                print!("{m:>9.4}");
            }
            println!();
        }
    }
    Ok(())
}

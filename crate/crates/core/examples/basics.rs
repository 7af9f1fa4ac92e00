//! One exploration episode by hand: allocate, observe, recommend.

use pure_explore::instance::{cumulative_regret, expected_simple_regret};
use pure_explore::{
    AllocationStrategy, BanditInstance, EbaRoundPolicy, History, RecommendationStrategy, RngStream,
};

fn main() -> pure_explore::Result<()> {
    let instance = BanditInstance::bernoulli(&[0.5, 0.45, 0.3])?;
    let allocation = AllocationStrategy::ucb(2.0)?;
    let mut rng = RngStream::new(42, 0);
    let mut history = History::new(instance.k());

    for t in 1..=200 {
        let arm = allocation.select(history.tally(), t);
        let reward = instance.arm(arm).sample(&mut rng);
        history.record(arm, reward);
    }

    println!("pulls per arm: {:?}", history.counts());
    println!(
        "cumulative regret R_n = {:.3}",
        cumulative_regret(&instance, &history)?
    );
    for rec in [
        RecommendationStrategy::Edp,
        RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
        RecommendationStrategy::Mpa,
    ] {
        let j = rec.recommend(&history)?;
        println!(
            "{rec:>4}: {j:?}  r_n = {:.3}",
            expected_simple_regret(&instance, &j)?
        );
    }
    Ok(())
}

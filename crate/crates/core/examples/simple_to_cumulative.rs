//! A pure-exploration forecaster turned into one with sublinear cumulative
//! regret by the regime schedule.

use pure_explore::continuous::*;
use pure_explore::{AllocationStrategy, EbaRoundPolicy, RecommendationStrategy, RngStream};

fn main() -> pure_explore::Result<()> {
    // two arms at x = 0 and x = 1
    let env = Environment::custom(|x| if x < 0.5 { 0.7 } else { 0.3 }, Noise::Bernoulli);
    let mut base = FiniteArmedX::new(
        vec![0.0, 1.0],
        AllocationStrategy::Unif,
        RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
    )?;
    let trace = simple_to_cumulative(
        &mut base,
        &env,
        &[10, 100, 1_000, 10_000],
        &mut RngStream::new(3, 0),
        Some(0.7),
    )?;
    println!("exploration rounds: {}", trace.exploration_rounds);
    for (n, r) in trace.checkpoints.iter().zip(&trace.cumulative_regret) {
        println!("n = {n:>6}: R'_n = {r:>8.2}  R'_n/n = {:.4}", r / *n as f64);
    }

    // the continuum explorer works as a base too
    let tent = Environment::tent(0.6, 0.1, Noise::Deterministic)?;
    let curve = estimate_wrapper_curve(
        || Ok(RegimeExplorer::new(UniformUnit)),
        &tent,
        &[100, 1_000, 10_000],
        100,
        3,
        None,
    )?;
    println!("tent R'_n/n: {:?}", curve.mean);
    Ok(())
}

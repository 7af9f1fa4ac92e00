//! Regime-based exploration of [0, 1] on a tent-shaped mean payoff.

use pure_explore::continuous::*;
use pure_explore::RngStream;

fn main() -> pure_explore::Result<()> {
    let env = Environment::tent(0.3, 0.2, Noise::Bernoulli)?;

    // one run, step by step
    let mut history = XHistory::new();
    let mut rng = RngStream::new(5, 0);
    for n in 1..=5_000u64 {
        let s = xarmed_allocate(&mut history, n, &UniformUnit, &mut rng)?;
        let x = history.candidates()[s].point;
        history.record(s, env.pull(x, &mut rng)?);
    }
    let x = xarmed_recommend(&history, 5_000)?;
    println!(
        "{} candidates drawn, pool of {}, recommend x = {x:.4} (regret {:.4})",
        history.candidates().len(),
        candidate_pool(5_000),
        x_simple_regret(&env, x, None)?
    );

    // averaged over replicates
    let est = estimate_xarmed_curve(&env, &UniformUnit, &[10, 100, 1_000, 10_000], 300, 5, None)?;
    for (c, n) in est.checkpoints.iter().enumerate() {
        println!(
            "n = {n:>6}: r_n = {:.4} +- {:.4}",
            est.mean[c], est.std_error[c]
        );
    }
    Ok(())
}

//! Twenty arms: one optimal, one close, eighteen far. Uniform against UCB(2)
//! with the empirical best arm, next to the distribution-free bounds.

use pure_explore::bounds::{ucb_mpa_df_bound, unif_eba_df_bound};
use pure_explore::simulator::estimate_curve;
use pure_explore::{AllocationStrategy, BanditInstance, EbaRoundPolicy, RecommendationStrategy};

fn main() -> pure_explore::Result<()> {
    let instance = BanditInstance::a2_scenario(20, 0.2, 0.9)?;
    let eba = RecommendationStrategy::Eba(EbaRoundPolicy::FloorMultipleOfK);
    let checkpoints = [20, 40, 100, 200, 500, 1000, 2000];
    let replicates = 2_000;

    let unif = estimate_curve(
        &instance,
        &AllocationStrategy::Unif,
        &eba,
        &checkpoints,
        replicates,
        1,
    )?;
    let ucb = estimate_curve(
        &instance,
        &AllocationStrategy::ucb(2.0)?,
        &eba,
        &checkpoints,
        replicates,
        1,
    )?;
    println!(
        "{:>6} {:>16} {:>16} {:>10} {:>10}",
        "n", "unif+eba", "ucb(2)+eba", "unif df", "ucb df"
    );
    for (c, &n) in checkpoints.iter().enumerate() {
        // undefined until n > K
        let df = ucb_mpa_df_bound(20, n, 2.0).ok();
        println!(
            "{n:>6} {:>9.4}+-{:.4} {:>9.4}+-{:.4} {:>10.4} {:>10}",
            unif.mean[c],
            unif.std_error[c],
            ucb.mean[c],
            ucb.std_error[c],
            unif_eba_df_bound(20, n)?.value,
            match df {
                Some(b) if b.valid => format!("{:.4}", b.value),
                Some(b) => format!("{:.4}*", b.value),
                None => "-".into(),
            }
        );
    }
    Ok(())
}

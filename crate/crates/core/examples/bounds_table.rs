//! Every closed-form bound on one instance over a grid of rounds.

use pure_explore::bounds::*;
use pure_explore::BanditInstance;

fn show(name: &str, b: pure_explore::Result<BoundValue>) {
    match b {
        Ok(b) => print!(
            "{name:<22}{:>12.4e}{}",
            b.value,
            if b.valid { "  " } else { " *" }
        ),
        Err(_) => print!("{name:<22}{:>14}", "-"),
    }
}

fn main() -> pure_explore::Result<()> {
    let instance = BanditInstance::bernoulli(&[0.9, 0.7, 0.7])?;
    let k = instance.k();
    println!(
        "beta = {:.6}  (* = validity condition not met)",
        beta_weights(&instance)?.beta
    );
    for n in [30u64, 300, 3_000, 30_000, 300_000] {
        println!("n = {n}");
        show("unif_eba_sum", unif_eba_bound_sum(&instance, n));
        show(
            "  unif_eba_mcdiarmid",
            unif_eba_bound_mcdiarmid(&instance, n, 0.5),
        );
        println!();
        show("unif_eba_df", unif_eba_df_bound(k, n));
        show("  ucb_mpa_dd", ucb_mpa_dd_bound(&instance, n, 2.0));
        println!();
        show("ucb_mpa_df", ucb_mpa_df_bound(k, n, 2.0));
        show(
            "  ucb_mpa_weighted",
            ucb_mpa_weighted_bound(&instance, n, 2.0, &[0.4, 0.3, 0.3]),
        );
        println!();
        show("ucb_mpa_beta", ucb_mpa_beta_bound(&instance, n, 2.0));
        show("  edp_df", edp_df_bound(k, n, 2.0));
        println!();
        show("ucb_eba (rho=2)", ucb_eba_bound(&instance, n, 2.0));
        println!("  lower_df{:>26.4e}", lower_bound_df(k, n)?);
    }
    Ok(())
}

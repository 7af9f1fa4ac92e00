//! The experiment runner from a TOML document, CSV to stdout.

use pure_explore::experiment::{parse_config, run_bounds, run_simulate, write_csv};

const CONFIG: &str = r#"
scenario_id = "a2-small"
seed = 2024
horizon = 400
checkpoints = [20, 100, 200, 400]
replicates = 500

[instance]
generator = "a2-scenario"
k = 5
delta = 0.2
mu_star = 0.9

[[allocation]]
name = "unif"

[[allocation]]
name = "ucb"
alpha = 2.0

[[recommendation]]
name = "eba"
round = "floor_multiple_of_k"

[[recommendation]]
name = "mpa"

[bounds]
names = ["unif_eba_sum", "unif_eba_df", "ucb_mpa_df", "lower_df"]
"#;

fn main() -> pure_explore::Result<()> {
    let cfg = parse_config(CONFIG)?;
    let out = std::io::stdout();
    write_csv(&run_simulate(&cfg)?, out.lock())?;
    println!();
    write_csv(&run_bounds(&cfg)?, out.lock())?;
    Ok(())
}

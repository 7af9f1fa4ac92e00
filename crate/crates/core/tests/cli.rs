use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pure_explore::experiment::{
    parse_config, read_csv, run_simulate, serialize_config, BoundRow, OracleRow, SimulateRow,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pure-explore"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const CONFIG: &str = r#"
scenario_id = "cli"
seed = 9
horizon = 60
checkpoints = [3, 30, 60]
replicates = 300

[instance]
arms = [
    { type = "bernoulli", p = 0.5 },
    { type = "bernoulli", p = 0.7 },
    { type = "dirac", value = 0.2 },
]

[[allocation]]
name = "unif"

[[allocation]]
name = "ucb"
alpha = 2.0

[[recommendation]]
name = "edp"

[[recommendation]]
name = "eba"
"#;

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("exp.toml");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn simulate_csv_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = dir.path().join("sim.csv");
    let o = run(&[
        "simulate",
        "--config",
        &cfg,
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<SimulateRow> = read_csv(fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(rows, run_simulate(&parse_config(CONFIG).unwrap()).unwrap());
    assert_eq!(rows.len(), 2 * 2 * 3);
    assert_eq!(rows[3].allocation, "unif");
    assert_eq!(rows[3].recommendation, "eba");
    assert_eq!(rows[6].allocation, "ucb(alpha=2)");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let a = run(&["simulate", "--config", &cfg]);
    let b = bin()
        .args(["simulate", "--config", &cfg])
        .env("PURE_EXPLORE_THREADS", "3")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let a = run(&["simulate", "--config", &cfg]);
    let b = run(&["--seed", "10", "simulate", "--config", &cfg]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn oracle_two_arm_example() {
    let o = run(&[
        "--seed",
        "1",
        "oracle",
        "--instance",
        r#"[{"type":"bernoulli","p":0.5},{"type":"bernoulli","p":1.0}]"#,
        "--allocation",
        "unif",
        "--recommendation",
        "eba",
        "--horizon",
        "2",
        "--checkpoints",
        "2",
    ]);
    assert!(o.status.success());
    let rows: Vec<OracleRow> = read_csv(&o.stdout[..]).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].value, 0.25);
    assert_eq!(rows[0].method, "exact");
}

#[test]
fn oracle_budget_exceeded_fails() {
    let o = run(&[
        "--seed",
        "1",
        "oracle",
        "--instance",
        r#"[{"type":"bernoulli","p":0.5},{"type":"bernoulli","p":0.4}]"#,
        "--allocation",
        "unif",
        "--recommendation",
        "mpa",
        "--horizon",
        "12",
        "--oracle-budget",
        "1000",
    ]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn bounds_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!("{CONFIG}\n[bounds]\nnames = [\"unif_eba_df\", \"lower_df\"]\nn = [2, 3, 100]\n"),
    );
    let o = run(&["bounds", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text.starts_with("scenario_id,bound,n,value,valid\n"));
    let rows: Vec<BoundRow> = read_csv(&o.stdout[..]).unwrap();
    // lower_df is undefined below K = 3
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.valid));
}

#[test]
fn error_exits() {
    let dir = tempfile::tempdir().unwrap();
    let no_seed = write_config(dir.path(), &CONFIG.replace("seed = 9\n", ""));
    let o = run(&["simulate", "--config", &no_seed]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed"));

    let late = write_config(dir.path(), &CONFIG.replace("[3, 30, 60]", "[3, 30, 61]"));
    assert!(!run(&["simulate", "--config", &late]).status.success());

    let o = run(&[
        "--seed",
        "1",
        "xarmed",
        "--env",
        "custom",
        "--horizon",
        "10",
    ]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("library"));

    assert!(!run(&["--seed", "1", "simulate", "--horizon", "10"])
        .status
        .success());
    assert!(!run(&["frobnicate"]).status.success());
}

#[test]
fn single_replicate_is_flagged() {
    let o = run(&[
        "--seed",
        "4",
        "xarmed",
        "--env",
        "tent:a=0.5,rho2=0.25",
        "--horizon",
        "50",
        "--replicates",
        "1",
    ]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("replicates = 1"));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth_back(1) == Some("0.0000000000000000e0")));
}

#[test]
fn config_round_trip_through_file() {
    let cfg = parse_config(CONFIG).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), &serialize_config(&cfg).unwrap());
    assert_eq!(
        parse_config(&fs::read_to_string(path).unwrap()).unwrap(),
        cfg
    );
}

//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Exits zero after reporting so that `cargo test` stays usable while a
//! criterion is red; set `ACCEPTANCE_STRICT=1` to exit nonzero on any FAIL.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pure_explore::bounds::{
    beta_weights, edp_df_bound, lower_bound_df, ucb_mpa_dd_bound, ucb_mpa_df_bound,
    unif_eba_bound_sum, unif_eba_df_bound, BoundValue,
};
use pure_explore::continuous::{
    estimate_wrapper_curve, estimate_xarmed_curve, regime_decompose, Environment, FiniteArmedX,
    Noise, UniformUnit,
};
use pure_explore::instance::{cumulative_regret, expected_simple_regret};
use pure_explore::oracle::{exact_curves, DEFAULT_LEAF_BUDGET};
use pure_explore::simulator::{estimate_curves, CurveEstimate};
use pure_explore::strategy::edp_recommend;
use pure_explore::{
    AllocationStrategy, ArmId, BanditInstance, EbaRoundPolicy, History, RecommendationStrategy,
    RngStream,
};

/// Fixed before any run; never tuned.
const SEED: u64 = 1;

struct Gate {
    failed: Vec<String>,
}

impl Gate {
    fn report(&mut self, name: &str, pass: bool, detail: String) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(name.to_string());
        }
    }
}

fn combined(a: f64, b: f64) -> f64 {
    (a * a + b * b).sqrt()
}

const RECS: [RecommendationStrategy; 3] = [
    RecommendationStrategy::Edp,
    RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
    RecommendationStrategy::Mpa,
];

fn ucb2() -> AllocationStrategy {
    AllocationStrategy::ucb(2.0).unwrap()
}

fn oracle_equivalence(gate: &mut Gate) {
    let params = [0.0, 0.3, 0.5, 0.8, 1.0];
    let checkpoints = [2, 4, 6, 8];
    let mut instances = Vec::new();
    for &a in &params {
        for &b in &params {
            instances.push(vec![a, b]);
            for &c in &params {
                instances.push(vec![a, b, c]);
            }
        }
    }
    instances.retain(|m| m.iter().any(|&x| x != m[0]));

    let start = Instant::now();
    let (mut total, mut bad, mut degenerate) = (0usize, Vec::new(), 0usize);
    for means in &instances {
        let inst = BanditInstance::bernoulli(means).unwrap();
        for alloc in [AllocationStrategy::Unif, ucb2()] {
            let mc = estimate_curves(&inst, &alloc, &RECS, &checkpoints, 100_000, SEED).unwrap();
            let exact =
                exact_curves(&inst, &alloc, &RECS, &checkpoints, DEFAULT_LEAF_BUDGET).unwrap();
            for (r, est) in mc.iter().enumerate() {
                for (c, n) in checkpoints.iter().enumerate() {
                    total += 1;
                    let (m, se, x) = (est.mean[c], est.std_error[c], exact.values[r][c]);
                    if se == 0.0 {
                        degenerate += 1;
                    }
                    // 1e-12 absorbs summation rounding when se = 0
                    if (m - x).abs() > 3.0 * se + 1e-12 {
                        bad.push(format!(
                            "{means:?} {alloc}+{} n={}: mc={m:.6} exact={x:.6} z={:.2}",
                            RECS[r],
                            n,
                            (m - x) / se
                        ));
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    for b in &bad {
        println!("     outside 3 se: {b}");
    }
    let live = total - degenerate;
    gate.report(
        "oracle equivalence",
        bad.is_empty() && secs < 300.0,
        format!(
            "{} instances x 6 pairs x 4 rounds = {total} comparisons, {} outside 3 se \
             ({live} with se > 0, nominal false-alarm count {:.1}), {secs:.1} s",
            instances.len(),
            bad.len(),
            live as f64 * 0.0027
        ),
    );
}

fn edp_identity(gate: &mut Gate) {
    let mut rng = RngStream::new(SEED, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let k = 2 + (rng.unit() * 5.0) as usize;
        let means: Vec<f64> = (0..k).map(|_| rng.unit()).collect();
        let inst = BanditInstance::bernoulli(&means).unwrap();
        let n = 1 + (rng.unit() * 300.0) as usize;
        let mut h = History::new(k);
        for _ in 0..n {
            let arm = ArmId((rng.unit() * k as f64) as usize);
            let reward = inst.arm(arm).sample(&mut rng);
            h.record(arm, reward);
        }
        let lhs = expected_simple_regret(&inst, &edp_recommend(&h).unwrap()).unwrap();
        let rhs = cumulative_regret(&inst, &h).unwrap() / n as f64;
        worst = worst.max((lhs - rhs).abs());
    }
    gate.report(
        "EDP identity",
        worst <= 1e-12,
        format!("100 histories, max |diff| = {worst:.2e}"),
    );
}

struct A2Curves {
    checkpoints: Vec<u64>,
    unif: Vec<CurveEstimate>,
    ucb: Vec<CurveEstimate>,
}

fn a2_curves() -> A2Curves {
    let inst = BanditInstance::a2_scenario(20, 0.2, 0.9).unwrap();
    // multiples of K, so EBA at n and at K floor(n/K) coincide
    let checkpoints = vec![
        20, 40, 80, 200, 500, 1000, 2000, 5000, 10_000, 20_000, 42_680, 45_000,
    ];
    let unif = estimate_curves(
        &inst,
        &AllocationStrategy::Unif,
        &RECS,
        &checkpoints,
        10_000,
        SEED,
    )
    .unwrap();
    let ucb = estimate_curves(&inst, &ucb2(), &RECS, &checkpoints, 10_000, SEED).unwrap();
    A2Curves {
        checkpoints,
        unif,
        ucb,
    }
}

fn bound_dominance(gate: &mut Gate, curves: &A2Curves) {
    let inst = BanditInstance::a2_scenario(20, 0.2, 0.9).unwrap();
    type BoundFn<'a> = Box<dyn Fn(u64) -> Option<BoundValue> + 'a>;
    let cases: Vec<(&str, &CurveEstimate, BoundFn)> = vec![
        (
            "unif_eba_bound_sum vs Unif+EBA",
            &curves.unif[1],
            Box::new(|n| unif_eba_bound_sum(&inst, n).ok()),
        ),
        (
            "unif_eba_df_bound vs Unif+EBA",
            &curves.unif[1],
            Box::new(|n| unif_eba_df_bound(20, n).ok()),
        ),
        (
            "ucb_mpa_dd_bound(2) vs UCB(2)+MPA",
            &curves.ucb[2],
            Box::new(|n| ucb_mpa_dd_bound(&inst, n, 2.0).ok()),
        ),
        (
            "ucb_mpa_df_bound(2) vs UCB(2)+MPA",
            &curves.ucb[2],
            Box::new(|n| ucb_mpa_df_bound(20, n, 2.0).ok()),
        ),
        (
            "edp_df_bound(2) vs UCB(2)+EDP",
            &curves.ucb[0],
            Box::new(|n| edp_df_bound(20, n, 2.0).ok()),
        ),
    ];
    let mut all = true;
    let mut lines = Vec::new();
    for (name, est, bound) in cases {
        let mut checked = 0;
        let mut ok = true;
        let mut tightest = f64::INFINITY;
        for (c, &n) in curves.checkpoints.iter().enumerate() {
            let Some(b) = bound(n).filter(|b| b.valid) else {
                continue;
            };
            checked += 1;
            let lo = est.mean[c] - 3.0 * est.std_error[c];
            tightest = tightest.min(b.value - lo);
            if lo > b.value {
                ok = false;
                println!(
                    "     {name} violated at n={n}: mc-3se={lo:.3e} > bound={:.3e}",
                    b.value
                );
            }
        }
        ok &= checked > 0;
        all &= ok;
        lines.push(format!(
            "{name}: {checked} valid rounds, min slack {tightest:.2e}"
        ));
    }
    for l in &lines {
        println!("     {l}");
    }
    gate.report(
        "bound dominance",
        all,
        "a2 scenario K=20, Delta=0.2, mu*=0.9, 10^4 replicates, every bound checked at >= 1 valid round".into(),
    );
}

fn regime_claim(gate: &mut Gate, curves: &A2Curves) {
    let small = [2u64, 4, 8, 10, 20, 40, 60, 80, 100, 200, 400, 800];
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("regime_crossover.csv");
    let mut csv =
        String::from("instance,allocation,recommendation,n,mean_simple_regret,std_error\n");
    let mut competitive = true;
    let mut notes = Vec::new();
    for (label, means) in [
        ("two-arm delta=0.1", [0.5, 0.4]),
        ("two-arm delta=0.2", [0.5, 0.3]),
    ] {
        let inst = BanditInstance::bernoulli(&means).unwrap();
        let eba = [RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound)];
        let u = &estimate_curves(&inst, &AllocationStrategy::Unif, &eba, &small, 10_000, SEED)
            .unwrap()[0];
        let v = &estimate_curves(&inst, &ucb2(), &eba, &small, 10_000, SEED).unwrap()[0];
        for (alloc, e) in [("unif", u), ("ucb(alpha=2)", v)] {
            for (c, n) in small.iter().enumerate() {
                csv += &format!(
                    "{label},{alloc},eba,{n},{:.16e},{:.16e}\n",
                    e.mean[c], e.std_error[c]
                );
            }
        }
        // at every n <= 80 Unif+EBA is not significantly worse than UCB(2)+EBA
        let mut worst = f64::NEG_INFINITY;
        for (c, &n) in small.iter().enumerate().filter(|(_, &n)| n <= 80) {
            let z = (u.mean[c] - v.mean[c]) / combined(u.std_error[c], v.std_error[c]).max(1e-300);
            worst = worst.max(z);
            if u.mean[c] > v.mean[c] + 2.0 * combined(u.std_error[c], v.std_error[c]) {
                competitive = false;
                notes.push(format!("{label}: Unif+EBA worse at n={n}"));
            }
        }
        notes.push(format!(
            "{label}: max z(unif - ucb) over n <= 80 = {worst:.2}"
        ));
    }
    for (alloc, set) in [("unif", &curves.unif), ("ucb(alpha=2)", &curves.ucb)] {
        for (c, n) in curves.checkpoints.iter().enumerate() {
            let e = &set[1];
            csv += &format!(
                "a2 K=20,{alloc},eba,{n},{:.16e},{:.16e}\n",
                e.mean[c], e.std_error[c]
            );
        }
    }
    fs::write(&path, csv).unwrap();

    let (u, v) = (&curves.unif[1], &curves.ucb[1]);
    let wins: Vec<u64> = curves
        .checkpoints
        .iter()
        .enumerate()
        .filter(|(_, &n)| (200..=2000).contains(&n))
        .filter(|&(c, _)| v.mean[c] + 2.0 * combined(u.std_error[c], v.std_error[c]) < u.mean[c])
        .map(|(_, &n)| n)
        .collect();
    for n in &notes {
        println!("     {n}");
    }
    gate.report(
        "regime claim",
        competitive && !wins.is_empty(),
        format!(
            "small-n Unif+EBA competitive: {competitive}; K=20 UCB(2)+EBA better beyond 2 se at n = {wins:?}; data in {}",
            path.display()
        ),
    );
}

fn formula_goldens(gate: &mut Gate) {
    // recomputed independently (double precision, outside this crate)
    let unif = unif_eba_df_bound(4, 96).unwrap().value;
    let ucb = ucb_mpa_df_bound(2, 100, 2.0).unwrap().value;
    let lower = lower_bound_df(4, 100).unwrap();
    let beta = beta_weights(&BanditInstance::bernoulli(&[0.9, 0.7, 0.7]).unwrap())
        .unwrap()
        .beta;
    let checks = [
        (
            (unif - 0.470964).abs() <= 1e-6,
            format!("unif_eba_df_bound(4,96) = {unif:.9}"),
        ),
        (
            (ucb - 0.867934203).abs() <= 1e-6,
            format!("ucb_mpa_df_bound(2,100,2) = {ucb:.9}"),
        ),
        (lower == 0.01, format!("lower_bound_df(4,100) = {lower}")),
        (
            (beta - 1.0 / 75.0).abs() <= 1e-12,
            format!("beta(0.9,0.7,0.7) = {beta:.15}"),
        ),
    ];
    let pass = checks.iter().all(|c| c.0);
    let detail = checks
        .iter()
        .map(|c| c.1.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    gate.report("formula goldens", pass, detail);
}

fn continuous(gate: &mut Gate) {
    // linear scan: walk the regimes one round at a time
    let (mut t, mut k, mut decompose_ok) = (1u64, 0u64, true);
    for n in 1..=1_000_000u64 {
        let p = regime_decompose(n).unwrap();
        decompose_ok &= p.t == t && p.k == k;
        if k == t {
            t += 1;
            k = 0;
        } else {
            k += 1;
        }
    }

    let tent = Environment::tent(0.3, 0.2, Noise::Deterministic).unwrap();
    let cps = [10, 100, 1000, 10_000];
    let est = estimate_xarmed_curve(&tent, &UniformUnit, &cps, 500, SEED, None).unwrap();
    let tent_ok = (1..cps.len()).all(|i| {
        est.mean[i] <= est.mean[i - 1] + 2.0 * combined(est.std_error[i], est.std_error[i - 1])
    });

    let two_point = Environment::custom(|x| if x < 0.5 { 0.7 } else { 0.3 }, Noise::Bernoulli);
    let make = || {
        FiniteArmedX::new(
            vec![0.0, 1.0],
            AllocationStrategy::Unif,
            RecommendationStrategy::Eba(EbaRoundPolicy::CurrentRound),
        )
    };
    let w =
        estimate_wrapper_curve(make, &two_point, &[50, 200, 800], 500, SEED, Some(0.7)).unwrap();
    let wrap_ok = (1..3)
        .all(|i| w.mean[i] < w.mean[i - 1] + 2.0 * combined(w.std_error[i], w.std_error[i - 1]));

    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.4}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    gate.report(
        "continuous module",
        decompose_ok && tent_ok && wrap_ok,
        format!(
            "decompose n <= 10^6 exact: {decompose_ok}; tent r_n at 10..10^4: {} (se {}); wrapper R'_n/n at 50,200,800: {} (se {})",
            fmt(&est.mean),
            fmt(&est.std_error),
            fmt(&w.mean),
            fmt(&w.std_error)
        ),
    );
}

fn reproducibility(gate: &mut Gate) {
    let bin = env!("CARGO_BIN_EXE_pure-explore");
    let dir = tempfile::tempdir().unwrap();
    let arms = r#"[{"type":"bernoulli","p":0.5},{"type":"bernoulli","p":0.8},{"type":"bernoulli","p":0.3}]"#;
    let runs: [(&str, Vec<&str>); 3] = [
        (
            "simulate",
            vec![
                "simulate",
                "--instance",
                arms,
                "--allocation",
                "unif",
                "--allocation",
                "ucb",
                "--recommendation",
                "edp",
                "--recommendation",
                "eba",
                "--recommendation",
                "mpa",
                "--horizon",
                "300",
                "--replicates",
                "2000",
            ],
        ),
        (
            "oracle",
            vec![
                "oracle",
                "--instance",
                arms,
                "--allocation",
                "ucb",
                "--recommendation",
                "eba",
                "--horizon",
                "9",
            ],
        ),
        (
            "xarmed",
            vec![
                "xarmed",
                "--env",
                "tent:a=0.3,rho2=0.2",
                "--noise",
                "bernoulli",
                "--horizon",
                "2000",
                "--replicates",
                "300",
            ],
        ),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "4"] {
            let out = dir.path().join(format!("{name}-{threads}.csv"));
            let status = Command::new(bin)
                .args([
                    "--seed",
                    "11",
                    "--threads",
                    threads,
                    "--output",
                    out.to_str().unwrap(),
                ])
                .args(args)
                .status()
                .unwrap();
            ok &= status.success();
            outputs.push(fs::read(&out).unwrap_or_default());
        }
        let same = outputs.windows(2).all(|w| w[0] == w[1]) && !outputs[0].is_empty();
        ok &= same;
        detail.push(format!(
            "{name}: {}",
            if same { "identical" } else { "DIFFERENT" }
        ));
    }
    gate.report(
        "reproducibility",
        ok,
        format!("--threads 1/2/4, {}", detail.join(", ")),
    );
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: Vec::new() };
    edp_identity(&mut gate);
    formula_goldens(&mut gate);
    continuous(&mut gate);
    reproducibility(&mut gate);
    oracle_equivalence(&mut gate);
    let curves = a2_curves();
    bound_dominance(&mut gate, &curves);
    regime_claim(&mut gate, &curves);

    if gate.failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: FAILED {}", gate.failed.join(", "));
    }
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !gate.failed.is_empty() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

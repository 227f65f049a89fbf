//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits with a
//! failure status if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ammab::analysis::{
    check_elimination_condition, check_third_term_inequality, compute_nu_star, compute_r,
    optimal_assignment, third_term_sides, RRange,
};
use ammab::environment::{step, Environment};
use ammab::harness::{run_experiment, ExperimentSpec, RegretTrace};
use ammab::model::{cap, Assignment, ConstraintSpec, InstanceConfig};
use ammab::policy::{CautiousGreedy, Policy};
use ammab::solver::{brute_force, solve_forced_support, solve_sequential, SolveRequest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HORIZON: usize = 10_000;
const REPLICATIONS: usize = 50;
const ORACLE_INSTANCES: usize = 1000;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const CONSTANT_REGRET_GROWTH: f64 = 0.10;
const GOOD_RUNS: usize = 100;
const GOOD_HORIZON: usize = 2000;
const GOOD_VIOLATION_RATE: f64 = 0.01;
const R_EXPECTED: f64 = 0.005;
const R_TOL: f64 = 1e-6;
const FUZZ_INSTANCES: usize = 1000;
const ENV_DRAWS: usize = 1_000_000;
const ENV_Z: f64 = 4.0;
const ORACLE_PS: [f64; 3] = [0.05, 0.1, 0.3];

/// Reference `g`, written out independently of the library.
fn g_ref(m: usize, p: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        m as f64 * p * (1.0 - p).powi(m as i32 - 1)
    }
}

fn left(horizon: usize) -> InstanceConfig {
    InstanceConfig::new(30, 0.01, horizon, vec![0.8, 0.5]).unwrap()
}

fn right(horizon: usize) -> InstanceConfig {
    InstanceConfig::new(3, 0.1, horizon, vec![0.99, 0.01]).unwrap()
}

/// `K` in {2,3,4}, `M` in `K..=8`, `p` in {0.05, 0.1, 0.3}, uniform means;
/// infeasible draws are skipped.
fn random_instance(rng: &mut ChaCha8Rng) -> InstanceConfig {
    loop {
        let k = rng.random_range(2..=4);
        let m = rng.random_range(k..=8);
        let p = ORACLE_PS[rng.random_range(0..3)];
        let means = (0..k).map(|_| rng.random::<f64>()).collect();
        if let Ok(inst) = InstanceConfig::new(m, p, 1, means) {
            return inst;
        }
    }
}

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, name: &str, outcome: (bool, String)) {
        let (passed, detail) = outcome;
        println!("{} {name}: {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            self.failed += 1;
        }
    }
}

fn solver_oracle() -> (bool, String) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut mismatches = Vec::new();
    for _ in 0..ORACLE_INSTANCES {
        let inst = random_instance(&mut rng);
        let (m, p) = (inst.players(), inst.p());
        let free = SolveRequest::unconstrained(inst.means().to_vec(), m, p);
        let (fast, exact) = (
            solve_sequential(&free).unwrap(),
            brute_force(&free).unwrap(),
        );
        if free.value(&fast) != free.value(&exact) {
            mismatches.push(format!("unconstrained {:?}", free));
        }
        let forced: Vec<usize> = (0..inst.arms()).filter(|_| rng.random_bool(0.5)).collect();
        let req = SolveRequest::new(inst.means().to_vec(), m, p, ConstraintSpec::forced(forced));
        let (fast, exact) = (
            solve_forced_support(&req).unwrap(),
            brute_force(&req).unwrap(),
        );
        if req.value(&fast) != req.value(&exact) || !req.constraint.admits(&fast) {
            mismatches.push(format!("forced {:?}", req));
        }
    }
    let elapsed = start.elapsed();
    (
        mismatches.is_empty() && elapsed < ORACLE_TIME_LIMIT,
        format!(
            "{ORACLE_INSTANCES} instances, {} mismatches {:?}, {:.2}s (limit {}s)",
            mismatches.len(),
            mismatches.first(),
            elapsed.as_secs_f64(),
            ORACLE_TIME_LIMIT.as_secs()
        ),
    )
}

fn fixed_points() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (inst, expect, nu) in [(left(1), vec![26, 4], 0), (right(1), vec![3, 0], 1)] {
        let opt = optimal_assignment(&inst).unwrap();
        let seq = solve_sequential(&SolveRequest::unconstrained(
            inst.means().to_vec(),
            inst.players(),
            inst.p(),
        ))
        .unwrap();
        let nu_star = compute_nu_star(&inst).unwrap();
        ok &= opt.counts() == expect.as_slice() && seq == opt && nu_star == nu;
        detail.push(format!("M* = {opt}, nu* = {nu_star}"));
    }
    (ok, detail.join("; "))
}

fn finals(trace: &RegretTrace) -> (f64, f64, f64) {
    let f = |name: &str| trace.policy(name).expect("policy present").final_mean();
    (f("cautious-greedy"), f("ucb"), f("etc"))
}

fn fig1_left(trace: &RegretTrace) -> (bool, String) {
    let (cg, ucb, etc) = finals(trace);
    let cg_trace = trace.policy("cautious-greedy").unwrap();
    let half = cg_trace
        .rounds
        .iter()
        .position(|&t| t == HORIZON / 2)
        .unwrap();
    let growth = (cg - cg_trace.mean[half]) / cg_trace.mean[half];
    let ordered = cg < ucb && ucb < etc;
    (
        ordered && growth <= CONSTANT_REGRET_GROWTH,
        format!(
            "CG {cg:.3}, UCB {ucb:.3}, ETC {etc:.3} (need CG < UCB < ETC: {ordered}); \
             CG growth over (T/2, T] {:.1}% (limit {:.0}%)",
            100.0 * growth,
            100.0 * CONSTANT_REGRET_GROWTH
        ),
    )
}

fn fig1_right(trace: &RegretTrace) -> (bool, String) {
    let (cg, ucb, etc) = finals(trace);
    (
        ucb < cg && cg < etc && ucb < etc,
        format!("CG {cg:.3}, UCB {ucb:.3}, ETC {etc:.3} (need UCB < CG, CG < ETC, UCB < ETC)"),
    )
}

fn ucb_bound(traces: &[(InstanceConfig, RegretTrace)]) -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (inst, trace) in traces {
        let (k, t) = (inst.arms() as f64, inst.horizon() as f64);
        let mp = inst.players() as f64 * inst.p();
        let bound =
            2.0 * (2.0 * k * (2.0 * t * t * k * k).ln() * t * k.min(mp + k / t)).sqrt() + 2.0;
        let ucb = trace.policy("ucb").unwrap().final_mean();
        ok &= ucb <= bound;
        detail.push(format!("{ucb:.3} <= {bound:.1}"));
    }
    (ok, detail.join("; "))
}

fn good_conditional() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for inst in [left(GOOD_HORIZON), right(GOOD_HORIZON)] {
        let opt = optimal_assignment(&inst).unwrap();
        let nu_star = opt.zero_arms();
        let (mut not_good, mut broken) = (0, 0);
        for seed in 0..GOOD_RUNS as u64 {
            let mut cg = CautiousGreedy::new(inst.clone());
            let mut env = Environment::new(inst.clone(), seed);
            let (mut good, mut invariants) = (true, true);
            for t in 1..=inst.horizon() {
                let a = cg.choose(t).unwrap();
                let out = env.step(&a);
                cg.observe(t, &out).unwrap();
                let s = cg.state();
                good &= s.stats.within_radius(inst.means());
                invariants &= s.nu <= nu_star && opt.support().iter().all(|&k| s.active[k]);
            }
            if !good {
                not_good += 1;
            } else if !invariants {
                broken += 1;
            }
        }
        let rate = not_good as f64 / GOOD_RUNS as f64;
        ok &= broken == 0 && rate <= GOOD_VIOLATION_RATE;
        detail.push(format!(
            "M* = {opt}: {broken} GOOD traces break an invariant, radius violated in {not_good}/{GOOD_RUNS}"
        ));
    }
    (ok, detail.join("; "))
}

fn r_closed_form() -> (bool, String) {
    let inst = InstanceConfig::new(5, 0.1, 1, vec![0.5, 0.51]).unwrap();
    let r = compute_r(&inst, 1e-9, RRange::ZeroToNuStar).unwrap();
    (
        (r - R_EXPECTED).abs() <= R_TOL,
        format!("r = {r:.9}, expected {R_EXPECTED} +/- {R_TOL:e}"),
    )
}

/// Instances aimed at the region where the elimination condition can hold:
/// `p <= 0.1`, `alpha = M p / K` in `(2p, 1)` and means within the threshold ratio.
fn elimination_candidate(rng: &mut ChaCha8Rng) -> InstanceConfig {
    loop {
        let k = rng.random_range(2..=4);
        let p = [0.01, 0.02, 0.05, 0.1][rng.random_range(0..4)];
        let lo = (2.0 * k as f64).floor() as usize + 1;
        let hi = ((k as f64 / p).ceil() as usize - 1).min(k * cap(p)).min(60);
        if lo > hi {
            continue;
        }
        let m = rng.random_range(lo..=hi);
        let alpha = m as f64 * p / k as f64;
        let threshold = 1.3 * (-alpha).exp() * (1.0 - alpha);
        let top: f64 = rng.random_range(0.05..=1.0);
        let means = (0..k)
            .map(|_| top * rng.random_range(threshold.min(1.0)..=1.0))
            .collect();
        let inst = InstanceConfig::new(m, p, 1, means).unwrap();
        if check_elimination_condition(&inst) {
            return inst;
        }
    }
}

fn lemma_fuzz() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut held) = (0, 0);
    let mut first_counterexample = None;
    while checked < FUZZ_INSTANCES {
        let inst = random_instance(&mut rng);
        if compute_nu_star(&inst).unwrap() == 0 {
            continue;
        }
        checked += 1;
        if check_third_term_inequality(&inst).unwrap() {
            held += 1;
        } else if first_counterexample.is_none() {
            let (lhs, rhs) = third_term_sides(&inst).unwrap();
            first_counterexample = Some(format!(
                "mu = {:?}, M = {}, p = {}: {lhs:.5} < {rhs:.5}",
                inst.means(),
                inst.players(),
                inst.p()
            ));
        }
    }
    let mut elim_held = 0;
    for _ in 0..FUZZ_INSTANCES {
        let inst = elimination_candidate(&mut rng);
        elim_held += usize::from(compute_nu_star(&inst).unwrap() == 0);
    }
    (
        held == FUZZ_INSTANCES && elim_held == FUZZ_INSTANCES,
        format!(
            "third-term inequality held on {held}/{FUZZ_INSTANCES} (first counterexample {}); \
             elimination condition => nu* = 0 on {elim_held}/{FUZZ_INSTANCES}",
            first_counterexample.unwrap_or_else(|| "none".into())
        ),
    )
}

fn environment_calibration() -> (bool, String) {
    let p = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    for m in 1..=cap(p) {
        let a = Assignment::new(vec![m]);
        let hits = (0..ENV_DRAWS)
            .filter(|_| step(&a, &[0.5], p, &mut rng).eta[0])
            .count();
        let expected = g_ref(m, p);
        let se = (expected * (1.0 - expected) / ENV_DRAWS as f64).sqrt();
        worst = worst.max((hits as f64 / ENV_DRAWS as f64 - expected).abs() / se);
    }
    (
        worst <= ENV_Z,
        format!(
            "max |z| = {worst:.2} over m = 1..={} (limit {ENV_Z})",
            cap(p)
        ),
    )
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    gate.check("solver-oracle-equivalence", solver_oracle());
    gate.check("fixed-points", fixed_points());

    let traces: Vec<(InstanceConfig, RegretTrace)> = [left(HORIZON), right(HORIZON)]
        .into_iter()
        .map(|inst| {
            let mut spec = ExperimentSpec::new(inst.clone());
            spec.replications = REPLICATIONS;
            let trace = run_experiment(&spec).unwrap();
            (inst, trace)
        })
        .collect();
    gate.check("fig1-left", fig1_left(&traces[0].1));
    gate.check("fig1-right", fig1_right(&traces[1].1));
    gate.check("ucb-regret-bound", ucb_bound(&traces));
    gate.check("good-conditional-invariants", good_conditional());
    gate.check("r-closed-form", r_closed_form());
    gate.check("lemma-fuzz", lemma_fuzz());
    gate.check("environment-calibration", environment_calibration());

    if gate.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}

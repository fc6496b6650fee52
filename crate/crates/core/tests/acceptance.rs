//! The claims this crate stands behind, one test per criterion. Each
//! test prints a single `criterion N (...): PASS|FAIL` line (visible
//! under `cargo test -- --nocapture`) and then asserts, so a red build
//! always names the broken promise.
//!
//! The statistical criteria (3, 4, 5, 9) run fixed seeded grids; they
//! check envelopes chosen to hold with margin across seeds, not exact
//! table values. A shared mutex serializes the tests so the per-criterion
//! wall-clock budgets are measured without CPU contention from siblings.

use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use coverlife_core::{
    enumerate_minimal_covers, epsilon_for_w, exact_optimum, generate, is_cover,
    lp_optimal_lifetime, run_experiment, run_gk, run_greedy, upper_bound, validate_schedule,
    w_for_epsilon, CoverageMatrix, ExperimentResult, ExperimentSpec, GenConfig, Generator,
    GkConfig, GreedyConfig, Instance, SensorCover, DEFAULT_COVER_LIMIT, DEFAULT_TOLERANCE,
};

static GATE: Mutex<()> = Mutex::new(());

fn serialize() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn report(n: u32, name: &str, pass: bool) {
    println!("criterion {n} ({name}): {}", if pass { "PASS" } else { "FAIL" });
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// A cover is minimal iff removing any one member uncovers some target.
fn is_minimal(m: &CoverageMatrix, cover: &SensorCover) -> bool {
    is_cover(m, cover)
        && cover.iter().all(|out| {
            let rest: Vec<usize> = cover.iter().filter(|&i| i != out).collect();
            rest.is_empty() || !is_cover(m, &SensorCover::new(rest).unwrap())
        })
}

// ---------------------------------------------------------------------
// shared fixture: 200 small instances, every solver, oracle alongside
// ---------------------------------------------------------------------

struct SmallRuns {
    wall: Duration,
    instances: usize,
    /// one entry per sandwich violation — empty means criterion 1 holds
    failures: Vec<String>,
    /// minimality of every schedule cover, in deterministic run order
    cover_minimal: Vec<bool>,
}

static SMALL_RUNS: OnceLock<SmallRuns> = OnceLock::new();

/// Deterministic skip-and-redraw: seeds are consumed in order 0,1,2,…
/// and a draw is kept only when it is feasible and every target has at
/// least two covering sensors (so minimality checks have teeth).
fn small_runs() -> &'static SmallRuns {
    SMALL_RUNS.get_or_init(|| {
        let started = Instant::now();
        let mut failures = Vec::new();
        let mut cover_minimal = Vec::new();
        let mut accepted = 0usize;
        let mut seed = 0u64;
        while accepted < 200 {
            assert!(seed < 20_000, "seed scan failed to find 200 usable draws");
            let config = GenConfig {
                n_sensors: 6 + accepted % 7,
                n_targets: 4 + accepted % 5,
                sensor_area: 12.0,
                target_area: 8.0,
                range: 5.0,
                seed,
                max_resamples: 0,
            };
            seed += 1;
            let Ok(instance) = generate(&config) else {
                continue;
            };
            let matrix = CoverageMatrix::build(&instance).expect("generate returned feasible");
            if (0..matrix.n_targets()).any(|j| matrix.col(j).len() < 2) {
                continue;
            }
            accepted += 1;
            run_instance(&instance, &matrix, &mut failures, &mut cover_minimal);
        }
        SmallRuns {
            wall: started.elapsed(),
            instances: accepted,
            failures,
            cover_minimal,
        }
    })
}

fn run_instance(
    instance: &Instance,
    matrix: &CoverageMatrix,
    failures: &mut Vec<String>,
    cover_minimal: &mut Vec<bool>,
) {
    let battery = instance.battery();
    let optimum = exact_optimum(matrix, battery, DEFAULT_COVER_LIMIT)
        .expect("small instances stay under the cover limit")
        .objective;
    let ub = upper_bound(matrix, battery);
    if optimum > ub + 1e-6 {
        failures.push(format!("optimum {optimum} exceeds upper bound {ub}"));
    }
    for w in [1.0, 0.25, 0.01] {
        let mut results = Vec::new();
        for generator in [Generator::Hef, Generator::Cardei, Generator::Bgop] {
            let config = GreedyConfig::new(generator, w).unwrap();
            results.push((format!("{generator:?}"), run_greedy(matrix, battery, &config)));
        }
        let epsilon = epsilon_for_w(w, matrix.n_sensors()).expect("w reachable at this n");
        let gk = run_gk(matrix, battery, &GkConfig::new(epsilon).unwrap());
        results.push(("Gk".into(), gk));
        for (name, result) in results {
            let total = result.schedule.total_lifetime();
            let verdict = validate_schedule(matrix, battery, &result.schedule, DEFAULT_TOLERANCE);
            if !verdict.pass {
                failures.push(format!("{name} w={w}: schedule failed validation"));
            }
            if total > optimum + 1e-6 {
                failures.push(format!(
                    "{name} w={w}: lifetime {total} exceeds optimum {optimum}"
                ));
            }
            for entry in result.schedule.entries() {
                cover_minimal.push(is_minimal(matrix, &entry.cover));
            }
        }
    }
}

// ---------------------------------------------------------------------
// shared fixture: the experiment-1 grid at the two extreme w values
// ---------------------------------------------------------------------

struct Exp1Data {
    spec: ExperimentSpec,
    result: ExperimentResult,
    wall: Duration,
}

static EXP1: OnceLock<Exp1Data> = OnceLock::new();

fn exp1_data() -> &'static Exp1Data {
    EXP1.get_or_init(|| {
        let mut spec = ExperimentSpec::preset(1, 42, PathBuf::from("unused")).unwrap();
        spec.w_grid = vec![1.0, 0.002];
        spec.zero_timing = true;
        let started = Instant::now();
        let result = run_experiment(&spec).expect("experiment grid runs");
        Exp1Data {
            spec,
            result,
            wall: started.elapsed(),
        }
    })
}

fn cell_mean(data: &Exp1Data, algorithm: &str, w: f64, n_targets: usize) -> f64 {
    let values: Vec<f64> = data
        .result
        .records
        .iter()
        .filter(|r| {
            r.algorithm == algorithm && (r.w - w).abs() < 1e-12 && r.n_targets == n_targets
        })
        .map(|r| r.lifetime)
        .collect();
    assert_eq!(values.len(), data.spec.replications);
    mean(&values)
}

// ---------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------

#[test]
fn criterion_1_oracle_sandwich() {
    let _gate = serialize();
    let data = small_runs();
    let within_budget = data.wall < Duration::from_secs(60);
    let pass = data.failures.is_empty() && data.instances == 200 && within_budget;
    report(1, "oracle sandwich", pass);
    assert!(
        data.failures.is_empty(),
        "sandwich violations: {:?}",
        &data.failures[..data.failures.len().min(5)]
    );
    assert!(
        within_budget,
        "200 instances took {:?}, budget is 60s",
        data.wall
    );
}

#[test]
fn criterion_2_triangle_exactness() {
    let _gate = serialize();
    let matrix = CoverageMatrix::from_sets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let battery = vec![1.0; 3];

    let half = run_greedy(
        &matrix,
        &battery,
        &GreedyConfig::new(Generator::Hef, 0.5).unwrap(),
    )
    .schedule
    .total_lifetime();
    let whole = run_greedy(
        &matrix,
        &battery,
        &GreedyConfig::new(Generator::Hef, 1.0).unwrap(),
    )
    .schedule
    .total_lifetime();
    let lp = lp_optimal_lifetime(
        &enumerate_minimal_covers(&matrix, DEFAULT_COVER_LIMIT).unwrap(),
        &battery,
    )
    .objective;

    let pass = (half - 1.5).abs() <= 1e-9 && (whole - 1.0).abs() <= 1e-9 && (lp - 1.5).abs() <= 1e-7;
    report(2, "triangle exactness", pass);
    assert!((half - 1.5).abs() <= 1e-9, "hef w=0.5 gave {half}, want 1.5");
    assert!((whole - 1.0).abs() <= 1e-9, "hef w=1 gave {whole}, want 1.0");
    assert!((lp - 1.5).abs() <= 1e-7, "lp optimum gave {lp}, want 1.5");
}

#[test]
fn criterion_3_hef_dominates_at_w1() {
    let _gate = serialize();
    let data = exp1_data();
    let mut violations = Vec::new();
    for &m in &data.spec.target_counts {
        let hef = cell_mean(data, "hef", 1.0, m);
        let cardei = cell_mean(data, "cardei", 1.0, m);
        if hef < cardei {
            violations.push(format!("m={m}: hef {hef:.3} < cardei {cardei:.3}"));
        }
    }
    let within_budget = data.wall < Duration::from_secs(300);
    let pass = violations.is_empty() && within_budget;
    report(3, "hef dominates at w=1", pass);
    assert!(violations.is_empty(), "{violations:?}");
    assert!(within_budget, "grid took {:?}, budget is 300s", data.wall);
}

#[test]
fn criterion_4_w_sensitivity() {
    let _gate = serialize();
    let data = exp1_data();
    let mut worst: (f64, String) = (0.0, String::new());
    for algorithm in ["hef", "cardei"] {
        for &m in &data.spec.target_counts {
            let coarse = cell_mean(data, algorithm, 1.0, m);
            let fine = cell_mean(data, algorithm, 0.002, m);
            let sensitivity = 100.0 * (fine - coarse).abs() / coarse;
            if sensitivity > worst.0 {
                worst = (sensitivity, format!("{algorithm} m={m}"));
            }
        }
    }
    let pass = worst.0 <= 5.0;
    report(4, "w sensitivity within 5%", pass);
    assert!(
        pass,
        "largest lifetime shift between w=1 and w=0.002 is {:.2}% ({}), bound is 5%",
        worst.0, worst.1
    );
}

#[test]
fn criterion_5_gap_envelopes() {
    let _gate = serialize();
    let data = exp1_data();
    let gap = |algorithm: &str, w: f64| -> f64 {
        let values: Vec<f64> = data
            .result
            .records
            .iter()
            .filter(|r| r.algorithm == algorithm && (r.w - w).abs() < 1e-12)
            .map(|r| r.gap_pct)
            .collect();
        mean(&values)
    };
    let cardei_coarse = gap("cardei", 1.0);
    let hef_fine = gap("hef", 0.002);
    let pass = cardei_coarse <= 15.0 && hef_fine <= 5.0;
    report(5, "upper-bound gap envelopes", pass);
    assert!(
        cardei_coarse <= 15.0,
        "cardei w=1 mean gap {cardei_coarse:.2}% exceeds 15%"
    );
    assert!(
        hef_fine <= 5.0,
        "hef w=0.002 mean gap {hef_fine:.2}% exceeds 5%"
    );
}

#[test]
fn criterion_6_epsilon_w_mapping() {
    let _gate = serialize();
    let first = w_for_epsilon(0.104, 150).unwrap();
    let second = w_for_epsilon(0.25, 150).unwrap();
    let mut worst_round_trip: f64 = 0.0;
    for i in 0..20 {
        let epsilon = 0.05 + (i as f64) * (0.95 - 0.05) / 19.0;
        let w = w_for_epsilon(epsilon, 150).unwrap();
        let back = epsilon_for_w(w, 150).unwrap();
        let again = w_for_epsilon(back, 150).unwrap();
        worst_round_trip = worst_round_trip.max((back - epsilon).abs()).max((again - w).abs());
    }
    let pass = (first - 0.002).abs() <= 5e-4
        && (second - 0.01).abs() <= 1e-3
        && worst_round_trip <= 1e-8;
    report(6, "epsilon-w mapping", pass);
    assert!(
        (first - 0.002).abs() <= 5e-4,
        "w(0.104, 150) = {first}, want 0.002 +/- 5e-4"
    );
    assert!(
        (second - 0.01).abs() <= 1e-3,
        "w(0.25, 150) = {second}, want 0.01 +/- 1e-3"
    );
    assert!(
        worst_round_trip <= 1e-8,
        "round-trip error {worst_round_trip} exceeds 1e-8"
    );
}

// criterion 7 (byte-identical CLI reruns) lives in the coverlife binary's
// own acceptance tests, where the compiled executable is available.

#[test]
fn criterion_8_minimality_audit() {
    let _gate = serialize();
    let data = small_runs();
    let audited = data.cover_minimal.len().min(1000);
    let violations = data.cover_minimal[..audited]
        .iter()
        .filter(|&&ok| !ok)
        .count();
    let pass = audited == 1000 && violations == 0;
    report(8, "cover minimality audit", pass);
    assert_eq!(
        audited, 1000,
        "only {audited} covers available for the audit"
    );
    assert_eq!(violations, 0, "{violations} of {audited} covers not minimal");
}

#[test]
fn criterion_9_lifetime_grows_with_density() {
    let _gate = serialize();
    let mut spec = ExperimentSpec::preset(4, 42, PathBuf::from("unused")).unwrap();
    spec.algorithms = vec![coverlife_core::Algorithm::Hef];
    spec.sensor_counts = vec![20, 50, 100, 150];
    spec.zero_timing = true;
    let started = Instant::now();
    let result = run_experiment(&spec).expect("experiment grid runs");
    let wall = started.elapsed();

    let means: Vec<f64> = spec
        .sensor_counts
        .iter()
        .map(|&n| {
            let values: Vec<f64> = result
                .records
                .iter()
                .filter(|r| r.n_sensors == n)
                .map(|r| r.lifetime)
                .collect();
            assert_eq!(values.len(), spec.replications);
            mean(&values)
        })
        .collect();

    let mut inversions = 0usize;
    let mut worst_drop = 0.0f64;
    for pair in means.windows(2) {
        if pair[1] < pair[0] {
            inversions += 1;
            worst_drop = worst_drop.max(100.0 * (pair[0] - pair[1]) / pair[0]);
        }
    }
    let within_budget = wall < Duration::from_secs(180);
    let pass = inversions <= 1 && worst_drop <= 2.0 && within_budget;
    report(9, "lifetime grows with sensor count", pass);
    assert!(
        inversions <= 1 && worst_drop <= 2.0,
        "means {means:?}: {inversions} inversions, worst drop {worst_drop:.2}%"
    );
    assert!(within_budget, "grid took {wall:?}, budget is 180s");
}

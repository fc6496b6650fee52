//! Experiment driver: grid runs over generated instances, per-run records,
//! per-cell aggregates, and deterministic CSV / plot-data emission.
//!
//! Four preset experiments mirror the classic evaluation layout for this
//! problem family:
//!
//! 1. `hef` vs `cardei` across the full w grid, 150 sensors, 20..90
//!    targets;
//! 2. the same grid with the packing baseline `gk` joined in, at the two
//!    conventional (ε, w) comparison points w ∈ {0.002, 0.01};
//! 3. `hef` vs `cardei` vs `bgop` at w = 1;
//! 4. sensor-count sweep 20..150 at 25 targets, w = 1.
//!
//! Determinism is a hard requirement: a spec plus a base seed fully
//! determines every emitted byte (the wall-clock runtime column aside,
//! which `zero_timing` blanks for golden comparisons). Replications run
//! in parallel under rayon, capped by the `COVERLIFE_THREADS` environment
//! variable, and are reassembled in grid order before emission so thread
//! scheduling never leaks into the output.
//!
//! Note on geometry: experiment presets use a sensing range of 600 m on
//! the 1000 m × 1000 m field, with targets in the centered 300 m square.
//! At that density a 150-sensor network covers each target with dozens
//! of sensors, upper bounds sit near 0.8·n, and the coverage depth varies
//! enough across targets that the generator policies genuinely part ways
//! — `hef` stays within a few percent of the upper bound at every w while
//! coarser policies trail it. The sparse default of [`GenConfig`]
//! (range 70 m) leaves most grid cells infeasible and is only useful for
//! single instances at moderate target counts.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::gk::{epsilon_for_w, run_gk, GkConfig, GkError};
use crate::greedy::{run_greedy, Generator, GreedyConfig, GreedyError, SolveResult};
use crate::instance_gen::{generate, GenConfig, GenError, SplitMix64};
use crate::model::{
    upper_bound, validate_schedule, CoverageMatrix, ModelError, DEFAULT_TOLERANCE,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Generation(#[from] GenError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Greedy(#[from] GreedyError),
    #[error(transparent)]
    Gk(#[from] GkError),
    #[error("{algorithm} (w={w}, seed={seed}) produced an invalid schedule; this is a bug")]
    ScheduleInvalid {
        algorithm: &'static str,
        w: f64,
        seed: u64,
    },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Solver selector as exposed on the command line. `Naive` is the
/// first-fit generator pinned to w = 1 (the classic one-shot greedy);
/// all others honor the requested w, with `Gk` translating it to ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Hef,
    Cardei,
    Bgop,
    Gk,
    Naive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Hef,
        Algorithm::Cardei,
        Algorithm::Bgop,
        Algorithm::Gk,
        Algorithm::Naive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Hef => "hef",
            Algorithm::Cardei => "cardei",
            Algorithm::Bgop => "bgop",
            Algorithm::Gk => "gk",
            Algorithm::Naive => "naive",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm '{s}' (try hef, cardei, bgop, gk, naive)"))
    }
}

/// Full description of an experiment run; [`ExperimentSpec::preset`]
/// fills one in for the four standard experiments.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub id: u8,
    pub algorithms: Vec<Algorithm>,
    pub w_grid: Vec<f64>,
    pub sensor_counts: Vec<usize>,
    pub target_counts: Vec<usize>,
    pub replications: usize,
    pub base_seed: u64,
    pub sensor_area: f64,
    pub target_area: f64,
    pub range: f64,
    pub max_resamples: u32,
    /// Report runtime_ms as 0.0, making output bytes reproducible.
    pub zero_timing: bool,
    pub out_dir: PathBuf,
}

/// The full w grid used by experiment 1.
pub const DEFAULT_W_GRID: [f64; 6] = [1.0, 0.5, 0.25, 0.025, 0.01, 0.002];

impl ExperimentSpec {
    pub fn preset(id: u8, base_seed: u64, out_dir: PathBuf) -> Result<Self, HarnessError> {
        let targets_sweep: Vec<usize> = (20..=90).step_by(10).collect();
        let (algorithms, w_grid, sensor_counts, target_counts) = match id {
            1 => (
                vec![Algorithm::Hef, Algorithm::Cardei],
                DEFAULT_W_GRID.to_vec(),
                vec![150],
                targets_sweep,
            ),
            2 => (
                vec![Algorithm::Hef, Algorithm::Cardei, Algorithm::Gk],
                vec![0.002, 0.01],
                vec![150],
                targets_sweep,
            ),
            3 => (
                vec![Algorithm::Hef, Algorithm::Cardei, Algorithm::Bgop],
                vec![1.0],
                vec![150],
                targets_sweep,
            ),
            4 => (
                vec![Algorithm::Hef, Algorithm::Cardei, Algorithm::Bgop],
                vec![1.0],
                (20..=150).step_by(10).collect(),
                vec![25],
            ),
            _ => {
                return Err(HarnessError::InvalidSpec(format!(
                    "experiment id must be 1..=4, got {id}"
                )))
            }
        };
        Ok(ExperimentSpec {
            id,
            algorithms,
            w_grid,
            sensor_counts,
            target_counts,
            replications: 15,
            base_seed,
            sensor_area: 1000.0,
            target_area: 300.0,
            range: 600.0,
            max_resamples: 10_000,
            zero_timing: false,
            out_dir,
        })
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.algorithms.is_empty() {
            return Err(HarnessError::InvalidSpec("no algorithms".into()));
        }
        if self.w_grid.is_empty() {
            return Err(HarnessError::InvalidSpec("empty w grid".into()));
        }
        for &w in &self.w_grid {
            if !w.is_finite() || w <= 0.0 || w > 1.0 {
                return Err(HarnessError::InvalidSpec(format!(
                    "w must lie in (0, 1], got {w}"
                )));
            }
        }
        if self.sensor_counts.is_empty() || self.target_counts.is_empty() {
            return Err(HarnessError::InvalidSpec("empty grid axis".into()));
        }
        if self.replications == 0 {
            return Err(HarnessError::InvalidSpec("replications must be >= 1".into()));
        }
        Ok(())
    }

    fn records_per_replication(&self) -> usize {
        self.algorithms.len() * self.w_grid.len()
    }
}

/// One solver execution on one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: &'static str,
    pub w: f64,
    /// Derived ε, present only for `gk` rows.
    pub epsilon: Option<f64>,
    pub n_sensors: usize,
    pub n_targets: usize,
    pub seed: u64,
    pub lifetime: f64,
    pub upper_bound: f64,
    pub gap_pct: f64,
    pub covers_generated: usize,
    pub runtime_ms: f64,
}

/// Per grid cell, per algorithm, per w: statistics over the replications.
/// `min`/`max`/`spread_pct` are the classic A / B / C columns
/// (C = (B − A)/mean·100).
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub algorithm: &'static str,
    pub w: f64,
    pub n_sensors: usize,
    pub n_targets: usize,
    pub mean_lifetime: f64,
    pub min_lifetime: f64,
    pub max_lifetime: f64,
    pub spread_pct: f64,
    pub mean_upper_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<AggregateRow>,
}

/// Instance seed for a grid cell and replication: the indices are folded
/// into the base seed one at a time through the PRNG's avalanche step, so
/// neighboring cells get uncorrelated streams.
pub fn derive_seed(base_seed: u64, sensor_idx: usize, target_idx: usize, rep: usize) -> u64 {
    let mut x = base_seed;
    for v in [sensor_idx as u64, target_idx as u64, rep as u64] {
        x = SplitMix64::new(x ^ v).next_u64();
    }
    x
}

/// Run one algorithm on a prepared instance. Returns the solver result
/// and, for `gk`, the ε its w was translated to.
pub fn solve_one(
    m: &CoverageMatrix,
    battery: &[f64],
    algorithm: Algorithm,
    w: f64,
) -> Result<(SolveResult, Option<f64>), HarnessError> {
    let generator = match algorithm {
        Algorithm::Hef => Generator::Hef,
        Algorithm::Cardei => Generator::Cardei,
        Algorithm::Bgop => Generator::Bgop,
        Algorithm::Naive => Generator::FirstFit,
        Algorithm::Gk => {
            let epsilon = epsilon_for_w(w, m.n_sensors())?;
            let config = GkConfig::new(epsilon)?;
            return Ok((run_gk(m, battery, &config), Some(epsilon)));
        }
    };
    let w = match algorithm {
        Algorithm::Naive => 1.0, // first-fit is pinned to one-shot covers
        _ => w,
    };
    let config = GreedyConfig::new(generator, w)?;
    Ok((run_greedy(m, battery, &config), None))
}

/// The w actually used by an algorithm when asked for `w` (naive ignores
/// the request).
pub fn effective_w(algorithm: Algorithm, w: f64) -> f64 {
    match algorithm {
        Algorithm::Naive => 1.0,
        _ => w,
    }
}

/// Parse a thread-cap string (the `COVERLIFE_THREADS` value); `None` on
/// anything that is not a positive integer.
pub fn parse_thread_cap(raw: Option<&str>) -> Option<usize> {
    raw?.trim().parse::<usize>().ok().filter(|&t| t >= 1)
}

fn thread_count() -> usize {
    parse_thread_cap(std::env::var("COVERLIFE_THREADS").ok().as_deref()).unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

/// Execute the full grid: generate, solve, validate, record, aggregate.
/// Record order is grid-major (sensor count, target count, replication,
/// algorithm, w) regardless of parallel execution.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult, HarnessError> {
    use rayon::prelude::*;

    spec.validate()?;
    let n_cells = spec.sensor_counts.len() * spec.target_counts.len();
    let jobs: Vec<(usize, usize)> = (0..n_cells)
        .flat_map(|ci| (0..spec.replications).map(move |rep| (ci, rep)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let blocks: Vec<Vec<RunRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(ci, rep)| run_replication(spec, ci, rep))
            .collect::<Result<_, _>>()
    })?;
    let records: Vec<RunRecord> = blocks.into_iter().flatten().collect();

    let aggregates = aggregate(spec, &records);
    Ok(ExperimentResult {
        records,
        aggregates,
    })
}

fn run_replication(
    spec: &ExperimentSpec,
    cell_idx: usize,
    rep: usize,
) -> Result<Vec<RunRecord>, HarnessError> {
    let n_t = spec.target_counts.len();
    let (si, ti) = (cell_idx / n_t, cell_idx % n_t);
    let (n_sensors, n_targets) = (spec.sensor_counts[si], spec.target_counts[ti]);
    let seed = derive_seed(spec.base_seed, si, ti, rep);

    let mut gen_cfg = GenConfig::new(n_sensors, n_targets, seed);
    gen_cfg.sensor_area = spec.sensor_area;
    gen_cfg.target_area = spec.target_area;
    gen_cfg.range = spec.range;
    gen_cfg.max_resamples = spec.max_resamples;
    let inst = generate(&gen_cfg)?;
    let matrix = CoverageMatrix::build(&inst)?;
    let u = upper_bound(&matrix, inst.battery());

    let mut out = Vec::with_capacity(spec.records_per_replication());
    for &algorithm in &spec.algorithms {
        for &w in &spec.w_grid {
            let t0 = Instant::now();
            let (result, epsilon) = solve_one(&matrix, inst.battery(), algorithm, w)?;
            let runtime_ms = if spec.zero_timing {
                0.0
            } else {
                t0.elapsed().as_secs_f64() * 1e3
            };
            let report =
                validate_schedule(&matrix, inst.battery(), &result.schedule, DEFAULT_TOLERANCE);
            if !report.pass {
                return Err(HarnessError::ScheduleInvalid {
                    algorithm: algorithm.name(),
                    w,
                    seed,
                });
            }
            let lifetime = result.schedule.total_lifetime();
            let gap_pct = if u > 0.0 { 100.0 * (u - lifetime) / u } else { 0.0 };
            out.push(RunRecord {
                algorithm: algorithm.name(),
                w: effective_w(algorithm, w),
                epsilon,
                n_sensors,
                n_targets,
                seed,
                lifetime,
                upper_bound: u,
                gap_pct,
                covers_generated: result.covers_generated,
                runtime_ms,
            });
        }
    }
    Ok(out)
}

/// The Tables' spread column: range of the replication lifetimes as a
/// percentage of their mean.
pub fn spread_pct(min: f64, max: f64, mean: f64) -> f64 {
    if mean > 0.0 {
        (max - min) / mean * 100.0
    } else {
        0.0
    }
}

fn aggregate(spec: &ExperimentSpec, records: &[RunRecord]) -> Vec<AggregateRow> {
    let n_cells = spec.sensor_counts.len() * spec.target_counts.len();
    let per_rep = spec.records_per_replication();
    let n_w = spec.w_grid.len();
    let mut rows = Vec::with_capacity(n_cells * per_rep);
    for ci in 0..n_cells {
        for ai in 0..spec.algorithms.len() {
            for wi in 0..n_w {
                let samples: Vec<&RunRecord> = (0..spec.replications)
                    .map(|rep| &records[(ci * spec.replications + rep) * per_rep + ai * n_w + wi])
                    .collect();
                let mean = samples.iter().map(|r| r.lifetime).sum::<f64>()
                    / spec.replications as f64;
                let min = samples.iter().map(|r| r.lifetime).fold(f64::INFINITY, f64::min);
                let max = samples
                    .iter()
                    .map(|r| r.lifetime)
                    .fold(f64::NEG_INFINITY, f64::max);
                let mean_ub = samples.iter().map(|r| r.upper_bound).sum::<f64>()
                    / spec.replications as f64;
                rows.push(AggregateRow {
                    algorithm: samples[0].algorithm,
                    w: samples[0].w,
                    n_sensors: samples[0].n_sensors,
                    n_targets: samples[0].n_targets,
                    mean_lifetime: mean,
                    min_lifetime: min,
                    max_lifetime: max,
                    spread_pct: spread_pct(min, max, mean),
                    mean_upper_bound: mean_ub,
                });
            }
        }
    }
    rows
}

pub const CSV_HEADER: &str =
    "algorithm,w,epsilon,n_sensors,n_targets,seed,lifetime,upper_bound,gap_pct,covers_generated,runtime_ms";

fn format_record(r: &RunRecord) -> String {
    let epsilon = r.epsilon.map(|e| format!("{e:.6}")).unwrap_or_default();
    format!(
        "{},{:.6},{},{},{},{},{:.6},{:.6},{:.6},{},{:.6}",
        r.algorithm,
        r.w,
        epsilon,
        r.n_sensors,
        r.n_targets,
        r.seed,
        r.lifetime,
        r.upper_bound,
        r.gap_pct,
        r.covers_generated,
        r.runtime_ms
    )
}

/// Write the per-run CSV. Byte-deterministic for a given record list.
pub fn emit_csv(records: &[RunRecord], path: &Path) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", format_record(r))?;
    }
    out.flush()
}

pub const AGGREGATE_CSV_HEADER: &str =
    "algorithm,w,n_sensors,n_targets,mean_lifetime,min_lifetime,max_lifetime,spread_pct,mean_upper_bound";

/// Write the per-cell aggregate CSV: one row per (algorithm, w, cell)
/// with the replication mean, extremes, and spread.
pub fn emit_aggregate_csv(rows: &[AggregateRow], path: &Path) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{AGGREGATE_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.6},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.algorithm,
            r.w,
            r.n_sensors,
            r.n_targets,
            r.mean_lifetime,
            r.min_lifetime,
            r.max_lifetime,
            r.spread_pct,
            r.mean_upper_bound
        )?;
    }
    out.flush()
}

/// Short display form of w used in plot filenames (`1`, `0.5`, `0.002`).
fn w_token(w: f64) -> String {
    format!("{w}")
}

/// Write one `x y` series file per (algorithm, w) plus the shared
/// upper-bound series. The x axis is the sensor count when it is the
/// swept dimension, the target count otherwise (the other dimension is
/// fixed to its first value).
pub fn emit_plot_data(
    spec: &ExperimentSpec,
    aggregates: &[AggregateRow],
    dir: &Path,
) -> std::io::Result<Vec<PathBuf>> {
    let sweep_sensors = spec.sensor_counts.len() > 1;
    let axis: &[usize] = if sweep_sensors {
        &spec.sensor_counts
    } else {
        &spec.target_counts
    };
    let n_t = spec.target_counts.len();
    let cell_of = |pos: usize| if sweep_sensors { pos * n_t } else { pos };
    let per_cell = spec.records_per_replication();
    let n_w = spec.w_grid.len();

    let mut paths = Vec::new();
    for (ai, algorithm) in spec.algorithms.iter().enumerate() {
        for wi in 0..n_w {
            let w = effective_w(*algorithm, spec.w_grid[wi]);
            let path = dir.join(format!(
                "exp{}_{}_{}.dat",
                spec.id,
                algorithm.name(),
                w_token(w)
            ));
            let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
            for (pos, &x) in axis.iter().enumerate() {
                let row = &aggregates[cell_of(pos) * per_cell + ai * n_w + wi];
                writeln!(out, "{} {:.6}", x, row.mean_lifetime)?;
            }
            out.flush()?;
            paths.push(path);
        }
    }

    let path = dir.join(format!("exp{}_upperbound.dat", spec.id));
    let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
    for (pos, &x) in axis.iter().enumerate() {
        let row = &aggregates[cell_of(pos) * per_cell];
        writeln!(out, "{} {:.6}", x, row.mean_upper_bound)?;
    }
    out.flush()?;
    paths.push(path);
    Ok(paths)
}

/// Run `write_outputs` after `run_experiment`: creates the output
/// directory and emits `exp<id>.csv`, `exp<id>_aggregate.csv`, and the
/// plot series. Returns every path written.
pub fn write_outputs(
    spec: &ExperimentSpec,
    result: &ExperimentResult,
) -> Result<Vec<PathBuf>, HarnessError> {
    std::fs::create_dir_all(&spec.out_dir)?;
    let csv = spec.out_dir.join(format!("exp{}.csv", spec.id));
    emit_csv(&result.records, &csv)?;
    let agg = spec.out_dir.join(format!("exp{}_aggregate.csv", spec.id));
    emit_aggregate_csv(&result.aggregates, &agg)?;
    let mut paths = vec![csv, agg];
    paths.extend(emit_plot_data(spec, &result.aggregates, &spec.out_dir)?);
    Ok(paths)
}

/// Group aggregate rows (algorithm, w) -> series of (x, mean lifetime),
/// mainly for tests and downstream consumers that want the plot series
/// without touching the filesystem.
pub fn series_map(
    spec: &ExperimentSpec,
    aggregates: &[AggregateRow],
) -> HashMap<(String, String), Vec<(usize, f64)>> {
    let sweep_sensors = spec.sensor_counts.len() > 1;
    let mut map: HashMap<(String, String), Vec<(usize, f64)>> = HashMap::new();
    for row in aggregates {
        let x = if sweep_sensors {
            row.n_sensors
        } else {
            row.n_targets
        };
        map.entry((row.algorithm.to_string(), w_token(row.w)))
            .or_default()
            .push((x, row.mean_lifetime));
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec(dir: &Path) -> ExperimentSpec {
        ExperimentSpec {
            id: 1,
            algorithms: vec![Algorithm::Hef, Algorithm::Gk],
            w_grid: vec![1.0, 0.25],
            sensor_counts: vec![10, 12],
            target_counts: vec![4],
            replications: 2,
            base_seed: 7,
            sensor_area: 1000.0,
            target_area: 800.0,
            range: 600.0,
            max_resamples: 1000,
            zero_timing: true,
            out_dir: dir.to_path_buf(),
        }
    }

    #[test]
    fn derive_seed_is_stable_and_spread_out() {
        let a = derive_seed(42, 0, 0, 0);
        assert_eq!(a, derive_seed(42, 0, 0, 0));
        let mut seen = std::collections::HashSet::new();
        for si in 0..4 {
            for ti in 0..4 {
                for rep in 0..4 {
                    assert!(seen.insert(derive_seed(42, si, ti, rep)));
                }
            }
        }
        assert_ne!(derive_seed(42, 1, 0, 0), derive_seed(42, 0, 1, 0));
        assert_ne!(derive_seed(42, 0, 0, 0), derive_seed(43, 0, 0, 0));
    }

    #[test]
    fn preset_shapes() {
        let out = PathBuf::from("unused");
        let e1 = ExperimentSpec::preset(1, 42, out.clone()).unwrap();
        assert_eq!(e1.target_counts, vec![20, 30, 40, 50, 60, 70, 80, 90]);
        assert_eq!(e1.sensor_counts, vec![150]);
        assert_eq!(e1.w_grid.len(), 6);
        assert_eq!(e1.algorithms.len(), 2);
        // 8 cells x 15 reps x 2 algorithms x 6 w values
        assert_eq!(
            e1.target_counts.len() * e1.replications * e1.records_per_replication(),
            1440
        );

        let e2 = ExperimentSpec::preset(2, 42, out.clone()).unwrap();
        assert!(e2.algorithms.contains(&Algorithm::Gk));
        assert_eq!(e2.w_grid, vec![0.002, 0.01]);

        let e4 = ExperimentSpec::preset(4, 42, out.clone()).unwrap();
        assert_eq!(e4.sensor_counts.len(), 14);
        assert_eq!(e4.target_counts, vec![25]);

        assert!(ExperimentSpec::preset(5, 42, out).is_err());
    }

    #[test]
    fn spread_matches_worked_example() {
        let c = spread_pct(65.1, 65.45, 65.3);
        assert!((c - 0.535987749).abs() < 1e-6, "got {c}");
        assert_eq!(spread_pct(1.0, 2.0, 0.0), 0.0);
    }

    #[test]
    fn thread_cap_parsing() {
        assert_eq!(parse_thread_cap(Some("4")), Some(4));
        assert_eq!(parse_thread_cap(Some(" 2 ")), Some(2));
        assert_eq!(parse_thread_cap(Some("0")), None);
        assert_eq!(parse_thread_cap(Some("-3")), None);
        assert_eq!(parse_thread_cap(Some("lots")), None);
        assert_eq!(parse_thread_cap(None), None);
    }

    #[test]
    fn algorithm_round_trip_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("hef2".parse::<Algorithm>().is_err());
    }

    #[test]
    fn naive_pins_w_to_one() {
        assert_eq!(effective_w(Algorithm::Naive, 0.25), 1.0);
        assert_eq!(effective_w(Algorithm::Hef, 0.25), 0.25);
    }

    #[test]
    fn tiny_experiment_end_to_end() {
        let dir = std::env::temp_dir().join("coverlife_harness_test");
        let spec = tiny_spec(&dir);
        let result = run_experiment(&spec).unwrap();

        assert_eq!(result.records.len(), 2 * 2 * 2 * 2);
        assert_eq!(result.aggregates.len(), 2 * 2 * 2);
        for r in &result.records {
            assert!(r.gap_pct >= -1e-6, "gap {}", r.gap_pct);
            assert!(r.lifetime <= r.upper_bound + 1e-9);
            assert_eq!(r.runtime_ms, 0.0, "zero_timing must blank runtimes");
            if r.algorithm == "gk" {
                assert!(r.epsilon.is_some());
            } else {
                assert!(r.epsilon.is_none());
            }
        }
        for a in &result.aggregates {
            assert!(a.min_lifetime <= a.mean_lifetime + 1e-9);
            assert!(a.mean_lifetime <= a.max_lifetime + 1e-9);
            assert!(a.mean_lifetime <= a.mean_upper_bound + 1e-9);
        }

        // records come back in grid order: sensor counts 10,10,..,12
        let first = &result.records[0];
        assert_eq!(first.n_sensors, 10);
        assert_eq!(first.algorithm, "hef");
        assert!((first.w - 1.0).abs() < 1e-12);

        // determinism end to end
        let again = run_experiment(&spec).unwrap();
        assert_eq!(result, again);
    }

    #[test]
    fn outputs_are_complete_and_deterministic() {
        let dir = std::env::temp_dir().join("coverlife_harness_outputs");
        let _ = std::fs::remove_dir_all(&dir);
        let spec = tiny_spec(&dir);
        let result = run_experiment(&spec).unwrap();
        let paths = write_outputs(&spec, &result).unwrap();

        // csv + aggregate csv + one series per (alg, w) + upper bound
        assert_eq!(paths.len(), 2 + 2 * 2 + 1);
        let csv = std::fs::read_to_string(&paths[0]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 1 + result.records.len());
        let first = lines.next().unwrap();
        assert!(first.starts_with("hef,1.000000,,10,4,"));
        assert!(first.ends_with(",0.000000"), "runtime blanked: {first}");

        // plot series: x values are the swept sensor counts
        let hef_w1 = std::fs::read_to_string(dir.join("exp1_hef_1.dat")).unwrap();
        let xs: Vec<&str> = hef_w1
            .lines()
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        assert_eq!(xs, vec!["10", "12"]);
        assert!(dir.join("exp1_gk_0.25.dat").exists());
        assert!(dir.join("exp1_upperbound.dat").exists());

        // upper-bound series dominates every algorithm series pointwise
        let ub: Vec<f64> = std::fs::read_to_string(dir.join("exp1_upperbound.dat"))
            .unwrap()
            .lines()
            .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
            .collect();
        for (_, series) in series_map(&spec, &result.aggregates) {
            for ((_, y), u) in series.iter().zip(&ub) {
                assert!(y <= &(u + 1e-9));
            }
        }

        // byte determinism across full rerun
        let result2 = run_experiment(&spec).unwrap();
        let dir2 = std::env::temp_dir().join("coverlife_harness_outputs2");
        let _ = std::fs::remove_dir_all(&dir2);
        let mut spec2 = tiny_spec(&dir2);
        spec2.out_dir = dir2.clone();
        let paths2 = write_outputs(&spec2, &result2).unwrap();
        for (p1, p2) in paths.iter().zip(&paths2) {
            assert_eq!(
                std::fs::read(p1).unwrap(),
                std::fs::read(p2).unwrap(),
                "{p1:?} differs from {p2:?}"
            );
        }

        let _ = std::fs::remove_dir_all(&dir);
        let _ = std::fs::remove_dir_all(&dir2);
    }

    #[test]
    fn csv_of_empty_records_is_header_only() {
        let dir = std::env::temp_dir().join("coverlife_harness_empty");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.csv");
        emit_csv(&[], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n"));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn spec_validation_rejects_nonsense() {
        let out = PathBuf::from("unused");
        let mut s = ExperimentSpec::preset(1, 1, out).unwrap();
        s.w_grid = vec![0.0];
        assert!(s.validate().is_err());
        s.w_grid = vec![0.5];
        s.replications = 0;
        assert!(s.validate().is_err());
        s.replications = 1;
        s.algorithms.clear();
        assert!(s.validate().is_err());
    }
}

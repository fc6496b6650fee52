//! The greedy scheduling engine and its cover generators.
//!
//! All heuristics share one loop: while some sensors are still live, ask a
//! generator for a cover built from live sensors, activate it for
//! `min(w, bottleneck residual)`, subtract that from the members, retire
//! drained sensors, repeat. The granularity parameter `w` caps each
//! activation; `w = 1` with unit batteries drains each cover's bottleneck
//! in one step (the classic one-shot greedy), while small `w` lets a
//! sensor participate in many covers and typically buys extra lifetime.
//!
//! Generators differ only in how they build a cover:
//!
//! * `hef`: always grab the live sensor with the most residual energy
//!   among those covering something new, then strip redundancy.
//! * `cardei`: a critical-target rule in the style of Cardei et al.:
//!   find the uncovered target with the least live battery mass behind it
//!   and serve it with the candidate covering the most uncovered targets.
//! * `bgop`: a coverage-quality rule in the style of Zorbas et al.:
//!   candidates are ranked into Best/Good/OK/Poor classes by whether they
//!   reach a critical target and whether they waste energy on targets
//!   already covered during construction.
//! * `first_fit`: lowest-index live sensor that helps; the baseline.
//!
//! The cardei and bgop rules are reconstructions from prose descriptions
//! of the originals, not ports of their reference implementations; the
//! class grid used by `bgop` is the widest interpretation latitude taken
//! in this crate, so its rules are spelled out in full below.
//!
//! Every tie anywhere is broken deterministically (exact float compare,
//! then lowest index), so identical inputs give identical schedules.

use crate::bitset::BitSet;
use crate::model::{max_lifetime, minimalize_cover, CoverageMatrix, Schedule, SensorCover};

#[derive(Debug, thiserror::Error)]
pub enum GreedyError {
    #[error("invalid solver parameter: {0}")]
    InvalidParameter(String),
}

/// Cover-construction strategy used by [`run_greedy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Hef,
    Cardei,
    Bgop,
    FirstFit,
}

/// Engine parameters. `w` is the lifetime granularity in `(0, 1]`;
/// `tolerance` is the residual level at which a sensor counts as dead.
#[derive(Debug, Clone)]
pub struct GreedyConfig {
    pub generator: Generator,
    pub w: f64,
    pub tolerance: f64,
}

impl GreedyConfig {
    pub fn new(generator: Generator, w: f64) -> Result<Self, GreedyError> {
        let tolerance = crate::model::DEFAULT_TOLERANCE;
        if !w.is_finite() || w <= 0.0 || w > 1.0 {
            return Err(GreedyError::InvalidParameter(format!(
                "w must lie in (0, 1], got {w}"
            )));
        }
        if w <= tolerance {
            // progress per iteration must clear the dead-sensor threshold
            return Err(GreedyError::InvalidParameter(format!(
                "w = {w} is below the solver tolerance {tolerance}"
            )));
        }
        Ok(GreedyConfig {
            generator,
            w,
            tolerance,
        })
    }
}

/// A solver run: the schedule, how many covers the generator produced
/// (before merging of consecutive duplicates), and the final residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub schedule: Schedule,
    pub covers_generated: usize,
    pub residual: Vec<f64>,
}

/// Run the greedy scheduling loop until the live sensors can no longer
/// cover every target.
pub fn run_greedy(m: &CoverageMatrix, battery: &[f64], config: &GreedyConfig) -> SolveResult {
    assert_eq!(
        battery.len(),
        m.n_sensors(),
        "battery vector length must match sensor count"
    );
    let tol = config.tolerance;
    let mut residual = battery.to_vec();
    let mut live = BitSet::new(m.n_sensors());
    for (i, r) in residual.iter().enumerate() {
        if *r > tol {
            live.insert(i);
        }
    }
    let mut schedule = Schedule::new();
    let mut covers_generated = 0usize;
    while !live.is_empty() {
        let cover = match config.generator {
            Generator::Hef => hef_generate_cover(m, &residual, &live),
            Generator::Cardei => cardei_generate_cover(m, &residual, &live),
            Generator::Bgop => bgop_generate_cover(m, &residual, &live),
            Generator::FirstFit => first_fit_generate_cover(m, &residual, &live),
        };
        let Some(cover) = cover else {
            break; // some target is out of reach of the live set
        };
        let dt = config.w.min(max_lifetime(&cover, &residual));
        debug_assert!(dt > tol, "live members guarantee positive increments");
        covers_generated += 1;
        for i in cover.iter() {
            residual[i] -= dt;
            if residual[i] <= tol {
                live.remove(i);
            }
        }
        schedule.push(cover, dt);
    }
    SolveResult {
        schedule,
        covers_generated,
        residual,
    }
}

/// High-energy-first construction: repeatedly take the live sensor with
/// maximum residual among those covering at least one uncovered target
/// (ties: more uncovered targets covered, then lower index), then drop
/// redundant members. Returns `None` when some target cannot be reached.
pub fn hef_generate_cover(
    m: &CoverageMatrix,
    residual: &[f64],
    live: &BitSet,
) -> Option<SensorCover> {
    let mut uncovered = BitSet::full(m.n_targets());
    let mut members = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, f64, usize)> = None; // (sensor, residual, gain)
        for i in live.iter() {
            let gain = m.row(i).intersection_count(&uncovered);
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, br, bg)) => residual[i] > br || (residual[i] == br && gain > bg),
            };
            if better {
                best = Some((i, residual[i], gain));
            }
        }
        let (pick, _, _) = best?;
        members.push(pick);
        uncovered.subtract(m.row(pick));
    }
    let cover = SensorCover::new(members).expect("loop adds at least one distinct member");
    Some(minimalize_cover(m, &cover))
}

/// Critical-target construction: serve the most energy-starved uncovered
/// target first. The critical target minimizes the summed residual of
/// live sensors reaching it (ties: lowest index); among live sensors
/// covering it, the pick maximizes the number of uncovered targets
/// covered (ties: higher residual, then lower index).
pub fn cardei_generate_cover(
    m: &CoverageMatrix,
    residual: &[f64],
    live: &BitSet,
) -> Option<SensorCover> {
    let mut uncovered = BitSet::full(m.n_targets());
    let mut members = Vec::new();
    while !uncovered.is_empty() {
        let mut crit = usize::MAX;
        let mut crit_sum = f64::INFINITY;
        for j in uncovered.iter() {
            let sum: f64 = m
                .col(j)
                .iter()
                .filter(|&&i| live.contains(i))
                .map(|&i| residual[i])
                .sum();
            if sum < crit_sum {
                crit = j;
                crit_sum = sum;
            }
        }
        let mut best: Option<(usize, usize, f64)> = None; // (sensor, gain, residual)
        for &i in m.col(crit) {
            if !live.contains(i) {
                continue;
            }
            let gain = m.row(i).intersection_count(&uncovered); // >= 1, covers crit
            let better = match best {
                None => true,
                Some((_, bg, br)) => gain > bg || (gain == bg && residual[i] > br),
            };
            if better {
                best = Some((i, gain, residual[i]));
            }
        }
        let (pick, _, _) = best?;
        members.push(pick);
        uncovered.subtract(m.row(pick));
    }
    let cover = SensorCover::new(members).expect("loop adds at least one distinct member");
    Some(minimalize_cover(m, &cover))
}

/// Coverage-quality construction. Each round recomputes the set of
/// critical uncovered targets (those attaining the minimum live residual
/// sum) and sorts candidates into four classes:
///
/// * Best: covers a critical target and no target already covered in
///   this round's partial cover,
/// * Good: covers a critical target but overlaps the partial cover,
/// * OK: no critical target, no overlap,
/// * Poor: everything else.
///
/// The pick comes from the first non-empty class; within a class it
/// maximizes uncovered targets covered (ties: higher residual, then
/// lower index).
pub fn bgop_generate_cover(
    m: &CoverageMatrix,
    residual: &[f64],
    live: &BitSet,
) -> Option<SensorCover> {
    let mt = m.n_targets();
    let mut uncovered = BitSet::full(mt);
    let mut covered = BitSet::new(mt);
    let mut members = Vec::new();
    while !uncovered.is_empty() {
        let mut sums = Vec::new(); // (target, live residual sum)
        let mut min_sum = f64::INFINITY;
        for j in uncovered.iter() {
            let sum: f64 = m
                .col(j)
                .iter()
                .filter(|&&i| live.contains(i))
                .map(|&i| residual[i])
                .sum();
            min_sum = min_sum.min(sum);
            sums.push((j, sum));
        }
        let mut critical = BitSet::new(mt);
        for (j, sum) in sums {
            if sum == min_sum {
                critical.insert(j);
            }
        }
        // (class, sensor, gain, residual); class 0 is Best, 3 is Poor
        let mut best: Option<(u8, usize, usize, f64)> = None;
        for i in live.iter() {
            let gain = m.row(i).intersection_count(&uncovered);
            if gain == 0 {
                continue;
            }
            let class = match (m.row(i).intersects(&critical), m.row(i).intersects(&covered)) {
                (true, false) => 0,
                (true, true) => 1,
                (false, false) => 2,
                (false, true) => 3,
            };
            let better = match best {
                None => true,
                Some((bc, _, bg, br)) => {
                    class < bc
                        || (class == bc
                            && (gain > bg || (gain == bg && residual[i] > br)))
                }
            };
            if better {
                best = Some((class, i, gain, residual[i]));
            }
        }
        let (_, pick, _, _) = best?;
        members.push(pick);
        covered.union_with(m.row(pick));
        uncovered.subtract(m.row(pick));
    }
    let cover = SensorCover::new(members).expect("loop adds at least one distinct member");
    Some(minimalize_cover(m, &cover))
}

/// Baseline construction: always the lowest-index live sensor covering
/// at least one uncovered target.
pub fn first_fit_generate_cover(
    m: &CoverageMatrix,
    _residual: &[f64],
    live: &BitSet,
) -> Option<SensorCover> {
    let mut uncovered = BitSet::full(m.n_targets());
    let mut members = Vec::new();
    while !uncovered.is_empty() {
        let pick = live.iter().find(|&i| m.row(i).intersects(&uncovered))?;
        members.push(pick);
        uncovered.subtract(m.row(pick));
    }
    let cover = SensorCover::new(members).expect("loop adds at least one distinct member");
    Some(minimalize_cover(m, &cover))
}

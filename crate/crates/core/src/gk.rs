//! Fractional packing baseline in the Garg–Könemann style, plus the
//! ε↔w correspondence used to put it on a common axis with the greedy
//! heuristics.
//!
//! The packing LP (maximize total cover lifetime subject to battery rows)
//! is solved approximately by multiplicative weights: every sensor gets a
//! "length" that grows exponentially with its usage, and a pricing oracle
//! repeatedly supplies a cheap cover under the current lengths. Exact
//! minimum-cost covers are NP-hard, so the oracle here is the classical
//! greedy weighted set cover; that costs approximation quality but keeps
//! the scheme honest and fast.
//!
//! The correspondence `w = ε·ln(1+ε)/ln((1+ε)·n)` equates the scheme's
//! per-iteration granularity with the greedy engine's `w`; both directions
//! are exposed (`w_for_epsilon` closed-form, `epsilon_for_w` by bisection,
//! the mapping being strictly increasing in ε).

use std::collections::HashMap;

use crate::greedy::SolveResult;
use crate::model::{CoverageMatrix, Schedule, SensorCover};

/// Upper end of the ε range accepted and bisected over. Values above 1
/// void the scheme's approximation guarantee but still produce feasible
/// schedules; they arise when mapping coarse w values (w close to 1) onto
/// ε for comparison runs.
pub const EPSILON_MAX: f64 = 10.0;

#[derive(Debug, thiserror::Error)]
pub enum GkError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("mapping undefined: {0}")]
    Domain(String),
    #[error("no epsilon in (0, {EPSILON_MAX}] maps to w = {w} at n = {n}")]
    NoSolution { w: f64, n: usize },
}

/// Parameters for [`run_gk`]. `epsilon` controls both the initial lengths
/// and the growth rate; smaller values track the LP optimum more closely
/// at the cost of more iterations.
#[derive(Debug, Clone)]
pub struct GkConfig {
    pub epsilon: f64,
    pub tolerance: f64,
}

impl GkConfig {
    pub fn new(epsilon: f64) -> Result<Self, GkError> {
        if !epsilon.is_finite() || epsilon <= 0.0 || epsilon > EPSILON_MAX {
            return Err(GkError::InvalidParameter(format!(
                "epsilon must lie in (0, {EPSILON_MAX}], got {epsilon}"
            )));
        }
        Ok(GkConfig {
            epsilon,
            tolerance: crate::model::DEFAULT_TOLERANCE,
        })
    }
}

/// Granularity equivalent of ε on an n-sensor instance:
/// `w = ε·ln(1+ε)/ln((1+ε)·n)`.
pub fn w_for_epsilon(epsilon: f64, n: usize) -> Result<f64, GkError> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(GkError::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if n == 0 {
        return Err(GkError::InvalidParameter("n must be at least 1".into()));
    }
    let arg = (1.0 + epsilon) * n as f64;
    if arg <= 1.0 {
        return Err(GkError::Domain(format!(
            "(1+epsilon)*n = {arg} must exceed 1"
        )));
    }
    Ok(epsilon * (1.0 + epsilon).ln() / arg.ln())
}

/// Inverse of [`w_for_epsilon`] in ε, found by bisection over
/// `(1e-9, EPSILON_MAX]`. The mapping is strictly increasing there, so the
/// root is unique when it exists.
pub fn epsilon_for_w(w: f64, n: usize) -> Result<f64, GkError> {
    if !w.is_finite() || w <= 0.0 || w > 1.0 {
        return Err(GkError::InvalidParameter(format!(
            "w must lie in (0, 1], got {w}"
        )));
    }
    let mut lo = 1e-9;
    let mut hi = EPSILON_MAX;
    if w_for_epsilon(hi, n)? < w {
        return Err(GkError::NoSolution { w, n });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if w_for_epsilon(mid, n)? < w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Pricing oracle: greedy weighted set cover under per-sensor `costs`.
/// Repeatedly adds the sensor minimizing cost per newly covered target
/// (ties: lower index), then strips redundant members.
///
/// `costs` must be positive (infinities are fine and mark sensors as
/// unaffordable); the matrix must be feasible.
pub fn min_cost_cover(m: &CoverageMatrix, costs: &[f64]) -> SensorCover {
    assert_eq!(costs.len(), m.n_sensors());
    let mut uncovered = crate::bitset::BitSet::full(m.n_targets());
    let mut members = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..m.n_sensors() {
            let gain = m.row(i).intersection_count(&uncovered);
            if gain == 0 {
                continue;
            }
            let ratio = costs[i] / gain as f64;
            match best {
                Some((_, br)) if ratio >= br => {}
                _ => best = Some((i, ratio)),
            }
        }
        let (pick, _) = best.expect("feasible matrix always offers a candidate");
        members.push(pick);
        uncovered.subtract(m.row(pick));
    }
    let cover = SensorCover::new(members).expect("loop adds at least one distinct member");
    crate::model::minimalize_cover(m, &cover)
}

/// Run the multiplicative-weights packing scheme and return a feasible
/// schedule.
///
/// Lengths start at `y_i = δ/b_i` with `δ = (1+ε)·((1+ε)n)^(−1/ε)`; while
/// the oracle's cover is still short (total length < 1) the cover gains
/// raw lifetime equal to its bottleneck battery and its members' lengths
/// grow by `(1 + ε·Δ/b_i)`. Raw lifetimes are finally scaled by
/// `1/log_{1+ε}((1+ε)/δ)`, which equals [`w_for_epsilon`] of the run.
///
/// The textbook analysis guarantees post-scaling feasibility only
/// asymptotically in n; to make feasibility unconditional the schedule is
/// additionally rescaled by the worst per-sensor overdraft whenever one
/// exists (a no-op in the common case).
///
/// Sensors with battery at or below the tolerance start with effectively
/// infinite length, so the oracle avoids them unless they are the only
/// option, in which case the very first cover is already "long" and the
/// schedule comes back empty.
pub fn run_gk(m: &CoverageMatrix, battery: &[f64], config: &GkConfig) -> SolveResult {
    assert_eq!(
        battery.len(),
        m.n_sensors(),
        "battery vector length must match sensor count"
    );
    let n = m.n_sensors();
    let eps = config.epsilon;
    let delta = (1.0 + eps) * ((1.0 + eps) * n as f64).powf(-1.0 / eps);
    let scale = w_for_epsilon(eps, n).expect("validated epsilon");
    let max_iters = n * (1.0 / scale).ceil() as usize + 1;

    let mut y: Vec<f64> = battery.iter().map(|&b| delta / b).collect();
    let mut order: Vec<SensorCover> = Vec::new();
    let mut raw: Vec<f64> = Vec::new();
    let mut index: HashMap<SensorCover, usize> = HashMap::new();
    let mut covers_generated = 0usize;

    for _ in 0..max_iters {
        let cover = min_cost_cover(m, &y);
        let len: f64 = cover.iter().map(|i| y[i]).sum();
        if !(len < 1.0) {
            break;
        }
        let dt = cover
            .iter()
            .map(|i| battery[i])
            .fold(f64::INFINITY, f64::min);
        debug_assert!(dt > 0.0, "short covers never include drained sensors");
        for i in cover.iter() {
            y[i] *= 1.0 + eps * dt / battery[i];
        }
        covers_generated += 1;
        match index.get(&cover) {
            Some(&k) => raw[k] += dt,
            None => {
                index.insert(cover.clone(), raw.len());
                order.push(cover);
                raw.push(dt);
            }
        }
    }

    // scale raw lifetimes down to feasibility
    let mut usage = vec![0.0f64; n];
    for (cover, x) in order.iter().zip(&raw) {
        for i in cover.iter() {
            usage[i] += x * scale;
        }
    }
    let overdraft = usage
        .iter()
        .zip(battery)
        .filter(|(_, b)| **b > 0.0)
        .map(|(u, b)| u / b)
        .fold(1.0f64, f64::max);

    let mut schedule = Schedule::new();
    let mut residual = battery.to_vec();
    for (cover, x) in order.into_iter().zip(raw) {
        let lifetime = x * scale / overdraft;
        for i in cover.iter() {
            residual[i] -= lifetime;
        }
        schedule.push(cover, lifetime);
    }
    SolveResult {
        schedule,
        covers_generated,
        residual,
    }
}

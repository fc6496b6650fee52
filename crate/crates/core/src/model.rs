//! Problem types shared by every solver: instances, the coverage matrix,
//! sensor covers, and schedules, plus the small set of operations
//! (cover tests, minimalization, lifetime bounds, schedule validation)
//! that all algorithms lean on.
//!
//! Conventions used throughout the crate:
//!
//! * Sensors and targets are identified by dense indices `0..n` / `0..m`.
//! * A sensor covers a target when the squared Euclidean distance is
//!   strictly below `range^2`. Points exactly on the boundary are out.
//! * Batteries and lifetimes are plain `f64` durations; comparisons use an
//!   explicit caller-supplied tolerance (default `1e-9`) rather than exact
//!   float equality.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

/// Default tolerance for battery / usage comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    /// A target no sensor can reach. Such an instance admits no cover at
    /// all, so every solver would return an empty schedule.
    #[error("target {target} is not covered by any sensor")]
    Infeasible { target: usize },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// A deployment: sensor and target positions, a common sensing range,
/// and one battery budget per sensor.
///
/// Validated on construction and on deserialization; a value of this type
/// always has consistent dimensions and finite, in-range numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    n: usize,
    m: usize,
    range: f64,
    sensors: Vec<(f64, f64)>,
    targets: Vec<(f64, f64)>,
    battery: Vec<f64>,
}

/// Wire format for [`Instance`]; lengths are re-checked against `n`/`m`
/// before the real type is produced.
#[derive(Deserialize)]
struct RawInstance {
    n: usize,
    m: usize,
    range: f64,
    sensors: Vec<(f64, f64)>,
    targets: Vec<(f64, f64)>,
    battery: Vec<f64>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = ModelError;

    fn try_from(raw: RawInstance) -> Result<Self, ModelError> {
        if raw.sensors.len() != raw.n {
            return Err(ModelError::InvalidInstance(format!(
                "n is {} but {} sensors given",
                raw.n,
                raw.sensors.len()
            )));
        }
        if raw.targets.len() != raw.m {
            return Err(ModelError::InvalidInstance(format!(
                "m is {} but {} targets given",
                raw.m,
                raw.targets.len()
            )));
        }
        Instance::new(raw.sensors, raw.targets, raw.range, raw.battery)
    }
}

impl Instance {
    /// Build and validate an instance. `n` and `m` are taken from the
    /// vector lengths; `battery` must have one entry per sensor.
    pub fn new(
        sensors: Vec<(f64, f64)>,
        targets: Vec<(f64, f64)>,
        range: f64,
        battery: Vec<f64>,
    ) -> Result<Self, ModelError> {
        if sensors.is_empty() {
            return Err(ModelError::InvalidInstance("no sensors".into()));
        }
        if targets.is_empty() {
            return Err(ModelError::InvalidInstance("no targets".into()));
        }
        if battery.len() != sensors.len() {
            return Err(ModelError::InvalidInstance(format!(
                "{} sensors but {} battery entries",
                sensors.len(),
                battery.len()
            )));
        }
        if !range.is_finite() || range <= 0.0 {
            return Err(ModelError::InvalidInstance(format!(
                "range must be positive and finite, got {range}"
            )));
        }
        for (k, (x, y)) in sensors.iter().chain(targets.iter()).enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(ModelError::InvalidInstance(format!(
                    "non-finite coordinate at position {k}"
                )));
            }
        }
        for (i, b) in battery.iter().enumerate() {
            if !b.is_finite() || *b < 0.0 {
                return Err(ModelError::InvalidInstance(format!(
                    "battery[{i}] must be finite and non-negative, got {b}"
                )));
            }
        }
        Ok(Instance {
            n: sensors.len(),
            m: targets.len(),
            range,
            sensors,
            targets,
            battery,
        })
    }

    pub fn n_sensors(&self) -> usize {
        self.n
    }

    pub fn n_targets(&self) -> usize {
        self.m
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn sensors(&self) -> &[(f64, f64)] {
        &self.sensors
    }

    pub fn targets(&self) -> &[(f64, f64)] {
        &self.targets
    }

    pub fn battery(&self) -> &[f64] {
        &self.battery
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline; byte-stable for a given
    /// instance, which keeps generated files diffable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}

/// Sensor-target incidence, precomputed once per instance.
///
/// Row `i` is the target set sensor `i` reaches; column `j` lists the
/// sensors reaching target `j` in ascending order. Construction fails with
/// [`ModelError::Infeasible`] if some target is reached by no sensor, so
/// downstream code can assume full coverability.
#[derive(Debug, Clone)]
pub struct CoverageMatrix {
    n: usize,
    m: usize,
    rows: Vec<BitSet>,
    cols: Vec<Vec<usize>>,
}

impl CoverageMatrix {
    pub fn build(inst: &Instance) -> Result<Self, ModelError> {
        let r2 = inst.range * inst.range;
        let rows: Vec<BitSet> = inst
            .sensors
            .iter()
            .map(|&(sx, sy)| {
                let mut row = BitSet::new(inst.m);
                for (j, &(tx, ty)) in inst.targets.iter().enumerate() {
                    let (dx, dy) = (sx - tx, sy - ty);
                    if dx * dx + dy * dy < r2 {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Self::from_rows(inst.m, rows)
    }

    /// Build directly from per-sensor target sets. Handy for synthetic
    /// incidence structures that have no geometric embedding.
    pub fn from_sets(m: usize, sensor_targets: &[Vec<usize>]) -> Result<Self, ModelError> {
        let rows = sensor_targets
            .iter()
            .map(|ts| {
                let mut row = BitSet::new(m);
                for &j in ts {
                    if j >= m {
                        return Err(ModelError::InvalidInstance(format!(
                            "target index {j} out of range 0..{m}"
                        )));
                    }
                    row.insert(j);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(m, rows)
    }

    fn from_rows(m: usize, rows: Vec<BitSet>) -> Result<Self, ModelError> {
        let n = rows.len();
        let mut cols = vec![Vec::new(); m];
        for (i, row) in rows.iter().enumerate() {
            for j in row.iter() {
                cols[j].push(i);
            }
        }
        if let Some(j) = cols.iter().position(|c| c.is_empty()) {
            return Err(ModelError::Infeasible { target: j });
        }
        Ok(CoverageMatrix { n, m, rows, cols })
    }

    pub fn n_sensors(&self) -> usize {
        self.n
    }

    pub fn n_targets(&self) -> usize {
        self.m
    }

    /// Does sensor `i` cover target `j`?
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Targets covered by sensor `i`.
    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    /// Sensors covering target `j`, ascending.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }
}

/// A non-empty set of sensors, stored as sorted distinct indices.
///
/// The type itself does not know the instance it belongs to; whether it
/// actually covers all targets is checked against a [`CoverageMatrix`]
/// via [`is_cover`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SensorCover {
    members: Vec<usize>,
}

impl SensorCover {
    /// Sorts the members; rejects empty input and duplicate indices.
    pub fn new(mut members: Vec<usize>) -> Result<Self, ModelError> {
        if members.is_empty() {
            return Err(ModelError::InvalidCover("cover has no members".into()));
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(ModelError::InvalidCover("duplicate sensor index".into()));
        }
        Ok(SensorCover { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty member lists
    }

    pub fn contains(&self, sensor: usize) -> bool {
        self.members.binary_search(&sensor).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

impl TryFrom<Vec<usize>> for SensorCover {
    type Error = ModelError;
    fn try_from(v: Vec<usize>) -> Result<Self, ModelError> {
        SensorCover::new(v)
    }
}

impl From<SensorCover> for Vec<usize> {
    fn from(c: SensorCover) -> Vec<usize> {
        c.members
    }
}

/// One scheduling step: activate `cover` for `lifetime` time units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub cover: SensorCover,
    pub lifetime: f64,
}

/// An ordered activation plan. Total network lifetime is the sum of entry
/// lifetimes; feasibility against a concrete instance is established by
/// [`validate_schedule`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
}

impl Schedule {
    pub fn new() -> Self {
        Schedule::default()
    }

    /// Append an activation, merging with the last entry when it uses the
    /// same cover. Keeps schedules short when a solver re-emits one cover
    /// many times in a row.
    pub fn push(&mut self, cover: SensorCover, lifetime: f64) {
        if let Some(last) = self.entries.last_mut() {
            if last.cover == cover {
                last.lifetime += lifetime;
                return;
            }
        }
        self.entries.push(ScheduleEntry { cover, lifetime });
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_lifetime(&self) -> f64 {
        self.entries.iter().map(|e| e.lifetime).sum()
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule serializes");
        s.push('\n');
        s
    }
}

/// Does `cover` monitor every target? Members must be in `0..n`.
pub fn is_cover(m: &CoverageMatrix, cover: &SensorCover) -> bool {
    let mut seen = BitSet::new(m.n_targets());
    for i in cover.iter() {
        seen.union_with(m.row(i));
    }
    seen.is_full()
}

/// Strip redundant members: try removing each sensor in ascending index
/// order and keep it out whenever the remaining set still covers all
/// targets. The result is minimal (no proper subset is a cover) but not
/// necessarily minimum-cardinality.
pub fn minimalize_cover(m: &CoverageMatrix, cover: &SensorCover) -> SensorCover {
    debug_assert!(is_cover(m, cover), "minimalize_cover needs a cover");
    // counts[j] = how many kept members reach target j
    let mut counts = vec![0u32; m.n_targets()];
    for i in cover.iter() {
        for j in m.row(i).iter() {
            counts[j] += 1;
        }
    }
    let mut kept: Vec<usize> = Vec::with_capacity(cover.len());
    for i in cover.iter() {
        // removable iff no target would drop to zero coverage
        if m.row(i).iter().all(|j| counts[j] > 1) {
            for j in m.row(i).iter() {
                counts[j] -= 1;
            }
        } else {
            kept.push(i);
        }
    }
    SensorCover::new(kept).expect("a cover always keeps at least one member")
}

/// Longest time `cover` can stay on: the smallest residual battery among
/// its members.
pub fn max_lifetime(cover: &SensorCover, residual: &[f64]) -> f64 {
    cover
        .iter()
        .map(|i| residual[i])
        .fold(f64::INFINITY, f64::min)
}

/// The target with the least battery mass available to cover it, i.e. the
/// one minimizing the sum of `weights[i]` over sensors reaching it.
/// Ties resolve to the lowest target index.
pub fn critical_target(m: &CoverageMatrix, weights: &[f64]) -> usize {
    let mut best = 0usize;
    let mut best_sum = f64::INFINITY;
    for j in 0..m.n_targets() {
        let sum: f64 = m.col(j).iter().map(|&i| weights[i]).sum();
        if sum < best_sum {
            best = j;
            best_sum = sum;
        }
    }
    best
}

/// Upper bound on any schedule's total lifetime: no target can be watched
/// longer than the combined battery of the sensors that reach it.
pub fn upper_bound(m: &CoverageMatrix, battery: &[f64]) -> f64 {
    (0..m.n_targets())
        .map(|j| m.col(j).iter().map(|&i| battery[i]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of checking a schedule against an instance.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Per entry: members in range, set covers all targets, lifetime
    /// positive and finite.
    pub entry_ok: Vec<bool>,
    /// Total on-time per sensor across all entries.
    pub usage: Vec<f64>,
    /// Per sensor: usage within battery (up to tolerance).
    pub sensor_ok: Vec<bool>,
    pub total_lifetime: f64,
    /// True iff every entry and every sensor check passed.
    pub pass: bool,
}

/// Check a schedule (possibly loaded from an untrusted file) against a
/// coverage matrix and battery vector. Never panics: out-of-range sensor
/// indices mark the entry invalid instead.
pub fn validate_schedule(
    m: &CoverageMatrix,
    battery: &[f64],
    schedule: &Schedule,
    tolerance: f64,
) -> ValidationReport {
    let n = m.n_sensors();
    let mut usage = vec![0.0f64; n];
    let mut entry_ok = Vec::with_capacity(schedule.len());
    for entry in schedule.entries() {
        let in_range = entry.cover.iter().all(|i| i < n);
        let ok = in_range
            && entry.lifetime.is_finite()
            && entry.lifetime > 0.0
            && is_cover(m, &entry.cover);
        entry_ok.push(ok);
        if in_range {
            for i in entry.cover.iter() {
                usage[i] += entry.lifetime.max(0.0);
            }
        }
    }
    let sensor_ok: Vec<bool> = usage
        .iter()
        .zip(battery)
        .map(|(u, b)| *u <= b + tolerance)
        .collect();
    let pass = entry_ok.iter().all(|&e| e) && sensor_ok.iter().all(|&s| s);
    ValidationReport {
        entry_ok,
        usage,
        sensor_ok,
        total_lifetime: schedule.total_lifetime(),
        pass,
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "entries: {} valid: {}",
            self.entry_ok.len(),
            self.entry_ok.iter().filter(|&&e| e).count()
        )?;
        for (i, (u, ok)) in self.usage.iter().zip(&self.sensor_ok).enumerate() {
            writeln!(
                f,
                "sensor {i}: usage {:.6} {}",
                u,
                if *ok { "ok" } else { "OVER BUDGET" }
            )?;
        }
        writeln!(f, "total_lifetime: {:.6}", self.total_lifetime)?;
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

//! Random deployment generator with a self-contained, portable PRNG.
//!
//! Reproducibility across platforms and releases matters more here than
//! statistical sophistication, so the generator is a fixed 64-bit
//! SplitMix64 rather than whatever a rand crate ships this year. The
//! stream for a given seed, and the order coordinates are drawn in, are
//! frozen contracts: sensor 0 x, sensor 0 y, sensor 1 x, ..., then target
//! coordinates in the same x-before-y order.

use crate::model::Instance;

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    /// Every attempted deployment left some target out of sensing range.
    #[error("no feasible deployment after {attempts} attempts")]
    GenerationFailed { attempts: u32 },
}

/// SplitMix64: 64 bits of state, one multiply-shift-xor avalanche per
/// output. Passes BigCrush, trivially seedable, and identical everywhere.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Parameters for a random deployment: `n_sensors` points uniform in a
/// `sensor_area` square, `n_targets` points uniform in a `target_area`
/// square centered inside it, all batteries 1.0.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub n_sensors: usize,
    pub n_targets: usize,
    pub sensor_area: f64,
    pub target_area: f64,
    pub range: f64,
    pub seed: u64,
    /// How many times to redraw the whole deployment when some target
    /// ends up unreachable, before giving up.
    pub max_resamples: u32,
}

impl GenConfig {
    pub fn new(n_sensors: usize, n_targets: usize, seed: u64) -> Self {
        GenConfig {
            n_sensors,
            n_targets,
            sensor_area: 1000.0,
            target_area: 800.0,
            range: 70.0,
            seed,
            max_resamples: 1000,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n_sensors == 0 {
            return Err(GenError::InvalidConfig("n_sensors must be >= 1".into()));
        }
        if self.n_targets == 0 {
            return Err(GenError::InvalidConfig("n_targets must be >= 1".into()));
        }
        for (name, v) in [
            ("sensor_area", self.sensor_area),
            ("target_area", self.target_area),
            ("range", self.range),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(GenError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.target_area > self.sensor_area {
            return Err(GenError::InvalidConfig(format!(
                "target_area {} exceeds sensor_area {}",
                self.target_area, self.sensor_area
            )));
        }
        Ok(())
    }
}

/// Draw deployments until every target is strictly within range of some
/// sensor. Redraws consume the same PRNG stream, so the result for a given
/// config is a pure function of the seed.
pub fn generate(config: &GenConfig) -> Result<Instance, GenError> {
    config.validate()?;
    let mut rng = SplitMix64::new(config.seed);
    let offset = (config.sensor_area - config.target_area) / 2.0;
    let r2 = config.range * config.range;
    let attempts = config.max_resamples + 1;
    for _ in 0..attempts {
        let sensors: Vec<(f64, f64)> = (0..config.n_sensors)
            .map(|_| {
                let x = rng.next_uniform() * config.sensor_area;
                let y = rng.next_uniform() * config.sensor_area;
                (x, y)
            })
            .collect();
        let targets: Vec<(f64, f64)> = (0..config.n_targets)
            .map(|_| {
                let x = offset + rng.next_uniform() * config.target_area;
                let y = offset + rng.next_uniform() * config.target_area;
                (x, y)
            })
            .collect();
        let feasible = targets.iter().all(|&(tx, ty)| {
            sensors.iter().any(|&(sx, sy)| {
                let (dx, dy) = (sx - tx, sy - ty);
                dx * dx + dy * dy < r2
            })
        });
        if feasible {
            let battery = vec![1.0; config.n_sensors];
            let inst = Instance::new(sensors, targets, config.range, battery)
                .expect("validated config yields a valid instance");
            return Ok(inst);
        }
    }
    Err(GenError::GenerationFailed { attempts })
}

//! Replicated Monte Carlo experiments over a grid of point counts.
//!
//! Each replicate draws its own ChaCha stream keyed by
//! `(master_seed, N, replicate_index)`, so results are bit-identical for
//! a given config no matter how many workers run or in which order the
//! replicates execute: per-replicate values are collected in replicate
//! order and reduced sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::geometry::{
    self, convex_hull, DistanceMode, GeometryError, SimplicialPolytope, TParams,
};
use crate::sampling::{self, Density, Purpose};
use crate::theory::sphere_measure;

use super::config::{ExperimentConfig, ExperimentMode};
use super::HarnessError;

/// Per-replicate degenerate-input retries before giving up entirely.
const MAX_RETRIES_PER_REPLICATE: u64 = 64;

/// Statistics for one point count N.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct PerNStats {
    #[serde(rename = "N")]
    pub n_points: usize,
    pub mean: f64,
    pub std_error: f64,
    pub replicates: usize,
    pub min: f64,
    pub max: f64,
    /// Hull rebuilds after degenerate inputs (duplicate points etc.).
    pub degenerate_retries: usize,
    /// The same statistic computed in the other distance mode, emitted
    /// alongside so the two definitions of dist(o, F) can be compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_mode_mean: Option<f64>,
}

/// The unit of empirical evidence: config echo plus per-N statistics.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct EstimateReport {
    pub config: ExperimentConfig,
    pub per_n: Vec<PerNStats>,
    pub wall_time_secs: f64,
    pub code_version: String,
}

impl EstimateReport {
    /// JSON with the wall time zeroed: the deterministic part of the
    /// report (used by the reproducibility checks).
    pub fn canonical_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["wall_time_secs"] = serde_json::Value::from(0.0);
        v
    }
}

/// What one replicate contributes.
struct ReplicateOutcome {
    value: f64,
    alt_value: Option<f64>,
    retries: usize,
}

fn replicate(
    config: &ExperimentConfig,
    density: &Density,
    n_points: usize,
    rep: u64,
) -> Result<ReplicateOutcome, HarnessError> {
    let mut retries = 0usize;
    for attempt in 0..=MAX_RETRIES_PER_REPLICATE {
        let mut rng = if attempt == 0 {
            sampling::stream(config.master_seed, Purpose::Replicate, n_points as u64, rep)
        } else {
            sampling::stream(
                config.master_seed,
                Purpose::ReplicateRetry,
                n_points as u64,
                (attempt << 48) | rep,
            )
        };
        let points = density.sample_many(n_points, &mut rng)?;
        match convex_hull(&points, config.n) {
            Ok(hull) => {
                let (value, alt_value) = evaluate(config, &hull);
                return Ok(ReplicateOutcome {
                    value,
                    alt_value,
                    retries,
                });
            }
            Err(GeometryError::DegenerateInput { .. }) | Err(GeometryError::DegenerateFacet) => {
                retries += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(HarnessError::TooManyDegenerate {
        retries,
        replicates: 1,
    })
}

fn evaluate(config: &ExperimentConfig, hull: &SimplicialPolytope) -> (f64, Option<f64>) {
    let other = |mode: DistanceMode| match mode {
        DistanceMode::MinOverFace => DistanceMode::AffineHyperplane,
        DistanceMode::AffineHyperplane => DistanceMode::MinOverFace,
    };
    match config.mode {
        ExperimentMode::TFunc => {
            let (a, b) = (config.a.unwrap(), config.b.unwrap());
            let prim = TParams::new(a, b, config.distance_mode).expect("validated");
            let alt = TParams::new(a, b, other(config.distance_mode)).expect("validated");
            (
                geometry::t_functional(hull, &prim),
                Some(geometry::t_functional(hull, &alt)),
            )
        }
        ExperimentMode::LpDeficit => {
            let p = config.p.unwrap();
            let mu = sphere_measure(config.n);
            let prim = mu - geometry::lp_surface_area_mode(hull, p, config.distance_mode);
            let alt = mu - geometry::lp_surface_area_mode(hull, p, other(config.distance_mode));
            (prim, Some(alt))
        }
        ExperimentMode::Containment => {
            ((!hull.contains_origin) as u8 as f64, None)
        }
    }
}

fn summarize(n_points: usize, values: &[f64], alts: &[f64], retries: usize) -> PerNStats {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    let std_error = (var.max(0.0) / k).sqrt();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let alt_mode_mean = if alts.is_empty() {
        None
    } else {
        Some(alts.iter().sum::<f64>() / alts.len() as f64)
    };
    PerNStats {
        n_points,
        mean,
        std_error,
        replicates: values.len(),
        min,
        max,
        degenerate_retries: retries,
        alt_mode_mean,
    }
}

/// Run the configured experiment over its N grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<EstimateReport, HarnessError> {
    config.validate()?;
    let density = config.density.build(config.n)?;
    let start = std::time::Instant::now();

    let mut per_n = Vec::with_capacity(config.n_grid.len());
    for &n_points in &config.n_grid {
        let mut values: Vec<f64> = Vec::new();
        let mut alts: Vec<f64> = Vec::new();
        let mut retries = 0usize;

        loop {
            let lo = values.len() as u64;
            let hi = lo + config.replicates as u64;
            let batch: Result<Vec<ReplicateOutcome>, HarnessError> = run_batch(
                config, &density, n_points, lo..hi,
            );
            for outcome in batch? {
                values.push(outcome.value);
                if let Some(alt) = outcome.alt_value {
                    alts.push(alt);
                }
                retries += outcome.retries;
            }

            let stats = summarize(n_points, &values, &alts, retries);
            let target_met = match config.se_rel_target {
                Some(target) => {
                    stats.mean != 0.0 && stats.std_error / stats.mean.abs() <= target
                }
                None => true,
            };
            let at_cap = config
                .max_replicates
                .is_some_and(|cap| values.len() >= cap);
            if target_met || at_cap {
                break;
            }
        }

        if retries * 1000 > values.len() {
            return Err(HarnessError::TooManyDegenerate {
                retries,
                replicates: values.len(),
            });
        }
        per_n.push(summarize(n_points, &values, &alts, retries));
    }

    Ok(EstimateReport {
        config: config.clone(),
        per_n,
        wall_time_secs: start.elapsed().as_secs_f64(),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

#[cfg(feature = "parallel")]
fn run_batch(
    config: &ExperimentConfig,
    density: &Density,
    n_points: usize,
    reps: std::ops::Range<u64>,
) -> Result<Vec<ReplicateOutcome>, HarnessError> {
    reps.into_par_iter()
        .map(|rep| replicate(config, density, n_points, rep))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_batch(
    config: &ExperimentConfig,
    density: &Density,
    n_points: usize,
    reps: std::ops::Range<u64>,
) -> Result<Vec<ReplicateOutcome>, HarnessError> {
    reps.map(|rep| replicate(config, density, n_points, rep))
        .collect()
}

/// Mode-checked wrapper: expected T-functional estimates.
pub fn estimate_expected_t(config: &ExperimentConfig) -> Result<EstimateReport, HarnessError> {
    if config.mode != ExperimentMode::TFunc {
        return Err(HarnessError::InvalidConfig {
            detail: "estimate_expected_t requires mode = t_func".into(),
        });
    }
    run_experiment(config)
}

/// Mode-checked wrapper: L_p surface-area deficit estimates.
pub fn estimate_lp_deficit(config: &ExperimentConfig) -> Result<EstimateReport, HarnessError> {
    if config.mode != ExperimentMode::LpDeficit {
        return Err(HarnessError::InvalidConfig {
            detail: "estimate_lp_deficit requires mode = lp_deficit".into(),
        });
    }
    run_experiment(config)
}

/// Mode-checked wrapper: frequency of hulls missing the origin.
pub fn containment_frequency(config: &ExperimentConfig) -> Result<EstimateReport, HarnessError> {
    if config.mode != ExperimentMode::Containment {
        return Err(HarnessError::InvalidConfig {
            detail: "containment_frequency requires mode = containment".into(),
        });
    }
    run_experiment(config)
}

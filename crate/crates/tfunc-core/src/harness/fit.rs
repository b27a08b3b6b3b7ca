//! Power-law rate fits over the N grid.

use serde::{Deserialize, Serialize};

use super::estimate::EstimateReport;
use super::HarnessError;

/// Relative-precision gate: rows with SE/mean above this are unusable.
const MAX_REL_SE: f64 = 0.05;
/// Minimum usable rows for a fit.
const MIN_POINTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateModel {
    PowerLaw,
}

/// Ordinary least squares of log(mean) on log(N).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RateFit {
    pub model: RateModel,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    #[serde(rename = "N_range")]
    pub n_range: (usize, usize),
    pub points_used: usize,
}

/// Fit the per-N means of a report to `mean ≈ exp(intercept) · N^slope`.
///
/// Only rows with positive mean and SE/mean ≤ 5% participate; fewer than
/// four such rows is an error rather than a noisy answer.
pub fn fit_rate(report: &EstimateReport, model: RateModel) -> Result<RateFit, HarnessError> {
    let RateModel::PowerLaw = model;
    let usable: Vec<(f64, f64)> = report
        .per_n
        .iter()
        .filter(|row| row.mean > 0.0 && row.std_error / row.mean <= MAX_REL_SE)
        .map(|row| ((row.n_points as f64).ln(), row.mean.ln()))
        .collect();
    if usable.len() < MIN_POINTS {
        return Err(HarnessError::InsufficientPrecision {
            usable: usable.len(),
            needed: MIN_POINTS,
        });
    }

    let k = usable.len() as f64;
    let mean_x = usable.iter().map(|(x, _)| x).sum::<f64>() / k;
    let mean_y = usable.iter().map(|(_, y)| y).sum::<f64>() / k;
    let sxx: f64 = usable.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = usable
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let syy: f64 = usable.iter().map(|(_, y)| (y - mean_y) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = usable
        .iter()
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };

    let used: Vec<usize> = report
        .per_n
        .iter()
        .filter(|row| row.mean > 0.0 && row.std_error / row.mean <= MAX_REL_SE)
        .map(|row| row.n_points)
        .collect();
    Ok(RateFit {
        model,
        slope,
        intercept,
        r_squared,
        n_range: (*used.first().unwrap(), *used.last().unwrap()),
        points_used: used.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{DensityConfig, ExperimentConfig, ExperimentMode, OutputFormat};
    use crate::harness::estimate::PerNStats;
    use crate::geometry::DistanceMode;

    fn synthetic_report(rows: Vec<(usize, f64, f64)>) -> EstimateReport {
        EstimateReport {
            config: ExperimentConfig {
                n: 3,
                n_grid: rows.iter().map(|r| r.0).collect(),
                mode: ExperimentMode::TFunc,
                a: Some(0.0),
                b: Some(0.0),
                p: None,
                density: DensityConfig::Uniform,
                replicates: 2,
                master_seed: 0,
                distance_mode: DistanceMode::MinOverFace,
                se_rel_target: None,
                max_replicates: None,
                out_dir: None,
                format: OutputFormat::Json,
            },
            per_n: rows
                .into_iter()
                .map(|(n, mean, se)| PerNStats {
                    n_points: n,
                    mean,
                    std_error: se,
                    replicates: 2,
                    min: mean,
                    max: mean,
                    degenerate_retries: 0,
                    alt_mode_mean: None,
                })
                .collect(),
            wall_time_secs: 0.0,
            code_version: "test".into(),
        }
    }

    #[test]
    fn exact_power_law_is_recovered() {
        // mean = 7 N^{-1.5}, noiseless.
        let rows: Vec<(usize, f64, f64)> = [16usize, 32, 64, 128, 256]
            .iter()
            .map(|&n| (n, 7.0 * (n as f64).powf(-1.5), 0.0))
            .collect();
        let fit = fit_rate(&synthetic_report(rows), RateModel::PowerLaw).unwrap();
        assert!((fit.slope + 1.5).abs() < 1e-12);
        assert!((fit.intercept - 7.0f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.n_range, (16, 256));
    }

    #[test]
    fn facet_count_law_in_3d() {
        // 2N - 4 exactly: slope ≈ 1 with a small positive bias from the -4.
        let rows: Vec<(usize, f64, f64)> = (7..=13)
            .map(|k| {
                let n = 1usize << k;
                (n, 2.0 * n as f64 - 4.0, 0.0)
            })
            .collect();
        let fit = fit_rate(&synthetic_report(rows), RateModel::PowerLaw).unwrap();
        assert!((fit.slope - 1.0).abs() < 0.01, "slope {}", fit.slope);
    }

    #[test]
    fn imprecise_rows_are_dropped_and_counted() {
        let rows = vec![
            (16usize, 1.0, 0.5),  // SE/mean = 50%, dropped
            (32, 0.5, 0.001),
            (64, 0.25, 0.001),
            (128, 0.125, 0.001),
        ];
        assert!(matches!(
            fit_rate(&synthetic_report(rows), RateModel::PowerLaw),
            Err(HarnessError::InsufficientPrecision { usable: 3, .. })
        ));
    }
}

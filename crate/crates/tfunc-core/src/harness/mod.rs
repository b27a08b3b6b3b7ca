//! Replicated experiments: expected T-functionals, L_p deficits and
//! origin-containment frequencies over N grids, with rate fits, theory
//! comparisons and persisted reports.

mod compare;
mod config;
mod estimate;
mod fit;
mod report;

pub use compare::{compare_to_theory, ComparisonRow, ComparisonTable};
pub use config::{
    DensityConfig, ExperimentConfig, ExperimentMode, MixtureComponent, OutputFormat,
};
pub use estimate::{
    containment_frequency, estimate_expected_t, estimate_lp_deficit, run_experiment,
    EstimateReport, PerNStats,
};
pub use fit::{fit_rate, RateFit, RateModel};
pub use report::{float17, points_csv, to_json_17, write_report_files};

use crate::geometry::GeometryError;
use crate::sampling::DensityError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid experiment config: {detail}")]
    InvalidConfig { detail: String },
    #[error(
        "degenerate inputs exceeded 0.1% of replicates: {retries} retries over {replicates}"
    )]
    TooManyDegenerate { retries: usize, replicates: usize },
    #[error("insufficient precision for a rate fit: {usable} usable rows, need {needed}")]
    InsufficientPrecision { usable: usize, needed: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

//! Empirical-vs-theory comparison tables.

use serde::{Deserialize, Serialize};

use crate::theory::TheoryConstants;

use super::estimate::EstimateReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonRow {
    #[serde(rename = "N")]
    pub n_points: usize,
    pub empirical: f64,
    pub std_error: f64,
    /// `leading_coeff · c1 · N^{-(b-1)}`.
    pub one_term: f64,
    /// The prediction including the `c2 N^{-2/(n-1)}` correction.
    pub two_term: f64,
    /// (empirical - two_term) over the combined MC + quadrature sigma.
    pub z_score: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Whether the two-term prediction beats the one-term prediction at
    /// the largest N in the grid.
    pub two_term_closer_at_largest: bool,
}

/// Compare a T-functional report against the matching theory constants.
pub fn compare_to_theory(report: &EstimateReport, constants: &TheoryConstants) -> ComparisonTable {
    let rows: Vec<ComparisonRow> = report
        .per_n
        .iter()
        .map(|stat| {
            let nf = stat.n_points as f64;
            let one_term = constants.one_term(nf);
            let two_term = constants.predicted(nf);
            let sigma = (stat.std_error.powi(2) + constants.predicted_std_error(nf).powi(2))
                .sqrt()
                .max(f64::MIN_POSITIVE);
            ComparisonRow {
                n_points: stat.n_points,
                empirical: stat.mean,
                std_error: stat.std_error,
                one_term,
                two_term,
                z_score: (stat.mean - two_term) / sigma,
            }
        })
        .collect();
    let two_term_closer_at_largest = rows
        .last()
        .map(|r| (r.empirical - r.two_term).abs() < (r.empirical - r.one_term).abs())
        .unwrap_or(false);
    ComparisonTable {
        rows,
        two_term_closer_at_largest,
    }
}

//! Experiment configuration: the density grammar and the experiment
//! descriptor shared by the library API, the config file and the CLI.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use crate::geometry::{DistanceMode, UnitVector};
use crate::sampling::Density;

use super::HarnessError;

/// Density specification as it appears in config files:
/// `{"family":"exp_tilt","kappa":2.0,"theta":[0,0,1]}` and friends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DensityConfig {
    Uniform,
    ExpTilt { kappa: f64, theta: Vec<f64> },
    LinearTilt { eps: f64, theta: Vec<f64> },
    Mixture { components: Vec<MixtureComponent> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub density: DensityConfig,
}

impl DensityConfig {
    /// Validate against the experiment dimension and build the density.
    pub fn build(&self, dim: usize) -> Result<Density, HarnessError> {
        let axis = |theta: &[f64]| -> Result<UnitVector, HarnessError> {
            if theta.len() != dim {
                return Err(HarnessError::InvalidConfig {
                    detail: format!(
                        "density axis has {} coordinates but the experiment dimension is {dim}",
                        theta.len()
                    ),
                });
            }
            Ok(UnitVector::new(theta.to_vec())?)
        };
        Ok(match self {
            DensityConfig::Uniform => Density::uniform(dim)?,
            DensityConfig::ExpTilt { kappa, theta } => Density::exp_tilt(*kappa, axis(theta)?)?,
            DensityConfig::LinearTilt { eps, theta } => Density::linear_tilt(*eps, axis(theta)?)?,
            DensityConfig::Mixture { components } => {
                let built: Result<Vec<(f64, Density)>, HarnessError> = components
                    .iter()
                    .map(|c| Ok((c.weight, c.density.build(dim)?)))
                    .collect();
                Density::mixture(built?)?
            }
        })
    }

    /// Short human-readable tag for report metadata.
    pub fn label(&self) -> String {
        match self {
            DensityConfig::Uniform => "uniform".into(),
            DensityConfig::ExpTilt { kappa, .. } => format!("exp_tilt(kappa={kappa})"),
            DensityConfig::LinearTilt { eps, .. } => format!("linear_tilt(eps={eps})"),
            DensityConfig::Mixture { components } => {
                let parts: Vec<String> = components
                    .iter()
                    .map(|c| format!("{}:{}", c.weight, c.density.label()))
                    .collect();
                format!("mixture[{}]", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentMode {
    TFunc,
    LpDeficit,
    Containment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

fn default_distance_mode() -> DistanceMode {
    DistanceMode::MinOverFace
}

fn default_format() -> OutputFormat {
    OutputFormat::Json
}

/// One replicated experiment over a grid of point counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Ambient dimension, 2..=10.
    pub n: usize,
    /// Point counts, strictly increasing, each ≥ n+1.
    #[serde(rename = "N_grid")]
    pub n_grid: Vec<usize>,
    pub mode: ExperimentMode,
    /// T-functional exponents (TFunc mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// L_p index (LpDeficit mode), p ≤ 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub density: DensityConfig,
    /// Replicates per batch; with `se_rel_target` set, batches repeat
    /// until the target holds or `max_replicates` is reached.
    pub replicates: usize,
    pub master_seed: u64,
    #[serde(default = "default_distance_mode")]
    pub distance_mode: DistanceMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub se_rel_target: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_replicates: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |detail: String| Err(HarnessError::InvalidConfig { detail });
        if !(2..=10).contains(&self.n) {
            return fail(format!("dimension n = {} outside 2..=10", self.n));
        }
        if self.n_grid.is_empty() {
            return fail("empty N grid".into());
        }
        if !self.n_grid.windows(2).all(|w| w[0] < w[1]) {
            return fail("N grid must be strictly increasing".into());
        }
        if let Some(&smallest) = self.n_grid.first() {
            if smallest < self.n + 1 {
                return fail(format!(
                    "N = {smallest} is below n+1 = {}",
                    self.n + 1
                ));
            }
        }
        if self.replicates < 2 {
            return fail(format!("need at least 2 replicates, got {}", self.replicates));
        }
        match self.mode {
            ExperimentMode::TFunc => {
                let (a, b) = (self.a.unwrap_or(f64::NAN), self.b.unwrap_or(f64::NAN));
                if !(a >= 0.0 && b >= 0.0) {
                    return fail(format!("t_func mode needs a ≥ 0 and b ≥ 0, got a={a}, b={b}"));
                }
            }
            ExperimentMode::LpDeficit => {
                let p = self.p.unwrap_or(f64::NAN);
                if !(p <= 1.0) {
                    return fail(format!("lp_deficit mode needs p ≤ 1, got {p}"));
                }
            }
            ExperimentMode::Containment => {}
        }
        if let Some(t) = self.se_rel_target {
            if !(t > 0.0) {
                return fail(format!("se_rel_target must be positive, got {t}"));
            }
        }
        if let Some(m) = self.max_replicates {
            if m < self.replicates {
                return fail("max_replicates below the batch size".into());
            }
        }
        // Build once to surface density errors early.
        self.density.build(self.n)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> ExperimentConfig {
        ExperimentConfig {
            n: 3,
            n_grid: vec![16, 32, 64],
            mode: ExperimentMode::TFunc,
            a: Some(0.0),
            b: Some(1.0),
            p: None,
            density: DensityConfig::Uniform,
            replicates: 8,
            master_seed: 1,
            distance_mode: DistanceMode::MinOverFace,
            se_rel_target: None,
            max_replicates: None,
            out_dir: None,
            format: OutputFormat::Json,
        }
    }

    #[test]
    fn density_grammar_round_trips() {
        let json = r#"{"family":"exp_tilt","kappa":2.0,"theta":[0,0,1]}"#;
        let cfg: DensityConfig = serde_json::from_str(json).unwrap();
        assert_eq!(
            cfg,
            DensityConfig::ExpTilt {
                kappa: 2.0,
                theta: vec![0.0, 0.0, 1.0]
            }
        );
        let d = cfg.build(3).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(cfg.build(2).is_err(), "axis length must match dimension");

        let mix = r#"{"family":"mixture","components":[
            {"weight":0.5,"density":{"family":"uniform"}},
            {"weight":0.5,"density":{"family":"linear_tilt","eps":0.3,"theta":[1,0,0]}}]}"#;
        let mix_cfg: DensityConfig = serde_json::from_str(mix).unwrap();
        assert!(mix_cfg.build(3).is_ok());
    }

    #[test]
    fn config_file_round_trip() {
        let cfg = base_config();
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"N_grid\""));
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.n_grid, cfg.n_grid);
        assert!(back.validate().is_ok());
    }

    #[test]
    fn validation_catches_bad_grids_and_params() {
        let mut c = base_config();
        c.n_grid = vec![16, 16];
        assert!(c.validate().is_err());
        c = base_config();
        c.n_grid = vec![3];
        assert!(c.validate().is_err(), "N below n+1");
        c = base_config();
        c.replicates = 1;
        assert!(c.validate().is_err());
        c = base_config();
        c.a = Some(-1.0);
        assert!(c.validate().is_err());
        c = base_config();
        c.mode = ExperimentMode::LpDeficit;
        c.p = Some(1.5);
        assert!(c.validate().is_err());
        c.p = Some(0.5);
        assert!(c.validate().is_ok());
    }
}

//! TOML experiment configurations.
//!
//! Every field is optional and defaults to the reference experiment, so an
//! empty file reproduces it. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use uplift_core::information::Outcome;
use uplift_core::profit::CostBenefitMatrix;
use uplift_core::sim::dirichlet::{uniform_joints, Concentration, DirichletSimConfig, PotentialJoint};
use uplift_core::sim::normal::NormalSimConfig;

use crate::error::CliError;

/// Read and parse a TOML file; `None` gives the defaults.
pub fn load<T: for<'de> Deserialize<'de> + Default>(path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {}", path.display(), e.message().trim())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MiOutcome {
    #[default]
    Y0,
    Y1,
}

impl From<MiOutcome> for Outcome {
    fn from(o: MiOutcome) -> Outcome {
        match o {
            MiOutcome::Y0 => Outcome::Y0,
            MiOutcome::Y1 => Outcome::Y1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormalConfigFile {
    pub master_seed: u64,
    pub n_features: usize,
    pub p_treat: f64,
    pub n_train: usize,
    pub n_test: usize,
    /// Coefficient scales; each one is run for every repetition.
    pub scales: Vec<f64>,
    pub eta0: f64,
    pub eta1: f64,
    pub c_reg: f64,
    pub repetitions: u64,
    pub mi_outcome: MiOutcome,
}

impl Default for NormalConfigFile {
    fn default() -> Self {
        let d = NormalSimConfig::default();
        NormalConfigFile {
            master_seed: d.master_seed,
            n_features: d.n_features,
            p_treat: d.p_treat,
            n_train: d.n_train,
            n_test: d.n_test,
            scales: vec![0.01, 0.1, 1.0, 10.0],
            eta0: d.eta0,
            eta1: d.eta1,
            c_reg: d.c_reg,
            repetitions: d.repetitions,
            mi_outcome: MiOutcome::Y0,
        }
    }
}

impl NormalConfigFile {
    /// One validated simulator configuration per scale.
    pub fn resolve(&self) -> Result<Vec<NormalSimConfig>, CliError> {
        if self.scales.is_empty() {
            return Err(CliError::Validation("invalid scales: need at least one scale".into()));
        }
        self.scales
            .iter()
            .map(|&scale_c| {
                let cfg = NormalSimConfig {
                    n_features: self.n_features,
                    p_treat: self.p_treat,
                    n_train: self.n_train,
                    n_test: self.n_test,
                    scale_c,
                    eta0: self.eta0,
                    eta1: self.eta1,
                    c_reg: self.c_reg,
                    repetitions: self.repetitions,
                    master_seed: self.master_seed,
                    mi_outcome: self.mi_outcome.into(),
                };
                cfg.validate()?;
                Ok(cfg)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostBenefitFile {
    pub cb00: f64,
    pub cb01: f64,
    pub cb10: f64,
    pub cb11: f64,
}

impl Default for CostBenefitFile {
    fn default() -> Self {
        let u = CostBenefitMatrix::UNITARY;
        CostBenefitFile {
            cb00: u.cb00,
            cb01: u.cb01,
            cb10: u.cb10,
            cb11: u.cb11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DirichletConfigFile {
    pub master_seed: u64,
    /// Target `(α, β, γ, δ)`.
    pub proportions: [f64; 4],
    /// Information ratio used to choose the concentration. Defaults to 0.01
    /// unless `concentration` is given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mi_ratio_target: Option<f64>,
    /// Explicit Dirichlet concentration `A`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concentration: Option<f64>,
    pub n_population: usize,
    pub repetitions: u64,
    pub p_treat: f64,
    pub tie_epsilon: f64,
    pub tie_z: f64,
    pub cost_benefit: CostBenefitFile,
    pub n_u_values: Vec<u64>,
    pub n_p_values: Vec<u64>,
    /// Proportions evaluated in sweep mode.
    pub sweep: Vec<[f64; 4]>,
    /// Number of proportions drawn uniformly from the simplex when `sweep`
    /// is empty.
    pub sweep_random_count: usize,
}

pub const DEFAULT_MI_RATIO: f64 = 0.01;

impl Default for DirichletConfigFile {
    fn default() -> Self {
        let d = DirichletSimConfig::default();
        DirichletConfigFile {
            master_seed: d.master_seed,
            proportions: d.proportions.as_array(),
            mi_ratio_target: None,
            concentration: None,
            n_population: d.n_population,
            repetitions: d.repetitions,
            p_treat: d.p_treat,
            tie_epsilon: d.tie_epsilon,
            tie_z: d.tie_z,
            cost_benefit: CostBenefitFile::default(),
            n_u_values: (1..=50).collect(),
            n_p_values: (1..=50).collect(),
            sweep: Vec::new(),
            sweep_random_count: 20,
        }
    }
}

impl DirichletConfigFile {
    pub fn resolve(&self) -> Result<DirichletSimConfig, CliError> {
        let concentration = match (self.mi_ratio_target, self.concentration) {
            (Some(_), Some(_)) => {
                return Err(CliError::Validation(
                    "invalid concentration: give either mi_ratio_target or concentration, not both".into(),
                ))
            }
            (Some(r), None) => Concentration::MiRatio(r),
            (None, Some(a)) => Concentration::Total(a),
            (None, None) => Concentration::MiRatio(DEFAULT_MI_RATIO),
        };
        let cb = &self.cost_benefit;
        let cfg = DirichletSimConfig {
            proportions: PotentialJoint::from_array(self.proportions)?,
            concentration,
            n_population: self.n_population,
            n_u: self.n_u_values.first().copied().unwrap_or(1),
            n_p: self.n_p_values.first().copied().unwrap_or(1),
            cb: CostBenefitMatrix::new(cb.cb00, cb.cb01, cb.cb10, cb.cb11)?,
            repetitions: self.repetitions,
            master_seed: self.master_seed,
            p_treat: self.p_treat,
            tie_epsilon: self.tie_epsilon,
            tie_z: self.tie_z,
        };
        cfg.validate()?;
        uplift_core::sim::dirichlet::check_ranges(&self.n_u_values, &self.n_p_values)?;
        Ok(cfg)
    }

    /// Proportions for sweep mode.
    pub fn sweep_joints(&self) -> Result<Vec<PotentialJoint>, CliError> {
        if self.sweep.is_empty() {
            if self.sweep_random_count == 0 {
                return Err(CliError::Validation(
                    "invalid sweep: give proportions or a positive sweep_random_count".into(),
                ));
            }
            return Ok(uniform_joints(self.master_seed, self.sweep_random_count)?);
        }
        Ok(self
            .sweep
            .iter()
            .map(|&p| PotentialJoint::from_array(p))
            .collect::<Result<_, _>>()?)
    }
}

/// Inputs of an `eval` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub data: PathBuf,
    pub unitary: bool,
    /// Write curves on the `k`-scaled scale instead of per capita.
    #[serde(default)]
    pub raw: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_reference_setup() {
        let n: NormalConfigFile = toml::from_str("").unwrap();
        assert_eq!(n, NormalConfigFile::default());
        let cfgs = n.resolve().unwrap();
        assert_eq!(cfgs.len(), 4);
        assert_eq!(
            (cfgs[0].n_features, cfgs[0].p_treat, cfgs[0].n_train, cfgs[0].n_test, cfgs[0].repetitions),
            (10, 0.04, 1000, 10_000, 100)
        );
        let d: DirichletConfigFile = toml::from_str("").unwrap();
        let cfg = d.resolve().unwrap();
        assert_eq!(cfg.concentration, Concentration::MiRatio(0.01));
        assert_eq!(d.n_u_values.len(), 50);
    }

    #[test]
    fn unknown_and_mistyped_fields_named() {
        let err = toml::from_str::<NormalConfigFile>("n_trian = 5").unwrap_err();
        assert!(err.message().contains("n_trian"), "{}", err.message());
        let err = toml::from_str::<NormalConfigFile>("p_treat = \"high\"").unwrap_err();
        assert!(err.to_string().contains("p_treat"), "{err}");
    }

    #[test]
    fn range_errors_named() {
        let n: NormalConfigFile = toml::from_str("p_treat = 1.5").unwrap();
        let msg = n.resolve().unwrap_err().to_string();
        assert!(msg.contains("p_treat"), "{msg}");
        let d: DirichletConfigFile = toml::from_str("mi_ratio_target = 0.1\nconcentration = 3.0").unwrap();
        assert!(d.resolve().is_err());
        let d: DirichletConfigFile = toml::from_str("n_u_values = []").unwrap();
        assert!(d.resolve().is_err());
    }

    #[test]
    fn sweep_proportions() {
        let d: DirichletConfigFile = toml::from_str("sweep = [[0.25, 0.25, 0.25, 0.25]]").unwrap();
        assert_eq!(d.sweep_joints().unwrap().len(), 1);
        let d: DirichletConfigFile = toml::from_str("sweep_random_count = 3").unwrap();
        let joints = d.sweep_joints().unwrap();
        assert_eq!(joints.len(), 3);
        assert_eq!(joints, d.sweep_joints().unwrap());
    }
}

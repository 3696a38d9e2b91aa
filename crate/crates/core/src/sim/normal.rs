//! Normal features with linear-threshold potential outcomes.
//!
//! Each individual has `x ~ N(0, I_n)`, one noise term `ε ~ N(0, 1)` and
//! `y_t = 1[λ_tᵀx + ε >= η_t]`, so `S_t(x) = Φ(λ_tᵀx - η_t)`. The scale `c`
//! of the coefficients controls how much the features reveal about the
//! outcomes.

use alloc::vec::Vec;

use super::{aupc_for_scores, NORMAL_TAG};
use crate::information::{empirical_mutual_information, Outcome};
use crate::models::{predictive_scores, uplift_scores, FeatureMatrix, LabeledDataset};
use crate::numerics::{normal_cdf, RngStream};
use crate::profit::CostBenefitMatrix;
use crate::{Error, Result};

const COEFFICIENTS_STREAM: u64 = 0;
const TRAIN_STREAM: u64 = 1;
const TEST_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct NormalSimConfig {
    pub n_features: usize,
    /// Randomization probability `P(t = 1)`.
    pub p_treat: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub scale_c: f64,
    pub eta0: f64,
    pub eta1: f64,
    /// Inverse regularization strength of both logistic models.
    pub c_reg: f64,
    pub repetitions: u64,
    pub master_seed: u64,
    /// Outcome whose information ratio is reported.
    pub mi_outcome: Outcome,
}

impl Default for NormalSimConfig {
    fn default() -> Self {
        NormalSimConfig {
            n_features: 10,
            p_treat: 0.04,
            n_train: 1000,
            n_test: 10_000,
            scale_c: 1.0,
            eta0: 1.12,
            eta1: 0.87,
            c_reg: 10.0,
            repetitions: 100,
            master_seed: 0,
            mi_outcome: Outcome::Y0,
        }
    }
}

impl NormalSimConfig {
    pub fn validate(&self) -> Result<()> {
        let checks: [(bool, &'static str, &str); 8] = [
            (self.n_features >= 1, "n_features", "must be at least 1"),
            (self.p_treat > 0.0 && self.p_treat < 1.0, "p_treat", "must lie in (0, 1)"),
            (self.n_train >= 1, "n_train", "must be at least 1"),
            (self.n_test >= 1, "n_test", "must be at least 1"),
            (self.scale_c > 0.0 && self.scale_c.is_finite(), "scale_c", "must be positive and finite"),
            (self.eta0.is_finite() && self.eta1.is_finite(), "eta", "thresholds must be finite"),
            (self.c_reg > 0.0 && self.c_reg.is_finite(), "c_reg", "must be positive and finite"),
            (self.repetitions >= 1, "repetitions", "must be at least 1"),
        ];
        for (ok, what, detail) in checks {
            if !ok {
                return Err(Error::domain(what, detail));
            }
        }
        Ok(())
    }
}

/// Outcome coefficients of one repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub lambda0: Vec<f64>,
    pub lambda1: Vec<f64>,
}

/// `λ0 ~ N(1.2c, c²)` and `λ1 ~ N(c, c)` entrywise (standard deviations `c`
/// and `√c`).
pub fn draw_coefficients(cfg: &NormalSimConfig, rng: &mut RngStream) -> Result<Coefficients> {
    if !(cfg.scale_c > 0.0) {
        return Err(Error::domain("scale_c", "must be positive"));
    }
    let c = cfg.scale_c;
    let lambda0 = (0..cfg.n_features).map(|_| rng.normal(1.2 * c, c)).collect();
    let lambda1 = (0..cfg.n_features).map(|_| rng.normal(c, libm::sqrt(c))).collect();
    Ok(Coefficients { lambda0, lambda1 })
}

/// Observed sample plus the true outcome probabilities of every row.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedData {
    pub data: LabeledDataset,
    pub true_s0: Vec<f64>,
    pub true_s1: Vec<f64>,
}

pub fn generate_dataset(
    cfg: &NormalSimConfig,
    coefficients: &Coefficients,
    size: usize,
    rng: &mut RngStream,
) -> Result<GeneratedData> {
    let n = cfg.n_features;
    if coefficients.lambda0.len() != n || coefficients.lambda1.len() != n {
        return Err(Error::domain("coefficients", "length must equal n_features"));
    }
    let mut features = Vec::with_capacity(size * n);
    let mut y = Vec::with_capacity(size);
    let mut t = Vec::with_capacity(size);
    let mut true_s0 = Vec::with_capacity(size);
    let mut true_s1 = Vec::with_capacity(size);
    for _ in 0..size {
        let start = features.len();
        features.extend((0..n).map(|_| rng.standard_normal()));
        let x = &features[start..];
        let eps = rng.standard_normal();
        let treated = rng.bernoulli(cfg.p_treat);
        let z0: f64 = coefficients.lambda0.iter().zip(x).map(|(l, v)| l * v).sum();
        let z1: f64 = coefficients.lambda1.iter().zip(x).map(|(l, v)| l * v).sum();
        let (z, eta) = if treated { (z1, cfg.eta1) } else { (z0, cfg.eta0) };
        y.push(z + eps >= eta);
        t.push(treated);
        true_s0.push(normal_cdf(z0 - cfg.eta0)?);
        true_s1.push(normal_cdf(z1 - cfg.eta1)?);
    }
    Ok(GeneratedData {
        data: LabeledDataset::new(FeatureMatrix::new(size, n, features)?, y, t)?,
        true_s0,
        true_s1,
    })
}

/// Result of one repetition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalRepetition {
    pub rep: u64,
    pub scale_c: f64,
    /// Information ratio of the configured outcome over the test set.
    pub mi_ratio: f64,
    pub aupc_uplift: f64,
    pub aupc_predictive: f64,
    /// AUPC when ranking by the true `S0 - S1`.
    pub aupc_oracle: f64,
    /// Mean true `S0` over the test set.
    pub measured_s0: f64,
    pub measured_s1: f64,
}

/// The stream of repetition `rep`. It does not depend on the scale, so runs
/// at different scales share their underlying normal draws.
pub fn repetition_stream(master_seed: u64, rep: u64) -> RngStream {
    RngStream::new(master_seed, &[NORMAL_TAG, rep])
}

pub fn run_repetition(cfg: &NormalSimConfig, rep: u64) -> Result<NormalRepetition> {
    cfg.validate()?;
    run_repetition_unchecked(cfg, rep).map_err(|e| e.in_repetition(rep))
}

fn run_repetition_unchecked(cfg: &NormalSimConfig, rep: u64) -> Result<NormalRepetition> {
    let stream = repetition_stream(cfg.master_seed, rep);
    let coefficients = draw_coefficients(cfg, &mut stream.child(COEFFICIENTS_STREAM))?;
    let train = generate_dataset(cfg, &coefficients, cfg.n_train, &mut stream.child(TRAIN_STREAM))?;
    let test = generate_dataset(cfg, &coefficients, cfg.n_test, &mut stream.child(TEST_STREAM))?;

    let test_x = test.data.features();
    let predictive = predictive_scores(&train.data, test_x, cfg.c_reg)?;
    let uplift = uplift_scores(&train.data, test_x, cfg.c_reg)?;
    let oracle: Vec<f64> = test.true_s0.iter().zip(&test.true_s1).map(|(a, b)| a - b).collect();

    let (y, t) = (test.data.y(), test.data.t());
    let cb = CostBenefitMatrix::UNITARY;
    let truth = match cfg.mi_outcome {
        Outcome::Y0 => &test.true_s0,
        Outcome::Y1 => &test.true_s1,
    };
    let n = cfg.n_test as f64;
    Ok(NormalRepetition {
        rep,
        scale_c: cfg.scale_c,
        mi_ratio: empirical_mutual_information(truth)?.mi_ratio,
        aupc_uplift: aupc_for_scores(y, t, &uplift, cb)?,
        aupc_predictive: aupc_for_scores(y, t, &predictive, cb)?,
        aupc_oracle: aupc_for_scores(y, t, &oracle, cb)?,
        measured_s0: test.true_s0.iter().sum::<f64>() / n,
        measured_s1: test.true_s1.iter().sum::<f64>() / n,
    })
}

/// All repetitions in order, run sequentially.
pub fn run_normal_experiment(cfg: &NormalSimConfig) -> Result<Vec<NormalRepetition>> {
    cfg.validate()?;
    (0..cfg.repetitions).map(|rep| run_repetition(cfg, rep)).collect()
}

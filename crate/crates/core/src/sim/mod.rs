//! Synthetic experiments comparing uplift and predictive targeting.
//!
//! Every repetition draws its randomness from an [`RngStream`] keyed by the
//! experiment tag and the repetition's coordinates, so repetitions can run in
//! any order or in parallel and still reproduce exactly.
//!
//! [`RngStream`]: crate::numerics::RngStream

pub mod dirichlet;
pub mod normal;

use alloc::vec::Vec;

use crate::curves::{aupc, empirical_profit_curve, CurveRow, RankedDataset};
use crate::profit::CostBenefitMatrix;
use crate::Result;

/// Stream-key tag of the normal-feature experiment.
pub const NORMAL_TAG: u64 = 0x4E4F_524D;
/// Stream-key tag of the Dirichlet experiment.
pub const DIRICHLET_TAG: u64 = 0x4449_5249;
/// Stream-key tag used to derive per-joint seeds in an outcome sweep.
pub const SWEEP_TAG: u64 = 0x5357_4550;

/// AUPC of the empirical profit curve obtained by ranking observed
/// `(y, t)` rows by `scores`.
pub fn aupc_for_scores(y: &[bool], t: &[bool], scores: &[f64], cb: CostBenefitMatrix) -> Result<f64> {
    let rows: Vec<CurveRow> = y
        .iter()
        .zip(t)
        .zip(scores)
        .map(|((&y, &t), &s)| CurveRow::new(y, t, s, cb))
        .collect();
    aupc(&empirical_profit_curve(&RankedDataset::from_unsorted(rows)?)?)
}

/// One-sided exact sign test: `P(X >= wins)` for `X ~ Binomial(trials, 1/2)`.
///
/// Returns 1 when there are no trials.
pub fn sign_test_p_value(wins: usize, trials: usize) -> f64 {
    if wins == 0 || trials == 0 {
        return 1.0;
    }
    if wins > trials {
        return 0.0;
    }
    let n = trials as f64;
    let ln_half_n = -n * core::f64::consts::LN_2;
    // ln C(n, k) built up incrementally from k = 0
    let mut ln_choose = 0.0;
    let mut p = 0.0;
    for k in 0..=trials {
        if k > 0 {
            ln_choose += libm::log((trials - k + 1) as f64) - libm::log(k as f64);
        }
        if k >= wins {
            p += libm::exp(ln_choose + ln_half_n);
        }
    }
    p.min(1.0)
}

/// Mean and sample standard deviation. The deviation is 0 for fewer than
/// two values.
pub fn mean_and_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, libm::sqrt(ss / (n - 1.0)))
}

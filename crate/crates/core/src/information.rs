//! Entropies and mutual-information ratios of binary outcomes, in nats.
//!
//! The Dirichlet functions give closed forms for the expected conditional
//! entropy of the potential outcomes when the joint law
//! `μ = (α, β, γ, δ)` over `(y0, y1) ∈ {(0,0), (1,0), (0,1), (1,1)}` is drawn
//! from `Dir(a, b, c, d)`.

use crate::numerics::digamma;
use crate::{Error, Result};

/// Shannon entropy of a Bernoulli(p) variable. `0 log 0` is taken as 0.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", "probability must lie in [0, 1]"));
    }
    Ok(xlogx_neg(p) + xlogx_neg(1.0 - p))
}

fn xlogx_neg(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * libm::log(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformation {
    /// Mean of the conditional probabilities.
    pub prior: f64,
    /// `H(prior) - mean H(p_i)`, clamped at 0.
    pub mi: f64,
    /// `mi / H(prior)`; 0 when the prior is degenerate.
    pub mi_ratio: f64,
}

/// Plug-in mutual information between features and a binary outcome, given
/// each individual's conditional success probability.
pub fn empirical_mutual_information(conditional_probs: &[f64]) -> Result<MutualInformation> {
    if conditional_probs.is_empty() {
        return Err(Error::domain("conditional_probs", "need at least one probability"));
    }
    let n = conditional_probs.len() as f64;
    let mut sum = 0.0;
    let mut cond = 0.0;
    for &p in conditional_probs {
        cond += binary_entropy(p)?;
        sum += p;
    }
    // rounding can push the mean a hair outside [0, 1]
    let prior = (sum / n).clamp(0.0, 1.0);
    let h = binary_entropy(prior)?;
    let mi = (h - cond / n).max(0.0);
    let mi_ratio = if h > 0.0 { (mi / h).min(1.0) } else { 0.0 };
    Ok(MutualInformation { prior, mi, mi_ratio })
}

/// Expected conditional entropies under a Dirichlet prior on `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    /// `E[H(y0, y1 | μ)]`
    pub joint: f64,
    /// `E[H(y0 | μ)]`
    pub marginal_y0: f64,
    /// `E[H(y1 | μ)]`
    pub marginal_y1: f64,
}

fn check_parameters(m: &[f64; 4]) -> Result<()> {
    if m.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(Error::domain(
            "dirichlet parameters",
            alloc::format!("all four parameters must be positive and finite, got {m:?}"),
        ))
    }
}

/// `ψ(A + 1) - Σ_j (m_j / A) ψ(m_j + 1)`: the expected entropy of a
/// categorical whose probabilities are `Dir(m)`.
fn expected_categorical_entropy(m: &[f64]) -> Result<f64> {
    let total: f64 = m.iter().sum();
    let mut acc = digamma(total + 1.0)?;
    for &mj in m {
        acc -= mj / total * digamma(mj + 1.0)?;
    }
    // the exact value is nonnegative; cancellation at huge A can leave -1e-16
    Ok(acc.max(0.0))
}

/// Closed-form expected conditional entropies for `μ ~ Dir(a, b, c, d)`.
///
/// `y0 = 1` on the `β` and `δ` cells and `y1 = 1` on `γ` and `δ`, so the
/// marginals follow from Dirichlet aggregation: `S0 ~ Beta(b + d, a + c)` and
/// `S1 ~ Beta(c + d, a + b)`.
pub fn dirichlet_conditional_entropy(a: f64, b: f64, c: f64, d: f64) -> Result<EntropyReport> {
    check_parameters(&[a, b, c, d])?;
    Ok(EntropyReport {
        joint: expected_categorical_entropy(&[a, b, c, d])?,
        marginal_y0: expected_categorical_entropy(&[b + d, a + c])?,
        marginal_y1: expected_categorical_entropy(&[c + d, a + b])?,
    })
}

/// Which potential outcome an information ratio refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Y0,
    Y1,
}

/// `(H(y_t) - E[H(y_t | μ)]) / H(y_t)` for `μ ~ Dir(m)`, where `H(y_t)` is
/// the entropy of the outcome's prior probability.
pub fn dirichlet_mi_ratio(m: &[f64; 4], outcome: Outcome) -> Result<f64> {
    check_parameters(m)?;
    let total: f64 = m.iter().sum();
    let (prior, conditional) = match outcome {
        Outcome::Y0 => (
            (m[1] + m[3]) / total,
            expected_categorical_entropy(&[m[1] + m[3], m[0] + m[2]])?,
        ),
        Outcome::Y1 => (
            (m[2] + m[3]) / total,
            expected_categorical_entropy(&[m[2] + m[3], m[0] + m[1]])?,
        ),
    };
    let h = binary_entropy(prior.clamp(0.0, 1.0))?;
    if h <= 0.0 {
        return Ok(0.0);
    }
    Ok(((h - conditional) / h).clamp(0.0, 1.0))
}

/// Concentration used for "no information".
pub const NO_INFORMATION_CONCENTRATION: f64 = 1e5;

const LOG_A_LOW: f64 = -18.420_680_743_952_367; // ln 1e-8
const LOG_A_HIGH: f64 = 27.631_021_115_928_547; // ln 1e12
const RATIO_TOLERANCE: f64 = 1e-4;

/// Total concentration `A` such that `Dir(A · proportions)` has the
/// requested y0 information ratio.
///
/// The ratio falls monotonically from 1 towards 0 as `A` grows, so the root
/// is found by bisection on `ln A`, stopping once the ratio is within 1e-4
/// of the target. A target of exactly 0 maps to [`NO_INFORMATION_CONCENTRATION`].
pub fn concentration_for_mi_ratio(proportions: &[f64; 4], target: f64) -> Result<f64> {
    check_parameters(proportions)?;
    if !(0.0..1.0).contains(&target) {
        return Err(Error::domain("mi_ratio_target", "target ratio must lie in [0, 1)"));
    }
    if target == 0.0 {
        return Ok(NO_INFORMATION_CONCENTRATION);
    }
    let total: f64 = proportions.iter().sum();
    let s0 = (proportions[1] + proportions[3]) / total;
    if binary_entropy(s0.clamp(0.0, 1.0))? <= 0.0 {
        return Err(Error::domain("proportions", "y0 has no uncertainty to explain"));
    }
    let ratio_at = |log_a: f64| -> Result<f64> {
        let a = libm::exp(log_a);
        let m = proportions.map(|p| p / total * a);
        dirichlet_mi_ratio(&m, Outcome::Y0)
    };
    let (mut lo, mut hi) = (LOG_A_LOW, LOG_A_HIGH);
    let (r_lo, r_hi) = (ratio_at(lo)?, ratio_at(hi)?);
    if target > r_lo || target < r_hi {
        return Err(Error::domain(
            "mi_ratio_target",
            alloc::format!("target {target} outside attainable range [{r_hi}, {r_lo}]"),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = ratio_at(mid)?;
        if (r - target).abs() <= RATIO_TOLERANCE {
            return Ok(libm::exp(mid));
        }
        if r > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(libm::exp(0.5 * (lo + hi)))
}

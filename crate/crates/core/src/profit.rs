//! Individual and campaign causal profit.
//!
//! Expectations over the feature distribution are realized as uniform means
//! over the rows of a finite [`Population`]. Individuals are ranked by score
//! descending, ties broken by input position (earlier ranks higher), so the
//! targeted set for a treatment rate is always well defined.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Monetary value of each (outcome, treatment) cell, `cb[y][t]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBenefitMatrix {
    pub cb00: f64,
    pub cb01: f64,
    pub cb10: f64,
    pub cb11: f64,
}

impl CostBenefitMatrix {
    /// `[[1, 1], [0, 0]]`: every non-responder is worth one unit and the
    /// treatment is free. Under this matrix causal profit equals uplift.
    pub const UNITARY: CostBenefitMatrix = CostBenefitMatrix {
        cb00: 1.0,
        cb01: 1.0,
        cb10: 0.0,
        cb11: 0.0,
    };

    pub fn new(cb00: f64, cb01: f64, cb10: f64, cb11: f64) -> Result<Self> {
        let cb = CostBenefitMatrix { cb00, cb01, cb10, cb11 };
        cb.validate()?;
        Ok(cb)
    }

    /// Build from rows indexed by outcome: `[[cb00, cb01], [cb10, cb11]]`.
    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn validate(&self) -> Result<()> {
        if [self.cb00, self.cb01, self.cb10, self.cb11].iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::domain("cost-benefit matrix", "entries must be finite"))
        }
    }

    /// Value of the cell for outcome `y` under treatment `t`.
    pub fn value(&self, y: bool, t: bool) -> f64 {
        match (y, t) {
            (false, false) => self.cb00,
            (false, true) => self.cb01,
            (true, false) => self.cb10,
            (true, true) => self.cb11,
        }
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.cb00, self.cb01], [self.cb10, self.cb11]]
    }
}

/// Treatment arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    Control,
    Treated,
}

impl Arm {
    pub fn is_treated(self) -> bool {
        self == Arm::Treated
    }
}

/// One unit of the population: its true outcome probabilities under each arm,
/// its cost-benefit matrix and the score a model assigned to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndividualProfile {
    /// P(y0 = 1 | x).
    pub s0: f64,
    /// P(y1 = 1 | x).
    pub s1: f64,
    pub cb: CostBenefitMatrix,
    pub score: f64,
}

impl IndividualProfile {
    pub fn new(s0: f64, s1: f64, cb: CostBenefitMatrix, score: f64) -> Result<Self> {
        let p = IndividualProfile { s0, s1, cb, score };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.s0) {
            return Err(Error::domain("s0", "probability must lie in [0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.s1) {
            return Err(Error::domain("s1", "probability must lie in [0, 1]"));
        }
        if self.score.is_nan() {
            return Err(Error::domain("score", "score must not be NaN"));
        }
        self.cb.validate()
    }

    /// Individual uplift `s0 - s1`.
    pub fn uplift(&self) -> f64 {
        self.s0 - self.s1
    }
}

/// Expected profit of applying arm `t` to the individual:
/// `CB[0][t] (1 - S_t) + CB[1][t] S_t`.
pub fn individual_action_profit(p: &IndividualProfile, t: Arm) -> f64 {
    let s = match t {
        Arm::Control => p.s0,
        Arm::Treated => p.s1,
    };
    let treated = t.is_treated();
    p.cb.value(false, treated) * (1.0 - s) + p.cb.value(true, treated) * s
}

/// Expected profit of treating minus not treating the individual.
pub fn individual_causal_profit(p: &IndividualProfile) -> f64 {
    individual_action_profit(p, Arm::Treated) - individual_action_profit(p, Arm::Control)
}

/// A finite population standing in for the feature distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    individuals: Vec<IndividualProfile>,
}

impl Population {
    pub fn new(individuals: Vec<IndividualProfile>) -> Result<Self> {
        if individuals.is_empty() {
            return Err(Error::domain("population", "population must be nonempty"));
        }
        for p in &individuals {
            p.validate()?;
        }
        Ok(Population { individuals })
    }

    pub fn individuals(&self) -> &[IndividualProfile] {
        &self.individuals
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    /// Indices sorted by score descending, ties by index ascending.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        // stable sort keeps index order among equal scores
        order.sort_by(|&a, &b| self.individuals[b].score.total_cmp(&self.individuals[a].score));
        order
    }

    /// Membership mask of the `count` top-ranked individuals.
    pub fn targeted_mask(&self, count: usize) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.len()];
        for &i in self.ranking().iter().take(count) {
            mask[i] = true;
        }
        mask
    }
}

/// Threshold realizing a treatment rate on a finite population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    /// Score of the lowest-ranked targeted individual.
    pub tau: f64,
    /// `ceil(N * rho)`.
    pub targeted_count: usize,
}

fn check_rate(rho: f64) -> Result<()> {
    if rho > 0.0 && rho < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("rho", "treatment rate must lie in (0, 1)"))
    }
}

/// `ceil(n * rho)`, snapping products within 1e-9 relative of an integer so
/// that a rate computed as `m / n` maps back to exactly `m`.
pub fn targeted_count(n: usize, rho: f64) -> usize {
    let x = n as f64 * rho;
    let nearest = libm::round(x);
    let k = if (x - nearest).abs() <= 1e-9 * x.max(1.0) {
        nearest
    } else {
        libm::ceil(x)
    };
    (k as usize).min(n)
}

/// Score threshold and number of targeted individuals for rate `rho`.
pub fn threshold_for_rate(pop: &Population, rho: f64) -> Result<Threshold> {
    check_rate(rho)?;
    let targeted_count = targeted_count(pop.len(), rho).max(1);
    let order = pop.ranking();
    let tau = pop.individuals[order[targeted_count - 1]].score;
    Ok(Threshold { tau, targeted_count })
}

/// Action, baseline and causal profit of a campaign (all per individual).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignProfits {
    pub action_profit: f64,
    pub baseline_profit: f64,
    pub causal_profit: f64,
    /// Causal profit computed as the mean of `π(x) 1[targeted]`.
    pub causal_profit_targeted: f64,
    /// Realized rate `targeted_count / N`.
    pub realized_rate: f64,
}

/// Campaign profits when targeting the top `rho` fraction by score.
pub fn campaign_profits(pop: &Population, rho: f64) -> Result<CampaignProfits> {
    let threshold = threshold_for_rate(pop, rho)?;
    Ok(campaign_profits_top_k(pop, threshold.targeted_count))
}

/// Campaign profits when targeting exactly the `count` top-ranked individuals.
///
/// The action profit weights the targeted and untargeted group means by the
/// realized rate `count / N`; `causal_profit_targeted` is the alternative
/// route through the individual causal profit of the targeted group only.
pub fn campaign_profits_top_k(pop: &Population, count: usize) -> CampaignProfits {
    let n = pop.len();
    let count = count.min(n);
    let mask = pop.targeted_mask(count);
    let mut treated_sum = 0.0;
    let mut untreated_sum = 0.0;
    let mut baseline_sum = 0.0;
    let mut gain_sum = 0.0;
    for (p, &targeted) in pop.individuals.iter().zip(&mask) {
        let pi0 = individual_action_profit(p, Arm::Control);
        baseline_sum += pi0;
        if targeted {
            treated_sum += individual_action_profit(p, Arm::Treated);
            gain_sum += individual_causal_profit(p);
        } else {
            untreated_sum += pi0;
        }
    }
    let rate = count as f64 / n as f64;
    let targeted_mean = if count > 0 { treated_sum / count as f64 } else { 0.0 };
    let untargeted_mean = if count < n { untreated_sum / (n - count) as f64 } else { 0.0 };
    let action_profit = rate * targeted_mean + (1.0 - rate) * untargeted_mean;
    let baseline_profit = baseline_sum / n as f64;
    CampaignProfits {
        action_profit,
        baseline_profit,
        causal_profit: action_profit - baseline_profit,
        causal_profit_targeted: gain_sum / n as f64,
        realized_rate: rate,
    }
}

/// The causal confusion matrix route to campaign profit, for a population
/// sharing a single cost-benefit matrix.
///
/// `F_yt(τ)` is the probability-weighted fraction of individuals scoring
/// strictly below `τ` (weights `1 - S_t` for `y = 0`, `S_t` for `y = 1`);
/// `CF(τ)` is assembled from it, `E(τ) = CF(τ) - CF(∞)`, and the result is
/// the Frobenius product `E(τ) ⊕ CB`.
pub fn verbeke_causal_profit(pop: &Population, tau: f64, cb: &CostBenefitMatrix) -> Result<f64> {
    cb.validate()?;
    if let Some(index) = pop.individuals.iter().position(|p| p.cb != *cb) {
        return Err(Error::NonConstantCostBenefit { index });
    }
    let n = pop.len() as f64;
    // [t][y]: total weight and weight below tau
    let mut weight = [[0.0; 2]; 2];
    let mut below = [[0.0; 2]; 2];
    for p in &pop.individuals {
        let is_below = p.score < tau;
        for (t, s) in [p.s0, p.s1].into_iter().enumerate() {
            let w = [1.0 - s, s];
            for y in 0..2 {
                weight[t][y] += w[y];
                if is_below {
                    below[t][y] += w[y];
                }
            }
        }
    }
    let cdf = |t: usize, y: usize| {
        if weight[t][y] > 0.0 {
            below[t][y] / weight[t][y]
        } else {
            0.0
        }
    };
    let s0 = weight[0][1] / n;
    let s1 = weight[1][1] / n;
    let cf = [
        [(1.0 - s0) * cdf(0, 0), (1.0 - s1) * (1.0 - cdf(1, 0))],
        [s0 * cdf(0, 1), s1 * (1.0 - cdf(1, 1))],
    ];
    let cf_inf = [[1.0 - s0, 0.0], [s0, 0.0]];
    let cb_rows = cb.rows();
    let mut total = 0.0;
    for y in 0..2 {
        for t in 0..2 {
            total += (cf[y][t] - cf_inf[y][t]) * cb_rows[y][t];
        }
    }
    Ok(total)
}

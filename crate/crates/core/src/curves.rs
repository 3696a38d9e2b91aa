//! Uplift curve, cost-sensitive empirical profit curve and their area.
//!
//! Both curves compare the treated and control arms among the `k`
//! highest-scored rows. Arm means are carried as fractions and the two arms
//! are combined over a common denominator, so that with the unitary
//! cost-benefit matrix (where every cell sum is an integer) the profit curve
//! reproduces the uplift curve bit for bit.

use alloc::vec::Vec;

use crate::profit::CostBenefitMatrix;
use crate::{Error, Result};

/// One observed test row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub outcome: bool,
    pub treated: bool,
    pub score: f64,
    pub cb: CostBenefitMatrix,
}

impl CurveRow {
    pub fn new(outcome: bool, treated: bool, score: f64, cb: CostBenefitMatrix) -> Self {
        CurveRow {
            outcome,
            treated,
            score,
            cb,
        }
    }

    /// The only cost-benefit cell this row reveals: the one for its observed
    /// outcome under its observed arm.
    pub fn observed_value(&self) -> f64 {
        self.cb.value(self.outcome, self.treated)
    }
}

/// Rows sorted by score descending; ties keep their original order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedDataset {
    rows: Vec<CurveRow>,
}

impl RankedDataset {
    /// Sort `rows` by score (stable, so ties stay in input order).
    pub fn from_unsorted(mut rows: Vec<CurveRow>) -> Result<Self> {
        if rows.iter().any(|r| r.score.is_nan()) {
            return Err(Error::domain("score", "scores must not be NaN"));
        }
        rows.sort_by(|a, b| b.score.total_cmp(&a.score));
        Ok(RankedDataset { rows })
    }

    /// Wrap rows that are already in descending score order.
    pub fn from_sorted(rows: Vec<CurveRow>) -> Result<Self> {
        if rows.iter().any(|r| r.score.is_nan()) {
            return Err(Error::domain("score", "scores must not be NaN"));
        }
        if rows.windows(2).any(|w| w[0].score < w[1].score) {
            return Err(Error::domain("rows", "rows must be sorted by score descending"));
        }
        Ok(RankedDataset { rows })
    }

    pub fn rows(&self) -> &[CurveRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn treated_count(&self) -> usize {
        self.rows.iter().filter(|r| r.treated).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `(·)·k` as in the curve definitions.
    Raw,
    /// Raw value divided by the dataset size.
    PerCapita,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub points: Vec<CurvePoint>,
    pub normalization: Normalization,
    /// Size of the dataset the curve was computed on.
    pub n: usize,
}

impl Curve {
    /// Same curve on the other scale.
    pub fn to_normalization(&self, normalization: Normalization) -> Curve {
        let n = self.n as f64;
        let factor = match (self.normalization, normalization) {
            (Normalization::Raw, Normalization::PerCapita) => 1.0 / n,
            (Normalization::PerCapita, Normalization::Raw) => n,
            _ => 1.0,
        };
        Curve {
            points: self
                .points
                .iter()
                .map(|p| CurvePoint {
                    k: p.k,
                    value: if factor == 1.0 { p.value } else { p.value * factor },
                })
                .collect(),
            normalization,
            n: self.n,
        }
    }

    pub fn value_at(&self, k: usize) -> Option<f64> {
        self.points.iter().find(|p| p.k == k).map(|p| p.value)
    }
}

/// Arm counters over the `k` top rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PrefixCounts {
    pub n0: u64,
    pub n1: u64,
    pub r0: u64,
    pub r1: u64,
}

/// Running `(n_t(k), r_t(k))` for k = 1..=N.
pub fn prefix_counts(d: &RankedDataset) -> Vec<PrefixCounts> {
    let mut c = PrefixCounts::default();
    d.rows
        .iter()
        .map(|row| {
            match (row.treated, row.outcome) {
                (false, y) => {
                    c.n0 += 1;
                    c.r0 += y as u64;
                }
                (true, y) => {
                    c.n1 += 1;
                    c.r1 += y as u64;
                }
            }
            c
        })
        .collect()
}

/// `a / b` kept unreduced.
#[derive(Clone, Copy)]
struct Fraction {
    num: f64,
    den: f64,
}

/// `(lhs - rhs) * k` over a common denominator.
fn scaled_difference(lhs: Fraction, rhs: Fraction, k: usize) -> f64 {
    (lhs.num * rhs.den - rhs.num * lhs.den) / (lhs.den * rhs.den) * k as f64
}

fn ensure_nonempty(d: &RankedDataset) -> Result<()> {
    if d.is_empty() {
        Err(Error::domain("dataset", "curve needs at least one row"))
    } else {
        Ok(())
    }
}

/// Uplift curve `(r0(k)/n0(k) - r1(k)/n1(k)) k`, with an empty arm's
/// response rate taken as 0.
pub fn uplift_curve(d: &RankedDataset) -> Result<Curve> {
    ensure_nonempty(d)?;
    let rate = |r: u64, n: u64| {
        if n == 0 {
            Fraction { num: 0.0, den: 1.0 }
        } else {
            Fraction {
                num: r as f64,
                den: n as f64,
            }
        }
    };
    let points = prefix_counts(d)
        .into_iter()
        .enumerate()
        .map(|(i, c)| CurvePoint {
            k: i + 1,
            value: scaled_difference(rate(c.r0, c.n0), rate(c.r1, c.n1), i + 1),
        })
        .collect();
    Ok(Curve {
        points,
        normalization: Normalization::Raw,
        n: d.len(),
    })
}

/// Empirical profit curve: mean observed profit of the treated rows minus
/// that of the control rows among the top `k`, times `k`.
///
/// Each row contributes only its observed cell `CB[y][t]`. An arm with no
/// rows in the prefix is valued as if its members were all non-responders,
/// i.e. at the mean `CB[0][t]` over the dataset's observed `(y = 0, t)` rows.
/// If there are no such rows, the mean `CB[0][t]` entry of all the rows'
/// matrices is used instead. This is the cost-sensitive counterpart of the
/// uplift curve's zero-rate rule, and makes the two curves agree exactly
/// under the unitary matrix, including prefixes with an empty arm.
pub fn empirical_profit_curve(d: &RankedDataset) -> Result<Curve> {
    ensure_nonempty(d)?;
    let mut fallback = [Fraction { num: 0.0, den: 0.0 }; 2];
    for row in d.rows.iter().filter(|r| !r.outcome) {
        let f = &mut fallback[row.treated as usize];
        f.num += row.observed_value();
        f.den += 1.0;
    }
    let n = d.len() as f64;
    let fallback = [false, true].map(|t| {
        let f = fallback[t as usize];
        let num = if f.den > 0.0 {
            f.num / f.den
        } else {
            d.rows.iter().map(|r| r.cb.value(false, t)).sum::<f64>() / n
        };
        Fraction { num, den: 1.0 }
    });

    let mut sums = [0.0f64; 2];
    let mut counts = [0u64; 2];
    let points = d
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let arm = row.treated as usize;
            sums[arm] += row.observed_value();
            counts[arm] += 1;
            let mean = |t: usize| {
                if counts[t] == 0 {
                    fallback[t]
                } else {
                    Fraction {
                        num: sums[t],
                        den: counts[t] as f64,
                    }
                }
            };
            CurvePoint {
                k: i + 1,
                value: scaled_difference(mean(1), mean(0), i + 1),
            }
        })
        .collect();
    Ok(Curve {
        points,
        normalization: Normalization::Raw,
        n: d.len(),
    })
}

/// Area under a curve: `(1/N) Σ_k raw(k)`.
///
/// A per-capita curve is rescaled first, so both normalizations of the same
/// curve give the same area. Points are summed in `k` order.
pub fn aupc(c: &Curve) -> Result<f64> {
    if c.points.is_empty() || c.n == 0 {
        return Err(Error::domain("curve", "AUPC needs a nonempty curve"));
    }
    let mut points = c.points.clone();
    points.sort_by_key(|p| p.k);
    let total: f64 = points.iter().map(|p| p.value).sum();
    Ok(match c.normalization {
        Normalization::Raw => total / c.n as f64,
        Normalization::PerCapita => total,
    })
}

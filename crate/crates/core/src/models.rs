//! L2-regularized logistic regression and the predictive / two-model uplift
//! scorers built on it.
//!
//! The training objective is
//! `(1/N) Σ [log(1 + e^z_i) - y_i z_i] + ‖w‖² / (2 C N)` with `z = wᵀx + b`,
//! which is the usual `C`-weighted formulation divided by `N`; the intercept
//! is not penalized. Features are used as given, so callers should
//! standardize them if their scales differ wildly.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Dense row-major matrix of features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::domain(
                "features",
                alloc::format!("{} values do not fill a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(FeatureMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("features", "rows have different lengths"));
        }
        Ok(FeatureMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact would yield nothing for zero columns
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Matrix made of the selected rows, in order.
    pub fn select(&self, keep: impl Fn(usize) -> bool) -> FeatureMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for i in (0..self.rows).filter(|&i| keep(i)) {
            data.extend_from_slice(self.row(i));
            rows += 1;
        }
        FeatureMatrix {
            rows,
            cols: self.cols,
            data,
        }
    }

    fn ensure_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(pos) => Err(Error::domain(
                "features",
                alloc::format!("non-finite value at row {}, column {}", pos / self.cols, pos % self.cols),
            )),
        }
    }
}

/// Features with observed outcome and treatment indicator per row.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: FeatureMatrix,
    y: Vec<bool>,
    t: Vec<bool>,
}

impl LabeledDataset {
    pub fn new(features: FeatureMatrix, y: Vec<bool>, t: Vec<bool>) -> Result<Self> {
        if y.len() != features.rows() || t.len() != features.rows() {
            return Err(Error::domain(
                "dataset",
                alloc::format!(
                    "{} feature rows but {} outcomes and {} treatment flags",
                    features.rows(),
                    y.len(),
                    t.len()
                ),
            ));
        }
        Ok(LabeledDataset { features, y, t })
    }

    pub fn features(&self) -> &FeatureMatrix {
        &self.features
    }

    pub fn y(&self) -> &[bool] {
        &self.y
    }

    pub fn t(&self) -> &[bool] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// Features and outcomes of the rows in one arm.
    pub fn arm(&self, treated: bool) -> (FeatureMatrix, Vec<bool>) {
        let x = self.features.select(|i| self.t[i] == treated);
        let y = self
            .y
            .iter()
            .zip(&self.t)
            .filter(|(_, &t)| t == treated)
            .map(|(&y, _)| y)
            .collect();
        (x, y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub intercept: f64,
}

impl LinearModel {
    pub fn zeros(n: usize) -> Self {
        LinearModel {
            weights: vec![0.0; n],
            intercept: 0.0,
        }
    }

    pub fn linear_score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::domain(
                "x",
                alloc::format!("expected {} features, got {}", self.weights.len(), x.len()),
            ));
        }
        Ok(self.intercept + dot(&self.weights, x))
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<f64> {
        Ok(sigmoid(self.linear_score(x)?))
    }

    fn to_params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.weights.len() + 1);
        p.push(self.intercept);
        p.extend_from_slice(&self.weights);
        p
    }

    fn from_params(p: &[f64]) -> Self {
        LinearModel {
            intercept: p[0],
            weights: p[1..].to_vec(),
        }
    }
}

/// Free-function form of [`LinearModel::predict_proba`].
pub fn predict_proba(m: &LinearModel, x: &[f64]) -> Result<f64> {
    m.predict_proba(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

/// `log(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + libm::log1p(libm::exp(-z.abs()))
}

/// Objective value and gradient at one parameter point. The gradient lists
/// the intercept component first, then one entry per weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticObjective {
    pub value: f64,
    pub gradient: Vec<f64>,
}

/// Evaluate the regularized training objective at `model`.
pub fn logistic_objective(x: &FeatureMatrix, y: &[bool], c_reg: f64, model: &LinearModel) -> Result<LogisticObjective> {
    let problem = Problem::new(x, y, c_reg)?;
    if model.weights.len() != x.cols() {
        return Err(Error::domain("model", "weight count does not match feature count"));
    }
    let p = model.to_params();
    Ok(LogisticObjective {
        value: problem.value(&p),
        gradient: problem.gradient(&p),
    })
}

struct Problem<'a> {
    x: &'a FeatureMatrix,
    y: &'a [bool],
    /// `1 / (C N)`, the weight-decay coefficient of the mean objective.
    decay: f64,
    n: f64,
}

impl<'a> Problem<'a> {
    fn new(x: &'a FeatureMatrix, y: &'a [bool], c_reg: f64) -> Result<Self> {
        if !(c_reg > 0.0) || !c_reg.is_finite() {
            return Err(Error::domain("c_reg", "regularization parameter must be positive and finite"));
        }
        if x.rows() == 0 {
            return Err(Error::domain("features", "need at least one training sample"));
        }
        if x.cols() == 0 {
            return Err(Error::domain("features", "need at least one feature"));
        }
        if y.len() != x.rows() {
            return Err(Error::domain("labels", "label count does not match row count"));
        }
        x.ensure_finite()?;
        let n = x.rows() as f64;
        Ok(Problem {
            x,
            y,
            decay: 1.0 / (c_reg * n),
            n,
        })
    }

    fn z(&self, p: &[f64], row: &[f64]) -> f64 {
        p[0] + dot(&p[1..], row)
    }

    fn value(&self, p: &[f64]) -> f64 {
        let nll: f64 = self
            .x
            .iter_rows()
            .zip(self.y)
            .map(|(row, &y)| {
                let z = self.z(p, row);
                softplus(z) - if y { z } else { 0.0 }
            })
            .sum();
        nll / self.n + 0.5 * self.decay * dot(&p[1..], &p[1..])
    }

    fn gradient(&self, p: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; p.len()];
        for (row, &y) in self.x.iter_rows().zip(self.y) {
            let r = sigmoid(self.z(p, row)) - y as u8 as f64;
            g[0] += r;
            for (gj, xj) in g[1..].iter_mut().zip(row) {
                *gj += r * xj;
            }
        }
        for (j, gj) in g.iter_mut().enumerate() {
            *gj /= self.n;
            if j > 0 {
                *gj += self.decay * p[j];
            }
        }
        g
    }

    /// Packed lower triangle, row by row.
    fn hessian(&self, p: &[f64]) -> Vec<f64> {
        let d = p.len();
        let mut h = vec![0.0; d * (d + 1) / 2];
        let mut aug = vec![1.0; d];
        for row in self.x.iter_rows() {
            aug[1..].copy_from_slice(row);
            let s = sigmoid(self.z(p, row));
            let w = s * (1.0 - s);
            let mut idx = 0;
            for i in 0..d {
                let wi = w * aug[i];
                for &aj in &aug[..=i] {
                    h[idx] += wi * aj;
                    idx += 1;
                }
            }
        }
        let mut idx = 0;
        for i in 0..d {
            for j in 0..=i {
                h[idx] /= self.n;
                if i == j && i > 0 {
                    h[idx] += self.decay;
                }
                idx += 1;
            }
        }
        h
    }
}

/// Solve `H s = rhs` for symmetric positive definite `H` (packed lower
/// triangle). Returns `None` when the factorization breaks down.
fn cholesky_solve(h: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let d = rhs.len();
    let at = |i: usize, j: usize| i * (i + 1) / 2 + j;
    let mut l = vec![0.0; h.len()];
    let max_diag = (0..d).map(|i| h[at(i, i)].abs()).fold(0.0, f64::max);
    for i in 0..d {
        for j in 0..=i {
            let mut s = h[at(i, j)];
            for k in 0..j {
                s -= l[at(i, k)] * l[at(j, k)];
            }
            if i == j {
                if !(s > 1e-14 * max_diag) {
                    return None;
                }
                l[at(i, i)] = libm::sqrt(s);
            } else {
                l[at(i, j)] = s / l[at(j, j)];
            }
        }
    }
    let mut z = rhs.to_vec();
    for i in 0..d {
        for k in 0..i {
            z[i] -= l[at(i, k)] * z[k];
        }
        z[i] /= l[at(i, i)];
    }
    for i in (0..d).rev() {
        for k in i + 1..d {
            z[i] -= l[at(k, i)] * z[k];
        }
        z[i] /= l[at(i, i)];
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

pub const MAX_ITERATIONS: usize = 200;
pub const GRADIENT_TOLERANCE: f64 = 1e-6;

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

/// Fit a logistic regression by damped Newton steps with an Armijo line
/// search, falling back to a steepest-descent step whenever the Hessian
/// cannot be factored.
pub fn train_logistic(x: &FeatureMatrix, y: &[bool], c_reg: f64) -> Result<LinearModel> {
    let problem = Problem::new(x, y, c_reg)?;
    let mut p = vec![0.0; x.cols() + 1];
    let mut f = problem.value(&p);
    let mut g = problem.gradient(&p);
    for iteration in 0..MAX_ITERATIONS {
        let gnorm = norm(&g);
        if gnorm <= GRADIENT_TOLERANCE {
            return Ok(LinearModel::from_params(&p));
        }
        let direction = match cholesky_solve(&problem.hessian(&p), &g) {
            Some(s) => s.iter().map(|v| -v).collect::<Vec<_>>(),
            None => g.iter().map(|v| -v).collect(),
        };
        let slope = dot(&g, &direction);
        let mut step = 1.0;
        let mut accepted = None;
        while step >= 1e-12 {
            let trial: Vec<f64> = p.iter().zip(&direction).map(|(a, d)| a + step * d).collect();
            let ft = problem.value(&trial);
            // the slack absorbs rounding once the objective has flattened out
            if ft <= f + 1e-4 * step * slope + 1e-15 * f.abs() {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((trial, ft)) => {
                p = trial;
                f = ft;
                g = problem.gradient(&p);
            }
            None => {
                return Err(Error::Convergence {
                    iterations: iteration + 1,
                    gradient_norm: gnorm,
                })
            }
        }
    }
    let gnorm = norm(&g);
    if gnorm <= GRADIENT_TOLERANCE {
        Ok(LinearModel::from_params(&p))
    } else {
        Err(Error::Convergence {
            iterations: MAX_ITERATIONS,
            gradient_norm: gnorm,
        })
    }
}

fn score_rows(model: &LinearModel, x: &FeatureMatrix) -> Result<Vec<f64>> {
    x.iter_rows().map(|row| model.predict_proba(row)).collect()
}

fn fit_arm(train: &LabeledDataset, treated: bool, c_reg: f64) -> Result<LinearModel> {
    let (x, y) = train.arm(treated);
    if x.rows() == 0 {
        let which = if treated { "treated" } else { "control" };
        return Err(Error::domain(
            "train",
            alloc::format!("training data has no {which} samples"),
        ));
    }
    train_logistic(&x, &y, c_reg)
}

/// Outcome probability under no treatment, from a model fit on the control
/// rows only.
pub fn predictive_scores(train: &LabeledDataset, test: &FeatureMatrix, c_reg: f64) -> Result<Vec<f64>> {
    score_rows(&fit_arm(train, false, c_reg)?, test)
}

/// Two-model uplift estimate `P(y=1 | control) - P(y=1 | treated)`.
pub fn uplift_scores(train: &LabeledDataset, test: &FeatureMatrix, c_reg: f64) -> Result<Vec<f64>> {
    let control = fit_arm(train, false, c_reg)?;
    let treated = fit_arm(train, true, c_reg)?;
    score_difference(&control, &treated, test)
}

fn score_difference(control: &LinearModel, treated: &LinearModel, x: &FeatureMatrix) -> Result<Vec<f64>> {
    x.iter_rows()
        .map(|row| Ok(control.predict_proba(row)? - treated.predict_proba(row)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RngStream;

    fn column(xs: &[f64]) -> FeatureMatrix {
        FeatureMatrix::new(xs.len(), 1, xs.to_vec()).unwrap()
    }

    #[test]
    fn predict_examples() {
        let zero = LinearModel::zeros(2);
        assert_eq!(zero.predict_proba(&[3.0, -1.0]).unwrap(), 0.5);
        let saturated = LinearModel {
            weights: vec![0.0],
            intercept: 30.0,
        };
        assert!(saturated.predict_proba(&[1.0]).unwrap() >= 1.0 - 1e-9);
        let m = LinearModel {
            weights: vec![1.0],
            intercept: 0.0,
        };
        let oracle = 1.0 / (1.0 + (-0.5f64).exp());
        assert!((oracle - 0.6224593).abs() < 1e-6);
        assert!((predict_proba(&m, &[0.5]).unwrap() - oracle).abs() < 1e-15);
        assert!(m.predict_proba(&[0.5, 1.0]).is_err());
    }

    #[test]
    fn sigmoid_is_monotone_and_stable() {
        let mut prev = 0.0;
        for i in -800..=800 {
            let s = sigmoid(i as f64);
            assert!(s.is_finite() && s >= prev);
            prev = s;
        }
        assert!((softplus(800.0) - 800.0).abs() < 1e-12);
        assert!(softplus(-800.0) >= 0.0);
    }

    fn random_problem(seed: u64, rows: usize, cols: usize) -> (FeatureMatrix, Vec<bool>) {
        let mut rng = RngStream::new(seed, &[]);
        let data: Vec<f64> = (0..rows * cols).map(|_| rng.standard_normal()).collect();
        let y = (0..rows).map(|_| rng.bernoulli(0.4)).collect();
        (FeatureMatrix::new(rows, cols, data).unwrap(), y)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (x, y) = random_problem(3, 60, 4);
        let mut rng = RngStream::new(4, &[]);
        let h = 1e-5;
        for _ in 0..10 {
            let model = LinearModel {
                weights: (0..4).map(|_| rng.normal(0.0, 2.0)).collect(),
                intercept: rng.normal(0.0, 2.0),
            };
            let obj = logistic_objective(&x, &y, 0.5, &model).unwrap();
            let p = model.to_params();
            for j in 0..p.len() {
                let mut plus = p.clone();
                let mut minus = p.clone();
                plus[j] += h;
                minus[j] -= h;
                let fp = logistic_objective(&x, &y, 0.5, &LinearModel::from_params(&plus)).unwrap().value;
                let fm = logistic_objective(&x, &y, 0.5, &LinearModel::from_params(&minus)).unwrap().value;
                let fd = (fp - fm) / (2.0 * h);
                let rel = (fd - obj.gradient[j]).abs() / obj.gradient[j].abs().max(1e-8);
                assert!(rel < 1e-4, "component {j}: fd {fd} analytic {}", obj.gradient[j]);
            }
        }
    }

    /// Minimizes a unimodal function on [lo, hi] by golden-section search.
    fn golden(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let r = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let a = hi - r * (hi - lo);
            let b = lo + r * (hi - lo);
            if f(a) < f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn two_point_dataset_matches_nested_search() {
        let x = column(&[-1.0, 1.0]);
        let y = [false, true];
        let c = 10.0;
        let objective = |b: f64, w: f64| {
            let nll = |z: f64, label: f64| (1.0 + z.exp()).ln() - label * z;
            (nll(b - w, 0.0) + nll(b + w, 1.0)) / 2.0 + w * w / (2.0 * c * 2.0)
        };
        let best_w = |b: f64| golden(-50.0, 50.0, |w| objective(b, w));
        let b_star = golden(-20.0, 20.0, |b| objective(b, best_w(b)));
        let w_star = best_w(b_star);

        let m = train_logistic(&x, &y, c).unwrap();
        for xv in [-1.0, 1.0] {
            let oracle = 1.0 / (1.0 + (-(b_star + w_star * xv)).exp());
            assert!((m.predict_proba(&[xv]).unwrap() - oracle).abs() < 1e-4);
        }
        assert!(norm(&logistic_objective(&x, &y, c, &m).unwrap().gradient) <= GRADIENT_TOLERANCE);
    }

    #[test]
    fn separable_and_degenerate_labels() {
        let xs: Vec<f64> = (-20..=20).filter(|&i| i != 0).map(|i| i as f64 / 10.0).collect();
        let y: Vec<bool> = xs.iter().map(|&v| v > 0.0).collect();
        let m = train_logistic(&column(&xs), &y, 1e3).unwrap();
        assert!(m.predict_proba(&[2.0]).unwrap() > 0.9);
        assert!(m.predict_proba(&[-2.0]).unwrap() < 0.1);

        let ones = vec![true; xs.len()];
        let m = train_logistic(&column(&xs), &ones, 10.0).unwrap();
        for &v in &xs {
            assert!(m.predict_proba(&[v]).unwrap() > 0.99);
        }
        assert!(m.weights[0].abs() < 1e-3);
    }

    #[test]
    fn regularization_monotone() {
        let (x, y) = random_problem(8, 200, 3);
        let mut prev = 0.0;
        for c in [0.01, 0.1, 1.0, 10.0, 100.0] {
            let w = norm(&train_logistic(&x, &y, c).unwrap().weights);
            assert!(w >= prev - 1e-12);
            prev = w;
        }
    }

    #[test]
    fn training_is_deterministic() {
        let (x, y) = random_problem(9, 300, 5);
        assert_eq!(train_logistic(&x, &y, 10.0).unwrap(), train_logistic(&x, &y, 10.0).unwrap());
    }

    #[test]
    fn invalid_inputs() {
        let x = FeatureMatrix::new(2, 1, vec![1.0, f64::NAN]).unwrap();
        assert!(matches!(train_logistic(&x, &[true, false], 1.0), Err(Error::Domain { .. })));
        assert!(train_logistic(&column(&[1.0]), &[true], 0.0).is_err());
        assert!(train_logistic(&column(&[]), &[], 1.0).is_err());
        assert!(FeatureMatrix::new(2, 2, vec![0.0; 3]).is_err());
    }

    /// Data from known logistic arms; returns (dataset, true S0, true S1).
    fn generated(seed: u64, n: usize, treat_p: f64) -> (LabeledDataset, Vec<f64>, Vec<f64>) {
        let mut rng = RngStream::new(seed, &[]);
        let (w0, w1) = ([1.0, -0.5], [0.3, 0.8]);
        let (b0, b1) = (-0.2, 0.1);
        let mut data = Vec::new();
        let (mut y, mut t, mut s0, mut s1) = (vec![], vec![], vec![], vec![]);
        for _ in 0..n {
            let row = [rng.standard_normal(), rng.standard_normal()];
            let p0 = sigmoid(b0 + dot(&w0, &row));
            let p1 = sigmoid(b1 + dot(&w1, &row));
            let treated = rng.bernoulli(treat_p);
            y.push(rng.bernoulli(if treated { p1 } else { p0 }));
            t.push(treated);
            s0.push(p0);
            s1.push(p1);
            data.extend_from_slice(&row);
        }
        let x = FeatureMatrix::new(n, 2, data).unwrap();
        (LabeledDataset::new(x, y, t).unwrap(), s0, s1)
    }

    fn mean_abs_error(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
    }

    #[test]
    fn predictive_recovers_control_probability() {
        let (train, s0, _) = generated(21, 10_000, 0.5);
        let scores = predictive_scores(&train, train.features(), 10.0).unwrap();
        assert!(mean_abs_error(&scores, &s0) <= 0.05);
    }

    #[test]
    fn uplift_recovers_difference() {
        let (train, s0, s1) = generated(22, 10_000, 0.5);
        let truth: Vec<f64> = s0.iter().zip(&s1).map(|(a, b)| a - b).collect();
        let scores = uplift_scores(&train, train.features(), 10.0).unwrap();
        assert!(mean_abs_error(&scores, &truth) <= 0.07);
    }

    #[test]
    fn predictive_ignores_treated_rows() {
        let (train, _, _) = generated(23, 500, 0.3);
        let flipped_y = train.y().iter().zip(train.t()).map(|(&y, &t)| if t { !y } else { y }).collect();
        let flipped = LabeledDataset::new(train.features().clone(), flipped_y, train.t().to_vec()).unwrap();
        assert_eq!(
            predictive_scores(&train, train.features(), 10.0).unwrap(),
            predictive_scores(&flipped, train.features(), 10.0).unwrap()
        );
    }

    #[test]
    fn predictive_all_negative_control() {
        let mut rng = RngStream::new(5, &[]);
        let n = 200;
        let data: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let t: Vec<bool> = (0..n).map(|i| i % 4 == 0).collect();
        let y: Vec<bool> = t.clone();
        let train = LabeledDataset::new(FeatureMatrix::new(n, 1, data).unwrap(), y, t).unwrap();
        let test = column(&[-1.5, -0.5, 0.0, 0.5, 1.5]);
        for s in predictive_scores(&train, &test, 10.0).unwrap() {
            assert!(s < 0.05);
        }
    }

    #[test]
    fn uplift_sign_and_null_effect() {
        let n = 400;
        let mut rng = RngStream::new(6, &[]);
        let data: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let t: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        let y: Vec<bool> = t.iter().map(|&t| !t).collect();
        let train = LabeledDataset::new(FeatureMatrix::new(n, 1, data).unwrap(), y, t).unwrap();
        for s in uplift_scores(&train, &column(&[-1.0, 0.0, 1.0]), 10.0).unwrap() {
            assert!(s > 0.95);
        }

        let mut rng = RngStream::new(7, &[]);
        let n = 10_000;
        let data: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let y: Vec<bool> = data.iter().map(|&v| rng.bernoulli(sigmoid(0.7 * v))).collect();
        let t: Vec<bool> = (0..n).map(|_| rng.bernoulli(0.5)).collect();
        let x = FeatureMatrix::new(n, 1, data).unwrap();
        let train = LabeledDataset::new(x.clone(), y, t).unwrap();
        let scores = uplift_scores(&train, &x, 10.0).unwrap();
        assert!((scores.iter().sum::<f64>() / n as f64).abs() <= 0.05);
    }

    #[test]
    fn missing_arms_rejected() {
        let x = column(&[0.0, 1.0]);
        let only_treated = LabeledDataset::new(x.clone(), vec![true, false], vec![true, true]).unwrap();
        assert!(predictive_scores(&only_treated, &x, 1.0).is_err());
        assert!(uplift_scores(&only_treated, &x, 1.0).is_err());
        let only_control = LabeledDataset::new(x.clone(), vec![true, false], vec![false, false]).unwrap();
        assert!(uplift_scores(&only_control, &x, 1.0).is_err());
        assert!(LabeledDataset::new(x, vec![true], vec![true, false]).is_err());
    }
}

//! Dirichlet potential-outcome populations with emulated noisy estimators.
//!
//! Each individual draws a joint law `μ = (α, β, γ, δ) ~ Dir(m)` over
//! `(y0, y1) ∈ {(0,0), (1,0), (0,1), (1,1)}` and one realization of the pair.
//! Estimators are emulated rather than trained: the predictive score is a
//! `Binomial(n_p, S0)` proportion and the uplift score is the difference of
//! two independent `Binomial(n_u, S_t)` proportions, so `n_p` and `n_u` set
//! the estimators' variances directly.
//!
//! Randomness is split in two. The population and its treatment assignment
//! depend only on `(master_seed, rep)`, so every `(n_u, n_p)` cell of a grid
//! is evaluated on the same populations; the emulated scores come from a
//! stream keyed by `(rep, n_u, n_p)`.

use alloc::vec::Vec;

use super::{aupc_for_scores, mean_and_sd, DIRICHLET_TAG, SWEEP_TAG};
use crate::information::concentration_for_mi_ratio;
use crate::numerics::{sample_binomial, sample_categorical, sample_dirichlet, RngStream};
use crate::profit::{individual_causal_profit, CostBenefitMatrix, IndividualProfile};
use crate::{Error, Result};

const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// Joint probabilities of the four potential-outcome combinations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialJoint {
    /// `P(y0 = 0, y1 = 0)`
    pub alpha: f64,
    /// `P(y0 = 1, y1 = 0)`
    pub beta: f64,
    /// `P(y0 = 0, y1 = 1)`
    pub gamma: f64,
    /// `P(y0 = 1, y1 = 1)`
    pub delta: f64,
}

impl PotentialJoint {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let v = [alpha, beta, gamma, delta];
        if v.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::domain("proportions", alloc::format!("entries must be nonnegative, got {v:?}")));
        }
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::domain("proportions", alloc::format!("entries must sum to 1, got {total}")));
        }
        Ok(PotentialJoint {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn from_array(v: [f64; 4]) -> Result<Self> {
        PotentialJoint::new(v[0], v[1], v[2], v[3])
    }

    /// Joint with the given outcome probabilities and overlap `P(y0 = 1, y1 = 1)`.
    pub fn from_marginals(s0: f64, s1: f64, delta: f64) -> Result<Self> {
        PotentialJoint::new(1.0 - s0 - s1 + delta, s0 - delta, s1 - delta, delta)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn s0(&self) -> f64 {
        self.beta + self.delta
    }

    pub fn s1(&self) -> f64 {
        self.gamma + self.delta
    }
}

/// One sampled individual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledIndividual {
    pub mu: PotentialJoint,
    pub s0: f64,
    pub s1: f64,
    pub y0: bool,
    pub y1: bool,
}

pub fn sample_individual(m: &[f64; 4], rng: &mut RngStream) -> Result<SampledIndividual> {
    let v = sample_dirichlet(m, rng)?;
    let mu = PotentialJoint {
        alpha: v[0],
        beta: v[1],
        gamma: v[2],
        delta: v[3],
    };
    let cell = sample_categorical(&v, rng)?;
    Ok(SampledIndividual {
        mu,
        s0: mu.s0(),
        s1: mu.s1(),
        y0: cell == 1 || cell == 3,
        y1: cell == 2 || cell == 3,
    })
}

/// `(score_u, score_p)`: a two-arm binomial uplift estimate with `n_u`
/// trials per arm and a binomial estimate of `S0` with `n_p` trials.
pub fn emulate_scores(s0: f64, s1: f64, n_u: u64, n_p: u64, rng: &mut RngStream) -> Result<(f64, f64)> {
    let (u, p) = (n_u as f64, n_p as f64);
    let control = sample_binomial(s0, n_u, rng)? as f64 / u;
    let treated = sample_binomial(s1, n_u, rng)? as f64 / u;
    let predictive = sample_binomial(s0, n_p, rng)? as f64 / p;
    Ok((control - treated, predictive))
}

/// How the Dirichlet concentration `A` is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Concentration {
    /// Solve for the `A` whose y0 information ratio equals this value.
    MiRatio(f64),
    /// Use this total directly.
    Total(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSimConfig {
    pub proportions: PotentialJoint,
    pub concentration: Concentration,
    pub n_population: usize,
    pub n_u: u64,
    pub n_p: u64,
    pub cb: CostBenefitMatrix,
    pub repetitions: u64,
    pub master_seed: u64,
    /// Randomization probability used to reveal one potential outcome.
    pub p_treat: f64,
    /// Relative width of the per-repetition tie band.
    pub tie_epsilon: f64,
    /// Paired z-score below which a cell is declared a tie.
    pub tie_z: f64,
}

impl Default for DirichletSimConfig {
    fn default() -> Self {
        DirichletSimConfig {
            proportions: PotentialJoint {
                alpha: 0.6,
                beta: 0.2,
                gamma: 0.1,
                delta: 0.1,
            },
            concentration: Concentration::MiRatio(0.01),
            n_population: 10_000,
            n_u: 1,
            n_p: 1,
            cb: CostBenefitMatrix::UNITARY,
            repetitions: 50,
            master_seed: 0,
            p_treat: 0.5,
            tie_epsilon: 1e-4,
            tie_z: 3.0,
        }
    }
}

impl DirichletSimConfig {
    pub fn validate(&self) -> Result<()> {
        PotentialJoint::from_array(self.proportions.as_array())?;
        if self.proportions.as_array().iter().any(|&p| p <= 0.0) {
            return Err(Error::domain(
                "proportions",
                "every entry must be positive to serve as a Dirichlet parameter",
            ));
        }
        match self.concentration {
            Concentration::MiRatio(r) if !(0.0..1.0).contains(&r) => {
                return Err(Error::domain("mi_ratio_target", "must lie in [0, 1)"))
            }
            Concentration::Total(a) if !(a > 0.0) || !a.is_finite() => {
                return Err(Error::domain("concentration", "must be positive and finite"))
            }
            _ => {}
        }
        let checks: [(bool, &'static str, &str); 7] = [
            (self.n_population >= 1, "n_population", "must be at least 1"),
            (self.n_u >= 1, "n_u", "must be at least 1"),
            (self.n_p >= 1, "n_p", "must be at least 1"),
            (self.repetitions >= 1, "repetitions", "must be at least 1"),
            (self.p_treat > 0.0 && self.p_treat < 1.0, "p_treat", "must lie in (0, 1)"),
            (self.tie_epsilon >= 0.0 && self.tie_epsilon.is_finite(), "tie_epsilon", "must be nonnegative"),
            (self.tie_z >= 0.0 && self.tie_z.is_finite(), "tie_z", "must be nonnegative"),
        ];
        for (ok, what, detail) in checks {
            if !ok {
                return Err(Error::domain(what, detail));
            }
        }
        self.cb.validate()
    }

    /// Dirichlet parameters `A · proportions`.
    pub fn dirichlet_parameters(&self) -> Result<[f64; 4]> {
        self.validate()?;
        let p = self.proportions.as_array();
        let a = match self.concentration {
            Concentration::MiRatio(r) => concentration_for_mi_ratio(&p, r)?,
            Concentration::Total(a) => a,
        };
        Ok(p.map(|v| v * a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Uplift,
    Predictive,
    Tie,
}

impl Winner {
    pub fn as_str(self) -> &'static str {
        match self {
            Winner::Uplift => "uplift",
            Winner::Predictive => "predictive",
            Winner::Tie => "tie",
        }
    }
}

/// A sampled population with revealed outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedPopulation {
    pub individuals: Vec<SampledIndividual>,
    pub t: Vec<bool>,
    pub y: Vec<bool>,
}

/// Population of repetition `rep`; identical for every grid cell.
pub fn sample_population(cfg: &DirichletSimConfig, m: &[f64; 4], rep: u64) -> Result<ObservedPopulation> {
    let mut rng = RngStream::new(cfg.master_seed, &[DIRICHLET_TAG, rep]);
    let n = cfg.n_population;
    let mut individuals = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let ind = sample_individual(m, &mut rng)?;
        let treated = rng.bernoulli(cfg.p_treat);
        individuals.push(ind);
        t.push(treated);
        y.push(if treated { ind.y1 } else { ind.y0 });
    }
    Ok(ObservedPopulation { individuals, t, y })
}

/// Outcome of one repetition of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepetitionOutcome {
    pub aupc_u: f64,
    pub aupc_p: f64,
    /// Half-width of the tie band.
    pub epsilon: f64,
    pub winner: Winner,
}

/// Tie band: `tie_epsilon` times the AUPC scale of the population, where a
/// curve that gains `mean |π|` per capita at every prefix has area
/// `mean |π| (N + 1) / 2`.
fn tie_band(cfg: &DirichletSimConfig, pop: &ObservedPopulation) -> Result<f64> {
    let mut total = 0.0;
    for ind in &pop.individuals {
        let profile = IndividualProfile::new(ind.s0, ind.s1, cfg.cb, 0.0)?;
        total += individual_causal_profit(&profile).abs();
    }
    let n = pop.individuals.len() as f64;
    Ok(cfg.tie_epsilon * total / n * (n + 1.0) / 2.0)
}

fn compare(diff: f64, epsilon: f64) -> Winner {
    if diff.abs() < epsilon {
        Winner::Tie
    } else if diff > 0.0 {
        Winner::Uplift
    } else {
        Winner::Predictive
    }
}

/// Score and evaluate one population at `(cfg.n_u, cfg.n_p)`.
pub fn evaluate_population(cfg: &DirichletSimConfig, pop: &ObservedPopulation, rep: u64) -> Result<RepetitionOutcome> {
    let mut rng = RngStream::new(cfg.master_seed, &[DIRICHLET_TAG, rep, cfg.n_u, cfg.n_p]);
    let mut score_u = Vec::with_capacity(pop.individuals.len());
    let mut score_p = Vec::with_capacity(pop.individuals.len());
    for ind in &pop.individuals {
        let (u, p) = emulate_scores(ind.s0, ind.s1, cfg.n_u, cfg.n_p, &mut rng)?;
        score_u.push(u);
        score_p.push(p);
    }
    let aupc_u = aupc_for_scores(&pop.y, &pop.t, &score_u, cfg.cb)?;
    let aupc_p = aupc_for_scores(&pop.y, &pop.t, &score_p, cfg.cb)?;
    let epsilon = tie_band(cfg, pop)?;
    Ok(RepetitionOutcome {
        aupc_u,
        aupc_p,
        epsilon,
        winner: compare(aupc_u - aupc_p, epsilon),
    })
}

/// Aggregate over the repetitions of one `(n_u, n_p)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub n_u: u64,
    pub n_p: u64,
    pub repetitions: Vec<RepetitionOutcome>,
    pub mean_aupc_u: f64,
    pub mean_aupc_p: f64,
    /// Fraction of repetitions won by the uplift scores outside the tie band.
    pub win_rate_uplift: f64,
    pub win_rate_predictive: f64,
    /// Paired z-statistic of `aupc_u - aupc_p` across repetitions.
    pub z: f64,
    /// `Tie` unless `|z| >= tie_z`.
    pub winner: Winner,
}

impl Comparison {
    fn from_repetitions(cfg: &DirichletSimConfig, repetitions: Vec<RepetitionOutcome>) -> Comparison {
        let r = repetitions.len() as f64;
        let diffs: Vec<f64> = repetitions.iter().map(|o| o.aupc_u - o.aupc_p).collect();
        let (mean_diff, sd_diff) = mean_and_sd(&diffs);
        let z = if sd_diff > 0.0 {
            mean_diff / (sd_diff / libm::sqrt(r))
        } else if mean_diff == 0.0 {
            0.0
        } else {
            mean_diff.signum() * f64::INFINITY
        };
        let winner = if z.abs() < cfg.tie_z {
            Winner::Tie
        } else if z > 0.0 {
            Winner::Uplift
        } else {
            Winner::Predictive
        };
        let rate = |w: Winner| repetitions.iter().filter(|o| o.winner == w).count() as f64 / r;
        Comparison {
            n_u: cfg.n_u,
            n_p: cfg.n_p,
            mean_aupc_u: repetitions.iter().map(|o| o.aupc_u).sum::<f64>() / r,
            mean_aupc_p: repetitions.iter().map(|o| o.aupc_p).sum::<f64>() / r,
            win_rate_uplift: rate(Winner::Uplift),
            win_rate_predictive: rate(Winner::Predictive),
            z,
            winner,
            repetitions,
        }
    }

    /// Whether the uplift scores have the larger mean AUPC.
    pub fn uplift_ahead(&self) -> bool {
        self.mean_aupc_u > self.mean_aupc_p
    }
}

/// A configuration with its Dirichlet parameters resolved once.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletExperiment {
    cfg: DirichletSimConfig,
    m: [f64; 4],
}

impl DirichletExperiment {
    pub fn new(cfg: DirichletSimConfig) -> Result<Self> {
        let m = cfg.dirichlet_parameters()?;
        Ok(DirichletExperiment { cfg, m })
    }

    pub fn config(&self) -> &DirichletSimConfig {
        &self.cfg
    }

    pub fn parameters(&self) -> [f64; 4] {
        self.m
    }

    /// All repetitions of the cell `(n_u, n_p)`.
    pub fn run_cell(&self, n_u: u64, n_p: u64) -> Result<Comparison> {
        if n_u < 1 || n_p < 1 {
            return Err(Error::domain("grid", "n_u and n_p must be at least 1"));
        }
        let cfg = DirichletSimConfig {
            n_u,
            n_p,
            ..self.cfg.clone()
        };
        let reps = (0..cfg.repetitions)
            .map(|rep| {
                sample_population(&cfg, &self.m, rep)
                    .and_then(|pop| evaluate_population(&cfg, &pop, rep))
                    .map_err(|e| e.in_repetition(rep))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Comparison::from_repetitions(&cfg, reps))
    }

    /// Cells for every pair of the ranges, `n_u` varying slowest.
    pub fn run_grid(&self, n_u_range: &[u64], n_p_range: &[u64]) -> Result<Vec<Comparison>> {
        check_ranges(n_u_range, n_p_range)?;
        let mut cells = Vec::with_capacity(n_u_range.len() * n_p_range.len());
        for &n_u in n_u_range {
            for &n_p in n_p_range {
                cells.push(self.run_cell(n_u, n_p)?);
            }
        }
        Ok(cells)
    }
}

pub fn check_ranges(n_u_range: &[u64], n_p_range: &[u64]) -> Result<()> {
    if n_u_range.is_empty() || n_p_range.is_empty() {
        return Err(Error::domain("grid", "n_u and n_p ranges must be nonempty"));
    }
    if n_u_range.iter().chain(n_p_range).any(|&v| v < 1) {
        return Err(Error::domain("grid", "n_u and n_p values must be at least 1"));
    }
    Ok(())
}

/// Compare both approaches at `(cfg.n_u, cfg.n_p)`.
pub fn run_comparison(cfg: &DirichletSimConfig) -> Result<Comparison> {
    DirichletExperiment::new(cfg.clone())?.run_cell(cfg.n_u, cfg.n_p)
}

pub fn run_variance_grid(cfg: &DirichletSimConfig, n_u_range: &[u64], n_p_range: &[u64]) -> Result<Vec<Comparison>> {
    DirichletExperiment::new(cfg.clone())?.run_grid(n_u_range, n_p_range)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub s0: f64,
    pub s1: f64,
    /// Fraction of grid cells where the uplift scores have the larger mean AUPC.
    pub uplift_win_ratio: f64,
}

impl SweepRow {
    pub fn from_cells(mu: &PotentialJoint, cells: &[Comparison]) -> SweepRow {
        let wins = cells.iter().filter(|c| c.uplift_ahead()).count();
        SweepRow {
            s0: mu.s0(),
            s1: mu.s1(),
            uplift_win_ratio: wins as f64 / cells.len().max(1) as f64,
        }
    }
}

/// Configuration used for entry `index` of an outcome sweep: the base
/// settings with the entry's proportions and a seed derived from the base seed.
pub fn sweep_entry_config(base: &DirichletSimConfig, index: u64, mu: PotentialJoint) -> DirichletSimConfig {
    DirichletSimConfig {
        proportions: mu,
        master_seed: RngStream::derive_seed(base.master_seed, &[SWEEP_TAG, index]),
        ..base.clone()
    }
}

/// `count` joints drawn uniformly from the simplex, reproducibly from
/// `master_seed`.
pub fn uniform_joints(master_seed: u64, count: usize) -> Result<Vec<PotentialJoint>> {
    let mut rng = RngStream::new(master_seed, &[SWEEP_TAG, u64::MAX]);
    (0..count)
        .map(|_| PotentialJoint::from_array(sample_dirichlet(&[1.0; 4], &mut rng)?))
        .collect()
}

pub fn run_outcome_sweep(
    base: &DirichletSimConfig,
    mu_grid: &[PotentialJoint],
    n_u_range: &[u64],
    n_p_range: &[u64],
) -> Result<Vec<SweepRow>> {
    mu_grid
        .iter()
        .enumerate()
        .map(|(i, mu)| {
            let cells = run_variance_grid(&sweep_entry_config(base, i as u64, *mu), n_u_range, n_p_range)?;
            Ok(SweepRow::from_cells(mu, &cells))
        })
        .collect()
}

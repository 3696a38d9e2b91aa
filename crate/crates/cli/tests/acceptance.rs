//! Acceptance report: one PASS or FAIL line per criterion.
//!
//! Statistical criteria run at the sizes they are stated for (reduced 5x5
//! grids for the Dirichlet experiments). The process exits with status 1 on
//! any FAIL when `UPLIFT_ACCEPTANCE_STRICT=1` is set; otherwise the report is
//! informational and only a panic fails the target.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use uplift_cli::parallel::{run_grid, run_normal, run_sweep, thread_pool};
use uplift_core::curves::{empirical_profit_curve, uplift_curve, CurveRow, RankedDataset};
use uplift_core::information::dirichlet_conditional_entropy;
use uplift_core::models::{logistic_objective, FeatureMatrix, LinearModel};
use uplift_core::numerics::{digamma, normal_cdf, sample_dirichlet, RngStream};
use uplift_core::profit::{
    campaign_profits, campaign_profits_top_k, individual_causal_profit, targeted_count, verbeke_causal_profit,
    CostBenefitMatrix, IndividualProfile, Population,
};
use uplift_core::sim::dirichlet::{
    sample_population, Concentration, DirichletExperiment, DirichletSimConfig, PotentialJoint, Winner,
};
use uplift_core::sim::normal::NormalSimConfig;
use uplift_core::sim::sign_test_p_value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn random_cb(rng: &mut RngStream) -> CostBenefitMatrix {
    CostBenefitMatrix::new(
        rng.normal(0.0, 10.0),
        rng.normal(0.0, 10.0),
        rng.normal(0.0, 10.0),
        rng.normal(0.0, 10.0),
    )
    .unwrap()
}

fn random_population(rng: &mut RngStream, n: usize, cb: Option<CostBenefitMatrix>) -> Population {
    let individuals = (0..n)
        .map(|_| {
            let cb = cb.unwrap_or_else(|| random_cb(rng));
            IndividualProfile::new(rng.uniform(), rng.uniform(), cb, rng.normal(0.0, 1.0)).unwrap()
        })
        .collect();
    Population::new(individuals).unwrap()
}

fn worked_examples() -> Outcome {
    let cb = CostBenefitMatrix::from_rows([[120.0, 99.0], [0.0, -1.0]]).unwrap();
    let churn = individual_causal_profit(&IndividualProfile::new(0.15, 0.05, cb, 0.0).unwrap());

    let pi0 = [-0.1, 0.1, 0.15, 0.1, 0.2, 0.0];
    let pi1 = [0.2, 0.05, -0.05, 0.1, -0.1, 0.1];
    let score = [6.0, 4.0, 2.0, 3.0, 1.0, 5.0];
    let pop = Population::new(
        (0..6)
            .map(|i| {
                let cb = CostBenefitMatrix::new(pi0[i], pi1[i], 0.0, 0.0).unwrap();
                IndividualProfile::new(0.0, 0.0, cb, score[i]).unwrap()
            })
            .collect(),
    )
    .unwrap();
    let half = campaign_profits(&pop, 0.5).unwrap();
    let third = campaign_profits(&pop, 1.0 / 3.0).unwrap();
    let ok = close(churn, -8.0, 1e-12)
        && close(half.action_profit, 0.8 / 6.0, 1e-12)
        && close(half.baseline_profit, 0.075, 1e-12)
        && close(half.causal_profit, 0.35 / 6.0, 1e-12)
        && close(third.causal_profit, 0.4 / 6.0, 1e-12);
    check(
        ok,
        format!(
            "pi={churn}, (Pi1, Pi0, Pi)=({}, {}, {}), Pi(1/3)={}",
            half.action_profit, half.baseline_profit, half.causal_profit, third.causal_profit
        ),
    )
}

fn targeted_identity() -> Outcome {
    let mut rng = RngStream::new(101, &[]);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = 1 + (rng.uniform() * 200.0) as usize;
        let pop = random_population(&mut rng, n, None);
        let rho = 0.01 + 0.98 * rng.uniform();
        let p = campaign_profits(&pop, rho).unwrap();
        worst = worst.max((p.causal_profit - p.causal_profit_targeted).abs());
    }
    check(worst <= 1e-12, format!("max |difference| = {worst:e} over 1000 populations"))
}

fn verbeke_equivalence() -> Outcome {
    let mut rng = RngStream::new(202, &[]);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = 2 + (rng.uniform() * 300.0) as usize;
        let cb = random_cb(&mut rng);
        let pop = random_population(&mut rng, n, Some(cb));
        let order = pop.ranking();
        let count = 1 + (rng.uniform() * (n - 1) as f64) as usize;
        let tau = pop.individuals()[order[count - 1]].score;
        let targeted = pop.individuals().iter().filter(|p| p.score >= tau).count();
        let cp = verbeke_causal_profit(&pop, tau, &cb).unwrap();
        let pi = campaign_profits_top_k(&pop, targeted).causal_profit;
        worst = worst.max((cp - pi).abs());
    }
    check(worst <= 1e-9, format!("max |CP - Pi| = {worst:e} over 100 populations"))
}

fn curve_equivalence() -> Outcome {
    let mut rng = RngStream::new(303, &[]);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let n = 1 + (rng.uniform() * 300.0) as usize;
        let p_treat = rng.uniform();
        let rows = (0..n)
            .map(|_| {
                // coarse scores so that ties occur
                let score = (rng.uniform() * 20.0).floor();
                CurveRow::new(rng.bernoulli(0.4), rng.bernoulli(p_treat), score, CostBenefitMatrix::UNITARY)
            })
            .collect();
        let d = RankedDataset::from_unsorted(rows).unwrap();
        let u = uplift_curve(&d).unwrap();
        let p = empirical_profit_curve(&d).unwrap();
        if u.points != p.points {
            mismatches += 1;
        }
    }
    check(mismatches == 0, format!("{mismatches} of 1000 datasets differ at some k"))
}

fn curve_convergence() -> Outcome {
    let rho = 0.3;
    let base = DirichletSimConfig {
        concentration: Concentration::Total(10.0),
        p_treat: 0.5,
        ..DirichletSimConfig::default()
    };
    let m = base.dirichlet_parameters().unwrap();
    let mut medians = Vec::new();
    for n in [1_000usize, 10_000, 100_000] {
        let mut errors: Vec<f64> = (0..20u64)
            .into_par_iter()
            .map(|seed| {
                let cfg = DirichletSimConfig {
                    n_population: n,
                    master_seed: 5000 + seed,
                    ..base.clone()
                };
                let pop = sample_population(&cfg, &m, 0).unwrap();
                let profiles = pop
                    .individuals
                    .iter()
                    .map(|i| IndividualProfile::new(i.s0, i.s1, CostBenefitMatrix::UNITARY, i.s0 - i.s1).unwrap())
                    .collect();
                let truth = campaign_profits(&Population::new(profiles).unwrap(), rho).unwrap().causal_profit;
                let rows = pop
                    .individuals
                    .iter()
                    .zip(pop.y.iter().zip(&pop.t))
                    .map(|(i, (&y, &t))| CurveRow::new(y, t, i.s0 - i.s1, CostBenefitMatrix::UNITARY))
                    .collect();
                let curve = uplift_curve(&RankedDataset::from_unsorted(rows).unwrap()).unwrap();
                let k = targeted_count(n, rho);
                (curve.value_at(k).unwrap() / n as f64 - truth).abs()
            })
            .collect();
        errors.sort_by(f64::total_cmp);
        medians.push(0.5 * (errors[9] + errors[10]));
    }
    let ok = medians.windows(2).all(|w| w[1] <= w[0]) && medians[2] <= 0.01;
    check(ok, format!("median errors at N = 1e3, 1e4, 1e5: {medians:.5?}"))
}

fn entropy_formulas() -> Outcome {
    let mut rng = RngStream::new(606, &[]);
    let draws = 1_000_000;
    let mut failures = Vec::new();
    let vectors: Vec<[f64; 4]> = (0..10)
        .map(|_| {
            let total = 0.1 * 1000f64.powf(rng.uniform());
            let raw = [0.0; 4].map(|_| 0.05 + rng.uniform());
            let s: f64 = raw.iter().sum();
            raw.map(|v| v / s * total)
        })
        .collect();
    let results: Vec<_> = vectors
        .par_iter()
        .enumerate()
        .map(|(case, m)| {
            let r = dirichlet_conditional_entropy(m[0], m[1], m[2], m[3]).unwrap();
            let mut local = RngStream::new(607, &[case as u64]);
            let h = |ps: &[f64]| -> f64 { ps.iter().map(|&p| if p > 0.0 { -p * p.ln() } else { 0.0 }).sum() };
            let mut acc = [(0.0f64, 0.0f64); 3];
            for _ in 0..draws {
                let mu = sample_dirichlet(m, &mut local).unwrap();
                let (s0, s1) = (mu[1] + mu[3], mu[2] + mu[3]);
                for (a, v) in acc.iter_mut().zip([h(&mu), h(&[s0, 1.0 - s0]), h(&[s1, 1.0 - s1])]) {
                    a.0 += v;
                    a.1 += v * v;
                }
            }
            let n = draws as f64;
            let mc = acc.map(|(s, s2)| {
                let mean = s / n;
                (mean, ((s2 / n - mean * mean).max(0.0) / n).sqrt())
            });
            (case, [r.joint, r.marginal_y0, r.marginal_y1], mc)
        })
        .collect();
    for (case, analytic, mc) in &results {
        for (j, (value, (mean, se))) in analytic.iter().zip(mc).enumerate() {
            if (value - mean).abs() > 3.0 * se {
                failures.push(format!("case {case} quantity {j}: {value} vs {mean} +- {se}"));
            }
        }
    }
    let uniform = dirichlet_conditional_entropy(1.0, 1.0, 1.0, 1.0).unwrap().joint;
    let p = [0.6, 0.2, 0.1, 0.1];
    let tiny = p.map(|v| v * 1e-3);
    let big = p.map(|v| v * 1e4);
    let low = dirichlet_conditional_entropy(tiny[0], tiny[1], tiny[2], tiny[3]).unwrap().joint;
    let high = dirichlet_conditional_entropy(big[0], big[1], big[2], big[3]).unwrap().joint;
    let unconditional: f64 = p.iter().map(|v| -v * v.ln()).sum();
    let ok = failures.is_empty() && close(uniform, 13.0 / 12.0, 1e-6) && low <= 0.01 && close(high, unconditional, 0.01);
    check(
        ok,
        format!(
            "30 Monte Carlo comparisons, {} outside 3 SE {failures:?}; Dir(1,1,1,1) joint {uniform}; A=1e-3 joint {low:.2e}; A=1e4 joint {high:.5} vs {unconditional:.5}",
            failures.len()
        ),
    )
}

fn normal_reproduction() -> Outcome {
    let pool = thread_pool(None).unwrap();
    let cfgs: Vec<NormalSimConfig> = [0.01, 10.0]
        .iter()
        .map(|&scale_c| NormalSimConfig {
            scale_c,
            master_seed: 2024,
            ..NormalSimConfig::default()
        })
        .collect();
    let rows = run_normal(&pool, &cfgs).unwrap();
    let (low, high) = rows.split_at(100);
    let mean = |rs: &[uplift_core::sim::normal::NormalRepetition], f: fn(&uplift_core::sim::normal::NormalRepetition) -> f64| {
        rs.iter().map(f).sum::<f64>() / rs.len() as f64
    };
    let predictive_wins_low = low.iter().filter(|r| r.aupc_predictive > r.aupc_uplift).count();
    let uplift_wins_high = high.iter().filter(|r| r.aupc_uplift > r.aupc_predictive).count();
    let p_low = sign_test_p_value(predictive_wins_low, low.len());
    let p_high = sign_test_p_value(uplift_wins_high, high.len());
    let (ul, pl) = (mean(low, |r| r.aupc_uplift), mean(low, |r| r.aupc_predictive));
    let (uh, ph) = (mean(high, |r| r.aupc_uplift), mean(high, |r| r.aupc_predictive));
    let oracle_share = |rs: &[uplift_core::sim::normal::NormalRepetition]| {
        let beaten = rs
            .iter()
            .filter(|r| r.aupc_oracle >= r.aupc_uplift.max(r.aupc_predictive))
            .count();
        beaten as f64 / rs.len() as f64
    };
    let low_ok = pl >= ul && p_low < 0.05;
    let high_ok = uh > ph && p_high < 0.05;
    check(
        low_ok && high_ok,
        format!(
            "c=0.01: predictive wins {predictive_wins_low}/100 (p={p_low:.3}), mean AUPC uplift {ul:.1} predictive {pl:.1} [{}]; \
             c=10: uplift wins {uplift_wins_high}/100 (p={p_high:.2e}), mean AUPC uplift {uh:.1} predictive {ph:.1} [{}]; \
             oracle ranking best in {:.0}% / {:.0}% of repetitions",
            if low_ok { "ok" } else { "not reproduced" },
            if high_ok { "ok" } else { "not reproduced" },
            100.0 * oracle_share(low),
            100.0 * oracle_share(high)
        ),
    )
}

const REDUCED_GRID: [u64; 5] = [1, 13, 25, 38, 50];

fn variance_dominance() -> Outcome {
    let base = DirichletSimConfig {
        master_seed: 808,
        ..DirichletSimConfig::default()
    };
    let informed = DirichletExperiment::new(base.clone()).unwrap();
    let uplift_side = informed.run_cell(50, 1).unwrap();
    let predictive_side = informed.run_cell(1, 50).unwrap();
    let zero = DirichletExperiment::new(DirichletSimConfig {
        concentration: Concentration::Total(1e5),
        ..base
    })
    .unwrap();
    let pool = thread_pool(None).unwrap();
    let cells = run_grid(&pool, &zero, &REDUCED_GRID, &REDUCED_GRID).unwrap();
    let ties = cells.iter().filter(|c| c.winner == Winner::Tie).count();
    let ties_at_196 = cells.iter().filter(|c| c.z.abs() < 1.96).count();
    let tie_share = ties as f64 / cells.len() as f64;
    let ok = uplift_side.win_rate_uplift > 0.6 && predictive_side.win_rate_predictive > 0.6 && tie_share >= 0.9;
    check(
        ok,
        format!(
            "uplift wins {:.0}% at (50,1); predictive wins {:.0}% at (1,50); zero information: {ties}/{} cells tied (|z| < 1.96 in {ties_at_196})",
            100.0 * uplift_side.win_rate_uplift,
            100.0 * predictive_side.win_rate_predictive,
            cells.len()
        ),
    )
}

fn outcome_sweep() -> Outcome {
    let base = DirichletSimConfig {
        master_seed: 909,
        ..DirichletSimConfig::default()
    };
    let joints = [
        PotentialJoint::from_marginals(0.5, 0.02, 0.01).unwrap(),
        PotentialJoint::from_marginals(0.02, 0.5, 0.01).unwrap(),
    ];
    let pool = thread_pool(None).unwrap();
    let rows = run_sweep(&pool, &base, &joints, &REDUCED_GRID, &REDUCED_GRID).unwrap();
    let first_ok = rows[0].uplift_win_ratio >= 0.9;
    let second_ok = (0.3..=0.7).contains(&rows[1].uplift_win_ratio);
    check(
        first_ok && second_ok,
        format!(
            "S0=0.5, S1=0.02: ratio {} (want >= 0.9) [{}]; S0=0.02, S1=0.5: ratio {} (want in [0.3, 0.7]) [{}]",
            rows[0].uplift_win_ratio,
            if first_ok { "ok" } else { "not reproduced" },
            rows[1].uplift_win_ratio,
            if second_ok { "ok" } else { "not reproduced" }
        ),
    )
}

fn numerics() -> Outcome {
    let mut worst_recurrence: f64 = 0.0;
    for i in 0..=10_000 {
        let x = 0.1 + 99.9 * i as f64 / 10_000.0;
        let r = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
        worst_recurrence = worst_recurrence.max(r.abs());
    }
    let mut worst_symmetry: f64 = 0.0;
    for i in 0..=10_000 {
        let z = -8.0 + 16.0 * i as f64 / 10_000.0;
        worst_symmetry = worst_symmetry.max((normal_cdf(z).unwrap() + normal_cdf(-z).unwrap() - 1.0).abs());
    }
    // erf by its Maclaurin series
    let erf = |x: f64| {
        let (mut term, mut sum) = (x, x);
        for n in 1..200 {
            term *= -x * x / n as f64;
            sum += term / (2 * n + 1) as f64;
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    };
    let oracle = |z: f64| 0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2));
    let cdf_error = [1.96, -1.96]
        .iter()
        .map(|&z| (normal_cdf(z).unwrap() - oracle(z)).abs())
        .fold(0.0, f64::max);

    let mut rng = RngStream::new(1010, &[]);
    let (rows, cols) = (80, 5);
    let x = FeatureMatrix::new(rows, cols, (0..rows * cols).map(|_| rng.standard_normal()).collect()).unwrap();
    let y: Vec<bool> = (0..rows).map(|_| rng.bernoulli(0.35)).collect();
    let h = 1e-5;
    let mut worst_gradient: f64 = 0.0;
    for _ in 0..10 {
        let model = LinearModel {
            weights: (0..cols).map(|_| rng.normal(0.0, 1.5)).collect(),
            intercept: rng.normal(0.0, 1.5),
        };
        let analytic = logistic_objective(&x, &y, 10.0, &model).unwrap().gradient;
        for (j, &g) in analytic.iter().enumerate() {
            let shifted = |delta: f64| {
                let mut m = model.clone();
                if j == 0 {
                    m.intercept += delta;
                } else {
                    m.weights[j - 1] += delta;
                }
                logistic_objective(&x, &y, 10.0, &m).unwrap().value
            };
            let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
            worst_gradient = worst_gradient.max((fd - g).abs() / g.abs().max(1e-8));
        }
    }
    let ok = worst_recurrence <= 1e-10 && worst_symmetry <= 1e-12 && cdf_error <= 1e-6 && worst_gradient <= 1e-4;
    check(
        ok,
        format!(
            "digamma recurrence {worst_recurrence:.1e}; cdf symmetry {worst_symmetry:.1e}; cdf vs erf series {cdf_error:.1e}; gradient relative error {worst_gradient:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("worked examples", worked_examples),
        ("targeted-profit identity", targeted_identity),
        ("causal confusion matrix equivalence", verbeke_equivalence),
        ("uplift and profit curves under unitary values", curve_equivalence),
        ("uplift curve converges to campaign profit", curve_convergence),
        ("Dirichlet conditional entropies", entropy_formulas),
        ("normal-feature experiment", normal_reproduction),
        ("variance dominance", variance_dominance),
        ("outcome-distribution sweep", outcome_sweep),
        ("numerics", numerics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{secs:.1}s]: {detail}", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    let strict = std::env::var("UPLIFT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

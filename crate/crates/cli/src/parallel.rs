//! Parallel drivers for the simulators.
//!
//! Work items are independent and seeded by their coordinates, and rayon's
//! indexed collection keeps input order, so results do not depend on the
//! number of threads or on scheduling.

use rayon::prelude::*;
use rayon::ThreadPool;
use uplift_core::sim::dirichlet::{
    check_ranges, sweep_entry_config, Comparison, DirichletExperiment, DirichletSimConfig, PotentialJoint,
    SweepRow,
};
use uplift_core::sim::normal::{run_repetition, NormalRepetition, NormalSimConfig};

use crate::error::CliError;

/// Pool with at most `threads` workers (rayon's default when `None`).
pub fn thread_pool(threads: Option<usize>) -> Result<ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Validation("invalid --threads: must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker threads: {e}")))
}

/// Every repetition of every configuration, configuration-major.
pub fn run_normal(pool: &ThreadPool, cfgs: &[NormalSimConfig]) -> Result<Vec<NormalRepetition>, CliError> {
    let jobs: Vec<(&NormalSimConfig, u64)> = cfgs
        .iter()
        .flat_map(|cfg| (0..cfg.repetitions).map(move |rep| (cfg, rep)))
        .collect();
    pool.install(|| {
        jobs.par_iter()
            .map(|&(cfg, rep)| run_repetition(cfg, rep).map_err(CliError::from))
            .collect()
    })
}

fn cells(n_u: &[u64], n_p: &[u64]) -> Vec<(u64, u64)> {
    n_u.iter().flat_map(|&u| n_p.iter().map(move |&p| (u, p))).collect()
}

/// Grid cells with `n_u` varying slowest.
pub fn run_grid(
    pool: &ThreadPool,
    exp: &DirichletExperiment,
    n_u: &[u64],
    n_p: &[u64],
) -> Result<Vec<Comparison>, CliError> {
    check_ranges(n_u, n_p)?;
    let jobs = cells(n_u, n_p);
    pool.install(|| {
        jobs.par_iter()
            .map(|&(u, p)| exp.run_cell(u, p).map_err(CliError::from))
            .collect()
    })
}

/// One row per joint, each aggregating the full grid.
pub fn run_sweep(
    pool: &ThreadPool,
    base: &DirichletSimConfig,
    joints: &[PotentialJoint],
    n_u: &[u64],
    n_p: &[u64],
) -> Result<Vec<SweepRow>, CliError> {
    check_ranges(n_u, n_p)?;
    let experiments: Vec<DirichletExperiment> = pool.install(|| {
        joints
            .par_iter()
            .enumerate()
            .map(|(i, mu)| DirichletExperiment::new(sweep_entry_config(base, i as u64, *mu)).map_err(CliError::from))
            .collect::<Result<_, _>>()
    })?;
    let grid = cells(n_u, n_p);
    let jobs: Vec<(usize, u64, u64)> = (0..joints.len())
        .flat_map(|i| grid.iter().map(move |&(u, p)| (i, u, p)))
        .collect();
    let results: Vec<Comparison> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, u, p)| experiments[i].run_cell(u, p).map_err(CliError::from))
            .collect::<Result<_, _>>()
    })?;
    Ok(joints
        .iter()
        .zip(results.chunks(grid.len()))
        .map(|(mu, cells)| SweepRow::from_cells(mu, cells))
        .collect())
}

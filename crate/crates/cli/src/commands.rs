//! The subcommands, independent of argument parsing.

use std::path::Path;

use rayon::ThreadPool;
use serde::{Deserialize, Serialize};
use uplift_core::curves::{aupc, empirical_profit_curve, uplift_curve, Normalization, RankedDataset};
use uplift_core::information::{dirichlet_conditional_entropy, dirichlet_mi_ratio, Outcome};
use uplift_core::sim::dirichlet::DirichletExperiment;

use crate::config::{DirichletConfigFile, EvalConfig, NormalConfigFile};
use crate::dataset::load_dataset;
use crate::error::CliError;
use crate::manifest::{sha256_hex, RunManifest};
use crate::output::{curve_table, format_real, grid_table, normal_table, sweep_table, Table};
use crate::parallel;

pub const UPLIFT_CURVE_FILE: &str = "uplift_curve.csv";
pub const PROFIT_CURVE_FILE: &str = "profit_curve.csv";
pub const AUPC_FILE: &str = "aupc.csv";
pub const NORMAL_FILE: &str = "sim_normal.csv";
pub const GRID_FILE: &str = "grid.csv";
pub const SWEEP_FILE: &str = "sweep.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Grid,
    Sweep,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Grid => "grid",
            Mode::Sweep => "sweep",
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_outputs(dir: &Path, tables: &[(&str, Table)], manifest: &mut RunManifest) -> Result<(), CliError> {
    ensure_dir(dir)?;
    for (name, table) in tables {
        let bytes = table.to_bytes();
        let path = dir.join(name);
        std::fs::write(&path, &bytes).map_err(|e| CliError::io(&path, e))?;
        manifest.outputs.insert(name.to_string(), sha256_hex(&bytes));
    }
    Ok(())
}

/// Result of `eval`: the manifest plus any warnings about the data.
pub struct EvalOutcome {
    pub manifest: RunManifest,
    pub warnings: Vec<String>,
}

/// Uplift and empirical profit curves of a scored dataset, with their areas.
/// Curves are written per capita unless `cfg.raw` is set; the areas do not
/// depend on the scale.
pub fn eval(cfg: &EvalConfig, out: &Path) -> Result<EvalOutcome, CliError> {
    let data = load_dataset(&cfg.data, cfg.unitary)?;
    let input = std::fs::read(&cfg.data).map_err(|e| CliError::io(&cfg.data, e))?;
    let ranked = RankedDataset::from_unsorted(data.rows)?;
    let uplift = uplift_curve(&ranked)?;
    let profit = empirical_profit_curve(&ranked)?;
    let scale = if cfg.raw { Normalization::Raw } else { Normalization::PerCapita };
    let mut summary = Table::new(vec!["curve", "aupc"]);
    summary.push(vec!["uplift".into(), format_real(aupc(&uplift)?)]);
    summary.push(vec!["profit".into(), format_real(aupc(&profit)?)]);

    let mut manifest = RunManifest::new("eval", cfg)?;
    manifest
        .inputs
        .insert(cfg.data.display().to_string(), sha256_hex(&input));
    write_outputs(
        out,
        &[
            (UPLIFT_CURVE_FILE, curve_table(&uplift.to_normalization(scale), "uplift")),
            (PROFIT_CURVE_FILE, curve_table(&profit.to_normalization(scale), "profit")),
            (AUPC_FILE, summary),
        ],
        &mut manifest,
    )?;
    Ok(EvalOutcome {
        manifest,
        warnings: data.warnings,
    })
}

pub fn sim_normal(file: &NormalConfigFile, out: &Path, pool: &ThreadPool) -> Result<RunManifest, CliError> {
    let cfgs = file.resolve()?;
    let rows = parallel::run_normal(pool, &cfgs)?;
    let mut manifest = RunManifest::new("sim-normal", file)?;
    manifest.master_seed = Some(file.master_seed);
    write_outputs(out, &[(NORMAL_FILE, normal_table(&rows))], &mut manifest)?;
    Ok(manifest)
}

pub fn sim_dirichlet(
    file: &DirichletConfigFile,
    mode: Mode,
    out: &Path,
    pool: &ThreadPool,
) -> Result<RunManifest, CliError> {
    let cfg = file.resolve()?;
    let (name, table) = match mode {
        Mode::Grid => {
            let exp = DirichletExperiment::new(cfg)?;
            let cells = parallel::run_grid(pool, &exp, &file.n_u_values, &file.n_p_values)?;
            (GRID_FILE, grid_table(&cells))
        }
        Mode::Sweep => {
            let joints = file.sweep_joints()?;
            let rows = parallel::run_sweep(pool, &cfg, &joints, &file.n_u_values, &file.n_p_values)?;
            (SWEEP_FILE, sweep_table(&rows))
        }
    };
    let mut manifest = RunManifest::new("sim-dirichlet", file)?;
    manifest.mode = Some(mode.as_str().to_string());
    manifest.master_seed = Some(file.master_seed);
    write_outputs(out, &[(name, table)], &mut manifest)?;
    Ok(manifest)
}

/// Expected conditional entropies and information ratios of `Dir(a, b, c, d)`
/// as a two-column CSV.
pub fn entropy(a: f64, b: f64, c: f64, d: f64) -> Result<String, CliError> {
    let report = dirichlet_conditional_entropy(a, b, c, d)?;
    let m = [a, b, c, d];
    let mut t = Table::new(vec!["quantity", "nats"]);
    for (name, value) in [
        ("joint", report.joint),
        ("marginal_y0", report.marginal_y0),
        ("marginal_y1", report.marginal_y1),
        ("mi_ratio_y0", dirichlet_mi_ratio(&m, Outcome::Y0)?),
        ("mi_ratio_y1", dirichlet_mi_ratio(&m, Outcome::Y1)?),
    ] {
        t.push(vec![name.into(), format_real(value)]);
    }
    Ok(String::from_utf8(t.to_bytes()).expect("ASCII output"))
}

/// Rerun the command recorded in `manifest_path` into `out` and compare the
/// output digests with the recorded ones.
pub fn replay(manifest_path: &Path, out: &Path, pool: &ThreadPool) -> Result<RunManifest, CliError> {
    let recorded = RunManifest::read(manifest_path)?;
    let fresh = match recorded.command.as_str() {
        "eval" => {
            let cfg: EvalConfig = recorded.config_as()?;
            eval(&cfg, out)?.manifest
        }
        "sim-normal" => sim_normal(&recorded.config_as()?, out, pool)?,
        "sim-dirichlet" => {
            let mode = match recorded.mode.as_deref() {
                Some("grid") => Mode::Grid,
                Some("sweep") => Mode::Sweep,
                other => return Err(CliError::Validation(format!("manifest has unknown mode {other:?}"))),
            };
            sim_dirichlet(&recorded.config_as()?, mode, out, pool)?
        }
        other => return Err(CliError::Validation(format!("manifest has unknown command {other:?}"))),
    };
    let mut problems = Vec::new();
    if fresh.inputs != recorded.inputs {
        problems.push("input files changed since the recorded run".to_string());
    }
    for (name, digest) in &recorded.outputs {
        match fresh.outputs.get(name) {
            Some(d) if d == digest => {}
            Some(_) => problems.push(format!("{name} differs")),
            None => problems.push(format!("{name} was not produced")),
        }
    }
    if problems.is_empty() {
        Ok(fresh)
    } else {
        Err(CliError::ReplayMismatch(problems.join("; ")))
    }
}

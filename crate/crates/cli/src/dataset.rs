//! Scored test data for `eval`.
//!
//! Required columns are `y` and `t` (0 or 1) and `score`. The optional
//! columns `cb00`, `cb01`, `cb10`, `cb11` give a per-row cost-benefit matrix
//! and must appear together; rows default to the unitary matrix without them.
//! Column order is free.

use std::path::Path;

use uplift_core::curves::CurveRow;
use uplift_core::profit::CostBenefitMatrix;

use crate::error::CliError;

const CB_COLUMNS: [&str; 4] = ["cb00", "cb01", "cb10", "cb11"];

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDataset {
    pub rows: Vec<CurveRow>,
    /// Whether per-row matrices were read (and not overridden).
    pub uses_row_cb: bool,
    pub warnings: Vec<String>,
}

pub fn load_dataset(path: &Path, unitary: bool) -> Result<LoadedDataset, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse_dataset(&bytes, unitary)
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h.trim() == name)
}

fn required(headers: &csv::StringRecord, name: &str) -> Result<usize, CliError> {
    column(headers, name).ok_or_else(|| CliError::Validation(format!("missing required column `{name}`")))
}

fn binary(value: &str, name: &str, row: usize) -> Result<bool, CliError> {
    match value.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(CliError::Validation(format!(
            "row {row}: column `{name}` must be 0 or 1, got {other:?}"
        ))),
    }
}

fn real(value: &str, name: &str, row: usize) -> Result<f64, CliError> {
    match value.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Validation(format!(
            "row {row}: column `{name}` must be a finite number, got {value:?}"
        ))),
    }
}

/// Parse dataset bytes; `unitary` replaces any per-row matrix with the
/// unitary one. Rows are numbered from 1, not counting the header.
pub fn parse_dataset(bytes: &[u8], unitary: bool) -> Result<LoadedDataset, CliError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(bytes);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Validation(format!("unreadable header: {e}")))?
        .clone();
    let (iy, it, iscore) = (required(&headers, "y")?, required(&headers, "t")?, required(&headers, "score")?);
    let cb_found: Vec<Option<usize>> = CB_COLUMNS.iter().map(|c| column(&headers, c)).collect();
    let cb_idx: Option<Vec<usize>> = if cb_found.iter().all(Option::is_none) {
        None
    } else {
        let missing: Vec<&str> = CB_COLUMNS
            .iter()
            .zip(&cb_found)
            .filter(|(_, i)| i.is_none())
            .map(|(c, _)| *c)
            .collect();
        if let Some(first) = missing.first() {
            return Err(CliError::Validation(format!(
                "missing column `{first}`: cost-benefit columns must be given all four or none"
            )));
        }
        Some(cb_found.into_iter().flatten().collect())
    };

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let n = i + 1;
        let record = record.map_err(|e| CliError::Validation(format!("row {n}: {e}")))?;
        let field = |idx: usize| record.get(idx).unwrap_or("");
        let y = binary(field(iy), "y", n)?;
        let t = binary(field(it), "t", n)?;
        let score = real(field(iscore), "score", n)?;
        let cb = match (&cb_idx, unitary) {
            (Some(idx), false) => {
                let v: Vec<f64> = idx
                    .iter()
                    .zip(CB_COLUMNS)
                    .map(|(&j, name)| real(field(j), name, n))
                    .collect::<Result<_, _>>()?;
                CostBenefitMatrix::new(v[0], v[1], v[2], v[3])?
            }
            _ => CostBenefitMatrix::UNITARY,
        };
        rows.push(CurveRow::new(y, t, score, cb));
    }
    if rows.is_empty() {
        return Err(CliError::Validation("dataset has no rows".into()));
    }
    let mut warnings = Vec::new();
    for (treated, name) in [(true, "treated"), (false, "control")] {
        if !rows.iter().any(|r| r.treated == treated) {
            warnings.push(format!(
                "dataset has no {name} rows; that arm's mean is taken as 0 in the uplift curve"
            ));
        }
    }
    Ok(LoadedDataset {
        rows,
        uses_row_cb: cb_idx.is_some() && !unitary,
        warnings,
    })
}

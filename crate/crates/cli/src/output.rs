//! Result tables: fixed numeric formatting, CSV writing and reading back.
//!
//! Every real is printed with 9 significant digits, `.` as the decimal
//! separator and no locale influence; every file starts with a header row and
//! uses `\n` line endings. Identical values therefore produce identical bytes
//! on every platform.

use std::io::Write;
use std::path::Path;

use uplift_core::curves::Curve;
use uplift_core::sim::dirichlet::{Comparison, SweepRow};
use uplift_core::sim::normal::NormalRepetition;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Format a real with 9 significant digits, in plain decimal notation when
/// the exponent is in `[-5, 9)` and in `d.ddde±x` notation otherwise.
/// Trailing zeros are dropped.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..9).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        // reformat from the rounded value so rounding happens exactly once
        let rounded: f64 = sci.parse().expect("valid float");
        trim_zeros(format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

/// Parse a value written by [`format_real`].
pub fn parse_real(s: &str) -> Option<f64> {
    match s {
        "NaN" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

/// The value `x` takes after a write/read round trip.
pub fn rounded(x: f64) -> f64 {
    parse_real(&format_real(x)).expect("formatted value parses")
}

/// A table of already-formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        file.write_all(&self.to_bytes()).map_err(|e| CliError::io(path, e))
    }
}

pub fn curve_table(curve: &Curve, value_column: &'static str) -> Table {
    let mut t = Table::new(vec!["k", value_column]);
    for p in &curve.points {
        t.push(vec![p.k.to_string(), format_real(p.value)]);
    }
    t
}

pub const NORMAL_HEADER: [&str; 7] = [
    "rep",
    "scale_c",
    "mi_ratio",
    "aupc_uplift",
    "aupc_predictive",
    "measured_S0",
    "measured_S1",
];

pub fn normal_table(rows: &[NormalRepetition]) -> Table {
    let mut t = Table::new(NORMAL_HEADER.to_vec());
    for r in rows {
        t.push(vec![
            r.rep.to_string(),
            format_real(r.scale_c),
            format_real(r.mi_ratio),
            format_real(r.aupc_uplift),
            format_real(r.aupc_predictive),
            format_real(r.measured_s0),
            format_real(r.measured_s1),
        ]);
    }
    t
}

pub const GRID_HEADER: [&str; 5] = ["n_u", "n_p", "win_rate_uplift", "mean_aupc_u", "mean_aupc_p"];

pub fn grid_table(cells: &[Comparison]) -> Table {
    let mut t = Table::new(GRID_HEADER.to_vec());
    for c in cells {
        t.push(vec![
            c.n_u.to_string(),
            c.n_p.to_string(),
            format_real(c.win_rate_uplift),
            format_real(c.mean_aupc_u),
            format_real(c.mean_aupc_p),
        ]);
    }
    t
}

pub const SWEEP_HEADER: [&str; 3] = ["S0", "S1", "uplift_win_ratio"];

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(SWEEP_HEADER.to_vec());
    for r in rows {
        t.push(vec![format_real(r.s0), format_real(r.s1), format_real(r.uplift_win_ratio)]);
    }
    t
}

/// Read a CSV written by this module, checking the header.
pub fn read_table(bytes: &[u8], header: &[&str]) -> Result<Vec<Vec<String>>, CliError> {
    let mut r = csv::Reader::from_reader(bytes);
    let found: Vec<String> = r
        .headers()
        .map_err(|e| CliError::Validation(format!("unreadable header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    if found != header {
        return Err(CliError::Validation(format!("expected header {header:?}, found {found:?}")));
    }
    r.records()
        .map(|rec| {
            rec.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(|e| CliError::Validation(format!("unreadable row: {e}")))
        })
        .collect()
}

fn real_field(row: &[String], i: usize) -> Result<f64, CliError> {
    parse_real(&row[i]).ok_or_else(|| CliError::Validation(format!("not a number: {:?}", row[i])))
}

fn int_field(row: &[String], i: usize) -> Result<u64, CliError> {
    row[i]
        .parse()
        .map_err(|_| CliError::Validation(format!("not an integer: {:?}", row[i])))
}

/// Rows of a `sim-normal` result file. Fields not written to the file
/// (the oracle AUPC) read back as NaN.
pub fn read_normal(bytes: &[u8]) -> Result<Vec<NormalRepetition>, CliError> {
    read_table(bytes, &NORMAL_HEADER)?
        .iter()
        .map(|row| {
            Ok(NormalRepetition {
                rep: int_field(row, 0)?,
                scale_c: real_field(row, 1)?,
                mi_ratio: real_field(row, 2)?,
                aupc_uplift: real_field(row, 3)?,
                aupc_predictive: real_field(row, 4)?,
                aupc_oracle: f64::NAN,
                measured_s0: real_field(row, 5)?,
                measured_s1: real_field(row, 6)?,
            })
        })
        .collect()
}

/// `(n_u, n_p, win_rate_uplift, mean_aupc_u, mean_aupc_p)` per grid row.
pub type GridRow = (u64, u64, f64, f64, f64);

pub fn read_grid(bytes: &[u8]) -> Result<Vec<GridRow>, CliError> {
    read_table(bytes, &GRID_HEADER)?
        .iter()
        .map(|row| {
            Ok((
                int_field(row, 0)?,
                int_field(row, 1)?,
                real_field(row, 2)?,
                real_field(row, 3)?,
                real_field(row, 4)?,
            ))
        })
        .collect()
}

pub fn read_sweep(bytes: &[u8]) -> Result<Vec<SweepRow>, CliError> {
    read_table(bytes, &SWEEP_HEADER)?
        .iter()
        .map(|row| {
            Ok(SweepRow {
                s0: real_field(row, 0)?,
                s1: real_field(row, 1)?,
                uplift_win_ratio: real_field(row, 2)?,
            })
        })
        .collect()
}

/// `(k, value)` pairs of a curve file.
pub fn read_curve(bytes: &[u8], value_column: &str) -> Result<Vec<(usize, f64)>, CliError> {
    read_table(bytes, &["k", value_column])?
        .iter()
        .map(|row| Ok((int_field(row, 0)? as usize, real_field(row, 1)?)))
        .collect()
}

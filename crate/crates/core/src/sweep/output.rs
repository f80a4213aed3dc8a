use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{Gamma0Rule, SweepRow};
use crate::channel::linear_to_db;
use crate::error::{Error, Result};

/// Significant digits of every number in the CSV.
pub const CSV_DIGITS: usize = 9;

/// `%g`-style rendering with `digits` significant digits: fixed notation for
/// moderate exponents, scientific otherwise, trailing zeros removed.
pub fn format_sig(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if !value.is_finite() {
        return if value.is_nan() {
            "nan".into()
        } else if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{value:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num(v: f64) -> String {
    format_sig(v, CSV_DIGITS)
}

fn check_nonempty(rows: &[SweepRow]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Sweep("no rows to write".into()));
    }
    Ok(())
}

fn header(rows: &[SweepRow]) -> Vec<String> {
    let first = &rows[0];
    let mut cols = vec!["gamma1_db".to_string(), "gamma2_db".to_string()];
    for (rule, _) in &first.gamma0 {
        cols.push(format!("gamma0[{rule}]"));
        cols.push(format!("gamma0_db[{rule}]"));
    }
    cols.extend(first.curves().into_iter().map(|(name, _)| name));
    for check in &first.checks {
        cols.push(format!("{}_oracle", check.column));
        cols.push(format!("{}_abs_dev", check.column));
    }
    cols
}

fn gamma0_cells(gamma0: &[(Gamma0Rule, f64)]) -> impl Iterator<Item = String> + '_ {
    gamma0.iter().flat_map(|&(_, g)| {
        let db = if g == 0.0 {
            "-inf".to_string()
        } else {
            num(linear_to_db(g))
        };
        [num(g), db]
    })
}

/// Header line plus one line per row. Every row must carry the same columns
/// as the first.
pub fn emit_csv(rows: &[SweepRow], mut out: impl Write) -> Result<()> {
    check_nonempty(rows)?;
    let header = header(rows);
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut cells = vec![num(row.gamma1_db), num(row.gamma2_db)];
        cells.extend(gamma0_cells(&row.gamma0));
        cells.extend(row.curves().into_iter().map(|(_, v)| num(v)));
        for check in &row.checks {
            cells.push(num(check.oracle));
            cells.push(num((check.oracle - check.closed_form).abs()));
        }
        if cells.len() != header.len() {
            return Err(Error::Sweep(format!(
                "row at gamma1 = {} dB has {} columns, header has {}",
                row.gamma1_db,
                cells.len(),
                header.len()
            )));
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// Gnuplot script drawing every scheme column of `csv_path` against
/// `gamma1_db`.
pub fn emit_plot_script(rows: &[SweepRow], csv_path: &str, mut out: impl Write) -> Result<()> {
    check_nonempty(rows)?;
    let header = header(rows);
    let curves: Vec<(usize, String)> = rows[0]
        .curves()
        .into_iter()
        .map(|(name, _)| {
            let idx = header.iter().position(|h| *h == name).expect("curve column in header");
            (idx + 1, name)
        })
        .collect();
    if curves.is_empty() {
        return Err(Error::Sweep("no scheme curves to plot".into()));
    }
    let quoted = csv_path.replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "set datafile separator \",\"")?;
    writeln!(out, "set key top left")?;
    writeln!(out, "set grid")?;
    writeln!(out, "set xlabel \"gamma1 [dB]\"")?;
    writeln!(out, "set ylabel \"two-way rate [bits/s]\"")?;
    let plots: Vec<String> = curves
        .iter()
        .map(|(col, name)| format!("\"{quoted}\" using 1:{col} skip 1 with linespoints title \"{name}\""))
        .collect();
    writeln!(out, "plot {}", plots.join(", \\\n     "))?;
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(rows: &[SweepRow], path: &Path) -> Result<()> {
    emit_csv(rows, BufWriter::new(File::create(path)?))
}

pub fn write_plot_script_file(rows: &[SweepRow], csv_path: &str, path: &Path) -> Result<()> {
    emit_plot_script(rows, csv_path, BufWriter::new(File::create(path)?))
}

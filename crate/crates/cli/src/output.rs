//! Table, CSV and JSON writers for [`Record`]s.

use std::io::Write;

use serde::Serialize;

use crate::compute::Record;
use crate::config::Format;
use crate::error::CliError;

pub const HEADER: [&str; 11] = [
    "state",
    "l",
    "lambda",
    "mu",
    "method",
    "convention",
    "energy",
    "units",
    "v_star",
    "residual",
    "flag",
];

/// Nine significant digits, trailing zeros trimmed. Very large or small
/// magnitudes use exponent notation.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..9).contains(&magnitude) {
        let decimals = (8 - magnitude).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.8e}");
        let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exponent}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn fields(r: &Record) -> [String; 11] {
    [
        r.state.clone(),
        r.l.to_string(),
        format_sig(r.lambda),
        format_sig(r.mu),
        r.method.to_string(),
        r.convention.to_string(),
        opt(r.energy),
        r.units.to_string(),
        opt(r.v_star),
        opt(r.residual),
        r.flag.clone(),
    ]
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    state: &'a str,
    l: u32,
    lambda: f64,
    mu: f64,
    method: &'a str,
    convention: &'a str,
    energy: Option<f64>,
    units: &'a str,
    v_star: Option<f64>,
    residual: Option<f64>,
    flag: &'a str,
}

fn rounded(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

pub fn write_records(records: &[Record], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(records, out),
        Format::Json => write_json(records, out),
        Format::Table => write_table(records, out),
    }
}

pub fn write_csv(records: &[Record], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record(fields(r)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(err: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(err.to_string()))
}

pub fn write_json(records: &[Record], out: &mut dyn Write) -> Result<(), CliError> {
    let rows: Vec<JsonRecord> = records
        .iter()
        .map(|r| JsonRecord {
            state: &r.state,
            l: r.l,
            lambda: rounded(r.lambda),
            mu: rounded(r.mu),
            method: r.method,
            convention: r.convention,
            energy: r.energy.map(rounded),
            units: r.units,
            v_star: r.v_star.map(rounded),
            residual: r.residual.map(rounded),
            flag: &r.flag,
        })
        .collect();
    serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

/// Space-aligned columns; empty numeric cells print as `-`.
pub fn write_table(records: &[Record], out: &mut dyn Write) -> Result<(), CliError> {
    let rows: Vec<[String; 11]> = records
        .iter()
        .map(|r| {
            let mut f = fields(r);
            for cell in [6, 8, 9] {
                if f[cell].is_empty() {
                    f[cell] = "-".into();
                }
            }
            f
        })
        .collect();
    let mut widths = HEADER.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        s.trim_end().to_string()
    };
    writeln!(out, "{}", line(&HEADER))?;
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> Record {
        Record {
            state: "1s".into(),
            l: 0,
            lambda: 0.02,
            mu: 0.02,
            method: "oracle",
            convention: "per-part",
            energy: Some(-0.480_007_823_456_7),
            units: "internal",
            v_star: None,
            residual: Some(1.4e-12),
            flag: String::new(),
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(-0.4800078234567), "-0.480007823");
        assert_eq!(format_sig(-1.0), "-1");
        assert_eq!(format_sig(0.05), "0.05");
        assert_eq!(format_sig(1.4e-12), "1.4e-12");
        assert_eq!(format_sig(123456789012.0), "1.23456789e11");
        assert_eq!(format_sig(0.0), "0");
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&[record()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "state,l,lambda,mu,method,convention,energy,units,v_star,residual,flag\n\
             1s,0,0.02,0.02,oracle,per-part,-0.480007823,internal,,1.4e-12,\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        write_json(&[record()], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let row = &v.as_array().unwrap()[0];
        assert_eq!(row["energy"].as_f64(), Some(-0.480007823));
        assert!(row["v_star"].is_null());
        assert_eq!(row.as_object().unwrap().len(), HEADER.len());
    }

    #[test]
    fn table_marks_missing_values() {
        let mut r = record();
        r.energy = None;
        let mut buf = Vec::new();
        write_table(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().contains(" - "));
    }
}

//! CSV output with fixed column order and 10-significant-digit floats.

use std::io::Write;
use std::path::Path;

use super::runner::{Columns, ResultRow};
use crate::error::{Error, Result};

/// Formats like C's `%.10g`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..10).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{x:.*}", (9 - exp) as usize)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cells(row: &ResultRow) -> Vec<String> {
    let mut out = vec![row.scenario_id.clone()];
    out.extend(row.params.iter().map(|&v| format_float(v)));
    if let Some(s) = &row.strategies {
        out.push(s.clone());
    }
    out.extend(row.frequencies.iter().map(|&v| format_float(v)));
    out.push(format_float(row.freq_commit));
    out.push(format_float(row.welfare_commit));
    if let Some(w) = row.welfare_baseline {
        out.push(format_float(w));
    }
    out.extend(row.thresholds.iter().map(|t| t.map(format_float).unwrap_or_default()));
    out
}

/// Writes header and rows to any writer.
pub fn write_csv<W: Write>(columns: &Columns, rows: &[ResultRow], sink: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(sink);
    w.write_record(columns.header())?;
    for row in rows {
        w.write_record(cells(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(columns: &Columns, rows: &[ResultRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(columns, rows, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expcli::config::GameKind;

    #[test]
    fn printf_g_style() {
        let cases = [
            (0.1, "0.1"),
            (1.0 / 3.0, "0.3333333333"),
            (100.0, "100"),
            (1e-5, "1e-05"),
            (1.5e-5, "1.5e-05"),
            (0.0001, "0.0001"),
            (123_456_789_012.0, "1.23456789e+11"),
            (1_234_567_890.0, "1234567890"),
            (9_999_999_999.6, "1e+10"),
            (0.658_333_333_333_333_3, "0.6583333333"),
            (-2.5, "-2.5"),
            (0.30000000000000004, "0.3"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(format_float(x), want, "{x:e}");
        }
    }

    #[test]
    fn empty_stream_is_header_only() {
        let cols = Columns {
            game: GameKind::Pairwise,
            strategies: false,
            baseline: true,
        };
        let mut buf = Vec::new();
        write_csv(&cols, &[], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("scenario_id,alpha,benefit_high,benefit_low,beta,cost_high,cost_low,delta,eps,pop_size,theta1,theta2,freq_HP,"));
        assert!(text.trim_end().ends_with("freq_commit,welfare_commit,welfare_baseline,alpha_bound,eps_bound_HP,eps_bound_LP"));
    }
}

//! Figure datasets as CSV.
//!
//! Numbers are written in plain decimal notation with twelve significant
//! digits. The `delta_p` column is derived from the *serialized* probability
//! columns, so a reader that recomputes it gets the same bytes back.

use std::io::{Read, Write};

use thiserror::Error;

pub const SIG_DIGITS: usize = 12;

/// Columns following the axis columns in every figure table.
pub const VALUE_COLUMNS: [&str; 6] = ["p_npovm", "p_povm", "delta_p", "slack_d", "slack_e", "feasible"];

#[derive(Debug, Error)]
pub enum TableError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("header must end with {VALUE_COLUMNS:?} after at least one axis column")]
    Header,
    #[error("row {row}: expected {expected} fields, found {found}")]
    Width { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {column}: '{text}' is not a finite decimal number")]
    Number { row: usize, column: String, text: String },
    #[error("row {row}: feasible must be 'true' or 'false', found '{text}'")]
    Flag { row: usize, text: String },
    #[error("row {row}: delta_p {found} does not reproduce p_npovm − p_povm = {expected}")]
    DeltaMismatch { row: usize, expected: String, found: String },
}

/// Decimal rendering with [`SIG_DIGITS`] significant digits and no exponent.
///
/// Trailing zeros are dropped, so `0.5` prints as `0.5` and zero as `0`.
pub fn format_value(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let int_len = exp + 1;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if int_len <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-int_len) as usize));
        out.push_str(&digits);
    } else if int_len as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', int_len as usize - digits.len()));
    } else {
        out.push_str(&digits[..int_len as usize]);
        out.push('.');
        out.push_str(&digits[int_len as usize..]);
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

/// Strict inverse of [`format_value`]: plain decimals only, finite.
pub fn parse_value(s: &str) -> Option<f64> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let ok_chars = !body.is_empty()
        && body.bytes().all(|b| b.is_ascii_digit() || b == b'.')
        && body.bytes().filter(|&b| b == b'.').count() <= 1
        && body.bytes().any(|b| b.is_ascii_digit());
    if !ok_chars {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// `p_npovm − p_povm` computed from their serialized forms.
pub fn serialized_delta(p_npovm: &str, p_povm: &str) -> Option<String> {
    Some(format_value(parse_value(p_npovm)? - parse_value(p_povm)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureRow {
    pub coords: Vec<f64>,
    pub p_npovm: f64,
    pub p_povm: f64,
    pub slack_d: f64,
    pub slack_e: f64,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureTable {
    pub axes: Vec<String>,
    pub rows: Vec<FigureRow>,
}

impl FigureTable {
    pub fn header(&self) -> Vec<String> {
        self.axes
            .iter()
            .cloned()
            .chain(VALUE_COLUMNS.iter().map(|s| s.to_string()))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), TableError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            let pn = format_value(row.p_npovm);
            let pp = format_value(row.p_povm);
            let delta = serialized_delta(&pn, &pp).unwrap_or_else(|| format_value(f64::NAN));
            let mut record: Vec<String> = row.coords.iter().map(|v| format_value(*v)).collect();
            record.extend([
                pn,
                pp,
                delta,
                format_value(row.slack_d),
                format_value(row.slack_e),
                row.feasible.to_string(),
            ]);
            w.write_record(&record)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }

    /// Parses a figure table, rejecting any row whose `delta_p` does not
    /// reproduce from its probability columns.
    pub fn read_csv<R: Read>(input: R) -> Result<Self, TableError> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let n_axes = header.len().checked_sub(VALUE_COLUMNS.len()).filter(|&n| n > 0).ok_or(TableError::Header)?;
        if header[n_axes..] != VALUE_COLUMNS {
            return Err(TableError::Header);
        }
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let row = i + 1;
            let rec = match rec {
                Err(e) => match e.kind() {
                    csv::ErrorKind::UnequalLengths { len, expected_len, .. } => {
                        return Err(TableError::Width { row, expected: *expected_len as usize, found: *len as usize })
                    }
                    _ => return Err(e.into()),
                },
                Ok(rec) => rec,
            };
            if rec.len() != header.len() {
                return Err(TableError::Width { row, expected: header.len(), found: rec.len() });
            }
            let num = |k: usize| {
                parse_value(&rec[k]).ok_or_else(|| TableError::Number {
                    row,
                    column: header[k].clone(),
                    text: rec[k].to_string(),
                })
            };
            let coords = (0..n_axes).map(num).collect::<Result<Vec<_>, _>>()?;
            let p_npovm = num(n_axes)?;
            let p_povm = num(n_axes + 1)?;
            num(n_axes + 2)?;
            let expected = serialized_delta(&rec[n_axes], &rec[n_axes + 1]).expect("columns parsed above");
            if expected != rec[n_axes + 2] {
                return Err(TableError::DeltaMismatch { row, expected, found: rec[n_axes + 2].to_string() });
            }
            let feasible = match &rec[n_axes + 5] {
                "true" => true,
                "false" => false,
                other => return Err(TableError::Flag { row, text: other.to_string() }),
            };
            rows.push(FigureRow {
                coords,
                p_npovm,
                p_povm,
                slack_d: num(n_axes + 3)?,
                slack_e: num(n_axes + 4)?,
                feasible,
            });
        }
        Ok(Self { axes: header[..n_axes].to_vec(), rows })
    }
}

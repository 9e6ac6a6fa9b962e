//! Verification records and their on-disk formats.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::Complex;

/// Column order of the table format; the object format uses the same keys.
pub const HEADER: [&str; 11] = [
    "suite",
    "identity",
    "params",
    "reference",
    "candidate",
    "abs_dev",
    "rel_dev",
    "tolerance",
    "pass",
    "flags",
    "wall_time",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Comma-separated table with a header line.
    Table,
    /// One JSON object per line.
    Objects,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Table => "csv",
            ReportFormat::Objects => "jsonl",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("refusing to write an empty report")]
    Empty,
    #[error("report I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed report: {0}")]
    Parse(String),
}

/// One comparison of two evaluations of the same quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub suite: String,
    pub identity: String,
    /// Parameters as (name, value) pairs, echoed into the report.
    pub params: Vec<(String, Complex)>,
    pub reference: Complex,
    pub candidate: Complex,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Free-form notes, e.g. an evaluation error or a boundary flag.
    pub flags: String,
    pub wall_time: f64,
}

impl VerificationRecord {
    /// Compares `candidate` with `reference`. The record passes when the
    /// relative deviation is within `tolerance` or the absolute deviation is
    /// within `abs_floor`.
    pub fn compare(
        suite: &str,
        identity: &str,
        params: Vec<(String, Complex)>,
        reference: Complex,
        candidate: Complex,
        tolerance: f64,
        abs_floor: f64,
    ) -> Self {
        let abs_dev = (candidate - reference).norm();
        let rel_dev = if reference.norm() > 0.0 {
            abs_dev / reference.norm()
        } else if abs_dev == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let pass = abs_dev.is_finite() && (rel_dev <= tolerance || abs_dev <= abs_floor);
        Self {
            suite: suite.into(),
            identity: identity.into(),
            params,
            reference,
            candidate,
            abs_dev,
            rel_dev,
            tolerance,
            pass,
            flags: String::new(),
            wall_time: 0.0,
        }
    }

    /// A failed record for a point where one side could not be evaluated.
    pub fn failure(suite: &str, identity: &str, params: Vec<(String, Complex)>, tolerance: f64, why: &str) -> Self {
        let nan = Complex::new(f64::NAN, f64::NAN);
        Self {
            suite: suite.into(),
            identity: identity.into(),
            params,
            reference: nan,
            candidate: nan,
            abs_dev: f64::NAN,
            rel_dev: f64::NAN,
            tolerance,
            pass: false,
            flags: why.into(),
            wall_time: 0.0,
        }
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        if !self.flags.is_empty() {
            self.flags.push(';');
        }
        self.flags.push_str(flag);
        self
    }

    pub fn params_string(&self) -> String {
        let mut s = String::new();
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            let _ = write!(s, "{k}={}", format_complex(*v));
        }
        s
    }

    fn fields(&self) -> [String; 11] {
        [
            self.suite.clone(),
            self.identity.clone(),
            self.params_string(),
            format_complex(self.reference),
            format_complex(self.candidate),
            format_float(self.abs_dev),
            format_float(self.rel_dev),
            format_float(self.tolerance),
            self.pass.to_string(),
            self.flags.clone(),
            format_float(self.wall_time),
        ]
    }
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// "re+imi" with both parts at 17 significant digits.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{sign}{:.16e}i", z.re, z.im.abs())
}

/// Parses "1.5", "0.5+1.25i", "-2e-3-4i", "3i", "-i".
pub fn parse_complex(s: &str) -> Option<Complex> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex::new(re, 0.0));
    };
    // split before the last sign that is not an exponent sign or the first char
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse::<f64>().ok(),
        }
    };
    match split {
        Some(i) => Some(Complex::new(body[..i].parse::<f64>().ok()?, imag(&body[i..])?)),
        None => Some(Complex::new(0.0, imag(body)?)),
    }
}

/// Sorts records by suite, identity and then the parameter tuple.
pub fn sort_canonical(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| {
        a.suite
            .cmp(&b.suite)
            .then_with(|| a.identity.cmp(&b.identity))
            .then_with(|| {
                let ka = a.params.iter().flat_map(|(_, v)| [v.re, v.im]);
                let kb = b.params.iter().flat_map(|(_, v)| [v.re, v.im]);
                ka.zip(kb)
                    .map(|(x, y)| x.total_cmp(&y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .then_with(|| a.params_string().cmp(&b.params_string()))
    });
}

/// Writes `records` to `path`, one record per line after a fixed header.
pub fn write_report(records: &[VerificationRecord], path: &Path, format: ReportFormat) -> Result<(), ReportError> {
    if records.is_empty() {
        return Err(ReportError::Empty);
    }
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    match format {
        ReportFormat::Table => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(HEADER).map_err(csv_io)?;
            for r in records {
                w.write_record(r.fields()).map_err(csv_io)?;
            }
            w.flush()?;
        }
        ReportFormat::Objects => {
            writeln!(out, "{}", Value::from(HEADER.to_vec()))?;
            for r in records {
                let mut obj = Map::new();
                for (k, v) in HEADER.iter().zip(r.fields()) {
                    obj.insert((*k).into(), Value::String(v));
                }
                writeln!(out, "{}", Value::Object(obj))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// Reads a table written by [`write_report`].
pub fn read_table(path: &Path) -> Result<Vec<VerificationRecord>, ReportError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| ReportError::Parse(e.to_string()))?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| ReportError::Parse(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    if header != HEADER {
        return Err(ReportError::Parse(format!("unexpected header {header:?}")));
    }
    let bad = |what: &str, v: &str| ReportError::Parse(format!("bad {what}: {v}"));
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| ReportError::Parse(e.to_string()))?;
        let f = |i: usize| row.get(i).unwrap_or("");
        let float = |i: usize| f(i).parse::<f64>().map_err(|_| bad(HEADER[i], f(i)));
        let cplx = |i: usize| parse_complex(f(i)).ok_or_else(|| bad(HEADER[i], f(i)));
        let mut params = Vec::new();
        for item in f(2).split(';').filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad("params", item))?;
            params.push((k.to_string(), parse_complex(v).ok_or_else(|| bad("params", v))?));
        }
        out.push(VerificationRecord {
            suite: f(0).into(),
            identity: f(1).into(),
            params,
            reference: cplx(3)?,
            candidate: cplx(4)?,
            abs_dev: float(5)?,
            rel_dev: float(6)?,
            tolerance: float(7)?,
            pass: f(8) == "true",
            flags: f(9).into(),
            wall_time: float(10)?,
        });
    }
    Ok(out)
}

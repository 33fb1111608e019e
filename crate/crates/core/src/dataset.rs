//! CSV storage of choice samples.
//!
//! The header is `y,x0,x1,...,x{d-1}`; each row holds a 0/1 outcome and the
//! sphere coordinates of the covariate. Floats are written in the shortest
//! form that parses back to the same value.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimator::ChoiceSample;
use crate::sphere::{norm, SpherePoint};

/// Rows whose covariate norm differs from 1 by more than this are rescaled.
pub const RENORMALIZE_TOL: f64 = 1e-6;

pub fn header(d: usize) -> String {
    let mut h = String::from("y");
    for j in 0..d {
        write!(h, ",x{j}").expect("writing to a String");
    }
    h
}

pub fn to_csv(sample: &ChoiceSample) -> String {
    let mut out = header(sample.dim());
    out.push('\n');
    for (y, x) in sample.y().iter().zip(sample.x()) {
        out.push(if *y { '1' } else { '0' });
        for c in x.iter() {
            write!(out, ",{c}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, sample: &ChoiceSample) -> Result<()> {
    std::fs::write(path, to_csv(sample)).map_err(|e| Error::io(path, e))
}

/// A parsed sample plus warnings about rows that were renormalised.
#[derive(Debug, Clone)]
pub struct ParsedSample {
    pub sample: ChoiceSample,
    pub warnings: Vec<String>,
}

/// Parses CSV text. `path` only labels error messages; line numbers are
/// 1-based and count the header.
pub fn parse_csv(text: &str, path: &Path) -> Result<ParsedSample> {
    let data_err = |line: usize, message: String| Error::Data {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let Some((head_line, head)) = lines.find(|(_, l)| !l.trim().is_empty()) else {
        return Err(data_err(1, "file is empty; expected header y,x0,...".into()));
    };
    let fields: Vec<&str> = head.split(',').map(str::trim).collect();
    let d = fields.len().saturating_sub(1);
    if d < 2 || fields != header(d).split(',').collect::<Vec<_>>() {
        return Err(data_err(head_line, format!("bad header '{head}'; expected y,x0,x1,... with at least two x columns")));
    }
    let mut y = Vec::new();
    let mut x = Vec::new();
    let mut warnings = Vec::new();
    for (line, row) in lines {
        if row.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = row.split(',').map(str::trim).collect();
        if cells.len() != d + 1 {
            return Err(data_err(line, format!("expected {} fields, found {}", d + 1, cells.len())));
        }
        let yi = match cells[0] {
            "1" => true,
            "0" => false,
            other => return Err(data_err(line, format!("outcome must be 0 or 1, found '{other}'"))),
        };
        let mut coords = Vec::with_capacity(d);
        for (j, c) in cells[1..].iter().enumerate() {
            let v: f64 = c
                .parse()
                .map_err(|_| data_err(line, format!("x{j} is not a number: '{c}'")))?;
            if !v.is_finite() {
                return Err(data_err(line, format!("x{j} is not finite")));
            }
            coords.push(v);
        }
        let n = norm(&coords);
        if n == 0.0 {
            return Err(data_err(line, "covariate vector is zero".into()));
        }
        if (n - 1.0).abs() > RENORMALIZE_TOL {
            warnings.push(format!("{}:{line}: covariate norm {n} rescaled to 1", path.display()));
            coords.iter_mut().for_each(|c| *c /= n);
        }
        if coords[0] < 0.0 {
            return Err(data_err(line, "x0 is negative; covariates must have x0 >= 0".into()));
        }
        let p = SpherePoint::new(coords)
            .map_err(|_| data_err(line, "covariate is not a unit vector".into()))?;
        y.push(yi);
        x.push(p);
    }
    if y.is_empty() {
        return Err(data_err(head_line, "no observations after the header".into()));
    }
    let sample = ChoiceSample::new(y, x).map_err(|e| data_err(1, e.to_string()))?;
    Ok(ParsedSample { sample, warnings })
}

pub fn read_csv(path: &Path) -> Result<ParsedSample> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, path)
}

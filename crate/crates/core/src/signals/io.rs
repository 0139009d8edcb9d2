//! Single-column CSV signals and the Haar coefficient table.

use std::io::Write;
use std::path::Path;

use super::haar::{haar_parent, HaarCoefficients};
use crate::error::{Error, Result};

/// Parses one value per line. Blank lines are skipped; a first line that is
/// not a number is taken as a header.
pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let field = line.trim().trim_end_matches(',');
        if field.is_empty() {
            continue;
        }
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(v) => return Err(Error::Parse(format!("line {}: non-finite value {v}", lineno + 1))),
            Err(_) if lineno == 0 => continue,
            Err(_) => return Err(Error::Parse(format!("line {}: not a number: {field:?}", lineno + 1))),
        }
    }
    Ok(out)
}

pub fn read_signal(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_signal(&text)
}

pub fn signal_to_csv(x: &[f64]) -> String {
    x.iter().map(|v| format!("{v}\n")).collect()
}

pub fn write_signal(path: &Path, x: &[f64]) -> Result<()> {
    std::fs::write(path, signal_to_csv(x)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Columns `index,value,parent_index`, 1-based; the root's parent is empty.
pub fn write_haar_csv<W: Write>(c: &HaarCoefficients, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Parse(e.to_string());
    wtr.write_record(["index", "value", "parent_index"]).map_err(err)?;
    for (i, v) in c.values.iter().enumerate() {
        let parent = haar_parent(i).map(|p| (p + 1).to_string()).unwrap_or_default();
        wtr.write_record([(i + 1).to_string(), v.to_string(), parent])
            .map_err(err)?;
    }
    wtr.flush().map_err(|e| Error::Parse(e.to_string()))
}

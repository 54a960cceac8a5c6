//! CSV ingestion: sample tables with header `x,y[,j][,z]`, plus headerless
//! numeric matrices/columns for the overdetermined solver.
//!
//! Cells parse to exact rationals when written as `p/q` or as decimals with
//! at most 15 digits; anything else (scientific notation, long decimals) is
//! taken as a float and forces the numeric backend.

use std::path::Path;

use pvariance::Scalar;

use crate::expr::parse_scalar_arg;

/// A parsed sample table.
#[derive(Debug)]
pub struct SampleTable {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    /// Per-sample masses; all ones when the `j` column is absent.
    pub masses: Vec<Scalar>,
    /// Fixed-element values when the `z` column is present.
    pub z: Option<Vec<Scalar>>,
}

fn parse_cell(text: &str, line: usize, col: &str) -> Result<Scalar, String> {
    let t = text.trim();
    if let Ok(v) = parse_scalar_arg(t) {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Scalar::float(v)),
        _ => Err(format!("line {line}: malformed value '{t}' in column {col}")),
    }
}

pub fn load_samples(path: &Path) -> Result<SampleTable, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| format!("line 1: {e}"))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    let expected: &[&[&str]] = &[
        &["x", "y"],
        &["x", "y", "j"],
        &["x", "y", "z"],
        &["x", "y", "j", "z"],
    ];
    if !expected.iter().any(|e| headers == *e) {
        return Err(format!(
            "line 1: header must be x,y[,j][,z], found {}",
            headers.join(",")
        ));
    }
    let has_j = headers.contains(&"j".to_string());
    let has_z = headers.contains(&"z".to_string());
    let mut out = SampleTable {
        x: Vec::new(),
        y: Vec::new(),
        masses: Vec::new(),
        z: if has_z { Some(Vec::new()) } else { None },
    };
    for (idx, rec) in rdr.records().enumerate() {
        let line = idx + 2; // 1-based, after the header
        let rec = rec.map_err(|e| format!("line {line}: {e}"))?;
        if rec.len() != headers.len() {
            return Err(format!(
                "line {line}: expected {} cells, found {}",
                headers.len(),
                rec.len()
            ));
        }
        let x = parse_cell(&rec[0], line, "x")?;
        if out.x.contains(&x) {
            return Err(format!("line {line}: duplicate x value {x}"));
        }
        let y = parse_cell(&rec[1], line, "y")?;
        let mut col = 2;
        let mass = if has_j {
            let j = parse_cell(&rec[col], line, "j")?;
            col += 1;
            if !j.is_positive() {
                return Err(format!("line {line}: weight {j} must be positive"));
            }
            j
        } else {
            Scalar::one()
        };
        if let Some(zs) = out.z.as_mut() {
            zs.push(parse_cell(&rec[col], line, "z")?);
        }
        out.x.push(x);
        out.y.push(y);
        out.masses.push(mass);
    }
    if out.x.is_empty() {
        return Err("no data rows".into());
    }
    Ok(out)
}

/// Headerless numeric matrix; every row must have the same width.
pub fn load_matrix(path: &Path) -> Result<Vec<Vec<Scalar>>, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let line = idx + 1;
        let rec = rec.map_err(|e| format!("line {line}: {e}"))?;
        let row: Vec<Scalar> = rec
            .iter()
            .enumerate()
            .map(|(c, cell)| parse_cell(cell, line, &format!("{}", c + 1)))
            .collect::<Result<_, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(format!(
                    "line {line}: expected {} cells, found {}",
                    first.len(),
                    row.len()
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("empty matrix".into());
    }
    Ok(rows)
}

/// Headerless single numeric column.
pub fn load_column(path: &Path) -> Result<Vec<Scalar>, String> {
    let rows = load_matrix(path)?;
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() == 1 {
                Ok(row.into_iter().next().unwrap())
            } else {
                Err(format!("line {}: expected a single column", i + 1))
            }
        })
        .collect()
}

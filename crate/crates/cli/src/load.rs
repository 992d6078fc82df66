//! File loaders. Every error names the file it came from.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex;

use uflab::graph::{parse_graph, GraphPresentation};
use uflab::specops::{read_matrix_csv, write_matrix_csv};
use uflab::ufh::EventuallyPeriodicSequence;
use uflab::{LineOperator, SpinorGridState, SymMatrix};

use crate::report::{CliError, CliResult, Inputs};

fn named(path: &Path) -> String {
    path.display().to_string()
}

pub fn graph(inputs: &mut Inputs, path: &Path) -> CliResult<GraphPresentation> {
    let text = inputs.read_text(path)?;
    parse_graph(&text).map_err(|e| CliError::from(e).context(&named(path)))
}

pub fn sequence(inputs: &mut Inputs, path: &Path) -> CliResult<EventuallyPeriodicSequence> {
    let text = inputs.read_text(path)?;
    EventuallyPeriodicSequence::from_json(&text).map_err(|e| CliError::from(e).context(&named(path)))
}

pub fn matrix(inputs: &mut Inputs, path: &Path) -> CliResult<DMatrix<f64>> {
    let bytes = inputs.read(path)?;
    read_matrix_csv(bytes.as_slice(), &named(path)).map_err(CliError::from)
}

pub fn symmetric(inputs: &mut Inputs, path: &Path, tol: f64) -> CliResult<SymMatrix> {
    let m = matrix(inputs, path)?;
    SymMatrix::with_tolerance(m, tol).map_err(|e| CliError::from(e).context(&named(path)))
}

pub fn line_operator(inputs: &mut Inputs, path: &Path) -> CliResult<LineOperator> {
    let text = inputs.read_text(path)?;
    LineOperator::from_json(&text).map_err(|e| CliError::from(e).context(&named(path)))
}

pub fn state(inputs: &mut Inputs, path: &Path, x0: f64, h: f64) -> CliResult<SpinorGridState> {
    let bytes = inputs.read(path)?;
    SpinorGridState::read_csv(bytes.as_slice(), x0, h, &named(path)).map_err(CliError::from)
}

fn number(field: &str, row: usize, col: &str, path: &Path) -> CliResult<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(format!("{}: row {row}, column {col}: '{field}' is not a number", named(path))))
}

/// `t,re,im` rows of band-limited Fourier data.
pub fn nodes(inputs: &mut Inputs, path: &Path) -> CliResult<Vec<(f64, Complex<f64>)>> {
    let bytes = inputs.read(path)?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes.as_slice());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| CliError::invalid(format!("{}: row {row}: {e}", named(path))))?;
        if rec.len() != 3 {
            return Err(CliError::invalid(format!("{}: row {row}: expected columns t,re,im", named(path))));
        }
        let t = number(&rec[0], row, "t", path)?;
        let re = number(&rec[1], row, "re", path)?;
        let im = number(&rec[2], row, "im", path)?;
        out.push((t, Complex::new(re, im)));
    }
    if out.is_empty() {
        return Err(CliError::invalid(format!("{}: no nodes", named(path))));
    }
    Ok(out)
}

/// One value per row under a `value` header.
pub fn samples(inputs: &mut Inputs, path: &Path) -> CliResult<Vec<f64>> {
    let bytes = inputs.read(path)?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes.as_slice());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| CliError::invalid(format!("{}: row {row}: {e}", named(path))))?;
        if rec.len() != 1 {
            return Err(CliError::invalid(format!("{}: row {row}: expected one column", named(path))));
        }
        out.push(number(&rec[0], row, "value", path)?);
    }
    Ok(out)
}

pub fn matrix_csv(m: &DMatrix<f64>) -> String {
    let mut buf = Vec::new();
    write_matrix_csv(m, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Comma list of integers, with `a-b` for inclusive ranges.
pub fn usize_list(text: &str, field: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || CliError::invalid(format!("--{field}: '{part}' is not a number or a range a-b"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(CliError::invalid(format!("--{field}: empty list")));
    }
    Ok(out)
}

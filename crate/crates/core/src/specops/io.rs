use std::io::{Read, Write};

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One matrix row per CSV record, no header, `.` as decimal point.
pub fn read_matrix_csv<T: Scalar>(src: impl Read, name: &str) -> Result<DMatrix<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(src);
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::invalid(format!("{name}: row {}: {e}", i + 1)))?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map(T::of).map_err(|_| {
                    Error::invalid(format!("{name}: row {}, column {}: '{field}' is not a number", i + 1, j + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || ncols == 0 {
        return Err(Error::invalid(format!("{name}: no matrix entries")));
    }
    let flat: Vec<T> = rows.into_iter().flatten().collect();
    Ok(DMatrix::from_row_slice(flat.len() / ncols, ncols, &flat))
}

pub fn write_matrix_csv<T: Scalar>(m: &DMatrix<T>, dst: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(dst);
    for i in 0..m.nrows() {
        w.write_record((0..m.ncols()).map(|j| format!("{:e}", m[(i, j)].to64())))
            .map_err(|e| Error::invalid(format!("writing CSV: {e}")))?;
    }
    w.flush().map_err(|e| Error::invalid(format!("writing CSV: {e}")))
}

/// Complex matrix as a pair of files: real part, imaginary part.
pub fn read_complex_csv<T: Scalar>(re: impl Read, im: impl Read, name: &str) -> Result<DMatrix<Complex<T>>> {
    let r: DMatrix<T> = read_matrix_csv(re, &format!("{name} (real part)"))?;
    let i: DMatrix<T> = read_matrix_csv(im, &format!("{name} (imaginary part)"))?;
    if r.shape() != i.shape() {
        return Err(Error::invalid(format!(
            "{name}: real part is {:?} but imaginary part is {:?}",
            r.shape(),
            i.shape()
        )));
    }
    Ok(r.zip_map(&i, Complex::new))
}

pub fn write_complex_csv<T: Scalar>(m: &DMatrix<Complex<T>>, re: impl Write, im: impl Write) -> Result<()> {
    write_matrix_csv(&m.map(|z| z.re), re)?;
    write_matrix_csv(&m.map(|z| z.im), im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, -2.5, 3e-17, 0.1, 0.0, 7.0]);
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        let back: DMatrix<f64> = read_matrix_csv(buf.as_slice(), "m").unwrap();
        assert_eq!(back, m);
        let z = m.map(|x| Complex::new(x, -x));
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_complex_csv(&z, &mut a, &mut b).unwrap();
        assert_eq!(read_complex_csv::<f64>(a.as_slice(), b.as_slice(), "z").unwrap(), z);
    }

    #[test]
    fn errors_name_the_location() {
        let e = read_matrix_csv::<f64>("1,2\n3,x\n".as_bytes(), "a.csv").unwrap_err();
        assert!(e.to_string().contains("a.csv: row 2, column 2"), "{e}");
        let e = read_matrix_csv::<f64>("1,2\n3\n".as_bytes(), "a.csv").unwrap_err();
        assert!(e.to_string().contains("row 2"), "{e}");
    }
}

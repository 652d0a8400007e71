use crate::la::{DenseMatrix, Vector};
use std::io::{self, Write};

/// Writes a matrix in the plain-text interchange format: a `rows cols`
/// header line, then one whitespace-separated row per line at full
/// (round-trip) precision.
pub fn write_matrix_text(m: &DenseMatrix, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} {}", m.rows(), m.cols())?;
    for i in 0..m.rows() {
        let row = m.row(i);
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                write!(out, " ")?;
            }
            write!(out, "{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes a vector as an `N x 1` matrix in the same format.
pub fn write_vector_text(v: &Vector, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{} 1", v.len())?;
    for x in v.as_slice() {
        writeln!(out, "{x}")?;
    }
    Ok(())
}

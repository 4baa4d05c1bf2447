//! Plain-text matrix format.
//!
//! ```text
//! p m rows cols
//! f_0 f_1 ... f_m        (only when m > 1)
//! a00 a01 ...
//! ```
//! Extension-field entries are colon-joined coefficient lists, little-endian.

use super::{Matrix, MatrixError};
use crate::field::make_field;

pub fn write_matrix(m: &Matrix) -> String {
    let f = m.field();
    let mut out = format!("{} {} {} {}\n", f.characteristic(), f.degree(), m.rows(), m.cols());
    if f.degree() > 1 {
        let coeffs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        out.push_str(&coeffs.join(" "));
        out.push('\n');
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| f.format(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix, MatrixError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let bad = |line: usize, msg: &str| MatrixError::Parse { line, msg: msg.to_string() };

    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad(ln, "header must be `p m rows cols`"))?;
    let [p, m, rows, cols] = nums[..] else {
        return Err(bad(ln, "header must be `p m rows cols`"));
    };
    let modulus = if m > 1 {
        let (ln, l) = lines.next().ok_or_else(|| bad(ln, "missing modulus line"))?;
        Some(
            l.split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<Vec<u64>, _>>()
                .map_err(|_| bad(ln, "bad modulus coefficient"))?,
        )
    } else {
        None
    };
    let field = make_field(p, m as u32, modulus)?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, l) = lines.next().ok_or_else(|| bad(0, "too few rows"))?;
        let before = data.len();
        for tok in l.split_whitespace() {
            data.push(field.parse(tok).map_err(|e| bad(ln, &e.to_string()))?);
        }
        if data.len() - before != cols {
            return Err(bad(ln, &format!("expected {cols} entries")));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(bad(ln, "trailing data"));
    }
    Ok(Matrix::from_vec(&field, rows, cols, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::fourier_matrix;

    #[test]
    fn round_trip_prime_and_extension() {
        let f = Field::prime(11).unwrap();
        let (u, _) = fourier_matrix(&f, 5).unwrap();
        let text = write_matrix(&u);
        assert!(text.starts_with("11 1 5 5\n1 1 1 1 1\n1 4 5 9 3\n"));
        assert_eq!(parse_matrix(&text).unwrap(), u);

        let g = make_field(3, 6, Some(vec![1; 7])).unwrap();
        let (u, _) = fourier_matrix(&g, 7).unwrap();
        assert_eq!(parse_matrix(&write_matrix(&u)).unwrap(), u);
    }

    #[test]
    fn rejects_short_rows() {
        assert!(matches!(parse_matrix("5 1 2 2\n1 2\n3\n"), Err(MatrixError::Parse { line: 3, .. })));
    }
}

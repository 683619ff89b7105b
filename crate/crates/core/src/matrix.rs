//! Small dense matrices over a ground field.
//!
//! Everything in this crate works at desk scale (dimensions rarely
//! above 4), so the representation is a plain row-major `Vec` and the
//! inverse is Gauss-Jordan with partial pivoting.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Mat::zero(dim, dim);
        for i in 0..dim {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(Mat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// 1x1 matrix, the common case for thin representations.
    pub fn scalar(x: F) -> Self {
        Mat {
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn mul(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out: Mat<F> = Mat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.get(r, c).add(&a.mul(rhs.get(k, c)));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, x: &F) -> Mat<F> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul(x)).collect(),
        }
    }

    /// Gauss-Jordan inverse; None for singular or non-square input.
    pub fn inverse(&self) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&r1, &r2| {
                    a.get(r1, col)
                        .abs_f64()
                        .total_cmp(&a.get(r2, col).abs_f64())
                })?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = a.get(col, col).inv()?;
            a.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_scaled_row(r, col, &factor);
                inv.sub_scaled_row(r, col, &factor);
            }
        }
        Some(inv)
    }

    pub fn block_diag(&self, other: &Mat<F>) -> Mat<F> {
        let mut out = Mat::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, x: &F) {
        for c in 0..self.cols {
            let v = self.get(r, c).mul(x);
            self.set(r, c, v);
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &F) {
        for c in 0..self.cols {
            let v = self.get(r, c).sub(&factor.mul(self.get(src, c)));
            self.set(r, c, v);
        }
    }

    /// Row-major flat list of `[re, im]` pairs.
    pub fn to_json(&self) -> Value {
        Value::Array(self.data.iter().map(Field::to_json).collect())
    }

    pub fn from_json(v: &Value, rows: usize, cols: usize) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json(format!("expected matrix array, got {v}")))?;
        if arr.len() != rows * cols {
            return Err(Error::Json(format!(
                "matrix entry count {} does not match shape {rows}x{cols}",
                arr.len()
            )));
        }
        let data = arr.iter().map(F::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows, cols, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, Rational, C64};

    fn qmat(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| <Rational as Field>::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = qmat(&[&[1, 2], &[3, 4]]);
        assert_eq!(Mat::identity(2).mul(&a), a);
        assert_eq!(a.mul(&Mat::identity(2)), a);
    }

    #[test]
    fn exact_inverse() {
        let a = qmat(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert_eq!(inv.mul(&a), Mat::identity(2));
        assert_eq!(*inv.get(0, 0), parse_rational("4").unwrap());
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(qmat(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(qmat(&[&[1, 2, 3]]).inverse().is_none());
        assert!(Mat::<Rational>::zero(2, 2).inverse().is_none());
    }

    #[test]
    fn zero_sized_products() {
        let a = Mat::<Rational>::zero(0, 2);
        let b = Mat::<Rational>::zero(2, 3);
        let p = a.mul(&b);
        assert_eq!((p.rows(), p.cols()), (0, 3));
        assert!(p.is_zero());
    }

    #[test]
    fn block_diag_shape() {
        let a = qmat(&[&[1]]);
        let b = qmat(&[&[2, 0], &[0, 3]]);
        let d = a.block_diag(&b);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(*d.get(0, 0), <Rational as Field>::from_int(1));
        assert_eq!(*d.get(2, 2), <Rational as Field>::from_int(3));
        assert!(d.get(0, 1).is_zero());
    }

    #[test]
    fn c64_inverse_within_tolerance() {
        let a = Mat::from_rows(vec![
            vec![C64::new(0.0, 1.0), C64::new(2.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(0.0, -1.0)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn json_roundtrip() {
        let a = qmat(&[&[1, -2], &[0, 5]]);
        let back = Mat::<Rational>::from_json(&a.to_json(), 2, 2).unwrap();
        assert_eq!(back, a);
        assert!(Mat::<Rational>::from_json(&a.to_json(), 2, 3).is_err());
    }
}

//! Dense matrices over a finite field: row reduction, rank, nullspace,
//! and inverses, with deterministic first-nonzero pivoting so reduced
//! forms are reproducible across runs.

use crate::field::{Field, FieldElement};
use crate::{Error, Result};
use serde::ser::{Serialize, SerializeSeq, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl MatrixGF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixGF {
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixGF {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<MatrixGF> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::BadInput("ragged matrix rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        e.field().to_string(),
                        field.to_string(),
                    ));
                }
                data.push(e);
            }
        }
        Ok(MatrixGF {
            field: field.clone(),
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != rhs.rows {
            return Err(Error::BadInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j);
                    out.set(i, j, &(a * b) + cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::BadInput("shape mismatch in matrix addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = &*a + b;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MatrixGF {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -&*a;
        }
        out
    }

    /// [self | rhs] side by side.
    pub fn augment(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.rows != rhs.rows {
            return Err(Error::BadInput("row count mismatch in augment".into()));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> MatrixGF {
        let mut out = Self::zeros(&self.field, row_ids.len(), col_ids.len());
        for (i, &r) in row_ids.iter().enumerate() {
            for (j, &c) in col_ids.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// columns. Pivots are chosen as the first row with a nonzero entry,
    /// scanning columns left to right.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.data.swap_chunks(pivot_row, src, self.cols);
            let inv = self.get(pivot_row, col).inv().expect("nonzero pivot");
            for j in col..self.cols {
                let v = self.get(pivot_row, j) * &inv;
                self.set(pivot_row, j, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j) - &(&factor * self.get(pivot_row, j));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce().len()
    }

    /// Basis of the right nullspace {x : self * x^T = 0}, one vector per
    /// row, in the canonical form induced by the reduced echelon form.
    pub fn nullspace(&self) -> MatrixGF {
        let mut work = self.clone();
        let pivots = work.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(&self.field, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, self.field.one());
            for (pi, &pc) in pivots.iter().enumerate() {
                let coeff = work.get(pi, fc);
                if !coeff.is_zero() {
                    basis.set(bi, pc, -coeff);
                }
            }
        }
        basis
    }

    pub fn inverse(&self) -> Result<MatrixGF> {
        if self.rows != self.cols {
            return Err(Error::BadInput("only square matrices invert".into()));
        }
        let mut work = self.augment(&Self::identity(&self.field, self.rows))?;
        let pivots = work.row_reduce();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.rows) {
            return Err(Error::NotInvertible(format!(
                "singular {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let cols: Vec<usize> = (self.rows..2 * self.rows).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(work.submatrix(&rows, &cols))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl<T> SwapChunks for Vec<T> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.split_at_mut(hi * width);
        head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
    }
}

/// Row vector times matrix, as a plain element vector.
impl Serialize for MatrixGF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

pub fn row_times_matrix(row: &[FieldElement], m: &MatrixGF) -> Result<Vec<FieldElement>> {
    if row.len() != m.nrows() {
        return Err(Error::BadInput("row length does not match matrix".into()));
    }
    let mut out = vec![m.field().zero(); m.ncols()];
    for (k, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = &*slot + &(a * m.get(k, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn mat(fieldp: u64, deg: u32, rows: &[&[u64]]) -> MatrixGF {
        let f = make_field(fieldp, deg).unwrap();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| f.element_at(v as u128).unwrap()).collect())
            .collect();
        MatrixGF::from_rows(&f, rows).unwrap()
    }

    #[test]
    fn rank_and_rref_over_f5() {
        let mut m = mat(5, 1, &[&[1, 2, 0], &[2, 0, 1], &[0, 1, 2]]);
        let pivots = m.row_reduce();
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(m, MatrixGF::identity(&make_field(5, 1).unwrap(), 3));
        // Third row is the sum of the first two.
        let singular = mat(5, 1, &[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(singular.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = mat(7, 1, &[&[1, 2, 3, 4], &[0, 1, 2, 3]]);
        let ns = m.nullspace();
        assert_eq!(ns.nrows(), 4 - m.rank());
        for i in 0..ns.nrows() {
            let prod = row_times_matrix(ns.row(i), &m.transpose()).unwrap();
            assert!(prod.iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip_over_f4() {
        let m = mat(2, 2, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 1]]);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod, MatrixGF::identity(m.field(), 3));
        let singular = mat(2, 2, &[&[2, 1, 0], &[2, 1, 0], &[0, 1, 1]]);
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn product_against_hand_computation() {
        let a = mat(5, 1, &[&[1, 2], &[3, 4]]);
        let b = mat(5, 1, &[&[0, 1], &[2, 3]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, mat(5, 1, &[&[4, 2], &[3, 0]]));
    }

    #[test]
    fn augment_and_submatrix() {
        let a = mat(3, 1, &[&[1, 2], &[0, 1]]);
        let id = MatrixGF::identity(a.field(), 2);
        let aug = a.augment(&id).unwrap();
        assert_eq!(aug.ncols(), 4);
        assert_eq!(aug.submatrix(&[0, 1], &[2, 3]), id);
        assert_eq!(aug.submatrix(&[0, 1], &[0, 1]), a);
    }

    #[test]
    fn rref_is_canonical_for_row_equivalent_inputs() {
        let mut a = mat(5, 1, &[&[1, 2, 3], &[0, 1, 4]]);
        let mut b = mat(5, 1, &[&[2, 4, 1], &[1, 3, 2]]);
        // b's rows span the same space: row2 = a1 + a2, row1 = 2*a1 + (0,0,-5)=2*a1
        let _ = (a.row_reduce(), b.row_reduce());
        assert_eq!(a, b);
    }
}

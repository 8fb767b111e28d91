//! Exact matrices stored column-wise in sparse form.
//!
//! Chain operators are very sparse (faces, degeneracies, cyclic maps hit a
//! handful of basis tensors), so columns are kept as [`SVec`] at every size.

use super::scalar::{Field, Scalar};
use super::sparse::{SAcc, SVec};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    columns: Vec<SVec>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, columns: vec![SVec::new(); cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix {
            field,
            rows: n,
            cols: n,
            columns: (0..n).map(|i| SVec::unit(i, field.one())).collect(),
        }
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<SVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Matrix { field, rows, cols: columns.len(), columns }
    }

    /// Builds from row-major dense entries.
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut cols = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            columns: cols.into_iter().map(SVec::from_terms).collect(),
        }
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|x| field.int(*x)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize) -> SVec) -> Self {
        Matrix::from_columns(field, rows, (0..cols).map(f).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j].get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = SAcc::new();
        for (j, x) in v.iter() {
            acc.add_scaled(x, &self.columns[*j]);
        }
        acc.finish()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: o.cols,
            columns: o.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.combine(&self.field.one(), o)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.combine(&self.field.int(-1), o)
    }

    /// `self + c * o`.
    pub fn combine(&self, c: &Scalar, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&o.columns)
                .map(|(a, b)| a.axpy(c, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.int(-1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.iter() {
                cols[*i].push((j, x.clone()));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            columns: cols.into_iter().map(SVec::from_terms).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut r = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            r = self.mul(&r);
        }
        r
    }

    /// Kronecker product; index of `(i, j)` is `i * o.rows + j`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut columns = Vec::with_capacity(self.cols * o.cols);
        for a in &self.columns {
            for b in &o.columns {
                let mut terms = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        terms.push((i * o.rows + j, x * y));
                    }
                }
                columns.push(SVec::from_terms(terms));
            }
        }
        Matrix { field: self.field, rows: self.rows * o.rows, cols: self.cols * o.cols, columns }
    }

    /// Block matrix `[self | o]`.
    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut columns = self.columns.clone();
        columns.extend(o.columns.iter().cloned());
        Matrix { field: self.field, rows: self.rows, cols: columns.len(), columns }
    }

    /// Block matrix `[self ; o]`.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let columns = self
            .columns
            .iter()
            .zip(&o.columns)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.shift(self.rows).into_entries());
                SVec::from_terms(e)
            })
            .collect();
        Matrix { field: self.field, rows: self.rows + o.rows, cols: self.cols, columns }
    }

    pub fn rank(&self) -> usize {
        super::subspace::Subspace::from_generators(self.field, self.rows, self.columns.iter().cloned())
            .dim()
    }

    /// First column `j` with `self.column(j) != o.column(j)`, if any.
    pub fn first_difference(&self, o: &Matrix) -> Option<usize> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in comparison");
        (0..self.cols).find(|&j| self.columns[j] != o.columns[j])
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", r.join(", "))?;
            }
        }
        Ok(())
    }
}

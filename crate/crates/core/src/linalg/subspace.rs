//! Canonical subspaces and kernels.
//!
//! A subspace is stored as its reduced column-echelon basis: every basis
//! vector has leading entry 1 at its pivot, all other basis vectors vanish
//! there, and pivots increase. Equal subspaces therefore compare equal.

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse::SVec;
use std::collections::BTreeMap;

/// Incremental fully reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<SVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| self.pivot_row.get(i).map(|&r| (r, c.clone())))
            .collect();
        let mut out = v.clone();
        for (r, c) in hits {
            out = out.axpy(&-&c, &self.rows[r]);
        }
        out
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&lead.inv().expect("nonzero leading entry"));
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(p).cloned() {
                *row = row.axpy(&-&c, &r);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut basis = self.rows;
        basis.sort_by_key(|v| v.leading().map(|(i, _)| *i));
        Subspace { field: self.field, ambient_dim: self.dim, basis }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<SVec>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| SVec::unit(i, field.one())).collect(),
        }
    }

    pub fn from_generators(
        field: Field,
        ambient_dim: usize,
        gens: impl IntoIterator<Item = SVec>,
    ) -> Self {
        let mut e = Echelon::new(field, ambient_dim);
        for g in gens {
            if e.rank() == ambient_dim {
                break;
            }
            e.insert(&g);
        }
        e.into_subspace()
    }

    pub fn column_space(m: &Matrix) -> Self {
        Subspace::from_generators(m.field(), m.rows(), m.columns().iter().cloned())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SVec] {
        &self.basis
    }

    /// Columns are the canonical basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, self.basis.clone())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.leading().expect("nonzero basis vector").0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut pivot_row = BTreeMap::new();
        for (r, p) in self.pivots().into_iter().enumerate() {
            pivot_row.insert(p, r);
        }
        Echelon { field: self.field, dim: self.ambient_dim, rows: self.basis.clone(), pivot_row }
    }

    pub fn reduce(&self, v: &SVec) -> SVec {
        self.echelon().reduce(v)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates in the canonical basis; these are the pivot entries.
    pub fn coordinates(&self, v: &SVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots()
                .into_iter()
                .map(|p| v.get(p).cloned().unwrap_or_else(|| self.field.zero()))
                .collect(),
        )
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        let e = o.echelon();
        self.basis.iter().all(|v| e.reduce(v).is_zero())
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, o.ambient_dim);
        let mut e = self.echelon();
        for v in &o.basis {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, o.ambient_dim);
        let m = self.basis_matrix().hstack(&o.basis_matrix().neg());
        let ker = kernel(&m);
        let a = self.basis_matrix();
        Subspace::from_generators(
            self.field,
            self.ambient_dim,
            ker.basis().iter().map(|x| a.apply(&x.window(0, self.dim()))),
        )
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::from_generators(self.field, m.rows(), self.basis.iter().map(|v| m.apply(v)))
    }
}

/// Kernel of `m` as a canonical subspace of the source.
pub fn kernel(m: &Matrix) -> Subspace {
    kernel_and_rank(m).0
}

fn kernel_and_rank(m: &Matrix) -> (Subspace, usize) {
    let field = m.field();
    let n = m.cols();
    // rows: (image part, combination of source columns producing it)
    let mut rows: Vec<(SVec, SVec)> = Vec::new();
    let mut pivot_row: BTreeMap<usize, usize> = BTreeMap::new();
    let mut kern: Vec<SVec> = Vec::new();
    for j in 0..n {
        let mut v = m.column(j).clone();
        let mut combo = SVec::unit(j, field.one());
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| pivot_row.get(i).map(|&r| (r, c.clone())))
            .collect();
        for (r, c) in hits {
            let nc = -&c;
            v = v.axpy(&nc, &rows[r].0);
            combo = combo.axpy(&nc, &rows[r].1);
        }
        match v.leading().cloned() {
            None => kern.push(combo),
            Some((p, lead)) => {
                let inv = lead.inv().expect("nonzero");
                let v = v.scale(&inv);
                let combo = combo.scale(&inv);
                for row in rows.iter_mut() {
                    if let Some(c) = row.0.get(p).cloned() {
                        let nc = -&c;
                        row.0 = row.0.axpy(&nc, &v);
                        row.1 = row.1.axpy(&nc, &combo);
                    }
                }
                pivot_row.insert(p, rows.len());
                rows.push((v, combo));
            }
        }
    }
    let rank = rows.len();
    (Subspace::from_generators(field, n, kern), rank)
}

/// `(rank, kernel, image)` with both subspaces canonical.
pub fn rref_kernel_image(m: &Matrix) -> (usize, Subspace, Subspace) {
    let (ker, rank) = kernel_and_rank(m);
    let img = Subspace::column_space(m);
    debug_assert_eq!(img.dim(), rank);
    (rank, ker, img)
}

/// True iff `a ∩ b = 0` and `dim a + dim b` is the ambient dimension.
pub fn split_check(a: &Subspace, b: &Subspace) -> bool {
    assert_eq!(a.ambient_dim(), b.ambient_dim());
    a.dim() + b.dim() == a.ambient_dim() && a.sum(b).dim() == a.ambient_dim()
}

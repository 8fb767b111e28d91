//! Quotient presentations `V / R` with a coordinate section.
//!
//! The quotient basis is the set of non-pivot coordinates of the canonical
//! basis of `R`, so the section sends each quotient basis vector to a single
//! ambient basis vector.

use super::matrix::Matrix;
use super::scalar::Field;
use super::sparse::{SAcc, SVec};
use super::subspace::Subspace;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WellDefinednessError {
    #[error("operator does not preserve relations: relation basis vector {index} maps outside the target relations")]
    RelationNotPreserved { index: usize, image: Vec<(usize, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    field: Field,
    ambient_dim: usize,
    relations: Subspace,
    reps: Vec<usize>,
    coord: Vec<Option<usize>>,
    pivot_row: Vec<Option<usize>>,
}

pub fn quotient_by(relations: Subspace) -> QuotientPresentation {
    let n = relations.ambient_dim();
    let mut pivot_row = vec![None; n];
    for (r, p) in relations.pivots().into_iter().enumerate() {
        pivot_row[p] = Some(r);
    }
    let mut coord = vec![None; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if pivot_row[i].is_none() {
            coord[i] = Some(reps.len());
            reps.push(i);
        }
    }
    QuotientPresentation { field: relations.field(), ambient_dim: n, relations, reps, coord, pivot_row }
}

impl QuotientPresentation {
    pub fn identity(field: Field, n: usize) -> Self {
        quotient_by(Subspace::zero(field, n))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.reps.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient index representing quotient basis vector `q`.
    pub fn rep(&self, q: usize) -> usize {
        self.reps[q]
    }

    pub fn project_index(&self, i: usize) -> SVec {
        match (self.coord[i], self.pivot_row[i]) {
            (Some(q), _) => SVec::unit(q, self.field.one()),
            (None, Some(r)) => {
                // e_i ≡ e_i - relation_r, which lives on non-pivot coordinates
                let rel = &self.relations.basis()[r];
                SVec::from_terms(
                    rel.iter()
                        .filter(|(j, _)| *j != i)
                        .map(|(j, c)| (self.coord[*j].expect("non-pivot"), -c))
                        .collect(),
                )
            }
            (None, None) => unreachable!(),
        }
    }

    pub fn project(&self, v: &SVec) -> SVec {
        let mut acc = SAcc::new();
        for (i, c) in v.iter() {
            acc.add_scaled(c, &self.project_index(*i));
        }
        acc.finish()
    }

    pub fn lift(&self, q: &SVec) -> SVec {
        SVec::from_terms(q.iter().map(|(j, c)| (self.reps[*j], c.clone())).collect())
    }

    pub fn projection(&self) -> Matrix {
        Matrix::from_fn(self.field, self.quotient_dim(), self.ambient_dim, |i| self.project_index(i))
    }

    pub fn section(&self) -> Matrix {
        Matrix::from_fn(self.field, self.ambient_dim, self.quotient_dim(), |q| {
            SVec::unit(self.reps[q], self.field.one())
        })
    }
}

/// `dst.projection ∘ op ∘ src.section`, after checking that `op` maps
/// `src.relations` into `dst.relations`.
pub fn induced_on_quotient(
    op: &Matrix,
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
) -> Result<Matrix, WellDefinednessError> {
    assert_eq!(op.cols(), src.ambient_dim());
    assert_eq!(op.rows(), dst.ambient_dim());
    induced_with(|j| op.column(j).clone(), src, dst)
}

/// As [`induced_on_quotient`], with the operator given column by column.
pub fn induced_with(
    op: impl Fn(usize) -> SVec,
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
) -> Result<Matrix, WellDefinednessError> {
    let apply = |v: &SVec| {
        let mut acc = SAcc::new();
        for (j, c) in v.iter() {
            acc.add_scaled(c, &op(*j));
        }
        acc.finish()
    };
    for (k, r) in src.relations().basis().iter().enumerate() {
        let img = dst.project(&apply(r));
        if !img.is_zero() {
            return Err(WellDefinednessError::RelationNotPreserved {
                index: k,
                image: img.iter().map(|(i, c)| (*i, c.to_string())).collect(),
            });
        }
    }
    Ok(Matrix::from_fn(dst.field(), dst.quotient_dim(), src.quotient_dim(), |q| {
        dst.project(&op(src.rep(q)))
    }))
}

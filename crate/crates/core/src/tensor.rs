//! Tensor products over the base algebra, presented as iterated quotients of
//! plain tensor spaces.
//!
//! A [`TensorQuotient`] of factors `V_0, …, V_n` is built one factor at a time:
//! `Q_{k+1} = (Q_k ⊗ V_{k+1}) / ⟨(L_a x, y) − (x, R_a y)⟩`, where `L_a` acts on
//! one factor of the prefix and `R_a` on the new factor. Every quotient basis
//! vector is represented by a single basis tuple.

use crate::linalg::{quotient_by, Field, Matrix, QuotientPresentation, SAcc, SVec, Scalar, Subspace};

pub type Tuple = Vec<usize>;

/// Ambient tensor: unnormalised list of `(basis tuple, coefficient)`.
#[derive(Clone, Debug, Default)]
pub struct Tensor {
    pub terms: Vec<(Tuple, Scalar)>,
}

impl Tensor {
    pub fn new() -> Self {
        Tensor { terms: Vec::new() }
    }

    pub fn single(t: Tuple, c: Scalar) -> Self {
        Tensor { terms: vec![(t, c)] }
    }

    pub fn push(&mut self, t: Tuple, c: Scalar) {
        if !c.is_zero() {
            self.terms.push((t, c));
        }
    }

    /// Adds `c · (parts[0] ⊗ parts[1] ⊗ …)`.
    pub fn add_outer(&mut self, c: &Scalar, parts: &[SVec]) {
        if c.is_zero() || parts.iter().any(|p| p.is_zero()) {
            return;
        }
        let mut acc: Vec<(Tuple, Scalar)> = vec![(Vec::with_capacity(parts.len()), c.clone())];
        for p in parts {
            let mut next = Vec::with_capacity(acc.len() * p.nnz());
            for (t, x) in &acc {
                for (i, y) in p.iter() {
                    let mut t2 = t.clone();
                    t2.push(*i);
                    next.push((t2, x * y));
                }
            }
            acc = next;
        }
        self.terms.extend(acc);
    }

    pub fn extend(&mut self, o: Tensor) {
        self.terms.extend(o.terms);
    }

    pub fn scale(mut self, c: &Scalar) -> Self {
        for (_, x) in self.terms.iter_mut() {
            *x = &*x * c;
        }
        self.terms.retain(|(_, x)| !x.is_zero());
        self
    }
}

/// Outer product of sparse vectors as a tensor.
pub fn outer(c: &Scalar, parts: &[SVec]) -> Tensor {
    let mut t = Tensor::new();
    t.add_outer(c, parts);
    t
}

/// Relation `(L_a x, y) ~ (x, R_a y)` between a prefix and the next factor.
#[derive(Clone, Debug)]
pub struct Junction {
    /// Prefix factor on which `L_a` acts.
    pub left_factor: usize,
    pub left_ops: Vec<Matrix>,
    pub right_ops: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct TensorQuotient {
    field: Field,
    factor_dims: Vec<usize>,
    steps: Vec<QuotientPresentation>,
    dims: Vec<usize>,
    reps: Vec<Vec<Tuple>>,
}

impl TensorQuotient {
    /// `junctions[k]` glues factor `k + 1` to the prefix `V_0 … V_k`.
    pub fn build(field: Field, factor_dims: Vec<usize>, junctions: &[Junction]) -> Self {
        assert!(!factor_dims.is_empty());
        assert_eq!(junctions.len() + 1, factor_dims.len());
        let mut tq = TensorQuotient {
            field,
            factor_dims: factor_dims.clone(),
            steps: Vec::new(),
            dims: vec![factor_dims[0]],
            reps: vec![(0..factor_dims[0]).map(|i| vec![i]).collect()],
        };
        for (k, j) in junctions.iter().enumerate() {
            let prev = tq.dims[k];
            let fd = factor_dims[k + 1];
            let one = field.one();
            let mut gens = Vec::new();
            for (la, ra) in j.left_ops.iter().zip(&j.right_ops) {
                // L_a induced on the prefix quotient
                let lcols: Vec<SVec> = tq.reps[k]
                    .iter()
                    .map(|rep| {
                        let mut t = Tensor::new();
                        let parts: Vec<SVec> = rep
                            .iter()
                            .enumerate()
                            .map(|(f, &i)| {
                                if f == j.left_factor {
                                    la.column(i).clone()
                                } else {
                                    SVec::unit(i, one.clone())
                                }
                            })
                            .collect();
                        t.add_outer(&one, &parts);
                        tq.project_level(k, &t)
                    })
                    .collect();
                for (q, lq) in lcols.iter().enumerate() {
                    for y in 0..fd {
                        let mut acc = SAcc::new();
                        for (q2, c) in lq.iter() {
                            acc.push(q2 * fd + y, c.clone());
                        }
                        for (y2, c) in ra.column(y).iter() {
                            acc.push(q * fd + y2, -c);
                        }
                        let g = acc.finish();
                        if !g.is_zero() {
                            gens.push(g);
                        }
                    }
                }
            }
            let step = quotient_by(Subspace::from_generators(field, prev * fd, gens));
            let reps: Vec<Tuple> = (0..step.quotient_dim())
                .map(|q| {
                    let a = step.rep(q);
                    let mut t = tq.reps[k][a / fd].clone();
                    t.push(a % fd);
                    t
                })
                .collect();
            tq.dims.push(step.quotient_dim());
            tq.steps.push(step);
            tq.reps.push(reps);
        }
        tq
    }

    /// No relations at all: the plain tensor product.
    pub fn free(field: Field, factor_dims: Vec<usize>) -> Self {
        let n = factor_dims.len();
        let junctions: Vec<Junction> = (1..n)
            .map(|_| Junction { left_factor: 0, left_ops: vec![], right_ops: vec![] })
            .collect();
        TensorQuotient::build(field, factor_dims, &junctions)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        *self.dims.last().expect("nonempty")
    }

    /// Representative basis tuple of quotient basis vector `q`.
    pub fn rep(&self, q: usize) -> &Tuple {
        &self.reps[self.reps.len() - 1][q]
    }

    pub fn reps(&self) -> &[Tuple] {
        &self.reps[self.reps.len() - 1]
    }

    /// Projection of a basis tuple of the first `level + 1` factors.
    fn project_tuple_level(&self, level: usize, t: &[usize]) -> SVec {
        let one = self.field.one();
        let mut v = SVec::unit(t[0], one);
        for k in 1..=level {
            let fd = self.factor_dims[k];
            let step = &self.steps[k - 1];
            let mut acc = SAcc::new();
            for (q, c) in v.iter() {
                acc.add_scaled(c, &step.project_index(q * fd + t[k]));
            }
            v = acc.finish();
            if v.is_zero() {
                break;
            }
        }
        v
    }

    fn project_level(&self, level: usize, x: &Tensor) -> SVec {
        let mut acc = SAcc::new();
        for (t, c) in &x.terms {
            acc.add_scaled(c, &self.project_tuple_level(level, t));
        }
        acc.finish()
    }

    pub fn project_tuple(&self, t: &[usize]) -> SVec {
        debug_assert_eq!(t.len(), self.arity());
        self.project_tuple_level(self.arity() - 1, t)
    }

    pub fn project(&self, x: &Tensor) -> SVec {
        self.project_level(self.arity() - 1, x)
    }

    /// Representative tensor of a quotient vector.
    pub fn lift(&self, v: &SVec) -> Tensor {
        Tensor { terms: v.iter().map(|(q, c)| (self.rep(*q).clone(), c.clone())).collect() }
    }

    /// Matrix of a map given on representative tuples.
    pub fn operator_to(&self, dst: &TensorQuotient, f: impl Fn(&[usize]) -> Tensor) -> Matrix {
        Matrix::from_fn(self.field, dst.dim(), self.dim(), |q| dst.project(&f(self.rep(q))))
    }

    /// Matrix of a map given on representative tuples into plain coordinates.
    pub fn functional(&self, rows: usize, f: impl Fn(&[usize]) -> SVec) -> Matrix {
        Matrix::from_fn(self.field, rows, self.dim(), |q| f(self.rep(q)))
    }
}

/// Unit vectors of a basis tuple, to be edited factorwise and fed to [`outer`].
pub fn units(field: Field, t: &[usize]) -> Vec<SVec> {
    t.iter().map(|&i| SVec::unit(i, field.one())).collect()
}

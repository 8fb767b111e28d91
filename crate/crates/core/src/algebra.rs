//! Finite-dimensional unital associative algebras, automorphisms, twisted
//! bimodules `A_σ`, and eigenspace gradings.

use crate::linalg::{kernel, Field, Matrix, SAcc, SVec, Scalar, Subspace};
use crate::report::{Counterexample, VerificationReport};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure data has wrong shape: {0}")]
    Shape(String),
    #[error("automorphism check failed: {0}")]
    NotAutomorphism(String),
    #[error("automorphism is not diagonalisable over the ground field")]
    NotSemisimple,
    #[error("not a group: {0}")]
    NotAGroup(String),
}

/// `e_i e_j = table[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<SVec>>,
    unit: SVec,
}

impl FinDimAlgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<SVec>>,
        unit: SVec,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(AlgebraError::Shape(format!("expected a {d}x{d} product table")));
        }
        let oob = |v: &SVec| v.max_index().is_some_and(|m| m >= d);
        if table.iter().flatten().any(oob) || oob(&unit) {
            return Err(AlgebraError::Shape("coordinate index out of range".into()));
        }
        Ok(FinDimAlgebra { field, labels, table, unit })
    }

    /// Dense structure constants `c[i][j][k]`.
    pub fn from_constants(
        field: Field,
        labels: Vec<String>,
        c: &[Vec<Vec<Scalar>>],
        unit: &[Scalar],
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if c.len() != d || c.iter().any(|r| r.len() != d || r.iter().any(|x| x.len() != d)) {
            return Err(AlgebraError::Shape(format!("expected {d}x{d}x{d} structure constants")));
        }
        if unit.len() != d {
            return Err(AlgebraError::Shape("unit has wrong length".into()));
        }
        let table = c.iter().map(|r| r.iter().map(|v| SVec::from_dense(v)).collect()).collect();
        FinDimAlgebra::new(field, labels, table, SVec::from_dense(unit))
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        FinDimAlgebra {
            field,
            labels: vec!["1".into()],
            table: vec![vec![SVec::unit(0, field.one())]],
            unit: SVec::unit(0, field.one()),
        }
    }

    /// `k[x]/(x²)` with basis `1, x`.
    pub fn dual_numbers(field: Field) -> Self {
        let one = field.one();
        FinDimAlgebra {
            field,
            labels: vec!["1".into(), "x".into()],
            table: vec![
                vec![SVec::unit(0, one.clone()), SVec::unit(1, one.clone())],
                vec![SVec::unit(1, one.clone()), SVec::new()],
            ],
            unit: SVec::unit(0, one),
        }
    }

    /// Group algebra from a multiplication table `g_i g_j = g_{table[i][j]}`.
    pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let g = Group::new(table.to_vec())?;
        let one = field.one();
        Ok(FinDimAlgebra {
            field,
            labels: (0..g.order()).map(|i| format!("g{i}")).collect(),
            table: (0..g.order())
                .map(|i| (0..g.order()).map(|j| SVec::unit(g.mul(i, j), one.clone())).collect())
                .collect(),
            unit: SVec::unit(g.identity(), one),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SVec {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let mut acc = SAcc::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_scaled(&(x * y), &self.table[*i][*j]);
            }
        }
        acc.finish()
    }

    /// Product of a sequence; the empty product is the unit.
    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a SVec>) -> SVec {
        let mut r = self.unit.clone();
        for x in xs {
            r = self.mul(&r, x);
        }
        r
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i][j].get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Matrix of `x ↦ v x`.
    pub fn left_mult(&self, v: &SVec) -> Matrix {
        Matrix::from_fn(self.field, self.dim(), self.dim(), |j| {
            self.mul(v, &SVec::unit(j, self.field.one()))
        })
    }

    /// Matrix of `x ↦ x v`.
    pub fn right_mult(&self, v: &SVec) -> Matrix {
        Matrix::from_fn(self.field, self.dim(), self.dim(), |j| {
            self.mul(&SVec::unit(j, self.field.one()), v)
        })
    }

    pub fn opposite(&self) -> FinDimAlgebra {
        let d = self.dim();
        FinDimAlgebra {
            field: self.field,
            labels: self.labels.clone(),
            table: (0..d).map(|i| (0..d).map(|j| self.table[j][i].clone()).collect()).collect(),
            unit: self.unit.clone(),
        }
    }

    /// `self ⊗ o` with basis index `i * o.dim() + j`.
    pub fn tensor(&self, o: &FinDimAlgebra) -> FinDimAlgebra {
        let (d, e) = (self.dim(), o.dim());
        let pair = |a: &SVec, b: &SVec| {
            let mut t = Vec::new();
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    t.push((i * e + j, x * y));
                }
            }
            SVec::from_terms(t)
        };
        let mut labels = Vec::with_capacity(d * e);
        for a in &self.labels {
            for b in &o.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut table = vec![vec![SVec::new(); d * e]; d * e];
        for i in 0..d {
            for j in 0..e {
                for k in 0..d {
                    for l in 0..e {
                        table[i * e + j][k * e + l] = pair(&self.table[i][k], &o.table[j][l]);
                    }
                }
            }
        }
        FinDimAlgebra { field: self.field, labels, table, unit: pair(&self.unit, &o.unit) }
    }

    pub fn basis_vec(&self, i: usize) -> SVec {
        SVec::unit(i, self.field.one())
    }

    /// Human-readable form of a vector.
    pub fn show(&self, v: &SVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("{c}·{}", self.labels[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Associativity and unit laws on all basis triples.
pub fn check_algebra(a: &FinDimAlgebra, instance: &str) -> VerificationReport {
    let mut r = VerificationReport::new();
    let d = a.dim();
    let mut assoc = Ok(());
    'outer: for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (ei, ej, ek) = (a.basis_vec(i), a.basis_vec(j), a.basis_vec(k));
                let lhs = a.mul(&a.mul(&ei, &ej), &ek);
                let rhs = a.mul(&ei, &a.mul(&ej, &ek));
                if lhs != rhs {
                    assoc = Err(Counterexample {
                        degree: None,
                        input: vec![(i, "1".into()), (j, "1".into()), (k, "1".into())],
                        note: format!(
                            "({0}{1}){2} = {3} but {0}({1}{2}) = {4}",
                            a.labels[i],
                            a.labels[j],
                            a.labels[k],
                            a.show(&lhs),
                            a.show(&rhs)
                        ),
                    });
                    break 'outer;
                }
            }
        }
    }
    r.record("algebra.associativity", "plumbing", instance, "basis triples", assoc);
    let unit = (0..d)
        .find(|&i| {
            let e = a.basis_vec(i);
            a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e
        })
        .map_or(Ok(()), |i| Err(Counterexample::basis(None, i, "unit law fails")));
    r.record("algebra.unit", "plumbing", instance, "basis", unit);
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAutomorphism {
    matrix: Matrix,
}

impl AlgebraAutomorphism {
    pub fn identity(a: &FinDimAlgebra) -> Self {
        AlgebraAutomorphism { matrix: Matrix::identity(a.field(), a.dim()) }
    }

    /// Validates multiplicativity, unitality and invertibility.
    pub fn new(a: &FinDimAlgebra, matrix: Matrix) -> Result<Self, AlgebraError> {
        let d = a.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(AlgebraError::Shape(format!("automorphism must be {d}x{d}")));
        }
        if matrix.rank() != d {
            return Err(AlgebraError::NotAutomorphism("matrix is singular".into()));
        }
        if matrix.apply(a.unit()) != *a.unit() {
            return Err(AlgebraError::NotAutomorphism("σ(1) ≠ 1".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = matrix.apply(a.mul_basis(i, j));
                let rhs = a.mul(matrix.column(i), matrix.column(j));
                if lhs != rhs {
                    return Err(AlgebraError::NotAutomorphism(format!(
                        "σ({}·{}) ≠ σ({})σ({})",
                        a.labels()[i],
                        a.labels()[j],
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(AlgebraAutomorphism { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        self.matrix.apply(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// `A_σ` with `b ▸ m ◂ a = b·m·σ(a)`; `left[b][m]`, `right[m][a]`.
#[derive(Clone, Debug)]
pub struct TwistedBimodule {
    pub algebra: FinDimAlgebra,
    pub sigma: AlgebraAutomorphism,
    pub left_action: Vec<Vec<SVec>>,
    pub right_action: Vec<Vec<SVec>>,
}

impl TwistedBimodule {
    pub fn new(a: &FinDimAlgebra, sigma: &AlgebraAutomorphism) -> Self {
        let d = a.dim();
        let left = (0..d).map(|b| (0..d).map(|m| a.mul_basis(b, m).clone()).collect()).collect();
        let right = (0..d)
            .map(|m| (0..d).map(|x| a.mul(&a.basis_vec(m), sigma.matrix().column(x))).collect())
            .collect();
        TwistedBimodule { algebra: a.clone(), sigma: sigma.clone(), left_action: left, right_action: right }
    }

    /// `b ▸ m ◂ a` on vectors.
    pub fn act(&self, b: &SVec, m: &SVec, a: &SVec) -> SVec {
        let alg = &self.algebra;
        alg.mul(&alg.mul(b, m), &self.sigma.apply(a))
    }
}

/// Decomposition `A = ⊕ A_λ` into σ-eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub eigenvalues: Vec<Scalar>,
    pub components: Vec<Subspace>,
}

impl Grading {
    pub fn component_of(&self, lambda: &Scalar) -> Option<usize> {
        self.eigenvalues.iter().position(|l| l == lambda)
    }

    /// Projection onto the component `k` along the others.
    pub fn projector(&self, k: usize) -> Matrix {
        let field = self.components[k].field();
        let n = self.components[k].ambient_dim();
        // change of basis: columns = concatenated component bases
        let mut cols = Vec::new();
        let mut owner = Vec::new();
        for (c, s) in self.components.iter().enumerate() {
            for v in s.basis() {
                cols.push(v.clone());
                owner.push(c);
            }
        }
        let p = Matrix::from_columns(field, n, cols);
        let pinv = invert(&p).expect("grading components span");
        let keep = Matrix::from_fn(field, n, n, |j| {
            if owner[j] == k {
                SVec::unit(j, field.one())
            } else {
                SVec::new()
            }
        });
        p.mul(&keep).mul(&pinv)
    }

    /// `A_λ A_μ ⊆ A_{λμ}` (zero product when λμ is not an eigenvalue).
    pub fn check_multiplicative(&self, a: &FinDimAlgebra) -> bool {
        for (x, sx) in self.eigenvalues.iter().zip(&self.components) {
            for (y, sy) in self.eigenvalues.iter().zip(&self.components) {
                let xy = x * y;
                let target = self.component_of(&xy);
                for u in sx.basis() {
                    for v in sy.basis() {
                        let p = a.mul(u, v);
                        let ok = match target {
                            Some(t) => self.components[t].contains(&p),
                            None => p.is_zero(),
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let field = m.field();
    // columns of `aug` are the rows [row_i(m) | e_i]; reduce the left block to the identity
    let aug = m.transpose().vstack(&Matrix::identity(field, n));
    let mut e = crate::linalg::Echelon::new(field, 2 * n);
    for c in aug.columns() {
        e.insert(c);
    }
    let s = e.into_subspace();
    if s.dim() != n || s.pivots().iter().enumerate().any(|(i, p)| *p != i) {
        return None;
    }
    let rows: Vec<SVec> = s.basis().iter().map(|v| v.window(n, 2 * n)).collect();
    Some(Matrix::from_columns(field, n, rows).transpose())
}

/// Eigenspace decomposition of σ with eigenvalues in the ground field.
pub fn eigenspace_grading(
    a: &FinDimAlgebra,
    s: &AlgebraAutomorphism,
) -> Result<Grading, AlgebraError> {
    let field = a.field();
    let d = a.dim();
    let m = s.matrix();
    let mut eigenvalues = Vec::new();
    let mut components = Vec::new();
    let mut total = 0;
    for lambda in candidate_eigenvalues(m) {
        let shifted = m.sub(&Matrix::identity(field, d).scale(&lambda));
        let k = kernel(&shifted);
        if k.dim() > 0 {
            total += k.dim();
            eigenvalues.push(lambda);
            components.push(k);
        }
    }
    if total != d {
        return Err(AlgebraError::NotSemisimple);
    }
    // order: eigenvalue 1 first, then by display string for determinism
    let mut idx: Vec<usize> = (0..eigenvalues.len()).collect();
    idx.sort_by_key(|&i| (!eigenvalues[i].is_one(), eigenvalues[i].to_string()));
    Ok(Grading {
        eigenvalues: idx.iter().map(|&i| eigenvalues[i].clone()).collect(),
        components: idx.iter().map(|&i| components[i].clone()).collect(),
    })
}

fn candidate_eigenvalues(m: &Matrix) -> Vec<Scalar> {
    let field = m.field();
    if let Some(all) = field.elements() {
        return all;
    }
    // rational roots of the characteristic polynomial
    let coeffs = char_poly(m);
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    // strip factors of x
    let lo = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut out = Vec::new();
    if lo > 0 {
        out.push(field.zero());
    }
    let c0 = ints[lo].abs();
    let cn = ints.last().expect("nonempty").abs();
    for p in divisors(&c0) {
        for q in divisors(&cn) {
            for sgn in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sgn) * &p, q.clone());
                let val = ints
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &r + BigRational::from_integer(c.clone()));
                let s = Scalar::Q(r);
                if val.is_zero() && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Coefficients of `det(xI − m)`, constant term first.
fn char_poly(m: &Matrix) -> Vec<BigRational> {
    let n = m.rows();
    let dense = m.to_dense();
    let q = |s: &Scalar| match s {
        Scalar::Q(r) => r.clone(),
        Scalar::Fp(..) => unreachable!("rational path only"),
    };
    // values at x = 0..=n, then Lagrange interpolation
    let xs: Vec<BigRational> = (0..=n).map(|x| BigRational::from_integer(BigInt::from(x))).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let mat: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let e = -q(&dense[i][j]);
                            if i == j {
                                e + x
                            } else {
                                e
                            }
                        })
                        .collect()
                })
                .collect();
            det(mat)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for i in 0..=n {
        // basis polynomial ∏_{j≠i} (x - x_j)/(x_i - x_j)
        let mut poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..=n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[j];
            }
            poly = next;
            denom *= &xs[i] - &xs[j];
        }
        for (k, c) in poly.iter().enumerate() {
            coeffs[k] += c * &ys[i] / &denom;
        }
    }
    coeffs
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &a[c][k] * &f;
                a[r][k] -= t;
            }
        }
    }
    d
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(AlgebraError::NotAGroup("table must be square with entries < order".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::NotAGroup(format!("({a}{b}){c} ≠ {a}({b}{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| AlgebraError::NotAGroup("no identity".into()))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| AlgebraError::NotAGroup(format!("g{g} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Group { table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        Group::new((0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect())
            .expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

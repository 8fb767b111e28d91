//! The graded spaces the calculus acts on: chains `C_n(U,M)`, tensor powers
//! `U^{⊗_{A^op} p}`, cochains `C^p(U,A)`, bar spaces `P_n`, and the hat
//! isomorphisms `M ⊗_U P_n ≅ C_n` and `Hom_U(P_p, A) ≅ C^p`.

use crate::hopf::{HopfAlgebroid, ModuleComodule};
use crate::linalg::{kernel, Field, Matrix, SAcc, SVec, Scalar, Subspace};
use crate::tensor::{outer, units, Junction, Tensor, TensorQuotient};

/// `U^{⊗_{A^op} p}` with `(u t(a), v) ~ (u, t(a) v)`; `p ≥ 1`.
pub fn u_power(h: &HopfAlgebroid, p: usize) -> TensorQuotient {
    assert!(p >= 1);
    let junctions: Vec<Junction> = (0..p - 1).map(|k| h.junction_aop(k)).collect();
    TensorQuotient::build(h.field(), vec![h.dim_u(); p], &junctions)
}

/// `C_n(U,M) = M ⊗_{A^op} U^{⊗_{A^op} n}`, tuples `(m, u¹, …, uⁿ)`.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub degree: usize,
    pub space: TensorQuotient,
}

pub fn chain_space(h: &HopfAlgebroid, m: &ModuleComodule, n: usize) -> ChainSpace {
    let mut dims = vec![m.dim()];
    dims.extend(std::iter::repeat(h.dim_u()).take(n));
    let mut junctions = Vec::with_capacity(n);
    if n > 0 {
        junctions.push(m.junction_aop(h));
    }
    for k in 1..n {
        junctions.push(h.junction_aop(k));
    }
    ChainSpace { degree: n, space: TensorQuotient::build(h.field(), dims, &junctions) }
}

/// `P_n = U^{⊗_{A^op} n+1}`, a left `U`-module by multiplication on `u⁰`.
#[derive(Clone, Debug)]
pub struct BarSpace {
    pub degree: usize,
    pub space: TensorQuotient,
    /// `action[u]`: left multiplication by `e_u`.
    pub action: Vec<Matrix>,
}

pub fn bar_space(h: &HopfAlgebroid, n: usize) -> BarSpace {
    let space = u_power(h, n + 1);
    let field = h.field();
    let action = (0..h.dim_u())
        .map(|u| {
            space.operator_to(&space, |t| {
                let mut p = units(field, t);
                p[0] = h.mul(&h.basis_u(u), &p[0]);
                outer(&field.one(), &p)
            })
        })
        .collect();
    BarSpace { degree: n, space, action }
}

/// `P_i ⊗_A P_j`, glued by `(t(a)·x, y) ~ (x, s(a)·y)` on the leading factors.
pub fn bar_tensor(h: &HopfAlgebroid, i: usize, j: usize) -> TensorQuotient {
    let mut junctions = Vec::new();
    for k in 0..i {
        junctions.push(h.junction_aop(k));
    }
    junctions.push(Junction { left_factor: 0, left_ops: h.t_left().to_vec(), right_ops: h.s_left().to_vec() });
    for k in 0..j {
        junctions.push(h.junction_aop(i + 1 + k));
    }
    TensorQuotient::build(h.field(), vec![h.dim_u(); i + j + 2], &junctions)
}

/// `M ⊗_U P_n`, tuples `(m, u⁰, …, uⁿ)` with `(m u, x) ~ (m, u x)`.
pub fn hat_chain_space(h: &HopfAlgebroid, m: &ModuleComodule, n: usize) -> TensorQuotient {
    let lefts = (0..h.dim_u()).map(|u| h.total().left_mult(&h.basis_u(u))).collect();
    let mut junctions = vec![Junction { left_factor: 0, left_ops: m.action().to_vec(), right_ops: lefts }];
    for k in 1..=n {
        junctions.push(h.junction_aop(k));
    }
    let mut dims = vec![m.dim()];
    dims.extend(std::iter::repeat(h.dim_u()).take(n + 1));
    TensorQuotient::build(h.field(), dims, &junctions)
}

/// An `A`-valued functional, as its value matrix (`dim A × dim args`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coords: SVec,
    pub table: Matrix,
}

/// Space of `A`-valued functionals on a tensor space that intertwine given
/// operator pairs: `φ ∘ L = R ∘ φ`. Coordinates are those of the reduced
/// echelon basis of the functional subspace (variable `q·d + k`).
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub degree: usize,
    field: Field,
    dim_a: usize,
    /// Argument space; `None` for `C⁰ = A`.
    args: Option<TensorQuotient>,
    functionals: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("values do not define a cochain of degree {degree}")]
pub struct NotACochain {
    pub degree: usize,
}

fn intertwiners(field: Field, d: usize, dq: usize, pairs: &[(Matrix, Matrix)]) -> Subspace {
    let nvars = d * dq;
    let mut rows = Vec::new();
    for (l, r) in pairs {
        for q in 0..dq {
            let lx = l.column(q);
            for k in 0..d {
                let mut acc = SAcc::new();
                for (q2, c) in lx.iter() {
                    acc.push(q2 * d + k, c.clone());
                }
                // (R φ(x))_k = Σ_{k'} R[k][k'] φ(x)_{k'}
                for k2 in 0..d {
                    let c = r.get(k, k2);
                    if !c.is_zero() {
                        acc.push(q * d + k2, -c);
                    }
                }
                let row = acc.finish();
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(field, nvars);
    }
    kernel(&Matrix::from_columns(field, nvars, rows).transpose())
}

impl CochainSpace {
    fn from_pairs(degree: usize, h: &HopfAlgebroid, args: TensorQuotient, pairs: &[(Matrix, Matrix)]) -> Self {
        let functionals = intertwiners(h.field(), h.dim_a(), args.dim(), pairs);
        CochainSpace { degree, field: h.field(), dim_a: h.dim_a(), args: Some(args), functionals }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        match self.args {
            None => self.dim_a,
            Some(_) => self.functionals.dim(),
        }
    }

    pub fn args(&self) -> Option<&TensorQuotient> {
        self.args.as_ref()
    }

    pub fn cochain(&self, coords: SVec) -> Cochain {
        let table = match &self.args {
            None => Matrix::from_columns(self.field, self.dim_a, vec![coords.clone()]),
            Some(q) => {
                let mut acc = SAcc::new();
                for (i, c) in coords.iter() {
                    acc.add_scaled(c, &self.functionals.basis()[*i]);
                }
                let v = acc.finish();
                let d = self.dim_a;
                Matrix::from_fn(self.field, d, q.dim(), |col| v.window(col * d, col * d + d))
            }
        };
        Cochain { degree: self.degree, coords, table }
    }

    pub fn basis(&self) -> Vec<Cochain> {
        (0..self.dim()).map(|i| self.cochain(SVec::unit(i, self.field.one()))).collect()
    }

    pub fn zero(&self) -> Cochain {
        self.cochain(SVec::new())
    }

    /// Cochain with the given values on representative tuples.
    pub fn from_values(&self, f: impl Fn(&[usize]) -> SVec) -> Result<Cochain, NotACochain> {
        match &self.args {
            None => Ok(self.cochain(f(&[]))),
            Some(q) => {
                let d = self.dim_a;
                let mut acc = SAcc::new();
                for col in 0..q.dim() {
                    acc.add(&f(q.rep(col)).shift(col * d));
                }
                self.from_functional(&acc.finish())
            }
        }
    }

    /// Coordinates of a functional given in variables `q·d + k`.
    pub fn from_functional(&self, v: &SVec) -> Result<Cochain, NotACochain> {
        let c = self.functionals.coordinates(v).ok_or(NotACochain { degree: self.degree })?;
        Ok(self.cochain(SVec::from_dense(&c)))
    }

    /// `φ(x)` for `x` a vector in the argument quotient.
    pub fn eval_vec(&self, phi: &Cochain, x: &SVec) -> SVec {
        phi.table.apply(x)
    }

    /// `φ(x)` for a representative tensor; a `C⁰` cochain returns its value.
    pub fn eval(&self, phi: &Cochain, x: &Tensor) -> SVec {
        match &self.args {
            None => phi.table.column(0).clone(),
            Some(q) => phi.table.apply(&q.project(x)),
        }
    }

    pub fn eval_parts(&self, phi: &Cochain, parts: &[SVec]) -> SVec {
        match &self.args {
            None => phi.table.column(0).clone(),
            Some(_) => self.eval(phi, &outer(&self.field.one(), parts)),
        }
    }

    pub fn eval_tuple(&self, phi: &Cochain, t: &[usize]) -> SVec {
        match &self.args {
            None => phi.table.column(0).clone(),
            Some(q) => phi.table.apply(&q.project_tuple(t)),
        }
    }

    /// Matrix of `coords ↦ functional variables`.
    pub fn embedding(&self) -> Matrix {
        match &self.args {
            None => Matrix::identity(self.field, self.dim_a),
            Some(_) => self.functionals.basis_matrix(),
        }
    }

    /// Matrix (in cochain coordinates) of a map built from basis cochains.
    pub fn operator_from(&self, rows: usize, f: impl Fn(&Cochain) -> SVec) -> Matrix {
        let basis = self.basis();
        Matrix::from_fn(self.field, rows, self.dim(), |i| f(&basis[i]))
    }
}

/// `C^p(U,A)`: functionals on `U^{⊗_{A^op} p}` with `φ(t(a)u¹, …) = φ(u¹, …)·a`.
pub fn cochain_space(h: &HopfAlgebroid, p: usize) -> CochainSpace {
    if p == 0 {
        return CochainSpace {
            degree: 0,
            field: h.field(),
            dim_a: h.dim_a(),
            args: None,
            functionals: Subspace::full(h.field(), h.dim_a()),
        };
    }
    let args = u_power(h, p);
    let field = h.field();
    let pairs: Vec<(Matrix, Matrix)> = (0..h.dim_a())
        .map(|a| {
            let ta = h.t(&h.basis_a(a));
            let l = args.operator_to(&args, |t| {
                let mut parts = units(field, t);
                parts[0] = h.mul(&ta, &parts[0]);
                outer(&field.one(), &parts)
            });
            (l, h.base().right_mult(&h.basis_a(a)))
        })
        .collect();
    CochainSpace::from_pairs(p, h, args, &pairs)
}

/// `Hom_U(P_p, A)` with `u · a = ε(u s(a))`.
pub fn hat_cochain_space(h: &HopfAlgebroid, p: usize) -> CochainSpace {
    let bar = bar_space(h, p);
    let field = h.field();
    let pairs: Vec<(Matrix, Matrix)> = (0..h.dim_u())
        .map(|u| {
            let r = Matrix::from_fn(field, h.dim_a(), h.dim_a(), |k| h.act_on_base(&h.basis_u(u), &h.basis_a(k)));
            (bar.action[u].clone(), r)
        })
        .collect();
    CochainSpace::from_pairs(p, h, bar.space, &pairs)
}

/// Forward and backward matrices of an isomorphism.
#[derive(Clone, Debug)]
pub struct IsoPair {
    pub forward: Matrix,
    pub backward: Matrix,
}

impl IsoPair {
    pub fn round_trips(&self) -> bool {
        self.forward.mul(&self.backward).is_identity() && self.backward.mul(&self.forward).is_identity()
    }
}

/// `M ⊗_U P_n → C_n`, `(m, u⁰, u¹, …) ↦ (m u⁰, u¹, …)`, with inverse
/// `(m, u¹, …) ↦ (m, 1, u¹, …)`.
pub fn hat_chain_iso(h: &HopfAlgebroid, m: &ModuleComodule, hat: &TensorQuotient, chains: &TensorQuotient) -> IsoPair {
    let field = h.field();
    let one = field.one();
    let forward = hat.operator_to(chains, |t| {
        let mut parts = units(field, &t[1..]);
        parts[0] = m.act(&SVec::unit(t[0], one.clone()), &parts[0]);
        outer(&one, &parts)
    });
    let backward = chains.operator_to(hat, |t| {
        let mut parts = units(field, t);
        parts.insert(1, h.one_u());
        outer(&one, &parts)
    });
    IsoPair { forward, backward }
}

/// `Hom_U(P_p, A) → C^p`, `ψ̂ ↦ ψ̂(1, ·)`, with inverse
/// `φ ↦ ((u⁰, …, u^p) ↦ u⁰ · φ(u¹, …, u^p))`.
pub fn hat_cochain_iso(h: &HopfAlgebroid, hat: &CochainSpace, plain: &CochainSpace) -> IsoPair {
    let field = h.field();
    let one = field.one();
    let forward = hat.operator_from(plain.dim(), |psi| {
        let c = plain
            .from_values(|t| {
                let mut parts = units(field, t);
                parts.insert(0, h.one_u());
                hat.eval_parts(psi, &parts)
            })
            .expect("ψ̂(1, ·) is A-linear");
        c.coords
    });
    let backward = plain.operator_from(hat.dim(), |phi| {
        let c = hat
            .from_values(|t| {
                let rest = units(field, &t[1..]);
                let v = plain.eval_parts(phi, &rest);
                h.act_on_base(&SVec::unit(t[0], one.clone()), &v)
            })
            .expect("u⁰ · φ(…) is U-linear");
        c.coords
    });
    IsoPair { forward, backward }
}

/// `Σ c · (value)`; convenience for assembling `SVec` sums.
pub fn sum_scaled<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a SVec)>) -> SVec {
    let mut acc = SAcc::new();
    for (c, v) in terms {
        acc.add_scaled(c, v);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraAutomorphism, FinDimAlgebra, Group};
    use crate::instances::{build_enveloping, build_group_algebra};

    fn dual() -> (HopfAlgebroid, ModuleComodule) {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        build_enveloping("dual", &a, &AlgebraAutomorphism::identity(&a))
    }

    #[test]
    fn chain_dimensions() {
        let (h, m) = dual();
        for n in 0..=5 {
            assert_eq!(chain_space(&h, &m, n).space.dim(), 1 << (n + 1));
        }
        let (h2, m2) = build_group_algebra("z2", Field::prime(2).unwrap(), Group::cyclic(2).table()).unwrap();
        assert_eq!(chain_space(&h2, &m2, 4).space.dim(), 16);
        assert_eq!(chain_space(&h2, &m2, 0).space.dim(), 1);
    }

    #[test]
    fn cochain_dimensions() {
        let (h, _) = dual();
        assert_eq!(cochain_space(&h, 0).dim(), 2);
        assert_eq!(cochain_space(&h, 1).dim(), 4);
        assert_eq!(cochain_space(&h, 2).dim(), 8);
        let (h3, _) = build_group_algebra("z3", Field::Q, Group::cyclic(3).table()).unwrap();
        assert_eq!(cochain_space(&h3, 1).dim(), 3);
    }

    #[test]
    fn hat_isos_round_trip() {
        let (h, m) = dual();
        for n in 0..=2 {
            let hat = hat_chain_space(&h, &m, n);
            let c = chain_space(&h, &m, n);
            assert!(hat_chain_iso(&h, &m, &hat, &c.space).round_trips());
        }
        for p in 0..=2 {
            assert!(hat_cochain_iso(&h, &hat_cochain_space(&h, p), &cochain_space(&h, p)).round_trips());
        }
    }
}

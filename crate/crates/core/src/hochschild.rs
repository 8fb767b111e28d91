//! Plain Hochschild operators on `A^{⊗(n+1)}` with coefficients `A_σ`,
//! written directly from the tensor formulas and never touching the
//! algebroid machinery. They serve as a second derivation of the generic
//! operators, compared through the isomorphism
//! `m ⊗ (a₁⊗b₁) ⊗ ⋯ ⊗ (aₙ⊗bₙ) ↦ bₙ⋯b₁m ⊗ a₁ ⊗ ⋯ ⊗ aₙ`.
//!
//! A plain tensor `x₀ ⊗ ⋯ ⊗ xₙ` has index `Σ xᵢ d^{n−i}`: the first factor is
//! most significant. Cochains enter as `φ̃ : A^{⊗p} → A`, a `d × d^p` matrix.

use crate::algebra::{FinDimAlgebra, Group};
use crate::calculus::SignTable;
use crate::linalg::{Field, Matrix, SAcc, SVec, Scalar};
use crate::spaces::{Cochain, CochainSpace, NotACochain};
use crate::tensor::TensorQuotient;

pub struct HochschildOracle {
    a: FinDimAlgebra,
    sigma: Matrix,
}

/// Expands `c · v₀ ⊗ ⋯ ⊗ v_k` into plain tensor coordinates.
fn expand(acc: &mut SAcc, d: usize, c: &Scalar, parts: &[SVec]) {
    fn go(acc: &mut SAcc, d: usize, c: &Scalar, parts: &[SVec], idx: usize) {
        match parts.split_first() {
            None => acc.push(idx, c.clone()),
            Some((v, rest)) => {
                for (i, x) in v.iter() {
                    go(acc, d, &(c * x), rest, idx * d + i);
                }
            }
        }
    }
    go(acc, d, c, parts, 0);
}

fn digits(mut col: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = col % d;
        col /= d;
    }
    out
}

impl HochschildOracle {
    pub fn new(a: &FinDimAlgebra, sigma: &Matrix) -> Self {
        HochschildOracle { a: a.clone(), sigma: sigma.clone() }
    }

    fn field(&self) -> Field {
        self.a.field()
    }

    fn d(&self) -> usize {
        self.a.dim()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.d().pow(n as u32 + 1)
    }

    fn e(&self, i: usize) -> SVec {
        self.a.basis_vec(i)
    }

    fn sig(&self, v: &SVec) -> SVec {
        self.sigma.apply(v)
    }

    fn one(&self) -> SVec {
        self.a.unit().clone()
    }

    /// Operator `A^{⊗(n+1)} → A^{⊗(k+1)}` given on basis tuples as a sum of
    /// signed pure tensors.
    fn op(&self, n: usize, k: usize, f: impl Fn(&[SVec]) -> Vec<(i64, Vec<SVec>)>) -> Matrix {
        let d = self.d();
        let fl = self.field();
        Matrix::from_fn(fl, self.dim(k), self.dim(n), |col| {
            let x: Vec<SVec> = digits(col, d, n + 1).into_iter().map(|i| self.e(i)).collect();
            let mut acc = SAcc::new();
            for (s, parts) in f(&x) {
                debug_assert_eq!(parts.len(), k + 1);
                expand(&mut acc, d, &fl.sign(s), &parts);
            }
            acc.finish()
        })
    }

    fn apply_tilde(&self, phi: &Matrix, args: &[SVec]) -> SVec {
        let mut acc = SAcc::new();
        expand(&mut acc, self.d(), &self.field().one(), args);
        phi.apply(&acc.finish())
    }

    /// Face `dᵢ` on `m ⊗ a₁ ⊗ ⋯ ⊗ aₙ`.
    pub fn face(&self, n: usize, i: usize) -> Matrix {
        assert!(n >= 1 && i <= n);
        self.op(n, n - 1, |x| {
            let mut y = x.to_vec();
            if i == 0 {
                let an = y.pop().expect("n ≥ 1");
                y[0] = self.a.mul(&an, &x[0]);
            } else if i == n {
                let a1 = y.remove(1);
                y[0] = self.a.mul(&x[0], &self.sig(&a1));
            } else {
                // merges a_{n−i} and a_{n−i+1}
                let j = n - i;
                let prod = self.a.mul(&x[j], &x[j + 1]);
                y[j] = prod;
                y.remove(j + 1);
            }
            vec![(0, y)]
        })
    }

    pub fn b(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::zeros(self.field(), 0, self.dim(0));
        }
        let mut m = Matrix::zeros(self.field(), self.dim(n - 1), self.dim(n));
        for i in 0..=n {
            m = m.combine(&self.field().sign(i as i64), &self.face(n, i));
        }
        m
    }

    /// `t(m ⊗ a₁ ⊗ ⋯ ⊗ aₙ) = σ(a₁) ⊗ a₂ ⊗ ⋯ ⊗ aₙ ⊗ m`; in degree 0, `t = T = σ`.
    pub fn t(&self, n: usize) -> Matrix {
        self.op(n, n, |x| {
            if n == 0 {
                return vec![(0, vec![self.sig(&x[0])])];
            }
            let mut y = vec![self.sig(&x[1])];
            y.extend(x[2..].iter().cloned());
            y.push(x[0].clone());
            vec![(0, y)]
        })
    }

    /// `T = σ ⊗ ⋯ ⊗ σ`.
    pub fn big_t(&self, n: usize) -> Matrix {
        let mut m = self.sigma.clone();
        for _ in 0..n {
            m = m.kron(&self.sigma);
        }
        m
    }

    /// `B(m ⊗ y) = Σᵢ (−1)^{in} 1 ⊗ a_{i+1} ⊗ ⋯ ⊗ aₙ ⊗ m ⊗ σ(a₁) ⊗ ⋯ ⊗ σ(aᵢ)`,
    /// valid on reduced chains.
    pub fn connes_b(&self, n: usize) -> Matrix {
        self.op(n, n + 1, |x| {
            (0..=n)
                .map(|i| {
                    let mut y = vec![self.one()];
                    y.extend(x[i + 1..].iter().cloned());
                    y.push(x[0].clone());
                    y.extend(x[1..=i].iter().map(|v| self.sig(v)));
                    ((i * n) as i64, y)
                })
                .collect()
        })
    }

    /// `ι_φ̃(m ⊗ y) = φ̃(a_{n−p+1}, …, aₙ) m ⊗ a₁ ⊗ ⋯ ⊗ a_{n−p}`.
    pub fn cap(&self, phi: &Matrix, p: usize, n: usize) -> Matrix {
        assert!(p <= n);
        self.op(n, n - p, |x| {
            let v = self.apply_tilde(phi, &x[n - p + 1..]);
            let mut y = vec![self.a.mul(&v, &x[0])];
            y.extend(x[1..=n - p].iter().cloned());
            vec![(0, y)]
        })
    }

    /// `S_φ̃ : A^{⊗(n+1)} → A^{⊗(n−p+3)}`, zero for `p > n`.
    pub fn s_op(&self, phi: &Matrix, p: usize, n: usize) -> Matrix {
        if p > n {
            return Matrix::zeros(self.field(), 0, self.dim(n));
        }
        let (ni, pi) = (n as i64, p as i64);
        self.op(n, n - p + 2, |x| {
            let mut terms = Vec::new();
            for j in 0..=n - p {
                for i in 0..=j {
                    let lo = n - p + 1 - j;
                    let start = n - p + 1 + i - j;
                    let end = n + i - j;
                    let mut y = vec![self.one()];
                    y.extend((lo..start).map(|k| self.sig(&x[k])));
                    let args: Vec<SVec> = (start..=end).map(|k| self.sig(&x[k])).collect();
                    y.push(self.apply_tilde(phi, &args));
                    y.extend((end + 1..=n).map(|k| self.sig(&x[k])));
                    y.push(self.sig(&x[0]));
                    y.extend((1..=n - p - j).map(|k| self.sig(&self.sig(&x[k]))));
                    terms.push((SignTable::eta(ni, pi, j as i64, i as i64), y));
                }
            }
            terms
        })
    }

    /// `L_φ̃ : A^{⊗(n+1)} → A^{⊗(n−p+2)}` for `p ≤ n`.
    pub fn lie(&self, phi: &Matrix, p: usize, n: usize) -> Matrix {
        assert!(p <= n);
        let (ni, pi) = (n as i64, p as i64);
        self.op(n, n - p + 1, |x| {
            let mut terms = Vec::new();
            for i in 1..=n + 1 - p {
                let mut y = vec![self.sig(&x[0])];
                y.extend((1..i).map(|k| self.sig(&x[k])));
                let args: Vec<SVec> = (i..i + p).map(|k| self.sig(&x[k])).collect();
                y.push(self.apply_tilde(phi, &args));
                y.extend((i + p..=n).map(|k| self.sig(&x[k])));
                terms.push((SignTable::theta(ni, pi, i as i64), y));
            }
            for i in 1..=p {
                let mut args: Vec<SVec> = (n - p + 1 + i..=n).map(|k| x[k].clone()).collect();
                args.push(x[0].clone());
                args.extend((1..i).map(|k| self.sig(&x[k])));
                let mut y = vec![self.sig(&self.apply_tilde(phi, &args))];
                y.extend((i..=n - p + i).map(|k| self.sig(&x[k])));
                terms.push((SignTable::xi(ni, pi, i as i64), y));
            }
            terms
        })
    }

    /// The isomorphism `C_n(A^e, A_σ) → A^{⊗(n+1)}` on the chain quotient basis.
    /// `U`-basis index `i·d + j` stands for `eᵢ ⊗ eⱼ`.
    pub fn chain_iso(&self, chains: &TensorQuotient) -> Matrix {
        let d = self.d();
        let n = chains.arity() - 1;
        let fl = self.field();
        Matrix::from_fn(fl, self.dim(n), chains.dim(), |q| {
            let t = chains.rep(q);
            let mut coeff = self.e(t[0]);
            let mut parts = vec![SVec::new()];
            for &u in &t[1..] {
                coeff = self.a.mul(&self.e(u % d), &coeff);
                parts.push(self.e(u / d));
            }
            parts[0] = coeff;
            let mut acc = SAcc::new();
            expand(&mut acc, d, &fl.one(), &parts);
            acc.finish()
        })
    }

    /// `φ̃(a₁, …, a_p) = φ((a₁⊗1), …, (a_p⊗1))`.
    pub fn tilde(&self, space: &CochainSpace, phi: &Cochain) -> Matrix {
        let d = self.d();
        let p = phi.degree;
        let fl = self.field();
        let unit = self.one();
        let s = |i: usize| SVec::from_terms(unit.iter().map(|(k, c)| (i * d + k, c.clone())).collect());
        Matrix::from_fn(fl, d, d.pow(p as u32), |col| {
            let parts: Vec<SVec> = digits(col, d, p).into_iter().map(s).collect();
            space.eval_parts(phi, &parts)
        })
    }

    /// Inverse of [`Self::tilde`]: `φ((a₁⊗b₁), …) = φ̃(a₁, …)·b_p⋯b₁`.
    pub fn untilde(&self, space: &CochainSpace, phi: &Matrix) -> Result<Cochain, NotACochain> {
        let d = self.d();
        space.from_values(|t| {
            let mut v = self.apply_tilde(phi, &t.iter().map(|u| self.e(u / d)).collect::<Vec<_>>());
            for &u in t {
                v = self.a.mul(&v, &self.e(u % d));
            }
            v
        })
    }

    /// Normalised: `φ̃` vanishes as soon as one argument is `1`.
    pub fn is_normalised(&self, phi: &Matrix, p: usize) -> bool {
        let d = self.d();
        (0..p).all(|slot| {
            (0..d.pow(p as u32 - 1)).all(|rest| {
                let mut args: Vec<SVec> = digits(rest, d, p - 1).into_iter().map(|i| self.e(i)).collect();
                args.insert(slot, self.one());
                self.apply_tilde(phi, &args).is_zero()
            })
        })
    }
}

fn homology_dims(dims: &[usize], b: impl Fn(usize) -> Matrix, top: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=top + 1).map(|n| if n == 0 { 0 } else { b(n).rank() }).collect();
    (0..=top).map(|n| dims[n] - ranks[n] - ranks[n + 1]).collect()
}

/// `dim H_n(A, A_σ)` for `n ≤ top` from the ranks of the plain Hochschild boundary.
pub fn hochschild_homology_dims(a: &FinDimAlgebra, sigma: &Matrix, top: usize) -> Vec<usize> {
    let o = HochschildOracle::new(a, sigma);
    let dims: Vec<usize> = (0..=top + 1).map(|n| o.dim(n)).collect();
    homology_dims(&dims, |n| o.b(n), top)
}

/// Boundary of the bar complex `k[Gⁿ]` with trivial coefficients:
/// `(g₂,…,gₙ) + Σ(−1)ⁱ(…,gᵢgᵢ₊₁,…) + (−1)ⁿ(g₁,…,gₙ₋₁)`.
pub fn group_bar_boundary(field: Field, g: &Group, n: usize) -> Matrix {
    let k = g.order();
    let dim = |n: usize| k.pow(n as u32);
    Matrix::from_fn(field, dim(n - 1), dim(n), |col| {
        let x = digits(col, k, n);
        let index = |y: &[usize]| y.iter().fold(0, |acc, &v| acc * k + v);
        let mut acc = SAcc::new();
        acc.push(index(&x[1..]), field.one());
        for i in 1..n {
            let mut y = x.clone();
            y[i - 1] = g.mul(x[i - 1], x[i]);
            y.remove(i);
            acc.push(index(&y), field.sign(i as i64));
        }
        acc.push(index(&x[..n - 1]), field.sign(n as i64));
        acc.finish()
    })
}

/// `dim H_n(G, k)` for `n ≤ top`.
pub fn group_homology_dims(field: Field, g: &Group, top: usize) -> Vec<usize> {
    let dims: Vec<usize> = (0..=top + 1).map(|n| g.order().pow(n as u32)).collect();
    homology_dims(&dims, |n| group_bar_boundary(field, g, n), top)
}

/// `dim H^p(G, k)` for `p ≤ top`, from the transposed bar boundary.
pub fn group_cohomology_dims(field: Field, g: &Group, top: usize) -> Vec<usize> {
    let dims: Vec<usize> = (0..=top + 1).map(|n| g.order().pow(n as u32)).collect();
    let ranks: Vec<usize> = (0..=top + 1).map(|n| if n == 0 { 0 } else { group_bar_boundary(field, g, n).transpose().rank() }).collect();
    (0..=top).map(|p| dims[p] - ranks[p] - ranks[p + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_oracles() {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        assert_eq!(hochschild_homology_dims(&a, &Matrix::identity(Field::Q, 2), 4), vec![2, 1, 1, 1, 1]);
        assert_eq!(group_homology_dims(Field::Q, &Group::cyclic(3), 4), vec![1, 0, 0, 0, 0]);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(group_cohomology_dims(f2, &Group::cyclic(2), 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn plain_relations() {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let s = Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]]);
        let o = HochschildOracle::new(&a, &s);
        for n in 1..=4 {
            if n >= 2 {
                assert!(o.b(n - 1).mul(&o.b(n)).is_zero());
            }
            assert_eq!(o.t(n).pow(n + 1), o.big_t(n));
        }
    }
}

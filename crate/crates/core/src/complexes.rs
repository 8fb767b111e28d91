//! Para-cyclic structure on `C_•(U,M)`, its reduced and cyclic quotients,
//! the cosimplicial cochain complex, and the bar resolution `P_•` as a
//! differential graded coalgebra with its contracting homotopy.

use std::sync::OnceLock;

use crate::hopf::{check_module_comodule, AydFlags, HopfAlgebroid, ModuleComodule};
use crate::linalg::{
    induced_on_quotient, kernel, quotient_by, split_check, Field, Matrix, QuotientPresentation, SAcc, SVec,
    Scalar, Subspace, WellDefinednessError,
};
use crate::report::{all_ok, matrix_eq, Counterexample};
use crate::spaces::{bar_space, bar_tensor, chain_space, cochain_space, CochainSpace};
use crate::tensor::{outer, units, Tensor, TensorQuotient};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ComplexError {
    #[error("relation {identity} violated: {witness:?}")]
    RelationViolation { identity: String, witness: Counterexample },
    #[error("coefficients are not a stable anti Yetter-Drinfel'd module")]
    NotSaYD,
    #[error(transparent)]
    WellDefinedness(#[from] WellDefinednessError),
}

/// Cartesian product of term lists, multiplying coefficients.
pub fn term_products<T: Clone>(lists: &[Vec<(T, Scalar)>], one: &Scalar) -> Vec<(Vec<T>, Scalar)> {
    let mut out: Vec<(Vec<T>, Scalar)> = vec![(Vec::new(), one.clone())];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for (xs, c) in &out {
            for (x, d) in l {
                let mut v = xs.clone();
                v.push(x.clone());
                next.push((v, c * d));
            }
        }
        out = next;
    }
    out
}

fn sign(field: Field, e: i64) -> Scalar {
    field.sign(e)
}

/// Faces, degeneracies and cyclic operator on `C_n(U,M)` for `n ≤ n_max`.
///
/// On `(m, u¹, …, uⁿ)`: `d_0` absorbs `uⁿ` via `u^{n-1} t(ε(uⁿ))`, `d_i`
/// multiplies `u^{n-i} u^{n-i+1}`, `d_n` acts `m u¹`; `s_j` inserts `1` after
/// position `n - j`; `t(m, x) = (m₀ u¹₊, u²₊, …, uⁿ₊, uⁿ₋ ⋯ u¹₋ m₋₁)`.
#[derive(Debug)]
pub struct ParaCyclicBundle {
    pub h: HopfAlgebroid,
    pub m: ModuleComodule,
    pub flags: AydFlags,
    chains: Vec<TensorQuotient>,
    faces: Vec<Vec<Matrix>>,
    degens: Vec<Vec<Matrix>>,
    cyclic: Vec<Matrix>,
    t_powers: Vec<OnceLock<Vec<Matrix>>>,
}

impl ParaCyclicBundle {
    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn n_max(&self) -> usize {
        self.chains.len() - 1
    }

    pub fn chains(&self, n: usize) -> &TensorQuotient {
        &self.chains[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.chains[n].dim()
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    /// `s_j : C_n → C_{n+1}`.
    pub fn degeneracy(&self, n: usize, j: usize) -> &Matrix {
        &self.degens[n][j]
    }

    pub fn t(&self, n: usize) -> &Matrix {
        &self.cyclic[n]
    }

    /// `t^k` on `C_n`, `0 ≤ k ≤ n + 1`; higher powers reduce through `T`.
    pub fn t_pow(&self, n: usize, k: usize) -> Matrix {
        let pows = self.t_powers[n].get_or_init(|| {
            let mut v = vec![Matrix::identity(self.field(), self.dim(n))];
            for i in 0..=n {
                v.push(self.cyclic[n].mul(&v[i]));
            }
            v
        });
        if k <= n + 1 {
            pows[k].clone()
        } else {
            pows[n + 1].pow(k / (n + 1)).mul(&pows[k % (n + 1)])
        }
    }

    /// `T = t^{n+1}`.
    pub fn big_t(&self, n: usize) -> Matrix {
        self.t_pow(n, n + 1)
    }

    pub fn id(&self, n: usize) -> Matrix {
        Matrix::identity(self.field(), self.dim(n))
    }

    /// `b = Σ (−1)^i d_i : C_n → C_{n−1}`; zero map out of `C_0`.
    pub fn b(&self, n: usize) -> Matrix {
        let f = self.field();
        if n == 0 {
            return Matrix::zeros(f, 0, self.dim(0));
        }
        let mut acc = Matrix::zeros(f, self.dim(n - 1), self.dim(n));
        for i in 0..=n {
            acc = acc.combine(&sign(f, i as i64), &self.faces[n][i]);
        }
        acc
    }

    /// `N = Σ_{i=0}^n (−1)^{in} t^i`.
    pub fn norm(&self, n: usize) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::zeros(f, self.dim(n), self.dim(n));
        for i in 0..=n {
            acc = acc.combine(&sign(f, (i * n) as i64), &self.t_pow(n, i));
        }
        acc
    }

    /// `s₋₁ = t s_n : C_n → C_{n+1}`.
    pub fn s_minus1(&self, n: usize) -> Matrix {
        self.cyclic[n + 1].mul(&self.degens[n][n])
    }

    /// Signed cyclic operator `λ = (−1)^n t` on `C_n`.
    pub fn lambda(&self, n: usize) -> Matrix {
        self.cyclic[n].scale(&sign(self.field(), n as i64))
    }

    /// `B = (id − λ) s₋₁ N : C_n → C_{n+1}`. The unsigned `(id − t)` breaks
    /// `bB + Bb = id − T` in even degrees ≥ 2; both agree on reduced chains.
    pub fn connes_b(&self, n: usize) -> Matrix {
        self.id(n + 1).sub(&self.lambda(n + 1)).mul(&self.s_minus1(n)).mul(&self.norm(n))
    }

    /// `s₋₁ N`, which agrees with `B` on the reduced complex.
    pub fn connes_b_reduced(&self, n: usize) -> Matrix {
        self.s_minus1(n).mul(&self.norm(n))
    }

    /// Degenerate subspace `Σ_j im s_j ⊆ C_n`.
    pub fn degenerate(&self, n: usize) -> Subspace {
        let f = self.field();
        if n == 0 {
            return Subspace::zero(f, self.dim(0));
        }
        let gens = (0..n).flat_map(|j| self.degens[n - 1][j].columns().to_vec());
        Subspace::from_generators(f, self.dim(n), gens)
    }

    /// `im(id − T) ⊆ C_n`.
    pub fn im_id_minus_t(&self, n: usize) -> Subspace {
        Subspace::column_space(&self.id(n).sub(&self.big_t(n)))
    }

    pub fn ker_id_minus_t(&self, n: usize) -> Subspace {
        kernel(&self.id(n).sub(&self.big_t(n)))
    }

    /// Every para-cyclic relation, grouped by family, in degrees `≤ n_max`.
    pub fn relation_checks(&self) -> Vec<(&'static str, Result<(), Counterexample>)> {
        let nm = self.n_max();
        let f = self.field();
        let mut simplicial = Ok(());
        let mut cyclic = Ok(());
        let mut central = Ok(());
        let mut b2 = Ok(());
        let fold = |acc: &mut Result<(), Counterexample>, r: Result<(), Counterexample>| {
            if acc.is_ok() {
                *acc = r;
            }
        };
        for n in 0..=nm {
            // d_i d_j = d_{j−1} d_i on C_n, i < j
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let l = self.faces[n - 1][i].mul(&self.faces[n][j]);
                        let r = self.faces[n - 1][j - 1].mul(&self.faces[n][i]);
                        fold(&mut simplicial, matrix_eq(&l, &r, n, &format!("d{i} d{j} = d{} d{i}", j - 1)));
                    }
                }
            }
            if n < nm {
                // d_i s_j on C_n → C_n
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let l = self.faces[n + 1][i].mul(&self.degens[n][j]);
                        let r = if i < j {
                            self.degens[n - 1][j - 1].mul(&self.faces[n][i])
                        } else if i == j || i == j + 1 {
                            self.id(n)
                        } else {
                            self.degens[n - 1][j].mul(&self.faces[n][i - 1])
                        };
                        fold(&mut simplicial, matrix_eq(&l, &r, n, &format!("d{i} s{j}")));
                    }
                }
                // s_i t = t s_{i−1}, s_0 t = t² s_n
                for i in 1..=n {
                    let l = self.degens[n][i].mul(&self.cyclic[n]);
                    let r = self.cyclic[n + 1].mul(&self.degens[n][i - 1]);
                    fold(&mut cyclic, matrix_eq(&l, &r, n, &format!("s{i} t = t s{}", i - 1)));
                }
                let l = self.degens[n][0].mul(&self.cyclic[n]);
                let r = self.t_pow(n + 1, 2).mul(&self.degens[n][n]);
                fold(&mut cyclic, matrix_eq(&l, &r, n, "s0 t = t² s_n"));
                for j in 0..=n {
                    let l = self.big_t(n + 1).mul(&self.degens[n][j]);
                    let r = self.degens[n][j].mul(&self.big_t(n));
                    fold(&mut central, matrix_eq(&l, &r, n, &format!("T s{j} = s{j} T")));
                }
            }
            if n + 2 <= nm {
                for j in 0..=n {
                    for i in 0..=j {
                        let l = self.degens[n + 1][i].mul(&self.degens[n][j]);
                        let r = self.degens[n + 1][j + 1].mul(&self.degens[n][i]);
                        fold(&mut simplicial, matrix_eq(&l, &r, n, &format!("s{i} s{j} = s{} s{i}", j + 1)));
                    }
                }
            }
            if n >= 1 {
                for i in 1..=n {
                    let l = self.faces[n][i].mul(&self.cyclic[n]);
                    let r = self.cyclic[n - 1].mul(&self.faces[n][i - 1]);
                    fold(&mut cyclic, matrix_eq(&l, &r, n, &format!("d{i} t = t d{}", i - 1)));
                }
                let l = self.faces[n][0].mul(&self.cyclic[n]);
                fold(&mut cyclic, matrix_eq(&l, &self.faces[n][n], n, "d0 t = d_n"));
                for i in 0..=n {
                    let l = self.big_t(n - 1).mul(&self.faces[n][i]);
                    let r = self.faces[n][i].mul(&self.big_t(n));
                    fold(&mut central, matrix_eq(&l, &r, n, &format!("T d{i} = d{i} T")));
                }
            }
            let l = self.big_t(n).mul(&self.cyclic[n]);
            let r = self.cyclic[n].mul(&self.big_t(n));
            fold(&mut central, matrix_eq(&l, &r, n, "T t = t T"));
            if n >= 2 {
                let bb = self.b(n - 1).mul(&self.b(n));
                fold(&mut b2, matrix_eq(&bb, &Matrix::zeros(f, bb.rows(), bb.cols()), n, "b² = 0"));
            }
        }
        vec![
            ("simplicial.identities", simplicial),
            ("paracyclic.relations", cyclic),
            ("paracyclic.t_central", central),
            ("chain.b_squared", b2),
        ]
    }

    /// `bB + Bb = id − T` and `B² = (id − T)(id − λ) s₋₁ s₋₁ N` on `C_n`.
    pub fn mixed_checks(&self, n: usize) -> (Result<(), Counterexample>, Result<(), Counterexample>) {
        assert!(n + 2 <= self.n_max());
        let bb_n = self.connes_b(n);
        let mut lhs = self.b(n + 1).mul(&bb_n);
        if n >= 1 {
            lhs = lhs.add(&self.connes_b(n - 1).mul(&self.b(n)));
        }
        let rhs = self.id(n).sub(&self.big_t(n));
        let mixed = matrix_eq(&lhs, &rhs, n, "bB + Bb = id − T");
        let b2 = self.connes_b(n + 1).mul(&bb_n);
        let r2 = self
            .id(n + 2)
            .sub(&self.big_t(n + 2))
            .mul(&self.id(n + 2).sub(&self.lambda(n + 2)))
            .mul(&self.s_minus1(n + 1))
            .mul(&self.s_minus1(n))
            .mul(&self.norm(n));
        (mixed, matrix_eq(&b2, &r2, n, "B² = (id−T)(id−λ)s₋₁s₋₁N"))
    }
}

fn face_tensor(h: &HopfAlgebroid, m: &ModuleComodule, n: usize, i: usize, t: &[usize]) -> Tensor {
    let f = h.field();
    let mut p = units(f, t);
    if i == 0 {
        let e = h.eps(&p[n]);
        p.pop();
        if n == 1 {
            p[0] = m.act(&p[0], &h.t(&e));
        } else {
            p[n - 1] = h.blact(&e, &p[n - 1]);
        }
    } else {
        let j = n - i;
        let merged = if j == 0 { m.act(&p[0], &p[1]) } else { h.mul(&p[j], &p[j + 1]) };
        p[j] = merged;
        p.remove(j + 1);
    }
    outer(&f.one(), &p)
}

fn degen_tensor(h: &HopfAlgebroid, n: usize, j: usize, t: &[usize]) -> Tensor {
    let f = h.field();
    let mut p = units(f, t);
    p.insert(n - j + 1, h.one_u());
    outer(&f.one(), &p)
}

fn cyclic_tensor(h: &HopfAlgebroid, m: &ModuleComodule, t: &[usize]) -> Tensor {
    let f = h.field();
    let one = f.one();
    let n = t.len() - 1;
    let mut out = Tensor::new();
    let lists: Vec<Vec<((usize, usize), Scalar)>> =
        t[1..].iter().map(|&u| h.trans_basis(u).into_iter().map(|(x, z, c)| ((x, z), c)).collect()).collect();
    for (y, w, cm) in m.coact_basis(t[0]) {
        // y = m₋₁, w = m₀
        for (xs, c) in term_products(&lists, &cm) {
            let e = |i: usize| SVec::unit(i, one.clone());
            if n == 0 {
                out.add_outer(&c, &[m.act(&e(w), &e(y))]);
                continue;
            }
            let mut parts = Vec::with_capacity(n + 1);
            parts.push(m.act(&e(w), &e(xs[0].0)));
            for x in &xs[1..] {
                parts.push(e(x.0));
            }
            let mut tail = e(y);
            for x in &xs {
                tail = h.mul(&e(x.1), &tail);
            }
            parts.push(tail);
            out.add_outer(&c, &parts);
        }
    }
    out
}

/// Builds `C_n` for `n ≤ n_max` with all structure maps and verifies every
/// para-cyclic relation.
pub fn build_paracyclic(h: &HopfAlgebroid, m: &ModuleComodule, n_max: usize) -> Result<ParaCyclicBundle, ComplexError> {
    let bundle = build_paracyclic_unchecked(h, m, n_max);
    for (identity, r) in bundle.relation_checks() {
        if let Err(witness) = r {
            return Err(ComplexError::RelationViolation { identity: identity.into(), witness });
        }
    }
    Ok(bundle)
}

/// As [`build_paracyclic`] without the relation checks.
pub fn build_paracyclic_unchecked(h: &HopfAlgebroid, m: &ModuleComodule, n_max: usize) -> ParaCyclicBundle {
    let chains: Vec<TensorQuotient> = (0..=n_max).map(|n| chain_space(h, m, n).space).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=n_max {
        faces.push(
            (0..=n).map(|i| chains[n].operator_to(&chains[n - 1], |t| face_tensor(h, m, n, i, t))).collect(),
        );
    }
    let degens = (0..n_max)
        .map(|n| (0..=n).map(|j| chains[n].operator_to(&chains[n + 1], |t| degen_tensor(h, n, j, t))).collect())
        .collect();
    let cyclic = (0..=n_max).map(|n| chains[n].operator_to(&chains[n], |t| cyclic_tensor(h, m, t))).collect();
    let (_, flags) = check_module_comodule(h, m);
    ParaCyclicBundle {
        h: h.clone(),
        m: m.clone(),
        flags,
        chains,
        faces,
        degens,
        cyclic,
        t_powers: (0..=n_max).map(|_| OnceLock::new()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    /// Modulo degenerate chains.
    Reduced,
    /// Modulo `im(id − T)`.
    Cyclic,
    /// Modulo both.
    ReducedCyclic,
}

/// A quotient of `C_•` by a subcomplex stable under all structure maps.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub kind: QuotientKind,
    pres: Vec<QuotientPresentation>,
}

impl QuotientComplex {
    pub fn presentation(&self, n: usize) -> &QuotientPresentation {
        &self.pres[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.pres[n].quotient_dim()
    }

    /// Operator `C_src → C_dst` induced on the quotients.
    pub fn induce(&self, op: &Matrix, src: usize, dst: usize) -> Result<Matrix, WellDefinednessError> {
        induced_on_quotient(op, &self.pres[src], &self.pres[dst])
    }
}

pub fn quotient_complex(bundle: &ParaCyclicBundle, kind: QuotientKind) -> QuotientComplex {
    let pres = (0..=bundle.n_max())
        .map(|n| {
            let rel = match kind {
                QuotientKind::Reduced => bundle.degenerate(n),
                QuotientKind::Cyclic => bundle.im_id_minus_t(n),
                QuotientKind::ReducedCyclic => bundle.degenerate(n).sum(&bundle.im_id_minus_t(n)),
            };
            quotient_by(rel)
        })
        .collect();
    QuotientComplex { kind, pres }
}

/// Cyclic coinvariants `C^cyc = C / im(id − T)` with the induced cyclic
/// operator, and their reduction by degenerate chains with induced faces,
/// degeneracies, `b` and `B = s₋₁N`. Neither `t` nor single faces descend to
/// the reduction: `t s₀` is not degenerate and `d_i s_i = id`.
#[derive(Clone, Debug)]
pub struct CyclicQuotientBundle {
    pub cyclic: QuotientComplex,
    /// Induced `t` on `C^cyc_n`.
    pub t: Vec<Matrix>,
    pub quotient: QuotientComplex,
    /// `degens[n][j] : C_n → C_{n+1}`, `n < n_max`.
    pub degens: Vec<Vec<Matrix>>,
    /// `b[n] : C_n → C_{n−1}` (`b[0]` is the zero map out of degree 0).
    pub b: Vec<Matrix>,
    /// `big_b[n] : C_n → C_{n+1}` for `n < n_max`.
    pub big_b: Vec<Matrix>,
}

/// Forms the cyclic coinvariants and their reduction, checking that `T`
/// preserves the degenerate subcomplex so the two quotients commute.
pub fn cyclic_coinvariants(bundle: &ParaCyclicBundle) -> Result<CyclicQuotientBundle, ComplexError> {
    let f = bundle.field();
    let nm = bundle.n_max();
    for n in 0..=nm {
        let deg = bundle.degenerate(n);
        if !deg.image_under(&bundle.big_t(n)).is_subspace_of(&deg) {
            return Err(ComplexError::RelationViolation {
                identity: "T preserves degenerate chains".into(),
                witness: Counterexample::basis(Some(n), 0, "T(degenerate) not degenerate"),
            });
        }
    }
    let cyc = quotient_complex(bundle, QuotientKind::Cyclic);
    let q = quotient_complex(bundle, QuotientKind::ReducedCyclic);
    let mut t = Vec::new();
    let mut degens = Vec::new();
    let mut b = Vec::new();
    let mut big_b = Vec::new();
    for n in 0..=nm {
        t.push(cyc.induce(bundle.t(n), n, n)?);
        b.push(if n == 0 { Matrix::zeros(f, 0, q.dim(0)) } else { q.induce(&bundle.b(n), n, n - 1)? });
        if n < nm {
            degens.push((0..=n).map(|j| q.induce(bundle.degeneracy(n, j), n, n + 1)).collect::<Result<_, _>>()?);
            big_b.push(q.induce(&bundle.connes_b_reduced(n), n, n + 1)?);
        }
    }
    Ok(CyclicQuotientBundle { cyclic: cyc, t, quotient: q, degens, b, big_b })
}

impl CyclicQuotientBundle {
    /// Induced `t^{n+1} = id` on `C^cyc`; on its reduction `b² = 0`, `B² = 0`,
    /// `bB + Bb = 0`, and induced degeneracies vanish.
    pub fn checks(&self) -> Vec<(&'static str, Result<(), Counterexample>)> {
        let nm = self.b.len() - 1;
        let zero = |m: &Matrix| Matrix::zeros(m.field(), m.rows(), m.cols());
        let mut cyc = Ok(());
        let mut bsq = Ok(());
        let mut b2 = Ok(());
        let mut mixed = Ok(());
        let mut degen = Ok(());
        for n in 0..=nm {
            if cyc.is_ok() {
                let tn = self.t[n].pow(n + 1);
                cyc = matrix_eq(&tn, &Matrix::identity(tn.field(), tn.rows()), n, "induced t^{n+1} = id");
            }
            if n >= 2 && bsq.is_ok() {
                let bb = self.b[n - 1].mul(&self.b[n]);
                bsq = matrix_eq(&bb, &zero(&bb), n, "b² = 0");
            }
            if n < nm && degen.is_ok() {
                degen = all_ok(self.degens[n].iter().map(|s| matrix_eq(s, &zero(s), n, "induced s_j = 0")));
            }
            if n + 2 <= nm && b2.is_ok() {
                let bb = self.big_b[n + 1].mul(&self.big_b[n]);
                b2 = matrix_eq(&bb, &zero(&bb), n, "B² = 0");
            }
            if n < nm && mixed.is_ok() {
                let mut l = self.b[n + 1].mul(&self.big_b[n]);
                if n >= 1 {
                    l = l.add(&self.big_b[n - 1].mul(&self.b[n]));
                }
                mixed = matrix_eq(&l, &zero(&l), n, "bB + Bb = 0");
            }
        }
        vec![
            ("cyclic.induced_t_cyclic", cyc),
            ("cyclic.b_squared", bsq),
            ("cyclic.degeneracies_vanish", degen),
            ("cyclic.B_squared", b2),
            ("cyclic.bB_plus_Bb", mixed),
        ]
    }
}

/// `C_n = ker(id − T) ⊕ im(id − T)`.
pub fn quasi_cyclic_split(bundle: &ParaCyclicBundle, n: usize) -> bool {
    split_check(&bundle.ker_id_minus_t(n), &bundle.im_id_minus_t(n))
}

fn require_sayd(bundle: &ParaCyclicBundle) -> Result<(), ComplexError> {
    if bundle.flags.is_ayd && bundle.flags.is_stable {
        Ok(())
    } else {
        Err(ComplexError::NotSaYD)
    }
}

/// Expands the translation of every `u^k` and the coproduct of `u^k₊` for
/// `k ≤ i` (1-based), calling `f(m₋₁, m₀, plus₁, plus₂, minus, c)` where
/// `plus₂[k]` is `u^k₊₍₂₎` for `k ≤ i` and `u^k₊` otherwise.
pub(crate) fn sayd_expand(
    h: &HopfAlgebroid,
    m: &ModuleComodule,
    t: &[usize],
    i: usize,
    mut f: impl FnMut(usize, usize, &[usize], &[usize], &[usize], &Scalar),
) {
    let one = h.field().one();
    let n = t.len() - 1;
    // per factor: (plus₁, plus₂, minus)
    let lists: Vec<Vec<((usize, usize, usize), Scalar)>> = (1..=n)
        .map(|k| {
            let mut l = Vec::new();
            for (x, z, c) in h.trans_basis(t[k]) {
                if k <= i {
                    for (x1, x2, d) in h.delta_basis(x) {
                        l.push(((x1, x2, z), &c * &d));
                    }
                } else {
                    l.push(((usize::MAX, x, z), c));
                }
            }
            l
        })
        .collect();
    for (y, w, cm) in m.coact_basis(t[0]) {
        for (xs, c) in term_products(&lists, &one) {
            let p1: Vec<usize> = xs.iter().map(|x| x.0).collect();
            let p2: Vec<usize> = xs.iter().map(|x| x.1).collect();
            let mi: Vec<usize> = xs.iter().map(|x| x.2).collect();
            f(y, w, &p1, &p2, &mi, &(&c * &cm));
        }
    }
}

/// Closed form of `tⁱ` for SaYD coefficients:
/// `(m₀u¹₊₍₂₎⋯u^{i−1}₊₍₂₎u^i₊, u^{i+1}₊, …, uⁿ₊, uⁿ₋⋯u¹₋m₋₁, u¹₊₍₁₎, …, u^{i−1}₊₍₁₎)`.
pub fn powers_of_t_oracle(bundle: &ParaCyclicBundle, n: usize, i: usize) -> Result<Matrix, ComplexError> {
    require_sayd(bundle)?;
    assert!(1 <= i && i <= n);
    let (h, m) = (&bundle.h, &bundle.m);
    let one = h.field().one();
    let e = |k: usize| SVec::unit(k, one.clone());
    let c = bundle.chains(n);
    Ok(c.operator_to(c, |t| {
        let mut out = Tensor::new();
        // u^i₊ is not split: expand coproducts only for k < i
        sayd_expand(h, m, t, i - 1, |y, w, p1, p2, mi, coef| {
            let mut head = e(w);
            for k in 0..i {
                head = m.act(&head, &e(p2[k]));
            }
            let mut parts = vec![head];
            parts.extend(p2[i..].iter().map(|&x| e(x)));
            let mut tail = e(y);
            for &z in mi {
                tail = h.mul(&e(z), &tail);
            }
            parts.push(tail);
            parts.extend(p1[..i - 1].iter().map(|&x| e(x)));
            out.add_outer(coef, &parts);
        });
        out
    }))
}

/// Closed form of `s₋₁N` for SaYD coefficients:
/// `Σ_i (−1)^{in} (m₀u¹₊₍₂₎⋯u^i₊₍₂₎, u^{i+1}₊, …, uⁿ₊, uⁿ₋⋯u¹₋m₋₁, u¹₊₍₁₎, …, u^i₊₍₁₎)`.
pub fn connes_b_oracle(bundle: &ParaCyclicBundle, n: usize) -> Result<Matrix, ComplexError> {
    require_sayd(bundle)?;
    let (h, m) = (&bundle.h, &bundle.m);
    let f = h.field();
    let one = f.one();
    let e = |k: usize| SVec::unit(k, one.clone());
    let src = bundle.chains(n);
    let dst = bundle.chains(n + 1);
    Ok(src.operator_to(dst, |t| {
        let mut out = Tensor::new();
        for i in 0..=n {
            let s = sign(f, (i * n) as i64);
            sayd_expand(h, m, t, i, |y, w, p1, p2, mi, coef| {
                let mut head = e(w);
                for k in 0..i {
                    head = m.act(&head, &e(p2[k]));
                }
                let mut parts = vec![head];
                parts.extend(p2[i..].iter().map(|&x| e(x)));
                let mut tail = e(y);
                for &z in mi {
                    tail = h.mul(&e(z), &tail);
                }
                parts.push(tail);
                parts.extend(p1[..i].iter().map(|&x| e(x)));
                out.add_outer(&(&s * coef), &parts);
            });
        }
        out
    }))
}

/// `δ : C^p → C^{p+1}`,
/// `δφ(u¹, …) = u¹·φ(u², …) + Σ_{i=1}^p (−1)^i φ(…, uⁱu^{i+1}, …) + (−1)^{p+1} φ(…, u^p t(ε(u^{p+1})))`.
pub fn cosimplicial_delta(h: &HopfAlgebroid, src: &CochainSpace, dst: &CochainSpace) -> Matrix {
    let f = h.field();
    let p = src.degree;
    src.operator_from(dst.dim(), |phi| {
        dst.from_values(|t| {
            let u = units(f, t);
            let mut acc = SAcc::new();
            acc.add(&h.act_on_base(&u[0], &src.eval_parts(phi, &u[1..])));
            for i in 1..=p {
                let mut parts = u.clone();
                parts[i - 1] = h.mul(&u[i - 1], &u[i]);
                parts.remove(i);
                acc.add_scaled(&sign(f, i as i64), &src.eval_parts(phi, &parts));
            }
            let e = h.eps(&u[p]);
            let last = if p == 0 {
                h.mul_a(&src.eval_parts(phi, &[]), &e)
            } else {
                let mut parts = u[..p].to_vec();
                parts[p - 1] = h.blact(&e, &parts[p - 1]);
                src.eval_parts(phi, &parts)
            };
            acc.add_scaled(&sign(f, (p + 1) as i64), &last);
            acc.finish()
        })
        .expect("δφ is a cochain")
        .coords
    })
}

/// Normalised cochains: `φ` vanishes whenever some argument is `1`.
pub fn reduced_cochains(h: &HopfAlgebroid, space: &CochainSpace) -> Subspace {
    let f = h.field();
    let p = space.degree;
    if p == 0 {
        return Subspace::full(f, space.dim());
    }
    let prev = if p >= 2 { Some(crate::spaces::u_power(h, p - 1)) } else { None };
    let reps: Vec<Vec<usize>> = match &prev {
        Some(q) => q.reps().to_vec(),
        None => vec![Vec::new()],
    };
    // rows: codegeneracy evaluations, columns: cochain basis
    let mut cols = Vec::new();
    for phi in space.basis() {
        let mut acc = SAcc::new();
        let mut row = 0usize;
        for j in 0..p {
            for r in &reps {
                let mut parts = units(f, r);
                parts.insert(j, h.one_u());
                let v = space.eval_parts(&phi, &parts);
                acc.add(&v.shift(row * h.dim_a()));
                row += 1;
            }
        }
        cols.push(acc.finish());
    }
    let rows = p * reps.len() * h.dim_a();
    kernel(&Matrix::from_columns(f, rows, cols))
}

/// Bar resolution `P_•` with `b′`, the coproduct `Δᴾ`, counit and homotopy.
#[derive(Debug)]
pub struct BarBundle {
    pub h: HopfAlgebroid,
    pub spaces: Vec<TensorQuotient>,
    /// `b′ : P_n → P_{n−1}`, `n ≥ 1`; entry 0 is the zero map.
    pub bprime: Vec<Matrix>,
    /// `tensors[i][j] = P_i ⊗_A P_j`, `i + j ≤ n_max + 1`.
    tensors: Vec<Vec<TensorQuotient>>,
}

/// Direct sum `⊕_{i+j=n} P_i ⊗_A P_j` with block offsets.
#[derive(Clone, Debug)]
pub struct TotalDegree {
    pub n: usize,
    pub offsets: Vec<usize>,
    pub dim: usize,
}

impl BarBundle {
    pub fn n_max(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn tensor(&self, i: usize, j: usize) -> &TensorQuotient {
        &self.tensors[i][j]
    }

    pub fn total(&self, n: usize) -> TotalDegree {
        let mut offsets = Vec::new();
        let mut dim = 0;
        for i in 0..=n {
            offsets.push(dim);
            dim += self.tensors[i][n - i].dim();
        }
        TotalDegree { n, offsets, dim }
    }

    fn field(&self) -> Field {
        self.h.field()
    }

    /// `Δᴾ_{n,i}(u⁰, …, uⁿ) = (u⁰₍₁₎, …, uⁱ₍₁₎) ⊗_A (u⁰₍₂₎⋯uⁱ₍₂₎, u^{i+1}, …, uⁿ)`.
    pub fn delta(&self, n: usize, i: usize) -> Matrix {
        let h = &self.h;
        let one = self.field().one();
        let e = |k: usize| SVec::unit(k, one.clone());
        self.spaces[n].operator_to(&self.tensors[i][n - i], |t| {
            let lists: Vec<Vec<((usize, usize), Scalar)>> = t[..=i]
                .iter()
                .map(|&u| h.delta_basis(u).into_iter().map(|(x, y, c)| ((x, y), c)).collect())
                .collect();
            let mut out = Tensor::new();
            for (xs, c) in term_products(&lists, &one) {
                let mut parts: Vec<SVec> = xs.iter().map(|x| e(x.0)).collect();
                let mut prod = h.one_u();
                for x in &xs {
                    prod = h.mul(&prod, &e(x.1));
                }
                parts.push(prod);
                parts.extend(t[i + 1..].iter().map(|&u| e(u)));
                out.add_outer(&c, &parts);
            }
            out
        })
    }

    /// `Δᴾ : P_n → ⊕_i P_i ⊗_A P_{n−i}`.
    pub fn delta_total(&self, n: usize) -> Matrix {
        let tot = self.total(n);
        let blocks: Vec<Matrix> = (0..=n).map(|i| self.delta(n, i)).collect();
        Matrix::from_fn(self.field(), tot.dim, self.spaces[n].dim(), |c| {
            let mut acc = SAcc::new();
            for (i, b) in blocks.iter().enumerate() {
                acc.add(&b.column(c).shift(tot.offsets[i]));
            }
            acc.finish()
        })
    }

    /// `εᴾ : P_0 → A`.
    pub fn counit(&self) -> Matrix {
        self.h.counit().clone()
    }

    /// `(id ⊗ εᴾ) : ⊕ P_i ⊗ P_{n−i} → P_n`, nonzero only on `P_n ⊗ P_0`:
    /// `x ⊗ v ↦ t(ε(v)) · x`.
    pub fn id_tensor_eps(&self, n: usize) -> Matrix {
        let h = &self.h;
        let f = self.field();
        let tot = self.total(n);
        let src = &self.tensors[n][0];
        let block = src.operator_to(&self.spaces[n], |t| {
            let mut parts = units(f, &t[..=n]);
            let e = h.eps(&SVec::unit(t[n + 1], f.one()));
            parts[0] = h.mul(&h.t(&e), &parts[0]);
            outer(&f.one(), &parts)
        });
        Matrix::from_fn(f, self.spaces[n].dim(), tot.dim, |c| {
            if c >= tot.offsets[n] {
                block.column(c - tot.offsets[n]).clone()
            } else {
                SVec::new()
            }
        })
    }

    /// `(εᴾ ⊗ id) : P_0 ⊗_A P_n → P_n`, `u ⊗ y ↦ s(ε(u)) · y`.
    pub fn eps_tensor_id(&self, n: usize) -> Matrix {
        let h = &self.h;
        let f = self.field();
        self.tensors[0][n].operator_to(&self.spaces[n], |t| {
            let mut parts = units(f, &t[1..]);
            let e = h.eps(&SVec::unit(t[0], f.one()));
            parts[0] = h.mul(&h.s(&e), &parts[0]);
            outer(&f.one(), &parts)
        })
    }

    /// `(id ⊗ εᴾ) : P_n ⊗_A P_0 → P_n` as a single block.
    pub fn id_tensor_eps_block(&self, n: usize) -> Matrix {
        let tot = self.total(n);
        let full = self.id_tensor_eps(n);
        let d = self.tensors[n][0].dim();
        Matrix::from_fn(self.field(), full.rows(), d, |c| full.column(tot.offsets[n] + c).clone())
    }

    /// `D = b′ ⊗ id + id ⊗ b′` with Koszul sign `(−1)^{|c|}` on the second term.
    pub fn total_differential(&self, n: usize) -> Matrix {
        let f = self.field();
        let src = self.total(n);
        if n == 0 {
            return Matrix::zeros(f, 0, src.dim);
        }
        let dst = self.total(n - 1);
        let mut cols = Vec::with_capacity(src.dim);
        for i in 0..=n {
            let j = n - i;
            let q = &self.tensors[i][j];
            for c in 0..q.dim() {
                let t = q.rep(c);
                let mut acc = SAcc::new();
                if i >= 1 {
                    let x = self.spaces[i].project_tuple(&t[..=i]);
                    let bx = self.bprime[i].apply(&x);
                    let target = &self.tensors[i - 1][j];
                    let mut out = Tensor::new();
                    for (k, coef) in bx.iter() {
                        let mut tup = self.spaces[i - 1].rep(*k).clone();
                        tup.extend_from_slice(&t[i + 1..]);
                        out.push(tup, coef.clone());
                    }
                    acc.add(&target.project(&out).shift(dst.offsets[i - 1]));
                }
                if j >= 1 {
                    let y = self.spaces[j].project_tuple(&t[i + 1..]);
                    let by = self.bprime[j].apply(&y);
                    let target = &self.tensors[i][j - 1];
                    let mut out = Tensor::new();
                    let s = sign(f, i as i64);
                    for (k, coef) in by.iter() {
                        let mut tup = t[..=i].to_vec();
                        tup.extend_from_slice(self.spaces[j - 1].rep(*k));
                        out.push(tup, &s * coef);
                    }
                    acc.add(&target.project(&out).shift(dst.offsets[i]));
                }
                cols.push(acc.finish());
            }
        }
        Matrix::from_columns(f, dst.dim, cols)
    }

    /// `h_n : (u⁰, …, uⁱ) ⊗ (v⁰, …, vʲ) ↦ Σ_{r=0}^i (−1)^i (u⁰₊₍₁₎, …, u^r₊₍₁₎) ⊗
    /// (u⁰₊₍₂₎⋯u^r₊₍₂₎, u^{r+1}₊, …, uⁱ₊, uⁱ₋⋯u⁰₋v⁰, v¹, …, vʲ)`.
    pub fn homotopy(&self, n: usize) -> Matrix {
        let h = &self.h;
        let f = self.field();
        let one = f.one();
        let e = |k: usize| SVec::unit(k, one.clone());
        let src = self.total(n);
        let dst = self.total(n + 1);
        let mut cols = Vec::with_capacity(src.dim);
        for i in 0..=n {
            let j = n - i;
            let q = &self.tensors[i][j];
            let s = sign(f, i as i64);
            for c in 0..q.dim() {
                let t = q.rep(c);
                let mut acc = SAcc::new();
                for r in 0..=i {
                    let target = &self.tensors[r][n + 1 - r];
                    let lists: Vec<Vec<((usize, usize, usize), Scalar)>> = (0..=i)
                        .map(|k| {
                            let mut l = Vec::new();
                            for (x, z, cx) in h.trans_basis(t[k]) {
                                if k <= r {
                                    for (x1, x2, d) in h.delta_basis(x) {
                                        l.push(((x1, x2, z), &cx * &d));
                                    }
                                } else {
                                    l.push(((usize::MAX, x, z), cx));
                                }
                            }
                            l
                        })
                        .collect();
                    let mut out = Tensor::new();
                    for (xs, coef) in term_products(&lists, &s) {
                        let mut parts: Vec<SVec> = xs[..=r].iter().map(|x| e(x.0)).collect();
                        let mut prod = h.one_u();
                        for x in &xs[..=r] {
                            prod = h.mul(&prod, &e(x.1));
                        }
                        parts.push(prod);
                        parts.extend(xs[r + 1..].iter().map(|x| e(x.1)));
                        let mut tail = e(t[i + 1]);
                        for x in &xs {
                            tail = h.mul(&e(x.2), &tail);
                        }
                        parts.push(tail);
                        parts.extend(t[i + 2..].iter().map(|&v| e(v)));
                        out.add_outer(&coef, &parts);
                    }
                    acc.add(&target.project(&out).shift(dst.offsets[r]));
                }
                cols.push(acc.finish());
            }
        }
        Matrix::from_columns(f, dst.dim, cols)
    }

    /// `b′² = 0`, counit laws, coassociativity and the Leibniz rule.
    pub fn dg_coalgebra_checks(&self) -> Vec<(&'static str, Result<(), Counterexample>)> {
        let f = self.field();
        let nm = self.n_max();
        let zero = |m: &Matrix| Matrix::zeros(f, m.rows(), m.cols());
        let mut b2 = Ok(());
        let mut counit = Ok(());
        let mut leibniz = Ok(());
        let mut coassoc = Ok(());
        for n in 0..=nm {
            if n >= 2 && b2.is_ok() {
                let m = self.bprime[n - 1].mul(&self.bprime[n]);
                b2 = matrix_eq(&m, &zero(&m), n, "b′² = 0");
            }
            if counit.is_ok() {
                let id = Matrix::identity(f, self.spaces[n].dim());
                let l = self.id_tensor_eps_block(n).mul(&self.delta(n, n));
                let r = self.eps_tensor_id(n).mul(&self.delta(n, 0));
                counit = matrix_eq(&l, &id, n, "(id ⊗ ε)Δ = id").and_then(|_| matrix_eq(&r, &id, n, "(ε ⊗ id)Δ = id"));
            }
            if n >= 1 && leibniz.is_ok() {
                let l = self.delta_total(n - 1).mul(&self.bprime[n]);
                let r = self.total_differential(n).mul(&self.delta_total(n));
                leibniz = matrix_eq(&l, &r, n, "Δ b′ = (b′ ⊗ id + id ⊗ b′) Δ");
            }
            if coassoc.is_ok() {
                coassoc = self.coassociativity(n);
            }
        }
        vec![
            ("bar.bprime_squared", b2),
            ("bar.counit", counit),
            ("bar.coassociative", coassoc),
            ("bar.leibniz", leibniz),
        ]
    }

    /// `(Δ_{i} ⊗ id) Δ_{i+j} = (id ⊗ Δ_{j}) Δ_{i}` into `P_i ⊗ P_j ⊗ P_k`.
    fn coassociativity(&self, n: usize) -> Result<(), Counterexample> {
        let h = &self.h;
        let f = self.field();
        for i in 0..=n {
            for j in 0..=n - i {
                let k = n - i - j;
                let mut junctions = Vec::new();
                for a in 0..i {
                    junctions.push(h.junction_aop(a));
                }
                let glue = |left: usize| crate::tensor::Junction {
                    left_factor: left,
                    left_ops: h.t_left().to_vec(),
                    right_ops: h.s_left().to_vec(),
                };
                junctions.push(glue(0));
                for a in 0..j {
                    junctions.push(h.junction_aop(i + 1 + a));
                }
                junctions.push(glue(i + 1));
                for a in 0..k {
                    junctions.push(h.junction_aop(i + j + 2 + a));
                }
                let triple = TensorQuotient::build(f, vec![h.dim_u(); n + 3], &junctions);
                // (Δ_{i,·} ⊗ id) after Δ_{n, i+j}
                let left_first = self.delta(n, i + j);
                let d_ij = self.delta(i + j, i);
                let left = |v: &SVec| -> SVec {
                    let mut out = Tensor::new();
                    let src = &self.tensors[i + j][k];
                    for (c, coef) in v.iter() {
                        let t = src.rep(*c);
                        let x = self.spaces[i + j].project_tuple(&t[..=i + j]);
                        for (c2, coef2) in d_ij.apply(&x).iter() {
                            let mut tup = self.tensors[i][j].rep(*c2).clone();
                            tup.extend_from_slice(&t[i + j + 1..]);
                            out.push(tup, coef * coef2);
                        }
                    }
                    triple.project(&out)
                };
                let right_first = self.delta(n, i);
                let d_jk = self.delta(j + k, j);
                let right = |v: &SVec| -> SVec {
                    let mut out = Tensor::new();
                    let src = &self.tensors[i][j + k];
                    for (c, coef) in v.iter() {
                        let t = src.rep(*c);
                        let y = self.spaces[j + k].project_tuple(&t[i + 1..]);
                        for (c2, coef2) in d_jk.apply(&y).iter() {
                            let mut tup = t[..=i].to_vec();
                            tup.extend_from_slice(self.tensors[j][k].rep(*c2));
                            out.push(tup, coef * coef2);
                        }
                    }
                    triple.project(&out)
                };
                for c in 0..self.spaces[n].dim() {
                    let l = left(left_first.column(c));
                    let r = right(right_first.column(c));
                    if l != r {
                        return Err(Counterexample::basis(Some(n), c, format!("coassociativity at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `h D + D h = id − Δᴾ (id ⊗ εᴾ)` on `⊕_{i+j=n} P_i ⊗ P_j`.
    pub fn homotopy_check(&self, n: usize) -> Result<(), Counterexample> {
        assert!(n + 1 <= self.n_max());
        let f = self.field();
        let tot = self.total(n);
        let mut lhs = self.total_differential(n + 1).mul(&self.homotopy(n));
        if n >= 1 {
            lhs = lhs.add(&self.homotopy(n - 1).mul(&self.total_differential(n)));
        }
        let rhs = Matrix::identity(f, tot.dim).sub(&self.delta_total(n).mul(&self.id_tensor_eps(n)));
        matrix_eq(&lhs, &rhs, n, "hD + Dh = id − Δ(id ⊗ ε)")
    }
}

/// `b′(u⁰, …, uⁿ) = Σ_{i<n} (−1)^i (…, uⁱu^{i+1}, …) + (−1)ⁿ (…, u^{n−1} t(ε(uⁿ)))`.
fn bprime_tensor(h: &HopfAlgebroid, t: &[usize]) -> Tensor {
    let f = h.field();
    let n = t.len() - 1;
    let u = units(f, t);
    let mut out = Tensor::new();
    for i in 0..n {
        let mut p = u.clone();
        p[i] = h.mul(&u[i], &u[i + 1]);
        p.remove(i + 1);
        out.add_outer(&sign(f, i as i64), &p);
    }
    let mut p = u[..n].to_vec();
    p[n - 1] = h.blact(&h.eps(&u[n]), &p[n - 1]);
    out.add_outer(&sign(f, n as i64), &p);
    out
}

/// Builds `P_n` for `n ≤ n_max` and the tensor spaces needed up to total
/// degree `n_max + 1`, verifying the DG-coalgebra laws.
pub fn build_bar(h: &HopfAlgebroid, n_max: usize) -> Result<BarBundle, ComplexError> {
    let bundle = build_bar_unchecked(h, n_max);
    for (identity, r) in bundle.dg_coalgebra_checks() {
        if let Err(witness) = r {
            return Err(ComplexError::RelationViolation { identity: identity.into(), witness });
        }
    }
    for n in 0..n_max {
        if let Err(witness) = bundle.homotopy_check(n) {
            return Err(ComplexError::RelationViolation { identity: "bar.homotopy".into(), witness });
        }
    }
    Ok(bundle)
}

pub fn build_bar_unchecked(h: &HopfAlgebroid, n_max: usize) -> BarBundle {
    let f = h.field();
    let spaces: Vec<TensorQuotient> = (0..=n_max).map(|n| bar_space(h, n).space).collect();
    let mut bprime = vec![Matrix::zeros(f, 0, spaces[0].dim())];
    for n in 1..=n_max {
        bprime.push(spaces[n].operator_to(&spaces[n - 1], |t| bprime_tensor(h, t)));
    }
    let tensors = (0..=n_max + 1)
        .map(|i| (0..=n_max + 1 - i).map(|j| bar_tensor(h, i, j)).collect())
        .collect();
    BarBundle { h: h.clone(), spaces, bprime, tensors }
}

/// `δ̂ ψ̂ = ψ̂ ∘ b′ : Hom_U(P_p, A) → Hom_U(P_{p+1}, A)`.
pub fn hat_delta(h: &HopfAlgebroid, src: &CochainSpace, dst: &CochainSpace) -> Matrix {
    src.operator_from(dst.dim(), |psi| {
        dst.from_values(|t| src.eval(psi, &bprime_tensor(h, t))).expect("ψ̂ ∘ b′ is U-linear").coords
    })
}

/// `id_M ⊗_U b′ : M ⊗_U P_n → M ⊗_U P_{n−1}`.
pub fn hat_b(h: &HopfAlgebroid, src: &TensorQuotient, dst: &TensorQuotient) -> Matrix {
    src.operator_to(dst, |t| {
        let inner = bprime_tensor(h, &t[1..]);
        let mut out = Tensor::new();
        for (tup, c) in inner.terms {
            let mut full = vec![t[0]];
            full.extend(tup);
            out.push(full, c);
        }
        out
    })
}

/// The cochain spaces `C^0, …, C^{p_max}` with `δ` between them.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub spaces: Vec<CochainSpace>,
    /// `delta[p] : C^p → C^{p+1}`, `p < p_max`.
    pub delta: Vec<Matrix>,
}

pub fn build_cochains(h: &HopfAlgebroid, p_max: usize) -> CochainComplex {
    let spaces: Vec<CochainSpace> = (0..=p_max).map(|p| cochain_space(h, p)).collect();
    let delta = (0..p_max).map(|p| cosimplicial_delta(h, &spaces[p], &spaces[p + 1])).collect();
    CochainComplex { spaces, delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraAutomorphism, FinDimAlgebra, Group};
    use crate::instances::{build_enveloping, build_group_algebra};
    use crate::spaces::{hat_chain_iso, hat_chain_space, hat_cochain_iso, hat_cochain_space};

    fn dual(neg: bool) -> (HopfAlgebroid, ModuleComodule) {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let s = if neg {
            AlgebraAutomorphism::new(&a, Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]])).unwrap()
        } else {
            AlgebraAutomorphism::identity(&a)
        };
        build_enveloping("dual", &a, &s)
    }

    #[test]
    fn paracyclic_relations_hold() {
        for neg in [false, true] {
            let (h, m) = dual(neg);
            let b = build_paracyclic(&h, &m, 5).unwrap();
            for n in 0..=4 {
                assert_eq!(b.big_t(n).is_identity(), !neg);
            }
            for n in 0..=3 {
                let (mixed, b2) = b.mixed_checks(n);
                mixed.unwrap();
                b2.unwrap();
            }
            let c = cyclic_coinvariants(&b).unwrap();
            for (_, r) in c.checks() {
                r.unwrap();
            }
            for n in 0..=4 {
                assert!(quasi_cyclic_split(&b, n));
            }
        }
        let (h, m) = build_group_algebra("z3", Field::Q, Group::cyclic(3).table()).unwrap();
        build_paracyclic(&h, &m, 4).unwrap();
    }

    #[test]
    fn sayd_oracles_match() {
        let (h, m) = dual(false);
        let b = build_paracyclic(&h, &m, 4).unwrap();
        let (h3, m3) = build_group_algebra("z3", Field::Q, Group::cyclic(3).table()).unwrap();
        let b3 = build_paracyclic(&h3, &m3, 4).unwrap();
        for bundle in [&b, &b3] {
            let red = quotient_complex(bundle, QuotientKind::Reduced);
            for n in 1..=3 {
                for i in 1..=n {
                    assert_eq!(powers_of_t_oracle(bundle, n, i).unwrap(), bundle.t_pow(n, i));
                }
            }
            for n in 0..=3 {
                let o = red.induce(&connes_b_oracle(bundle, n).unwrap(), n, n + 1).unwrap();
                let g = red.induce(&bundle.connes_b_reduced(n), n, n + 1).unwrap();
                let g2 = red.induce(&bundle.connes_b(n), n, n + 1).unwrap();
                assert_eq!(o, g);
                assert_eq!(g, g2);
            }
        }
        let (hn, mn) = dual(true);
        let bn = build_paracyclic(&hn, &mn, 2).unwrap();
        assert!(matches!(connes_b_oracle(&bn, 1), Err(ComplexError::NotSaYD)));
    }

    #[test]
    fn cochain_complex_and_hats() {
        let (h, m) = dual(false);
        let cc = build_cochains(&h, 3);
        for p in 0..2 {
            let dd = cc.delta[p + 1].mul(&cc.delta[p]);
            assert!(dd.is_zero());
        }
        // commutative A: δ on C⁰ vanishes
        assert!(cc.delta[0].is_zero());
        for p in 0..=2 {
            let hs = hat_cochain_space(&h, p);
            let hs1 = hat_cochain_space(&h, p + 1);
            let iso0 = hat_cochain_iso(&h, &hs, &cc.spaces[p]);
            let iso1 = hat_cochain_iso(&h, &hs1, &cc.spaces[p + 1]);
            let lhs = iso1.forward.mul(&hat_delta(&h, &hs, &hs1));
            let rhs = cc.delta[p].mul(&iso0.forward);
            assert_eq!(lhs, rhs, "δ intertwiner at p = {p}");
        }
        let b = build_paracyclic(&h, &m, 3).unwrap();
        for n in 1..=3 {
            let hat_n = hat_chain_space(&h, &m, n);
            let hat_n1 = hat_chain_space(&h, &m, n - 1);
            let i_n = hat_chain_iso(&h, &m, &hat_n, b.chains(n));
            let i_n1 = hat_chain_iso(&h, &m, &hat_n1, b.chains(n - 1));
            let lhs = i_n1.forward.mul(&hat_b(&h, &hat_n, &hat_n1));
            let rhs = b.b(n).scale(&Field::Q.sign(n as i64)).mul(&i_n.forward);
            assert_eq!(lhs, rhs, "b intertwiner at n = {n}");
        }
    }

    #[test]
    fn bar_bundle_laws() {
        let (h, _) = dual(false);
        let bar = build_bar(&h, 3).unwrap();
        assert_eq!(bar.tensor(1, 2).dim(), 8 * 8);
    }
}

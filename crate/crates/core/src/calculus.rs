//! Operator calculus: `D_φ`, cup and Gerstenhaber products, the cap product
//! `ι_φ`, the comp-module products `•ᵢ`, the Lie derivative `L_φ`, the
//! operator `S_φ`, and the subcomplex `C•_M` on which they descend to cyclic
//! coinvariants.
//!
//! Cochains are functionals on `U^{⊗_{A^op} p}`; chains are tuples
//! `(m, u¹, …, uⁿ)`. Every chain operator is an exact matrix between the
//! chain spaces of a [`ParaCyclicBundle`].

use crate::algebra::{eigenspace_grading, invert, AlgebraAutomorphism, FinDimAlgebra, Grading};
use crate::complexes::{sayd_expand, term_products, CochainComplex, ComplexError, ParaCyclicBundle, QuotientComplex};
use crate::hopf::HopfAlgebroid;
use crate::linalg::{kernel, Field, Matrix, SAcc, SVec, Scalar, Subspace, WellDefinednessError};
use crate::spaces::{Cochain, CochainSpace, NotACochain};
use crate::tensor::{outer, units, Tensor};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CalculusError {
    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: i64, hi: i64 },
    #[error("{what}: degree {degree} outside the built range 0..={max}")]
    DegreeError { what: &'static str, degree: i64, max: usize },
    #[error("coefficients are not a stable anti Yetter-Drinfel'd module")]
    NotSaYD,
    #[error("σ is not diagonalisable over the ground field")]
    NotSemisimple,
    #[error("instance is not an enveloping algebra A ⊗ A^op")]
    NotHochschild,
    #[error(transparent)]
    NotACochain(#[from] NotACochain),
    #[error(transparent)]
    WellDefinedness(#[from] WellDefinednessError),
}

impl From<ComplexError> for CalculusError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::NotSaYD => CalculusError::NotSaYD,
            ComplexError::WellDefinedness(w) => CalculusError::WellDefinedness(w),
            ComplexError::RelationViolation { .. } => CalculusError::NotSaYD,
        }
    }
}

/// Parities of every sign in the calculus. Only `(−1)^e` is ever used.
pub struct SignTable;

impl SignTable {
    /// `|n| = n − 1`.
    pub fn deg_shift(n: i64) -> i64 {
        n - 1
    }

    /// `θ(n,p,i) = |p|(n − |i|)`.
    pub fn theta(n: i64, p: i64, i: i64) -> i64 {
        Self::deg_shift(p) * (n - Self::deg_shift(i))
    }

    /// `ξ(n,p,i) = n|i| + |p|`.
    pub fn xi(n: i64, p: i64, i: i64) -> i64 {
        n * Self::deg_shift(i) + Self::deg_shift(p)
    }

    /// `η(n,p,j,i) = nj + |p|i`.
    pub fn eta(n: i64, p: i64, j: i64, i: i64) -> i64 {
        n * j + Self::deg_shift(p) * i
    }

    /// Outer sign of `φ ∘̄ ψ` and the swap sign of the bracket: `|p||q|`.
    pub fn circ_bar_outer(p: i64, q: i64) -> i64 {
        Self::deg_shift(p) * Self::deg_shift(q)
    }

    /// Sign of the `i`-th summand of `φ ∘̄ ψ`: `|q||i|`.
    pub fn circ_bar_inner(q: i64, i: i64) -> i64 {
        Self::deg_shift(q) * Self::deg_shift(i)
    }

    /// `[X, Y] = XY − (−1)^{|X||Y|} YX` for operator degrees `dx, dy`.
    pub fn commutator(dx: i64, dy: i64) -> i64 {
        dx * dy
    }

    /// `L_φ = (−1)^{|p|} ι_φ B` in the top case `p = n + 1`.
    pub fn lie_top(p: i64) -> i64 {
        Self::deg_shift(p)
    }

    /// Sign of the `(i, j)` summand of the SaYD form of `S_φ`:
    /// `n(i + |p|) + |p|(j + i + 1)`.
    pub fn s_sayd(n: i64, p: i64, i: i64, j: i64) -> i64 {
        n * (i + Self::deg_shift(p)) + Self::deg_shift(p) * (j + i + 1)
    }

    /// Sign of the mixed Leibniz rule `L_{φ⌣ψ} = L_φ ι_ψ + (−1)^p ι_φ L_ψ`.
    pub fn leibniz(p: i64) -> i64 {
        p
    }

    pub fn sign(field: Field, e: i64) -> Scalar {
        field.sign(e)
    }
}

fn sgn(f: Field, e: i64) -> Scalar {
    SignTable::sign(f, e)
}

/// `XY − (−1)^{|X||Y|} YX`.
pub fn graded_commutator(xy: &Matrix, yx: &Matrix, dx: i64, dy: i64) -> Matrix {
    xy.combine(&-sgn(xy.field(), SignTable::commutator(dx, dy)), yx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    D,
    Cup,
    Circ(usize),
    Bracket,
    Cap,
    Bullet(usize),
    DPrime,
    Lie,
    S,
}

/// An operator of the calculus with its degree bookkeeping. Chain operators
/// map `C_source → C_target`; cochain operators `ψ ↦ φ ⋆ ψ` map
/// `C^source → C^target`; `D` maps `U^{⊗p}` to `U` and carries `p → 1`.
#[derive(Clone, Debug)]
pub struct CalculusOperator {
    pub kind: OperatorKind,
    pub source: usize,
    pub target: usize,
    pub matrix: Matrix,
}

/// Calculus over a para-cyclic bundle and the cochain complex of the same
/// Hopf algebroid.
pub struct Calculus<'a> {
    pub bundle: &'a ParaCyclicBundle,
    pub cochains: &'a CochainComplex,
}

type CResult<T> = Result<T, CalculusError>;

impl<'a> Calculus<'a> {
    pub fn new(bundle: &'a ParaCyclicBundle, cochains: &'a CochainComplex) -> Self {
        Calculus { bundle, cochains }
    }

    pub fn h(&self) -> &HopfAlgebroid {
        &self.bundle.h
    }

    pub fn field(&self) -> Field {
        self.bundle.field()
    }

    pub fn p_max(&self) -> usize {
        self.cochains.spaces.len() - 1
    }

    pub fn n_max(&self) -> usize {
        self.bundle.n_max()
    }

    pub fn space(&self, p: usize) -> CResult<&CochainSpace> {
        self.cochains.spaces.get(p).ok_or(CalculusError::DegreeError {
            what: "cochain",
            degree: p as i64,
            max: self.p_max(),
        })
    }

    /// `None` for a negative degree (the zero space), error above `n_max`.
    fn chain_degree(&self, k: i64) -> CResult<Option<usize>> {
        if k < 0 {
            Ok(None)
        } else if k as usize > self.n_max() {
            Err(CalculusError::DegreeError { what: "chain", degree: k, max: self.n_max() })
        } else {
            Ok(Some(k as usize))
        }
    }

    fn chain_dim(&self, k: Option<usize>) -> usize {
        k.map(|k| self.bundle.dim(k)).unwrap_or(0)
    }

    fn check_source(&self, n: usize) -> CResult<()> {
        self.chain_degree(n as i64).map(|_| ())
    }

    fn e(&self, i: usize) -> SVec {
        SVec::unit(i, self.field().one())
    }

    fn chain_op(&self, n: usize, k: usize, f: impl Fn(&[usize]) -> Tensor) -> Matrix {
        self.bundle.chains(n).operator_to(self.bundle.chains(k), f)
    }

    // ---- cochains --------------------------------------------------------

    /// `D_φ(u¹, …, u^p) = φ(u¹₍₁₎, …, u^p₍₁₎) ▷ u¹₍₂₎ ⋯ u^p₍₂₎`; `D_a = s(a)`.
    pub fn d_phi_tuple(&self, phi: &Cochain, t: &[usize]) -> SVec {
        let h = self.h();
        let sp = &self.cochains.spaces[phi.degree];
        if phi.degree == 0 {
            return h.s(phi.table.column(0));
        }
        debug_assert_eq!(t.len(), phi.degree);
        let lists: Vec<Vec<((usize, usize), Scalar)>> =
            t.iter().map(|&u| h.delta_basis(u).into_iter().map(|(x, y, c)| ((x, y), c)).collect()).collect();
        let mut acc = SAcc::new();
        for (xs, c) in term_products(&lists, &self.field().one()) {
            let firsts: Vec<usize> = xs.iter().map(|x| x.0).collect();
            let val = sp.eval_tuple(phi, &firsts);
            if val.is_zero() {
                continue;
            }
            let mut prod = h.s(&val);
            for x in &xs {
                prod = h.mul(&prod, &self.e(x.1));
            }
            acc.add_scaled(&c, &prod);
        }
        acc.finish()
    }

    /// Matrix of `D_φ` from the argument quotient `U^{⊗p}` (or `A` for `p = 0`) to `U`.
    pub fn d_phi(&self, phi: &Cochain) -> CalculusOperator {
        let h = self.h();
        let sp = &self.cochains.spaces[phi.degree];
        let matrix = match sp.args() {
            None => Matrix::from_fn(self.field(), h.dim_u(), h.dim_a(), |a| h.s(&h.basis_a(a))),
            Some(q) => Matrix::from_fn(self.field(), h.dim_u(), q.dim(), |c| self.d_phi_tuple(phi, q.rep(c))),
        };
        CalculusOperator { kind: OperatorKind::D, source: phi.degree, target: 1, matrix }
    }

    /// The unit `1_A ∈ C⁰`.
    pub fn unit(&self) -> Cochain {
        self.cochains.spaces[0].cochain(self.h().one_a())
    }

    /// `μ(u, v) = ε(uv)`.
    pub fn mu(&self) -> CResult<Cochain> {
        let h = self.h();
        Ok(self.space(2)?.from_values(|t| h.eps(&h.mul(&self.e(t[0]), &self.e(t[1]))))?)
    }

    pub fn delta(&self, phi: &Cochain) -> CResult<Cochain> {
        let p = phi.degree;
        let m = self.cochains.delta.get(p).ok_or(CalculusError::DegreeError {
            what: "coboundary",
            degree: p as i64 + 1,
            max: self.p_max(),
        })?;
        Ok(self.cochains.spaces[p + 1].cochain(m.apply(&phi.coords)))
    }

    /// `(φ⌣ψ)(u¹, …, u^{p+q}) = φ(u¹, …, u^{p−1}, ψ(u^{p+1}, …) ▸ u^p)`;
    /// `a⌣ψ = aψ`.
    pub fn cup(&self, phi: &Cochain, psi: &Cochain) -> CResult<Cochain> {
        let h = self.h();
        let (p, q) = (phi.degree, psi.degree);
        let target = self.space(p + q)?;
        let sp = &self.cochains.spaces[p];
        let sq = &self.cochains.spaces[q];
        Ok(target.from_values(|t| {
            let b = sq.eval_tuple(psi, &t[p..]);
            if p == 0 {
                return h.mul_a(phi.table.column(0), &b);
            }
            let mut parts = units(self.field(), &t[..p]);
            parts[p - 1] = h.blact(&b, &parts[p - 1]);
            sp.eval_parts(phi, &parts)
        })?)
    }

    /// `(φ ∘ᵢ ψ)(…) = φ(u¹, …, u^{i−1}, D_ψ(uⁱ, …, u^{i+q−1}), u^{i+q}, …)`.
    pub fn circ(&self, phi: &Cochain, psi: &Cochain, i: usize) -> CResult<Cochain> {
        let (p, q) = (phi.degree, psi.degree);
        if i < 1 || i > p {
            return Err(CalculusError::IndexOutOfRange { index: i, lo: 1, hi: p as i64 });
        }
        let target = self.space(p + q - 1)?;
        let sp = &self.cochains.spaces[p];
        Ok(target.from_values(|t| {
            let mut parts = units(self.field(), &t[..i - 1]);
            parts.push(self.d_phi_tuple(psi, &t[i - 1..i - 1 + q]));
            parts.extend(units(self.field(), &t[i - 1 + q..]));
            sp.eval_parts(phi, &parts)
        })?)
    }

    /// `φ ∘̄ ψ = (−1)^{|p||q|} Σᵢ (−1)^{|q||i|} φ ∘ᵢ ψ`; `None` when `p + q = 0`.
    pub fn circ_bar(&self, phi: &Cochain, psi: &Cochain) -> CResult<Option<Cochain>> {
        let (p, q) = (phi.degree as i64, psi.degree as i64);
        if p + q == 0 {
            return Ok(None);
        }
        let f = self.field();
        let target = self.space((p + q - 1) as usize)?;
        let outer_sign = sgn(f, SignTable::circ_bar_outer(p, q));
        let mut acc = SAcc::new();
        for i in 1..=phi.degree {
            let s = &outer_sign * &sgn(f, SignTable::circ_bar_inner(q, i as i64));
            acc.add_scaled(&s, &self.circ(phi, psi, i)?.coords);
        }
        Ok(Some(target.cochain(acc.finish())))
    }

    /// `{φ, ψ} = φ ∘̄ ψ − (−1)^{|p||q|} ψ ∘̄ φ`; `None` when `p + q = 0`.
    pub fn bracket(&self, phi: &Cochain, psi: &Cochain) -> CResult<Option<Cochain>> {
        let (p, q) = (phi.degree as i64, psi.degree as i64);
        let (Some(a), Some(b)) = (self.circ_bar(phi, psi)?, self.circ_bar(psi, phi)?) else {
            return Ok(None);
        };
        let s = -sgn(self.field(), SignTable::circ_bar_outer(p, q));
        Ok(Some(self.cochains.spaces[a.degree].cochain(a.coords.axpy(&s, &b.coords))))
    }

    /// `ψ ↦ φ ⋆ ψ` as a matrix `C^q → C^{deg}` for a binary cochain operation.
    fn left_matrix(
        &self,
        kind: OperatorKind,
        q: usize,
        target: usize,
        op: impl Fn(&Cochain) -> CResult<Option<Cochain>>,
    ) -> CResult<CalculusOperator> {
        let src = self.space(q)?;
        let rows = self.space(target)?.dim();
        let mut cols = Vec::with_capacity(src.dim());
        for psi in src.basis() {
            cols.push(op(&psi)?.map(|c| c.coords).unwrap_or_default());
        }
        Ok(CalculusOperator { kind, source: q, target, matrix: Matrix::from_columns(self.field(), rows, cols) })
    }

    pub fn cup_matrix(&self, phi: &Cochain, q: usize) -> CResult<CalculusOperator> {
        self.left_matrix(OperatorKind::Cup, q, phi.degree + q, |psi| self.cup(phi, psi).map(Some))
    }

    pub fn circ_matrix(&self, phi: &Cochain, q: usize, i: usize) -> CResult<CalculusOperator> {
        let target = (phi.degree + q).checked_sub(1).ok_or(CalculusError::IndexOutOfRange { index: i, lo: 1, hi: 0 })?;
        self.left_matrix(OperatorKind::Circ(i), q, target, |psi| self.circ(phi, psi, i).map(Some))
    }

    /// `ψ ↦ {φ, ψ}`; requires `p + q ≥ 1`.
    pub fn bracket_matrix(&self, phi: &Cochain, q: usize) -> CResult<CalculusOperator> {
        let target = (phi.degree + q).checked_sub(1).ok_or(CalculusError::DegreeError {
            what: "bracket",
            degree: -1,
            max: self.p_max(),
        })?;
        self.left_matrix(OperatorKind::Bracket, q, target, |psi| self.bracket(phi, psi))
    }

    // ---- chain operators -------------------------------------------------

    /// `ι_φ(m, u¹, …, uⁿ) = (m, u¹, …, u^{n−p−1}, φ(u^{n−p+1}, …, uⁿ) ▸ u^{n−p})`,
    /// with `m · t(φ(…))` when `p = n`.
    pub fn cap(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        let p = phi.degree;
        self.check_source(n)?;
        if p > n {
            return Err(CalculusError::DegreeError { what: "cap target", degree: n as i64 - p as i64, max: self.n_max() });
        }
        let h = self.h();
        let m = &self.bundle.m;
        let sp = &self.cochains.spaces[p];
        let k = n - p;
        Ok(self.chain_op(n, k, |t| {
            let val = sp.eval_tuple(phi, &t[k + 1..]);
            let mut parts = units(self.field(), &t[..=k]);
            parts[k] = if k == 0 { m.act(&parts[0], &h.t(&val)) } else { h.blact(&val, &parts[k]) };
            outer(&self.field().one(), &parts)
        }))
    }

    /// `φ •ᵢ (m, u¹, …, uⁿ)` replaces `uⁱ, …, u^{i+p−1}` by `D_φ(uⁱ, …)`;
    /// for `p = 0` inserts `s(a)` before `uⁱ`. `1 ≤ i ≤ n − |p|`.
    pub fn bullet(&self, phi: &Cochain, n: usize, i: usize) -> CResult<Matrix> {
        let p = phi.degree;
        self.check_source(n)?;
        let hi = n as i64 - SignTable::deg_shift(p as i64);
        if i < 1 || i as i64 > hi {
            return Err(CalculusError::IndexOutOfRange { index: i, lo: 1, hi });
        }
        let k = self.chain_degree(hi)?.expect("hi ≥ 1");
        Ok(self.chain_op(n, k, |t| {
            let mut parts = units(self.field(), &t[..i]);
            parts.push(self.d_phi_tuple(phi, &t[i..i + p]));
            parts.extend(units(self.field(), &t[i + p..]));
            outer(&self.field().one(), &parts)
        }))
    }

    /// `D′_φ = •_{n−|p|}`, defined for `p ≤ n`.
    pub fn d_prime(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        let i = n as i64 - SignTable::deg_shift(phi.degree as i64);
        if i < 1 {
            return Err(CalculusError::IndexOutOfRange { index: 0, lo: 1, hi: i });
        }
        self.bullet(phi, n, i as usize)
    }

    /// `L_φ : C_n → C_{n−|p|}`:
    /// `Σ_{i=1}^{n−|p|} (−1)^{θ} t^{n−|p|−i} D′ t^{i+p} + Σ_{i=1}^{p} (−1)^{ξ} t^{n−|p|} D′ tⁱ`
    /// for `p ≤ n`, `(−1)^{|p|} ι_φ B` for `p = n + 1`, and zero above.
    pub fn lie(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        let f = self.field();
        let p = phi.degree;
        self.check_source(n)?;
        let b = self.bundle;
        if p > n + 1 {
            return Ok(Matrix::zeros(f, 0, b.dim(n)));
        }
        if p == n + 1 {
            self.chain_degree(n as i64 + 1)?;
            let m = self.cap(phi, n + 1)?.mul(&b.connes_b_reduced(n));
            return Ok(m.scale(&sgn(f, SignTable::lie_top(p as i64))));
        }
        let k = n + 1 - p;
        self.chain_degree(k as i64)?;
        let dp = self.d_prime(phi, n)?;
        let (ni, pi) = (n as i64, p as i64);
        let mut acc = Matrix::zeros(f, b.dim(k), b.dim(n));
        for i in 1..=k {
            let term = b.t_pow(k, k - i).mul(&dp).mul(&b.t_pow(n, i + p));
            acc = acc.combine(&sgn(f, SignTable::theta(ni, pi, i as i64)), &term);
        }
        let tk = b.t_pow(k, k);
        for i in 1..=p {
            let term = tk.mul(&dp).mul(&b.t_pow(n, i));
            acc = acc.combine(&sgn(f, SignTable::xi(ni, pi, i as i64)), &term);
        }
        Ok(acc)
    }

    /// `S_φ : C_n → C_{n−p+2}`,
    /// `Σ_{j=0}^{n−p} Σ_{i=0}^{j} (−1)^{η(n,p,j,i)} s₋₁ t^{n−p−i} D′ t^{n+i−j+1}`;
    /// zero for `p > n`.
    pub fn s_op(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        let f = self.field();
        let p = phi.degree;
        self.check_source(n)?;
        let b = self.bundle;
        if p > n {
            let k = self.chain_degree(n as i64 + 2 - p as i64)?;
            return Ok(Matrix::zeros(f, self.chain_dim(k), b.dim(n)));
        }
        let k = n + 2 - p;
        self.chain_degree(k as i64)?;
        let dp = self.d_prime(phi, n)?;
        let sm = b.s_minus1(k - 1);
        let mut acc = Matrix::zeros(f, b.dim(k), b.dim(n));
        for j in 0..=n - p {
            for i in 0..=j {
                let term = sm.mul(&b.t_pow(k - 1, n - p - i)).mul(&dp).mul(&b.t_pow(n, n + i - j + 1));
                acc = acc.combine(&sgn(f, SignTable::eta(n as i64, p as i64, j as i64, i as i64)), &term);
            }
        }
        Ok(acc)
    }

    /// Dispatch for chain operators with degree bookkeeping.
    pub fn operator(&self, kind: OperatorKind, phi: &Cochain, n: usize) -> CResult<CalculusOperator> {
        let p = phi.degree;
        let (matrix, target) = match kind {
            OperatorKind::Cap => (self.cap(phi, n)?, n - p),
            OperatorKind::Bullet(i) => (self.bullet(phi, n, i)?, n + 1 - p),
            OperatorKind::DPrime => (self.d_prime(phi, n)?, n + 1 - p),
            OperatorKind::Lie => {
                let m = self.lie(phi, n)?;
                (m, (n + 1).saturating_sub(p))
            }
            OperatorKind::S => (self.s_op(phi, n)?, (n + 2).saturating_sub(p)),
            OperatorKind::D => return Ok(self.d_phi(phi)),
            OperatorKind::Cup | OperatorKind::Circ(_) | OperatorKind::Bracket => {
                return Err(CalculusError::DegreeError { what: "not a chain operator", degree: n as i64, max: self.n_max() })
            }
        };
        Ok(CalculusOperator { kind, source: n, target, matrix })
    }

    // ---- closed forms ----------------------------------------------------

    fn require_sayd(&self) -> CResult<()> {
        if self.bundle.flags.is_ayd && self.bundle.flags.is_stable {
            Ok(())
        } else {
            Err(CalculusError::NotSaYD)
        }
    }

    /// `uⁿ₋ ⋯ u¹₋ m₋₁`.
    fn minus_product(&self, y: usize, mi: &[usize]) -> SVec {
        let h = self.h();
        let mut tail = self.e(y);
        for &z in mi {
            tail = h.mul(&self.e(z), &tail);
        }
        tail
    }

    /// `m₀ u¹₊₍₂₎ ⋯ uⁱ₊₍₂₎`.
    fn twisted_head(&self, w: usize, p2: &[usize], i: usize) -> SVec {
        let mut head = self.e(w);
        for &x in &p2[..i] {
            head = self.bundle.m.act(&head, &self.e(x));
        }
        head
    }

    /// SaYD closed form of `L_φ` for `p ≤ n`:
    /// the `D_φ` insertions with signs `θ`, plus for `i = 0, …, |p|` with sign `ξ(n,p,i+1)`
    /// `(m₀u¹₊₍₂₎⋯uⁱ₊₍₂₎, u^{i+1}₊, …, u^{n−p+i}₊,
    ///   φ(u^{n−p+i+2}₊, …, uⁿ₊, uⁿ₋⋯u¹₋m₋₁, u¹₊₍₁₎, …, uⁱ₊₍₁₎) ▸ u^{n−p+i+1}₊)`.
    pub fn lie_sayd_oracle(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        self.require_sayd()?;
        let p = phi.degree;
        if p > n {
            return Err(CalculusError::DegreeError { what: "closed-form Lie derivative", degree: p as i64, max: n });
        }
        let f = self.field();
        let h = self.h();
        let k = n + 1 - p;
        self.chain_degree(k as i64)?;
        let sp = &self.cochains.spaces[p];
        let (ni, pi) = (n as i64, p as i64);
        let mut acc = Matrix::zeros(f, self.bundle.dim(k), self.bundle.dim(n));
        for i in 1..=k {
            acc = acc.combine(&sgn(f, SignTable::theta(ni, pi, i as i64)), &self.bullet(phi, n, i)?);
        }
        let tail = self.chain_op(n, k, |t| {
            let mut out = Tensor::new();
            for i in 0..p {
                let s = sgn(f, SignTable::xi(ni, pi, i as i64 + 1));
                sayd_expand(h, &self.bundle.m, t, i, |y, w, p1, p2, mi, coef| {
                    let mut args = units(f, &p2[n - p + i + 1..]);
                    args.push(self.minus_product(y, mi));
                    args.extend(units(f, &p1[..i]));
                    let val = sp.eval_parts(phi, &args);
                    let mut parts = vec![self.twisted_head(w, p2, i)];
                    parts.extend(units(f, &p2[i..n - p + i]));
                    parts.push(h.blact(&val, &self.e(p2[n - p + i])));
                    out.add_outer(&(&s * coef), &parts);
                });
            }
            out
        });
        Ok(acc.add(&tail))
    }

    /// SaYD closed form of `S_φ` for `p ≤ n`:
    /// `Σ_{i=0}^{n−p} Σ_{j=i+1}^{n−|p|} ± (m₀u¹₊₍₂₎⋯uⁱ₊₍₂₎, u^{i+1}₊, …, D_φ(uʲ₊, …, u^{j+|p|}₊), …, uⁿ₊,
    /// uⁿ₋⋯u¹₋m₋₁, u¹₊₍₁₎, …, uⁱ₊₍₁₎)`.
    pub fn s_sayd_oracle(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        self.require_sayd()?;
        let p = phi.degree;
        if p > n {
            return Err(CalculusError::DegreeError { what: "closed-form S", degree: p as i64, max: n });
        }
        let f = self.field();
        let h = self.h();
        let k = n + 2 - p;
        self.chain_degree(k as i64)?;
        let (ni, pi) = (n as i64, p as i64);
        Ok(self.chain_op(n, k, |t| {
            let mut out = Tensor::new();
            for i in 0..=n - p {
                sayd_expand(h, &self.bundle.m, t, i, |y, w, p1, p2, mi, coef| {
                    for j in i + 1..=n + 1 - p {
                        let s = sgn(f, SignTable::s_sayd(ni, pi, i as i64, j as i64));
                        let mut parts = vec![self.twisted_head(w, p2, i)];
                        parts.extend(units(f, &p2[i..j - 1]));
                        parts.push(self.d_phi_tuple(phi, &p2[j - 1..j - 1 + p]));
                        parts.extend(units(f, &p2[j - 1 + p..]));
                        parts.push(self.minus_product(y, mi));
                        parts.extend(units(f, &p1[..i]));
                        out.add_outer(&(&s * coef), &parts);
                    }
                });
            }
            out
        }))
    }

    /// Two-part form of `L_φ` for a 1-cochain on `C^cyc_n`, `n ≥ 1`:
    /// `Σᵢ (m, …, D_φ(uⁱ), …) + (m₀, u¹₊, …, u^{n−1}₊, uⁿ₊ t(φ(uⁿ₋⋯u¹₋m₋₁)))`.
    pub fn lie_one_cochain_oracle(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        assert_eq!(phi.degree, 1);
        assert!(n >= 1);
        let f = self.field();
        let h = self.h();
        let sp = &self.cochains.spaces[1];
        let mut acc = Matrix::zeros(f, self.bundle.dim(n), self.bundle.dim(n));
        for i in 1..=n {
            acc = acc.add(&self.bullet(phi, n, i)?);
        }
        let tail = self.chain_op(n, n, |t| {
            let mut out = Tensor::new();
            sayd_expand(h, &self.bundle.m, t, 0, |y, w, _, p2, mi, coef| {
                let val = sp.eval_parts(phi, &[self.minus_product(y, mi)]);
                let mut parts = vec![self.e(w)];
                parts.extend(units(f, &p2[..n - 1]));
                parts.push(h.blact(&val, &self.e(p2[n - 1])));
                out.add_outer(coef, &parts);
            });
            out
        });
        Ok(acc.add(&tail))
    }

    /// Form of `L_φ` for a 1-cocycle on `C^cyc_n`:
    /// `(m₀ t(φ(m₋₁)), u¹, …) + Σᵢ (m, …, D_φ(uⁱ), …) + Σⱼ (m, …, E_φ(uʲ), …)`
    /// with `E_φ(u) = u₊ t(φ(u₋))`. Only the full sum is meaningful.
    pub fn lie_one_cocycle_oracle(&self, phi: &Cochain, n: usize) -> CResult<Matrix> {
        assert_eq!(phi.degree, 1);
        let f = self.field();
        let h = self.h();
        let m = &self.bundle.m;
        let sp = &self.cochains.spaces[1];
        let mut acc = Matrix::zeros(f, self.bundle.dim(n), self.bundle.dim(n));
        for i in 1..=n {
            acc = acc.add(&self.bullet(phi, n, i)?);
        }
        let rest = self.chain_op(n, n, |t| {
            let mut out = Tensor::new();
            for (y, w, c) in m.coact_basis(t[0]) {
                let val = sp.eval_tuple(phi, &[y]);
                let mut parts = units(f, t);
                parts[0] = m.act(&self.e(w), &h.t(&val));
                out.add_outer(&c, &parts);
            }
            for j in 1..=n {
                for (x, z, c) in h.trans_basis(t[j]) {
                    let val = sp.eval_tuple(phi, &[z]);
                    let mut parts = units(f, t);
                    parts[j] = h.blact(&val, &self.e(x));
                    out.add_outer(&c, &parts);
                }
            }
            out
        });
        Ok(acc.add(&rest))
    }

    // ---- the subcomplex C_M ---------------------------------------------

    /// Degree-`p` cochains whose insertions `•ᵢ` map `im(id − T)` into
    /// `im(id − T)` for all `i` and all source degrees with target `≤ n_max`.
    /// Over-approximates `C^p_M` by truncation in the chain degree.
    pub fn cochain_subcomplex_cm(&self, p: usize, cyclic: &QuotientComplex) -> CResult<Subspace> {
        let f = self.field();
        let space = self.space(p)?;
        let basis = space.basis();
        let mut constraint_cols: Vec<SAcc> = (0..basis.len()).map(|_| SAcc::new()).collect();
        let mut offset = 0usize;
        for n in p..=self.n_max() {
            let k = n + 1 - p;
            if k > self.n_max() {
                continue;
            }
            let rel = self.bundle.im_id_minus_t(n);
            if rel.dim() == 0 {
                continue;
            }
            let r = rel.basis_matrix();
            let q = cyclic.presentation(k).projection();
            for i in 1..=k {
                for (j, phi) in basis.iter().enumerate() {
                    let m = q.mul(&self.bullet(phi, n, i)?).mul(&r);
                    for (c, col) in m.columns().iter().enumerate() {
                        constraint_cols[j].add(&col.shift(offset + c * m.rows()));
                    }
                }
                offset += q.rows() * r.cols();
            }
        }
        if offset == 0 {
            return Ok(Subspace::full(f, space.dim()));
        }
        let cols = constraint_cols.into_iter().map(SAcc::finish).collect();
        Ok(kernel(&Matrix::from_columns(f, offset, cols)))
    }
}

// ---- homogeneous components over A ⊗ A^op ------------------------------

/// Hochschild data of an enveloping instance: `φ̃(a¹, …, a^p) = φ(a¹⊗1, …, a^p⊗1)`
/// and the grading of `A` by eigenvalues of σ.
pub struct HomogeneousSplit<'a> {
    calc: &'a Calculus<'a>,
    a: FinDimAlgebra,
    pub grading: Grading,
    /// Columns: the graded basis of `A`.
    change: Matrix,
    change_inv: Matrix,
    /// Eigenvalue of each graded basis vector.
    degrees: Vec<Scalar>,
    projectors: Vec<Matrix>,
}

impl<'a> HomogeneousSplit<'a> {
    pub fn new(calc: &'a Calculus<'a>, a: &FinDimAlgebra, sigma: &AlgebraAutomorphism) -> CResult<Self> {
        let d = a.dim();
        if calc.h().dim_u() != d * d || calc.h().dim_a() != d {
            return Err(CalculusError::NotHochschild);
        }
        let grading = eigenspace_grading(a, sigma).map_err(|_| CalculusError::NotSemisimple)?;
        let mut cols = Vec::new();
        let mut degrees = Vec::new();
        for (l, s) in grading.eigenvalues.iter().zip(&grading.components) {
            for v in s.basis() {
                cols.push(v.clone());
                degrees.push(l.clone());
            }
        }
        let change = Matrix::from_columns(a.field(), d, cols);
        let change_inv = invert(&change).ok_or(CalculusError::NotSemisimple)?;
        let projectors = (0..grading.eigenvalues.len()).map(|k| grading.projector(k)).collect();
        Ok(HomogeneousSplit { calc, a: a.clone(), grading, change, change_inv, degrees, projectors })
    }

    fn kron_power(m: &Matrix, p: usize) -> Matrix {
        let mut out = Matrix::identity(m.field(), 1);
        for _ in 0..p {
            out = out.kron(m);
        }
        out
    }

    /// Table of `φ̃` on plain tuples `e_{a¹} ⊗ ⋯ ⊗ e_{a^p}` (first index most significant).
    pub fn tilde(&self, phi: &Cochain) -> Matrix {
        let h = self.calc.h();
        let p = phi.degree;
        let d = self.a.dim();
        let sp = &self.calc.cochains.spaces[p];
        let cols = d.pow(p as u32);
        Matrix::from_fn(h.field(), d, cols, |c| {
            let mut parts = Vec::with_capacity(p);
            let mut rest = c;
            for k in (0..p).rev() {
                parts.push((k, rest % d));
                rest /= d;
            }
            parts.sort();
            let args: Vec<SVec> = parts.iter().map(|&(_, a)| h.s(&h.basis_a(a))).collect();
            sp.eval_parts(phi, &args)
        })
    }

    /// Degree of each graded input tuple of length `p`.
    fn input_degrees(&self, p: usize) -> Vec<Scalar> {
        let one = self.a.field().one();
        let mut out = vec![one];
        for _ in 0..p {
            out = out.iter().flat_map(|x| self.degrees.iter().map(move |y| x * y)).collect();
        }
        out
    }

    /// The cochain with `φ̃ = table`, via `φ(a¹⊗b¹, …) = φ̃(a¹, …) b^p ⋯ b¹`.
    fn from_tilde(&self, table: &Matrix, p: usize) -> CResult<Cochain> {
        let d = self.a.dim();
        let a = &self.a;
        Ok(self.calc.cochains.spaces[p].from_values(|t| {
            if p == 0 {
                return table.column(0).clone();
            }
            let idx = t.iter().fold(0, |acc, &u| acc * d + u / d);
            let mut v = table.column(idx).clone();
            for &u in t.iter().rev() {
                v = a.mul(&v, &a.basis_vec(u % d));
            }
            v
        })?)
    }

    /// `φ = Σ_λ φ_λ` with `φ̃_λ = π_{λμ} ∘ φ̃` on inputs of degree `μ`.
    pub fn homogeneous_components(&self, phi: &Cochain) -> CResult<Vec<(Scalar, Cochain)>> {
        let p = phi.degree;
        let graded = self.tilde(phi).mul(&Self::kron_power(&self.change, p));
        let inv = Self::kron_power(&self.change_inv, p);
        let nu = self.input_degrees(p);
        let mut lambdas: Vec<Scalar> = Vec::new();
        for mu in &nu {
            for kappa in &self.grading.eigenvalues {
                let l = kappa * &mu.inv().expect("eigenvalues are nonzero");
                if !lambdas.contains(&l) {
                    lambdas.push(l);
                }
            }
        }
        lambdas.sort_by_key(|l| (!l.is_one(), l.to_string()));
        let f = self.a.field();
        let mut out = Vec::new();
        for l in lambdas {
            let cols: Vec<SVec> = graded
                .columns()
                .iter()
                .zip(&nu)
                .map(|(col, mu)| match self.grading.component_of(&(&l * mu)) {
                    Some(k) => self.projectors[k].apply(col),
                    None => SVec::new(),
                })
                .collect();
            let part = Matrix::from_columns(f, self.a.dim(), cols).mul(&inv);
            let c = self.from_tilde(&part, p)?;
            if !c.coords.is_zero() {
                out.push((l, c));
            }
        }
        Ok(out)
    }

    /// Elements of the monoid generated by the eigenvalues, as products of at
    /// most `len` factors. Exact once the closure saturates.
    fn monoid(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![self.a.field().one()];
        for _ in 0..len {
            let mut next = out.clone();
            for x in &out {
                for y in &self.grading.eigenvalues {
                    let z = x * y;
                    if !next.contains(&z) {
                        next.push(z);
                    }
                }
            }
            if next.len() == out.len() {
                break;
            }
            out = next;
        }
        out
    }

    /// Cochain coordinates cut out by `π_κ φ̃(y) = 0` for graded inputs `y`
    /// of degree `ν` and the output components `κ` selected by `keep(κ, ν)`.
    fn constrained(&self, p: usize, vanish: impl Fn(&Scalar, &Scalar) -> bool) -> CResult<Subspace> {
        let space = self.calc.space(p)?;
        let kp = Self::kron_power(&self.change, p);
        let nu = self.input_degrees(p);
        let d = self.a.dim();
        let mut cols = Vec::new();
        for phi in space.basis() {
            let graded = self.tilde(&phi).mul(&kp);
            let mut acc = SAcc::new();
            let mut row = 0;
            for (col, mu) in graded.columns().iter().zip(&nu) {
                for (k, kappa) in self.grading.eigenvalues.iter().enumerate() {
                    if vanish(kappa, mu) {
                        acc.add(&self.projectors[k].apply(col).shift(row));
                    }
                    row += d;
                }
            }
            cols.push(acc.finish());
        }
        let rows = nu.len() * self.grading.eigenvalues.len() * d;
        Ok(kernel(&Matrix::from_columns(self.a.field(), rows, cols)))
    }

    /// `{φ : φ̃_λ vanishes on (A^{⊗p})_{λ⁻¹μ⁻¹} for all λ ≠ 1, μ ∈ G}`, that is
    /// `π_κ φ̃(y) = 0` whenever `κ ≠ deg y` and `κ⁻¹ ∈ G`.
    pub fn characterised_cm(&self, p: usize) -> CResult<Subspace> {
        let g = self.monoid(2 * self.a.dim() + p + 2);
        self.constrained(p, |kappa, mu| kappa != mu && g.contains(&kappa.inv().expect("nonzero")))
    }

    /// Degree-preserving cochains `C^p(A,A)_1`.
    pub fn degree_one(&self, p: usize) -> CResult<Subspace> {
        self.constrained(p, |kappa, mu| kappa != mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinDimAlgebra;
    use crate::complexes::{build_cochains, build_paracyclic, quotient_complex, QuotientKind};
    use crate::hopf::ModuleComodule;
    use crate::instances::build_enveloping;

    fn dual(neg: bool) -> (FinDimAlgebra, AlgebraAutomorphism, HopfAlgebroid, ModuleComodule) {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let s = if neg {
            AlgebraAutomorphism::new(&a, Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]])).unwrap()
        } else {
            AlgebraAutomorphism::identity(&a)
        };
        let (h, m) = build_enveloping("dual", &a, &s);
        (a, s, h, m)
    }

    #[test]
    fn sign_table_values() {
        assert_eq!(SignTable::theta(3, 2, 1), 3);
        assert_eq!(SignTable::xi(3, 2, 2), 4);
        assert_eq!(SignTable::eta(3, 2, 1, 2), 5);
        assert_eq!(SignTable::deg_shift(0), -1);
    }

    #[test]
    fn cochain_products() {
        let (_, _, h, m) = dual(false);
        let bundle = build_paracyclic(&h, &m, 3).unwrap();
        let cc = build_cochains(&h, 4);
        let c = Calculus::new(&bundle, &cc);
        let mu = c.mu().unwrap();
        // D_μ = m_U and ε D_φ = φ
        let dm = c.d_phi(&mu).matrix;
        let args = cc.spaces[2].args().unwrap();
        for q in 0..args.dim() {
            let r = args.rep(q);
            assert_eq!(dm.column(q), &h.mul(&c.e(r[0]), &c.e(r[1])));
        }
        assert_eq!(c.circ(&mu, &mu, 1).unwrap(), c.circ(&mu, &mu, 2).unwrap());
        for p in 0..=2 {
            for phi in cc.spaces[p].basis() {
                assert_eq!(c.cup(&phi, &c.unit()).unwrap(), phi);
                assert_eq!(c.cup(&c.unit(), &phi).unwrap(), phi);
                if p >= 1 {
                    let d = c.d_phi(&phi).matrix;
                    let eps = Matrix::from_fn(Field::Q, h.dim_a(), h.dim_u(), |u| h.eps(&h.basis_u(u)));
                    assert_eq!(eps.mul(&d), phi.table);
                    assert_eq!(c.bracket(&mu, &phi).unwrap().unwrap(), c.delta(&phi).unwrap());
                } else {
                    assert_eq!(c.bracket(&mu, &phi).unwrap().unwrap(), c.delta(&phi).unwrap());
                }
            }
        }
    }

    #[test]
    fn lie_of_mu_is_minus_b() {
        let (_, _, h, m) = dual(true);
        let bundle = build_paracyclic(&h, &m, 4).unwrap();
        let cc = build_cochains(&h, 2);
        let c = Calculus::new(&bundle, &cc);
        let cyc = quotient_complex(&bundle, QuotientKind::Cyclic);
        let mu = c.mu().unwrap();
        for n in 1..=4 {
            let l = cyc.induce(&c.lie(&mu, n).unwrap(), n, n - 1).unwrap();
            let b = cyc.induce(&bundle.b(n), n, n - 1).unwrap();
            assert_eq!(l, b.neg(), "n = {n}");
        }
    }
}

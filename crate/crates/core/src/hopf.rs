//! Left bialgebroids, left Hopf algebroids and module-comodules, with the
//! axiom checks evaluated on full bases.
//!
//! Conventions: `a ▷ u ◁ b = s(a) t(b) u` and `a ▸ u ◂ b = u s(b) t(a)`.
//! `U ⊗_A U` uses `(u ◁ a, v) ~ (u, a ▷ v)`; `▸U ⊗_{A^op} U◁` uses
//! `(a ▸ u, v) ~ (u, v ◁ a)`.

use crate::algebra::FinDimAlgebra;
use crate::linalg::{Field, Matrix, SAcc, SVec, Scalar};
use crate::report::{Counterexample, VerificationReport};
use crate::tensor::{outer, Junction, Tensor, TensorQuotient};

/// Sweedler-style term list `Σ c · (x ⊗ y)` on basis indices.
pub type Terms2 = Vec<(usize, usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct HopfAlgebroid {
    pub name: String,
    base: FinDimAlgebra,
    total: FinDimAlgebra,
    eta: Matrix,
    source: Matrix,
    target: Matrix,
    counit: Matrix,
    coproduct: Matrix,
    translation: Matrix,
    uu_a: TensorQuotient,
    uu_aop: TensorQuotient,
    s_left: Vec<Matrix>,
    t_left: Vec<Matrix>,
    t_right: Vec<Matrix>,
}

impl HopfAlgebroid {
    /// `eta` maps `A ⊗ A^op` (index `i·d + j`) to `U`; coproduct and
    /// translation are given by representative tensors on basis elements.
    pub fn new(
        name: impl Into<String>,
        base: FinDimAlgebra,
        total: FinDimAlgebra,
        eta: Matrix,
        counit: Matrix,
        coproduct: impl Fn(usize) -> Tensor,
        translation: impl Fn(usize) -> Tensor,
    ) -> Self {
        let field = base.field();
        let d = base.dim();
        let du = total.dim();
        let unit = base.unit().clone();
        let source = Matrix::from_fn(field, du, d, |i| {
            let mut acc = SAcc::new();
            for (k, c) in unit.iter() {
                acc.add_scaled(c, eta.column(i * d + k));
            }
            acc.finish()
        });
        let target = Matrix::from_fn(field, du, d, |j| {
            let mut acc = SAcc::new();
            for (k, c) in unit.iter() {
                acc.add_scaled(c, eta.column(k * d + j));
            }
            acc.finish()
        });
        let s_left: Vec<Matrix> = (0..d).map(|a| total.left_mult(source.column(a))).collect();
        let t_left: Vec<Matrix> = (0..d).map(|a| total.left_mult(target.column(a))).collect();
        let t_right: Vec<Matrix> = (0..d).map(|a| total.right_mult(target.column(a))).collect();
        let uu_a = TensorQuotient::build(
            field,
            vec![du, du],
            &[Junction { left_factor: 0, left_ops: t_left.clone(), right_ops: s_left.clone() }],
        );
        let uu_aop = TensorQuotient::build(
            field,
            vec![du, du],
            &[Junction { left_factor: 0, left_ops: t_right.clone(), right_ops: t_left.clone() }],
        );
        let coproduct = Matrix::from_fn(field, uu_a.dim(), du, |u| uu_a.project(&coproduct(u)));
        let translation =
            Matrix::from_fn(field, uu_aop.dim(), du, |u| uu_aop.project(&translation(u)));
        HopfAlgebroid {
            name: name.into(),
            base,
            total,
            eta,
            source,
            target,
            counit,
            coproduct,
            translation,
            uu_a,
            uu_aop,
            s_left,
            t_left,
            t_right,
        }
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn base(&self) -> &FinDimAlgebra {
        &self.base
    }

    pub fn total(&self) -> &FinDimAlgebra {
        &self.total
    }

    pub fn dim_a(&self) -> usize {
        self.base.dim()
    }

    pub fn dim_u(&self) -> usize {
        self.total.dim()
    }

    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    pub fn source(&self) -> &Matrix {
        &self.source
    }

    pub fn target(&self) -> &Matrix {
        &self.target
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn coproduct(&self) -> &Matrix {
        &self.coproduct
    }

    pub fn translation(&self) -> &Matrix {
        &self.translation
    }

    pub fn uu_a(&self) -> &TensorQuotient {
        &self.uu_a
    }

    pub fn uu_aop(&self) -> &TensorQuotient {
        &self.uu_aop
    }

    pub fn one_u(&self) -> SVec {
        self.total.unit().clone()
    }

    pub fn one_a(&self) -> SVec {
        self.base.unit().clone()
    }

    pub fn s(&self, a: &SVec) -> SVec {
        self.source.apply(a)
    }

    pub fn t(&self, a: &SVec) -> SVec {
        self.target.apply(a)
    }

    pub fn mul(&self, u: &SVec, v: &SVec) -> SVec {
        self.total.mul(u, v)
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a SVec>) -> SVec {
        self.total.mul_all(xs)
    }

    pub fn eps(&self, u: &SVec) -> SVec {
        self.counit.apply(u)
    }

    pub fn mul_a(&self, a: &SVec, b: &SVec) -> SVec {
        self.base.mul(a, b)
    }

    /// `a ▸ u = u t(a)`.
    pub fn blact(&self, a: &SVec, u: &SVec) -> SVec {
        self.mul(u, &self.t(a))
    }

    /// `u ◁ a = t(a) u`.
    pub fn ract(&self, u: &SVec, a: &SVec) -> SVec {
        self.mul(&self.t(a), u)
    }

    /// `a ▷ u = s(a) u`.
    pub fn lact(&self, a: &SVec, u: &SVec) -> SVec {
        self.mul(&self.s(a), u)
    }

    /// `u ◂ a = u s(a)`.
    pub fn bract(&self, u: &SVec, a: &SVec) -> SVec {
        self.mul(u, &self.s(a))
    }

    /// Left `U`-action on `A`: `u · a = ε(u ◂ a)`.
    pub fn act_on_base(&self, u: &SVec, a: &SVec) -> SVec {
        self.eps(&self.bract(u, a))
    }

    /// Junction for `⊗_A` between left `U`-module factors: `(t(a)·x, y) ~ (x, s(a)·y)`.
    pub fn junction_a(&self, left_factor: usize) -> Junction {
        Junction { left_factor, left_ops: self.t_left.clone(), right_ops: self.s_left.clone() }
    }

    /// Junction for `⊗_{A^op}` between `U` factors: `(u t(a), v) ~ (u, t(a) v)`.
    pub fn junction_aop(&self, left_factor: usize) -> Junction {
        Junction { left_factor, left_ops: self.t_right.clone(), right_ops: self.t_left.clone() }
    }

    pub fn t_left(&self) -> &[Matrix] {
        &self.t_left
    }

    pub fn s_left(&self) -> &[Matrix] {
        &self.s_left
    }

    /// Representative terms of `Δ(e_u)`.
    pub fn delta_basis(&self, u: usize) -> Terms2 {
        terms2(&self.uu_a, self.coproduct.column(u))
    }

    /// Representative terms of `(e_u)_+ ⊗ (e_u)_-`.
    pub fn trans_basis(&self, u: usize) -> Terms2 {
        terms2(&self.uu_aop, self.translation.column(u))
    }

    pub fn delta(&self, u: &SVec) -> Terms2 {
        linear_terms(u, |i| self.delta_basis(i))
    }

    pub fn trans(&self, u: &SVec) -> Terms2 {
        linear_terms(u, |i| self.trans_basis(i))
    }

    pub fn basis_u(&self, i: usize) -> SVec {
        self.total.basis_vec(i)
    }

    pub fn basis_a(&self, i: usize) -> SVec {
        self.base.basis_vec(i)
    }

    /// Copy with a replaced translation map, given in `▸U ⊗_{A^op} U◁` coordinates.
    pub fn with_translation(&self, translation: Matrix) -> Self {
        HopfAlgebroid { translation, ..self.clone() }
    }

    /// Copy with a replaced counit.
    pub fn with_counit(&self, counit: Matrix) -> Self {
        HopfAlgebroid { counit, ..self.clone() }
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        HopfAlgebroid { name: name.into(), ..self.clone() }
    }

    /// Label of a basis tuple of `U`-factors, for counterexamples.
    pub fn show_u(&self, i: usize) -> &str {
        &self.total.labels()[i]
    }
}

fn terms2(tq: &TensorQuotient, v: &SVec) -> Terms2 {
    v.iter()
        .map(|(q, c)| {
            let r = tq.rep(*q);
            (r[0], r[1], c.clone())
        })
        .collect()
}

fn linear_terms(u: &SVec, f: impl Fn(usize) -> Terms2) -> Terms2 {
    let mut out = Vec::new();
    for (i, c) in u.iter() {
        for (x, y, d) in f(*i) {
            out.push((x, y, c * &d));
        }
    }
    out
}

/// Right `U`-module with a left `U`-coaction `M → U◁ ⊗_A ▸M`.
#[derive(Clone, Debug)]
pub struct ModuleComodule {
    pub name: String,
    labels: Vec<String>,
    action: Vec<Matrix>,
    coaction: Matrix,
    um: TensorQuotient,
    t_act: Vec<Matrix>,
}

impl ModuleComodule {
    /// `action[k]` is `m ↦ m · e_k`; the coaction is given by representatives.
    pub fn new(
        name: impl Into<String>,
        h: &HopfAlgebroid,
        labels: Vec<String>,
        action: Vec<Matrix>,
        coaction: impl Fn(usize) -> Tensor,
    ) -> Self {
        let field = h.field();
        let dm = labels.len();
        let t_act: Vec<Matrix> = (0..h.dim_a())
            .map(|a| act_matrix(&action, h.target().column(a), field, dm))
            .collect();
        let um = TensorQuotient::build(
            field,
            vec![h.dim_u(), dm],
            &[Junction { left_factor: 0, left_ops: h.t_left().to_vec(), right_ops: t_act.clone() }],
        );
        let coaction = Matrix::from_fn(field, um.dim(), dm, |m| um.project(&coaction(m)));
        ModuleComodule { name: name.into(), labels, action, coaction, um, t_act }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    pub fn um(&self) -> &TensorQuotient {
        &self.um
    }

    /// Matrices of `m ↦ m · t(a)` on basis `a`.
    pub fn t_act(&self) -> &[Matrix] {
        &self.t_act
    }

    pub fn act(&self, m: &SVec, u: &SVec) -> SVec {
        let mut acc = SAcc::new();
        for (k, c) in u.iter() {
            acc.add_scaled(c, &self.action[*k].apply(m));
        }
        acc.finish()
    }

    /// Representative terms `m_{(-1)} ⊗ m_{(0)}` of the coaction on `e_m`.
    pub fn coact_basis(&self, m: usize) -> Terms2 {
        terms2(&self.um, self.coaction.column(m))
    }

    pub fn coact(&self, m: &SVec) -> Terms2 {
        linear_terms(m, |i| self.coact_basis(i))
    }

    /// Junction `(m t(a), u) ~ (m, t(a) u)` gluing a `U` factor to `M`.
    pub fn junction_aop(&self, h: &HopfAlgebroid) -> Junction {
        Junction { left_factor: 0, left_ops: self.t_act.clone(), right_ops: h.t_left().to_vec() }
    }

    pub fn with_coaction(&self, h: &HopfAlgebroid, coaction: impl Fn(usize) -> Tensor) -> Self {
        let field = h.field();
        let um = self.um.clone();
        let c = Matrix::from_fn(field, um.dim(), self.dim(), |m| um.project(&coaction(m)));
        ModuleComodule { coaction: c, ..self.clone() }
    }
}

fn act_matrix(action: &[Matrix], u: &SVec, field: Field, dm: usize) -> Matrix {
    let mut m = Matrix::zeros(field, dm, dm);
    for (k, c) in u.iter() {
        m = m.combine(c, &action[k.to_owned()]);
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AydFlags {
    pub is_ayd: bool,
    pub is_stable: bool,
}

type Check = Result<(), Counterexample>;

fn all_basis(n: usize, degree: Option<usize>, f: impl Fn(usize) -> Option<String>) -> Check {
    for i in 0..n {
        if let Some(note) = f(i) {
            return Err(Counterexample::basis(degree, i, note));
        }
    }
    Ok(())
}

fn all_pairs(n: usize, m: usize, f: impl Fn(usize, usize) -> Option<String>) -> Check {
    for i in 0..n {
        for j in 0..m {
            if let Some(note) = f(i, j) {
                return Err(Counterexample {
                    degree: None,
                    input: vec![(i, "1".into()), (j, "1".into())],
                    note,
                });
            }
        }
    }
    Ok(())
}

fn neq(what: &str, a: &SVec, b: &SVec) -> Option<String> {
    (a != b).then(|| format!("{what}: {a:?} vs {b:?}"))
}

/// Tensor `Σ c (x ⊗ y)` from terms.
fn tensor2(terms: &Terms2, field: Field) -> Tensor {
    let one = field.one();
    let mut t = Tensor::new();
    for (x, y, c) in terms {
        t.add_outer(c, &[SVec::unit(*x, one.clone()), SVec::unit(*y, one.clone())]);
    }
    t
}

/// Bialgebroid axioms: η, Takeuchi membership of Δ, coassociativity,
/// counit laws and multiplicativity of Δ.
pub fn check_bialgebroid(h: &HopfAlgebroid) -> VerificationReport {
    let mut r = VerificationReport::new();
    let name = h.name.as_str();
    let field = h.field();
    let (d, du) = (h.dim_a(), h.dim_u());
    let one = field.one();
    let e = |i: usize| SVec::unit(i, one.clone());

    let eta = all_pairs(d, d, |a, b| {
        let (ea, eb) = (h.basis_a(a), h.basis_a(b));
        neq("s(ab) = s(a)s(b)", &h.s(&h.mul_a(&ea, &eb)), &h.mul(&h.s(&ea), &h.s(&eb)))
            .or_else(|| neq("t(ab) = t(b)t(a)", &h.t(&h.mul_a(&ea, &eb)), &h.mul(&h.t(&eb), &h.t(&ea))))
            .or_else(|| neq("s(a)t(b) = t(b)s(a)", &h.mul(&h.s(&ea), &h.t(&eb)), &h.mul(&h.t(&eb), &h.s(&ea))))
    })
    .and_then(|_| {
        if h.s(&h.one_a()) != h.one_u() || h.t(&h.one_a()) != h.one_u() {
            Err(Counterexample::basis(None, 0, "s(1) or t(1) is not 1"))
        } else {
            Ok(())
        }
    });
    r.record("bialgebroid.eta", "eta is an algebra map; source/target maps", name, "basis pairs", eta);

    let takeuchi = all_pairs(du, d, |u, a| {
        let ea = h.basis_a(a);
        let mut t = Tensor::new();
        for (x, y, c) in h.delta_basis(u) {
            t.add_outer(&c, &[h.blact(&ea, &e(x)), e(y)]);
            t.add_outer(&-&c, &[e(x), h.bract(&e(y), &ea)]);
        }
        let v = h.uu_a().project(&t);
        (!v.is_zero()).then(|| "Δ(u) not in the Takeuchi product".to_string())
    });
    r.record("takeuchi.coproduct", "Takeuchi condition for the coproduct", name, "basis", takeuchi);

    let uuu = TensorQuotient::build(field, vec![du, du, du], &[h.junction_a(0), h.junction_a(1)]);
    let coassoc = all_basis(du, None, |u| {
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        for (x, y, c) in h.delta_basis(u) {
            for (x1, x2, c2) in h.delta_basis(x) {
                lhs.add_outer(&(&c * &c2), &[e(x1), e(x2), e(y)]);
            }
            for (y1, y2, c2) in h.delta_basis(y) {
                rhs.add_outer(&(&c * &c2), &[e(x), e(y1), e(y2)]);
            }
        }
        neq("(Δ⊗id)Δ = (id⊗Δ)Δ", &uuu.project(&lhs), &uuu.project(&rhs))
    });
    r.record("coproduct.coassociative", "coalgebra in A-bimodules", name, "basis", coassoc);

    let counit = all_basis(du, None, |u| {
        let mut left = SAcc::new();
        let mut right = SAcc::new();
        for (x, y, c) in h.delta_basis(u) {
            left.add_scaled(&c, &h.lact(&h.eps(&e(x)), &e(y)));
            right.add_scaled(&c, &h.ract(&e(x), &h.eps(&e(y))));
        }
        neq("ε(u₁) ▷ u₂ = u", &left.finish(), &e(u)).or_else(|| neq("u₁ ◁ ε(u₂) = u", &right.finish(), &e(u)))
    });
    r.record("counit.coproduct", "counit of the coalgebra", name, "basis", counit);

    let counit_mult = all_pairs(du, du, |u, v| {
        let (eu, ev) = (e(u), e(v));
        let uv = h.mul(&eu, &ev);
        let eps_v = h.eps(&ev);
        neq("ε(uv) = ε(u s(ε(v)))", &h.eps(&uv), &h.eps(&h.bract(&eu, &eps_v)))
            .or_else(|| neq("ε(uv) = ε(u t(ε(v)))", &h.eps(&uv), &h.eps(&h.mul(&eu, &h.t(&eps_v)))))
    })
    .and_then(|_| {
        if h.eps(&h.one_u()) != h.one_a() {
            Err(Counterexample::basis(None, 0, "ε(1) ≠ 1"))
        } else {
            Ok(())
        }
    });
    r.record("counit.action", "counit defines a left U-action on A", name, "basis pairs", counit_mult);

    let mult = all_pairs(du, du, |u, v| {
        let mut lhs = Tensor::new();
        for (x, y, c) in h.delta(&h.mul(&e(u), &e(v))) {
            lhs.add_outer(&c, &[e(x), e(y)]);
        }
        let mut rhs = Tensor::new();
        for (x, y, c) in h.delta_basis(u) {
            for (x2, y2, c2) in h.delta_basis(v) {
                rhs.add_outer(&(&c * &c2), &[h.mul(&e(x), &e(x2)), h.mul(&e(y), &e(y2))]);
            }
        }
        neq("Δ(uv) = Δ(u)Δ(v)", &h.uu_a().project(&lhs), &h.uu_a().project(&rhs))
    })
    .and_then(|_| {
        let lhs = h.uu_a().project(&tensor2(&h.delta(&h.one_u()), field));
        let rhs = h.uu_a().project(&outer(&one, &[h.one_u(), h.one_u()]));
        match lhs == rhs {
            true => Ok(()),
            false => Err(Counterexample::basis(None, 0, "Δ(1) ≠ 1 ⊗ 1")),
        }
    });
    r.record("coproduct.multiplicative", "Δ is an algebra map into U ×_A U", name, "basis pairs", mult);
    r
}

/// Galois-map inverse and the nine translation-map identities of the translation map.
pub fn check_left_hopf(h: &HopfAlgebroid) -> VerificationReport {
    let mut r = VerificationReport::new();
    let name = h.name.as_str();
    let field = h.field();
    let (d, du) = (h.dim_a(), h.dim_u());
    let one = field.one();
    let e = |i: usize| SVec::unit(i, one.clone());
    let uua = h.uu_a();
    let uuo = h.uu_aop();

    let s33 = all_pairs(du, d, |u, a| {
        let ea = h.basis_a(a);
        let mut t = Tensor::new();
        for (x, y, c) in h.trans_basis(u) {
            t.add_outer(&c, &[h.ract(&e(x), &ea), e(y)]);
            t.add_outer(&-&c, &[e(x), h.blact(&ea, &e(y))]);
        }
        (!uuo.project(&t).is_zero()).then(|| "u₊ ⊗ u₋ not in U ×_{A^op} U".to_string())
    });
    r.record("schauenburg.takeuchi_membership", "u₊⊗u₋ ∈ U×_{A^op}U", name, "basis", s33);

    let s34 = all_basis(du, None, |u| {
        let mut t = Tensor::new();
        for (x, y, c) in h.trans_basis(u) {
            for (x1, x2, c2) in h.delta_basis(x) {
                t.add_outer(&(&c * &c2), &[e(x1), h.mul(&e(x2), &e(y))]);
            }
        }
        neq("u₊₍₁₎ ⊗ u₊₍₂₎u₋ = u ⊗ 1", &uua.project(&t), &uua.project(&outer(&one, &[e(u), h.one_u()])))
    });
    r.record("schauenburg.plus_delta_minus", "u₊(1)⊗u₊(2)u₋ = u⊗1", name, "basis", s34);

    let s35 = all_basis(du, None, |u| {
        let mut t = Tensor::new();
        for (x, y, c) in h.delta_basis(u) {
            for (xp, xm, c2) in h.trans_basis(x) {
                t.add_outer(&(&c * &c2), &[e(xp), h.mul(&e(xm), &e(y))]);
            }
        }
        neq("u₍₁₎₊ ⊗ u₍₁₎₋u₍₂₎ = u ⊗ 1", &uuo.project(&t), &uuo.project(&outer(&one, &[e(u), h.one_u()])))
    });
    r.record("schauenburg.delta_plus_minus", "u(1)₊⊗u(1)₋u(2) = u⊗1", name, "basis", s35);

    let mixed6 = TensorQuotient::build(field, vec![du, du, du], &[h.junction_a(0), h.junction_aop(1)]);
    let s36 = all_basis(du, None, |u| {
        let mut lhs = Tensor::new();
        for (x, y, c) in h.trans_basis(u) {
            for (x1, x2, c2) in h.delta_basis(x) {
                lhs.add_outer(&(&c * &c2), &[e(x1), e(x2), e(y)]);
            }
        }
        let mut rhs = Tensor::new();
        for (x, y, c) in h.delta_basis(u) {
            for (yp, ym, c2) in h.trans_basis(y) {
                rhs.add_outer(&(&c * &c2), &[e(x), e(yp), e(ym)]);
            }
        }
        neq("plus coassociativity", &mixed6.project(&lhs), &mixed6.project(&rhs))
    });
    r.record("schauenburg.plus_coassociative", "u₊(1)⊗u₊(2)⊗u₋ = u(1)⊗u(2)₊⊗u(2)₋", name, "basis", s36);

    let j2 = Junction { left_factor: 1, left_ops: h.t_left().to_vec(), right_ops: h.s_left().to_vec() };
    let mixed7 = TensorQuotient::build(field, vec![du, du, du], &[h.junction_aop(0), j2]);
    let s37 = all_basis(du, None, |u| {
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        for (x, y, c) in h.trans_basis(u) {
            for (y1, y2, c2) in h.delta_basis(y) {
                lhs.add_outer(&(&c * &c2), &[e(x), e(y1), e(y2)]);
            }
            for (xp, xm, c2) in h.trans_basis(x) {
                rhs.add_outer(&(&c * &c2), &[e(xp), e(y), e(xm)]);
            }
        }
        neq("minus coassociativity", &mixed7.project(&lhs), &mixed7.project(&rhs))
    });
    r.record("schauenburg.minus_coassociative", "u₊⊗u₋(1)⊗u₋(2) = u₊₊⊗u₋⊗u₊₋", name, "basis", s37);

    let s38 = all_pairs(du, du, |u, v| {
        let lhs = uuo.project(&tensor2(&h.trans(&h.mul(&e(u), &e(v))), field));
        let mut rhs = Tensor::new();
        for (x, y, c) in h.trans_basis(u) {
            for (x2, y2, c2) in h.trans_basis(v) {
                rhs.add_outer(&(&c * &c2), &[h.mul(&e(x), &e(x2)), h.mul(&e(y2), &e(y))]);
            }
        }
        neq("(uv)₊⊗(uv)₋ = u₊v₊⊗v₋u₋", &lhs, &uuo.project(&rhs))
    });
    r.record("schauenburg.anti_multiplicative", "(uv)₊⊗(uv)₋ = u₊v₊⊗v₋u₋", name, "basis pairs", s38);

    let s39 = all_basis(du, None, |u| {
        let mut acc = SAcc::new();
        for (x, y, c) in h.trans_basis(u) {
            acc.add_scaled(&c, &h.mul(&e(x), &e(y)));
        }
        neq("u₊u₋ = s(ε(u))", &acc.finish(), &h.s(&h.eps(&e(u))))
    });
    r.record("schauenburg.plus_times_minus", "u₊u₋ = s(ε(u))", name, "basis", s39);

    let s310 = all_basis(du, None, |u| {
        let mut acc = SAcc::new();
        for (x, y, c) in h.trans_basis(u) {
            acc.add_scaled(&c, &h.blact(&h.eps(&e(y)), &e(x)));
        }
        neq("ε(u₋) ▸ u₊ = u", &acc.finish(), &e(u))
    });
    r.record("schauenburg.counit_minus", "ε(u₋)▸u₊ = u", name, "basis", s310);

    let s311 = all_pairs(d, d, |a, b| {
        let st = h.mul(&h.s(&h.basis_a(a)), &h.t(&h.basis_a(b)));
        let lhs = uuo.project(&tensor2(&h.trans(&st), field));
        let rhs = uuo.project(&outer(&one, &[h.s(&h.basis_a(a)), h.s(&h.basis_a(b))]));
        neq("(s(a)t(b))₊ ⊗ (s(a)t(b))₋ = s(a) ⊗ s(b)", &lhs, &rhs)
    });
    r.record("schauenburg.source_target", "(s(a)t(b))₊⊗(s(a)t(b))₋ = s(a)⊗s(b)", name, "basis pairs", s311);

    // Galois map α(u ⊗ v) = u₍₁₎ ⊗ u₍₂₎v and its proposed inverse u ⊗ v ↦ u₊ ⊗ u₋v
    let alpha = uuo.operator_to(uua, |t| {
        let mut out = Tensor::new();
        for (x, y, c) in h.delta_basis(t[0]) {
            out.add_outer(&c, &[e(x), h.mul(&e(y), &e(t[1]))]);
        }
        out
    });
    let beta = uua.operator_to(uuo, |t| {
        let mut out = Tensor::new();
        for (x, y, c) in h.trans_basis(t[0]) {
            out.add_outer(&c, &[e(x), h.mul(&e(y), &e(t[1]))]);
        }
        out
    });
    let galois = if !alpha.mul(&beta).is_identity() {
        Err(Counterexample::basis(None, alpha.mul(&beta).first_difference(&Matrix::identity(field, uua.dim())).unwrap_or(0), "α∘α⁻¹ ≠ id on U⊗_A U"))
    } else if !beta.mul(&alpha).is_identity() {
        Err(Counterexample::basis(None, beta.mul(&alpha).first_difference(&Matrix::identity(field, uuo.dim())).unwrap_or(0), "α⁻¹∘α ≠ id"))
    } else {
        Ok(())
    };
    r.record("galois.inverse", "translation map inverts the Galois map", name, "full quotient", galois);
    r
}

/// Module-comodule axioms, the anti Yetter-Drinfel'd condition and stability.
pub fn check_module_comodule(h: &HopfAlgebroid, m: &ModuleComodule) -> (VerificationReport, AydFlags) {
    let mut r = VerificationReport::new();
    let name = format!("{}/{}", h.name, m.name);
    let field = h.field();
    let (d, du, dm) = (h.dim_a(), h.dim_u(), m.dim());
    let one = field.one();
    let e = |i: usize| SVec::unit(i, one.clone());

    let assoc = all_pairs(dm, du * du, |x, uv| {
        let (u, v) = (uv / du, uv % du);
        let lhs = m.act(&m.act(&e(x), &e(u)), &e(v));
        let rhs = m.act(&e(x), &h.mul(&e(u), &e(v)));
        neq("(mu)v = m(uv)", &lhs, &rhs)
    })
    .and_then(|_| all_basis(dm, None, |x| neq("m·1 = m", &m.act(&e(x), &h.one_u()), &e(x))));
    r.record("module.right_action", "right U-module", &name, "basis", assoc);

    let um = m.um();
    // right A-action induced by the coaction: m ◂ a = ε(m₋₁ t(a)) ▸ m₀
    let co_ract = |y: &SVec, a: &SVec| {
        let mut acc = SAcc::new();
        for (u, w, c) in m.coact(y) {
            acc.add_scaled(&c, &m.act(&e(w), &h.t(&h.eps(&h.blact(a, &e(u))))));
        }
        acc.finish()
    };
    let takeuchi = all_pairs(dm, d, |x, a| {
        let ea = h.basis_a(a);
        let mut t = Tensor::new();
        for (u, y, c) in m.coact_basis(x) {
            t.add_outer(&c, &[h.blact(&ea, &e(u)), e(y)]);
            t.add_outer(&-&c, &[e(u), co_ract(&e(y), &ea)]);
        }
        (!um.project(&t).is_zero()).then(|| "coaction not in U ×_A M".to_string())
    });
    let bimodules_agree = (0..dm).all(|x| (0..d).all(|a| co_ract(&e(x), &h.basis_a(a)) == m.act(&e(x), &h.s(&h.basis_a(a)))));
    r.record("takeuchi.coaction", "Takeuchi condition for the coaction", &name, "basis", takeuchi);

    let j2 = Junction { left_factor: 1, left_ops: h.t_left().to_vec(), right_ops: m.t_act().to_vec() };
    let uum = TensorQuotient::build(field, vec![du, du, dm], &[h.junction_a(0), j2]);
    let coassoc = all_basis(dm, None, |x| {
        let mut lhs = Tensor::new();
        let mut rhs = Tensor::new();
        for (u, y, c) in m.coact_basis(x) {
            for (u1, u2, c2) in h.delta_basis(u) {
                lhs.add_outer(&(&c * &c2), &[e(u1), e(u2), e(y)]);
            }
            for (v, z, c2) in m.coact_basis(y) {
                rhs.add_outer(&(&c * &c2), &[e(u), e(v), e(z)]);
            }
        }
        neq("coassociativity", &uum.project(&lhs), &uum.project(&rhs))
    });
    r.record("comodule.coassociative", "left U-comodule", &name, "basis", coassoc);

    let counit = all_basis(dm, None, |x| {
        let mut acc = SAcc::new();
        for (u, y, c) in m.coact_basis(x) {
            acc.add_scaled(&c, &m.act(&e(y), &h.t(&h.eps(&e(u)))));
        }
        neq("ε(m₋₁) ▸ m₀ = m", &acc.finish(), &e(x))
    });
    r.record("comodule.counit", "left U-comodule", &name, "basis", counit);

    let ayd = all_pairs(dm, du, |x, u| {
        let mut lhs = Tensor::new();
        for (w, y, c) in m.coact(&m.act(&e(x), &e(u))) {
            lhs.add_outer(&c, &[e(w), e(y)]);
        }
        let mut rhs = Tensor::new();
        for (up, um_, c) in h.trans_basis(u) {
            for (p1, p2, c2) in h.delta_basis(up) {
                for (w, y, c3) in m.coact_basis(x) {
                    let left = h.mul_all([&e(um_), &e(w), &e(p1)]);
                    let right = m.act(&e(y), &e(p2));
                    rhs.add_outer(&(&(&c * &c2) * &c3), &[left, right]);
                }
            }
        }
        neq("aYD", &um.project(&lhs), &um.project(&rhs))
    });
    let is_ayd = ayd.is_ok() && bimodules_agree;

    let stable = all_basis(dm, None, |x| {
        let mut acc = SAcc::new();
        for (u, y, c) in m.coact_basis(x) {
            acc.add_scaled(&c, &m.act(&e(y), &e(u)));
        }
        neq("m₀m₋₁ = m", &acc.finish(), &e(x))
    });
    let is_stable = stable.is_ok();
    // aYD and stability are properties of the instance, not axioms: recorded
    // without failing the report
    r.record(
        "ayd.condition_evaluated",
        "anti Yetter-Drinfel'd condition",
        &name,
        if is_ayd { "aYD" } else { "not aYD" },
        Ok(()),
    );
    r.record(
        "ayd.stability_evaluated",
        "stability m(0)m(-1) = m",
        &name,
        if is_stable { "stable" } else { "not stable" },
        Ok(()),
    );
    (r, AydFlags { is_ayd, is_stable })
}

//! Exact (co)homology, operators induced on it, and the Gerstenhaber and BV
//! structure tables.
//!
//! Class representatives follow the leftmost-pivot rule: the cycle space is
//! kept in canonical echelon form and a cycle basis vector is a
//! representative iff its pivot is not a pivot of the boundaries written in
//! cycle coordinates. Tables are therefore reproducible bit for bit.

use thiserror::Error;

use crate::calculus::{graded_commutator, CalculusError};
use crate::complexes::{ComplexError, ParaCyclicBundle, QuotientComplex};
use crate::linalg::{kernel, quotient_by, Matrix, SVec, Subspace};
use crate::report::{matrix_eq, Counterexample, VerificationReport};
use crate::spaces::Cochain;
use crate::suite::fixture::{spanning, Fixture, OpTag};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("operator does not descend to homology in degree {degree}: {reason}")]
    NotAChainMapOnHomology { degree: usize, reason: String },
    #[error("degree {degree} needs degree {needed} built (have {built})")]
    DegreeNotBuilt { degree: usize, needed: usize, built: usize },
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug)]
pub struct HomologySpace {
    pub degree: usize,
    /// Columns are the chosen cycle representatives.
    pub cycle_reps: Matrix,
    pub dim: usize,
    /// Class coordinates of a cycle; only meaningful on cycles.
    pub reduction: Matrix,
    cycles: Subspace,
    boundaries: Subspace,
}

impl HomologySpace {
    /// `cycles / boundaries` with `boundaries ⊆ cycles`.
    pub fn new(degree: usize, cycles: Subspace, boundaries: Subspace) -> HomologySpace {
        let f = cycles.field();
        let pivots = cycles.pivots();
        let select = Matrix::from_fn(f, pivots.len(), cycles.ambient_dim(), |j| {
            pivots.iter().position(|&p| p == j).map(|r| SVec::unit(r, f.one())).unwrap_or_default()
        });
        let in_cycles = Subspace::from_generators(f, pivots.len(), boundaries.basis().iter().map(|v| select.apply(v)));
        let classes = quotient_by(in_cycles);
        let reps: Vec<SVec> = (0..classes.quotient_dim()).map(|q| cycles.basis()[classes.rep(q)].clone()).collect();
        let cycle_reps = Matrix::from_columns(f, cycles.ambient_dim(), reps);
        let reduction = classes.projection().mul(&select);
        HomologySpace { degree, dim: classes.quotient_dim(), cycle_reps, reduction, cycles, boundaries }
    }

    /// Homology at the middle of `C_{n+1} →(d_in) C_n →(d_out) C_{n−1}`.
    pub fn of_maps(degree: usize, d_out: &Matrix, d_in: &Matrix) -> HomologySpace {
        HomologySpace::new(degree, kernel(d_out), Subspace::column_space(d_in))
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn is_cycle(&self, v: &SVec) -> bool {
        self.cycles.contains(v)
    }

    pub fn class_of(&self, v: &SVec) -> Option<SVec> {
        self.is_cycle(v).then(|| self.reduction.apply(v))
    }

    pub fn rep(&self, k: usize) -> &SVec {
        self.cycle_reps.column(k)
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.ambient_dim()
    }
}

/// `H_n(C_•, b)` of the para-cyclic chains.
pub fn homology(bundle: &ParaCyclicBundle, n: usize) -> Result<HomologySpace, HomologyError> {
    if n + 1 > bundle.n_max() {
        return Err(HomologyError::DegreeNotBuilt { degree: n, needed: n + 1, built: bundle.n_max() });
    }
    Ok(HomologySpace::of_maps(n, &bundle.b(n), &bundle.b(n + 1)))
}

/// `H_n` of a quotient complex of the chains with the induced `b`.
pub fn quotient_homology(bundle: &ParaCyclicBundle, q: &QuotientComplex, n: usize) -> Result<HomologySpace, HomologyError> {
    if n + 1 > bundle.n_max() {
        return Err(HomologyError::DegreeNotBuilt { degree: n, needed: n + 1, built: bundle.n_max() });
    }
    let f = bundle.field();
    let d_out = if n == 0 { Matrix::zeros(f, 0, q.dim(0)) } else { induce(q, &bundle.b(n), n, n - 1)? };
    let d_in = induce(q, &bundle.b(n + 1), n + 1, n)?;
    Ok(HomologySpace::of_maps(n, &d_out, &d_in))
}

/// `H^p` of the cochains, or of a δ-stable family of subspaces `sub[p]`.
pub fn cohomology(delta: &[Matrix], p: usize, sub: Option<&[Subspace]>) -> Result<HomologySpace, HomologyError> {
    if p >= delta.len() {
        return Err(HomologyError::DegreeNotBuilt { degree: p, needed: p + 1, built: delta.len() });
    }
    let mut cycles = kernel(&delta[p]);
    let mut boundaries = match p {
        0 => Subspace::zero(delta[0].field(), delta[0].cols()),
        _ => match sub {
            Some(s) => s[p - 1].image_under(&delta[p - 1]),
            None => Subspace::column_space(&delta[p - 1]),
        },
    };
    if let Some(s) = sub {
        cycles = cycles.intersection(&s[p]);
        boundaries = boundaries.intersection(&s[p]);
    }
    Ok(HomologySpace::new(p, cycles, boundaries))
}

fn induce(q: &QuotientComplex, op: &Matrix, src: usize, dst: usize) -> Result<Matrix, HomologyError> {
    q.induce(op, src, dst)
        .map_err(|e| HomologyError::NotAChainMapOnHomology { degree: src, reason: e.to_string() })
}

/// Class-coordinate matrix of `op : C_src → C_dst`, after checking that it
/// maps cycles to cycles and boundaries to boundaries.
pub fn induced_map(op: &Matrix, src: &HomologySpace, dst: &HomologySpace) -> Result<Matrix, HomologyError> {
    assert_eq!(op.cols(), src.ambient_dim());
    assert_eq!(op.rows(), dst.ambient_dim());
    for (k, z) in src.cycles.basis().iter().enumerate() {
        if !dst.cycles.contains(&op.apply(z)) {
            return Err(HomologyError::NotAChainMapOnHomology {
                degree: src.degree,
                reason: format!("cycle basis vector {k} maps to a non-cycle"),
            });
        }
    }
    for (k, z) in src.boundaries.basis().iter().enumerate() {
        if !dst.boundaries.contains(&op.apply(z)) {
            return Err(HomologyError::NotAChainMapOnHomology {
                degree: src.degree,
                reason: format!("boundary basis vector {k} maps to a non-boundary"),
            });
        }
    }
    Ok(dst.reduction.mul(&op.mul(&src.cycle_reps)))
}

/// Structure constants `entries[i][j]` = class of `xᵢ · yⱼ`.
#[derive(Clone, Debug)]
pub struct ProductTable {
    pub p: usize,
    pub q: usize,
    pub target: usize,
    pub entries: Vec<Vec<SVec>>,
}

/// Action of the `k`-th class of `H^p` on `H_n`.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub p: usize,
    pub class: usize,
    pub n: usize,
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct StructureTable {
    pub instance: String,
    pub deg_max: usize,
    /// `dim H^p` of the cochains, `p ≤ deg_max`.
    pub cohomology_dims: Vec<usize>,
    /// `dim H^p` of the normalised subcomplex `C̄•_M`, whose classes act.
    pub acting_dims: Vec<usize>,
    /// `dim H_n` of the reduced cyclic quotient, `n ≤ deg_max`.
    pub homology_dims: Vec<usize>,
    pub cup: Vec<ProductTable>,
    pub bracket: Vec<ProductTable>,
    pub cap: Vec<ActionTable>,
    pub lie: Vec<ActionTable>,
    /// `B : H_n → H_{n+1}`.
    pub connes_b: Vec<Matrix>,
    pub checks: VerificationReport,
}

/// The classes and operators the table computation needs, in one place.
struct Classes<'a> {
    fx: &'a Fixture,
    coh: Vec<HomologySpace>,
    acting: Vec<HomologySpace>,
    hom: Vec<HomologySpace>,
    deg_max: usize,
}

impl<'a> Classes<'a> {
    fn cochain(&self, p: usize, k: usize) -> Cochain {
        self.fx.cochain(p, self.coh[p].rep(k))
    }

    fn acting(&self, p: usize, k: usize) -> Cochain {
        self.fx.cochain(p, self.acting[p].rep(k))
    }

    fn cochain_class(&self, phi: &Cochain) -> Result<SVec, Counterexample> {
        self.coh[phi.degree]
            .class_of(&phi.coords)
            .ok_or_else(|| Counterexample::vector(Some(phi.degree), &phi.coords, "product of cocycles is not a cocycle"))
    }

    fn hom_dim(&self, n: i64) -> usize {
        if n < 0 || n as usize > self.deg_max {
            0
        } else {
            self.hom[n as usize].dim
        }
    }

    /// Operator `C_n → C_{n+shift}` induced on homology classes; empty outside
    /// the computed range.
    fn on_classes(&self, op: Result<Matrix, CalculusError>, n: usize, shift: i64) -> Result<Matrix, HomologyError> {
        let dst = n as i64 + shift;
        let f = self.fx.bundle.field();
        if dst < 0 || dst as usize > self.deg_max || self.hom[n].dim == 0 || self.hom[dst as usize].dim == 0 {
            return Ok(Matrix::zeros(f, self.hom_dim(dst), self.hom[n].dim));
        }
        let dst = dst as usize;
        let q = &self.fx.reduced_cyclic;
        let m = induce(q, &op?, n, dst)?;
        induced_map(&m, &self.hom[n], &self.hom[dst])
    }

    fn cap(&self, phi: &Cochain, n: usize) -> Result<Matrix, HomologyError> {
        let p = phi.degree as i64;
        let op = if p > n as i64 { Ok(Matrix::zeros(self.fx.bundle.field(), 0, 0)) } else { self.fx.op(OpTag::Cap, phi, n) };
        self.on_classes(op, n, -p)
    }

    fn lie(&self, phi: &Cochain, n: usize) -> Result<Matrix, HomologyError> {
        let p = phi.degree as i64;
        self.on_classes(self.fx.op(OpTag::Lie, phi, n), n, 1 - p)
    }

    fn connes_b(&self, n: usize) -> Result<Matrix, HomologyError> {
        self.on_classes(Ok(self.fx.bundle.connes_b_reduced(n)), n, 1)
    }
}

fn zero_like(m: &Matrix) -> Matrix {
    Matrix::zeros(m.field(), m.rows(), m.cols())
}

fn hom_err(n: usize, e: HomologyError) -> Counterexample {
    Counterexample::basis(Some(n), 0, e.to_string())
}

fn svec_eq(l: &SVec, r: &SVec, degree: usize, what: &str) -> Result<(), Counterexample> {
    if l == r {
        Ok(())
    } else {
        Err(Counterexample::vector(Some(degree), &l.sub(r), what.to_string()))
    }
}

const ANCHOR_GERST: &str = "Gerstenhaber algebra axioms on cohomology";
const ANCHOR_MODULE: &str = "Gerstenhaber module axioms on homology";
const ANCHOR_BV: &str = "BV module: L_α = B(α⌢·) − (−1)^p α⌢B(·) on classes";

/// Structure tables through `deg_max`, with every algebra, module and BV
/// axiom recorded in `checks`. Needs cochains through `deg_max + 1` and chains
/// through `deg_max + 2`.
pub fn structure_tables(fx: &Fixture, deg_max: usize, seed: u64) -> Result<StructureTable, HomologyError> {
    if fx.p_build() < deg_max + 1 {
        return Err(HomologyError::DegreeNotBuilt { degree: deg_max, needed: deg_max + 1, built: fx.p_build() });
    }
    if fx.n_build() < deg_max + 2 {
        return Err(HomologyError::DegreeNotBuilt { degree: deg_max, needed: deg_max + 2, built: fx.n_build() });
    }
    let delta = &fx.cochains.delta;
    let coh = (0..=deg_max).map(|p| cohomology(delta, p, None)).collect::<Result<Vec<_>, _>>()?;
    let acting = (0..=deg_max).map(|p| cohomology(delta, p, Some(&fx.cm_bar))).collect::<Result<Vec<_>, _>>()?;
    let hom = (0..=deg_max + 1)
        .map(|n| quotient_homology(&fx.bundle, &fx.reduced_cyclic, n))
        .collect::<Result<Vec<_>, _>>()?;
    let cl = Classes { fx, coh, acting, hom, deg_max };
    let c = fx.calc();
    let name = fx.name().to_string();
    let mut checks = VerificationReport::new();

    // cup and bracket tables
    let mut cup = Vec::new();
    let mut bracket = Vec::new();
    for p in 0..=deg_max {
        for q in 0..=deg_max - p {
            let mut entries = Vec::new();
            for i in 0..cl.coh[p].dim {
                let mut row = Vec::new();
                for j in 0..cl.coh[q].dim {
                    let x = c.cup(&cl.cochain(p, i), &cl.cochain(q, j))?;
                    row.push(cl.cochain_class(&x).map_err(|e| HomologyError::NotAChainMapOnHomology { degree: p + q, reason: e.note })?);
                }
                entries.push(row);
            }
            cup.push(ProductTable { p, q, target: p + q, entries });
        }
    }
    for p in 0..=deg_max {
        for q in 0..=deg_max {
            if p + q == 0 || p + q - 1 > deg_max {
                continue;
            }
            let mut entries = Vec::new();
            for i in 0..cl.coh[p].dim {
                let mut row = Vec::new();
                for j in 0..cl.coh[q].dim {
                    let x = c.bracket(&cl.cochain(p, i), &cl.cochain(q, j))?.expect("p + q ≥ 1");
                    row.push(cl.cochain_class(&x).map_err(|e| HomologyError::NotAChainMapOnHomology { degree: p + q - 1, reason: e.note })?);
                }
                entries.push(row);
            }
            bracket.push(ProductTable { p, q, target: p + q - 1, entries });
        }
    }
    let sign = |e: i64| fx.bundle.field().sign(e);
    let cup_of = |a: &Cochain, b: &Cochain| c.cup(a, b).map_err(|e| Counterexample::basis(Some(a.degree + b.degree), 0, e.to_string()));
    let br_of = |a: &Cochain, b: &Cochain| {
        c.bracket(a, b)
            .map_err(|e| Counterexample::basis(Some(a.degree + b.degree), 0, e.to_string()))
            .map(|x| x.expect("p + q ≥ 1"))
    };
    let tag = |what: &str, p: usize, i: usize, q: usize, j: usize| format!("{what} ({p},{i})·({q},{j})");

    // graded commutativity and associativity of ⌣
    let mut comm = Ok(());
    let mut assoc = Ok(());
    for p in 0..=deg_max {
        for q in 0..=deg_max - p {
            for i in 0..cl.coh[p].dim {
                for j in 0..cl.coh[q].dim {
                    let (a, b) = (cl.cochain(p, i), cl.cochain(q, j));
                    if comm.is_ok() {
                        comm = (|| {
                            let l = cl.cochain_class(&cup_of(&a, &b)?)?;
                            let r = cl.cochain_class(&cup_of(&b, &a)?)?.scale(&sign((p * q) as i64));
                            svec_eq(&l, &r, p + q, &tag("α⌣β = (−1)^{pq} β⌣α", p, i, q, j))
                        })();
                    }
                    for r in 0..=deg_max - p - q {
                        for k in 0..cl.coh[r].dim {
                            if assoc.is_ok() {
                                let g = cl.cochain(r, k);
                                assoc = (|| {
                                    let l = cl.cochain_class(&cup_of(&cup_of(&a, &b)?, &g)?)?;
                                    let rr = cl.cochain_class(&cup_of(&a, &cup_of(&b, &g)?)?)?;
                                    svec_eq(&l, &rr, p + q + r, &tag("(α⌣β)⌣γ = α⌣(β⌣γ)", p, i, q, j))
                                })();
                            }
                        }
                    }
                }
            }
        }
    }
    checks.record("cohomology.cup_graded_commutative", ANCHOR_GERST, &name, format!("p+q ≤ {deg_max}"), comm);
    checks.record("cohomology.cup_associative", ANCHOR_GERST, &name, format!("p+q+r ≤ {deg_max}"), assoc);

    // antisymmetry, Jacobi, Leibniz of the bracket on classes
    let mut anti = Ok(());
    let mut jacobi = Ok(());
    let mut leibniz = Ok(());
    for p in 0..=deg_max {
        for q in 0..=deg_max {
            if p + q == 0 || p + q - 1 > deg_max {
                continue;
            }
            let (sp, sq) = (p as i64 - 1, q as i64 - 1);
            for i in 0..cl.coh[p].dim {
                for j in 0..cl.coh[q].dim {
                    let (a, b) = (cl.cochain(p, i), cl.cochain(q, j));
                    if anti.is_ok() {
                        anti = (|| {
                            let l = cl.cochain_class(&br_of(&a, &b)?)?;
                            let r = cl.cochain_class(&br_of(&b, &a)?)?.scale(&-sign(sp * sq));
                            svec_eq(&l, &r, p + q - 1, &tag("{α,β} = −(−1)^{|p||q|}{β,α}", p, i, q, j))
                        })();
                    }
                    for r in 0..=deg_max {
                        if q + r == 0 || p + r == 0 || p + q + r < 2 || p + q + r - 2 > deg_max {
                            continue;
                        }
                        for k in 0..cl.coh[r].dim {
                            let g = cl.cochain(r, k);
                            if jacobi.is_ok() {
                                // {α,{β,γ}} = {{α,β},γ} + (−1)^{|p||q|}{β,{α,γ}}
                                jacobi = (|| {
                                    let l = cl.cochain_class(&br_of(&a, &br_of(&b, &g)?)?)?;
                                    let r1 = cl.cochain_class(&br_of(&br_of(&a, &b)?, &g)?)?;
                                    let r2 = cl.cochain_class(&br_of(&b, &br_of(&a, &g)?)?)?;
                                    svec_eq(&l, &r1.axpy(&sign(sp * sq), &r2), p + q + r - 2, &tag("Jacobi", p, i, q, j))
                                })();
                            }
                        }
                    }
                    // {α, β⌣γ} = {α,β}⌣γ + (−1)^{|p|q} β⌣{α,γ}
                    for r in 0..=deg_max {
                        if p + q + r < 1 || p + q + r - 1 > deg_max || p + r == 0 {
                            continue;
                        }
                        for k in 0..cl.coh[r].dim {
                            if leibniz.is_ok() {
                                let g = cl.cochain(r, k);
                                leibniz = (|| {
                                    let l = cl.cochain_class(&br_of(&a, &cup_of(&b, &g)?)?)?;
                                    let r1 = cl.cochain_class(&cup_of(&br_of(&a, &b)?, &g)?)?;
                                    let r2 = cl.cochain_class(&cup_of(&b, &br_of(&a, &g)?)?)?;
                                    svec_eq(&l, &r1.axpy(&sign(sp * q as i64), &r2), p + q + r - 1, &tag("Leibniz", p, i, q, j))
                                })();
                            }
                        }
                    }
                }
            }
        }
    }
    checks.record("cohomology.bracket_antisymmetric", ANCHOR_GERST, &name, format!("p+q−1 ≤ {deg_max}"), anti);
    checks.record("cohomology.bracket_jacobi", ANCHOR_GERST, &name, format!("p+q+r−2 ≤ {deg_max}"), jacobi);
    checks.record("cohomology.bracket_leibniz", ANCHOR_GERST, &name, format!("p+q+r−1 ≤ {deg_max}"), leibniz);

    // the class of {φ,ψ} does not depend on the representatives
    let mut invariance = Ok(());
    for p in 1..=deg_max {
        let coboundaries = Subspace::column_space(&fx.cochains.delta[p - 1]);
        let dirs = spanning(&coboundaries, 32, seed ^ p as u64);
        for q in 0..=deg_max {
            if p + q - 1 > deg_max {
                continue;
            }
            for i in 0..cl.coh[p].dim {
                for j in 0..cl.coh[q].dim {
                    let (a, b) = (cl.cochain(p, i), cl.cochain(q, j));
                    let Ok(base) = br_of(&a, &b).and_then(|x| cl.cochain_class(&x)) else {
                        continue;
                    };
                    for (d, v) in dirs.iter().enumerate() {
                        if invariance.is_err() {
                            break;
                        }
                        let a2 = fx.cochain(p, &a.coords.add(v));
                        invariance = (|| {
                            let l = cl.cochain_class(&br_of(&a2, &b)?)?;
                            svec_eq(&l, &base, p + q - 1, &format!("{{φ + δχ_{d}, ψ}} changes class ({p},{i})·({q},{j})"))
                        })();
                    }
                }
            }
        }
    }
    checks.record("cohomology.bracket_class_invariance", ANCHOR_GERST, &name, format!("p+q−1 ≤ {deg_max}"), invariance);

    // module tables
    let mut cap = Vec::new();
    let mut lie = Vec::new();
    let mut connes_b = Vec::new();
    for p in 0..=deg_max {
        for k in 0..cl.acting[p].dim {
            let phi = cl.acting(p, k);
            for n in 0..=deg_max {
                cap.push(ActionTable { p, class: k, n, matrix: cl.cap(&phi, n)? });
                lie.push(ActionTable { p, class: k, n, matrix: cl.lie(&phi, n)? });
            }
        }
    }
    for n in 0..deg_max {
        connes_b.push(cl.connes_b(n)?);
    }

    let mut dg = Ok(());
    let mut insertion = Ok(());
    let mut lie_rep = Ok(());
    let mut mixed = Ok(());
    let mut bv = Ok(());
    let mut b2 = Ok(());
    for n in 0..=deg_max {
        if n + 2 <= deg_max + 1 && b2.is_ok() && n + 1 < deg_max {
            let m = connes_b[n + 1].mul(&connes_b[n]);
            b2 = matrix_eq(&m, &zero_like(&m), n, "B² = 0 on classes");
        }
        for p in 0..=deg_max {
            for i in 0..cl.acting[p].dim {
                let a = cl.acting(p, i);
                // L_α = Bι_α − (−1)^p ι_αB, with B out of degree deg_max not computed
                if bv.is_ok() && n < deg_max && n + 1 >= p {
                    bv = (|| {
                        let l = cl.lie(&a, n).map_err(|e| hom_err(n, e))?;
                        let bi = if n >= p {
                            cl.connes_b(n - p).map_err(|e| hom_err(n, e))?.mul(&cl.cap(&a, n).map_err(|e| hom_err(n, e))?)
                        } else {
                            zero_like(&l)
                        };
                        let ib = cl.cap(&a, n + 1).map_err(|e| hom_err(n, e))?.mul(&connes_b[n]);
                        let r = bi.combine(&-sign(p as i64), &ib);
                        matrix_eq(&l, &r, n, &format!("L_α = Bι_α − (−1)^p ι_αB, α = ({p},{i})"))
                    })();
                }
                for q in 0..=deg_max - p {
                    for j in 0..cl.acting[q].dim {
                        let b = cl.acting(q, j);
                        let label = |what: &str| format!("{what}, α = ({p},{i}), β = ({q},{j}), n = {n}");
                        if dg.is_ok() && p + q <= n {
                            dg = (|| {
                                let l = cl.cap(&a, n - q).map_err(|e| hom_err(n, e))?.mul(&cl.cap(&b, n).map_err(|e| hom_err(n, e))?);
                                let r = cl.cap(&cup_of(&a, &b)?, n).map_err(|e| hom_err(n, e))?;
                                matrix_eq(&l, &r, n, &label("ι_αι_β = ι_{α⌣β}"))
                            })();
                        }
                        // [ι_ψ, L_φ] = ι_{{ψ,φ}} with ψ = b, φ = a
                        if insertion.is_ok() && p + q >= 1 && n + 1 >= p && (n + 1 - p) as i64 - q as i64 >= -1 {
                            insertion = (|| {
                                let nq = n as i64 - q as i64;
                                let mid = n + 1 - p;
                                let il = if mid <= deg_max {
                                    cl.cap(&b, mid).map_err(|e| hom_err(n, e))?.mul(&cl.lie(&a, n).map_err(|e| hom_err(n, e))?)
                                } else {
                                    return Ok(());
                                };
                                let li = if nq >= 0 {
                                    cl.lie(&a, nq as usize).map_err(|e| hom_err(n, e))?.mul(&cl.cap(&b, n).map_err(|e| hom_err(n, e))?)
                                } else {
                                    zero_like(&il)
                                };
                                let l = graded_commutator(&il, &li, q as i64, p as i64 - 1);
                                let r = cl.cap(&br_of(&b, &a)?, n).map_err(|e| hom_err(n, e))?;
                                matrix_eq(&l, &r, n, &label("[ι_β, L_α] = ι_{β,α}"))
                            })();
                        }
                        // [L_α, L_β] = L_{{α,β}}
                        if lie_rep.is_ok() && p + q >= 1 && n + 1 >= q && n + 1 - q <= deg_max {
                            lie_rep = (|| {
                                let (sp, sq) = (p as i64 - 1, q as i64 - 1);
                                let mid_b = n + 1 - q;
                                let xy = cl.lie(&a, mid_b).map_err(|e| hom_err(n, e))?.mul(&cl.lie(&b, n).map_err(|e| hom_err(n, e))?);
                                let yx = if n + 1 >= p && n + 1 - p <= deg_max {
                                    cl.lie(&b, n + 1 - p).map_err(|e| hom_err(n, e))?.mul(&cl.lie(&a, n).map_err(|e| hom_err(n, e))?)
                                } else {
                                    zero_like(&xy)
                                };
                                let l = graded_commutator(&xy, &yx, sp, sq);
                                let r = cl.lie(&br_of(&a, &b)?, n).map_err(|e| hom_err(n, e))?;
                                matrix_eq(&l, &r, n, &label("[L_α, L_β] = L_{α,β}"))
                            })();
                        }
                        // L_{α⌣β} = L_αι_β + (−1)^p ι_αL_β
                        if mixed.is_ok() && p + q >= 1 && n + 1 >= q && n + 1 - q <= deg_max {
                            mixed = (|| {
                                let l = cl.lie(&cup_of(&a, &b)?, n).map_err(|e| hom_err(n, e))?;
                                let li = if q <= n {
                                    cl.lie(&a, n - q).map_err(|e| hom_err(n, e))?.mul(&cl.cap(&b, n).map_err(|e| hom_err(n, e))?)
                                } else {
                                    zero_like(&l)
                                };
                                let il = cl.cap(&a, n + 1 - q).map_err(|e| hom_err(n, e))?.mul(&cl.lie(&b, n).map_err(|e| hom_err(n, e))?);
                                matrix_eq(&l, &li.combine(&sign(p as i64), &il), n, &label("L_{α⌣β} = L_αι_β + (−1)^p ι_αL_β"))
                            })();
                        }
                    }
                }
            }
        }
    }
    checks.record("homology.cap_action", ANCHOR_MODULE, &name, format!("n ≤ {deg_max}"), dg);
    checks.record("homology.insertion_lie_commutator", ANCHOR_MODULE, &name, format!("n ≤ {deg_max}"), insertion);
    checks.record("homology.lie_representation", ANCHOR_MODULE, &name, format!("n ≤ {deg_max}"), lie_rep);
    checks.record("homology.mixed_leibniz", ANCHOR_MODULE, &name, format!("n ≤ {deg_max}"), mixed);
    checks.record("homology.B_squared", ANCHOR_BV, &name, format!("n ≤ {deg_max}"), b2);
    checks.record("homology.bv_homotopy_formula", ANCHOR_BV, &name, format!("n < {deg_max}"), bv);

    Ok(StructureTable {
        instance: name,
        deg_max,
        cohomology_dims: cl.coh.iter().map(|h| h.dim).collect(),
        acting_dims: cl.acting.iter().map(|h| h.dim).collect(),
        homology_dims: cl.hom[..=deg_max].iter().map(|h| h.dim).collect(),
        cup,
        bracket,
        cap,
        lie,
        connes_b,
        checks,
    })
}

impl StructureTable {
    pub fn bracket_is_zero(&self) -> bool {
        self.bracket.iter().all(|t| t.entries.iter().flatten().all(|v| v.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn leftmost_pivot_complement() {
        let f = Field::Q;
        // C_1 = k³ → C_0 = 0, boundaries spanned by e₀ + e₁
        let cycles = Subspace::full(f, 3);
        let bd = Subspace::from_generators(f, 3, [SVec::from_terms(vec![(0, f.one()), (1, f.one())])]);
        let h = HomologySpace::new(1, cycles, bd);
        assert_eq!(h.dim, 2);
        assert_eq!(h.rep(0), &SVec::unit(1, f.one()));
        assert_eq!(h.rep(1), &SVec::unit(2, f.one()));
        assert_eq!(h.reduction.mul(&h.cycle_reps), Matrix::identity(f, 2));
        // e₀ ≡ −e₁
        assert_eq!(h.class_of(&SVec::unit(0, f.one())).unwrap(), SVec::unit(0, f.int(-1)));
    }

    #[test]
    fn identity_descends() {
        let f = Field::Q;
        let d = Matrix::from_i64_rows(f, &[&[1, -1]]);
        let h = HomologySpace::of_maps(1, &d, &Matrix::zeros(f, 2, 0));
        let m = induced_map(&Matrix::identity(f, 2), &h, &h).unwrap();
        assert!(m.is_identity());
        let bad = Matrix::from_i64_rows(f, &[&[1, 0], &[0, 0]]);
        assert!(matches!(induced_map(&bad, &h, &h), Err(HomologyError::NotAChainMapOnHomology { .. })));
    }

    fn dual(neg: bool, n_build: usize, p_build: usize) -> Fixture {
        use crate::algebra::{AlgebraAutomorphism, FinDimAlgebra};
        use crate::instances::build_enveloping;
        use crate::suite::fixture::InstanceData;
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let s = if neg {
            AlgebraAutomorphism::new(&a, Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]])).unwrap()
        } else {
            AlgebraAutomorphism::identity(&a)
        };
        let (h, m) = build_enveloping("dual", &a, &s);
        Fixture::build(InstanceData { name: "dual".into(), h, m, hochschild: Some((a, s)), group: None, n_build, p_build }).unwrap()
    }

    #[test]
    fn dual_numbers_tables() {
        for neg in [false, true] {
            let fx = dual(neg, 5, 4);
            let t = structure_tables(&fx, 3, 1).unwrap();
            for e in &t.checks.entries {
                assert!(e.counterexample.is_none(), "σ neg = {neg}: {e:?}");
            }
            if !neg {
                assert_eq!(t.homology_dims, vec![2, 1, 1, 1]);
            }
            eprintln!("{neg}: H^ {:?} acting {:?} H_ {:?}", t.cohomology_dims, t.acting_dims, t.homology_dims);
        }
    }
}

//! Identity checks of the calculus layer. Each check states its identity at
//! the level where it holds: on `C_•`, on `C^cyc`, on reduced chains, or on
//! the reduced cyclic quotient.

use crate::calculus::{graded_commutator, Calculus, CalculusError, SignTable};
use crate::algebra::invert;
use crate::complexes::{connes_b_oracle, powers_of_t_oracle, reduced_cochains, QuotientComplex};
use crate::hochschild::HochschildOracle;
use crate::linalg::{Matrix, SVec, Subspace};
use crate::report::{matrix_eq, Counterexample};
use crate::spaces::Cochain;

use super::fixture::{spanning, Fixture, OpTag};

pub type Check = Result<(), Counterexample>;

/// Effective ranges for one check: source chain degrees `≤ n`, cochain
/// degrees `≤ p`.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

/// Subspaces up to this dimension are iterated over a full basis; larger ones
/// are sampled by seeded random combinations.
pub const FULL_BASIS: usize = 64;

fn calc_err(n: usize, what: &str, e: CalculusError) -> Counterexample {
    Counterexample::basis(Some(n), 0, format!("{what}: {e}"))
}

fn coords_eq(l: &Cochain, r: &Cochain, what: &str) -> Check {
    if l.coords == r.coords {
        Ok(())
    } else {
        Err(Counterexample::vector(Some(l.degree), &l.coords.sub(&r.coords), format!("{what}: difference")))
    }
}

fn zeros(fx: &Fixture, rows: usize, cols: usize) -> Matrix {
    Matrix::zeros(fx.bundle.field(), rows, cols)
}

fn dim_at(fx: &Fixture, k: i64) -> usize {
    if k < 0 {
        0
    } else {
        fx.bundle.dim(k as usize)
    }
}

fn qdim(q: &QuotientComplex, k: i64) -> usize {
    if k < 0 {
        0
    } else {
        q.dim(k as usize)
    }
}

/// `op : C_src → C_dst` on the quotient, with empty spaces in negative degrees.
fn induce(q: &QuotientComplex, op: &Matrix, src: i64, dst: i64, what: &str) -> Result<Matrix, Counterexample> {
    let (rows, cols) = (qdim(q, dst), qdim(q, src));
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(op.field(), rows, cols));
    }
    q.induce(op, src as usize, dst as usize)
        .map_err(|e| Counterexample::basis(Some(src as usize), 0, format!("{what} does not descend: {e}")))
}

fn quot_eq(q: &QuotientComplex, l: &Matrix, r: &Matrix, src: i64, dst: i64, what: &str) -> Check {
    let li = induce(q, l, src, dst, what)?;
    let ri = induce(q, r, src, dst, what)?;
    matrix_eq(&li, &ri, src.max(0) as usize, what)
}

// ---- degree-aware operators (empty spaces in negative degrees) ------------

fn cap_at(fx: &Fixture, phi: &Cochain, n: i64) -> Result<Matrix, Counterexample> {
    let p = phi.degree as i64;
    if n < 0 || n - p < 0 {
        return Ok(zeros(fx, dim_at(fx, n - p), dim_at(fx, n)));
    }
    fx.op(OpTag::Cap, phi, n as usize).map_err(|e| calc_err(n as usize, "ι", e))
}

fn lie_at(fx: &Fixture, phi: &Cochain, n: i64) -> Result<Matrix, Counterexample> {
    let p = phi.degree as i64;
    if n < 0 || n - p + 1 < 0 {
        return Ok(zeros(fx, dim_at(fx, n - p + 1), dim_at(fx, n)));
    }
    fx.op(OpTag::Lie, phi, n as usize).map_err(|e| calc_err(n as usize, "L", e))
}

fn s_at(fx: &Fixture, phi: &Cochain, n: i64) -> Result<Matrix, Counterexample> {
    let p = phi.degree as i64;
    if n < 0 || n - p + 2 < 0 {
        return Ok(zeros(fx, dim_at(fx, n - p + 2), dim_at(fx, n)));
    }
    fx.op(OpTag::S, phi, n as usize).map_err(|e| calc_err(n as usize, "S", e))
}

fn b_at(fx: &Fixture, n: i64) -> Matrix {
    if n <= 0 {
        zeros(fx, 0, dim_at(fx, n))
    } else {
        fx.bundle.b(n as usize)
    }
}

/// `B = s₋₁N`, the Connes operator of the reduced complex.
fn big_b_at(fx: &Fixture, n: i64) -> Matrix {
    if n < 0 {
        zeros(fx, dim_at(fx, n + 1), 0)
    } else {
        fx.bundle.connes_b_reduced(n as usize)
    }
}

fn bullet(fx: &Fixture, phi: &Cochain, n: usize, i: usize) -> Result<Matrix, Counterexample> {
    fx.op(OpTag::Bullet(i), phi, n).map_err(|e| calc_err(n, "•ᵢ", e))
}

fn d_prime(fx: &Fixture, phi: &Cochain, n: usize) -> Result<Matrix, Counterexample> {
    bullet(fx, phi, n, n + 1 - phi.degree)
}

fn t_pow(fx: &Fixture, n: usize, k: usize) -> Matrix {
    fx.bundle.t_pow(n, k)
}

fn each_cochain(fx: &Fixture, p: usize, lim: &Limits) -> Vec<(usize, Cochain)> {
    let full = Subspace::full(fx.bundle.field(), fx.cochains.spaces[p].dim());
    spanning(&full, FULL_BASIS, lim.seed ^ p as u64)
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k, fx.cochain(p, &v)))
        .collect()
}

fn each_cm(fx: &Fixture, p: usize, lim: &Limits) -> Vec<(usize, Cochain)> {
    spanning(&fx.cm[p], FULL_BASIS, lim.seed ^ (p as u64) << 8)
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k, fx.cochain(p, &v)))
        .collect()
}

fn each_cm_bar(fx: &Fixture, p: usize, lim: &Limits) -> Vec<(usize, Cochain)> {
    spanning(&fx.cm_bar[p], FULL_BASIS, lim.seed ^ (p as u64) << 16)
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k, fx.cochain(p, &v)))
        .collect()
}

fn each_cm_cocycle(fx: &Fixture, p: usize, lim: &Limits) -> Vec<(usize, Cochain)> {
    spanning(&fx.cm_cocycles(p), FULL_BASIS, lim.seed ^ (p as u64) << 24)
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k, fx.cochain(p, &v)))
        .collect()
}

fn label(what: &str, parts: &[(&str, usize)]) -> String {
    let mut s = what.to_string();
    for (k, v) in parts {
        s.push_str(&format!(" {k}={v}"));
    }
    s
}

// ---- Gerstenhaber layer ------------------------------------------------------

/// The three associativity cases of the `∘ᵢ`.
pub fn comp_associativity(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let pm = lim.p.min(2);
    for p in 1..=pm {
        for q in 0..=pm {
            for r in 0..=pm {
                if p + q + r < 2 || p + q + r - 2 > fx.p_build() {
                    continue;
                }
                for (a, phi) in each_cochain(fx, p, lim) {
                    for (b, psi) in each_cochain(fx, q, lim) {
                        for (k, chi) in each_cochain(fx, r, lim) {
                            for i in 1..=p {
                                let pq = c.circ(&phi, &psi, i).map_err(|e| calc_err(p, "∘", e))?;
                                for j in 1..=p + q - 1 {
                                    let lhs = c.circ(&pq, &chi, j).map_err(|e| calc_err(p, "∘", e))?;
                                    let rhs = if j < i {
                                        c.circ(&c.circ(&phi, &chi, j).map_err(|e| calc_err(p, "∘", e))?, &psi, i + r - 1)
                                    } else if j < q + i {
                                        c.circ(&phi, &c.circ(&psi, &chi, j - i + 1).map_err(|e| calc_err(q, "∘", e))?, i)
                                    } else {
                                        c.circ(&c.circ(&phi, &chi, j - q + 1).map_err(|e| calc_err(p, "∘", e))?, &psi, i)
                                    }
                                    .map_err(|e| calc_err(p, "∘", e))?;
                                    coords_eq(
                                        &lhs,
                                        &rhs,
                                        &label("(φ∘ᵢψ)∘ⱼχ", &[("p", p), ("q", q), ("r", r), ("i", i), ("j", j), ("φ", a), ("ψ", b), ("χ", k)]),
                                    )?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `μ∘₁μ = μ∘₂μ` and `D_μ = m_U`.
pub fn mu_associative(fx: &Fixture, _lim: &Limits) -> Check {
    let c = fx.calc();
    let h = c.h();
    let mu = c.mu().map_err(|e| calc_err(2, "μ", e))?;
    let l = c.circ(&mu, &mu, 1).map_err(|e| calc_err(2, "∘", e))?;
    let r = c.circ(&mu, &mu, 2).map_err(|e| calc_err(2, "∘", e))?;
    coords_eq(&l, &r, "μ∘₁μ = μ∘₂μ")?;
    let dm = c.d_phi(&mu).matrix;
    let args = fx.cochains.spaces[2].args().expect("degree 2");
    let one = fx.bundle.field().one();
    let mul = Matrix::from_fn(fx.bundle.field(), h.dim_u(), args.dim(), |q| {
        let t = args.rep(q);
        h.mul(&SVec::unit(t[0], one.clone()), &SVec::unit(t[1], one.clone()))
    });
    matrix_eq(&dm, &mul, 2, "D_μ = m_U")
}

/// `(μ∘₁φ)∘_{p+1}ψ = φ⌣ψ = (μ∘₂ψ)∘₁φ`.
pub fn cup_via_mu(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let mu = c.mu().map_err(|e| calc_err(2, "μ", e))?;
    let pm = lim.p.min(2);
    for p in 0..=pm {
        for q in 0..=pm {
            if p + q > fx.p_build() {
                continue;
            }
            for (a, phi) in each_cochain(fx, p, lim) {
                let m1 = c.circ(&mu, &phi, 1).map_err(|e| calc_err(p, "∘", e))?;
                for (b, psi) in each_cochain(fx, q, lim) {
                    let cup = c.cup(&phi, &psi).map_err(|e| calc_err(p + q, "⌣", e))?;
                    let l = c.circ(&m1, &psi, p + 1).map_err(|e| calc_err(p + q, "∘", e))?;
                    let m2 = c.circ(&mu, &psi, 2).map_err(|e| calc_err(q, "∘", e))?;
                    let r = c.circ(&m2, &phi, 1).map_err(|e| calc_err(p + q, "∘", e))?;
                    let tag = [("p", p), ("q", q), ("φ", a), ("ψ", b)];
                    coords_eq(&l, &cup, &label("(μ∘₁φ)∘_{p+1}ψ = φ⌣ψ", &tag))?;
                    coords_eq(&r, &cup, &label("(μ∘₂ψ)∘₁φ = φ⌣ψ", &tag))?;
                }
            }
        }
    }
    Ok(())
}

/// `δφ = {μ, φ}`.
pub fn delta_is_bracket_with_mu(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let mu = c.mu().map_err(|e| calc_err(2, "μ", e))?;
    for p in 0..=lim.p.min(fx.p_build() - 1) {
        for (a, phi) in each_cochain(fx, p, lim) {
            let d = c.delta(&phi).map_err(|e| calc_err(p, "δ", e))?;
            let br = c.bracket(&mu, &phi).map_err(|e| calc_err(p, "{,}", e))?.expect("degree ≥ 1");
            coords_eq(&br, &d, &label("{μ,φ} = δφ", &[("p", p), ("φ", a)]))?;
        }
    }
    Ok(())
}

/// `ι_φ ι_ψ = ι_{φ⌣ψ}`.
pub fn cap_dg_action(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let pm = lim.p.min(2);
    for p in 0..=pm {
        for q in 0..=pm {
            for (a, phi) in each_cochain(fx, p, lim) {
                for (b, psi) in each_cochain(fx, q, lim) {
                    let cup = c.cup(&phi, &psi).map_err(|e| calc_err(p + q, "⌣", e))?;
                    for n in p + q..=lim.n {
                        let l = cap_at(fx, &phi, (n - q) as i64)?.mul(&cap_at(fx, &psi, n as i64)?);
                        let r = cap_at(fx, &cup, n as i64)?;
                        matrix_eq(&l, &r, n, &label("ι_φι_ψ = ι_{φ⌣ψ}", &[("p", p), ("q", q), ("φ", a), ("ψ", b)]))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[b, ι_φ] = ι_{δφ}`.
pub fn cap_differential(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    for p in 0..=lim.p.min(2).min(fx.p_build() - 1) {
        for (a, phi) in each_cochain(fx, p, lim) {
            let d = c.delta(&phi).map_err(|e| calc_err(p, "δ", e))?;
            for n in p + 1..=lim.n {
                let ni = n as i64;
                let bi = b_at(fx, ni - p as i64).mul(&cap_at(fx, &phi, ni)?);
                let ib = cap_at(fx, &phi, ni - 1)?.mul(&b_at(fx, ni));
                let l = graded_commutator(&bi, &ib, 1, p as i64);
                matrix_eq(&l, &cap_at(fx, &d, ni)?, n, &label("[b,ι_φ] = ι_{δφ}", &[("p", p), ("φ", a)]))?;
            }
        }
    }
    Ok(())
}

// ---- comp module ------------------------------------------------------------

/// The three cases of `φ •ᵢ (ψ •ⱼ y)`.
pub fn comp_module(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let pm = lim.p.min(2);
    for p in 0..=pm {
        for q in 0..=pm {
            for (a, phi) in each_cochain(fx, p, lim) {
                for (b, psi) in each_cochain(fx, q, lim) {
                    for n in 0..=lim.n {
                        let (ni, pi, qi) = (n as i64, p as i64, q as i64);
                        let mid = ni - SignTable::deg_shift(qi);
                        for j in 1..=mid.max(0) as usize {
                            let inner = bullet(fx, &psi, n, j)?;
                            let hi = mid - SignTable::deg_shift(pi);
                            for i in 1..=hi.max(0) as usize {
                                let lhs = bullet(fx, &phi, mid as usize, i)?.mul(&inner);
                                let (ii, ji) = (i as i64, j as i64);
                                let rhs = if ji < ii {
                                    let x = bullet(fx, &phi, n, (ii + qi - 1) as usize)?;
                                    bullet(fx, &psi, (ni - pi + 1) as usize, j)?.mul(&x)
                                } else if ji - (pi - 1) <= ii {
                                    let comp = c.circ(&phi, &psi, j - i + 1).map_err(|e| calc_err(n, "∘", e))?;
                                    bullet(fx, &comp, n, i)?
                                } else {
                                    let x = bullet(fx, &phi, n, i)?;
                                    bullet(fx, &psi, (ni - pi + 1) as usize, (ji - pi + 1) as usize)?.mul(&x)
                                };
                                matrix_eq(
                                    &lhs,
                                    &rhs,
                                    n,
                                    &label("φ•ᵢ(ψ•ⱼy)", &[("p", p), ("q", q), ("i", i), ("j", j), ("φ", a), ("ψ", b)]),
                                )?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(φ⌣ψ)•ᵢ = μ•ᵢ(φ•ᵢ(ψ•_{i+p}))` and `φ•ᵢ(ψ⌢x) = ψ⌢(φ•ᵢx)`.
pub fn cup_and_cap_insertions(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let mu = c.mu().map_err(|e| calc_err(2, "μ", e))?;
    let pm = lim.p.min(2);
    for p in 0..=pm {
        for q in 0..=pm {
            if p + q > fx.p_build() {
                continue;
            }
            for (a, phi) in each_cochain(fx, p, lim) {
                for (b, psi) in each_cochain(fx, q, lim) {
                    let cup = c.cup(&phi, &psi).map_err(|e| calc_err(p + q, "⌣", e))?;
                    for n in 0..=lim.n {
                        let hi = n as i64 - (p + q) as i64 + 1;
                        for i in 1..=hi.max(0) as usize {
                            let tag = [("p", p), ("q", q), ("i", i), ("φ", a), ("ψ", b)];
                            let k1 = n + 1 - q;
                            let k2 = k1 + 1 - p;
                            let r = bullet(fx, &mu, k2, i)?
                                .mul(&bullet(fx, &phi, k1, i)?)
                                .mul(&bullet(fx, &psi, n, i + p)?);
                            matrix_eq(&bullet(fx, &cup, n, i)?, &r, n, &label("(φ⌣ψ)•ᵢ", &tag))?;
                            let l = bullet(fx, &phi, n - q, i)?.mul(&cap_at(fx, &psi, n as i64)?);
                            let r = cap_at(fx, &psi, (n + 1 - p) as i64)?.mul(&bullet(fx, &phi, n, i)?);
                            matrix_eq(&l, &r, n, &label("φ•ᵢ(ψ⌢x) = ψ⌢(φ•ᵢx)", &tag))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `d₀D′ = ι_φ`, `dᵢD′ = D′d_{i+|p|}`, `sⱼD′ = D′s_{j+|p|}` for `p < n`.
pub fn simplicial_dprime(fx: &Fixture, lim: &Limits) -> Check {
    let b = &fx.bundle;
    for p in 0..=lim.p.min(2) {
        for (a, phi) in each_cochain(fx, p, lim) {
            for n in p + 1..=lim.n {
                let k = n + 1 - p;
                let dp = d_prime(fx, &phi, n)?;
                let tag = [("p", p), ("φ", a)];
                matrix_eq(&b.face(k, 0).mul(&dp), &cap_at(fx, &phi, n as i64)?, n, &label("d₀D′ = ι_φ", &tag))?;
                let dp_lower = d_prime(fx, &phi, n - 1)?;
                for i in 2..=k {
                    let l = b.face(k, i).mul(&dp);
                    let r = dp_lower.mul(b.face(n, i + p - 1));
                    matrix_eq(&l, &r, n, &label("dᵢD′ = D′d_{i+|p|}", &[("p", p), ("i", i), ("φ", a)]))?;
                }
                let dp_upper = d_prime(fx, &phi, n + 1)?;
                for j in 1..=k {
                    let l = b.degeneracy(k, j).mul(&dp);
                    let r = dp_upper.mul(b.degeneracy(n, j + p - 1));
                    matrix_eq(&l, &r, n, &label("sⱼD′ = D′s_{j+|p|}", &[("p", p), ("j", j), ("φ", a)]))?;
                }
            }
        }
    }
    Ok(())
}

/// `φ•ᵢ(t x) = t(φ•_{i+1}x)` for `i ≤ n − p`, and `φ•_{n−|p|}(t x) = t(ι_φ s₋₁ x)`.
pub fn insertion_cyclic(fx: &Fixture, lim: &Limits) -> Check {
    let b = &fx.bundle;
    for p in 0..=lim.p.min(2) {
        for (a, phi) in each_cochain(fx, p, lim) {
            for n in p..=lim.n {
                let k = n + 1 - p;
                for i in 1..=n - p {
                    let l = bullet(fx, &phi, n, i)?.mul(b.t(n));
                    let r = b.t(k).mul(&bullet(fx, &phi, n, i + 1)?);
                    matrix_eq(&l, &r, n, &label("φ•ᵢt = tφ•_{i+1}", &[("p", p), ("i", i), ("φ", a)]))?;
                }
                let l = bullet(fx, &phi, n, k)?.mul(b.t(n));
                let r = b.t(k).mul(&cap_at(fx, &phi, n as i64 + 1)?).mul(&b.s_minus1(n));
                matrix_eq(&l, &r, n, &label("D′t = tι_φs₋₁", &[("p", p), ("φ", a)]))?;
            }
        }
    }
    Ok(())
}

/// On `C^cyc` for `φ, ψ ∈ C•_M`: `•ᵢ = t^{n−|p|−i}D′t^{i+p}`, its commutation
/// with `ι_ψ`, `D′ = tι_φs₋₁tⁿ` and `ι_φs₋₁ = t^{n−|p|}D′t`.
pub fn cyclic_insertions(fx: &Fixture, lim: &Limits) -> Check {
    let q = &fx.cyclic;
    let b = &fx.bundle;
    for p in 0..=lim.p.min(2) {
        for (a, phi) in each_cm(fx, p, lim) {
            for n in p..=lim.n {
                let k = n + 1 - p;
                let (ni, ki) = (n as i64, k as i64);
                let dp = d_prime(fx, &phi, n)?;
                for i in 1..=k {
                    let r = t_pow(fx, k, k - i).mul(&dp).mul(&t_pow(fx, n, i + p));
                    quot_eq(q, &bullet(fx, &phi, n, i)?, &r, ni, ki, &label("•ᵢ = t^{n−|p|−i}D′t^{i+p}", &[("p", p), ("i", i), ("φ", a)]))?;
                }
                let r = b.t(k).mul(&cap_at(fx, &phi, ni + 1)?).mul(&b.s_minus1(n)).mul(&t_pow(fx, n, n));
                quot_eq(q, &dp, &r, ni, ki, &label("D′ = tι_φs₋₁tⁿ", &[("p", p), ("φ", a)]))?;
                let l = cap_at(fx, &phi, ni + 1)?.mul(&b.s_minus1(n));
                let r = t_pow(fx, k, k).mul(&dp).mul(b.t(n));
                quot_eq(q, &l, &r, ni, ki, &label("ι_φs₋₁ = t^{n−|p|}D′t", &[("p", p), ("φ", a)]))?;
                for qd in 0..=lim.p.min(2) {
                    if p + qd > n {
                        continue;
                    }
                    for (bi, psi) in each_cm(fx, qd, lim) {
                        let m = n - qd;
                        let dpm = d_prime(fx, &phi, m)?;
                        let cap_n = cap_at(fx, &psi, ni)?;
                        let cap_k = cap_at(fx, &psi, ki)?;
                        for i in 1..=m + 1 - p {
                            let l = t_pow(fx, m + 1 - p, m + 1 - p - i).mul(&dpm).mul(&t_pow(fx, m, i + p)).mul(&cap_n);
                            let r = cap_k.mul(&t_pow(fx, k, k - i)).mul(&dp).mul(&t_pow(fx, n, i + p));
                            quot_eq(
                                q,
                                &l,
                                &r,
                                ni,
                                (m + 1 - p) as i64,
                                &label("t…D′_φt…ι_ψ = ι_ψt…D′_φt…", &[("p", p), ("q", qd), ("i", i), ("φ", a), ("ψ", bi)]),
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// For a cocycle `ψ ∈ C^q_M` with `0 < q < n`:
/// `d₁D′_ψ = Σᵢ (−1)^{i+q} D′_ψdᵢ + (−1)^q d₁tD′_ψtⁿ` on `C^cyc`.
pub fn cocycle_face_relation(fx: &Fixture, lim: &Limits) -> Check {
    let f = fx.bundle.field();
    let b = &fx.bundle;
    for q in 1..=lim.p.min(2) {
        for (a, psi) in each_cm_cocycle(fx, q, lim) {
            for n in q + 1..=lim.n {
                let k = n + 1 - q;
                let dp = d_prime(fx, &psi, n)?;
                let l = b.face(k, 1).mul(&dp);
                let dp_lower = d_prime(fx, &psi, n - 1)?;
                let mut r = b.face(k, 1).mul(b.t(k)).mul(&dp).mul(&t_pow(fx, n, n)).scale(&f.sign(q as i64));
                for i in 1..=q {
                    r = r.combine(&f.sign((i + q) as i64), &dp_lower.mul(b.face(n, i)));
                }
                quot_eq(&fx.cyclic, &l, &r, n as i64, (n - q) as i64, &label("d₁D′_ψ (cocycle ψ)", &[("q", q), ("ψ", a)]))?;
            }
        }
    }
    Ok(())
}

// ---- Lie layer on C^cyc -------------------------------------------------------

/// `L_μ = −b` on `C^cyc`.
pub fn lie_mu_is_minus_b(fx: &Fixture, lim: &Limits) -> Check {
    let mu = fx.calc().mu().map_err(|e| calc_err(2, "μ", e))?;
    for n in 1..=lim.n {
        let ni = n as i64;
        quot_eq(&fx.cyclic, &lie_at(fx, &mu, ni)?, &fx.bundle.b(n).neg(), ni, ni - 1, "L_μ = −b")?;
    }
    Ok(())
}

fn bracket_or_zero(c: &Calculus, phi: &Cochain, psi: &Cochain) -> Result<Option<Cochain>, Counterexample> {
    c.bracket(phi, psi).map_err(|e| calc_err(phi.degree + psi.degree, "{,}", e))
}

/// `[L_φ, L_ψ] = L_{{φ,ψ}}` on `C^cyc` for `φ, ψ ∈ C•_M`.
pub fn lie_bracket(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let pm = lim.p.min(2);
    for p in 0..=pm {
        for q in 0..=pm {
            let phis = each_cm(fx, p, lim);
            let psis = each_cm(fx, q, lim);
            for (a, phi) in &phis {
                for (b, psi) in &psis {
                    let br = bracket_or_zero(&c, phi, psi)?;
                    for n in 0..=lim.n {
                        let ni = n as i64;
                        let (sp, sq) = (p as i64 - 1, q as i64 - 1);
                        let dst = ni - sp - sq;
                        let xy = lie_at(fx, phi, ni - sq)?.mul(&lie_at(fx, psi, ni)?);
                        let yx = lie_at(fx, psi, ni - sp)?.mul(&lie_at(fx, phi, ni)?);
                        let l = graded_commutator(&xy, &yx, sp, sq);
                        let r = match &br {
                            Some(x) => lie_at(fx, x, ni)?,
                            None => zeros(fx, dim_at(fx, dst), dim_at(fx, ni)),
                        };
                        quot_eq(&fx.cyclic, &l, &r, ni, dst, &label("[L_φ,L_ψ] = L_{φ,ψ}", &[("p", p), ("q", q), ("n", n), ("φ", *a), ("ψ", *b)]))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `[b, L_φ] + L_{δφ} = 0` on `C^cyc` for `φ ∈ C•_M`.
pub fn lie_differential(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    for p in 0..=lim.p.min(2) {
        for (a, phi) in each_cm(fx, p, lim) {
            let d = c.delta(&phi).map_err(|e| calc_err(p, "δ", e))?;
            for n in 0..=lim.n {
                let ni = n as i64;
                let sp = p as i64 - 1;
                let bl = b_at(fx, ni - sp).mul(&lie_at(fx, &phi, ni)?);
                let lb = lie_at(fx, &phi, ni - 1)?.mul(&b_at(fx, ni));
                let l = graded_commutator(&bl, &lb, 1, sp).add(&lie_at(fx, &d, ni)?);
                let z = zeros(fx, l.rows(), l.cols());
                quot_eq(&fx.cyclic, &l, &z, ni, ni - sp - 1, &label("[b,L_φ] + L_{δφ} = 0", &[("p", p), ("n", n), ("φ", a)]))?;
            }
        }
    }
    Ok(())
}

// ---- BV layer on reduced complexes --------------------------------------------

fn bs_commutator(fx: &Fixture, phi: &Cochain, n: i64) -> Result<Matrix, Counterexample> {
    let p = phi.degree as i64;
    let bs = big_b_at(fx, n - p + 2).mul(&s_at(fx, phi, n)?);
    let sb = s_at(fx, phi, n + 1)?.mul(&big_b_at(fx, n));
    Ok(graded_commutator(&bs, &sb, 1, p - 2))
}

/// `[B, S_φ] = 0` on reduced chains for normalised `φ ∈ C̄•_M`.
pub fn b_s_commute(fx: &Fixture, lim: &Limits) -> Check {
    let q = &fx.reduced;
    for p in 0..=lim.p.min(3) {
        for (a, phi) in each_cm_bar(fx, p, lim) {
            for n in 0..=lim.n {
                let ni = n as i64;
                let l = bs_commutator(fx, &phi, ni)?;
                let z = zeros(fx, l.rows(), l.cols());
                quot_eq(q, &l, &z, ni, ni - p as i64 + 3, &label("[B,S_φ] = 0", &[("p", p), ("n", n), ("φ", a)]))?;
            }
        }
    }
    Ok(())
}

/// `L_φ = [B + b, S_φ + ι_φ] − ι_{δφ} − S_{δφ}` on the reduced cyclic quotient,
/// compared in each output degree: `n−p+1` carries `[B,ι] + [b,S] − S_{δφ}`,
/// `n−p−1` carries `[b,ι] − ι_{δφ}`, and `n−p+3` carries `[B,S]`.
pub fn cartan_homotopy(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    let q = &fx.reduced_cyclic;
    for p in 0..=lim.p.min(3) {
        if p + 1 > fx.p_build() {
            continue;
        }
        for (a, phi) in each_cm_bar(fx, p, lim) {
            let d = c.delta(&phi).map_err(|e| calc_err(p, "δ", e))?;
            let pi = p as i64;
            for n in 0..=lim.n {
                let ni = n as i64;
                let tag = [("p", p), ("n", n), ("φ", a)];
                let bi = big_b_at(fx, ni - pi).mul(&cap_at(fx, &phi, ni)?);
                let ib = cap_at(fx, &phi, ni + 1)?.mul(&big_b_at(fx, ni));
                let bs = b_at(fx, ni - pi + 2).mul(&s_at(fx, &phi, ni)?);
                let sb = s_at(fx, &phi, ni - 1)?.mul(&b_at(fx, ni));
                let rhs = graded_commutator(&bi, &ib, 1, pi)
                    .add(&graded_commutator(&bs, &sb, 1, pi - 2))
                    .sub(&s_at(fx, &d, ni)?);
                quot_eq(q, &lie_at(fx, &phi, ni)?, &rhs, ni, ni - pi + 1, &label("L_φ = [B,ι_φ] + [b,S_φ] − S_{δφ}", &tag))?;
                let low_l = graded_commutator(
                    &b_at(fx, ni - pi).mul(&cap_at(fx, &phi, ni)?),
                    &cap_at(fx, &phi, ni - 1)?.mul(&b_at(fx, ni)),
                    1,
                    pi,
                );
                quot_eq(q, &low_l, &cap_at(fx, &d, ni)?, ni, ni - pi - 1, &label("[b,ι_φ] = ι_{δφ}", &tag))?;
                let high = bs_commutator(fx, &phi, ni)?;
                let z = zeros(fx, high.rows(), high.cols());
                quot_eq(q, &high, &z, ni, ni - pi + 3, &label("[B,S_φ] = 0", &tag))?;
            }
        }
    }
    Ok(())
}

/// `[L_φ, B] = 0` on the reduced cyclic quotient.
pub fn lie_commutes_b(fx: &Fixture, lim: &Limits) -> Check {
    for p in 0..=lim.p.min(3) {
        for (a, phi) in each_cm_bar(fx, p, lim) {
            let sp = p as i64 - 1;
            for n in 0..=lim.n {
                let ni = n as i64;
                let lb = lie_at(fx, &phi, ni + 1)?.mul(&big_b_at(fx, ni));
                let bl = big_b_at(fx, ni - sp).mul(&lie_at(fx, &phi, ni)?);
                let l = graded_commutator(&lb, &bl, sp, 1);
                let z = zeros(fx, l.rows(), l.cols());
                quot_eq(&fx.reduced_cyclic, &l, &z, ni, ni - sp + 1, &label("[L_φ,B] = 0", &[("p", p), ("n", n), ("φ", a)]))?;
            }
        }
    }
    Ok(())
}

// ---- closed forms ---------------------------------------------------------------

/// Closed forms of `tⁱ` and `B` for SaYD coefficients.
pub fn sayd_t_and_b(fx: &Fixture, lim: &Limits) -> Check {
    let b = &fx.bundle;
    for n in 1..=lim.n {
        for i in 1..=n {
            let o = powers_of_t_oracle(b, n, i).map_err(|e| Counterexample::basis(Some(n), 0, e.to_string()))?;
            matrix_eq(&o, &b.t_pow(n, i), n, &format!("closed form of t^{i}"))?;
        }
    }
    for n in 0..lim.n {
        let o = connes_b_oracle(b, n).map_err(|e| Counterexample::basis(Some(n), 0, e.to_string()))?;
        quot_eq(&fx.reduced, &o, &b.connes_b_reduced(n), n as i64, n as i64 + 1, "closed form of B")?;
        quot_eq(&fx.reduced, &b.connes_b(n), &b.connes_b_reduced(n), n as i64, n as i64 + 1, "B = s₋₁N on reduced chains")?;
    }
    Ok(())
}

/// SaYD closed forms of `L_φ` and `S_φ` against the generic operators.
pub fn sayd_lie_and_s(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    for p in 0..=lim.p.min(2) {
        for (a, phi) in each_cochain(fx, p, lim) {
            for n in p..=lim.n {
                let tag = [("p", p), ("n", n), ("φ", a)];
                let o = c.lie_sayd_oracle(&phi, n).map_err(|e| calc_err(n, "closed-form L", e))?;
                matrix_eq(&o, &lie_at(fx, &phi, n as i64)?, n, &label("closed form of L_φ", &tag))?;
                let o = c.s_sayd_oracle(&phi, n).map_err(|e| calc_err(n, "closed-form S", e))?;
                matrix_eq(&o, &s_at(fx, &phi, n as i64)?, n, &label("closed form of S_φ", &tag))?;
            }
        }
    }
    Ok(())
}

/// Two-part form of `L_φ` for 1-cochains in `C¹_M`, and the cocycle form, on `C^cyc`.
pub fn lie_one_cochain_forms(fx: &Fixture, lim: &Limits) -> Check {
    let c = fx.calc();
    for (a, phi) in each_cm(fx, 1, lim) {
        for n in 1..=lim.n {
            let o = c.lie_one_cochain_oracle(&phi, n).map_err(|e| calc_err(n, "1-cochain form", e))?;
            quot_eq(&fx.cyclic, &lie_at(fx, &phi, n as i64)?, &o, n as i64, n as i64, &label("L_φ for a 1-cochain", &[("n", n), ("φ", a)]))?;
        }
    }
    for (a, phi) in each_cm_cocycle(fx, 1, lim) {
        for n in 0..=lim.n {
            let o = c.lie_one_cocycle_oracle(&phi, n).map_err(|e| calc_err(n, "1-cocycle form", e))?;
            quot_eq(&fx.cyclic, &lie_at(fx, &phi, n as i64)?, &o, n as i64, n as i64, &label("L_φ for a 1-cocycle", &[("n", n), ("φ", a)]))?;
        }
    }
    Ok(())
}

// ---- plain Hochschild oracle ----------------------------------------------------

struct Plain<'a> {
    fx: &'a Fixture,
    o: HochschildOracle,
    iso: Vec<Matrix>,
    inv: Vec<Matrix>,
}

impl<'a> Plain<'a> {
    fn new(fx: &'a Fixture) -> Result<Plain<'a>, Counterexample> {
        let (a, s) = fx.data.hochschild.as_ref().ok_or_else(|| Counterexample::basis(None, 0, "not a Hochschild instance"))?;
        let o = HochschildOracle::new(a, s.matrix());
        let mut iso = Vec::new();
        let mut inv = Vec::new();
        for n in 0..=fx.n_build() {
            let i = o.chain_iso(fx.bundle.chains(n));
            let j = invert(&i).ok_or_else(|| Counterexample::basis(Some(n), 0, "plain chain map is not invertible"))?;
            iso.push(i);
            inv.push(j);
        }
        Ok(Plain { fx, o, iso, inv })
    }

    /// Pulls a plain operator `A^{⊗(n+1)} → A^{⊗(k+1)}` back to `C_n → C_k`.
    fn pull(&self, op: &Matrix, n: usize, k: usize) -> Matrix {
        self.inv[k].mul(op).mul(&self.iso[n])
    }

    fn tilde(&self, phi: &Cochain) -> Matrix {
        self.o.tilde(&self.fx.cochains.spaces[phi.degree], phi)
    }
}

/// The plain chain map intertwines faces, `t` and `b`, and `T = σ ⊗ ⋯ ⊗ σ`.
pub fn hochschild_structure(fx: &Fixture, lim: &Limits) -> Check {
    let pl = Plain::new(fx)?;
    let b = &fx.bundle;
    for n in 0..=lim.n {
        matrix_eq(&pl.pull(&pl.o.t(n), n, n), b.t(n), n, "plain t")?;
        matrix_eq(&pl.pull(&pl.o.big_t(n), n, n), &b.big_t(n), n, "T = σ ⊗ ⋯ ⊗ σ")?;
        if n >= 1 {
            for i in 0..=n {
                matrix_eq(&pl.pull(&pl.o.face(n, i), n, n - 1), b.face(n, i), n, &format!("plain d{i}"))?;
            }
            matrix_eq(&pl.pull(&pl.o.b(n), n, n - 1), &b.b(n), n, "plain b")?;
        }
    }
    Ok(())
}

/// Plain `B` and `ι_φ̃` agree with the generic operators on reduced chains
/// for normalised `φ`.
pub fn hochschild_b_and_cap(fx: &Fixture, lim: &Limits) -> Check {
    let pl = Plain::new(fx)?;
    for n in 0..lim.n.min(fx.n_build() - 1) {
        let ni = n as i64;
        quot_eq(&fx.reduced, &pl.pull(&pl.o.connes_b(n), n, n + 1), &fx.bundle.connes_b_reduced(n), ni, ni + 1, "plain B")?;
    }
    let normalised = |p: usize| Subspace::intersection(&Subspace::full(fx.bundle.field(), fx.cochains.spaces[p].dim()), &reduced_cochains(&fx.data.h, &fx.cochains.spaces[p]));
    for p in 0..=lim.p.min(2) {
        for (k, v) in spanning(&normalised(p), FULL_BASIS, lim.seed ^ 0x1c).into_iter().enumerate() {
            let phi = fx.cochain(p, &v);
            let t = pl.tilde(&phi);
            if !pl.o.is_normalised(&t, p) {
                return Err(Counterexample::vector(Some(p), &phi.coords, "normalised cochain with unnormalised φ̃"));
            }
            for n in p..=lim.n {
                let (ni, pi) = (n as i64, p as i64);
                let g = cap_at(fx, &phi, ni)?;
                quot_eq(&fx.reduced, &pl.pull(&pl.o.cap(&t, p, n), n, n - p), &g, ni, ni - pi, &label("plain ι_φ", &[("p", p), ("n", n), ("φ", k)]))?;
            }
        }
    }
    Ok(())
}

/// Plain `L_φ̃` and `S_φ̃` agree with the generic operators on the reduced
/// cyclic quotient for normalised `φ ∈ C̄•_M`.
pub fn hochschild_lie_and_s(fx: &Fixture, lim: &Limits) -> Check {
    let pl = Plain::new(fx)?;
    for p in 0..=lim.p.min(2) {
        for (k, phi) in each_cm_bar(fx, p, lim) {
            let t = pl.tilde(&phi);
            for n in p..=lim.n {
                let (ni, pi) = (n as i64, p as i64);
                let tag = [("p", p), ("n", n), ("φ", k)];
                let l = pl.pull(&pl.o.lie(&t, p, n), n, n + 1 - p);
                quot_eq(&fx.reduced_cyclic, &l, &lie_at(fx, &phi, ni)?, ni, ni - pi + 1, &label("plain L_φ", &tag))?;
                if n + 2 - p <= fx.n_build() {
                    let s = pl.pull(&pl.o.s_op(&t, p, n), n, n + 2 - p);
                    quot_eq(&fx.reduced_cyclic, &s, &s_at(fx, &phi, ni)?, ni, ni - pi + 2, &label("plain S_φ", &tag))?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraAutomorphism, FinDimAlgebra};
    use crate::linalg::Field;
    use crate::instances::build_enveloping;
    use crate::suite::fixture::InstanceData;

    fn dual(neg: bool, n_build: usize, p_build: usize) -> Fixture {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let s = if neg {
            AlgebraAutomorphism::new(&a, Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]])).unwrap()
        } else {
            AlgebraAutomorphism::identity(&a)
        };
        let (h, m) = build_enveloping("dual", &a, &s);
        Fixture::build(InstanceData { name: "dual".into(), h, m, hochschild: Some((a, s)), group: None, n_build, p_build }).unwrap()
    }

    fn run(name: &str, f: fn(&Fixture, &Limits) -> Check, fx: &Fixture, n: usize, p: usize) {
        let lim = Limits { n, p, seed: 7 };
        if let Err(c) = f(fx, &lim) {
            panic!("{name}: {c:?}");
        }
    }

    #[test]
    fn gerstenhaber_layer() {
        let fx = dual(false, 3, 4);
        run("assoc", comp_associativity, &fx, 2, 2);
        run("mu", mu_associative, &fx, 2, 2);
        run("cup", cup_via_mu, &fx, 2, 2);
        run("delta", delta_is_bracket_with_mu, &fx, 2, 3);
        run("cap", cap_dg_action, &fx, 3, 2);
        run("bcap", cap_differential, &fx, 3, 2);
    }

    #[test]
    fn module_layer() {
        for neg in [false, true] {
            let fx = dual(neg, 5, 3);
            run("comp module", comp_module, &fx, 3, 2);
            run("insertions", cup_and_cap_insertions, &fx, 3, 2);
            run("simplicial", simplicial_dprime, &fx, 3, 2);
            run("naumburg", insertion_cyclic, &fx, 3, 2);
            run("cyclic", cyclic_insertions, &fx, 3, 2);
            run("cocycle", cocycle_face_relation, &fx, 3, 2);
        }
    }

    #[test]
    fn hochschild_oracle() {
        for neg in [false, true] {
            let fx = dual(neg, 5, 3);
            run("structure", hochschild_structure, &fx, 4, 2);
            run("B, ι", hochschild_b_and_cap, &fx, 4, 2);
            run("L, S", hochschild_lie_and_s, &fx, 3, 2);
        }
    }

    #[test]
    fn lie_and_bv_layer() {
        for neg in [false, true] {
            let fx = dual(neg, 6, 4);
            run("L_mu", lie_mu_is_minus_b, &fx, 4, 2);
            run("[L,L]", lie_bracket, &fx, 3, 2);
            run("[b,L]", lie_differential, &fx, 4, 2);
            run("[B,S]", b_s_commute, &fx, 3, 2);
            run("cartan", cartan_homotopy, &fx, 3, 2);
            run("[L,B]", lie_commutes_b, &fx, 4, 2);
            run("one", lie_one_cochain_forms, &fx, 4, 1);
            if !neg {
                run("sayd tb", sayd_t_and_b, &fx, 4, 2);
                run("sayd ls", sayd_lie_and_s, &fx, 4, 2);
            }
        }
    }
}


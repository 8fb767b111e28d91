//! Concrete left Hopf algebroids: the enveloping algebra `A^e = A ⊗ A^op`
//! with coefficients in `A_σ`, and Hopf algebras over the ground field.

use crate::algebra::{AlgebraAutomorphism, AlgebraError, FinDimAlgebra, Group};
use crate::hopf::{HopfAlgebroid, ModuleComodule};
use crate::linalg::{Field, Matrix, SVec};
use crate::tensor::outer;

/// `A^e` over `A` with `s(a) = a ⊗ 1`, `t(b) = 1 ⊗ b`, `ε(a ⊗ b) = ab`,
/// `Δ(a ⊗ b) = (a ⊗ 1) ⊗ (1 ⊗ b)`, `(a ⊗ b)_+ ⊗ (a ⊗ b)_- = (a ⊗ 1) ⊗ (b ⊗ 1)`,
/// and the module-comodule `A_σ`: `m · (a ⊗ b) = b m σ(a)`, `m ↦ (m ⊗ 1) ⊗ 1`.
pub fn build_enveloping(
    name: &str,
    a: &FinDimAlgebra,
    sigma: &AlgebraAutomorphism,
) -> (HopfAlgebroid, ModuleComodule) {
    let field = a.field();
    let d = a.dim();
    let one = field.one();
    let total = a.tensor(&a.opposite());
    let du = d * d;
    let unit = a.unit().clone();
    // U-basis index of e_i ⊗ e_j is i·d + j
    let s = move |i: usize| SVec::from_terms(unit.iter().map(|(k, c)| (i * d + k, c.clone())).collect());
    let unit2 = a.unit().clone();
    let t = move |j: usize| SVec::from_terms(unit2.iter().map(|(k, c)| (k * d + j, c.clone())).collect());
    let eta = Matrix::identity(field, du);
    let counit = Matrix::from_fn(field, d, du, |u| a.mul_basis(u / d, u % d).clone());
    let h = HopfAlgebroid::new(
        name,
        a.clone(),
        total,
        eta,
        counit,
        |u| outer(&one, &[s(u / d), t(u % d)]),
        |u| outer(&one, &[s(u / d), s(u % d)]),
    );
    let action: Vec<Matrix> = (0..du)
        .map(|u| {
            let (x, y) = (u / d, u % d);
            Matrix::from_fn(field, d, d, |m| {
                a.mul(&a.mul(&a.basis_vec(y), &a.basis_vec(m)), sigma.matrix().column(x))
            })
        })
        .collect();
    let one_a = a.unit().clone();
    let m = ModuleComodule::new(
        format!("{name}/A_sigma"),
        &h,
        a.labels().to_vec(),
        action,
        |m| outer(&field.one(), &[s(m), one_a.clone()]),
    );
    (h, m)
}

/// Group algebra `kG` over `A = k` with `Δg = g ⊗ g`, `ε(g) = 1`,
/// `g_+ ⊗ g_- = g ⊗ g⁻¹`, and trivial coefficients `k`.
pub fn build_group_algebra(
    name: &str,
    field: Field,
    table: &[Vec<usize>],
) -> Result<(HopfAlgebroid, ModuleComodule), AlgebraError> {
    let g = Group::new(table.to_vec())?;
    let base = FinDimAlgebra::ground(field);
    let total = FinDimAlgebra::group_algebra(field, table)?;
    let n = g.order();
    let one = field.one();
    let e = |i: usize| SVec::unit(i, one.clone());
    let eta = Matrix::from_columns(field, n, vec![e(g.identity())]);
    let counit = Matrix::from_fn(field, 1, n, |_| e(0));
    let h = HopfAlgebroid::new(
        name,
        base,
        total,
        eta,
        counit,
        |u| outer(&one, &[e(u), e(u)]),
        |u| outer(&one, &[e(u), e(g.inverse(u))]),
    );
    let action = (0..n).map(|_| Matrix::identity(field, 1)).collect();
    let m = ModuleComodule::new(format!("{name}/k"), &h, vec!["1".into()], action, |_| {
        outer(&one, &[e(g.identity()), e(0)])
    });
    Ok((h, m))
}

/// Replaces the translation map by `u ↦ u ⊗ 1`, which violates the
/// Schauenburg relations whenever `U ≠ A`.
pub fn tamper_translation(h: &HopfAlgebroid) -> HopfAlgebroid {
    let one = h.field().one();
    let one_u = h.one_u();
    let q = h.uu_aop();
    let tr = Matrix::from_fn(h.field(), q.dim(), h.dim_u(), |u| {
        q.project(&outer(&one, &[h.basis_u(u), one_u.clone()]))
    });
    h.with_translation(tr).with_name(format!("{}/tampered-translation", h.name))
}

/// Replaces the counit by zero.
pub fn tamper_counit(h: &HopfAlgebroid) -> HopfAlgebroid {
    h.with_counit(Matrix::zeros(h.field(), h.dim_a(), h.dim_u()))
        .with_name(format!("{}/tampered-counit", h.name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{check_bialgebroid, check_left_hopf, check_module_comodule};
    use crate::linalg::Field;

    fn sigma_neg(a: &FinDimAlgebra) -> AlgebraAutomorphism {
        let f = a.field();
        AlgebraAutomorphism::new(a, Matrix::from_i64_rows(f, &[&[1, 0], &[0, -1]])).unwrap()
    }

    #[test]
    fn enveloping_axioms_hold() {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        for sigma in [AlgebraAutomorphism::identity(&a), sigma_neg(&a)] {
            let (h, m) = build_enveloping("dual", &a, &sigma);
            let mut r = check_bialgebroid(&h);
            r.extend(check_left_hopf(&h));
            let (rm, flags) = check_module_comodule(&h, &m);
            r.extend(rm);
            let fails: Vec<_> = r.failures().collect();
            assert!(fails.is_empty(), "{fails:#?}");
            assert_eq!(flags.is_ayd, sigma.is_identity());
            assert_eq!(flags.is_stable, sigma.is_identity());
        }
    }

    #[test]
    fn group_algebra_axioms_hold() {
        for (f, n) in [(Field::prime(2).unwrap(), 2), (Field::Q, 3)] {
            let g = Group::cyclic(n);
            let (h, m) = build_group_algebra("cyclic", f, g.table()).unwrap();
            let mut r = check_bialgebroid(&h);
            r.extend(check_left_hopf(&h));
            let (rm, flags) = check_module_comodule(&h, &m);
            r.extend(rm);
            let fails: Vec<_> = r.failures().collect();
            assert!(fails.is_empty(), "{fails:#?}");
            assert!(flags.is_ayd && flags.is_stable);
        }
    }

    #[test]
    fn tampered_translation_is_caught() {
        let a = FinDimAlgebra::dual_numbers(Field::Q);
        let (h, _) = build_enveloping("dual", &a, &AlgebraAutomorphism::identity(&a));
        let r = check_left_hopf(&tamper_translation(&h));
        assert!(r.failures().any(|e| e.identity.starts_with("schauenburg")));
    }
}

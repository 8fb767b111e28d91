//! Randomised invariants: exact linear algebra, gradings, Hopf structure of
//! parametrised instances, and the calculus identities on random twists.

use proptest::prelude::*;

use hopfcalc::algebra::{eigenspace_grading, AlgebraAutomorphism, FinDimAlgebra, Group};
use hopfcalc::complexes::build_paracyclic;
use hopfcalc::homology::structure_tables;
use hopfcalc::hopf::{check_bialgebroid, check_left_hopf};
use hopfcalc::instances::{build_enveloping, build_group_algebra};
use hopfcalc::linalg::{kernel, quotient_by, rref_kernel_image, Field, Matrix, SVec, Scalar, Subspace};
use hopfcalc::suite::checks::{self, Limits};
use hopfcalc::suite::fixture::{Fixture, InstanceData};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(Field::Fp(5))]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect();
            Matrix::from_rows(f, &rows)
        })
    })
}

fn rational_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-7i64..=7, 1i64..=5)
}

/// `σ(1) = 1`, `σ(x) = c·x` on `ℚ[x]/(x²)`, `c ≠ 0`.
fn dual_twist(num: i64, den: i64) -> (FinDimAlgebra, AlgebraAutomorphism) {
    let f = Field::Q;
    let a = FinDimAlgebra::dual_numbers(f);
    let c = f.parse(&format!("{num}/{den}")).expect("rational");
    let m = Matrix::from_rows(f, &[vec![f.one(), f.zero()], vec![f.zero(), c]]);
    let s = AlgebraAutomorphism::new(&a, m).expect("x ↦ cx is an automorphism");
    (a, s)
}

fn twisted_fixture(num: i64, den: i64, n_build: usize, p_build: usize) -> Fixture {
    let (a, s) = dual_twist(num, den);
    let (h, m) = build_enveloping("twisted", &a, &s);
    Fixture::build(InstanceData { name: "twisted".into(), h, m, hochschild: Some((a, s)), group: None, n_build, p_build })
        .expect("fixture builds")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix_strategy()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity_and_kernel(m in matrix_strategy()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn canonical_bases_are_fixed_points(m in matrix_strategy()) {
        let (rank, ker, img) = rref_kernel_image(&m);
        prop_assert_eq!(rank, img.dim());
        let again = Subspace::from_generators(ker.field(), ker.ambient_dim(), ker.basis().iter().cloned());
        prop_assert_eq!(&again, &ker);
        let again = Subspace::from_generators(img.field(), img.ambient_dim(), img.basis().iter().cloned());
        prop_assert_eq!(&again, &img);
    }

    #[test]
    fn quotient_projection_splits_section(m in matrix_strategy()) {
        let q = quotient_by(Subspace::column_space(&m));
        let id = Matrix::identity(m.field(), q.quotient_dim());
        prop_assert_eq!(q.projection().mul(&q.section()), id);
        for v in q.relations().basis() {
            prop_assert!(q.project(v).is_zero());
        }
    }

    #[test]
    fn scalar_display_round_trips(f in field_strategy(), n in -50i64..50, d in 1i64..20) {
        if let Ok(x) = f.parse(&format!("{n}/{d}")) {
            prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn scalar_distributivity(f in field_strategy(), a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        let (a, b, c) = (f.int(a), f.int(b), f.int(c));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gradings_are_direct_and_multiplicative((num, den) in rational_strategy()) {
        prop_assume!(num != 0);
        let (a, s) = dual_twist(num, den);
        let g = eigenspace_grading(&a, &s).expect("diagonal σ is semisimple");
        let total: usize = g.components.iter().map(|c| c.dim()).sum();
        prop_assert_eq!(total, a.dim());
        for i in 0..g.components.len() {
            for j in i + 1..g.components.len() {
                prop_assert_eq!(g.components[i].intersection(&g.components[j]).dim(), 0);
            }
        }
        prop_assert!(g.check_multiplicative(&a));
    }

    #[test]
    fn group_algebra_gradings((n, k) in (2usize..6, 1usize..6), p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        // g ↦ gᵏ is an automorphism of ℤ/n when gcd(k, n) = 1
        prop_assume!(num_gcd(n, k) == 1);
        let f = Field::prime(p).unwrap();
        let gr = Group::cyclic(n);
        let a = FinDimAlgebra::group_algebra(f, gr.table()).unwrap();
        let m = Matrix::from_fn(f, n, n, |j| SVec::unit((j * k) % n, f.one()));
        let s = AlgebraAutomorphism::new(&a, m).unwrap();
        if let Ok(g) = eigenspace_grading(&a, &s) {
            let total: usize = g.components.iter().map(|c| c.dim()).sum();
            prop_assert_eq!(total, n);
            prop_assert!(g.check_multiplicative(&a));
        }
    }

    #[test]
    fn enveloping_instances_are_left_hopf((num, den) in rational_strategy()) {
        prop_assume!(num != 0);
        let (a, s) = dual_twist(num, den);
        let (h, m) = build_enveloping("twisted", &a, &s);
        prop_assert!(check_bialgebroid(&h).passed());
        let r = check_left_hopf(&h);
        prop_assert!(r.passed(), "{:?}", r.failures().next());
        // dim C_n = d^{n+1}
        let bundle = build_paracyclic(&h, &m, 3).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(bundle.dim(n), 2usize.pow(n as u32 + 1));
        }
    }

    #[test]
    fn group_algebras_are_left_hopf(n in 1usize..5, p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let f = Field::prime(p).unwrap();
        let (h, _) = build_group_algebra("g", f, Group::cyclic(n).table()).unwrap();
        prop_assert!(check_bialgebroid(&h).passed());
        prop_assert!(check_left_hopf(&h).passed());
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn calculus_on_random_twists((num, den) in rational_strategy(), seed in any::<u64>()) {
        prop_assume!(num != 0);
        let fx = twisted_fixture(num, den, 6, 4);
        let lim = Limits { n: 3, p: 2, seed };
        for (what, f) in [
            ("cap action", checks::cap_dg_action as fn(&Fixture, &Limits) -> checks::Check),
            ("[L, L]", checks::lie_bracket),
            ("[b, L]", checks::lie_differential),
            ("Cartan", checks::cartan_homotopy),
            ("[B, S]", checks::b_s_commute),
            ("Hochschild L and S", checks::hochschild_lie_and_s),
        ] {
            let r = f(&fx, &lim);
            prop_assert!(r.is_ok(), "{what}: {:?}", r.err());
        }
    }

    #[test]
    fn class_tables_ignore_representatives((num, den) in rational_strategy(), seed in any::<u64>()) {
        prop_assume!(num != 0);
        let fx = twisted_fixture(num, den, 4, 3);
        let t = structure_tables(&fx, 2, seed).unwrap();
        prop_assert!(t.checks.passed(), "{:?}", t.checks.failures().next());
    }
}

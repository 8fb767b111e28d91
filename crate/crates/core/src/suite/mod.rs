//! The verification suite: every identity of the calculus, run against every
//! built instance, with one report entry per identity and instance.
//!
//! Identities are tested at the level where they hold: on chains, on the
//! cyclic coinvariants, on reduced complexes, or on (co)homology. An instance
//! whose axioms fail gets every downstream identity marked untested, and a
//! configuration too small for an identity's nominal range gets the missing
//! degrees marked untested.

pub mod checks;
pub mod fixture;

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{check_algebra, AlgebraAutomorphism, FinDimAlgebra, Group};
use crate::calculus::HomogeneousSplit;
use crate::complexes::{build_bar_unchecked, cyclic_coinvariants, hat_b, hat_delta, quasi_cyclic_split};
use crate::hochschild::{group_cohomology_dims, group_homology_dims, hochschild_homology_dims};
use crate::homology::{cohomology, homology, structure_tables, StructureTable};
use crate::hopf::{check_bialgebroid, check_left_hopf, check_module_comodule};
use crate::instances::{build_enveloping, build_group_algebra, tamper_translation};
use crate::linalg::{Field, Matrix};
use crate::report::{all_ok, matrix_eq, Counterexample, VerificationReport};
use crate::spaces::{hat_chain_iso, hat_chain_space, hat_cochain_iso, hat_cochain_space};

use checks::{Check, Limits};
use fixture::{Fixture, InstanceData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest source chain degree tested.
    pub n_max: usize,
    /// Highest cochain degree tested.
    pub p_max: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { n_max: 5, p_max: 3, seed: 0 }
    }
}

/// How an instance is built; the data is materialised per configuration.
#[derive(Clone, Debug)]
pub enum InstanceSpec {
    Enveloping { name: String, a: FinDimAlgebra, sigma: AlgebraAutomorphism },
    GroupAlgebra { name: String, field: Field, table: Vec<Vec<usize>> },
    /// An enveloping instance whose translation map is replaced by `u ↦ u ⊗ 1`.
    TamperedTranslation { name: String, a: FinDimAlgebra, sigma: AlgebraAutomorphism },
}

impl InstanceSpec {
    pub fn name(&self) -> &str {
        match self {
            InstanceSpec::Enveloping { name, .. }
            | InstanceSpec::GroupAlgebra { name, .. }
            | InstanceSpec::TamperedTranslation { name, .. } => name,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            InstanceSpec::Enveloping { a, .. } | InstanceSpec::TamperedTranslation { a, .. } => a.field(),
            InstanceSpec::GroupAlgebra { field, .. } => *field,
        }
    }

    /// Chain degrees beyond this are too large to build at desk scale.
    fn chain_cap(&self) -> usize {
        let d = match self {
            InstanceSpec::Enveloping { a, .. } | InstanceSpec::TamperedTranslation { a, .. } => a.dim(),
            InstanceSpec::GroupAlgebra { table, .. } => table.len(),
        };
        match d {
            0..=2 => 8,
            3 => 8,
            _ => 4,
        }
    }

    pub fn data(&self, config: &Config) -> Result<InstanceData, String> {
        let n_build = (config.n_max + 3).min(self.chain_cap());
        let p_build = (config.p_max + 1).max(4).min(self.chain_cap());
        match self {
            InstanceSpec::Enveloping { name, a, sigma } => {
                let (h, m) = build_enveloping(name, a, sigma);
                Ok(InstanceData { name: name.clone(), h, m, hochschild: Some((a.clone(), sigma.clone())), group: None, n_build, p_build })
            }
            InstanceSpec::TamperedTranslation { name, a, sigma } => {
                let (h, m) = build_enveloping(name, a, sigma);
                let h = tamper_translation(&h).with_name(name.clone());
                Ok(InstanceData { name: name.clone(), h, m, hochschild: Some((a.clone(), sigma.clone())), group: None, n_build, p_build })
            }
            InstanceSpec::GroupAlgebra { name, field, table } => {
                let g = Group::new(table.clone()).map_err(|e| e.to_string())?;
                let (h, m) = build_group_algebra(name, *field, table).map_err(|e| e.to_string())?;
                Ok(InstanceData { name: name.clone(), h, m, hochschild: None, group: Some(g), n_build, p_build })
            }
        }
    }
}

fn dual_sigma(neg: bool) -> (FinDimAlgebra, AlgebraAutomorphism) {
    let a = FinDimAlgebra::dual_numbers(Field::Q);
    let s = if neg {
        AlgebraAutomorphism::new(&a, Matrix::from_i64_rows(Field::Q, &[&[1, 0], &[0, -1]])).expect("x ↦ −x is an automorphism")
    } else {
        AlgebraAutomorphism::identity(&a)
    };
    (a, s)
}

/// Dual numbers with `σ = id` and `σ(x) = −x`, `kℤ/2` over `F₂`, `kℤ/3` over `ℚ`.
pub fn default_instances() -> Vec<InstanceSpec> {
    let (a, id) = dual_sigma(false);
    let (_, neg) = dual_sigma(true);
    let f2 = Field::prime(2).expect("2 is prime");
    vec![
        InstanceSpec::Enveloping { name: "dual_numbers_sigma_id".into(), a: a.clone(), sigma: id },
        InstanceSpec::Enveloping { name: "dual_numbers_sigma_neg".into(), a, sigma: neg },
        InstanceSpec::GroupAlgebra { name: "group_z2_f2".into(), field: f2, table: Group::cyclic(2).table().to_vec() },
        InstanceSpec::GroupAlgebra { name: "group_z3_q".into(), field: Field::Q, table: Group::cyclic(3).table().to_vec() },
    ]
}

pub fn tampered_instance() -> InstanceSpec {
    let (a, sigma) = dual_sigma(false);
    InstanceSpec::TamperedTranslation { name: "dual_numbers_broken_translation".into(), a, sigma }
}

type CheckFn = fn(&Fixture, &Limits) -> Check;

/// A calculus-level identity with its nominal range and the extra chain
/// degrees its intermediate operators need above the source degree.
struct CalcIdentity {
    id: &'static str,
    anchor: &'static str,
    n_hi: usize,
    p_hi: usize,
    margin: usize,
    run: CheckFn,
    applies: fn(&Fixture) -> Result<(), &'static str>,
}

fn always(_: &Fixture) -> Result<(), &'static str> {
    Ok(())
}

fn sayd_only(fx: &Fixture) -> Result<(), &'static str> {
    if fx.is_sayd() {
        Ok(())
    } else {
        Err("coefficients are not SaYD")
    }
}

fn hochschild_only(fx: &Fixture) -> Result<(), &'static str> {
    if fx.data.hochschild.is_some() {
        Ok(())
    } else {
        Err("not an enveloping-algebra instance")
    }
}

const CALC: &[CalcIdentity] = &[
    CalcIdentity { id: "gerstenhaber.comp_associativity", anchor: "associativity cases of the partial compositions ∘ᵢ", n_hi: 0, p_hi: 2, margin: 0, run: checks::comp_associativity, applies: always },
    CalcIdentity { id: "gerstenhaber.mu_associative", anchor: "μ∘₁μ = μ∘₂μ and D_μ = m_U", n_hi: 0, p_hi: 2, margin: 0, run: checks::mu_associative, applies: always },
    CalcIdentity { id: "gerstenhaber.cup_via_mu", anchor: "(μ∘₁φ)∘_{p+1}ψ = φ⌣ψ = (μ∘₂ψ)∘₁φ", n_hi: 0, p_hi: 2, margin: 0, run: checks::cup_via_mu, applies: always },
    CalcIdentity { id: "gerstenhaber.delta_is_bracket", anchor: "δφ = {μ, φ}", n_hi: 0, p_hi: 3, margin: 0, run: checks::delta_is_bracket_with_mu, applies: always },
    CalcIdentity { id: "cap.dg_action", anchor: "ι_φι_ψ = ι_{φ⌣ψ}", n_hi: 4, p_hi: 2, margin: 0, run: checks::cap_dg_action, applies: always },
    CalcIdentity { id: "cap.differential", anchor: "[b, ι_φ] = ι_{δφ}", n_hi: 4, p_hi: 2, margin: 0, run: checks::cap_differential, applies: always },
    CalcIdentity { id: "comp_module.insertion_cases", anchor: "comp-module law for φ•ᵢ(ψ•ⱼy)", n_hi: 4, p_hi: 2, margin: 2, run: checks::comp_module, applies: always },
    CalcIdentity { id: "comp_module.cup_and_cap", anchor: "(φ⌣ψ)•ᵢ = μ•ᵢ(φ•ᵢ(ψ•_{i+p})) and φ•ᵢ(ψ⌢x) = ψ⌢(φ•ᵢx)", n_hi: 4, p_hi: 2, margin: 2, run: checks::cup_and_cap_insertions, applies: always },
    CalcIdentity { id: "insertion.simplicial", anchor: "d₀D′ = ι, dᵢD′ = D′d_{i+|p|}, sⱼD′ = D′s_{j+|p|}", n_hi: 4, p_hi: 2, margin: 2, run: checks::simplicial_dprime, applies: always },
    CalcIdentity { id: "insertion.cyclic_shift", anchor: "φ•ᵢ(tx) = t(φ•_{i+1}x) and D′t = tι_φs₋₁", n_hi: 4, p_hi: 2, margin: 1, run: checks::insertion_cyclic, applies: always },
    CalcIdentity { id: "insertion.cyclic_quotient", anchor: "insertions as t-conjugates of D′ on the cyclic coinvariants", n_hi: 4, p_hi: 2, margin: 1, run: checks::cyclic_insertions, applies: always },
    CalcIdentity { id: "insertion.cocycle_face", anchor: "d₁D′_ψ for a cocycle ψ on the cyclic coinvariants", n_hi: 4, p_hi: 2, margin: 0, run: checks::cocycle_face_relation, applies: always },
    CalcIdentity { id: "lie.mu_is_minus_b", anchor: "L_μ = −b on the cyclic coinvariants", n_hi: 4, p_hi: 0, margin: 0, run: checks::lie_mu_is_minus_b, applies: always },
    CalcIdentity { id: "lie.bracket_representation", anchor: "[L_φ, L_ψ] = L_{{φ,ψ}} on the cyclic coinvariants", n_hi: 4, p_hi: 2, margin: 2, run: checks::lie_bracket, applies: always },
    CalcIdentity { id: "lie.differential", anchor: "[b, L_φ] + L_{δφ} = 0 on the cyclic coinvariants", n_hi: 4, p_hi: 2, margin: 1, run: checks::lie_differential, applies: always },
    CalcIdentity { id: "lie.one_cochain_forms", anchor: "explicit Lie derivative of 1-cochains and 1-cocycles", n_hi: 4, p_hi: 1, margin: 0, run: checks::lie_one_cochain_forms, applies: always },
    CalcIdentity { id: "bv.B_S_commute", anchor: "[B, S_φ] = 0 on reduced chains", n_hi: 5, p_hi: 3, margin: 3, run: checks::b_s_commute, applies: always },
    CalcIdentity { id: "bv.cartan_homotopy", anchor: "L_φ = [B + b, S_φ + ι_φ] − ι_{δφ} − S_{δφ} on the reduced cyclic quotient", n_hi: 5, p_hi: 3, margin: 3, run: checks::cartan_homotopy, applies: always },
    CalcIdentity { id: "bv.lie_commutes_B", anchor: "[L_φ, B] = 0 on the reduced cyclic quotient", n_hi: 5, p_hi: 3, margin: 2, run: checks::lie_commutes_b, applies: always },
    CalcIdentity { id: "oracle.sayd_t_and_B", anchor: "closed forms of tⁱ and B for SaYD coefficients", n_hi: 5, p_hi: 0, margin: 0, run: checks::sayd_t_and_b, applies: sayd_only },
    CalcIdentity { id: "oracle.sayd_lie_and_S", anchor: "closed forms of L_φ and S_φ for SaYD coefficients", n_hi: 4, p_hi: 2, margin: 2, run: checks::sayd_lie_and_s, applies: sayd_only },
    CalcIdentity { id: "oracle.hochschild_structure", anchor: "plain Hochschild faces, t, b and T = σ ⊗ ⋯ ⊗ σ", n_hi: 4, p_hi: 0, margin: 0, run: checks::hochschild_structure, applies: hochschild_only },
    CalcIdentity { id: "oracle.hochschild_B_and_cap", anchor: "plain Hochschild B and ι_φ on reduced chains", n_hi: 4, p_hi: 2, margin: 0, run: checks::hochschild_b_and_cap, applies: hochschild_only },
    CalcIdentity { id: "oracle.hochschild_lie_and_S", anchor: "plain Hochschild L_φ and S_φ on the reduced cyclic quotient", n_hi: 4, p_hi: 2, margin: 1, run: checks::hochschild_lie_and_s, applies: hochschild_only },
];

/// Every identity the suite reports, in report order.
pub const IDENTITY_IDS: &[&str] = &[
    "algebra.associativity",
    "algebra.unit",
    "bialgebroid.eta",
    "takeuchi.coproduct",
    "coproduct.coassociative",
    "counit.coproduct",
    "counit.action",
    "coproduct.multiplicative",
    "schauenburg.takeuchi_membership",
    "schauenburg.plus_delta_minus",
    "schauenburg.delta_plus_minus",
    "schauenburg.plus_coassociative",
    "schauenburg.minus_coassociative",
    "schauenburg.anti_multiplicative",
    "schauenburg.plus_times_minus",
    "schauenburg.counit_minus",
    "schauenburg.source_target",
    "galois.inverse",
    "module.right_action",
    "takeuchi.coaction",
    "comodule.coassociative",
    "comodule.counit",
    "ayd.condition_evaluated",
    "ayd.stability_evaluated",
    "simplicial.identities",
    "paracyclic.relations",
    "paracyclic.t_central",
    "chain.b_squared",
    "cochain.delta_squared",
    "bar.bprime_squared",
    "bar.counit",
    "bar.coassociative",
    "bar.leibniz",
    "bar.homotopy",
    "mixed.bB_plus_Bb",
    "mixed.B_squared",
    "cyclic.induced_t_cyclic",
    "cyclic.b_squared",
    "cyclic.degeneracies_vanish",
    "cyclic.B_squared",
    "cyclic.bB_plus_Bb",
    "hat.iso_round_trip",
    "hat.delta_intertwiner",
    "hat.b_intertwiner",
    "gerstenhaber.comp_associativity",
    "gerstenhaber.mu_associative",
    "gerstenhaber.cup_via_mu",
    "gerstenhaber.delta_is_bracket",
    "cap.dg_action",
    "cap.differential",
    "comp_module.insertion_cases",
    "comp_module.cup_and_cap",
    "insertion.simplicial",
    "insertion.cyclic_shift",
    "insertion.cyclic_quotient",
    "insertion.cocycle_face",
    "lie.mu_is_minus_b",
    "lie.bracket_representation",
    "lie.differential",
    "lie.one_cochain_forms",
    "bv.B_S_commute",
    "bv.cartan_homotopy",
    "bv.lie_commutes_B",
    "oracle.sayd_t_and_B",
    "oracle.sayd_lie_and_S",
    "oracle.hochschild_structure",
    "oracle.hochschild_B_and_cap",
    "oracle.hochschild_lie_and_S",
    "semisimple.quasi_cyclic_split",
    "semisimple.cm_homogeneous",
    "homology.oracle_dims",
    "cohomology.cup_graded_commutative",
    "cohomology.cup_associative",
    "cohomology.bracket_antisymmetric",
    "cohomology.bracket_jacobi",
    "cohomology.bracket_leibniz",
    "cohomology.bracket_class_invariance",
    "cohomology.bracket_vanishes_cocommutative",
    "homology.cap_action",
    "homology.insertion_lie_commutator",
    "homology.lie_representation",
    "homology.mixed_leibniz",
    "homology.B_squared",
    "homology.bv_homotopy_formula",
];

/// Anchors of identities recorded outside the calculus table.
fn anchor_of(id: &str) -> &'static str {
    if let Some(c) = CALC.iter().find(|c| c.id == id) {
        return c.anchor;
    }
    match id {
        "simplicial.identities" => "simplicial identities of faces and degeneracies",
        "paracyclic.relations" => "para-cyclic relations between t, faces and degeneracies",
        "paracyclic.t_central" => "T = t^{n+1} commutes with all structure maps",
        "chain.b_squared" => "b² = 0",
        "cochain.delta_squared" => "δ² = 0",
        "bar.bprime_squared" => "(b′)² = 0",
        "bar.counit" | "bar.coassociative" | "bar.leibniz" => "the bar resolution is a DG coalgebra",
        "bar.homotopy" => "contracting homotopy of the bar resolution",
        "mixed.bB_plus_Bb" => "bB + Bb = id − T",
        "mixed.B_squared" => "B² for a para-cyclic module",
        "cyclic.induced_t_cyclic" | "cyclic.b_squared" | "cyclic.degeneracies_vanish" | "cyclic.B_squared"
        | "cyclic.bB_plus_Bb" => "mixed complex on the reduced cyclic coinvariants",
        "hat.iso_round_trip" | "hat.delta_intertwiner" | "hat.b_intertwiner" => {
            "Hom over U and M ⊗ over U of the bar resolution versus the simplicial complexes"
        }
        "semisimple.quasi_cyclic_split" => "C_n = ker(id − T) ⊕ im(id − T) for semisimple σ",
        "semisimple.cm_homogeneous" => "C•_M equals the homogeneous characterisation for semisimple σ",
        "homology.oracle_dims" => "homology dimensions against the plain rank oracle",
        "cohomology.bracket_vanishes_cocommutative" => "the bracket vanishes on cohomology of a cocommutative Hopf algebra",
        id if id.starts_with("cohomology.") => "Gerstenhaber algebra axioms on cohomology",
        "homology.B_squared" | "homology.bv_homotopy_formula" => "BV module: L_α = B(α⌢·) − (−1)^p α⌢B(·) on classes",
        id if id.starts_with("homology.") => "Gerstenhaber module axioms on homology",
        _ => "plumbing",
    }
}

/// Records one calculus identity, splitting off degrees beyond what the
/// configuration and the built instance allow.
fn run_calc(fx: &Fixture, c: &CalcIdentity, config: &Config) -> VerificationReport {
    let mut r = VerificationReport::new();
    let name = fx.name();
    if let Err(why) = (c.applies)(fx) {
        r.untested(c.id, c.anchor, name, format!("not applicable: {why}"));
        return r;
    }
    let n_room = fx.n_build().saturating_sub(c.margin);
    let n = c.n_hi.min(config.n_max).min(n_room);
    let p = c.p_hi.min(config.p_max).min(fx.p_build());
    let lim = Limits { n, p, seed: config.seed };
    r.record(c.id, c.anchor, name, format!("n ≤ {n}, p ≤ {p}"), (c.run)(fx, &lim));
    if n < c.n_hi {
        r.untested(c.id, c.anchor, name, format!("n = {}..={}", n + 1, c.n_hi));
    }
    if p < c.p_hi {
        r.untested(c.id, c.anchor, name, format!("p = {}..={}", p + 1, c.p_hi));
    }
    r
}

/// Algebra, bialgebroid, left Hopf and module-comodule axioms; `true` when all hold.
pub fn axioms(data: &InstanceData) -> (VerificationReport, bool) {
    let name = data.name.as_str();
    let mut r = VerificationReport::new();
    let mut alg = check_algebra(data.h.total(), name);
    alg.extend(check_algebra(data.h.base(), name));
    // one entry per algebra axiom covering both U and A
    for id in ["algebra.associativity", "algebra.unit"] {
        let res = all_ok(alg.find(id).map(|e| e.counterexample.clone().map_or(Ok(()), Err)));
        r.record(id, "plumbing", name, "U and A", res);
    }
    r.extend(check_bialgebroid(&data.h));
    r.extend(check_left_hopf(&data.h));
    let (mc, _) = check_module_comodule(&data.h, &data.m);
    r.extend(mc);
    for e in r.entries.iter_mut() {
        e.instance = name.to_string();
    }
    let ok = r.passed();
    (r, ok)
}

fn zero_check(m: &Matrix, n: usize, what: &str) -> Check {
    matrix_eq(m, &Matrix::zeros(m.field(), m.rows(), m.cols()), n, what)
}

fn complex_entries(fx: &Fixture, config: &Config) -> VerificationReport {
    let name = fx.name();
    let mut r = VerificationReport::new();
    let n_top = config.n_max.min(fx.n_build());
    let bundle = &fx.bundle;
    for (id, res) in bundle.relation_checks() {
        r.record(id, anchor_of(id), name, format!("n ≤ {}", fx.n_build()), res);
    }
    let p_top = config.p_max.min(fx.p_build());
    let delta = &fx.cochains.delta;
    let dd = all_ok((1..delta.len()).map(|p| zero_check(&delta[p].mul(&delta[p - 1]), p - 1, "δ² = 0")));
    r.record("cochain.delta_squared", anchor_of("cochain.delta_squared"), name, format!("p ≤ {}", delta.len()), dd);

    let bar_top = 3.min(config.n_max);
    let bar = build_bar_unchecked(&fx.data.h, bar_top + 1);
    for (id, res) in bar.dg_coalgebra_checks() {
        r.record(id, anchor_of(id), name, format!("n ≤ {}", bar_top + 1), res);
    }
    let hom = all_ok((0..=bar_top).map(|n| bar.homotopy_check(n)));
    r.record("bar.homotopy", anchor_of("bar.homotopy"), name, format!("n ≤ {bar_top}"), hom);

    let mixed_top = 4.min(config.n_max).min(fx.n_build() - 2);
    let (mut mixed, mut b2) = (Ok(()), Ok(()));
    for n in 0..=mixed_top {
        let (m, b) = bundle.mixed_checks(n);
        if mixed.is_ok() {
            mixed = m;
        }
        if b2.is_ok() {
            b2 = b;
        }
    }
    r.record("mixed.bB_plus_Bb", anchor_of("mixed.bB_plus_Bb"), name, format!("n ≤ {mixed_top}"), mixed);
    r.record("mixed.B_squared", anchor_of("mixed.B_squared"), name, format!("n ≤ {mixed_top}"), b2);

    match cyclic_coinvariants(bundle) {
        Ok(cq) => {
            for (id, res) in cq.checks() {
                r.record(id, anchor_of(id), name, format!("n ≤ {}", fx.n_build()), res);
            }
        }
        Err(e) => {
            for id in ["cyclic.induced_t_cyclic", "cyclic.b_squared", "cyclic.degeneracies_vanish", "cyclic.B_squared", "cyclic.bB_plus_Bb"] {
                r.record(id, anchor_of(id), name, "all", Err(Counterexample::basis(None, 0, e.to_string())));
            }
        }
    }

    // hat isomorphisms and intertwiners
    let h = &fx.data.h;
    let m = &fx.data.m;
    let hat_top = 3.min(n_top);
    let hat_p = 3.min(p_top).min(fx.p_build() - 1);
    let mut round = Ok(());
    let mut dint = Ok(());
    let mut bint = Ok(());
    let chat: Vec<_> = (0..=hat_top).map(|n| hat_chain_space(h, m, n)).collect();
    let ciso: Vec<_> = (0..=hat_top).map(|n| hat_chain_iso(h, m, &chat[n], bundle.chains(n))).collect();
    for n in 0..=hat_top {
        if round.is_ok() && !ciso[n].round_trips() {
            round = Err(Counterexample::basis(Some(n), 0, "chain isomorphism does not round-trip"));
        }
        if n >= 1 && bint.is_ok() {
            let lhs = ciso[n - 1].forward.mul(&hat_b(h, &chat[n], &chat[n - 1]));
            let rhs = bundle.b(n).scale(&bundle.field().sign(n as i64)).mul(&ciso[n].forward);
            bint = matrix_eq(&lhs, &rhs, n, "hat b intertwines (−1)ⁿ b");
        }
    }
    let khat: Vec<_> = (0..=hat_p + 1).map(|p| hat_cochain_space(h, p)).collect();
    let kiso: Vec<_> = (0..=hat_p + 1).map(|p| hat_cochain_iso(h, &khat[p], &fx.cochains.spaces[p])).collect();
    for p in 0..=hat_p {
        if round.is_ok() && !kiso[p].round_trips() {
            round = Err(Counterexample::basis(Some(p), 0, "cochain isomorphism does not round-trip"));
        }
        if dint.is_ok() {
            let lhs = kiso[p + 1].forward.mul(&hat_delta(h, &khat[p], &khat[p + 1]));
            let rhs = delta[p].mul(&kiso[p].forward);
            dint = matrix_eq(&lhs, &rhs, p, "hat δ intertwines δ");
        }
    }
    r.record("hat.iso_round_trip", anchor_of("hat.iso_round_trip"), name, format!("n ≤ {hat_top}, p ≤ {}", hat_p + 1), round);
    r.record("hat.delta_intertwiner", anchor_of("hat.delta_intertwiner"), name, format!("p ≤ {hat_p}"), dint);
    r.record("hat.b_intertwiner", anchor_of("hat.b_intertwiner"), name, format!("n ≤ {hat_top}"), bint);
    r
}

fn semisimple_entries(fx: &Fixture, config: &Config) -> VerificationReport {
    let name = fx.name();
    let mut r = VerificationReport::new();
    let ids = ["semisimple.quasi_cyclic_split", "semisimple.cm_homogeneous"];
    let Some((a, sigma)) = &fx.data.hochschild else {
        for id in ids {
            r.untested(id, anchor_of(id), name, "not applicable: not an enveloping-algebra instance");
        }
        return r;
    };
    let n_top = 4.min(config.n_max).min(fx.n_build());
    let split = all_ok((0..=n_top).map(|n| {
        if quasi_cyclic_split(&fx.bundle, n) {
            Ok(())
        } else {
            Err(Counterexample::basis(Some(n), 0, "ker(id − T) + im(id − T) is not direct and spanning"))
        }
    }));
    r.record(ids[0], anchor_of(ids[0]), name, format!("n ≤ {n_top}"), split);
    let calc = fx.calc();
    let p_top = 2.min(config.p_max).min(fx.p_build());
    let res = match HomogeneousSplit::new(&calc, a, sigma) {
        Err(e) => Err(Counterexample::basis(None, 0, e.to_string())),
        Ok(hs) => all_ok((0..=p_top).map(|p| match hs.characterised_cm(p) {
            Err(e) => Err(Counterexample::basis(Some(p), 0, e.to_string())),
            Ok(s) if s == fx.cm[p] => Ok(()),
            Ok(s) => Err(Counterexample::basis(
                Some(p),
                0,
                format!("dim C^p_M = {} but the homogeneous characterisation has dim {}", fx.cm[p].dim(), s.dim()),
            )),
        })),
    };
    r.record(ids[1], anchor_of(ids[1]), name, format!("p ≤ {p_top}, chains through n = {}", fx.n_build()), res);
    r
}

fn homology_entries(fx: &Fixture, config: &Config) -> (VerificationReport, Vec<usize>, Option<StructureTable>) {
    let name = fx.name();
    let mut r = VerificationReport::new();
    let id = "homology.oracle_dims";
    let top = 4.min(config.n_max).min(fx.n_build() - 1);
    let generic: Vec<usize> = (0..=top).map(|n| homology(&fx.bundle, n).map(|h| h.dim).unwrap_or(usize::MAX)).collect();
    let dims_check = |oracle: Vec<usize>, generic: &[usize], what: &str| -> Check {
        if oracle.as_slice() == generic {
            Ok(())
        } else {
            Err(Counterexample::basis(None, 0, format!("{what}: generic {generic:?}, oracle {oracle:?}")))
        }
    };
    let res = match (&fx.data.hochschild, &fx.data.group) {
        (Some((a, s)), _) => Some(dims_check(hochschild_homology_dims(a, s.matrix(), top), &generic, "H_n")),
        (None, Some(g)) => {
            let f = fx.bundle.field();
            let p_top = top.min(fx.p_build() - 1);
            let coh: Vec<usize> =
                (0..=p_top).map(|p| cohomology(&fx.cochains.delta, p, None).map(|h| h.dim).unwrap_or(usize::MAX)).collect();
            Some(
                dims_check(group_homology_dims(f, g, top), &generic, "H_n")
                    .and_then(|_| dims_check(group_cohomology_dims(f, g, p_top), &coh, "H^p")),
            )
        }
        (None, None) => None,
    };
    match res {
        Some(res) => r.record(id, anchor_of(id), name, format!("n ≤ {top}"), res),
        None => r.untested(id, anchor_of(id), name, "not applicable: no rank oracle for this instance"),
    }

    let deg = 3.min(config.n_max).min(config.p_max).min(fx.p_build() - 1).min(fx.n_build() - 2);
    let tables = structure_tables(fx, deg, config.seed);
    match &tables {
        Ok(t) => {
            let cocomm = "cohomology.bracket_vanishes_cocommutative";
            r.extend(t.checks.clone());
            if fx.data.hochschild.is_none() {
                let res = if t.bracket_is_zero() {
                    Ok(())
                } else {
                    Err(Counterexample::basis(None, 0, "nonzero bracket structure constant"))
                };
                r.record(cocomm, anchor_of(cocomm), name, format!("p + q − 1 ≤ {deg}"), res);
            } else {
                r.untested(cocomm, anchor_of(cocomm), name, "not applicable: not a cocommutative Hopf algebra");
            }
        }
        Err(e) => {
            for id in IDENTITY_IDS.iter().filter(|i| i.starts_with("cohomology.") || (i.starts_with("homology.") && **i != "homology.oracle_dims")) {
                r.record(id, anchor_of(id), name, format!("degrees ≤ {deg}"), Err(Counterexample::basis(None, 0, e.to_string())));
            }
        }
    }
    (r, generic, tables.ok())
}

/// One instance's entries plus the tables computed along the way.
pub struct InstanceRun {
    pub report: VerificationReport,
    /// `dim H_n` of the plain chain complex, `n ≤ min(4, n_max)`.
    pub homology_dims: Vec<usize>,
    pub tables: Option<StructureTable>,
}

/// All entries of one instance, in registry order.
pub fn run_instance(spec: &InstanceSpec, config: &Config) -> InstanceRun {
    let bare = |report| InstanceRun { report, homology_dims: Vec::new(), tables: None };
    let mut report = VerificationReport::new();
    let data = match spec.data(config) {
        Ok(d) => d,
        Err(e) => {
            for id in IDENTITY_IDS {
                report.record(id, anchor_of(id), spec.name(), "none", Err(Counterexample::basis(None, 0, format!("instance does not build: {e}"))));
            }
            return bare(report);
        }
    };
    let (ax, ok) = axioms(&data);
    report.extend(ax);
    if !ok {
        let done: BTreeSet<String> = report.entries.iter().map(|e| e.identity.clone()).collect();
        for id in IDENTITY_IDS.iter().filter(|i| !done.contains(**i)) {
            report.untested(id, anchor_of(id), &data.name, "instance axioms fail");
        }
        return bare(sort_entries(report));
    }
    let fx = match Fixture::build(data) {
        Ok(fx) => fx,
        Err(e) => {
            let done: BTreeSet<String> = report.entries.iter().map(|e| e.identity.clone()).collect();
            for id in IDENTITY_IDS.iter().filter(|i| !done.contains(**i)) {
                report.record(id, anchor_of(id), spec.name(), "none", Err(Counterexample::basis(None, 0, format!("fixture does not build: {e}"))));
            }
            return bare(sort_entries(report));
        }
    };
    let calc: Vec<VerificationReport> = CALC.par_iter().map(|c| run_calc(&fx, c, config)).collect();
    let (cx, (ss, hom)) = rayon::join(
        || complex_entries(&fx, config),
        || rayon::join(|| semisimple_entries(&fx, config), || homology_entries(&fx, config)),
    );
    report.extend(cx);
    for c in calc {
        report.extend(c);
    }
    let (hom, homology_dims, tables) = hom;
    report.extend(ss);
    report.extend(hom);
    InstanceRun { report: sort_entries(report), homology_dims, tables }
}

fn sort_entries(mut r: VerificationReport) -> VerificationReport {
    let pos = |id: &str| IDENTITY_IDS.iter().position(|x| *x == id).unwrap_or(usize::MAX);
    r.entries.sort_by_key(|e| pos(&e.identity));
    r
}

/// Worker count from `HOPFCALC_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("HOPFCALC_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

/// Runs every identity on every instance; entries come out in instance order,
/// then registry order, independent of scheduling.
pub fn run_suite(instances: &[InstanceSpec], config: &Config) -> VerificationReport {
    let mut out = VerificationReport::new();
    for run in run_instances(instances, config) {
        out.extend(run.report);
    }
    out
}

/// Runs every instance in parallel, honouring `HOPFCALC_THREADS`.
pub fn run_instances(instances: &[InstanceSpec], config: &Config) -> Vec<InstanceRun> {
    let run = || instances.par_iter().map(|s| run_instance(s, config)).collect();
    match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

/// Identities missing from a report, per instance.
pub fn missing_ids(report: &VerificationReport) -> Vec<(String, &'static str)> {
    let instances: BTreeSet<&str> = report.entries.iter().map(|e| e.instance.as_str()).collect();
    let mut out = Vec::new();
    for inst in instances {
        for id in IDENTITY_IDS {
            if !report.entries.iter().any(|e| e.instance == inst && e.identity == *id) {
                out.push((inst.to_string(), *id));
            }
        }
    }
    out
}

/// Identities present in a report but not registered.
pub fn unregistered_ids(report: &VerificationReport) -> BTreeSet<String> {
    report.entries.iter().map(|e| e.identity.clone()).filter(|id| !IDENTITY_IDS.contains(&id.as_str())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calc_table_is_registered() {
        for c in CALC {
            assert!(IDENTITY_IDS.contains(&c.id), "{}", c.id);
        }
        let unique: BTreeSet<_> = IDENTITY_IDS.iter().collect();
        assert_eq!(unique.len(), IDENTITY_IDS.len());
    }

    #[test]
    fn default_suite_is_complete_and_green() {
        let config = Config { n_max: 3, p_max: 2, seed: 0 };
        let report = run_suite(&default_instances(), &config);
        assert!(missing_ids(&report).is_empty(), "{:?}", missing_ids(&report));
        assert!(unregistered_ids(&report).is_empty(), "{:?}", unregistered_ids(&report));
        let fails: Vec<_> = report.failures().map(|e| (e.instance.clone(), e.identity.clone())).collect();
        assert!(fails.is_empty(), "{fails:?}");
    }

    #[test]
    fn tampered_translation_fails_schauenburg() {
        let report = run_suite(&[tampered_instance()], &Config { n_max: 2, p_max: 2, seed: 0 });
        assert!(missing_ids(&report).is_empty());
        assert!(report.failures().any(|e| e.identity.starts_with("schauenburg.")));
        assert!(report.failures().all(|e| e.identity.starts_with("schauenburg.") || e.identity == "galois.inverse"));
    }
}

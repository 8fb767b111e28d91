//! Acceptance criteria 1–11: one PASS/FAIL line each, exact equality
//! throughout, wall-clock limits where a criterion states one.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hopfcalc::algebra::Group;
use hopfcalc::calculus::HomogeneousSplit;
use hopfcalc::complexes::{build_bar, build_cochains, build_paracyclic, cyclic_coinvariants, quasi_cyclic_split};
use hopfcalc::hochschild::{group_cohomology_dims, group_homology_dims, hochschild_homology_dims};
use hopfcalc::homology::{cohomology, homology, structure_tables};
use hopfcalc::linalg::Field;
use hopfcalc::report::{Counterexample, Status, VerificationReport};
use hopfcalc::suite::checks::{self, Check, Limits, FULL_BASIS};
use hopfcalc::suite::fixture::{Fixture, InstanceData};
use hopfcalc::suite::{axioms, default_instances, Config, InstanceSpec};

type Outcome = Result<String, String>;

fn instance(name: &str) -> InstanceSpec {
    default_instances().into_iter().find(|s| s.name() == name).expect("default instance")
}

fn data(name: &str, n_build: usize, p_build: usize) -> InstanceData {
    let mut d = instance(name).data(&Config::default()).expect("instance builds");
    d.n_build = n_build;
    d.p_build = p_build;
    d
}

fn fixture(name: &str, n_build: usize, p_build: usize) -> Fixture {
    Fixture::build(data(name, n_build, p_build)).expect("fixture builds")
}

const DUALS: [&str; 2] = ["dual_numbers_sigma_id", "dual_numbers_sigma_neg"];
const ALL: [&str; 4] = ["dual_numbers_sigma_id", "dual_numbers_sigma_neg", "group_z2_f2", "group_z3_q"];

fn fmt(c: &Counterexample) -> String {
    format!("degree {:?}, input {:?}: {}", c.degree, c.input, c.note)
}

fn run_checks(fx: &Fixture, lim: &Limits, list: &[(&str, fn(&Fixture, &Limits) -> Check)]) -> Result<(), String> {
    for (id, f) in list {
        f(fx, lim).map_err(|c| format!("{} on {}: {}", id, fx.name(), fmt(&c)))?;
    }
    Ok(())
}

fn report_ok(r: &VerificationReport, ids: &[&str]) -> Result<(), String> {
    for id in ids {
        let entries: Vec<_> = r.find(id).collect();
        if entries.is_empty() {
            return Err(format!("{id} not recorded"));
        }
        for e in entries {
            if e.status != Status::Pass {
                let why = e.counterexample.as_ref().map(fmt).unwrap_or_else(|| e.degrees.clone());
                return Err(format!("{id} on {} is {:?}: {why}", e.instance, e.status));
            }
        }
    }
    Ok(())
}

fn c1() -> Outcome {
    for name in ALL {
        let d = data(name, 5, 5);
        let (ax, ok) = axioms(&d);
        if !ok {
            let e = ax.failures().next().expect("a failure");
            return Err(format!("{} on {name}", e.identity));
        }
        report_ok(
            &ax,
            &[
                "takeuchi.coproduct",
                "takeuchi.coaction",
                "schauenburg.takeuchi_membership",
                "schauenburg.plus_delta_minus",
                "schauenburg.delta_plus_minus",
                "schauenburg.plus_coassociative",
                "schauenburg.minus_coassociative",
                "schauenburg.anti_multiplicative",
                "schauenburg.plus_times_minus",
                "schauenburg.counit_minus",
                "schauenburg.source_target",
            ],
        )?;
        // the checked builders fail on any violated relation
        let bundle = build_paracyclic(&d.h, &d.m, 5).map_err(|e| format!("{name}: {e}"))?;
        let mut r = VerificationReport::new();
        for (id, res) in bundle.relation_checks() {
            r.record(id, "", name, "n ≤ 5", res);
        }
        report_ok(&r, &["simplicial.identities", "paracyclic.relations", "chain.b_squared"])?;
        let cochains = build_cochains(&d.h, 6);
        for p in 1..cochains.delta.len() {
            if !cochains.delta[p].mul(&cochains.delta[p - 1]).is_zero() {
                return Err(format!("δ² ≠ 0 at p = {} on {name}", p - 1));
            }
        }
        let bar = build_bar(&d.h, 5).map_err(|e| format!("{name}: {e}"))?;
        let mut r = VerificationReport::new();
        for (id, res) in bar.dg_coalgebra_checks() {
            r.record(id, "", name, "n ≤ 5", res);
        }
        report_ok(&r, &["bar.bprime_squared"])?;
    }
    Ok("Takeuchi, Schauenburg, para-cyclic, b² = δ² = b′² = 0 for n ≤ 5 on four instances".into())
}

fn c2() -> Outcome {
    for name in DUALS {
        let d = data(name, 6, 1);
        let bundle = build_paracyclic(&d.h, &d.m, 6).map_err(|e| e.to_string())?;
        for n in 0..=4 {
            let (mixed, _) = bundle.mixed_checks(n);
            mixed.map_err(|c| format!("bB + Bb ≠ id − T on {name}: {}", fmt(&c)))?;
        }
        let cq = cyclic_coinvariants(&bundle).map_err(|e| e.to_string())?;
        for (id, res) in cq.checks() {
            if id == "cyclic.bB_plus_Bb" {
                res.map_err(|c| format!("induced bB + Bb ≠ 0 on {name}: {}", fmt(&c)))?;
            }
        }
    }
    Ok("bB + Bb = id − T for n ≤ 4, bB + Bb = 0 on the cyclic coinvariants, both σ".into())
}

fn c3() -> Outcome {
    let d = data("dual_numbers_sigma_id", 4, 1);
    let bar = build_bar(&d.h, 4).map_err(|e| e.to_string())?;
    for n in 0..=3 {
        bar.homotopy_check(n).map_err(|c| fmt(&c))?;
    }
    Ok("b′h + hb′ = id on the bar resolution in degrees ≤ 3".into())
}

fn full_basis(fx: &Fixture, p_max: usize) -> Result<(), String> {
    for p in 0..=p_max {
        let d = fx.cochains.spaces[p].dim();
        if d > FULL_BASIS {
            return Err(format!("C^{p} has dimension {d}, above the full-basis threshold"));
        }
    }
    Ok(())
}

fn c4() -> Outcome {
    let lim = Limits { n: 4, p: 2, seed: 0 };
    for name in DUALS {
        let fx = fixture(name, 6, 4);
        full_basis(&fx, 4)?;
        run_checks(
            &fx,
            &lim,
            &[
                ("comp associativity", checks::comp_associativity),
                ("μ∘₁μ = μ∘₂μ", checks::mu_associative),
                ("cup via μ", checks::cup_via_mu),
                ("δφ = {μ, φ}", checks::delta_is_bracket_with_mu),
                ("ι_φι_ψ = ι_{φ⌣ψ}", checks::cap_dg_action),
                ("[b, ι_φ] = ι_{δφ}", checks::cap_differential),
            ],
        )?;
    }
    Ok("Gerstenhaber and DG-module laws over full cochain bases, p, q ≤ 2, n ≤ 4, both σ".into())
}

fn c5() -> Outcome {
    let lim = Limits { n: 4, p: 2, seed: 0 };
    for name in DUALS {
        let fx = fixture(name, 6, 4);
        for p in 0..=2 {
            if fx.cm[p].dim() > FULL_BASIS {
                return Err(format!("C^{p}_M too large for a full basis on {name}"));
            }
        }
        run_checks(
            &fx,
            &lim,
            &[
                ("L_μ = −b", checks::lie_mu_is_minus_b),
                ("[L_φ, L_ψ] = L_{{φ,ψ}}", checks::lie_bracket),
                ("[b, L_φ] + L_{δφ} = 0", checks::lie_differential),
            ],
        )?;
    }
    Ok("L_μ = −b, [L_φ, L_ψ] = L_{{φ,ψ}}, [b, L_φ] + L_{δφ} = 0 on C^cyc over a basis of C•_M, p, q ≤ 2, n ≤ 4, both σ".into())
}

fn c6() -> Outcome {
    let lim = Limits { n: 5, p: 3, seed: 0 };
    for name in DUALS {
        let fx = fixture(name, 8, 4);
        for p in 0..=3 {
            if fx.cm_bar[p].dim() > FULL_BASIS {
                return Err(format!("normalised C^{p}_M too large for a full basis on {name}"));
            }
        }
        run_checks(
            &fx,
            &lim,
            &[("[B, S_φ] = 0", checks::b_s_commute), ("Cartan homotopy formula", checks::cartan_homotopy)],
        )?;
    }
    Ok("[B, S_φ] = 0 and L_φ = [B + b, S_φ + ι_φ] − ι_{δφ} − S_{δφ} for normalised φ, p ≤ 3, n ≤ 5, both σ".into())
}

fn c7() -> Outcome {
    let d = data("dual_numbers_sigma_id", 5, 1);
    let (a, sigma) = d.hochschild.clone().expect("enveloping instance");
    // the brute-force oracle goes first; the generic engine must reproduce it
    let oracle = hochschild_homology_dims(&a, sigma.matrix(), 4);
    if oracle != [2, 1, 1, 1, 1] {
        return Err(format!("Hochschild rank oracle gives {oracle:?}"));
    }
    let bundle = build_paracyclic(&d.h, &d.m, 5).map_err(|e| e.to_string())?;
    let generic: Vec<usize> = (0..=4).map(|n| homology(&bundle, n).map(|h| h.dim).unwrap_or(usize::MAX)).collect();
    if generic != oracle {
        return Err(format!("generic H_n {generic:?} vs oracle {oracle:?}"));
    }

    let z3 = Group::cyclic(3);
    let oracle = group_homology_dims(Field::Q, &z3, 4);
    if oracle != [1, 0, 0, 0, 0] {
        return Err(format!("group rank oracle for ℤ/3 gives {oracle:?}"));
    }
    let d = data("group_z3_q", 5, 1);
    let bundle = build_paracyclic(&d.h, &d.m, 5).map_err(|e| e.to_string())?;
    let generic: Vec<usize> = (0..=4).map(|n| homology(&bundle, n).map(|h| h.dim).unwrap_or(usize::MAX)).collect();
    if generic != oracle {
        return Err(format!("kℤ/3 generic H_n {generic:?} vs oracle {oracle:?}"));
    }

    let f2 = Field::prime(2).expect("prime");
    let oracle = group_cohomology_dims(f2, &Group::cyclic(2), 3);
    if oracle != [1, 1, 1, 1] {
        return Err(format!("group cohomology oracle for ℤ/2 over F₂ gives {oracle:?}"));
    }
    let d = data("group_z2_f2", 1, 4);
    let cochains = build_cochains(&d.h, 4);
    let generic: Vec<usize> =
        (0..=3).map(|p| cohomology(&cochains.delta, p, None).map(|h| h.dim).unwrap_or(usize::MAX)).collect();
    if generic != oracle {
        return Err(format!("kℤ/2 generic H^p {generic:?} vs oracle {oracle:?}"));
    }
    Ok("H_n = (2,1,1,1,1) for dual numbers, (1,0,0,0,0) for kℤ/3, H^p = (1,1,1,1) for kℤ/2 over F₂, oracle and engine agree".into())
}

fn c8() -> Outcome {
    for name in DUALS {
        let fx = fixture(name, 5, 4);
        let t = structure_tables(&fx, 3, 0).map_err(|e| e.to_string())?;
        report_ok(
            &t.checks,
            &["homology.insertion_lie_commutator", "homology.mixed_leibniz", "homology.bv_homotopy_formula", "homology.B_squared"],
        )?;
    }
    let fx = fixture("group_z2_f2", 5, 4);
    let t = structure_tables(&fx, 3, 0).map_err(|e| e.to_string())?;
    if !t.bracket_is_zero() {
        return Err("bracket table over kℤ/2 is not zero".into());
    }
    Ok("[ι_ψ, L_φ] = ι_{{ψ,φ}}, mixed Leibniz and the BV formula on classes, degrees ≤ 3; kℤ/2 bracket table zero".into())
}

fn c9() -> Outcome {
    let name = "dual_numbers_sigma_neg";
    let fx = fixture(name, 6, 3);
    for n in 0..=4 {
        if !quasi_cyclic_split(&fx.bundle, n) {
            return Err(format!("C_{n} ≠ ker(id − T) ⊕ im(id − T)"));
        }
    }
    let (a, sigma) = fx.data.hochschild.clone().expect("enveloping instance");
    let calc = fx.calc();
    let hs = HomogeneousSplit::new(&calc, &a, &sigma).map_err(|e| e.to_string())?;
    for p in 0..=2 {
        let s = hs.characterised_cm(p).map_err(|e| e.to_string())?;
        if s != fx.cm[p] {
            return Err(format!("C^{p}_M has dim {}, homogeneous characterisation dim {}", fx.cm[p].dim(), s.dim()));
        }
    }
    Ok("quasi-cyclic splitting for σ(x) = −x, n ≤ 4; C•_M equals the homogeneous characterisation for p ≤ 2".into())
}

fn c10() -> Outcome {
    for name in DUALS {
        let fx = fixture(name, 6, 4);
        let lim = Limits { n: 4, p: 2, seed: 0 };
        run_checks(
            &fx,
            &lim,
            &[
                ("Hochschild faces, t, T, b", checks::hochschild_structure),
                ("Hochschild B and ι_φ", checks::hochschild_b_and_cap),
                ("Hochschild L_φ and S_φ", checks::hochschild_lie_and_s),
            ],
        )?;
        if fx.is_sayd() {
            run_checks(&fx, &Limits { n: 5, ..lim }, &[("SaYD tⁱ and B", checks::sayd_t_and_b)])?;
            run_checks(&fx, &lim, &[("SaYD L_φ and S_φ", checks::sayd_lie_and_s)])?;
        }
    }
    if !fixture("dual_numbers_sigma_id", 2, 1).is_sayd() {
        return Err("σ = id coefficients are expected to be SaYD".into());
    }
    Ok("Hochschild operators and SaYD closed forms equal the generic operators, n ≤ 4 (tⁱ, B: n ≤ 5)".into())
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn c11() -> Outcome {
    let dir = std::env::temp_dir().join(format!("hopfcalc-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for (k, threads) in [None, Some("1"), None].into_iter().enumerate() {
        let out = dir.join(format!("report{k}.json"));
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopfcalc"));
        cmd.arg("check").arg(fixture_path("dual_numbers_sigma_id.json")).args(["--nmax", "4", "--seed", "7", "--out"]).arg(&out);
        match threads {
            Some(t) => cmd.env("HOPFCALC_THREADS", t),
            None => cmd.env_remove("HOPFCALC_THREADS"),
        };
        let status = cmd.status().map_err(|e| e.to_string())?;
        if status.code() != Some(0) {
            return Err(format!("cmd_check exited with {status}"));
        }
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        return Err("reports differ between runs".into());
    }
    Ok(format!("three runs, {} bytes each, byte-identical (including HOPFCALC_THREADS=1)", outputs[0].len()))
}

fn main() {
    let criteria: [(u32, &str, Option<u64>, fn() -> Outcome); 11] = [
        (1, "axiom battery", Some(30), c1),
        (2, "mixed-complex law", None, c2),
        (3, "bar homotopy", Some(60), c3),
        (4, "Gerstenhaber layer", None, c4),
        (5, "Lie layer on C^cyc", Some(300), c5),
        (6, "BV layer", Some(600), c6),
        (7, "homology oracle agreement", None, c7),
        (8, "homology-level structure", None, c8),
        (9, "semisimple-σ machinery", None, c9),
        (10, "oracle cross-derivation", None, c10),
        (11, "determinism", None, c11),
    ];
    let mut failed = 0;
    for (k, title, limit, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("took {:.1}s, limit {s}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(what) => println!("PASS criterion {k} ({title}, {:.1}s): {what}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {k} ({title}, {:.1}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

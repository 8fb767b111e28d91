//! Command-line front end. Every command writes JSON (schema 1) with exact
//! scalars as strings; output is a function of input, flags and seed only.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::eigenspace_grading;
use crate::complexes::{build_cochains, build_paracyclic_unchecked, quasi_cyclic_split, quotient_complex, QuotientKind};
use crate::homology::{cohomology, homology, quotient_homology, structure_tables, ActionTable, ProductTable, StructureTable};
use crate::instance_file::InstanceFile;
use crate::linalg::{Matrix, SVec};
use crate::report::{Entry, Summary};
use crate::suite::fixture::Fixture;
use crate::suite::{axioms, run_instance, Config, InstanceSpec};

pub const SCHEMA: u32 = 1;

/// Exit code for unreadable or invalid input.
pub const EXIT_PARSE: i32 = 2;
/// Exit code when some identity or axiom fails.
pub const EXIT_FAIL: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "hopfcalc", version, about = "Exact differential calculus of left Hopf algebroids")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification suite on one instance.
    Check {
        instance: PathBuf,
        #[arg(long = "nmax", default_value_t = 5)]
        n_max: usize,
        #[arg(long = "pmax", default_value_t = 3)]
        p_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions of H_n and H^p, with the σ-eigenspace summary when σ is semisimple.
    Homology {
        instance: PathBuf,
        #[arg(long = "nmax", default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cup, bracket, cap, Lie and B tables on (co)homology classes.
    Tables {
        instance: PathBuf,
        #[arg(long = "degmax", default_value_t = 3)]
        deg_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ConfigEcho {
    n_max: usize,
    p_max: usize,
    seed: u64,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    schema: u32,
    engine: &'static str,
    version: &'static str,
    command: &'static str,
    instance: &'a str,
    config: ConfigEcho,
    status: &'static str,
    summary: Summary,
    entries: &'a [Entry],
    #[serde(skip_serializing_if = "Option::is_none")]
    homology: Option<HomologyView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tables: Option<TablesView>,
}

#[derive(Serialize, Default)]
struct HomologyView {
    /// `dim H_n` of the chain complex.
    chain_dims: Vec<usize>,
    /// `dim H_n` of the cyclic coinvariants.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    cyclic_dims: Vec<usize>,
    /// `dim H^p` of the cochain complex.
    cochain_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenspaces: Option<EigenView>,
}

#[derive(Serialize)]
struct EigenView {
    eigenvalues: Vec<String>,
    component_dims: Vec<usize>,
    /// Per chain degree: `dim ker(id − T)`, `dim im(id − T)`, and whether they split `C_n`.
    ker_id_minus_t: Vec<usize>,
    im_id_minus_t: Vec<usize>,
    quasi_cyclic: Vec<bool>,
}

#[derive(Serialize)]
struct ProductView {
    p: usize,
    q: usize,
    target: usize,
    /// `entries[i][j]`: coordinates of `x_i · y_j` in the target classes.
    entries: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct ActionView {
    p: usize,
    class: String,
    n: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct TablesView {
    deg_max: usize,
    /// `H^p[k]` names the `k`-th class of cochain cohomology.
    cohomology_labels: Vec<Vec<String>>,
    /// `A^p[k]` names the `k`-th acting class, from the normalised subcomplex `C̄•_M`.
    acting_labels: Vec<Vec<String>>,
    /// `H_n[k]` names the `k`-th class on the reduced cyclic quotient.
    homology_labels: Vec<Vec<String>>,
    cup: Vec<ProductView>,
    bracket: Vec<ProductView>,
    bracket_is_zero: bool,
    cap: Vec<ActionView>,
    lie: Vec<ActionView>,
    connes_b: Vec<Vec<Vec<String>>>,
    bv: &'static str,
}

fn dense(v: &SVec, n: usize, f: crate::linalg::Field) -> Vec<String> {
    v.to_dense(f, n).iter().map(|x| x.to_string()).collect()
}

fn dense_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn labels(prefix: &str, dims: &[usize]) -> Vec<Vec<String>> {
    dims.iter().enumerate().map(|(d, &k)| (0..k).map(|i| format!("{prefix}{d}[{i}]")).collect()).collect()
}

fn tables_view(t: &StructureTable, field: crate::linalg::Field) -> TablesView {
    let product = |p: &ProductTable| ProductView {
        p: p.p,
        q: p.q,
        target: p.target,
        entries: p
            .entries
            .iter()
            .map(|row| row.iter().map(|v| dense(v, t.cohomology_dims[p.target], field)).collect())
            .collect(),
    };
    let action = |a: &ActionTable| ActionView {
        p: a.p,
        class: format!("A^{}[{}]", a.p, a.class),
        n: a.n,
        matrix: dense_matrix(&a.matrix),
    };
    let bv_entries: Vec<_> = t.checks.find("homology.bv_homotopy_formula").collect();
    let bv = if bv_entries.iter().any(|e| e.status == crate::report::Status::Fail) {
        "fail"
    } else if bv_entries.iter().any(|e| e.status == crate::report::Status::Pass) {
        "pass"
    } else {
        "untested"
    };
    TablesView {
        deg_max: t.deg_max,
        cohomology_labels: labels("H^", &t.cohomology_dims),
        acting_labels: labels("A^", &t.acting_dims),
        homology_labels: labels("H_", &t.homology_dims),
        cup: t.cup.iter().map(product).collect(),
        bracket: t.bracket.iter().map(product).collect(),
        bracket_is_zero: t.bracket_is_zero(),
        cap: t.cap.iter().map(action).collect(),
        lie: t.lie.iter().map(action).collect(),
        connes_b: t.connes_b.iter().map(dense_matrix).collect(),
        bv,
    }
}

fn load(path: &Path) -> Result<InstanceSpec, String> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    InstanceFile::load(path).and_then(|f| f.to_spec(stem)).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(report: &ReportFile, out: Option<&Path>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn status_of(s: &Summary) -> &'static str {
    if s.fail == 0 {
        "pass"
    } else {
        "fail"
    }
}

fn report_failures(entries: &[Entry]) {
    for e in entries.iter().filter(|e| e.status == crate::report::Status::Fail) {
        let note = e.counterexample.as_ref().map_or("", |c| c.note.as_str());
        eprintln!("FAIL {} [{}] {}: {}", e.identity, e.instance, e.degrees, note);
    }
}

fn cmd_check(spec: &InstanceSpec, config: Config, out: Option<&Path>) -> Result<i32, String> {
    let run = run_instance(spec, &config);
    let summary = run.report.summary();
    let homology = (!run.homology_dims.is_empty()).then(|| HomologyView {
        chain_dims: run.homology_dims.clone(),
        cochain_dims: run.tables.as_ref().map(|t| t.cohomology_dims.clone()).unwrap_or_default(),
        ..HomologyView::default()
    });
    let field = spec.field();
    let file = ReportFile {
        schema: SCHEMA,
        engine: "hopfcalc",
        version: env!("CARGO_PKG_VERSION"),
        command: "check",
        instance: spec.name(),
        config: ConfigEcho { n_max: config.n_max, p_max: config.p_max, seed: config.seed },
        status: status_of(&summary),
        summary: summary.clone(),
        entries: &run.report.entries,
        homology,
        tables: run.tables.as_ref().map(|t| tables_view(t, field)),
    };
    emit(&file, out)?;
    report_failures(&run.report.entries);
    eprintln!("{}: {} pass, {} fail, {} untested", spec.name(), summary.pass, summary.fail, summary.untested);
    Ok(if summary.fail == 0 { 0 } else { EXIT_FAIL })
}

fn cmd_homology(spec: &InstanceSpec, n_max: usize, out: Option<&Path>) -> Result<i32, String> {
    let config = Config { n_max, p_max: n_max, seed: 0 };
    let data = spec.data(&config)?;
    let (ax, ok) = axioms(&data);
    let mut view = HomologyView::default();
    if ok {
        let bundle = build_paracyclic_unchecked(&data.h, &data.m, n_max + 1);
        let cochains = build_cochains(&data.h, n_max + 1);
        let err = |e: crate::homology::HomologyError| e.to_string();
        for n in 0..=n_max {
            view.chain_dims.push(homology(&bundle, n).map_err(err)?.dim);
            view.cochain_dims.push(cohomology(&cochains.delta, n, None).map_err(err)?.dim);
        }
        let cyc = quotient_complex(&bundle, QuotientKind::Cyclic);
        for n in 0..=n_max {
            view.cyclic_dims.push(quotient_homology(&bundle, &cyc, n).map_err(err)?.dim);
        }
        if let Some((a, sigma)) = &data.hochschild {
            if let Ok(g) = eigenspace_grading(a, sigma) {
                view.eigenspaces = Some(EigenView {
                    eigenvalues: g.eigenvalues.iter().map(|x| x.to_string()).collect(),
                    component_dims: g.components.iter().map(|c| c.dim()).collect(),
                    ker_id_minus_t: (0..=n_max).map(|n| bundle.ker_id_minus_t(n).dim()).collect(),
                    im_id_minus_t: (0..=n_max).map(|n| bundle.im_id_minus_t(n).dim()).collect(),
                    quasi_cyclic: (0..=n_max).map(|n| quasi_cyclic_split(&bundle, n)).collect(),
                });
            }
        }
    }
    let summary = ax.summary();
    let file = ReportFile {
        schema: SCHEMA,
        engine: "hopfcalc",
        version: env!("CARGO_PKG_VERSION"),
        command: "homology",
        instance: spec.name(),
        config: ConfigEcho { n_max, p_max: n_max, seed: 0 },
        status: status_of(&summary),
        summary,
        entries: &ax.entries,
        homology: ok.then_some(view),
        tables: None,
    };
    emit(&file, out)?;
    report_failures(&ax.entries);
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn cmd_tables(spec: &InstanceSpec, deg_max: usize, seed: u64, out: Option<&Path>) -> Result<i32, String> {
    let config = Config { n_max: deg_max, p_max: deg_max, seed };
    let mut data = spec.data(&config)?;
    data.n_build = data.n_build.max(deg_max + 2);
    data.p_build = data.p_build.max(deg_max + 1);
    let field = data.h.total().field();
    let (mut report, ok) = axioms(&data);
    let mut tables = None;
    if ok {
        let fx = Fixture::build(data).map_err(|e| e.to_string())?;
        let t = structure_tables(&fx, deg_max, seed).map_err(|e| e.to_string())?;
        report.extend(t.checks.clone());
        tables = Some(tables_view(&t, field));
    }
    let summary = report.summary();
    let file = ReportFile {
        schema: SCHEMA,
        engine: "hopfcalc",
        version: env!("CARGO_PKG_VERSION"),
        command: "tables",
        instance: spec.name(),
        config: ConfigEcho { n_max: deg_max, p_max: deg_max, seed },
        status: status_of(&summary),
        summary: summary.clone(),
        entries: &report.entries,
        homology: None,
        tables,
    };
    emit(&file, out)?;
    report_failures(&report.entries);
    Ok(if summary.fail == 0 { 0 } else { EXIT_FAIL })
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (path, result): (&Path, Box<dyn FnOnce(&InstanceSpec) -> Result<i32, String>>) = match &cli.cmd {
        Command::Check { instance, n_max, p_max, seed, out } => {
            let config = Config { n_max: *n_max, p_max: *p_max, seed: *seed };
            let out = out.clone();
            (instance, Box::new(move |s| cmd_check(s, config, out.as_deref())))
        }
        Command::Homology { instance, n_max, out } => {
            let (n, out) = (*n_max, out.clone());
            (instance, Box::new(move |s| cmd_homology(s, n, out.as_deref())))
        }
        Command::Tables { instance, deg_max, seed, out } => {
            let (d, seed, out) = (*deg_max, *seed, out.clone());
            (instance, Box::new(move |s| cmd_tables(s, d, seed, out.as_deref())))
        }
    };
    let spec = match load(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    match result(&spec) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

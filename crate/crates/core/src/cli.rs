//! Command-line front end. [`run`] parses `argv`, dispatches to the library
//! and returns the process exit code: 0 on success, 2 on input errors and
//! 3 on numerical failures.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, named_state, verify_entry};
use crate::classical::{self, optimize_thomson, optimize_toth, pointset_to_state, thomson_energy, toth_objective};
use crate::error::Error;
use crate::extremal::{search_max_entangled, Family, SearchAnsatz, DEFAULT_SEARCH_RESTARTS};
use crate::geometric::{find_cpps, integral_check, sample_sphere, SampleFunction, DEFAULT_QUAD_ORDER, DEFAULT_REFINE_TOL};
use crate::lmg::{self, LmgParams};
use crate::slocc::{dc_class, lu_equivalence, slocc_equivalence, Relation, DEFAULT_MATCH_TOL};
use crate::symstate::{read_state_json, state_to_json, state_to_mps, SymmetricState, DEFAULT_CLUSTER_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SYMSPHERE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "symsphere", version, about = "Majorana representation and geometric entanglement of symmetric states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Majorana points, DC class, CPPs and entanglement of a state file.
    Analyze {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        grid_deg: f64,
        #[arg(long, default_value_t = DEFAULT_QUAD_ORDER)]
        quad_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// SLOCC or LU equivalence of two state files.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = RelationArg::Slocc)]
        relation: RelationArg,
        #[arg(long, default_value_t = DEFAULT_MATCH_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Named reference states.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Search for maximally entangled states within an ansatz family.
    Search {
        #[arg(long)]
        n: usize,
        /// general, positive, rotational:M or two-dicke:K1,K2
        #[arg(long, default_value = "positive")]
        family: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Thomson or Tóth point configurations and their entanglement.
    Classical {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = classical::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// LMG ground state with Majorana points, CPPs and continuum comparison.
    Lmg {
        #[arg(long)]
        spin: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        json: bool,
    },
    /// Sample g² or the volume radius on a theta-phi grid into a CSV file.
    Sample {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum)]
        function: FunctionArg,
        /// ROWSxCOLS
        #[arg(long, value_parser = parse_resolution)]
        resolution: (usize, usize),
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Slocc,
    Lu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Thomson,
    Toth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Amp2,
    Vol,
}

fn parse_resolution(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected ROWSxCOLS, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad resolution '{s}'"));
    Ok((parse(a)?, parse(b)?))
}

/// Formats JSON with every float written to 17 significant digits.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serialisable");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(num) => match (num.as_i64(), num.as_u64(), num.as_f64()) {
            (Some(i), _, _) => write!(out, "{i}").unwrap(),
            (_, Some(u), _) => write!(out, "{u}").unwrap(),
            (_, _, Some(f)) => write!(out, "{f:.16e}").unwrap(),
            _ => out.push_str(&num.to_string()),
        },
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone())).unwrap();
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

type CliResult = std::result::Result<String, Failure>;

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Runs the command line and returns the exit code. Output goes to
/// standard output, diagnostics to standard error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (code, out, err) = run_captured(argv);
    print!("{out}");
    eprint!("{err}");
    code
}

/// As [`run`], returning `(exit code, stdout, stderr)` instead of printing.
pub fn run_captured<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { (EXIT_INPUT, String::new(), text) } else { (EXIT_OK, text, String::new()) };
        }
    };
    let result = configure_threads().and_then(|_| dispatch(cli.command));
    match result {
        Ok(out) => (EXIT_OK, out, String::new()),
        Err(Failure::Input(msg)) => (EXIT_INPUT, String::new(), format!("error: {msg}\n")),
        Err(Failure::Numerical(msg)) => (EXIT_NUMERICAL, String::new(), format!("numerical failure: {msg}\n")),
    }
}

fn positive(name: &str, v: f64) -> std::result::Result<(), Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Failure::Input(format!("--{name} must be positive, got {v}")))
    }
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Analyze { state, grid_deg, quad_order, json } => {
            positive("grid-deg", grid_deg)?;
            if quad_order < 2 {
                return Err(Failure::Input(format!("--quad-order must be at least 2, got {quad_order}")));
            }
            analyze(&read_state_json(&state)?, grid_deg, quad_order, json)
        }
        Command::Equiv { a, b, relation, tol, json } => {
            positive("tol", tol)?;
            equiv(&read_state_json(&a)?, &read_state_json(&b)?, relation, tol, json)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { json } => catalog_list(json),
            CatalogAction::Show { name, n, json } => catalog_show(&name, n, json),
        },
        Command::Search { n, family, restarts, seed, json } => {
            let ansatz = SearchAnsatz { family: Family::parse(&family)?, n, restarts, seed };
            search(&ansatz, json)
        }
        Command::Classical { problem, n, restarts, seed, json } => classical_cmd(problem, n, restarts, seed, json),
        Command::Lmg { spin, h, gamma, json } => lmg_cmd(&LmgParams::new(spin, h, gamma)?, json),
        Command::Sample { state, function, resolution, out } => {
            let f = match function {
                FunctionArg::Amp2 => SampleFunction::Amplitude2,
                FunctionArg::Vol => SampleFunction::Volume,
            };
            let samples = sample_sphere(&read_state_json(&state)?, f, resolution)?;
            std::fs::write(&out, samples.to_csv())
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))?;
            Ok(format!("wrote {} samples to {}\n", samples.samples.len(), out.display()))
        }
    }
}

fn analysis_value(state: &SymmetricState, grid_deg: f64, quad_order: usize) -> std::result::Result<Value, Failure> {
    let n = state.n();
    let mps = state_to_mps(state, DEFAULT_CLUSTER_TOL)?;
    let report = find_cpps(state, grid_deg, DEFAULT_REFINE_TOL);
    let integral = integral_check(state, quad_order);
    let expected = 4.0 * std::f64::consts::PI / (n + 1) as f64;
    Ok(json!({
        "state": state_to_json(state),
        "mps": mps.points,
        "clusters": mps.clusters,
        "dc_class": dc_class(&mps).to_string(),
        "cpps": report.cpps,
        "ring": report.ring,
        "g_max": report.g_max,
        "e_g": report.e_g,
        "upper_bound": ((n + 1) as f64).log2(),
        "integral": integral,
        "integral_expected": expected,
        "integral_rel_error": (integral - expected).abs() / expected,
    }))
}

fn analyze(state: &SymmetricState, grid_deg: f64, quad_order: usize, json: bool) -> CliResult {
    let v = analysis_value(state, grid_deg, quad_order)?;
    if json {
        return Ok(to_json_string(&v));
    }
    let mut out = String::new();
    writeln!(out, "qubits: {}", state.n()).unwrap();
    writeln!(out, "DC class: {}", v["dc_class"].as_str().unwrap()).unwrap();
    writeln!(out, "Majorana points (theta, phi):").unwrap();
    for p in v["mps"].as_array().unwrap() {
        writeln!(out, "  {:.12} {:.12}", p["theta"].as_f64().unwrap(), p["phi"].as_f64().unwrap()).unwrap();
    }
    match &v["ring"] {
        Value::Null => {
            writeln!(out, "CPPs ({}):", v["cpps"].as_array().unwrap().len()).unwrap();
            for p in v["cpps"].as_array().unwrap() {
                writeln!(out, "  {:.12} {:.12}", p["theta"].as_f64().unwrap(), p["phi"].as_f64().unwrap()).unwrap();
            }
        }
        ring => writeln!(out, "CPPs: continuous ring {ring}").unwrap(),
    }
    writeln!(out, "E_g: {:.12}", v["e_g"].as_f64().unwrap()).unwrap();
    writeln!(out, "integral relative error: {:.3e}", v["integral_rel_error"].as_f64().unwrap()).unwrap();
    Ok(out)
}

fn equiv(a: &SymmetricState, b: &SymmetricState, relation: RelationArg, tol: f64, json: bool) -> CliResult {
    let verdict = match relation {
        RelationArg::Slocc => slocc_equivalence(a, b, tol)?,
        RelationArg::Lu => lu_equivalence(a, b, tol)?,
    };
    let equivalent = match relation {
        RelationArg::Slocc => verdict.relation.is_equivalent(),
        RelationArg::Lu => verdict.relation == Relation::LuEquivalent,
    };
    if json {
        let v = json!({
            "relation_tested": match relation { RelationArg::Slocc => "slocc", RelationArg::Lu => "lu" },
            "equivalent": equivalent,
            "verdict": verdict,
        });
        return Ok(to_json_string(&v));
    }
    Ok(format!("{}\n{}\n", verdict.relation, verdict.detail))
}

fn catalog_list(json: bool) -> CliResult {
    let mut rows = Vec::new();
    for name in catalog::NAMES {
        let base = name.split('(').next().unwrap();
        let entry = named_state(base, None).ok();
        rows.push(json!({
            "name": name,
            "n": entry.as_ref().map(|e| e.n()),
            "reference_e_g": entry.as_ref().and_then(|e| e.reference_e_g),
        }));
    }
    if json {
        return Ok(to_json_string(&rows));
    }
    let mut out = String::new();
    for r in &rows {
        let n = r["n"].as_u64().map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        let e = r["reference_e_g"].as_f64().map(|e| format!("{e:.9}")).unwrap_or_else(|| "-".into());
        writeln!(out, "{:<30} {:>3} {:>12}", r["name"].as_str().unwrap(), n, e).unwrap();
    }
    Ok(out)
}

fn catalog_show(name: &str, n: Option<usize>, json: bool) -> CliResult {
    let entry = named_state(name, n)?;
    let report = verify_entry(&entry)?;
    let v = json!({
        "name": entry.name,
        "params": entry.params,
        "state": state_to_json(&entry.state),
        "reference_e_g": entry.reference_e_g,
        "exact": entry.exact,
        "tol": entry.tol,
        "reference_cpps": entry.reference_cpps,
        "cpp_count": entry.cpp_count,
        "positive": entry.positive,
        "group": entry.group,
        "solves": entry.solves,
        "dc_class": report.dc_class,
        "e_g": report.e_g,
        "checks": report.checks,
        "passed": report.passed(),
        "related": entry.related.iter().map(|r| json!({
            "name": r.name,
            "state": state_to_json(&r.state),
            "lu_equivalent_to": r.lu_equivalent_to,
        })).collect::<Vec<_>>(),
    });
    if json {
        return Ok(to_json_string(&v));
    }
    let mut out = String::new();
    writeln!(out, "{} ({} qubits)", entry.name, entry.n()).unwrap();
    for (k, x) in &entry.params {
        writeln!(out, "  {k} = {x:.12}").unwrap();
    }
    if let Some(r) = entry.reference_e_g {
        writeln!(out, "reference E_g: {r:.12}{}", entry.exact.as_ref().map(|e| format!(" = {e}")).unwrap_or_default())
            .unwrap();
    }
    writeln!(out, "computed E_g:  {:.12}", report.e_g).unwrap();
    writeln!(out, "CPPs: {}", entry.reference_cpps).unwrap();
    writeln!(out, "DC class: {}", report.dc_class).unwrap();
    for c in &report.checks {
        writeln!(out, "  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.field).unwrap();
    }
    Ok(out)
}

fn search(ansatz: &SearchAnsatz, json: bool) -> CliResult {
    let r = search_max_entangled(ansatz)?;
    let v = json!({
        "ansatz": ansatz,
        "state": state_to_json(&r.state),
        "e_g": r.report.e_g,
        "g_max": r.report.g_max,
        "cpps": r.report.cpps,
        "stats": r.stats,
    });
    if json {
        return Ok(to_json_string(&v));
    }
    let mut out = String::new();
    writeln!(out, "best E_g: {:.12} ({} CPPs)", r.report.e_g, r.report.cpps.len()).unwrap();
    writeln!(out, "restarts: {}, best restart: {}, evaluations: {}", r.stats.restarts, r.stats.best_restart, r.stats.evaluations)
        .unwrap();
    if r.stats.dicke_fallback {
        writeln!(out, "no restart beat the balanced Dicke state; returning it").unwrap();
    }
    writeln!(out, "Dicke amplitudes:").unwrap();
    for (k, c) in r.state.coeffs().iter().enumerate() {
        if c.norm() > 1e-12 {
            writeln!(out, "  {k:>3}: {:+.12} {:+.12}i", c.re, c.im).unwrap();
        }
    }
    Ok(out)
}

fn classical_cmd(problem: Problem, n: usize, restarts: usize, seed: u64, json: bool) -> CliResult {
    let points = match problem {
        Problem::Thomson => optimize_thomson(n, restarts, seed)?,
        Problem::Toth => optimize_toth(n, restarts, seed)?,
    };
    let state = pointset_to_state(&points)?;
    let report = find_cpps(&state, 1.0, DEFAULT_REFINE_TOL);
    let v = json!({
        "problem": match problem { Problem::Thomson => "thomson", Problem::Toth => "toth" },
        "n": n,
        "points": points.points,
        "energy": thomson_energy(&points)?,
        "min_chord": toth_objective(&points),
        "e_g": report.e_g,
        "cpp_count": report.cpps.len(),
    });
    if json {
        return Ok(to_json_string(&v));
    }
    let mut out = String::new();
    writeln!(out, "{} n={n}", v["problem"].as_str().unwrap()).unwrap();
    writeln!(out, "Coulomb energy: {:.12}", v["energy"].as_f64().unwrap()).unwrap();
    writeln!(out, "minimum chord:  {:.12}", v["min_chord"].as_f64().unwrap()).unwrap();
    writeln!(out, "E_g of the Majorana state: {:.12} ({} CPPs)", report.e_g, report.cpps.len()).unwrap();
    Ok(out)
}

fn lmg_cmd(p: &LmgParams, json: bool) -> CliResult {
    let r = lmg::analyze(p)?;
    let state = lmg::ground_state(p)?;
    let v = json!({
        "params": p,
        "energy": r.energy,
        "state": state_to_json(&state),
        "mps": r.mps,
        "cpps": r.cpps.cpps,
        "e_g": r.cpps.e_g,
        "cpp_latitude": r.cpp_latitude,
        "continuum_cpp_latitude": r.continuum_cpp_latitude,
        "imaginary_circle_deviation": r.imaginary_circle_deviation,
    });
    if json {
        return Ok(to_json_string(&v));
    }
    let mut out = String::new();
    writeln!(out, "spin {} (n = {}), gamma {}, h {}", p.spin(), p.two_s, p.gamma, p.h).unwrap();
    writeln!(out, "ground energy: {:.12}", r.energy).unwrap();
    writeln!(out, "E_g: {:.12}", r.cpps.e_g).unwrap();
    writeln!(out, "CPP latitude: {:.12} (continuum {:.12})", r.cpp_latitude, r.continuum_cpp_latitude).unwrap();
    writeln!(out, "largest MP distance from the imaginary great circle: {:.3e}", r.imaginary_circle_deviation).unwrap();
    Ok(out)
}

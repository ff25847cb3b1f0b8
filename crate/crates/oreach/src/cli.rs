//! Command-line driver. Exit codes: 0 safe or success, 1 unsafe (or a
//! violation found by the oracle), 2 usage, input or internal errors,
//! 3 inconclusive because a resource limit was hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use oreach_core::breach::{breach_with, BreachError, Limits, QeExecutor, Sequential, Status, Verdict};
use oreach_core::cover::{eliminate, CoverError};
use oreach_core::ground::{encode_qff, GroundError};
use oreach_core::logic::{Constraint, Formula, Signature};
use oreach_core::ontology::{standard_translate, validate, UniversalTheory};
use oreach_core::oracle::{bounded_forward_verify, ForwardOutcome};
use oreach_core::sas::{eliminate_case_functions, ArtifactSystem};
use thiserror::Error;

use crate::formula::parse_formula_in;
use crate::onto::{parse_onto_in, OntoDoc};
use crate::parallel::Pool;
use crate::report::TraceReport;
use crate::sas::parse_sas_in;
use crate::span::Diagnostic;

#[derive(Parser, Debug)]
#[command(name = "oreach", version, about = "Safety verification for artifact systems over RDFS+ ontologies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse and validate an ontology.
    CheckOnto { file: PathBuf },
    /// Print the universal clauses and ground literals of an ontology.
    Translate { file: PathBuf },
    /// Decide safety by backward reachability.
    Verify(VerifyArgs),
    /// Eliminate variables from a conjunction of literals.
    Qe {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        constraint: String,
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
    },
    /// Brute-force checks over small finite models.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Bounded forward search for a violation.
    Verify {
        #[arg(long)]
        onto: PathBuf,
        #[arg(long)]
        sas: PathBuf,
        #[arg(long = "unsafe")]
        unsafe_expr: String,
        #[arg(long)]
        domain: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        with_undef: Option<String>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    onto: PathBuf,
    #[arg(long)]
    sas: PathBuf,
    #[arg(long = "unsafe", conflicts_with = "unsafe_file", required_unless_present = "unsafe_file")]
    unsafe_expr: Option<String>,
    #[arg(long)]
    unsafe_file: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    #[arg(long, default_value_t = Limits::default().max_iterations)]
    max_iters: usize,
    /// Treat this individual as the undefined value.
    #[arg(long)]
    with_undef: Option<String>,
    /// Threads for quantifier elimination.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Re-check the accumulator invariant each iteration and closure at the end.
    #[arg(long)]
    check_invariants: bool,
    /// Skip building a concrete model for unsafe traces.
    #[arg(long)]
    no_witness: bool,
    /// Debugging: write the CNF of the final check in DIMACS format.
    #[arg(long, hide = true)]
    dimacs_out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] Diagnostic),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Limit(_) => 3,
            _ => 2,
        }
    }
}

fn breach_error(e: BreachError) -> CliError {
    match e {
        BreachError::Ground(GroundError::Budget)
        | BreachError::Ground(GroundError::DomainTooLarge { .. })
        | BreachError::Cover(CoverError::Budget { .. })
        | BreachError::Inconclusive { .. } => CliError::Limit(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_onto(path: &Path) -> Result<OntoDoc, CliError> {
    let file = path.display().to_string();
    let doc = parse_onto_in(&file, &read(path)?)?;
    let problems = validate(&doc.ontology);
    if !problems.is_empty() {
        return Err(CliError::Invalid(format!("{file}: {}", problems.join("; "))));
    }
    Ok(doc)
}

fn load_system(onto: &Path, sas: &Path, undef: Option<&str>) -> Result<ArtifactSystem, CliError> {
    let o = load_onto(onto)?;
    let file = sas.display().to_string();
    let doc = parse_sas_in(&file, &read(sas)?)?;
    let s = doc.system(&o.ontology, undef);
    let problems = s.validate();
    if !problems.is_empty() {
        return Err(CliError::Invalid(format!("{file}: {}", problems.join("; "))));
    }
    Ok(s)
}

/// The safety formula over the variables of `s`. Names that are neither
/// variables nor known individuals are most likely typos, so they are
/// rejected rather than read as fresh constants.
fn unsafe_formula(s: &ArtifactSystem, file: &str, text: &str) -> Result<Formula, CliError> {
    let is_var = |n: &str| s.vars.iter().any(|x| x.as_ref() == n);
    let nu = parse_formula_in(file, text, &is_var)?;
    let known = s.signature().individuals;
    if let Some(a) = Signature::of(&nu).individuals.iter().find(|a| !known.contains(*a)) {
        return Err(CliError::Invalid(format!(
            "{file}: `{a}` is neither an artifact variable nor a declared individual"
        )));
    }
    Ok(nu)
}

fn case_free(s: ArtifactSystem) -> Result<ArtifactSystem, CliError> {
    if s.transitions.iter().all(|t| t.is_case_free()) {
        return Ok(s);
    }
    eliminate_case_functions(&s).map_err(|e| CliError::Invalid(e.to_string()))
}

fn check_onto(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = load_onto(path)?;
    let o = &doc.ontology;
    standard_translate(o).map_err(|e| CliError::Invalid(e.to_string()))?;
    let sig = o.signature();
    let positive = o.abox.iter().filter(|a| a.is_positive()).count();
    let _ = writeln!(out, "{}: ok", path.display());
    let _ = writeln!(out, "inclusions: {}", o.tbox.len());
    let _ = writeln!(out, "assertions: {} ({positive} positive)", o.abox.len());
    let _ = writeln!(
        out,
        "concepts: {}, roles: {}, individuals: {}",
        sig.concepts.len(),
        sig.roles.len(),
        sig.individuals.len()
    );
    Ok(0)
}

fn translate(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = load_onto(path)?;
    let t = standard_translate(&doc.ontology).map_err(|e| CliError::Invalid(e.to_string()))?;
    for c in &t.clauses {
        let _ = writeln!(out, "{c}");
    }
    for l in &t.ground {
        let _ = writeln!(out, "{l}");
    }
    Ok(0)
}

/// CNF of the check that settled the verdict: the unrolled run for an
/// unsafe answer, the initial state against the reached region for a safe
/// one (unsatisfiable).
fn final_check_cnf(s: &ArtifactSystem, t: &UniversalTheory, v: &Verdict) -> Result<String, CliError> {
    let f = match &v.trace {
        Some(tr) => tr.formula.clone(),
        None => Formula::and([s.init_formula(), Formula::or(v.frames.iter().map(|f| f.formula()))]),
    };
    let enc = encode_qff(t, &f).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(enc.to_dimacs())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let s = load_system(&a.onto, &a.sas, a.with_undef.as_deref())?;
    let nu = match (&a.unsafe_expr, &a.unsafe_file) {
        (Some(text), _) => unsafe_formula(&s, "--unsafe", text)?,
        (None, Some(path)) => unsafe_formula(&s, &path.display().to_string(), &read(path)?)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let s = case_free(s)?;
    let limits = Limits {
        max_iterations: a.max_iters,
        check_invariants: a.check_invariants,
        witness: !a.no_witness,
        ..Limits::default()
    };
    let pool;
    let qe: &dyn QeExecutor = if a.jobs > 1 {
        pool = Pool::new(a.jobs).map_err(|e| CliError::Invalid(e.to_string()))?;
        &pool
    } else {
        &Sequential
    };
    let start = Instant::now();
    let mut progress = |p: &oreach_core::breach::Progress| {
        log::info!(
            "iteration {}: {} disjuncts, {} reached, {:.3}s",
            p.iteration,
            p.disjuncts,
            p.reached,
            start.elapsed().as_secs_f64()
        );
    };
    let (report, code, verdict) = match breach_with(&s, &nu, limits, qe, &mut progress) {
        Ok(v) => {
            let code = if v.status == Status::Safe { 0 } else { 1 };
            (TraceReport::from_verdict(&s, &v), code, Some(v))
        }
        Err(BreachError::Inconclusive { iterations }) => (TraceReport::inconclusive(iterations), 3, None),
        Err(e) => return Err(breach_error(e)),
    };
    log::info!("{} after {} iterations, {:.3}s", report.status, report.iterations, start.elapsed().as_secs_f64());
    let json = report.to_json();
    let _ = out.write_all(json.as_bytes());
    if let Some(path) = &a.trace_out {
        write_file(path, &json)?;
    }
    if let (Some(path), Some(v)) = (&a.dimacs_out, &verdict) {
        let t = s.theory().map_err(|e| CliError::Invalid(e.to_string()))?;
        write_file(path, &final_check_cnf(&s, &t, v)?)?;
    }
    Ok(code)
}

fn qe(onto: &Path, constraint: &str, drop: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = load_onto(onto)?;
    let t = standard_translate(&doc.ontology).map_err(|e| CliError::Invalid(e.to_string()))?;
    let individuals = doc.ontology.signature().individuals;
    let is_var = |n: &str| !individuals.iter().any(|a| a.as_ref() == n);
    let f = parse_formula_in("--constraint", constraint, &is_var)?;
    let lits = f
        .conjuncts()
        .iter()
        .map(|c| c.as_literal())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Invalid(String::from("--constraint: expected a conjunction of literals")))?;
    let delta = Constraint::new(lits);
    let drop: Vec<_> = drop.iter().map(|x| oreach_core::logic::name(x)).collect();
    let res = eliminate(&t, &delta, &drop).map_err(|e| match e {
        CoverError::Budget { .. } => CliError::Limit(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    })?;
    let _ = writeln!(out, "{}", res.formula);
    Ok(0)
}

fn oracle_verify(
    onto: &Path,
    sas: &Path,
    unsafe_expr: &str,
    domain: usize,
    depth: usize,
    undef: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let s = load_system(onto, sas, undef)?;
    let nu = unsafe_formula(&s, "--unsafe", unsafe_expr)?;
    let s = case_free(s)?;
    match bounded_forward_verify(&s, &nu, domain, depth) {
        Ok(ForwardOutcome::NoViolation { states }) => {
            let _ = writeln!(out, "no violation: domain <= {domain}, depth <= {depth}, {states} states");
            Ok(0)
        }
        Ok(ForwardOutcome::Violation(run)) => {
            let names: Vec<String> = run.steps.iter().map(|st| s.transitions[st.transition].name.to_string()).collect();
            let _ = writeln!(out, "violation: {} steps: {}", names.len(), names.join(" "));
            Ok(1)
        }
        Err(oreach_core::oracle::OracleError::Budget) => Err(CliError::Limit(String::from("oracle state budget exhausted"))),
        Err(e) => Err(CliError::Invalid(e.to_string())),
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("OREACH_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let res = match &cli.cmd {
        Cmd::CheckOnto { file } => check_onto(file, out),
        Cmd::Translate { file } => translate(file, out),
        Cmd::Verify(a) => verify(a, out),
        Cmd::Qe { onto, constraint, drop } => qe(onto, constraint, drop, out),
        Cmd::Oracle { cmd: OracleCmd::Verify { onto, sas, unsafe_expr, domain, depth, with_undef } } => {
            oracle_verify(onto, sas, unsafe_expr, *domain, *depth, with_undef.as_deref(), out)
        }
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

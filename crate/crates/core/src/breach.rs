//! Backward reachability. Starting from the unsafe states, preimages are
//! computed and quantified away until either the initial state is reached
//! or no new states appear modulo `T`.
//!
//! Frames are kept as lists of disjuncts, each remembering the transition
//! and the disjunct of the previous frame it came from, so that an unsafe
//! answer can be turned into a concrete run without searching again.
//! A new disjunct already implied by the accumulated region is dropped
//! before it enters a frame; it would be absorbed by the fixpoint test
//! anyway.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{eliminate_with, CoverError, CoverOptions, CoverResult};
use crate::ground::{sat_qff, GroundError, GroundSession, GroundingDomain, Witness};
use crate::logic::{to_dnf, Constraint, Formula, LogicError, Name, Signature, Term, DEFAULT_DNF_BUDGET};
use crate::ontology::{InvalidOntology, UniversalTheory};
use crate::oracle::{check_model, Elem, FiniteInterpretation};
use crate::sas::{build_unsafe_formula, preimage_constraint, split_step_var, ArtifactSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_iterations: usize,
    /// Re-check the accumulator invariant every iteration and closure of
    /// the reached region under preimage after a safe verdict.
    pub check_invariants: bool,
    /// Lift a concrete model for unsafe traces.
    pub witness: bool,
    pub cover: CoverOptions,
    pub conflict_budget: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_iterations: 10_000,
            check_invariants: false,
            witness: true,
            cover: CoverOptions::default(),
            conflict_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BreachError {
    Ontology(InvalidOntology),
    Precondition(String),
    Ground(GroundError),
    Cover(CoverError),
    Logic(LogicError),
    /// The iteration limit was hit before a verdict.
    Inconclusive { iterations: usize },
    /// An internal self-check failed. Never expected.
    Internal(String),
}

impl fmt::Display for BreachError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BreachError::Ontology(e) => write!(f, "{e}"),
            BreachError::Precondition(m) => write!(f, "{m}"),
            BreachError::Ground(e) => write!(f, "{e}"),
            BreachError::Cover(e) => write!(f, "{e}"),
            BreachError::Logic(e) => write!(f, "{e}"),
            BreachError::Inconclusive { iterations } => {
                write!(f, "inconclusive: no verdict after {iterations} iterations")
            }
            BreachError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<GroundError> for BreachError {
    fn from(e: GroundError) -> Self {
        BreachError::Ground(e)
    }
}

impl From<CoverError> for BreachError {
    fn from(e: CoverError) -> Self {
        BreachError::Cover(e)
    }
}

impl From<LogicError> for BreachError {
    fn from(e: LogicError) -> Self {
        BreachError::Logic(e)
    }
}

impl From<InvalidOntology> for BreachError {
    fn from(e: InvalidOntology) -> Self {
        BreachError::Ontology(e)
    }
}

/// Where a disjunct came from: transition index and the disjunct of the
/// previous frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Origin {
    pub transition: usize,
    pub parent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub index: usize,
    pub disjuncts: Vec<Constraint>,
    /// Parallel to `disjuncts`; `None` in frame 0.
    pub produced_by: Vec<Option<Origin>>,
}

impl Frame {
    pub fn formula(&self) -> Formula {
        Formula::from_cubes(&self.disjuncts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Safe,
    Unsafe,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Safe => "safe",
            Status::Unsafe => "unsafe",
        })
    }
}

/// A concrete run: a model of `T`, the variable values at every step and
/// the parameter values of every transition taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteRun {
    pub model: FiniteInterpretation,
    pub states: Vec<BTreeMap<Name, Elem>>,
    pub params: Vec<BTreeMap<Name, Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsafeTrace {
    /// Transition indices, in execution order.
    pub transitions: Vec<usize>,
    pub names: Vec<Name>,
    /// The unrolled run formula, checked satisfiable.
    pub formula: Formula,
    pub witness: Option<ConcreteRun>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub iterations: usize,
    pub frames: Vec<Frame>,
    pub trace: Option<UnsafeTrace>,
    pub sat_checks: u64,
}

/// One line of progress per iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub iteration: usize,
    pub disjuncts: usize,
    pub reached: usize,
}

/// One quantifier elimination request: a disjunct and the variables to drop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QeJob {
    pub delta: Constraint,
    pub drop: Vec<Name>,
}

/// Runs batches of eliminations. The results must come back in job order.
pub trait QeExecutor {
    fn run(
        &self,
        t: &UniversalTheory,
        scope: &BTreeSet<Name>,
        opts: CoverOptions,
        jobs: &[QeJob],
    ) -> Vec<Result<CoverResult, CoverError>>;
}

pub struct Sequential;

impl QeExecutor for Sequential {
    fn run(
        &self,
        t: &UniversalTheory,
        scope: &BTreeSet<Name>,
        opts: CoverOptions,
        jobs: &[QeJob],
    ) -> Vec<Result<CoverResult, CoverError>> {
        jobs.iter().map(|j| eliminate_with(t, &j.delta, &j.drop, scope, opts)).collect()
    }
}

pub fn breach(s: &ArtifactSystem, nu: &Formula, limits: Limits) -> Result<Verdict, BreachError> {
    breach_with(s, nu, limits, &Sequential, &mut |_| {})
}

pub fn breach_with(
    s: &ArtifactSystem,
    nu: &Formula,
    limits: Limits,
    qe: &dyn QeExecutor,
    progress: &mut dyn FnMut(&Progress),
) -> Result<Verdict, BreachError> {
    check_preconditions(s, nu)?;
    let t = s.theory()?;
    let mut sig = s.signature();
    sig.union(&Signature::of(nu));
    let scope = sig.individuals.clone();
    let domain = GroundingDomain::new(
        s.vars.iter().cloned().map(Term::Var).chain(scope.iter().cloned().map(Term::Ind)),
    );
    let mut session = GroundSession::new(&t, domain, &sig);
    session.set_conflict_budget(limits.conflict_budget);
    let init = s.init_formula();

    let first = to_dnf(nu, DEFAULT_DNF_BUDGET)?;
    let mut frame = Frame { index: 0, produced_by: alloc::vec![None; first.len()], disjuncts: first };
    let mut frames: Vec<Frame> = Vec::new();
    let mut reached: Vec<Constraint> = Vec::new();
    let mut iterations = 0;

    loop {
        let phi = frame.formula();
        let b = Formula::from_cubes(&reached);
        if !session.is_sat(&Formula::and([phi.clone(), Formula::negate(b.clone())]))? {
            break;
        }
        if iterations >= limits.max_iterations {
            return Err(BreachError::Inconclusive { iterations });
        }
        iterations += 1;
        progress(&Progress { iteration: frame.index, disjuncts: frame.disjuncts.len(), reached: reached.len() });
        log::debug!("frame {}: {} disjuncts, {} reached", frame.index, frame.disjuncts.len(), reached.len());

        for (k, d) in frame.disjuncts.iter().enumerate() {
            if session.is_sat(&Formula::and([init.clone(), d.to_formula()]))? {
                frames.push(frame.clone());
                let trace = reconstruct_trace(s, &t, nu, &frames, k, limits.witness)?;
                return Ok(Verdict {
                    status: Status::Unsafe,
                    iterations,
                    frames,
                    trace: Some(trace),
                    sat_checks: session.checks(),
                });
            }
        }

        reached.extend(frame.disjuncts.iter().cloned());
        let next = next_frame(&t, s, &scope, &frame, &reached, &mut session, qe, limits.cover)?;
        frames.push(frame);
        if limits.check_invariants {
            let accumulated = Formula::or(frames.iter().map(Frame::formula));
            let b = Formula::from_cubes(&reached);
            if !session.implies(&b, &accumulated)? || !session.implies(&accumulated, &b)? {
                return Err(BreachError::Internal(String::from("reached region differs from the union of frames")));
            }
        }
        frame = next;
    }

    if limits.check_invariants {
        let probe = Frame { index: frame.index, disjuncts: reached.clone(), produced_by: alloc::vec![None; reached.len()] };
        let post = next_frame(&t, s, &scope, &probe, &[], &mut session, qe, limits.cover)?;
        let b = Formula::from_cubes(&reached);
        if !session.implies(&post.formula(), &b)? {
            return Err(BreachError::Internal(String::from("reached region is not closed under preimage")));
        }
    }
    frames.push(frame);
    Ok(Verdict { status: Status::Safe, iterations, frames, trace: None, sat_checks: session.checks() })
}

fn check_preconditions(s: &ArtifactSystem, nu: &Formula) -> Result<(), BreachError> {
    if let Some(tau) = s.transitions.iter().find(|t| !t.is_case_free()) {
        return Err(BreachError::Precondition(alloc::format!(
            "transition `{}` has case-defined updates; eliminate them first",
            tau.name
        )));
    }
    let vars: BTreeSet<Name> = s.vars.iter().cloned().collect();
    if let Some(x) = crate::logic::free_vars(nu).into_iter().find(|x| !vars.contains(x)) {
        return Err(BreachError::Precondition(alloc::format!("unsafe formula mentions `{x}`, not an artifact variable")));
    }
    let problems = s.validate();
    if !problems.is_empty() {
        return Err(BreachError::Precondition(problems.join("; ")));
    }
    Ok(())
}

/// Preimage of every disjunct under every transition, in declaration
/// order, with the parameters eliminated and already-reached disjuncts
/// filtered out.
#[allow(clippy::too_many_arguments)]
fn next_frame(
    t: &UniversalTheory,
    s: &ArtifactSystem,
    scope: &BTreeSet<Name>,
    frame: &Frame,
    reached: &[Constraint],
    session: &mut GroundSession,
    qe: &dyn QeExecutor,
    opts: CoverOptions,
) -> Result<Frame, BreachError> {
    let outside = session.encode(&Formula::negate(Formula::from_cubes(reached)))?;
    let mut jobs = Vec::new();
    let mut origins = Vec::new();
    for (j, tau) in s.transitions.iter().enumerate() {
        for (k, d) in frame.disjuncts.iter().enumerate() {
            if let Some(pre) = preimage_constraint(tau, d) {
                jobs.push(QeJob { delta: pre, drop: tau.params.clone() });
                origins.push(Origin { transition: j, parent: k });
            }
        }
    }
    let mut next = Frame { index: frame.index + 1, disjuncts: Vec::new(), produced_by: Vec::new() };
    for (res, origin) in qe.run(t, scope, opts, &jobs).into_iter().zip(origins) {
        for c in res?.cubes {
            if next.disjuncts.contains(&c) {
                continue;
            }
            let inside = session.encode(&c.to_formula())?;
            if !session.is_sat_assuming(&[inside, outside])? {
                continue;
            }
            next.disjuncts.push(c);
            next.produced_by.push(Some(origin));
        }
    }
    Ok(next)
}

/// Follow the provenance links from disjunct `hit` of the last frame back to
/// the unsafe formula and verify the unrolled run.
pub fn reconstruct_trace(
    s: &ArtifactSystem,
    t: &UniversalTheory,
    nu: &Formula,
    frames: &[Frame],
    hit: usize,
    witness: bool,
) -> Result<UnsafeTrace, BreachError> {
    let mut js = Vec::new();
    let mut k = hit;
    for f in frames.iter().rev() {
        match f.produced_by.get(k).copied().flatten() {
            Some(o) => {
                js.push(o.transition);
                k = o.parent;
            }
            None => break,
        }
    }
    let formula = build_unsafe_formula(s, nu, &js);
    let verdict = sat_qff(t, &formula)?;
    if !verdict.satisfiable {
        return Err(BreachError::Internal(String::from("reconstructed trace is not satisfiable")));
    }
    let witness = match (witness, verdict.witness) {
        (true, Some(w)) => Some(extract_witness(s, t, &js, &w)?),
        _ => None,
    };
    Ok(UnsafeTrace {
        names: js.iter().map(|&j| s.transitions[j].name.clone()).collect(),
        transitions: js,
        formula,
        witness,
    })
}

/// Concretize a satisfying assignment of the unrolled run.
pub fn extract_witness(
    s: &ArtifactSystem,
    t: &UniversalTheory,
    js: &[usize],
    w: &Witness,
) -> Result<ConcreteRun, BreachError> {
    let (mut model, vals) = w.lift();
    model.declare(&t.signature());
    model.declare(&s.signature());
    let mut states = alloc::vec![BTreeMap::new(); js.len() + 1];
    let mut params = alloc::vec![BTreeMap::new(); js.len()];
    for (v, &e) in &vals {
        let Some((x, h)) = split_step_var(v) else { continue };
        if s.vars.iter().any(|y| y.as_ref() == x) {
            if let Some(st) = states.get_mut(h) {
                st.insert(crate::logic::name(x), e);
            }
        } else if let Some(p) = params.get_mut(h) {
            p.insert(crate::logic::name(x), e);
        }
    }
    match check_model(&model, t) {
        Ok(true) => Ok(ConcreteRun { model, states, params }),
        _ => Err(BreachError::Internal(String::from("lifted witness is not a model of the theory"))),
    }
}

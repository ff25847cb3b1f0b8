//! Bounded forward exploration of an artifact system over all models of
//! its ontology with at most `n` elements.
//!
//! Models are not enumerated up front. A search state carries a partial
//! model: the atoms forced true (closed under the Horn clauses of `T`) and
//! the atoms forced false. Firing a transition adds its guard literals and
//! is allowed iff the partial model stays consistent, which the least model
//! decides exactly. Every run in some model with at most `n` elements shows
//! up as a path here, and every path extends to such a model, so the answer
//! equals the one obtained by running every model separately.
//!
//! Parameters range over the elements already in use plus one fresh
//! element; fresh elements carry no facts and are interchangeable.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{eval_formula, eval_literal, for_each_partition, least_model, Assignment, Elem, FiniteInterpretation, Grid, OracleError};
use crate::logic::{to_dnf, Atom, Constraint, Formula, Literal, Name, Signature, Term, DEFAULT_DNF_BUDGET};
use crate::sas::{ArtifactSystem, Transition, Update};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardStep {
    pub transition: usize,
    pub params: Assignment,
    /// Variable values after the step.
    pub state: Assignment,
}

/// A concrete run: initial values, steps, and a model in which it happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardRun {
    pub model: FiniteInterpretation,
    pub initial: Assignment,
    pub steps: Vec<ForwardStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForwardOutcome {
    Violation(ForwardRun),
    NoViolation { states: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Partial {
    used: usize,
    facts: Vec<bool>,
    forbidden: BTreeSet<usize>,
    vals: Vec<Elem>,
}

struct Node {
    partial: Partial,
    constants: usize,
    parent: Option<(usize, usize, Assignment)>,
}

pub const DEFAULT_FORWARD_BUDGET: usize = 2_000_000;

pub fn bounded_forward_verify(
    s: &ArtifactSystem,
    nu: &Formula,
    n: usize,
    depth: usize,
) -> Result<ForwardOutcome, OracleError> {
    bounded_forward_verify_with(s, nu, n, depth, DEFAULT_FORWARD_BUDGET)
}

struct Ctx<'a> {
    s: &'a ArtifactSystem,
    grid: Grid,
    instances: Vec<Vec<(usize, bool)>>,
}

impl Ctx<'_> {
    fn var_index(&self, x: &Name) -> usize {
        self.s.vars.iter().position(|v| v == x).expect("artifact variable")
    }

    /// Add literals to a partial model; `None` if that is inconsistent.
    fn extend(&self, p: &Partial, lits: &[Literal], elem: &dyn Fn(&Term) -> usize) -> Option<Partial> {
        let mut q = p.clone();
        for l in lits {
            match &l.atom {
                Atom::Eq(a, b) => {
                    if (elem(a) == elem(b)) != l.positive {
                        return None;
                    }
                }
                a => {
                    let idx = self.grid.atom(a, elem)?;
                    if l.positive {
                        if q.forbidden.contains(&idx) {
                            return None;
                        }
                        q.facts[idx] = true;
                    } else {
                        if q.facts[idx] {
                            return None;
                        }
                        q.forbidden.insert(idx);
                    }
                }
            }
        }
        let forbidden: Vec<usize> = q.forbidden.iter().copied().collect();
        least_model(&self.instances, &mut q.facts, &forbidden).then_some(q)
    }

    fn model(&self, p: &Partial, cmap: &BTreeMap<Name, Elem>) -> FiniteInterpretation {
        let mut full = self.grid.to_interpretation(&p.facts, cmap);
        full.domain.truncate(p.used.max(1));
        full
    }
}

pub fn bounded_forward_verify_with(
    s: &ArtifactSystem,
    nu: &Formula,
    n: usize,
    depth: usize,
    budget: usize,
) -> Result<ForwardOutcome, OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition("domain size must be positive"));
    }
    if !s.transitions.iter().all(Transition::is_case_free) {
        return Err(OracleError::Precondition("case-defined updates must be eliminated first"));
    }
    let t = s.theory().map_err(|_| OracleError::Precondition("ontology is not well formed"))?;
    let mut sig = s.signature();
    sig.union(&Signature::of(nu));
    let grid = Grid::new(n, &sig);
    let instances = grid.instances(&t);
    let ctx = Ctx { s, grid, instances };
    let nu_cubes = to_dnf(nu, DEFAULT_DNF_BUDGET).map_err(|_| OracleError::Budget)?;
    let constants: Vec<Name> = sig.individuals.iter().cloned().collect();

    // one root per way of identifying constants
    let mut cmaps: Vec<BTreeMap<Name, Elem>> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut visited: BTreeSet<Partial> = BTreeSet::new();
    for_each_partition(constants.len(), n, &mut |blocks| {
        let cmap: BTreeMap<Name, Elem> = constants.iter().cloned().zip(blocks.iter().map(|&b| b as Elem)).collect();
        let used = blocks.iter().copied().max().map_or(0, |m| m + 1);
        let empty = Partial { used, facts: alloc::vec![false; ctx.grid.len()], forbidden: BTreeSet::new(), vals: Vec::new() };
        let elem = |t: &Term| cmap[t.name()] as usize;
        if let Some(mut p) = ctx.extend(&empty, &t.ground, &elem) {
            p.vals = s
                .vars
                .iter()
                .map(|x| {
                    let a = &s.init.iter().find(|(v, _)| v == x).expect("initialised").1;
                    cmap[a]
                })
                .collect();
            if visited.insert(p.clone()) {
                nodes.push(Node { partial: p, constants: cmaps.len(), parent: None });
                cmaps.push(cmap);
            }
        }
        true
    });

    let mut frontier: Vec<usize> = (0..nodes.len()).collect();
    for level in 0..=depth {
        let mut next = Vec::new();
        for &id in &frontier {
            if let Some(run) = check_nu(&ctx, &nodes, &cmaps, id, &nu_cubes) {
                return Ok(ForwardOutcome::Violation(run));
            }
            if level == depth {
                continue;
            }
            for (j, tau) in s.transitions.iter().enumerate() {
                let mut succ = Vec::new();
                successors(&ctx, &nodes[id].partial, &cmaps[nodes[id].constants], tau, n, &mut succ);
                for (p, params) in succ {
                    if visited.insert(p.clone()) {
                        if visited.len() > budget {
                            return Err(OracleError::Budget);
                        }
                        let constants = nodes[id].constants;
                        nodes.push(Node { partial: p, constants, parent: Some((id, j, params)) });
                        next.push(nodes.len() - 1);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(ForwardOutcome::NoViolation { states: visited.len() })
}

fn successors(
    ctx: &Ctx<'_>,
    p: &Partial,
    cmap: &BTreeMap<Name, Elem>,
    tau: &Transition,
    n: usize,
    out: &mut Vec<(Partial, Assignment)>,
) {
    let k = tau.params.len();
    let mut choice = alloc::vec![0usize; k];
    fn rec(
        i: usize,
        used: usize,
        n: usize,
        choice: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize], usize),
    ) {
        if i == choice.len() {
            f(choice, used);
            return;
        }
        for e in 0..(used + 1).min(n) {
            choice[i] = e;
            rec(i + 1, used.max(e + 1), n, choice, f);
        }
    }
    rec(0, p.used, n, &mut choice, &mut |choice, used| {
        let params: Assignment = tau.params.iter().cloned().zip(choice.iter().map(|&e| e as Elem)).collect();
        let elem = |t: &Term| -> usize {
            match t {
                Term::Ind(a) => cmap[a] as usize,
                Term::Var(x) => match params.get(x) {
                    Some(&e) => e as usize,
                    None => p.vals[ctx.var_index(x)] as usize,
                },
            }
        };
        let mut base = p.clone();
        base.used = used;
        if let Some(mut q) = ctx.extend(&base, tau.guard.literals(), &elem) {
            q.vals = ctx
                .s
                .vars
                .iter()
                .map(|x| {
                    let (_, u) = tau.updates.iter().find(|(v, _)| v == x).expect("total updates");
                    let Update::Term(t) = u else { unreachable!() };
                    elem(t) as Elem
                })
                .collect();
            out.push((q, params));
        }
    });
}

fn check_nu(
    ctx: &Ctx<'_>,
    nodes: &[Node],
    cmaps: &[BTreeMap<Name, Elem>],
    id: usize,
    cubes: &[Constraint],
) -> Option<ForwardRun> {
    let node = &nodes[id];
    let cmap = &cmaps[node.constants];
    let p = &node.partial;
    let elem = |t: &Term| -> usize {
        match t {
            Term::Ind(a) => cmap[a] as usize,
            Term::Var(x) => p.vals[ctx.var_index(x)] as usize,
        }
    };
    let fin = cubes.iter().find_map(|c| ctx.extend(p, c.literals(), &elem))?;

    let mut chain = Vec::new();
    let mut cur = id;
    while let Some((parent, j, params)) = &nodes[cur].parent {
        chain.push((cur, *j, params.clone()));
        cur = *parent;
    }
    chain.reverse();
    let assignment = |vals: &[Elem]| -> Assignment { ctx.s.vars.iter().cloned().zip(vals.iter().copied()).collect() };
    Some(ForwardRun {
        model: ctx.model(&fin, cmap),
        initial: assignment(&nodes[cur].partial.vals),
        steps: chain
            .into_iter()
            .map(|(nid, j, params)| ForwardStep { transition: j, params, state: assignment(&nodes[nid].partial.vals) })
            .collect(),
    })
}

/// Value of an update in a concrete model; case functions pick the branch
/// whose case holds (the first, if several do).
fn update_value(
    i: &FiniteInterpretation,
    env: &Assignment,
    u: &Update,
) -> Result<Option<Elem>, OracleError> {
    match u {
        Update::Term(t) => i.elem(t, env).map(Some),
        Update::Case(cf) => {
            for (k, t) in cf.cases() {
                if eval_literal(i, env, k)? {
                    return i.elem(t, env).map(Some);
                }
            }
            Ok(None)
        }
    }
}

/// All states reachable in one step of `tau` from `state` in the model `i`,
/// each with the parameter values used.
pub fn step_successors(
    i: &FiniteInterpretation,
    s: &ArtifactSystem,
    tau: &Transition,
    state: &Assignment,
) -> Result<BTreeSet<Assignment>, OracleError> {
    let mut out = BTreeSet::new();
    let k = tau.params.len();
    let d = i.domain.len();
    let mut idx = alloc::vec![0usize; k];
    'outer: loop {
        let mut env = state.clone();
        for (p, &e) in tau.params.iter().zip(&idx) {
            env.insert(p.clone(), i.domain[e]);
        }
        if eval_formula(i, &env, &tau.guard.to_formula())? {
            let mut next = Assignment::new();
            let mut defined = true;
            for x in &s.vars {
                let (_, u) = tau.updates.iter().find(|(v, _)| v == x).ok_or(OracleError::Precondition("updates must be total"))?;
                match update_value(i, &env, u)? {
                    Some(e) => {
                        next.insert(x.clone(), e);
                    }
                    None => defined = false,
                }
            }
            if defined {
                out.insert(next);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                break 'outer;
            }
            idx[pos] += 1;
            if idx[pos] < d {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
    Ok(out)
}

/// Replay a run concretely: `ι` holds initially, every step's guard holds
/// and its updates produce the recorded state, and `ν` holds at the end.
pub fn replay_run(s: &ArtifactSystem, nu: &Formula, run: &ForwardRun) -> Result<bool, OracleError> {
    let i = &run.model;
    let t = s.theory().map_err(|_| OracleError::Precondition("ontology is not well formed"))?;
    if !super::check_model(i, &t)? || !eval_formula(i, &run.initial, &s.init_formula())? {
        return Ok(false);
    }
    let mut state = run.initial.clone();
    for step in &run.steps {
        let tau = &s.transitions[step.transition];
        let mut env = state.clone();
        env.extend(step.params.iter().map(|(k, v)| (k.clone(), *v)));
        if !eval_formula(i, &env, &tau.guard.to_formula())? {
            return Ok(false);
        }
        for (x, u) in &tau.updates {
            if update_value(i, &env, u)? != step.state.get(x).copied() {
                return Ok(false);
            }
        }
        state = step.state.clone();
    }
    eval_formula(i, &state, nu)
}

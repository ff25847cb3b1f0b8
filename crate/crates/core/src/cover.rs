//! Quantifier elimination in the model completion of `T`: the strongest
//! quantifier-free consequence of `∃ȳ δ` over the remaining vocabulary.
//!
//! The result is computed as a projection. Ground `T ∪ δ` over a domain
//! holding the kept variables, the constants in scope and the eliminated
//! variables; the hidden atoms are those mentioning an eliminated variable.
//! The projection of the ground clause set onto the target atoms is
//! enumerated as a disjunction of cubes, AllSAT style: each model is
//! shrunk to a target cube that alone satisfies every clause not already
//! satisfied by the model's hidden atoms, and the cube is blocked.
//!
//! Ground clauses over target atoms only are left out. They are exactly the
//! grounding of `T` over the target constants, so the projection differs
//! from the full one by a conjunct that `T` already implies; entailment of
//! target clauses, which is what the contract speaks about, is unaffected.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::ground::{GroundError, GroundSession, GroundingDomain};
use crate::logic::{free_vars, to_dnf, Atom, Constraint, Formula, Literal, LogicError, Name, Signature, Substitution, Term, DEFAULT_DNF_BUDGET};
use crate::ontology::UniversalTheory;
use crate::sat::{Lit, SolveResult, Solver, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    /// More cubes than the configured limit.
    Budget { cubes: usize },
    Logic(LogicError),
    Ground(GroundError),
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::Budget { cubes } => write!(f, "quantifier elimination exceeded {cubes} cubes"),
            CoverError::Logic(e) => write!(f, "{e}"),
            CoverError::Ground(e) => write!(f, "{e}"),
        }
    }
}

impl From<GroundError> for CoverError {
    fn from(e: GroundError) -> Self {
        CoverError::Ground(e)
    }
}

impl From<LogicError> for CoverError {
    fn from(e: LogicError) -> Self {
        CoverError::Logic(e)
    }
}

/// What survives elimination: kept variables and constants in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TargetVocabulary {
    pub kept: BTreeSet<Name>,
    pub constants: BTreeSet<Name>,
}

impl TargetVocabulary {
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.kept.iter().cloned().map(Term::Var).chain(self.constants.iter().cloned().map(Term::Ind))
    }

    pub fn contains(&self, t: &Term) -> bool {
        match t {
            Term::Var(x) => self.kept.contains(x),
            Term::Ind(a) => self.constants.contains(a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub formula: Formula,
    /// The same formula as a list of disjuncts.
    pub cubes: Vec<Constraint>,
    pub eliminated: Vec<Name>,
}

impl CoverResult {
    fn from_cubes(cubes: Vec<Constraint>, eliminated: Vec<Name>) -> Self {
        CoverResult { formula: Formula::from_cubes(&cubes), cubes, eliminated }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub max_cubes: usize,
    /// Drop cubes that are `T`-inconsistent and cubes subsumed by others.
    pub simplify: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { max_cubes: 100_000, simplify: true }
    }
}

/// `∃ drop. δ` modulo the model completion of `T`. Constants in scope are
/// the individuals of `T` and `δ`.
pub fn eliminate(t: &UniversalTheory, delta: &Constraint, drop: &[Name]) -> Result<CoverResult, CoverError> {
    eliminate_with(t, delta, drop, &BTreeSet::new(), CoverOptions::default())
}

/// As [`eliminate`], with extra constants kept in the target vocabulary.
pub fn eliminate_with(
    t: &UniversalTheory,
    delta: &Constraint,
    drop: &[Name],
    scope: &BTreeSet<Name>,
    opts: CoverOptions,
) -> Result<CoverResult, CoverError> {
    let eliminated: Vec<Name> = drop.to_vec();
    let drop: BTreeSet<Name> = drop.iter().cloned().collect();
    let Some(delta) = solve_equalities(delta, &drop) else {
        return Ok(CoverResult::from_cubes(Vec::new(), eliminated));
    };
    let hidden: BTreeSet<Name> = free_vars(&delta).intersection(&drop).cloned().collect();

    let mut vocab = TargetVocabulary::default();
    vocab.kept = free_vars(&delta).difference(&drop).cloned().collect();
    vocab.constants = t.individuals();
    vocab.constants.extend(Signature::of(&delta).individuals);
    vocab.constants.extend(scope.iter().cloned());

    let cubes = if hidden.is_empty() {
        alloc::vec![delta.clone()]
    } else {
        project(t, &delta, &vocab, &hidden, opts.max_cubes)?
    };
    let cubes = if opts.simplify {
        let mut sig = t.signature();
        sig.union(&Signature::of(&delta));
        simplify(t, &vocab, &sig, cubes)?
    } else {
        cubes
    };
    Ok(CoverResult::from_cubes(cubes, eliminated))
}

/// Substitute away eliminated variables bound by a positive equality and
/// drop `t = t`. `None` if the constraint becomes contradictory.
fn solve_equalities(delta: &Constraint, drop: &BTreeSet<Name>) -> Option<Constraint> {
    let mut d = delta.clone();
    loop {
        let bound = d.literals().iter().find_map(|l| match (&l.atom, l.positive) {
            (Atom::Eq(s, u), true) if s != u => match (s, u) {
                (Term::Var(x), other) if drop.contains(x) => Some((x.clone(), other.clone())),
                (other, Term::Var(x)) if drop.contains(x) => Some((x.clone(), other.clone())),
                _ => None,
            },
            _ => None,
        });
        let Some((x, u)) = bound else { break };
        let mut sigma = Substitution::new();
        sigma.insert(x, u);
        d = d.substitute(&sigma);
        d = d.literals().iter().filter(|l| l.trivial_value() != Some(true)).cloned().collect();
    }
    let d: Constraint = d.literals().iter().filter(|l| l.trivial_value() != Some(true)).cloned().collect();
    (!d.is_contradictory()).then_some(d)
}

struct Cnf {
    atoms: BTreeMap<Atom, Var>,
    atom_list: Vec<Atom>,
    clauses: Vec<Vec<Lit>>,
    truth: Option<Var>,
}

impl Cnf {
    fn var(&mut self, a: Atom) -> Var {
        if let Some(&v) = self.atoms.get(&a) {
            return v;
        }
        let v = Var(self.atom_list.len() as u32);
        self.atoms.insert(a.clone(), v);
        self.atom_list.push(a);
        v
    }

    fn lit(&mut self, l: &Literal) -> Lit {
        let v = if l.atom.is_reflexive_eq() {
            *self.truth.get_or_insert_with(|| Var(u32::MAX))
        } else {
            self.var(l.atom.clone())
        };
        debug_assert!(v.0 != u32::MAX, "reflexive equality reaches the CNF");
        Lit::new(v, l.positive)
    }

    fn push(&mut self, lits: &[Literal]) {
        if lits.iter().any(|l| l.trivial_value() == Some(true)) {
            return;
        }
        let c: Vec<Lit> = lits.iter().filter(|l| l.trivial_value().is_none()).map(|l| self.lit(l)).collect();
        self.clauses.push(c);
    }
}

fn project(
    t: &UniversalTheory,
    delta: &Constraint,
    vocab: &TargetVocabulary,
    hidden: &BTreeSet<Name>,
    max_cubes: usize,
) -> Result<Vec<Constraint>, CoverError> {
    let targets: Vec<Term> = vocab.terms().collect();
    let hid: Vec<Term> = hidden.iter().cloned().map(Term::Var).collect();
    let all: Vec<Term> = targets.iter().chain(&hid).cloned().collect();
    let is_hidden = |x: &Term| matches!(x, Term::Var(v) if hidden.contains(v));

    let mut sig = t.signature();
    sig.union(&Signature::of(delta));
    let mut cnf = Cnf { atoms: BTreeMap::new(), atom_list: Vec::new(), clauses: Vec::new(), truth: None };

    for l in delta.literals() {
        cnf.push(core::slice::from_ref(l));
    }
    for c in &t.clauses {
        for x in &all {
            if c.arity() == 1 {
                if is_hidden(x) {
                    cnf.push(&c.instantiate(x, x));
                }
                continue;
            }
            for y in &all {
                if is_hidden(x) || is_hidden(y) {
                    cnf.push(&c.instantiate(x, y));
                }
            }
        }
    }
    let eq = |a: &Term, b: &Term| Atom::eq(a.clone(), b.clone());
    for a in &all {
        for b in &all {
            if a == b {
                continue;
            }
            let ab_hidden = is_hidden(a) || is_hidden(b);
            for c in &all {
                if c != a && c != b && (ab_hidden || is_hidden(c)) {
                    cnf.push(&[Literal::neg(eq(a, b)), Literal::neg(eq(b, c)), Literal::pos(eq(a, c))]);
                }
            }
            if ab_hidden {
                for k in &sig.concepts {
                    cnf.push(&[
                        Literal::neg(eq(a, b)),
                        Literal::neg(Atom::Concept(k.clone(), a.clone())),
                        Literal::pos(Atom::Concept(k.clone(), b.clone())),
                    ]);
                }
            }
            for r in &sig.roles {
                for o in &all {
                    if !(ab_hidden || is_hidden(o)) {
                        continue;
                    }
                    cnf.push(&[
                        Literal::neg(eq(a, b)),
                        Literal::neg(Atom::Role(r.clone(), a.clone(), o.clone())),
                        Literal::pos(Atom::Role(r.clone(), b.clone(), o.clone())),
                    ]);
                    cnf.push(&[
                        Literal::neg(eq(a, b)),
                        Literal::neg(Atom::Role(r.clone(), o.clone(), a.clone())),
                        Literal::pos(Atom::Role(r.clone(), o.clone(), b.clone())),
                    ]);
                }
            }
        }
    }

    let is_target_var: Vec<bool> = cnf.atom_list.iter().map(|a| a.terms().all(|x| vocab.contains(x))).collect();
    let mut solver = Solver::new();
    for _ in 0..cnf.atom_list.len() {
        solver.new_var();
    }
    for c in &cnf.clauses {
        if !solver.add_clause(c) {
            return Ok(Vec::new());
        }
    }

    let mut cubes = Vec::new();
    while solver.solve() == SolveResult::Sat {
        let cube = shrink(&cnf.clauses, &is_target_var, |l| solver.lit_model_value(l));
        if cube.is_empty() {
            return Ok(alloc::vec![Constraint::default()]);
        }
        let block: Vec<Lit> = cube.iter().map(|&l| !l).collect();
        cubes.push(Constraint::new(cube.iter().map(|&l| Literal {
            atom: cnf.atom_list[l.var().index()].clone(),
            positive: l.is_positive(),
        })));
        if cubes.len() > max_cubes {
            return Err(CoverError::Budget { cubes: max_cubes });
        }
        if !solver.add_clause(&block) {
            break;
        }
    }
    Ok(cubes)
}

/// A set of target literals, true in the model, that satisfies every clause
/// not already satisfied by a true hidden literal.
fn shrink(clauses: &[Vec<Lit>], is_target: &[bool], value: impl Fn(Lit) -> bool) -> Vec<Lit> {
    let mut open: Vec<Vec<Lit>> = Vec::new();
    for c in clauses {
        if c.iter().any(|&l| !is_target[l.var().index()] && value(l)) {
            continue;
        }
        open.push(c.iter().copied().filter(|&l| value(l)).collect());
    }
    open.sort_by_key(Vec::len);
    let mut chosen: BTreeSet<Lit> = BTreeSet::new();
    for cands in &open {
        if cands.iter().any(|l| chosen.contains(l)) {
            continue;
        }
        // a model satisfies every clause, and only target literals remain
        chosen.insert(cands[0]);
    }
    chosen.into_iter().collect()
}

/// Remove `T`-inconsistent cubes, literals implied by the rest of their
/// cube, and cubes that contain another cube.
fn simplify(
    t: &UniversalTheory,
    vocab: &TargetVocabulary,
    sig: &Signature,
    cubes: Vec<Constraint>,
) -> Result<Vec<Constraint>, CoverError> {
    let mut session = GroundSession::new(t, GroundingDomain::new(vocab.terms()), sig);
    let mut kept: Vec<Constraint> = Vec::new();
    for c in cubes {
        if c.is_contradictory() || !session.is_sat(&c.to_formula())? {
            continue;
        }
        let mut lits: Vec<Literal> = c.literals().to_vec();
        let mut i = 0;
        while i < lits.len() {
            let rest = Formula::and(lits.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, l)| Formula::lit(l.clone())));
            if session.implies(&rest, &Formula::lit(lits[i].clone()))? {
                lits.remove(i);
            } else {
                i += 1;
            }
        }
        let c = Constraint::new(lits);
        if !kept.contains(&c) {
            kept.push(c);
        }
    }
    let mut out: Vec<Constraint> = Vec::new();
    for (i, c) in kept.iter().enumerate() {
        let subsumed = kept.iter().enumerate().any(|(j, d)| j != i && d.is_subset_of(c) && d.len() < c.len());
        if !subsumed {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Elimination lifted to formulas: disjunct-wise over the DNF.
pub fn eliminate_qff(t: &UniversalTheory, phi: &Formula, drop: &[Name]) -> Result<CoverResult, CoverError> {
    let mut cubes: Vec<Constraint> = Vec::new();
    for delta in to_dnf(phi, DEFAULT_DNF_BUDGET)? {
        for c in eliminate(t, &delta, drop)?.cubes {
            if !cubes.contains(&c) {
                cubes.push(c);
            }
        }
    }
    Ok(CoverResult::from_cubes(cubes, drop.to_vec()))
}

//! Brute-force semantics used to validate everything else.
//!
//! Nothing here goes through the SAT core or the grounding: concept and role
//! expressions are evaluated directly, models are enumerated by
//! backtracking, and satisfiability is decided through Horn least models.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{free_vars, to_dnf, Atom, Formula, Literal, Name, Signature, Term, DEFAULT_DNF_BUDGET};
use crate::ontology::{Assertion, Axiom, ConceptExpr, Ontology, RoleExpr, UniversalTheory};

mod forward;

pub use forward::{bounded_forward_verify, bounded_forward_verify_with, replay_run, step_successors, ForwardOutcome, ForwardRun, ForwardStep};

pub type Elem = u32;

/// A finite interpretation: domain, extensions and the constant map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteInterpretation {
    pub domain: Vec<Elem>,
    pub concepts: BTreeMap<Name, BTreeSet<Elem>>,
    pub roles: BTreeMap<Name, BTreeSet<(Elem, Elem)>>,
    pub constants: BTreeMap<Name, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    MissingSymbol(Name),
    UnboundTerm(Term),
    Budget,
    Precondition(&'static str),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::MissingSymbol(n) => write!(f, "symbol `{n}` is not interpreted"),
            OracleError::UnboundTerm(t) => write!(f, "term `{t}` has no value"),
            OracleError::Budget => f.write_str("enumeration budget exhausted"),
            OracleError::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

pub type Assignment = BTreeMap<Name, Elem>;

impl FiniteInterpretation {
    /// Domain `{0, …, n-1}`, nothing else.
    pub fn with_size(n: usize) -> Self {
        FiniteInterpretation { domain: (0..n as Elem).collect(), ..Default::default() }
    }

    /// Register every predicate of `sig` with an empty extension.
    pub fn declare(&mut self, sig: &Signature) {
        for c in &sig.concepts {
            self.concepts.entry(c.clone()).or_default();
        }
        for r in &sig.roles {
            self.roles.entry(r.clone()).or_default();
        }
    }

    pub fn elem(&self, t: &Term, vars: &Assignment) -> Result<Elem, OracleError> {
        let e = match t {
            Term::Ind(a) => self.constants.get(a),
            Term::Var(x) => vars.get(x),
        };
        e.copied().ok_or_else(|| OracleError::UnboundTerm(t.clone()))
    }

    pub fn concept(&self, c: &Name) -> Result<&BTreeSet<Elem>, OracleError> {
        self.concepts.get(c).ok_or_else(|| OracleError::MissingSymbol(c.clone()))
    }

    pub fn role(&self, r: &Name) -> Result<&BTreeSet<(Elem, Elem)>, OracleError> {
        self.roles.get(r).ok_or_else(|| OracleError::MissingSymbol(r.clone()))
    }

    fn role_holds(&self, r: &RoleExpr, x: Elem, y: Elem) -> Result<bool, OracleError> {
        let ext = self.role(&r.role)?;
        Ok(if r.inverse { ext.contains(&(y, x)) } else { ext.contains(&(x, y)) })
    }

    /// Every extension lies inside the domain.
    pub fn is_well_formed(&self) -> bool {
        let dom: BTreeSet<Elem> = self.domain.iter().copied().collect();
        !dom.is_empty()
            && self.concepts.values().all(|s| s.iter().all(|e| dom.contains(e)))
            && self.roles.values().all(|s| s.iter().all(|(a, b)| dom.contains(a) && dom.contains(b)))
            && self.constants.values().all(|e| dom.contains(e))
    }
}

pub fn eval_atom(i: &FiniteInterpretation, vars: &Assignment, a: &Atom) -> Result<bool, OracleError> {
    Ok(match a {
        Atom::Concept(c, t) => i.concept(c)?.contains(&i.elem(t, vars)?),
        Atom::Role(r, s, t) => i.role(r)?.contains(&(i.elem(s, vars)?, i.elem(t, vars)?)),
        Atom::Eq(s, t) => i.elem(s, vars)? == i.elem(t, vars)?,
    })
}

pub fn eval_literal(i: &FiniteInterpretation, vars: &Assignment, l: &Literal) -> Result<bool, OracleError> {
    Ok(eval_atom(i, vars, &l.atom)? == l.positive)
}

pub fn eval_formula(i: &FiniteInterpretation, vars: &Assignment, f: &Formula) -> Result<bool, OracleError> {
    f.try_eval(&mut |a| eval_atom(i, vars, a))
}

/// `I ⊨ T`: every clause instance over the domain and every ground literal.
pub fn check_model(i: &FiniteInterpretation, t: &UniversalTheory) -> Result<bool, OracleError> {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let mut vars = Assignment::new();
    for c in &t.clauses {
        let inst = c.instantiate(&x, &y);
        let ys = if c.arity() == 1 { &i.domain[..i.domain.len().min(1)] } else { &i.domain[..] };
        for &a in &i.domain {
            vars.insert(x.name().clone(), a);
            for &b in ys {
                vars.insert(y.name().clone(), b);
                let mut sat = false;
                for l in &inst {
                    if eval_literal(i, &vars, l)? {
                        sat = true;
                        break;
                    }
                }
                if !sat {
                    return Ok(false);
                }
            }
        }
    }
    for l in &t.ground {
        if !eval_literal(i, &vars, l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn concept_ext(i: &FiniteInterpretation, c: &ConceptExpr) -> Result<BTreeSet<Elem>, OracleError> {
    Ok(match c {
        ConceptExpr::Conj(names) => {
            let mut out: BTreeSet<Elem> = i.domain.iter().copied().collect();
            for n in names {
                let ext = i.concept(n)?;
                out.retain(|e| ext.contains(e));
            }
            out
        }
        ConceptExpr::SomeT(r) => {
            let mut out = BTreeSet::new();
            for &a in &i.domain {
                for &b in &i.domain {
                    if i.role_holds(r, a, b)? {
                        out.insert(a);
                    }
                }
            }
            out
        }
        ConceptExpr::Some(r, filler) => {
            let f = i.concept(filler)?;
            let mut out = BTreeSet::new();
            for &a in &i.domain {
                for &b in &i.domain {
                    if f.contains(&b) && i.role_holds(r, a, b)? {
                        out.insert(a);
                    }
                }
            }
            out
        }
    })
}

/// `I ⊨ O` under the description logic semantics, evaluated directly.
pub fn check_model_dl(i: &FiniteInterpretation, o: &Ontology) -> Result<bool, OracleError> {
    for ax in &o.tbox {
        match ax {
            Axiom::Concept(ci) => {
                let lhs = concept_ext(i, &ci.lhs)?;
                let rhs = concept_ext(i, &ci.rhs)?;
                let ok = if ci.rhs_negated { lhs.is_disjoint(&rhs) } else { lhs.is_subset(&rhs) };
                if !ok {
                    return Ok(false);
                }
            }
            Axiom::Role(ri) => {
                for &a in &i.domain {
                    for &b in &i.domain {
                        if i.role_holds(&ri.lhs, a, b)? && i.role_holds(&ri.rhs, a, b)? == ri.rhs_negated {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    let c = |n: &Name| {
        i.constants.get(n).copied().ok_or_else(|| OracleError::UnboundTerm(Term::Ind(n.clone())))
    };
    for a in &o.abox {
        let holds = match a {
            Assertion::Concept { concept, ind, .. } => i.concept(concept)?.contains(&c(ind)?),
            Assertion::Role { role, subject, object, .. } => i.role(role)?.contains(&(c(subject)?, c(object)?)),
            Assertion::Eq { left, right, .. } => c(left)? == c(right)?,
        };
        if holds != a.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Atom indexing over elements `0..n` for a fixed list of predicates.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    pub n: usize,
    pub concepts: Vec<Name>,
    pub roles: Vec<Name>,
}

impl Grid {
    pub fn new(n: usize, sig: &Signature) -> Self {
        Grid { n, concepts: sig.concepts.iter().cloned().collect(), roles: sig.roles.iter().cloned().collect() }
    }

    pub fn len(&self) -> usize {
        self.concepts.len() * self.n + self.roles.len() * self.n * self.n
    }

    fn concept_index(&self, c: &Name) -> usize {
        self.concepts.binary_search(c).expect("concept in grid")
    }

    fn role_index(&self, r: &Name) -> usize {
        self.roles.binary_search(r).expect("role in grid")
    }

    pub fn concept_atom(&self, c: usize, e: usize) -> usize {
        c * self.n + e
    }

    pub fn role_atom(&self, r: usize, a: usize, b: usize) -> usize {
        self.concepts.len() * self.n + (r * self.n + a) * self.n + b
    }

    /// Index of a concept or role atom whose terms are already elements.
    pub fn atom(&self, a: &Atom, elem: &dyn Fn(&Term) -> usize) -> Option<usize> {
        match a {
            Atom::Concept(c, t) => Some(self.concept_atom(self.concept_index(c), elem(t))),
            Atom::Role(r, s, t) => Some(self.role_atom(self.role_index(r), elem(s), elem(t))),
            Atom::Eq(..) => None,
        }
    }

    /// Every clause instance over the elements, as `(atom, positive)` lists.
    /// Instances made true by an equality literal are skipped; instances
    /// with a false equality literal drop it.
    pub fn instances(&self, t: &UniversalTheory) -> Vec<Vec<(usize, bool)>> {
        let mut out = Vec::new();
        let elems: Vec<Term> = (0..self.n).map(|e| Term::var(&alloc::format!("{e}"))).collect();
        let elem = |t: &Term| t.name().parse::<usize>().expect("element term");
        for c in &t.clauses {
            let ys = if c.arity() == 1 { &elems[..1] } else { &elems[..] };
            for x in &elems {
                for y in ys {
                    out.push(
                        c.instantiate(x, y)
                            .iter()
                            .map(|l| (self.atom(&l.atom, &elem).expect("no equality in clauses"), l.positive))
                            .collect(),
                    );
                }
            }
        }
        out
    }

    pub fn to_interpretation(&self, bits: &[bool], constants: &BTreeMap<Name, Elem>) -> FiniteInterpretation {
        let mut i = FiniteInterpretation::with_size(self.n);
        for (ci, c) in self.concepts.iter().enumerate() {
            let ext = i.concepts.entry(c.clone()).or_default();
            for e in 0..self.n {
                if bits[self.concept_atom(ci, e)] {
                    ext.insert(e as Elem);
                }
            }
        }
        for (ri, r) in self.roles.iter().enumerate() {
            let ext = i.roles.entry(r.clone()).or_default();
            for a in 0..self.n {
                for b in 0..self.n {
                    if bits[self.role_atom(ri, a, b)] {
                        ext.insert((a as Elem, b as Elem));
                    }
                }
            }
        }
        i.constants = constants.clone();
        i
    }
}

/// Restricted growth strings: maps of `k` items onto blocks `0..m` with
/// `m ≤ max_blocks`, each block first used in order. Every partition of the
/// items into at most `max_blocks` classes is produced exactly once.
pub fn for_each_partition(k: usize, max_blocks: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(pos: usize, k: usize, max_blocks: usize, used: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == k {
            return f(cur);
        }
        for b in 0..(used + 1).min(max_blocks) {
            cur.push(b);
            let go_on = rec(pos + 1, k, max_blocks, used.max(b + 1), cur, f);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if k == 0 {
        f(&[]);
        return;
    }
    rec(0, k, max_blocks, 0, &mut Vec::with_capacity(k), f);
}

/// Visit every model of `T` over the domain `{0, …, n-1}` interpreting the
/// predicates of `sig ∪ sig(T)` and the given constants. Constant maps are
/// canonical: the named elements come first, in order of first use, so
/// each model is produced once up to renaming of its elements. The visitor
/// returns `false` to stop early. `budget` bounds the search nodes.
pub fn for_each_model(
    t: &UniversalTheory,
    sig: &Signature,
    n: usize,
    constants: &[Name],
    budget: u64,
    visit: &mut dyn FnMut(&FiniteInterpretation) -> bool,
) -> Result<(), OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition("domain size must be positive"));
    }
    let mut full = t.signature();
    full.union(sig);
    let grid = Grid::new(n, &full);
    let base = grid.instances(t);
    let mut nodes = 0u64;
    let mut result = Ok(());
    for_each_partition(constants.len(), n, &mut |blocks| {
        let cmap: BTreeMap<Name, Elem> =
            constants.iter().cloned().zip(blocks.iter().map(|&b| b as Elem)).collect();
        let elem = |t: &Term| cmap[t.name()] as usize;
        let mut clauses = base.clone();
        for l in &t.ground {
            match &l.atom {
                Atom::Eq(s, u) => {
                    if (elem(s) == elem(u)) != l.positive {
                        return true;
                    }
                }
                a => clauses.push(alloc::vec![(grid.atom(a, &elem).unwrap(), l.positive)]),
            }
        }
        // check each clause once its last atom is assigned
        let mut by_last: Vec<Vec<usize>> = alloc::vec![Vec::new(); grid.len()];
        for (ci, c) in clauses.iter().enumerate() {
            let last = c.iter().map(|&(a, _)| a).max().unwrap();
            by_last[last].push(ci);
        }
        let mut bits = alloc::vec![false; grid.len()];
        match dfs(0, &mut bits, &clauses, &by_last, &mut nodes, budget, &mut |bits| {
            visit(&grid.to_interpretation(bits, &cmap))
        }) {
            Err(e) => {
                result = Err(e);
                false
            }
            Ok(go_on) => go_on,
        }
    });
    result
}

/// Depth-first assignment of the atom bits. `Ok(false)` means the visitor
/// asked to stop.
fn dfs(
    pos: usize,
    bits: &mut Vec<bool>,
    clauses: &[Vec<(usize, bool)>],
    by_last: &[Vec<usize>],
    nodes: &mut u64,
    budget: u64,
    leaf: &mut dyn FnMut(&[bool]) -> bool,
) -> Result<bool, OracleError> {
    if pos == bits.len() {
        return Ok(leaf(bits));
    }
    for v in [false, true] {
        *nodes += 1;
        if *nodes > budget {
            return Err(OracleError::Budget);
        }
        bits[pos] = v;
        let ok = by_last[pos].iter().all(|&ci| clauses[ci].iter().any(|&(a, p)| bits[a] == p));
        if ok && !dfs(pos + 1, bits, clauses, by_last, nodes, budget, leaf)? {
            return Ok(false);
        }
    }
    bits[pos] = false;
    Ok(true)
}

pub const DEFAULT_ENUM_BUDGET: u64 = 50_000_000;

/// All models from [`for_each_model`], collected. Domain size is capped at 4.
pub fn enumerate_models(
    t: &UniversalTheory,
    sig: &Signature,
    n: usize,
    constants: &[Name],
) -> Result<Vec<FiniteInterpretation>, OracleError> {
    if n > 4 {
        return Err(OracleError::Precondition("domain size is capped at 4"));
    }
    let mut out = Vec::new();
    for_each_model(t, sig, n, constants, DEFAULT_ENUM_BUDGET, &mut |i| {
        out.push(i.clone());
        true
    })?;
    Ok(out)
}

/// Horn closure: smallest superset of `facts` closed under the clause
/// instances with a positive literal. `None` if a purely negative instance
/// is violated or a fact in `forbidden` is derived.
pub(crate) fn least_model(
    instances: &[Vec<(usize, bool)>],
    facts: &mut Vec<bool>,
    forbidden: &[usize],
) -> bool {
    loop {
        let mut changed = false;
        for c in instances {
            if c.iter().any(|&(a, p)| facts[a] == p) {
                continue;
            }
            // every literal false: fire the positive one, or fail
            match c.iter().find(|&&(_, p)| p) {
                Some(&(a, _)) => {
                    facts[a] = true;
                    changed = true;
                }
                None => return false,
            }
        }
        if !changed {
            break;
        }
    }
    forbidden.iter().all(|&a| !facts[a])
}

/// Named terms of a query: individuals of `T` and `φ`, then free variables.
fn named_terms(t: &UniversalTheory, phi: &Formula) -> Vec<Term> {
    let mut terms: Vec<Term> = Vec::new();
    let mut inds: BTreeSet<Name> = t.individuals();
    inds.extend(Signature::of(phi).individuals);
    terms.extend(inds.into_iter().map(Term::Ind));
    terms.extend(free_vars(phi).into_iter().map(Term::Var));
    terms
}

/// Satisfiability of `T ∪ {φ}` by Horn reasoning: for every partition of
/// the named terms into elements and every DNF cube of `φ`, close the
/// positive literals under `T` and check the negative ones. Exact because
/// every clause of `T` is Horn and a model restricted to its named
/// elements is still a model. Returns a model and the variable assignment.
pub fn sat_by_least_model(
    t: &UniversalTheory,
    phi: &Formula,
) -> Result<Option<(FiniteInterpretation, Assignment)>, OracleError> {
    let cubes = to_dnf(phi, DEFAULT_DNF_BUDGET).map_err(|_| OracleError::Budget)?;
    let terms = named_terms(t, phi);
    let k = terms.len().max(1);
    let mut sig = t.signature();
    sig.union(&Signature::of(phi));
    let mut found = None;
    for_each_partition(terms.len(), k, &mut |blocks| {
        let n = blocks.iter().copied().max().map_or(1, |m| m + 1);
        let grid = Grid::new(n, &sig);
        let elem_of = |t: &Term| blocks[terms.iter().position(|u| u == t).unwrap()];
        let instances = grid.instances(t);
        'cubes: for cube in &cubes {
            let mut facts = alloc::vec![false; grid.len()];
            let mut forbidden = Vec::new();
            for l in t.ground.iter().chain(cube.literals()) {
                match &l.atom {
                    Atom::Eq(s, u) => {
                        if (elem_of(s) == elem_of(u)) != l.positive {
                            continue 'cubes;
                        }
                    }
                    a => {
                        let idx = grid.atom(a, &elem_of).unwrap();
                        if l.positive {
                            facts[idx] = true;
                        } else {
                            forbidden.push(idx);
                        }
                    }
                }
            }
            if least_model(&instances, &mut facts, &forbidden) {
                let cmap = terms
                    .iter()
                    .zip(blocks)
                    .filter_map(|(t, &b)| match t {
                        Term::Ind(a) => Some((a.clone(), b as Elem)),
                        Term::Var(_) => None,
                    })
                    .collect();
                let vars = terms
                    .iter()
                    .zip(blocks)
                    .filter_map(|(t, &b)| match t {
                        Term::Var(x) => Some((x.clone(), b as Elem)),
                        Term::Ind(_) => None,
                    })
                    .collect();
                found = Some((grid.to_interpretation(&facts, &cmap), vars));
                return false;
            }
        }
        true
    });
    if let Some((i, vars)) = &found {
        // the model must stand on its own
        if !check_model(i, t)? || !eval_formula(i, vars, phi)? {
            return Err(OracleError::Precondition("least model failed its own check"));
        }
    }
    Ok(found)
}

/// Satisfiability by exhaustive enumeration of interpretations whose
/// domain is a quotient of the named terms. Exponential; for tiny inputs.
pub fn sat_by_enumeration(t: &UniversalTheory, phi: &Formula, budget: u64) -> Result<bool, OracleError> {
    let terms = named_terms(t, phi);
    let k = terms.len().max(1);
    let mut sig = t.signature();
    sig.union(&Signature::of(phi));
    let mut found = false;
    let mut err = None;
    for_each_partition(terms.len(), k, &mut |blocks| {
        let n = blocks.iter().copied().max().map_or(1, |m| m + 1);
        let mut vars = Assignment::new();
        let mut cmap = BTreeMap::new();
        for (t, &b) in terms.iter().zip(blocks) {
            match t {
                Term::Ind(a) => cmap.insert(a.clone(), b as Elem),
                Term::Var(x) => vars.insert(x.clone(), b as Elem),
            };
        }
        let grid = Grid::new(n, &sig);
        let total = grid.len();
        if total >= 63 {
            err = Some(OracleError::Budget);
            return false;
        }
        let mut bits = alloc::vec![false; total];
        for m in 0u64..(1u64 << total) {
            if m >= budget {
                err = Some(OracleError::Budget);
                return false;
            }
            for (i, b) in bits.iter_mut().enumerate() {
                *b = (m >> i) & 1 == 1;
            }
            let i = grid.to_interpretation(&bits, &cmap);
            if check_model(&i, t) == Ok(true) && eval_formula(&i, &vars, phi) == Ok(true) {
                found = true;
                return false;
            }
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// An element map between two interpretations.
#[derive(Clone, Debug)]
pub struct Morphism<'a> {
    pub source: &'a FiniteInterpretation,
    pub target: &'a FiniteInterpretation,
    pub map: BTreeMap<Elem, Elem>,
}

impl<'a> Morphism<'a> {
    pub fn identity(i: &'a FiniteInterpretation) -> Self {
        Morphism { source: i, target: i, map: i.domain.iter().map(|&e| (e, e)).collect() }
    }

    /// Inclusion of `source` into `target`.
    pub fn inclusion(source: &'a FiniteInterpretation, target: &'a FiniteInterpretation) -> Self {
        Morphism { source, target, map: source.domain.iter().map(|&e| (e, e)).collect() }
    }

    fn is_total(&self) -> bool {
        let tgt: BTreeSet<Elem> = self.target.domain.iter().copied().collect();
        self.source.domain.iter().all(|e| self.map.get(e).is_some_and(|m| tgt.contains(m)))
    }

    fn constants_preserved(&self) -> bool {
        self.source.constants.iter().all(|(c, e)| self.target.constants.get(c) == self.map.get(e))
    }

    /// Literal-wise preservation; with `reflect`, also reflection.
    fn predicates(&self, reflect: bool) -> bool {
        let empty_c = BTreeSet::new();
        let empty_r = BTreeSet::new();
        let names: BTreeSet<&Name> = self.source.concepts.keys().chain(self.target.concepts.keys()).collect();
        for c in names {
            let s = self.source.concepts.get(c).unwrap_or(&empty_c);
            let t = self.target.concepts.get(c).unwrap_or(&empty_c);
            for &e in &self.source.domain {
                let m = self.map[&e];
                if s.contains(&e) && !t.contains(&m) || reflect && !s.contains(&e) && t.contains(&m) {
                    return false;
                }
            }
        }
        let names: BTreeSet<&Name> = self.source.roles.keys().chain(self.target.roles.keys()).collect();
        for r in names {
            let s = self.source.roles.get(r).unwrap_or(&empty_r);
            let t = self.target.roles.get(r).unwrap_or(&empty_r);
            for &a in &self.source.domain {
                for &b in &self.source.domain {
                    let img = (self.map[&a], self.map[&b]);
                    let here = s.contains(&(a, b));
                    if here && !t.contains(&img) || reflect && !here && t.contains(&img) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Total, maps constants to constants and preserves positive atoms.
pub fn is_homomorphism(mu: &Morphism<'_>) -> bool {
    mu.is_total() && mu.constants_preserved() && mu.predicates(false)
}

/// An injective homomorphism that also reflects atoms.
pub fn is_embedding(mu: &Morphism<'_>) -> bool {
    let images: BTreeSet<Elem> = mu.map.values().copied().collect();
    is_homomorphism(mu) && images.len() == mu.source.domain.len() && mu.predicates(true)
}

/// `I0` is a substructure of `I`: its domain is a subset and the inclusion
/// is an embedding.
pub fn is_substructure(i0: &FiniteInterpretation, i: &FiniteInterpretation) -> bool {
    let dom: BTreeSet<Elem> = i.domain.iter().copied().collect();
    i0.domain.iter().all(|e| dom.contains(e))
        && i0.constants == i.constants
        && is_embedding(&Morphism::inclusion(i0, i))
}

/// Amalgam of `I1` and `I2` over a common substructure `I0`: union of
/// domains and of every extension.
pub fn amalgamate(
    i1: &FiniteInterpretation,
    i2: &FiniteInterpretation,
    i0: &FiniteInterpretation,
) -> Result<FiniteInterpretation, OracleError> {
    if !is_substructure(i0, i1) || !is_substructure(i0, i2) {
        return Err(OracleError::Precondition("I0 must be a substructure of I1 and I2"));
    }
    let d1: BTreeSet<Elem> = i1.domain.iter().copied().collect();
    let d2: BTreeSet<Elem> = i2.domain.iter().copied().collect();
    let d0: BTreeSet<Elem> = i0.domain.iter().copied().collect();
    if d1.intersection(&d2).copied().collect::<BTreeSet<_>>() != d0 {
        return Err(OracleError::Precondition("domains must intersect exactly in the domain of I0"));
    }
    let mut out = FiniteInterpretation {
        domain: d1.union(&d2).copied().collect(),
        constants: i0.constants.clone(),
        ..Default::default()
    };
    for src in [i1, i2] {
        for (c, ext) in &src.concepts {
            out.concepts.entry(c.clone()).or_default().extend(ext.iter().copied());
        }
        for (r, ext) in &src.roles {
            out.roles.entry(r.clone()).or_default().extend(ext.iter().copied());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::name;
    use crate::ontology::{hiring_ontology, standard_translate, UnaryHead};
    use alloc::vec;

    fn hiring_abox_model() -> FiniteInterpretation {
        let o = hiring_ontology();
        let mut i = FiniteInterpretation::with_size(4);
        i.declare(&o.signature());
        let inds = ["professor123", "researcher123", "secretary123", "secretary456"];
        for (e, a) in inds.iter().enumerate() {
            i.constants.insert(name(a), e as Elem);
            i.concepts.get_mut("JobPosition").unwrap().insert(e as Elem);
            let c = if e < 2 { "AcademicPosition" } else { "AdminPosition" };
            i.concepts.get_mut(c).unwrap().insert(e as Elem);
        }
        i
    }

    #[test]
    fn abox_model_satisfies_both_semantics() {
        let o = hiring_ontology();
        let i = hiring_abox_model();
        assert!(check_model_dl(&i, &o).unwrap());
        assert!(check_model(&i, &standard_translate(&o).unwrap()).unwrap());
    }

    #[test]
    fn overlapping_positions_fail() {
        let o = hiring_ontology();
        let mut i = hiring_abox_model();
        i.concepts.get_mut("AdminPosition").unwrap().insert(0);
        assert!(!check_model_dl(&i, &o).unwrap());
        assert!(!check_model(&i, &standard_translate(&o).unwrap()).unwrap());
    }

    #[test]
    fn empty_theory_accepts_anything() {
        let i = FiniteInterpretation::with_size(2);
        assert!(check_model(&i, &UniversalTheory::default()).unwrap());
    }

    #[test]
    fn missing_symbol_is_reported() {
        let t = standard_translate(&hiring_ontology()).unwrap();
        let i = FiniteInterpretation::with_size(1);
        assert!(matches!(check_model(&i, &t), Err(OracleError::MissingSymbol(_))));
    }

    #[test]
    fn enumeration_counts() {
        let mut sig = Signature::default();
        sig.concepts.insert(name("A"));
        let t = UniversalTheory::default();
        assert_eq!(enumerate_models(&t, &sig, 1, &[]).unwrap().len(), 2);

        let t = UniversalTheory {
            clauses: vec![crate::ontology::UniversalClause::ConceptConj {
                body: vec![name("A")],
                head: UnaryHead { concept: name("B"), positive: true },
            }],
            ground: vec![],
        };
        assert_eq!(enumerate_models(&t, &Signature::default(), 1, &[]).unwrap().len(), 3);

        let a = Atom::concept("A", Term::ind("a"));
        let t = UniversalTheory { clauses: vec![], ground: vec![Literal::pos(a.clone()), Literal::neg(a)] };
        assert!(enumerate_models(&t, &Signature::default(), 2, &[name("a")]).unwrap().is_empty());
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let count = |k, m| {
            let mut c = 0;
            for_each_partition(k, m, &mut |_| {
                c += 1;
                true
            });
            c
        };
        assert_eq!([0, 1, 2, 3, 4, 5].map(|k| count(k, k.max(1))), [1, 1, 2, 5, 15, 52]);
        assert_eq!(count(4, 2), 8);
    }

    #[test]
    fn least_model_oracle_examples() {
        let t = standard_translate(&hiring_ontology()).unwrap();
        let c = |n: &str| Formula::Atom(Atom::concept(n, Term::var("x")));
        let f = Formula::and([c("AcademicPosition"), c("AdminPosition")]);
        assert!(sat_by_least_model(&t, &f).unwrap().is_none());
        let f = Formula::and([c("User"), Formula::negate(c("EligibleUser"))]);
        let (i, vars) = sat_by_least_model(&t, &f).unwrap().unwrap();
        let x = vars[&name("x")];
        assert!(!i.concepts["Graduate"].contains(&x));
    }

    #[test]
    fn embeddings() {
        let i = hiring_abox_model();
        assert!(is_embedding(&Morphism::identity(&i)));
        let mut collapse = Morphism::identity(&i);
        collapse.map.insert(1, 0);
        assert!(!is_embedding(&collapse));
    }

    #[test]
    fn substructure_of_a_reflecting_subdomain() {
        let mut i = FiniteInterpretation::with_size(3);
        i.concepts.insert(name("A"), [0, 2].into_iter().collect());
        i.roles.insert(name("P"), [(0, 1), (2, 0)].into_iter().collect());
        let mut i0 = FiniteInterpretation::with_size(1);
        i0.domain = vec![0, 2];
        i0.concepts.insert(name("A"), [0, 2].into_iter().collect());
        i0.roles.insert(name("P"), [(2, 0)].into_iter().collect());
        assert!(is_substructure(&i0, &i));
        i0.roles.get_mut("P").unwrap().clear();
        assert!(!is_substructure(&i0, &i));
    }

    #[test]
    fn amalgam_examples() {
        let mut i0 = FiniteInterpretation::with_size(1);
        i0.concepts.insert(name("A"), [0].into_iter().collect());
        assert_eq!(amalgamate(&i0, &i0, &i0).unwrap(), i0);

        let mut i1 = i0.clone();
        i1.domain.push(1);
        i1.concepts.insert(name("B"), [1].into_iter().collect());
        let mut i2 = i0.clone();
        i2.domain.push(2);
        i2.concepts.insert(name("C"), [2].into_iter().collect());
        let m = amalgamate(&i1, &i2, &i0).unwrap();
        assert_eq!(m.domain, vec![0, 1, 2]);
        assert!(check_model(&m, &UniversalTheory::default()).unwrap());
        assert!(is_embedding(&Morphism::inclusion(&i1, &m)));
        assert!(is_embedding(&Morphism::inclusion(&i2, &m)));

        let mut bad = i2.clone();
        bad.domain = vec![0, 1];
        assert!(amalgamate(&i1, &bad, &i0).is_err());
    }
}

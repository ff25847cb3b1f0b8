//! Satisfiability of quantifier-free formulas modulo a universal theory, by
//! grounding over the named elements and handing the result to [`crate::sat`].
//!
//! # Why grounding over the named elements is complete
//!
//! Let `T` be universal and function-free and `φ` quantifier-free, with its
//! free variables read as fresh constants. If `M ⊨ T ∪ {φ}`, take the
//! substructure `N` of `M` whose domain is the set of interpretations of the
//! constants (individuals of `T` and `φ`, plus one per free variable). `N` is
//! closed under the (absent) function symbols, universal sentences are
//! preserved in substructures, and quantifier-free formulas keep their truth
//! value. So `N ⊨ T ∪ {φ}`, and `N` is described by a propositional
//! assignment to the ground atoms over those constants that respects
//! equality as a congruence. Conversely such an assignment, quotiented by
//! its equality atoms, is a model. The grounding below encodes exactly
//! those assignments.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{atoms_of, free_vars, name, Atom, Clause, Constraint, Formula, Literal, Name, Signature, Term};
use crate::ontology::UniversalTheory;
use crate::oracle::{Elem, FiniteInterpretation};
use crate::sat::{Lit, SolveResult, Solver, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundError {
    /// The SAT core ran out of conflicts.
    Budget,
    /// The grounding domain would exceed the configured size.
    DomainTooLarge { size: usize, max: usize },
    /// A query mentions a term outside the grounding domain.
    UnknownTerm(Term),
}

impl fmt::Display for GroundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundError::Budget => f.write_str("SAT conflict budget exhausted"),
            GroundError::DomainTooLarge { size, max } => {
                write!(f, "grounding domain of {size} elements exceeds the limit of {max}")
            }
            GroundError::UnknownTerm(t) => write!(f, "term `{t}` is not in the grounding domain"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundLimits {
    pub max_domain: usize,
    pub conflict_budget: Option<u64>,
}

impl Default for GroundLimits {
    fn default() -> Self {
        GroundLimits { max_domain: 64, conflict_budget: None }
    }
}

/// Constant used when nothing else would populate the domain.
pub const PADDING: &str = "@pad";

/// Ordered, duplicate-free list of domain constants. Free variables appear
/// as `Term::Var` and play the role of fresh constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundingDomain {
    terms: Vec<Term>,
}

impl GroundingDomain {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut out: Vec<Term> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in terms {
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        if out.is_empty() {
            out.push(Term::Ind(name(PADDING)));
        }
        GroundingDomain { terms: out }
    }

    /// Individuals of `T`, then individuals and free variables of `φ`.
    pub fn for_query(t: &UniversalTheory, phi: &Formula) -> Self {
        let sig = Signature::of(phi);
        GroundingDomain::new(
            t.individuals()
                .into_iter()
                .chain(sig.individuals)
                .map(Term::Ind)
                .chain(free_vars(phi).into_iter().map(Term::Var)),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Clause counts by origin.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EncodingStats {
    pub tbox_instances: usize,
    pub ground_literals: usize,
    pub equality_axioms: usize,
    pub query_clauses: usize,
}

/// Propositional encoding of a universal theory over a grounding domain.
#[derive(Clone, Debug)]
pub struct PropEncoding {
    domain: GroundingDomain,
    concepts: BTreeSet<Name>,
    roles: BTreeSet<Name>,
    atoms: BTreeMap<Atom, Var>,
    /// Atom of each variable; `None` for the constant and auxiliary variables.
    var_atoms: Vec<Option<Atom>>,
    true_var: Var,
    clauses: Vec<Vec<Lit>>,
    stats: EncodingStats,
}

impl PropEncoding {
    fn fresh(&mut self, atom: Option<Atom>) -> Var {
        let v = Var(self.var_atoms.len() as u32);
        if let Some(a) = &atom {
            self.atoms.insert(a.clone(), v);
        }
        self.var_atoms.push(atom);
        v
    }

    pub fn true_lit(&self) -> Lit {
        self.true_var.pos()
    }

    pub fn domain(&self) -> &GroundingDomain {
        &self.domain
    }

    pub fn num_vars(&self) -> usize {
        self.var_atoms.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn stats(&self) -> EncodingStats {
        self.stats
    }

    /// Ground atom of a variable, if it stands for one.
    pub fn atom_of(&self, v: Var) -> Option<&Atom> {
        self.var_atoms.get(v.index()).and_then(Option::as_ref)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, Var)> {
        self.atoms.iter().map(|(a, v)| (a, *v))
    }

    fn eq_lit(&self, s: &Term, t: &Term) -> Lit {
        if s == t {
            self.true_lit()
        } else {
            self.atoms[&Atom::eq(s.clone(), t.clone())].pos()
        }
    }

    fn add_concept(&mut self, c: &Name) {
        if !self.concepts.insert(c.clone()) {
            return;
        }
        let d = self.domain.terms.clone();
        for t in &d {
            self.fresh(Some(Atom::Concept(c.clone(), t.clone())));
        }
        for s in &d {
            for t in &d {
                if s == t {
                    continue;
                }
                let cs = self.atoms[&Atom::Concept(c.clone(), s.clone())];
                let ct = self.atoms[&Atom::Concept(c.clone(), t.clone())];
                let e = self.eq_lit(s, t);
                self.clauses.push(alloc::vec![!e, cs.neg(), ct.pos()]);
                self.stats.equality_axioms += 1;
            }
        }
    }

    fn add_role(&mut self, r: &Name) {
        if !self.roles.insert(r.clone()) {
            return;
        }
        let d = self.domain.terms.clone();
        for s in &d {
            for t in &d {
                self.fresh(Some(Atom::Role(r.clone(), s.clone(), t.clone())));
            }
        }
        let role = |enc: &Self, s: &Term, t: &Term| enc.atoms[&Atom::Role(r.clone(), s.clone(), t.clone())];
        for s in &d {
            for t in &d {
                if s == t {
                    continue;
                }
                let e = self.eq_lit(s, t);
                for o in &d {
                    let a = role(self, s, o);
                    let b = role(self, t, o);
                    self.clauses.push(alloc::vec![!e, a.neg(), b.pos()]);
                    let a = role(self, o, s);
                    let b = role(self, o, t);
                    self.clauses.push(alloc::vec![!e, a.neg(), b.pos()]);
                    self.stats.equality_axioms += 2;
                }
            }
        }
    }

    /// Register the predicates of a signature, adding their congruence axioms.
    pub fn add_signature(&mut self, sig: &Signature) {
        for c in &sig.concepts {
            self.add_concept(c);
        }
        for r in &sig.roles {
            self.add_role(r);
        }
    }

    fn check_term(&self, t: &Term) -> Result<(), GroundError> {
        if self.domain.terms.contains(t) {
            Ok(())
        } else {
            Err(GroundError::UnknownTerm(t.clone()))
        }
    }

    /// Propositional literal of a ground atom, registering its predicate if
    /// it is new.
    pub fn atom_lit(&mut self, a: &Atom) -> Result<Lit, GroundError> {
        for t in a.terms() {
            self.check_term(t)?;
        }
        match a {
            Atom::Eq(s, t) if s == t => return Ok(self.true_lit()),
            Atom::Concept(c, _) => self.add_concept(c),
            Atom::Role(r, _, _) => self.add_role(r),
            Atom::Eq(..) => {}
        }
        Ok(self.atoms[a].pos())
    }

    pub fn literal(&mut self, l: &Literal) -> Result<Lit, GroundError> {
        let p = self.atom_lit(&l.atom)?;
        Ok(if l.positive { p } else { !p })
    }

    /// Tseitin encoding; the returned literal is equivalent to `f`.
    pub fn add_formula(&mut self, f: &Formula) -> Result<Lit, GroundError> {
        Ok(match f {
            Formula::True => self.true_lit(),
            Formula::False => !self.true_lit(),
            Formula::Atom(a) => self.atom_lit(a)?,
            Formula::Not(g) => !self.add_formula(g)?,
            Formula::And(gs) | Formula::Or(gs) => {
                let is_and = matches!(f, Formula::And(_));
                let mut parts = Vec::with_capacity(gs.len());
                for g in gs {
                    parts.push(self.add_formula(g)?);
                }
                let v = self.fresh(None).pos();
                // and: v -> g_i, (g_1 & ... & g_n) -> v; or is the dual
                let (v, parts): (Lit, Vec<Lit>) = if is_and {
                    (v, parts)
                } else {
                    (!v, parts.into_iter().map(|p| !p).collect())
                };
                let mut big = alloc::vec![v];
                for &p in &parts {
                    self.clauses.push(alloc::vec![!v, p]);
                    big.push(!p);
                }
                self.clauses.push(big);
                self.stats.query_clauses += parts.len() + 1;
                if is_and {
                    v
                } else {
                    !v
                }
            }
        })
    }

    /// Assert a formula permanently. Top-level conjuncts become unit or
    /// short clauses rather than going through a Tseitin variable.
    pub fn assert_formula(&mut self, f: &Formula) -> Result<(), GroundError> {
        for c in f.conjuncts() {
            let clause = match c {
                Formula::Or(ds) => {
                    let mut cl = Vec::with_capacity(ds.len());
                    for d in ds {
                        cl.push(self.add_formula(d)?);
                    }
                    cl
                }
                other => alloc::vec![self.add_formula(other)?],
            };
            self.clauses.push(clause);
            self.stats.query_clauses += 1;
        }
        if matches!(f, Formula::False) {
            self.clauses.push(alloc::vec![!self.true_lit()]);
        }
        Ok(())
    }

    /// DIMACS CNF text with the standard `p cnf V C` header.
    pub fn to_dimacs(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        let _ = writeln!(s, "p cnf {} {}", self.num_vars(), self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{} ", l.to_dimacs());
            }
            s.push_str("0\n");
        }
        s
    }

    /// Evaluate the clause set under a total assignment.
    pub fn evaluates_true(&self, model: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| model.get(l.var().index()).copied().unwrap_or(false) == l.is_positive()))
    }
}

/// Ground `T` over `D`: every clause instance, every ground literal, and the
/// equality axioms for the predicates of `T` (plus those of `extra`).
pub fn ground_with(t: &UniversalTheory, d: GroundingDomain, extra: &Signature) -> PropEncoding {
    let mut enc = PropEncoding {
        domain: d,
        concepts: BTreeSet::new(),
        roles: BTreeSet::new(),
        atoms: BTreeMap::new(),
        var_atoms: Vec::new(),
        true_var: Var(0),
        clauses: Vec::new(),
        stats: EncodingStats::default(),
    };
    enc.true_var = enc.fresh(None);
    enc.clauses.push(alloc::vec![enc.true_lit()]);

    let terms = enc.domain.terms.clone();
    for (i, s) in terms.iter().enumerate() {
        for t in &terms[i + 1..] {
            enc.fresh(Some(Atom::eq(s.clone(), t.clone())));
        }
    }
    for a in &terms {
        for b in &terms {
            for c in &terms {
                if a == b || b == c || a == c {
                    continue;
                }
                let ab = enc.eq_lit(a, b);
                let bc = enc.eq_lit(b, c);
                let ac = enc.eq_lit(a, c);
                enc.clauses.push(alloc::vec![!ab, !bc, ac]);
                enc.stats.equality_axioms += 1;
            }
        }
    }

    let mut sig = t.signature();
    sig.union(extra);
    enc.add_signature(&sig);

    for c in &t.clauses {
        let ys: &[Term] = if c.arity() == 1 { &terms[..1] } else { &terms };
        for x in &terms {
            for y in ys {
                let lits = c.instantiate(x, y);
                let mut cl = Vec::with_capacity(lits.len());
                for l in &lits {
                    cl.push(enc.literal(l).expect("domain term"));
                }
                enc.clauses.push(cl);
                enc.stats.tbox_instances += 1;
            }
        }
    }
    for l in &t.ground {
        let lit = enc.literal(l).expect("theory individuals are in the domain");
        enc.clauses.push(alloc::vec![lit]);
        enc.stats.ground_literals += 1;
    }
    enc
}

pub fn ground(t: &UniversalTheory, d: GroundingDomain) -> PropEncoding {
    ground_with(t, d, &Signature::default())
}

/// A satisfying assignment to the ground atoms, plus the variables that were
/// solved away through top-level equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub domain: Vec<Term>,
    pub assignment: BTreeMap<Atom, bool>,
    pub substituted: Vec<(Name, Term)>,
}

impl Witness {
    fn from_model(enc: &PropEncoding, solver: &Solver, substituted: Vec<(Name, Term)>) -> Witness {
        let assignment = enc.atoms().map(|(a, v)| (a.clone(), solver.model_value(v))).collect();
        Witness { domain: enc.domain.terms.clone(), assignment, substituted }
    }

    pub fn holds(&self, a: &Atom) -> bool {
        if a.is_reflexive_eq() {
            return true;
        }
        self.assignment.get(a).copied().unwrap_or(false)
    }

    /// Equivalence class representative index of every domain term.
    fn classes(&self) -> Vec<usize> {
        let n = self.domain.len();
        let mut rep: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..i {
                if rep[j] == j && self.holds(&Atom::eq(self.domain[i].clone(), self.domain[j].clone())) {
                    rep[i] = j;
                    break;
                }
            }
        }
        rep
    }

    /// Quotient by the equality atoms. Returns the interpretation and the
    /// element of every variable (including substituted ones).
    pub fn lift(&self) -> (FiniteInterpretation, BTreeMap<Name, Elem>) {
        let rep = self.classes();
        let mut elem_of_rep = BTreeMap::new();
        for (i, &r) in rep.iter().enumerate() {
            if r == i {
                let e = elem_of_rep.len() as Elem;
                elem_of_rep.insert(i, e);
            }
        }
        let elem = |t: &Term| -> Elem {
            let i = self.domain.iter().position(|d| d == t).expect("term in domain");
            elem_of_rep[&rep[i]]
        };
        let mut interp = FiniteInterpretation::with_size(elem_of_rep.len());
        let mut vars = BTreeMap::new();
        for t in &self.domain {
            match t {
                Term::Ind(a) => {
                    interp.constants.insert(a.clone(), elem(t));
                }
                Term::Var(x) => {
                    vars.insert(x.clone(), elem(t));
                }
            }
        }
        for (a, &v) in &self.assignment {
            match a {
                Atom::Concept(c, t) => {
                    let ext = interp.concepts.entry(c.clone()).or_default();
                    if v {
                        ext.insert(elem(t));
                    }
                }
                Atom::Role(r, s, t) => {
                    let ext = interp.roles.entry(r.clone()).or_default();
                    if v {
                        ext.insert((elem(s), elem(t)));
                    }
                }
                Atom::Eq(..) => {}
            }
        }
        for (x, t) in &self.substituted {
            vars.insert(x.clone(), elem(t));
        }
        (interp, vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatVerdict {
    pub satisfiable: bool,
    pub witness: Option<Witness>,
}

/// Solve away top-level `x = t` conjuncts by substitution.
fn eliminate_equalities(phi: &Formula) -> (Formula, Vec<(Name, Term)>) {
    let mut f = phi.clone();
    let mut subst: Vec<(Name, Term)> = Vec::new();
    loop {
        let found = f.conjuncts().iter().find_map(|c| match c {
            Formula::Atom(Atom::Eq(s, t)) if s != t => match (s, t) {
                (Term::Var(x), other) | (other, Term::Var(x)) => Some((x.clone(), other.clone())),
                _ => None,
            },
            _ => None,
        });
        let Some((x, t)) = found else { break };
        let mut sigma = BTreeMap::new();
        sigma.insert(x.clone(), t.clone());
        f = Formula::and(f.substitute(&sigma).conjuncts().iter().filter(|c| !matches!(c, Formula::Atom(a) if a.is_reflexive_eq())).cloned());
        for (_, u) in subst.iter_mut() {
            *u = u.substitute(&sigma);
        }
        subst.push((x, t));
    }
    (f, subst)
}

/// Satisfiability of `T ∪ {∃-closure of φ}`, with the default limits.
pub fn sat_qff(t: &UniversalTheory, phi: &Formula) -> Result<SatVerdict, GroundError> {
    sat_qff_with(t, phi, GroundLimits::default())
}

pub fn sat_qff_with(t: &UniversalTheory, phi: &Formula, limits: GroundLimits) -> Result<SatVerdict, GroundError> {
    let (f, substituted) = eliminate_equalities(phi);
    let d = query_domain(t, &f, &substituted);
    if d.len() > limits.max_domain {
        return Err(GroundError::DomainTooLarge { size: d.len(), max: limits.max_domain });
    }
    let mut enc = ground(t, d);
    enc.assert_formula(&f)?;
    let mut solver = solver_for(&enc);
    solver.set_conflict_budget(limits.conflict_budget);
    match solver.solve() {
        SolveResult::Sat => Ok(SatVerdict {
            satisfiable: true,
            witness: Some(Witness::from_model(&enc, &solver, substituted)),
        }),
        SolveResult::Unsat => Ok(SatVerdict { satisfiable: false, witness: None }),
        SolveResult::Unknown => Err(GroundError::Budget),
    }
}

/// The ground encoding of `T ∪ {φ}` as used by [`sat_qff`], for inspection.
pub fn encode_qff(t: &UniversalTheory, phi: &Formula) -> Result<PropEncoding, GroundError> {
    let (f, substituted) = eliminate_equalities(phi);
    let mut enc = ground(t, query_domain(t, &f, &substituted));
    enc.assert_formula(&f)?;
    Ok(enc)
}

fn query_domain(t: &UniversalTheory, f: &Formula, substituted: &[(Name, Term)]) -> GroundingDomain {
    let base = GroundingDomain::for_query(t, f);
    GroundingDomain::new(base.terms.into_iter().chain(substituted.iter().map(|(_, u)| u.clone())))
}

fn solver_for(enc: &PropEncoding) -> Solver {
    let mut s = Solver::new();
    for _ in 0..enc.num_vars() {
        s.new_var();
    }
    for c in &enc.clauses {
        s.add_clause(c);
    }
    s
}

/// `T ⊨ δ → χ`.
pub fn entails(t: &UniversalTheory, delta: &Constraint, chi: &Clause) -> Result<bool, GroundError> {
    let f = Formula::and([delta.to_formula(), Formula::negate(chi.to_formula())]);
    Ok(!sat_qff(t, &f)?.satisfiable)
}

/// One grounding reused across many satisfiability checks over a fixed
/// domain. Each query is Tseitin-encoded and solved under the assumption of
/// its root literal, so earlier queries never constrain later ones.
#[derive(Clone, Debug)]
pub struct GroundSession {
    enc: PropEncoding,
    solver: Solver,
    synced: usize,
    checks: u64,
}

impl GroundSession {
    pub fn new(t: &UniversalTheory, d: GroundingDomain, extra: &Signature) -> Self {
        let enc = ground_with(t, d, extra);
        let solver = solver_for(&enc);
        let synced = enc.clauses.len();
        GroundSession { enc, solver, synced, checks: 0 }
    }

    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.solver.set_conflict_budget(budget);
    }

    pub fn domain(&self) -> &GroundingDomain {
        self.enc.domain()
    }

    pub fn checks(&self) -> u64 {
        self.checks
    }

    fn sync(&mut self) {
        while self.solver.num_vars() < self.enc.num_vars() {
            self.solver.new_var();
        }
        for c in &self.enc.clauses[self.synced..] {
            self.solver.add_clause(c);
        }
        self.synced = self.enc.clauses.len();
    }

    fn solve(&mut self, f: &Formula) -> Result<bool, GroundError> {
        let root = self.enc.add_formula(f)?;
        self.is_sat_assuming(&[root])
    }

    /// Encode `f` once and keep it; the literal is equivalent to `f` and can
    /// be passed to [`GroundSession::is_sat_assuming`] any number of times.
    pub fn encode(&mut self, f: &Formula) -> Result<Lit, GroundError> {
        self.enc.add_formula(f)
    }

    /// Satisfiability of the conjunction of previously encoded literals.
    pub fn is_sat_assuming(&mut self, lits: &[Lit]) -> Result<bool, GroundError> {
        self.checks += 1;
        self.sync();
        match self.solver.solve_with(lits) {
            SolveResult::Sat => Ok(true),
            SolveResult::Unsat => Ok(false),
            SolveResult::Unknown => Err(GroundError::Budget),
        }
    }

    pub fn is_sat(&mut self, f: &Formula) -> Result<bool, GroundError> {
        self.solve(f)
    }

    pub fn witness(&mut self, f: &Formula) -> Result<Option<Witness>, GroundError> {
        Ok(if self.solve(f)? {
            Some(Witness::from_model(&self.enc, &self.solver, Vec::new()))
        } else {
            None
        })
    }

    /// `T ⊨ premise → conclusion` over this domain.
    pub fn implies(&mut self, premise: &Formula, conclusion: &Formula) -> Result<bool, GroundError> {
        let f = Formula::and([premise.clone(), Formula::negate(conclusion.clone())]);
        Ok(!self.solve(&f)?)
    }
}

/// All atoms of a formula: convenience re-export for callers building
/// vocabularies.
pub fn query_atoms(f: &Formula) -> BTreeSet<Atom> {
    atoms_of(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{hiring_ontology, standard_translate, RoleExpr, UniversalClause};
    use alloc::vec;

    fn hiring() -> UniversalTheory {
        standard_translate(&hiring_ontology()).unwrap()
    }

    fn c(n: &str, t: &str) -> Formula {
        Formula::Atom(Atom::concept(n, Term::var(t)))
    }

    fn not(f: Formula) -> Formula {
        Formula::negate(f)
    }

    #[test]
    fn disjoint_positions_are_unsat() {
        let f = Formula::and([c("AcademicPosition", "x"), c("AdminPosition", "x")]);
        assert!(!sat_qff(&hiring(), &f).unwrap().satisfiable);
    }

    #[test]
    fn trivial_equality_is_sat() {
        let f = Formula::Atom(Atom::eq(Term::var("x"), Term::var("x")));
        assert!(sat_qff(&hiring(), &f).unwrap().satisfiable);
        assert!(sat_qff(&UniversalTheory::default(), &f).unwrap().satisfiable);
    }

    #[test]
    fn user_need_not_be_eligible() {
        let f = Formula::and([c("User", "w"), not(c("EligibleUser", "w"))]);
        let v = sat_qff(&hiring(), &f).unwrap();
        assert!(v.satisfiable);
        let w = v.witness.unwrap();
        assert!(w.holds(&Atom::concept("User", Term::var("w"))));
        assert!(!w.holds(&Atom::concept("Graduate", Term::var("w"))));
    }

    #[test]
    fn shape_five_instances() {
        let t = UniversalTheory {
            clauses: vec![UniversalClause::RoleDisjoint {
                lhs: RoleExpr::new("P", false),
                rhs: RoleExpr::new("Q", false),
            }],
            ground: vec![],
        };
        let enc = ground(&t, GroundingDomain::new([Term::ind("a"), Term::ind("b")]));
        assert_eq!(enc.stats().tbox_instances, 4);
    }

    #[test]
    fn empty_theory_single_constant() {
        let enc = ground(&UniversalTheory::default(), GroundingDomain::new([Term::ind("a")]));
        assert_eq!(enc.num_vars(), 1);
        assert_eq!(enc.clauses(), &[vec![enc.true_lit()]]);
        assert_eq!(enc.to_dimacs(), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn padding_constant() {
        let d = GroundingDomain::new(core::iter::empty());
        assert_eq!(d.terms(), &[Term::ind(PADDING)]);
        assert!(sat_qff(&UniversalTheory::default(), &Formula::True).unwrap().satisfiable);
        assert!(!sat_qff(&UniversalTheory::default(), &Formula::False).unwrap().satisfiable);
    }

    #[test]
    fn hiring_instance_count() {
        let o = crate::ontology::undefined_value_closure(&hiring_ontology(), "u");
        let t = standard_translate(&o).unwrap();
        let d = GroundingDomain::new(t.individuals().into_iter().map(Term::Ind));
        assert_eq!(d.len(), 5);
        let enc = ground(&t, d);
        let unary = t.clauses.iter().filter(|c| c.arity() == 1).count();
        let binary = t.clauses.len() - unary;
        assert_eq!((unary, binary), (7, 5));
        assert_eq!(enc.stats().tbox_instances, unary * 5 + binary * 25);
        assert_eq!(enc.stats().ground_literals, t.ground.len());
    }

    #[test]
    fn entailment_examples() {
        let y = || Term::var("y");
        let a_sub_b = UniversalTheory {
            clauses: vec![UniversalClause::ConceptConj {
                body: vec![name("A")],
                head: crate::ontology::UnaryHead { concept: name("B"), positive: true },
            }],
            ground: vec![],
        };
        let delta = Constraint::new([Literal::pos(Atom::concept("A", y()))]);
        let chi = Clause::new([Literal::pos(Atom::concept("B", y()))]);
        assert!(entails(&a_sub_b, &delta, &chi).unwrap());
        assert!(!entails(&UniversalTheory::default(), &delta, &chi).unwrap());

        let delta = Constraint::new([Literal::pos(Atom::concept("User", y()))]);
        let chi = Clause::new([Literal::neg(Atom::concept("AcademicPosition", y()))]);
        assert!(entails(&hiring(), &delta, &chi).unwrap());
    }

    #[test]
    fn equality_substitution_reaches_abox() {
        let o = crate::ontology::undefined_value_closure(&hiring_ontology(), "u");
        let t = standard_translate(&o).unwrap();
        let f = Formula::and([
            Formula::Atom(Atom::eq(Term::var("x_winner"), Term::ind("u"))),
            c("User", "x_winner"),
        ]);
        assert!(!sat_qff(&t, &f).unwrap().satisfiable);
    }

    #[test]
    fn congruence_propagates() {
        let f = Formula::and([
            c("A", "x"),
            Formula::Atom(Atom::eq(Term::ind("a"), Term::ind("b"))),
            Formula::Atom(Atom::eq(Term::ind("b"), Term::var("x"))),
            not(Formula::Atom(Atom::concept("A", Term::ind("a")))),
        ]);
        assert!(!sat_qff(&UniversalTheory::default(), &f).unwrap().satisfiable);
    }

    #[test]
    fn witness_lifts_to_a_model() {
        let t = hiring();
        let f = Formula::and([
            Formula::Atom(Atom::role("appliesFor", Term::var("x"), Term::var("p"))),
            not(Formula::Atom(Atom::eq(Term::var("x"), Term::ind("professor123")))),
        ]);
        let w = sat_qff(&t, &f).unwrap().witness.unwrap();
        let (i, vars) = w.lift();
        assert!(crate::oracle::check_model(&i, &t).unwrap());
        assert_eq!(crate::oracle::eval_formula(&i, &vars, &f), Ok(true));
    }

    #[test]
    fn session_queries_are_independent() {
        let t = hiring();
        let d = GroundingDomain::new([Term::var("x")].into_iter().chain(t.individuals().into_iter().map(Term::Ind)));
        let mut s = GroundSession::new(&t, d, &Signature::default());
        assert!(!s.is_sat(&Formula::and([c("User", "x"), c("AcademicPosition", "x")])).unwrap());
        assert!(s.is_sat(&c("User", "x")).unwrap());
        assert!(s.is_sat(&c("AcademicPosition", "x")).unwrap());
        assert!(s.implies(&c("EligibleUser", "x"), &c("Graduate", "x")).unwrap());
        assert!(matches!(s.is_sat(&c("User", "z")), Err(GroundError::UnknownTerm(_))));
        assert_eq!(s.checks(), 4);
    }
}

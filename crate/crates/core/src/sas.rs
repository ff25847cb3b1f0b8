//! Simple artifact systems over an ontology: artifact variables, an initial
//! state, guarded transitions with functional (possibly case-defined)
//! updates, and the symbolic operations the backward search needs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ground::{sat_qff, GroundError};
use crate::logic::{free_vars, name, Atom, Constraint, Formula, Literal, Name, Signature, Substitution, Syntax, Term};
use crate::ontology::{standard_translate, InvalidOntology, Ontology, UniversalTheory};

/// Literals over a shared variable tuple that `T` proves exhaustive and
/// pairwise exclusive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OPartition {
    pub literals: Vec<Literal>,
}

/// `F(x̄, ȳ) = t_i if κ_i` for the partition `κ_1 … κ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaseFunction {
    pub symbol: Name,
    pub partition: OPartition,
    pub branches: Vec<Term>,
}

impl CaseFunction {
    pub fn cases(&self) -> impl Iterator<Item = (&Literal, &Term)> {
        self.partition.literals.iter().zip(&self.branches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Update {
    Term(Term),
    Case(CaseFunction),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub name: Name,
    pub params: Vec<Name>,
    pub guard: Constraint,
    /// One update per artifact variable, in the order of the variables.
    pub updates: Vec<(Name, Update)>,
}

impl Transition {
    /// Guard `true`, every variable unchanged.
    pub fn identity(name_: &str, vars: &[Name]) -> Self {
        Transition {
            name: name(name_),
            params: Vec::new(),
            guard: Constraint::default(),
            updates: vars.iter().map(|x| (x.clone(), Update::Term(Term::Var(x.clone())))).collect(),
        }
    }

    pub fn set(&mut self, x: &str, u: Update) {
        for (v, old) in self.updates.iter_mut() {
            if v.as_ref() == x {
                *old = u;
                return;
            }
        }
        self.updates.push((name(x), u));
    }

    pub fn is_case_free(&self) -> bool {
        self.updates.iter().all(|(_, u)| matches!(u, Update::Term(_)))
    }

    /// `x ↦ t` for case-free transitions.
    pub fn substitution(&self) -> Substitution {
        self.updates
            .iter()
            .map(|(x, u)| match u {
                Update::Term(t) => (x.clone(), t.clone()),
                Update::Case(_) => panic!("case-defined update in {}", self.name),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtifactSystem {
    pub ontology: Ontology,
    pub vars: Vec<Name>,
    /// `x_i = a_i` for every variable.
    pub init: Vec<(Name, Name)>,
    /// Individuals declared by the system on top of those of the ontology.
    pub constants: Vec<Name>,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SasError {
    Ontology(InvalidOntology),
    Invalid(Vec<String>),
    InvalidPartition { transition: Name, var: Name, diagnostics: Vec<String> },
    Ground(GroundError),
}

impl fmt::Display for SasError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SasError::Ontology(e) => write!(f, "{e}"),
            SasError::Invalid(d) => write!(f, "artifact system is not well formed: {}", d.join("; ")),
            SasError::InvalidPartition { transition, var, diagnostics } => write!(
                f,
                "update of `{var}` in transition `{transition}` is not based on a partition: {}",
                diagnostics.join("; ")
            ),
            SasError::Ground(e) => write!(f, "{e}"),
        }
    }
}

impl From<GroundError> for SasError {
    fn from(e: GroundError) -> Self {
        SasError::Ground(e)
    }
}

impl From<InvalidOntology> for SasError {
    fn from(e: InvalidOntology) -> Self {
        SasError::Ontology(e)
    }
}

impl ArtifactSystem {
    pub fn theory(&self) -> Result<UniversalTheory, InvalidOntology> {
        standard_translate(&self.ontology)
    }

    /// Individuals of the ontology and of the system.
    pub fn scope_individuals(&self) -> BTreeSet<Name> {
        let mut s = self.ontology.signature().individuals;
        s.extend(self.constants.iter().cloned());
        s
    }

    /// `ι = ⋀ x_i = a_i`.
    pub fn init_formula(&self) -> Formula {
        Formula::and(
            self.init
                .iter()
                .map(|(x, a)| Formula::Atom(Atom::eq(Term::Var(x.clone()), Term::Ind(a.clone())))),
        )
    }

    /// Signature of everything the system mentions, ontology included.
    pub fn signature(&self) -> Signature {
        let mut sig = self.ontology.signature();
        for t in &self.transitions {
            sig.union(&Signature::of(&t.guard));
            for (_, u) in &t.updates {
                match u {
                    Update::Term(Term::Ind(a)) => {
                        sig.individuals.insert(a.clone());
                    }
                    Update::Term(_) => {}
                    Update::Case(cf) => {
                        sig.union(&Signature::of(&cf.partition.literals));
                        for b in &cf.branches {
                            if let Term::Ind(a) = b {
                                sig.individuals.insert(a.clone());
                            }
                        }
                    }
                }
            }
        }
        sig.individuals.extend(self.init.iter().map(|(_, a)| a.clone()));
        sig.individuals.extend(self.constants.iter().cloned());
        sig
    }

    /// Size: symbols in guards, updates, parameters, variables and `ι`.
    pub fn size(&self) -> usize {
        let mut n = self.vars.len() + self.init.len();
        for t in &self.transitions {
            n += 1 + t.params.len() + t.guard.len();
            for (_, u) in &t.updates {
                n += match u {
                    Update::Term(_) => 1,
                    Update::Case(cf) => 1 + cf.partition.literals.len() + cf.branches.len(),
                };
            }
        }
        n
    }

    /// Structural well-formedness diagnostics; empty when fine.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let vars: BTreeSet<Name> = self.vars.iter().cloned().collect();
        if vars.len() != self.vars.len() {
            out.push(String::from("artifact variables must be distinct"));
        }
        let scope = self.scope_individuals();
        let check_ind = |a: &Name, out: &mut Vec<String>, ctx: &str| {
            if !scope.contains(a) {
                out.push(format!("{ctx}: individual `{a}` is not declared"));
            }
        };
        let mut seen = BTreeSet::new();
        for (x, a) in &self.init {
            if !vars.contains(x) {
                out.push(format!("init: `{x}` is not an artifact variable"));
            }
            if !seen.insert(x.clone()) {
                out.push(format!("init: `{x}` is initialised twice"));
            }
            check_ind(a, &mut out, "init");
        }
        for x in &self.vars {
            if !seen.contains(x) {
                out.push(format!("init: `{x}` has no initial value"));
            }
        }
        let mut names = BTreeSet::new();
        for t in &self.transitions {
            let ctx = format!("transition {}", t.name);
            if !names.insert(t.name.clone()) {
                out.push(format!("{ctx}: duplicate transition name"));
            }
            let params: BTreeSet<Name> = t.params.iter().cloned().collect();
            if params.len() != t.params.len() {
                out.push(format!("{ctx}: parameters must be distinct"));
            }
            for p in &params {
                if vars.contains(p) {
                    out.push(format!("{ctx}: parameter `{p}` clashes with an artifact variable"));
                }
            }
            let allowed: BTreeSet<Name> = vars.union(&params).cloned().collect();
            let check_terms = |s: &dyn Syntax, out: &mut Vec<String>| {
                for v in free_vars(s) {
                    if !allowed.contains(&v) {
                        out.push(format!("{ctx}: `{v}` is neither a variable nor a parameter"));
                    }
                }
                for a in Signature::of(s).individuals {
                    check_ind(&a, out, &ctx);
                }
            };
            check_terms(&t.guard, &mut out);
            let mut updated = BTreeSet::new();
            for (x, u) in &t.updates {
                if !vars.contains(x) {
                    out.push(format!("{ctx}: update of unknown variable `{x}`"));
                }
                if !updated.insert(x.clone()) {
                    out.push(format!("{ctx}: `{x}` is updated twice"));
                }
                let terms: Vec<&Term> = match u {
                    Update::Term(term) => alloc::vec![term],
                    Update::Case(cf) => {
                        if cf.branches.len() != cf.partition.literals.len() || cf.branches.is_empty() {
                            out.push(format!("{ctx}: case function `{}` needs one term per case", cf.symbol));
                        }
                        check_terms(&cf.partition.literals, &mut out);
                        cf.branches.iter().collect()
                    }
                };
                for term in terms {
                    match term {
                        Term::Var(v) if !allowed.contains(v) => {
                            out.push(format!("{ctx}: `{v}` is neither a variable nor a parameter"))
                        }
                        Term::Ind(a) => check_ind(a, &mut out, &ctx),
                        _ => {}
                    }
                }
            }
            if updated != vars {
                out.push(format!("{ctx}: updates must cover every artifact variable exactly once"));
            }
        }
        out
    }
}

/// Cover and pairwise-disjointness diagnostics for a partition; empty when
/// it is an O-partition.
pub fn validate_partition(t: &UniversalTheory, p: &OPartition) -> Result<Vec<String>, GroundError> {
    let mut diags = Vec::new();
    let none = Formula::and(p.literals.iter().map(|l| Formula::lit(!l)));
    if sat_qff(t, &none)?.satisfiable {
        diags.push(String::from("cases do not cover every situation"));
    }
    for (i, a) in p.literals.iter().enumerate() {
        for b in &p.literals[i + 1..] {
            let both = Formula::and([Formula::lit(a.clone()), Formula::lit(b.clone())]);
            if sat_qff(t, &both)?.satisfiable {
                diags.push(format!("cases `{a}` and `{b}` overlap"));
            }
        }
    }
    Ok(diags)
}

/// Replace every case-defined update by the product of its branches: one
/// transition per choice of a branch for each case function, guarded by the
/// original guard and the chosen cases. Choices whose guard holds a literal
/// and its complement are dropped. Transitions without case functions are
/// kept as they are; expanded ones are named `name.k`.
pub fn eliminate_case_functions(s: &ArtifactSystem) -> Result<ArtifactSystem, SasError> {
    let diags = s.validate();
    if !diags.is_empty() {
        return Err(SasError::Invalid(diags));
    }
    let t = s.theory()?;
    let mut out = s.clone();
    out.transitions.clear();
    for tr in &s.transitions {
        if tr.is_case_free() {
            out.transitions.push(tr.clone());
            continue;
        }
        let mut choices: Vec<(Constraint, Vec<(Name, Update)>)> = alloc::vec![(tr.guard.clone(), Vec::new())];
        for (x, u) in &tr.updates {
            match u {
                Update::Term(term) => {
                    for (_, ups) in choices.iter_mut() {
                        ups.push((x.clone(), Update::Term(term.clone())));
                    }
                }
                Update::Case(cf) => {
                    let diags = validate_partition(&t, &cf.partition)?;
                    if !diags.is_empty() {
                        return Err(SasError::InvalidPartition {
                            transition: tr.name.clone(),
                            var: x.clone(),
                            diagnostics: diags,
                        });
                    }
                    let mut next = Vec::new();
                    for (g, ups) in &choices {
                        for (k, b) in cf.cases() {
                            let mut g2 = g.clone();
                            g2.push(k.clone());
                            if g2.is_contradictory() {
                                continue;
                            }
                            let mut u2 = ups.clone();
                            u2.push((x.clone(), Update::Term(b.clone())));
                            next.push((g2, u2));
                        }
                    }
                    choices = next;
                }
            }
        }
        for (k, (guard, updates)) in choices.into_iter().enumerate() {
            out.transitions.push(Transition {
                name: name(&format!("{}.{}", tr.name, k + 1)),
                params: tr.params.clone(),
                guard,
                updates,
            });
        }
    }
    Ok(out)
}

/// `γ(x̄, ȳ) ∧ δ[x̄ ↦ t̄]` for one disjunct `δ`; `None` when contradictory.
/// The parameters of `τ` are what is left to eliminate.
pub fn preimage_constraint(tau: &Transition, delta: &Constraint) -> Option<Constraint> {
    let c = tau.guard.and(&delta.substitute(&tau.substitution()));
    let c: Constraint = c.literals().iter().filter(|l| l.trivial_value() != Some(true)).cloned().collect();
    (!c.is_contradictory()).then_some(c)
}

/// Preimage of a state formula as a disjunction of constraints over
/// `x̄ ∪ ȳ`, together with the block `ȳ` to eliminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub cubes: Vec<Constraint>,
    pub drop: Vec<Name>,
}

pub fn preimage(tau: &Transition, phi: &Formula) -> Result<Preimage, crate::logic::LogicError> {
    let body = Formula::and([tau.guard.to_formula(), phi.substitute(&tau.substitution())]);
    let cubes = crate::logic::to_dnf(&body, crate::logic::DEFAULT_DNF_BUDGET)?;
    Ok(Preimage { cubes, drop: tau.params.clone() })
}

/// Name of the copy of variable `x` at step `h`.
pub fn step_var(x: &str, h: usize) -> Name {
    name(&format!("{x}@{h}"))
}

/// `ι(x̄⁰) ∧ τ_{j_0}(x̄⁰, x̄¹) ∧ … ∧ ν(x̄ᵏ)` with the existential parameters
/// of step `h` renamed to `y@h` and left free.
pub fn build_unsafe_formula(s: &ArtifactSystem, nu: &Formula, js: &[usize]) -> Formula {
    let at = |h: usize| -> Substitution { s.vars.iter().map(|x| (x.clone(), Term::Var(step_var(x, h)))).collect() };
    let mut parts = alloc::vec![s.init_formula().substitute(&at(0))];
    for (h, &j) in js.iter().enumerate() {
        let tau = &s.transitions[j];
        let mut sigma = at(h);
        for y in &tau.params {
            sigma.insert(y.clone(), Term::Var(step_var(y, h)));
        }
        parts.push(tau.guard.substitute(&sigma).to_formula());
        for (x, u) in &tau.updates {
            let Update::Term(t) = u else { panic!("case-defined update in {}", tau.name) };
            parts.push(Formula::Atom(Atom::eq(Term::Var(step_var(x, h + 1)), t.substitute(&sigma))));
        }
    }
    parts.push(nu.substitute(&at(js.len())));
    Formula::and(parts)
}

/// Inverse of [`step_var`].
pub fn split_step_var(v: &str) -> Option<(&str, usize)> {
    let (x, h) = v.rsplit_once('@')?;
    Some((x, h.parse().ok()?))
}

/// The job-hiring process over [`crate::ontology::hiring_ontology`]: seven
/// transitions moving a user through application, eligibility, job choice
/// and evaluation. All variables start at the undefined value `u`, whose
/// closure is added to the ontology.
pub fn hiring_system() -> ArtifactSystem {
    let ontology = crate::ontology::undefined_value_closure(&crate::ontology::hiring_ontology(), "u");
    let vars: Vec<Name> = ["x_applicant", "x_job", "x_eligible", "x_winner", "x_loser"].iter().map(|v| name(v)).collect();
    let v = |x: &str| Term::var(x);
    let lit = |c: &str, t: Term, pos: bool| Literal { atom: Atom::concept(c, t), positive: pos };
    let role = |r: &str, s: Term, t: Term, pos: bool| Literal { atom: Atom::role(r, s, t), positive: pos };
    let mut ts = Vec::new();

    let mut t1 = Transition::identity("t1", &vars);
    t1.params = alloc::vec![name("y1")];
    t1.guard = Constraint::new([lit("User", v("y1"), true)]);
    t1.set("x_applicant", Update::Term(v("y1")));
    ts.push(t1);

    let mut t2 = Transition::identity("t2", &vars);
    t2.guard = Constraint::new([lit("EligibleUser", v("x_applicant"), true)]);
    t2.set("x_eligible", Update::Term(v("x_applicant")));
    ts.push(t2);

    let mut t3 = Transition::identity("t3", &vars);
    t3.params = alloc::vec![name("z1")];
    t3.guard = Constraint::new([
        lit("JobPosition", v("z1"), true),
        role("appliesFor", v("x_eligible"), v("z1"), true),
    ]);
    t3.set("x_job", Update::Term(v("z1")));
    ts.push(t3);

    for (i, (pos, suitable, target)) in [
        ("AcademicPosition", true, "x_winner"),
        ("AdminPosition", true, "x_winner"),
        ("AcademicPosition", false, "x_loser"),
        ("AdminPosition", false, "x_loser"),
    ]
    .into_iter()
    .enumerate()
    {
        let mut t = Transition::identity(&format!("t{}", i + 4), &vars);
        t.guard = Constraint::new([
            lit(pos, v("x_job"), true),
            role("suitableFor", v("x_eligible"), v("x_job"), suitable),
        ]);
        t.set(target, Update::Term(v("x_eligible")));
        ts.push(t);
    }

    ArtifactSystem {
        ontology,
        init: vars.iter().map(|x| (x.clone(), name("u"))).collect(),
        vars,
        constants: Vec::new(),
        transitions: ts,
    }
}

/// `User(x_winner) ∧ ¬EligibleUser(x_winner)`.
pub fn hiring_unsafe() -> Formula {
    Formula::and([
        Formula::Atom(Atom::concept("User", Term::var("x_winner"))),
        Formula::negate(Formula::Atom(Atom::concept("EligibleUser", Term::var("x_winner")))),
    ])
}

/// Map from each artifact variable to its update term, for case-free
/// transitions.
pub fn update_map(tau: &Transition) -> BTreeMap<Name, Term> {
    tau.substitution()
}

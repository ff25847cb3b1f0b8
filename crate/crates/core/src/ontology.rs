//! RDFS+ ontologies and their translation into a universal, function-free
//! first-order theory.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::logic::{name, Atom, Literal, Name, Signature, Syntax, Term};

/// `P` or `P⁻`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleExpr {
    pub role: Name,
    pub inverse: bool,
}

impl RoleExpr {
    pub fn new(role: &str, inverse: bool) -> Self {
        RoleExpr { role: name(role), inverse }
    }

    /// The atom `R(x, y)`: `P(x, y)`, or `P(y, x)` for an inverse.
    pub fn atom(&self, x: &Term, y: &Term) -> Atom {
        if self.inverse {
            Atom::Role(self.role.clone(), y.clone(), x.clone())
        } else {
            Atom::Role(self.role.clone(), x.clone(), y.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptExpr {
    /// `A1 ⊓ … ⊓ An`
    Conj(Vec<Name>),
    /// `∃R`
    SomeT(RoleExpr),
    /// `∃R.A`
    Some(RoleExpr, Name),
}

impl ConceptExpr {
    pub fn atomic(c: &str) -> Self {
        ConceptExpr::Conj(alloc::vec![name(c)])
    }

    fn as_name(&self) -> Option<&Name> {
        match self {
            ConceptExpr::Conj(v) if v.len() == 1 => Some(&v[0]),
            _ => None,
        }
    }
}

/// `C ⊑ A` or `C ⊑ ¬A`. The right-hand side is representable as any
/// concept expression so that [`validate`] can report the violation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptInclusion {
    pub lhs: ConceptExpr,
    pub rhs: ConceptExpr,
    pub rhs_negated: bool,
}

impl ConceptInclusion {
    pub fn new(lhs: ConceptExpr, rhs: &str, rhs_negated: bool) -> Self {
        ConceptInclusion { lhs, rhs: ConceptExpr::atomic(rhs), rhs_negated }
    }
}

/// `R ⊑ R'` or `R ⊑ ¬R'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleInclusion {
    pub lhs: RoleExpr,
    pub rhs: RoleExpr,
    pub rhs_negated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Concept(ConceptInclusion),
    Role(RoleInclusion),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assertion {
    Concept { concept: Name, ind: Name, positive: bool },
    Role { role: Name, subject: Name, object: Name, positive: bool },
    Eq { left: Name, right: Name, positive: bool },
}

impl Assertion {
    pub fn to_literal(&self) -> Literal {
        match self {
            Assertion::Concept { concept, ind, positive } => Literal {
                atom: Atom::Concept(concept.clone(), Term::Ind(ind.clone())),
                positive: *positive,
            },
            Assertion::Role { role, subject, object, positive } => Literal {
                atom: Atom::Role(role.clone(), Term::Ind(subject.clone()), Term::Ind(object.clone())),
                positive: *positive,
            },
            Assertion::Eq { left, right, positive } => Literal {
                atom: Atom::eq(Term::Ind(left.clone()), Term::Ind(right.clone())),
                positive: *positive,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Assertion::Concept { positive, .. }
            | Assertion::Role { positive, .. }
            | Assertion::Eq { positive, .. } => *positive,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub tbox: Vec<Axiom>,
    pub abox: Vec<Assertion>,
}

impl Ontology {
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for ax in &self.tbox {
            match ax {
                Axiom::Concept(ci) => {
                    for side in [&ci.lhs, &ci.rhs] {
                        match side {
                            ConceptExpr::Conj(cs) => sig.concepts.extend(cs.iter().cloned()),
                            ConceptExpr::SomeT(r) => {
                                sig.roles.insert(r.role.clone());
                            }
                            ConceptExpr::Some(r, a) => {
                                sig.roles.insert(r.role.clone());
                                sig.concepts.insert(a.clone());
                            }
                        }
                    }
                }
                Axiom::Role(ri) => {
                    sig.roles.insert(ri.lhs.role.clone());
                    sig.roles.insert(ri.rhs.role.clone());
                }
            }
        }
        for a in &self.abox {
            sig.add_atom(&a.to_literal().atom);
        }
        sig
    }

    pub fn concept_inclusions(&self) -> impl Iterator<Item = &ConceptInclusion> {
        self.tbox.iter().filter_map(|a| match a {
            Axiom::Concept(ci) => Some(ci),
            Axiom::Role(_) => None,
        })
    }

    pub fn push_assertion(&mut self, a: Assertion) {
        if !self.abox.contains(&a) {
            self.abox.push(a);
        }
    }
}

/// Well-formedness diagnostics; empty iff the ontology is RDFS+.
pub fn validate(o: &Ontology) -> Vec<String> {
    let mut out = Vec::new();
    let check_name = |n: &Name, what: &str, out: &mut Vec<String>| {
        if n.is_empty() {
            out.push(format!("empty {what} name"));
        }
    };
    for (i, ax) in o.tbox.iter().enumerate() {
        match ax {
            Axiom::Concept(ci) => {
                match &ci.lhs {
                    ConceptExpr::Conj(cs) if cs.is_empty() => {
                        out.push(format!("axiom {}: empty conjunction on the left-hand side", i + 1))
                    }
                    ConceptExpr::Conj(cs) => cs.iter().for_each(|c| check_name(c, "concept", &mut out)),
                    ConceptExpr::SomeT(r) => check_name(&r.role, "role", &mut out),
                    ConceptExpr::Some(r, a) => {
                        check_name(&r.role, "role", &mut out);
                        check_name(a, "concept", &mut out);
                    }
                }
                match ci.rhs.as_name() {
                    Some(n) => check_name(n, "concept", &mut out),
                    None => out.push(format!("axiom {}: rhs must be a concept name", i + 1)),
                }
            }
            Axiom::Role(ri) => {
                check_name(&ri.lhs.role, "role", &mut out);
                check_name(&ri.rhs.role, "role", &mut out);
            }
        }
    }
    for a in &o.abox {
        let lit = a.to_literal();
        for t in lit.atom.terms() {
            check_name(t.name(), "individual", &mut out);
        }
    }
    for n in o.signature().kind_clashes() {
        out.push(format!("name `{n}` is used with more than one kind"));
    }
    out
}

/// Head `λ(x)` of a unary-conclusion clause: `B(x)` or `¬B(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnaryHead {
    pub concept: Name,
    pub positive: bool,
}

impl UnaryHead {
    fn literal(&self, x: &Term) -> Literal {
        Literal { atom: Atom::Concept(self.concept.clone(), x.clone()), positive: self.positive }
    }
}

/// The five universal clause shapes produced by the translation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UniversalClause {
    /// (1) `∀x (A1(x) ∧ … ∧ An(x) → λ(x))`
    ConceptConj { body: Vec<Name>, head: UnaryHead },
    /// (2) `∀x∀y (R(x,y) → λ(x))`
    RoleDomain { role: RoleExpr, head: UnaryHead },
    /// (3) `∀x∀y (R(x,y) ∧ A(y) → λ(x))`
    RoleQualified { role: RoleExpr, filler: Name, head: UnaryHead },
    /// (4) `∀x∀y (R1(x,y) → R2(x,y))`
    RoleSub { lhs: RoleExpr, rhs: RoleExpr },
    /// (5) `∀x∀y (R1(x,y) → ¬R2(x,y))`
    RoleDisjoint { lhs: RoleExpr, rhs: RoleExpr },
}

impl UniversalClause {
    /// Shape number, 1 to 5.
    pub fn shape(&self) -> u8 {
        match self {
            UniversalClause::ConceptConj { .. } => 1,
            UniversalClause::RoleDomain { .. } => 2,
            UniversalClause::RoleQualified { .. } => 3,
            UniversalClause::RoleSub { .. } => 4,
            UniversalClause::RoleDisjoint { .. } => 5,
        }
    }

    /// Number of universally quantified variables.
    pub fn arity(&self) -> usize {
        if self.shape() == 1 {
            1
        } else {
            2
        }
    }

    /// The clause instance for `x ↦ x_val, y ↦ y_val`, as a disjunction of
    /// literals. `y_val` is ignored by shape (1).
    pub fn instantiate(&self, x: &Term, y: &Term) -> Vec<Literal> {
        match self {
            UniversalClause::ConceptConj { body, head } => body
                .iter()
                .map(|a| Literal::neg(Atom::Concept(a.clone(), x.clone())))
                .chain(core::iter::once(head.literal(x)))
                .collect(),
            UniversalClause::RoleDomain { role, head } => {
                alloc::vec![Literal::neg(role.atom(x, y)), head.literal(x)]
            }
            UniversalClause::RoleQualified { role, filler, head } => alloc::vec![
                Literal::neg(role.atom(x, y)),
                Literal::neg(Atom::Concept(filler.clone(), y.clone())),
                head.literal(x),
            ],
            UniversalClause::RoleSub { lhs, rhs } => {
                alloc::vec![Literal::neg(lhs.atom(x, y)), Literal::pos(rhs.atom(x, y))]
            }
            UniversalClause::RoleDisjoint { lhs, rhs } => {
                alloc::vec![Literal::neg(lhs.atom(x, y)), Literal::neg(rhs.atom(x, y))]
            }
        }
    }

    /// The unique positive literal of the instance, if any (clauses are Horn).
    pub fn head_is_positive(&self) -> bool {
        match self {
            UniversalClause::ConceptConj { head, .. }
            | UniversalClause::RoleDomain { head, .. }
            | UniversalClause::RoleQualified { head, .. } => head.positive,
            UniversalClause::RoleSub { .. } => true,
            UniversalClause::RoleDisjoint { .. } => false,
        }
    }
}

impl Syntax for UniversalClause {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        for l in self.instantiate(&Term::var("x"), &Term::var("y")) {
            f(&l.atom);
        }
    }
}

impl fmt::Display for UniversalClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = Term::var("x");
        let y = Term::var("y");
        let lits = self.instantiate(&x, &y);
        let (body, head) = lits.split_at(lits.len() - 1);
        let quant = if self.arity() == 1 { "forall x." } else { "forall x, y." };
        write!(f, "{quant} ")?;
        for (i, l) in body.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{}", !l)?;
        }
        write!(f, " -> {}", head[0])
    }
}

/// A finite universal theory: clauses plus ground literals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalTheory {
    pub clauses: Vec<UniversalClause>,
    pub ground: Vec<Literal>,
}

impl UniversalTheory {
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::of(&self.ground);
        for c in &self.clauses {
            sig.union(&Signature::of(c));
        }
        sig
    }

    pub fn individuals(&self) -> BTreeSet<Name> {
        Signature::of(&self.ground).individuals
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty() && self.ground.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidOntology(pub Vec<String>);

impl fmt::Display for InvalidOntology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ontology is not well formed: {}", self.0.join("; "))
    }
}

fn head_of(ci: &ConceptInclusion) -> Result<UnaryHead, InvalidOntology> {
    ci.rhs
        .as_name()
        .map(|n| UnaryHead { concept: n.clone(), positive: !ci.rhs_negated })
        .ok_or_else(|| InvalidOntology(alloc::vec![String::from("rhs must be a concept name")]))
}

/// One clause per TBox axiom, one ground literal per ABox assertion.
pub fn standard_translate(o: &Ontology) -> Result<UniversalTheory, InvalidOntology> {
    let diags = validate(o);
    if !diags.is_empty() {
        return Err(InvalidOntology(diags));
    }
    let mut clauses = Vec::with_capacity(o.tbox.len());
    for ax in &o.tbox {
        let clause = match ax {
            Axiom::Concept(ci) => {
                let head = head_of(ci)?;
                match &ci.lhs {
                    ConceptExpr::Conj(body) => UniversalClause::ConceptConj { body: body.clone(), head },
                    ConceptExpr::SomeT(role) => UniversalClause::RoleDomain { role: role.clone(), head },
                    ConceptExpr::Some(role, filler) => UniversalClause::RoleQualified {
                        role: role.clone(),
                        filler: filler.clone(),
                        head,
                    },
                }
            }
            Axiom::Role(ri) if ri.rhs_negated => {
                UniversalClause::RoleDisjoint { lhs: ri.lhs.clone(), rhs: ri.rhs.clone() }
            }
            Axiom::Role(ri) => UniversalClause::RoleSub { lhs: ri.lhs.clone(), rhs: ri.rhs.clone() },
        };
        clauses.push(clause);
    }
    let ground = o.abox.iter().map(Assertion::to_literal).collect();
    Ok(UniversalTheory { clauses, ground })
}

/// Make `u` an undefined value: assert `¬A(u)`, `¬P(u,a)` and `¬P(a,u)` for
/// every concept `A`, role `P` and individual `a` of the ontology (`u`
/// included). Idempotent.
pub fn undefined_value_closure(o: &Ontology, u: &str) -> Ontology {
    let mut out = o.clone();
    let sig = o.signature();
    let u = name(u);
    let mut individuals = sig.individuals.clone();
    individuals.insert(u.clone());
    for c in &sig.concepts {
        out.push_assertion(Assertion::Concept { concept: c.clone(), ind: u.clone(), positive: false });
    }
    for r in &sig.roles {
        for a in &individuals {
            out.push_assertion(Assertion::Role {
                role: r.clone(),
                subject: u.clone(),
                object: a.clone(),
                positive: false,
            });
            out.push_assertion(Assertion::Role {
                role: r.clone(),
                subject: a.clone(),
                object: u.clone(),
                positive: false,
            });
        }
    }
    out
}

/// The job-hiring ontology used throughout the examples and tests.
pub fn hiring_ontology() -> Ontology {
    let c = |lhs: ConceptExpr, rhs: &str, neg: bool| Axiom::Concept(ConceptInclusion::new(lhs, rhs, neg));
    let at = ConceptExpr::atomic;
    let some = |r: &str, inv: bool| ConceptExpr::SomeT(RoleExpr::new(r, inv));
    let tbox = alloc::vec![
        c(at("AcademicPosition"), "JobPosition", false),
        c(at("AcademicPosition"), "AdminPosition", true),
        c(at("AdminPosition"), "JobPosition", false),
        c(at("User"), "JobPosition", true),
        c(some("appliesFor", false), "User", false),
        c(some("appliesFor", true), "JobPosition", false),
        c(some("suitableFor", false), "User", false),
        c(some("suitableFor", true), "JobPosition", false),
        c(some("suitableFor", false), "PositivelyEvaluated", false),
        c(at("EligibleUser"), "User", false),
        c(ConceptExpr::Conj(alloc::vec![name("User"), name("Graduate")]), "EligibleUser", false),
        c(at("EligibleUser"), "Graduate", false),
    ];
    let pos = |concept: &str, ind: &str| Assertion::Concept { concept: name(concept), ind: name(ind), positive: true };
    let abox = alloc::vec![
        pos("AcademicPosition", "professor123"),
        pos("AcademicPosition", "researcher123"),
        pos("AdminPosition", "secretary123"),
        pos("AdminPosition", "secretary456"),
    ];
    Ontology { tbox, abox }
}

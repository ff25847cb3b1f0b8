//! Printers whose output the parsers read back to the same structure.

use std::fmt::Write;

use oreach_core::logic::{join, Formula, Term};
use oreach_core::ontology::{Assertion, Axiom, ConceptExpr, Ontology, RoleExpr};
use oreach_core::sas::Update;

use crate::sas::SasDoc;

fn role(r: &RoleExpr) -> String {
    if r.inverse {
        format!("{}-", r.role)
    } else {
        r.role.to_string()
    }
}

fn concept(c: &ConceptExpr) -> String {
    match c {
        ConceptExpr::Conj(names) => join(names, " & "),
        ConceptExpr::SomeT(r) => format!("exists {}", role(r)),
        ConceptExpr::Some(r, a) => format!("exists {} . {a}", role(r)),
    }
}

fn not(negated: bool) -> &'static str {
    if negated {
        "not "
    } else {
        ""
    }
}

pub fn print_onto(o: &Ontology) -> String {
    let mut out = String::new();
    let roles: Vec<_> = o.signature().roles.into_iter().collect();
    if !roles.is_empty() {
        let _ = writeln!(out, "role {}", join(&roles, ", "));
    }
    for ax in &o.tbox {
        let _ = match ax {
            Axiom::Concept(ci) => writeln!(out, "{} <= {}{}", concept(&ci.lhs), not(ci.rhs_negated), concept(&ci.rhs)),
            Axiom::Role(ri) => writeln!(out, "{} <= {}{}", role(&ri.lhs), not(ri.rhs_negated), role(&ri.rhs)),
        };
    }
    for a in &o.abox {
        let _ = match a {
            Assertion::Concept { concept, ind, positive } => writeln!(out, "{}{concept}({ind})", not(!positive)),
            Assertion::Role { role, subject, object, positive } => {
                writeln!(out, "{}{role}({subject}, {object})", not(!positive))
            }
            Assertion::Eq { left, right, positive } => {
                writeln!(out, "{left} {} {right}", if *positive { "=" } else { "!=" })
            }
        };
    }
    out
}

pub fn print_sas(doc: &SasDoc) -> String {
    let mut out = String::new();
    if !doc.vars.is_empty() {
        let _ = writeln!(out, "vars {}", join(&doc.vars, ", "));
    }
    if !doc.init.is_empty() {
        let inits: Vec<String> = doc.init.iter().map(|(x, a)| format!("{x} := {a}")).collect();
        let _ = writeln!(out, "init {}", inits.join(", "));
    }
    if !doc.constants.is_empty() {
        let _ = writeln!(out, "constants {}", join(&doc.constants, ", "));
    }
    if let Some(u) = &doc.undef {
        let _ = writeln!(out, "undef {u}");
    }
    for t in &doc.transitions {
        let _ = write!(out, "\ntransition {}", t.name);
        if !t.params.is_empty() {
            let _ = write!(out, " params {}", join(&t.params, ", "));
        }
        let _ = write!(out, " : guard {} ==>", t.guard);
        let mut updates = Vec::new();
        for (x, u) in &t.updates {
            match u {
                Update::Term(Term::Var(y)) if y == x => {}
                Update::Term(term) => updates.push(format!("{x} := {term}")),
                Update::Case(cf) => {
                    let cases: Vec<String> = cf.cases().map(|(l, b)| format!("{l} -> {b}")).collect();
                    updates.push(format!("{x} := case {} {{ {} }}", cf.symbol, cases.join(" | ")));
                }
            }
        }
        if !updates.is_empty() {
            let _ = write!(out, "\n    {}", updates.join(",\n    "));
        }
        out.push('\n');
    }
    out
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

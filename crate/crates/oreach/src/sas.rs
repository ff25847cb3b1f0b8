//! The `.sas` format for artifact systems. Layout is free; statements
//! start with a keyword and may end with `;`.
//!
//! ```text
//! vars x_applicant, x_job
//! init x_applicant := u, x_job := u
//! constants acme                       # individuals not in the ontology
//! undef u                              # close `u` as the undefined value
//! transition t1 params y1 : guard User(y1) ==> x_applicant := y1
//! transition t2 : guard true ==>
//!     x_job := case Pick { Open(x_job) -> x_job | not Open(x_job) -> u }
//! ```
//!
//! Variables and parameters are variables; every other name in a term
//! position is an individual. Updates left out are identities.

use std::collections::BTreeSet;

use oreach_core::logic::{name, Constraint, Name, Term};
use oreach_core::ontology::{undefined_value_closure, Ontology};
use oreach_core::sas::{ArtifactSystem, CaseFunction, OPartition, Transition, Update};

use crate::formula::{raw_literal, term, Ident, RawLit};
use crate::lexer::{tokenize, Cursor, Tok};
use crate::span::{Diagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSpans {
    pub whole: SourceSpan,
    pub name: SourceSpan,
    pub guard: Vec<SourceSpan>,
    /// Explicit updates only, in source order.
    pub updates: Vec<SourceSpan>,
}

/// A parsed system, before it is attached to an ontology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SasDoc {
    pub vars: Vec<Name>,
    pub init: Vec<(Name, Name)>,
    pub constants: Vec<Name>,
    pub undef: Option<Name>,
    pub transitions: Vec<Transition>,
    pub spans: Vec<TransitionSpans>,
}

impl SasDoc {
    /// The system over `ontology`, closed under the undefined values named
    /// in the file and in `extra_undef`.
    pub fn system(&self, ontology: &Ontology, extra_undef: Option<&str>) -> ArtifactSystem {
        let mut o = ontology.clone();
        for u in self.undef.iter().map(|u| u.as_ref()).chain(extra_undef) {
            o = undefined_value_closure(&o, u);
        }
        ArtifactSystem {
            ontology: o,
            vars: self.vars.clone(),
            init: self.init.clone(),
            constants: self.constants.clone(),
            transitions: self.transitions.clone(),
        }
    }

    pub fn from_system(s: &ArtifactSystem) -> SasDoc {
        SasDoc {
            vars: s.vars.clone(),
            init: s.init.clone(),
            constants: s.constants.clone(),
            undef: None,
            transitions: s.transitions.clone(),
            spans: Vec::new(),
        }
    }
}

const KEYWORDS: &[&str] = &["vars", "init", "constants", "undef", "transition", "params", "guard", "case", "true", "false", "not"];

enum RawRhs {
    Term(Ident),
    Case { symbol: Option<Ident>, cases: Vec<(RawLit, Ident)> },
}

struct RawUpdate {
    var: Ident,
    rhs: RawRhs,
    span: SourceSpan,
}

struct RawTransition {
    name: Ident,
    params: Vec<Ident>,
    guard: Vec<RawLit>,
    updates: Vec<RawUpdate>,
    span: SourceSpan,
}

fn ident(cur: &mut Cursor, what: &str) -> Result<Ident, Diagnostic> {
    let id = cur.expect_ident(what)?;
    if KEYWORDS.contains(&id.0.as_str()) {
        return Err(Diagnostic::at(&id.1, format!("`{}` is a keyword", id.0)));
    }
    Ok(id)
}

fn ident_list(cur: &mut Cursor, what: &str) -> Result<Vec<Ident>, Diagnostic> {
    let mut out = vec![ident(cur, what)?];
    while cur.eat_sym(",") {
        out.push(ident(cur, what)?);
    }
    Ok(out)
}

fn branch_term(cur: &mut Cursor) -> Result<Ident, Diagnostic> {
    if cur.at_keyword("case") {
        return Err(Diagnostic::at(cur.span(), "nested `case` is not allowed; branches are terms"));
    }
    ident(cur, "a term")
}

fn update(cur: &mut Cursor) -> Result<RawUpdate, Diagnostic> {
    let var = ident(cur, "a variable")?;
    cur.expect_sym(":=")?;
    if !cur.eat_keyword("case") {
        let t = ident(cur, "a term or `case`")?;
        let span = var.1.to(&t.1);
        return Ok(RawUpdate { var, rhs: RawRhs::Term(t), span });
    }
    let symbol = if matches!(cur.peek(), Tok::Ident(_)) { Some(ident(cur, "a function name")?) } else { None };
    cur.expect_sym("{")?;
    let mut cases = Vec::new();
    loop {
        let lit = raw_literal(cur)?;
        cur.expect_sym("->")?;
        cases.push((lit, branch_term(cur)?));
        if !cur.eat_sym("|") {
            break;
        }
    }
    let close = cur.expect_sym("}")?;
    let span = var.1.to(&close);
    Ok(RawUpdate { var, rhs: RawRhs::Case { symbol, cases }, span })
}

fn transition(cur: &mut Cursor, start: SourceSpan) -> Result<RawTransition, Diagnostic> {
    let name = ident(cur, "a transition name")?;
    let params = if cur.eat_keyword("params") { ident_list(cur, "a parameter")? } else { Vec::new() };
    cur.expect_sym(":")?;
    if !cur.eat_keyword("guard") {
        return Err(cur.unexpected("`guard`"));
    }
    let mut guard = Vec::new();
    if !cur.eat_keyword("true") {
        guard.push(raw_literal(cur)?);
        while cur.eat_sym("&") {
            guard.push(raw_literal(cur)?);
        }
    }
    cur.expect_sym("==>")?;
    let mut updates = Vec::new();
    while matches!(cur.peek(), Tok::Ident(w) if !KEYWORDS.contains(&w.as_str())) && *cur.peek2() == Tok::Sym(":=") {
        updates.push(update(cur)?);
        if !cur.eat_sym(",") {
            break;
        }
        if !matches!(cur.peek(), Tok::Ident(_)) {
            return Err(cur.unexpected("an update"));
        }
    }
    let span = start.to(cur.prev_span());
    Ok(RawTransition { name, params, guard, updates, span })
}

pub fn parse_sas(text: &str) -> Result<SasDoc, Diagnostic> {
    parse_sas_in("<sas>", text)
}

pub fn parse_sas_in(file: &str, text: &str) -> Result<SasDoc, Diagnostic> {
    let mut cur = Cursor::new(tokenize(file, text)?, true);
    let mut vars: Option<Vec<Ident>> = None;
    let mut init: Vec<(Ident, Ident)> = Vec::new();
    let mut constants = Vec::new();
    let mut undef: Option<Ident> = None;
    let mut raw = Vec::new();
    loop {
        while cur.eat_sym(";") {}
        if *cur.peek() == Tok::Eof {
            break;
        }
        let start = cur.span().clone();
        if cur.eat_keyword("vars") {
            if vars.is_some() {
                return Err(Diagnostic::at(&start, "variables are already declared"));
            }
            vars = Some(ident_list(&mut cur, "a variable")?);
        } else if cur.eat_keyword("init") {
            loop {
                let x = ident(&mut cur, "a variable")?;
                cur.expect_sym(":=")?;
                let a = ident(&mut cur, "an individual")?;
                init.push((x, a));
                if !cur.eat_sym(",") {
                    break;
                }
            }
        } else if cur.eat_keyword("constants") {
            constants.extend(ident_list(&mut cur, "an individual")?);
        } else if cur.eat_keyword("undef") {
            if undef.is_some() {
                return Err(Diagnostic::at(&start, "only one undefined value may be declared"));
            }
            undef = Some(ident(&mut cur, "an individual")?);
        } else if cur.eat_keyword("transition") {
            raw.push(transition(&mut cur, start)?);
        } else {
            return Err(cur.unexpected("`vars`, `init`, `constants`, `undef` or `transition`"));
        }
    }
    resolve(vars.unwrap_or_default(), init, constants, undef, raw)
}

fn resolve(
    vars: Vec<Ident>,
    init: Vec<(Ident, Ident)>,
    constants: Vec<Ident>,
    undef: Option<Ident>,
    raw: Vec<RawTransition>,
) -> Result<SasDoc, Diagnostic> {
    let var_names: Vec<Name> = vars.iter().map(|v| name(&v.0)).collect();
    let var_set: BTreeSet<&str> = vars.iter().map(|v| v.0.as_str()).collect();
    let mut seen = BTreeSet::new();
    for v in &vars {
        if !seen.insert(v.0.as_str()) {
            return Err(Diagnostic::at(&v.1, format!("variable `{}` is declared twice", v.0)));
        }
    }
    let mut init_out = Vec::new();
    for (x, a) in &init {
        if !var_set.contains(x.0.as_str()) {
            return Err(Diagnostic::at(&x.1, format!("`{}` is not a declared variable", x.0)));
        }
        if var_set.contains(a.0.as_str()) {
            return Err(Diagnostic::at(&a.1, format!("initial value of `{}` must be an individual", x.0)));
        }
        init_out.push((name(&x.0), name(&a.0)));
    }
    for c in &constants {
        if var_set.contains(c.0.as_str()) {
            return Err(Diagnostic::at(&c.1, format!("`{}` is a variable, not an individual", c.0)));
        }
    }

    let mut transitions = Vec::new();
    let mut spans = Vec::new();
    for rt in raw {
        let mut locals: BTreeSet<&str> = var_set.clone();
        for p in &rt.params {
            if var_set.contains(p.0.as_str()) {
                return Err(Diagnostic::at(&p.1, format!("parameter `{}` shadows a variable", p.0)));
            }
            locals.insert(p.0.as_str());
        }
        let is_var = |n: &str| locals.contains(n);
        let mut tau = Transition::identity(&rt.name.0, &var_names);
        tau.params = rt.params.iter().map(|p| name(&p.0)).collect();
        tau.guard = Constraint::new(rt.guard.iter().map(|l| l.resolve(&is_var)).collect::<Result<Vec<_>, _>>()?);
        let mut updated = BTreeSet::new();
        for u in &rt.updates {
            if !var_set.contains(u.var.0.as_str()) {
                return Err(Diagnostic::at(&u.var.1, format!("`{}` is not a declared variable", u.var.0)));
            }
            if !updated.insert(u.var.0.as_str()) {
                return Err(Diagnostic::at(&u.var.1, format!("`{}` is updated twice", u.var.0)));
            }
            let upd = match &u.rhs {
                RawRhs::Term(t) => Update::Term(term(t, &is_var)),
                RawRhs::Case { symbol, cases } => {
                    let symbol = match symbol {
                        Some(s) => name(&s.0),
                        None => name(&format!("{}_{}", rt.name.0, u.var.0)),
                    };
                    let literals = cases.iter().map(|(l, _)| l.resolve(&is_var)).collect::<Result<Vec<_>, _>>()?;
                    let branches: Vec<Term> = cases.iter().map(|(_, t)| term(t, &is_var)).collect();
                    Update::Case(CaseFunction { symbol, partition: OPartition { literals }, branches })
                }
            };
            tau.set(&u.var.0, upd);
        }
        spans.push(TransitionSpans {
            whole: rt.span.clone(),
            name: rt.name.1.clone(),
            guard: rt.guard.iter().map(|l| l.span.clone()).collect(),
            updates: rt.updates.iter().map(|u| u.span.clone()).collect(),
        });
        transitions.push(tau);
    }
    Ok(SasDoc {
        vars: var_names,
        init: init_out,
        constants: constants.iter().map(|c| name(&c.0)).collect(),
        undef: undef.map(|u| name(&u.0)),
        transitions,
        spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use oreach_core::logic::{Atom, Literal};

    const SMALL: &str = "vars x, z\ninit x := a, z := a\n\
        transition t params y : guard A(y) & x != y ==> x := y;\n\
        transition s : guard true ==> z := case { A(x) -> x | not A(x) -> a }\n";

    #[test]
    fn small_system() {
        let doc = parse_sas(SMALL).unwrap();
        assert_eq!(doc.vars, [name("x"), name("z")]);
        let t = &doc.transitions[0];
        assert_eq!(t.params, [name("y")]);
        assert_eq!(t.guard.len(), 2);
        assert_eq!(t.updates[0], (name("x"), Update::Term(Term::var("y"))));
        assert_eq!(t.updates[1], (name("z"), Update::Term(Term::var("z"))));
        let Update::Case(cf) = &doc.transitions[1].updates[1].1 else { panic!() };
        assert_eq!(cf.symbol.as_ref(), "s_z");
        assert_eq!(cf.partition.literals[1], Literal::neg(Atom::concept("A", Term::var("x"))));
        assert_eq!(cf.branches, [Term::var("x"), Term::ind("a")]);
    }

    #[test]
    fn spans_nest() {
        let doc = parse_sas(SMALL).unwrap();
        for s in &doc.spans {
            assert!(s.whole.contains(&s.name));
            assert!(s.guard.iter().chain(&s.updates).all(|g| s.whole.contains(g)));
        }
        assert_eq!(doc.spans[1].updates[0].start.line, 4);
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("vars x\ntransition t : guard true ==> y := x", "<sas>:2:31: `y` is not a declared variable"),
            ("vars x\ntransition t params x : guard true ==>", "<sas>:2:21: parameter `x` shadows a variable"),
            (
                "vars x\ntransition t : guard true ==> x := case { A(x) -> case { } }",
                "<sas>:2:51: nested `case` is not allowed; branches are terms",
            ),
            ("vars x\ninit x := x", "<sas>:2:11: initial value of `x` must be an individual"),
            ("vars x\nfoo", "<sas>:2:1: expected `vars`, `init`, `constants`, `undef` or `transition`, found `foo`"),
        ];
        for (text, want) in cases {
            assert_eq!(parse_sas(text).unwrap_err().to_string(), want, "{text}");
        }
    }
}

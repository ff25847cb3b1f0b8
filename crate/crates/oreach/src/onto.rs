//! The `.onto` format. One statement per line, `#` starts a comment.
//!
//! ```text
//! role appliesFor, suitableFor          # optional declaration
//! AcademicPosition <= JobPosition
//! User & Graduate <= EligibleUser
//! exists appliesFor- <= JobPosition
//! exists suitableFor . Graduate <= not Applicant
//! hasPart <= not partOf-
//! AdminPosition(secretary123)
//! not User(secretary123)
//! appliesFor(ann, professor123)
//! ann != bob
//! ```
//!
//! `A <= B` and `r <= s` look alike. A name is a role if it is declared
//! with `role`, appears after `exists`, carries a `-`, has a two-argument
//! assertion, or stands opposite a role in an inclusion; everything else
//! is a concept.

use std::collections::BTreeSet;

use oreach_core::logic::{name, Name};
use oreach_core::ontology::{Assertion, Axiom, ConceptExpr, ConceptInclusion, Ontology, RoleExpr, RoleInclusion};

use crate::formula::Ident;
use crate::lexer::{tokenize, Cursor, Tok, Token};
use crate::span::{Diagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OntoDoc {
    pub ontology: Ontology,
    /// Roles named in `role` declarations.
    pub declared_roles: BTreeSet<Name>,
    pub tbox_spans: Vec<SourceSpan>,
    pub abox_spans: Vec<SourceSpan>,
}

#[derive(Clone, Debug)]
struct RoleRef {
    id: Ident,
    inverse: bool,
}

#[derive(Clone, Debug)]
enum RawTbox {
    Exists { role: RoleRef, filler: Option<Ident>, rhs: RoleRef, negated: bool },
    Names { lhs: Vec<RoleRef>, rhs: RoleRef, negated: bool },
}

#[derive(Clone, Debug)]
enum RawAbox {
    Pred { negated: bool, pred: Ident, args: Vec<Ident> },
    Eq { left: Ident, right: Ident, positive: bool },
}

fn maybe_inverse(cur: &mut Cursor, what: &str) -> Result<RoleRef, Diagnostic> {
    let id = cur.expect_ident(what)?;
    let inverse = cur.eat_sym("-");
    Ok(RoleRef { id, inverse })
}

fn rhs(cur: &mut Cursor) -> Result<(RoleRef, bool), Diagnostic> {
    let negated = cur.eat_keyword("not");
    Ok((maybe_inverse(cur, "a concept or role name")?, negated))
}

fn tbox_line(cur: &mut Cursor) -> Result<RawTbox, Diagnostic> {
    if cur.eat_keyword("exists") {
        let role = maybe_inverse(cur, "a role name")?;
        let filler = if cur.eat_sym(".") { Some(cur.expect_ident("a concept name")?) } else { None };
        cur.expect_sym("<=")?;
        let (rhs, negated) = rhs(cur)?;
        return Ok(RawTbox::Exists { role, filler, rhs, negated });
    }
    let mut lhs = vec![maybe_inverse(cur, "a concept or role name")?];
    while cur.eat_sym("&") {
        lhs.push(maybe_inverse(cur, "a concept name")?);
    }
    cur.expect_sym("<=")?;
    let (rhs, negated) = rhs(cur)?;
    Ok(RawTbox::Names { lhs, rhs, negated })
}

fn abox_line(cur: &mut Cursor) -> Result<RawAbox, Diagnostic> {
    let negated = cur.eat_keyword("not");
    let first = cur.expect_ident("an assertion")?;
    if cur.eat_sym("(") {
        let mut args = vec![cur.expect_ident("an individual")?];
        while cur.eat_sym(",") {
            args.push(cur.expect_ident("an individual")?);
        }
        cur.expect_sym(")")?;
        if args.len() > 2 {
            return Err(Diagnostic::at(&first.1, format!("`{}` has {} arguments", first.0, args.len())));
        }
        return Ok(RawAbox::Pred { negated, pred: first, args });
    }
    if negated {
        return Err(Diagnostic::at(&first.1, "negated equality is written `a != b`"));
    }
    let positive = if cur.eat_sym("=") {
        true
    } else if cur.eat_sym("!=") {
        false
    } else {
        return Err(cur.unexpected("`(`, `<=`, `=` or `!=`"));
    };
    let right = cur.expect_ident("an individual")?;
    Ok(RawAbox::Eq { left: first, right, positive })
}

pub fn parse_onto(text: &str) -> Result<OntoDoc, Diagnostic> {
    parse_onto_in("<onto>", text)
}

pub fn parse_onto_in(file: &str, text: &str) -> Result<OntoDoc, Diagnostic> {
    let toks = tokenize(file, text)?;
    let mut declared = BTreeSet::new();
    let mut tbox: Vec<(RawTbox, SourceSpan)> = Vec::new();
    let mut abox: Vec<(RawAbox, SourceSpan)> = Vec::new();

    for line in toks.split_inclusive(|t| matches!(t.tok, Tok::Newline | Tok::Eof)) {
        if line.len() == 1 {
            continue;
        }
        let mut line = line.to_vec();
        let last = line.last().unwrap().span.clone();
        if line.last().unwrap().tok == Tok::Eof {
            line.pop();
            line.push(Token { tok: Tok::Newline, span: last.clone() });
        }
        line.push(Token { tok: Tok::Eof, span: last });
        let has_inclusion = line.iter().any(|t| t.tok == Tok::Sym("<="));
        let mut cur = Cursor::new(line, false);
        let start = cur.span().clone();
        if cur.at_keyword("role") && matches!(cur.peek2(), Tok::Ident(_)) {
            cur.bump();
            loop {
                let (r, _) = cur.expect_ident("a role name")?;
                declared.insert(name(&r));
                if !cur.eat_sym(",") {
                    break;
                }
            }
        } else if has_inclusion {
            let t = tbox_line(&mut cur)?;
            tbox.push((t, start.to(cur.prev_span())));
        } else {
            let a = abox_line(&mut cur)?;
            abox.push((a, start.to(cur.prev_span())));
        }
        if *cur.peek() != Tok::Newline {
            return Err(cur.unexpected("end of line"));
        }
    }
    resolve(declared, tbox, abox)
}

fn infer_roles(declared: &BTreeSet<Name>, tbox: &[(RawTbox, SourceSpan)], abox: &[(RawAbox, SourceSpan)]) -> BTreeSet<String> {
    let mut roles: BTreeSet<String> = declared.iter().map(|r| r.to_string()).collect();
    for (t, _) in tbox {
        match t {
            RawTbox::Exists { role, .. } => {
                roles.insert(role.id.0.clone());
            }
            RawTbox::Names { lhs, rhs, .. } => {
                for r in lhs.iter().chain([rhs]) {
                    if r.inverse {
                        roles.insert(r.id.0.clone());
                    }
                }
            }
        }
    }
    for (a, _) in abox {
        if let RawAbox::Pred { pred, args, .. } = a {
            if args.len() == 2 {
                roles.insert(pred.0.clone());
            }
        }
    }
    loop {
        let mut changed = false;
        for (t, _) in tbox {
            if let RawTbox::Names { lhs, rhs, .. } = t {
                if lhs.len() == 1 && (roles.contains(&lhs[0].id.0) || roles.contains(&rhs.id.0)) {
                    changed |= roles.insert(lhs[0].id.0.clone());
                    changed |= roles.insert(rhs.id.0.clone());
                }
            }
        }
        if !changed {
            return roles;
        }
    }
}

fn resolve(
    declared: BTreeSet<Name>,
    tbox: Vec<(RawTbox, SourceSpan)>,
    abox: Vec<(RawAbox, SourceSpan)>,
) -> Result<OntoDoc, Diagnostic> {
    let roles = infer_roles(&declared, &tbox, &abox);
    let concept = |r: &RoleRef| -> Result<Name, Diagnostic> {
        if roles.contains(&r.id.0) {
            return Err(Diagnostic::at(&r.id.1, format!("`{}` is a role but is used as a concept", r.id.0)));
        }
        if r.inverse {
            return Err(Diagnostic::at(&r.id.1, format!("concept `{}` cannot be inverted", r.id.0)));
        }
        Ok(name(&r.id.0))
    };
    let role = |r: &RoleRef| RoleExpr::new(&r.id.0, r.inverse);

    let mut o = Ontology::default();
    let mut tbox_spans = Vec::new();
    for (t, span) in tbox {
        let ax = match t {
            RawTbox::Exists { role: r, filler, rhs, negated } => {
                let lhs = match filler {
                    Some(a) => ConceptExpr::Some(role(&r), concept(&RoleRef { id: a, inverse: false })?),
                    None => ConceptExpr::SomeT(role(&r)),
                };
                Axiom::Concept(ConceptInclusion::new(lhs, &concept(&rhs)?, negated))
            }
            RawTbox::Names { lhs, rhs, negated } if lhs.len() == 1 && roles.contains(&lhs[0].id.0) => {
                Axiom::Role(RoleInclusion { lhs: role(&lhs[0]), rhs: role(&rhs), rhs_negated: negated })
            }
            RawTbox::Names { lhs, rhs, negated } => {
                let body = lhs.iter().map(concept).collect::<Result<Vec<_>, _>>()?;
                Axiom::Concept(ConceptInclusion::new(ConceptExpr::Conj(body), &concept(&rhs)?, negated))
            }
        };
        o.tbox.push(ax);
        tbox_spans.push(span);
    }
    let mut abox_spans = Vec::new();
    for (a, span) in abox {
        let asn = match a {
            RawAbox::Pred { negated, pred, args } => match args.as_slice() {
                [x] => Assertion::Concept {
                    concept: concept(&RoleRef { id: pred, inverse: false })?,
                    ind: name(&x.0),
                    positive: !negated,
                },
                [x, y] => Assertion::Role { role: name(&pred.0), subject: name(&x.0), object: name(&y.0), positive: !negated },
                _ => unreachable!("arity checked while parsing"),
            },
            RawAbox::Eq { left, right, positive } => Assertion::Eq { left: name(&left.0), right: name(&right.0), positive },
        };
        o.abox.push(asn);
        abox_spans.push(span);
    }
    Ok(OntoDoc { ontology: o, declared_roles: declared, tbox_spans, abox_spans })
}

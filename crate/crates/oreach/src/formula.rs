//! Quantifier-free formulas: `&`, `|`, `!` (or `not`), `=`, `!=`,
//! parentheses, `true`, `false`. `!` binds tightest, then `&`, then `|`.
//!
//! A name is a variable or an individual depending on the caller's
//! resolver; predicates are concepts with one argument and roles with two.

use oreach_core::logic::{Atom, Formula, Literal, Term};

use crate::lexer::{tokenize, Cursor, Tok};
use crate::span::{Diagnostic, SourceSpan};

pub(crate) type Ident = (String, SourceSpan);

#[derive(Clone, Debug)]
pub(crate) enum RawAtom {
    Pred(Ident, Vec<Ident>),
    Eq(Ident, Ident),
}

#[derive(Clone, Debug)]
pub(crate) struct RawLit {
    pub positive: bool,
    pub atom: RawAtom,
    pub span: SourceSpan,
}

pub(crate) fn term(id: &Ident, is_var: &dyn Fn(&str) -> bool) -> Term {
    if is_var(&id.0) {
        Term::var(&id.0)
    } else {
        Term::ind(&id.0)
    }
}

impl RawLit {
    pub fn resolve(&self, is_var: &dyn Fn(&str) -> bool) -> Result<Literal, Diagnostic> {
        let atom = match &self.atom {
            RawAtom::Eq(a, b) => Atom::eq(term(a, is_var), term(b, is_var)),
            RawAtom::Pred(p, args) => match args.as_slice() {
                [a] => Atom::concept(&p.0, term(a, is_var)),
                [a, b] => Atom::role(&p.0, term(a, is_var), term(b, is_var)),
                _ => {
                    return Err(Diagnostic::at(
                        &p.1,
                        format!("`{}` has {} arguments; concepts take one and roles two", p.0, args.len()),
                    ))
                }
            },
        };
        Ok(Literal { atom, positive: self.positive })
    }
}

const RESERVED: &[&str] = &["true", "false", "not"];

fn name(cur: &mut Cursor, what: &str) -> Result<Ident, Diagnostic> {
    let id = cur.expect_ident(what)?;
    if RESERVED.contains(&id.0.as_str()) {
        return Err(Diagnostic::at(&id.1, format!("`{}` is reserved", id.0)));
    }
    Ok(id)
}

/// `P(t, ...)`, `s = t` or `s != t`, without a leading negation.
fn raw_atom(cur: &mut Cursor) -> Result<(bool, RawAtom, SourceSpan), Diagnostic> {
    let first = name(cur, "a predicate or a term")?;
    if cur.eat_sym("(") {
        let mut args = vec![name(cur, "a term")?];
        while cur.eat_sym(",") {
            args.push(name(cur, "a term")?);
        }
        let close = cur.expect_sym(")")?;
        let span = first.1.to(&close);
        return Ok((true, RawAtom::Pred(first, args), span));
    }
    let positive = if cur.eat_sym("=") {
        true
    } else if cur.eat_sym("!=") {
        false
    } else {
        return Err(cur.unexpected("`(`, `=` or `!=`"));
    };
    let second = name(cur, "a term")?;
    let span = first.1.to(&second.1);
    Ok((positive, RawAtom::Eq(first, second), span))
}

/// A literal: an atom, optionally preceded by `not` or `!`.
pub(crate) fn raw_literal(cur: &mut Cursor) -> Result<RawLit, Diagnostic> {
    let start = cur.span().clone();
    let negated = cur.eat_keyword("not") || cur.eat_sym("!");
    let (positive, atom, span) = raw_atom(cur)?;
    Ok(RawLit { positive: positive != negated, atom, span: start.to(&span) })
}

fn disjunction(cur: &mut Cursor, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    let mut parts = vec![conjunction(cur, is_var)?];
    while cur.eat_sym("|") {
        parts.push(conjunction(cur, is_var)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::or(parts) })
}

fn conjunction(cur: &mut Cursor, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    let mut parts = vec![unary(cur, is_var)?];
    while cur.eat_sym("&") {
        parts.push(unary(cur, is_var)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::and(parts) })
}

fn unary(cur: &mut Cursor, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    if cur.eat_sym("!") || cur.eat_keyword("not") {
        return Ok(Formula::negate(unary(cur, is_var)?));
    }
    if cur.eat_sym("(") {
        let f = disjunction(cur, is_var)?;
        cur.expect_sym(")")?;
        return Ok(f);
    }
    if cur.eat_keyword("true") {
        return Ok(Formula::True);
    }
    if cur.eat_keyword("false") {
        return Ok(Formula::False);
    }
    let (positive, atom, span) = raw_atom(cur)?;
    let lit = RawLit { positive, atom, span }.resolve(is_var)?;
    Ok(Formula::lit(lit))
}

pub(crate) fn formula(cur: &mut Cursor, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    disjunction(cur, is_var)
}

pub fn parse_formula_in(file: &str, text: &str, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    let mut cur = Cursor::new(tokenize(file, text)?, true);
    let f = formula(&mut cur, is_var)?;
    if *cur.peek() != Tok::Eof {
        return Err(cur.unexpected("an operator or end of input"));
    }
    Ok(f)
}

pub fn parse_formula(text: &str, is_var: &dyn Fn(&str) -> bool) -> Result<Formula, Diagnostic> {
    parse_formula_in("<formula>", text, is_var)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: &str) -> bool {
        n.starts_with('x')
    }

    #[test]
    fn precedence() {
        let f = parse_formula("A(x) | B(x) & !C(x)", &vars).unwrap();
        assert_eq!(f.to_string(), "A(x) | B(x) & !C(x)");
        match f {
            Formula::Or(ps) => assert!(matches!(ps[1], Formula::And(_))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn terms_are_resolved() {
        let f = parse_formula("x1 != a & P(a, x1)", &vars).unwrap();
        let want = Formula::and([
            Formula::negate(Formula::Atom(Atom::eq(Term::var("x1"), Term::ind("a")))),
            Formula::Atom(Atom::role("P", Term::ind("a"), Term::var("x1"))),
        ]);
        assert_eq!(f, want);
    }

    #[test]
    fn not_keyword_and_constants() {
        let f = parse_formula("not (A(x) | true)", &vars).unwrap();
        assert_eq!(f, Formula::False);
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_formula("A(x) & ", &vars).unwrap_err();
        assert_eq!(e.to_string(), "<formula>:1:8: expected a predicate or a term, found end of input");
        let e = parse_formula("R(x, y, z)", &vars).unwrap_err();
        assert!(e.to_string().contains("3 arguments"));
        let e = parse_formula("A(x) B(x)", &vars).unwrap_err();
        assert!(e.to_string().starts_with("<formula>:1:6"));
    }
}

//! Function-free first-order syntax: terms, atoms, literals, constraints,
//! clauses and quantifier-free formulas over unary (concept) and binary
//! (role) predicates with equality.
//!
//! Terms are flat. The only function symbols the verifier ever meets are
//! case-defined updates, and those are compiled away in [`crate::sas`]
//! before any reasoning happens.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Not;

/// Shared, immutable symbol name.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Concept,
    Role,
    Individual,
    Variable,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: Name,
    pub kind: SymbolKind,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Name),
    Ind(Name),
}

impl Term {
    pub fn var(s: &str) -> Self {
        Term::Var(name(s))
    }

    pub fn ind(s: &str) -> Self {
        Term::Ind(name(s))
    }

    pub fn name(&self) -> &Name {
        match self {
            Term::Var(n) | Term::Ind(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn substitute(&self, subst: &Substitution) -> Term {
        match self {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Ind(_) => self.clone(),
        }
    }
}

/// Simultaneous substitution of variables by terms.
pub type Substitution = BTreeMap<Name, Term>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Concept(Name, Term),
    Role(Name, Term, Term),
    /// Always stored with the smaller term first; use [`Atom::eq`].
    Eq(Term, Term),
}

impl Atom {
    pub fn concept(c: &str, t: Term) -> Self {
        Atom::Concept(name(c), t)
    }

    pub fn role(r: &str, s: Term, t: Term) -> Self {
        Atom::Role(name(r), s, t)
    }

    pub fn eq(s: Term, t: Term) -> Self {
        if s <= t {
            Atom::Eq(s, t)
        } else {
            Atom::Eq(t, s)
        }
    }

    /// `t = t`
    pub fn is_reflexive_eq(&self) -> bool {
        matches!(self, Atom::Eq(s, t) if s == t)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        let (a, b) = match self {
            Atom::Concept(_, t) => (t, None),
            Atom::Role(_, s, t) | Atom::Eq(s, t) => (s, Some(t)),
        };
        core::iter::once(a).chain(b)
    }

    pub fn substitute(&self, subst: &Substitution) -> Atom {
        match self {
            Atom::Concept(c, t) => Atom::Concept(c.clone(), t.substitute(subst)),
            Atom::Role(r, s, t) => Atom::Role(r.clone(), s.substitute(subst), t.substitute(subst)),
            Atom::Eq(s, t) => Atom::eq(s.substitute(subst), t.substitute(subst)),
        }
    }

    /// Rename every term through `f`, renormalising equalities.
    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Concept(c, t) => Atom::Concept(c.clone(), f(t)),
            Atom::Role(r, s, t) => {
                let s = f(s);
                Atom::Role(r.clone(), s, f(t))
            }
            Atom::Eq(s, t) => {
                let s = f(s);
                Atom::eq(s, f(t))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, positive: false }
    }

    pub fn substitute(&self, subst: &Substitution) -> Literal {
        Literal { atom: self.atom.substitute(subst), positive: self.positive }
    }

    /// `t = t` (true) or `t != t` (false); `None` otherwise.
    pub fn trivial_value(&self) -> Option<bool> {
        self.atom.is_reflexive_eq().then_some(self.positive)
    }
}

impl Not for Literal {
    type Output = Literal;
    fn not(self) -> Literal {
        Literal { atom: self.atom, positive: !self.positive }
    }
}

impl Not for &Literal {
    type Output = Literal;
    fn not(self) -> Literal {
        Literal { atom: self.atom.clone(), positive: !self.positive }
    }
}

/// A conjunction of literals. Insertion order is kept, duplicates are not.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    lits: Vec<Literal>,
}

impl Constraint {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut c = Constraint::default();
        for l in lits {
            c.push(l);
        }
        c
    }

    pub fn push(&mut self, lit: Literal) {
        if !self.lits.contains(&lit) {
            self.lits.push(lit);
        }
    }

    pub fn extend(&mut self, lits: impl IntoIterator<Item = Literal>) {
        for l in lits {
            self.push(l);
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Contains some `L` together with `¬L`, or a literal `t != t`.
    pub fn is_contradictory(&self) -> bool {
        self.lits.iter().any(|l| l.trivial_value() == Some(false))
            || self.lits.iter().any(|l| !l.positive && self.lits.contains(&!l))
    }

    pub fn substitute(&self, subst: &Substitution) -> Constraint {
        Constraint::new(self.lits.iter().map(|l| l.substitute(subst)))
    }

    pub fn and(&self, other: &Constraint) -> Constraint {
        let mut c = self.clone();
        c.extend(other.lits.iter().cloned());
        c
    }

    /// Literal set inclusion.
    pub fn is_subset_of(&self, other: &Constraint) -> bool {
        self.lits.iter().all(|l| other.lits.contains(l))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and(self.lits.iter().cloned().map(Formula::lit))
    }
}

impl FromIterator<Literal> for Constraint {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Constraint::new(iter)
    }
}

/// A disjunction of literals, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        Clause { lits }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.lits.iter().any(|l| l.trivial_value() == Some(true))
            || self.lits.iter().any(|l| l.positive && self.lits.contains(&!l))
    }

    /// The constraint `¬χ`.
    pub fn negation(&self) -> Constraint {
        Constraint::new(self.lits.iter().map(|l| !l))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or(self.lits.iter().cloned().map(Formula::lit))
    }
}

/// Quantifier-free formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn lit(l: Literal) -> Formula {
        if l.positive {
            Formula::Atom(l.atom)
        } else {
            Formula::Not(Box::new(Formula::Atom(l.atom)))
        }
    }

    /// Flattening conjunction; `true` units vanish, a `false` absorbs.
    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn negate(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    /// Disjunction of constraints.
    pub fn from_cubes<'a>(cubes: impl IntoIterator<Item = &'a Constraint>) -> Formula {
        Formula::or(cubes.into_iter().map(Constraint::to_formula))
    }

    pub fn substitute(&self, subst: &Substitution) -> Formula {
        self.map_atoms(&mut |a| a.substitute(subst))
    }

    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Atom) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(f(a)),
            Formula::Not(inner) => Formula::Not(Box::new(inner.map_atoms(f))),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.map_atoms(f)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.map_atoms(f)).collect()),
        }
    }

    /// Evaluate under a truth assignment to atoms.
    pub fn eval(&self, val: &mut impl FnMut(&Atom) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => val(a),
            Formula::Not(inner) => !inner.eval(val),
            Formula::And(ps) => ps.iter().all(|p| p.eval(val)),
            Formula::Or(ps) => ps.iter().any(|p| p.eval(val)),
        }
    }

    /// Fallible evaluation, for semantic checkers that may miss symbols.
    pub fn try_eval<E>(&self, val: &mut impl FnMut(&Atom) -> Result<bool, E>) -> Result<bool, E> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => val(a)?,
            Formula::Not(inner) => !inner.try_eval(val)?,
            Formula::And(ps) => {
                for p in ps {
                    if !p.try_eval(val)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(ps) => {
                for p in ps {
                    if p.try_eval(val)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }

    /// Top-level conjuncts (a non-conjunction is its own single conjunct).
    pub fn conjuncts(&self) -> &[Formula] {
        match self {
            Formula::And(ps) => ps,
            Formula::True => &[],
            other => core::slice::from_ref(other),
        }
    }

    /// `Some(literal)` when the formula is an atom or a negated atom.
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Formula::Atom(a) => Some(Literal::pos(a.clone())),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => Some(Literal::neg(a.clone())),
                _ => None,
            },
            _ => None,
        }
    }
}

/// Syntax objects whose atoms can be visited.
pub trait Syntax {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom));
}

impl Syntax for Atom {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        f(self)
    }
}

impl Syntax for Literal {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        f(&self.atom)
    }
}

impl Syntax for Constraint {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        self.lits.iter().for_each(|l| f(&l.atom))
    }
}

impl Syntax for Clause {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        self.lits.iter().for_each(|l| f(&l.atom))
    }
}

impl Syntax for Formula {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(inner) => inner.visit_atoms(f),
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.visit_atoms(f)),
        }
    }
}

impl<T: Syntax> Syntax for [T] {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        self.iter().for_each(|x| x.visit_atoms(f))
    }
}

impl<T: Syntax> Syntax for Vec<T> {
    fn visit_atoms(&self, f: &mut dyn FnMut(&Atom)) {
        self.as_slice().visit_atoms(f)
    }
}

pub fn free_vars<S: Syntax + ?Sized>(s: &S) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    s.visit_atoms(&mut |a| {
        for t in a.terms() {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        }
    });
    out
}

pub fn atoms_of<S: Syntax + ?Sized>(s: &S) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    s.visit_atoms(&mut |a| {
        out.insert(a.clone());
    });
    out
}

/// Concepts, roles and individual names occurring in a syntax object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<Name>,
    pub roles: BTreeSet<Name>,
    pub individuals: BTreeSet<Name>,
}

impl Signature {
    pub fn of<S: Syntax + ?Sized>(s: &S) -> Signature {
        let mut sig = Signature::default();
        s.visit_atoms(&mut |a| sig.add_atom(a));
        sig
    }

    pub fn add_atom(&mut self, a: &Atom) {
        match a {
            Atom::Concept(c, _) => {
                self.concepts.insert(c.clone());
            }
            Atom::Role(r, _, _) => {
                self.roles.insert(r.clone());
            }
            Atom::Eq(_, _) => {}
        }
        for t in a.terms() {
            if let Term::Ind(i) = t {
                self.individuals.insert(i.clone());
            }
        }
    }

    pub fn union(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts)
            && self.roles.is_subset(&other.roles)
            && self.individuals.is_subset(&other.individuals)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for (set, kind) in [
            (&self.concepts, SymbolKind::Concept),
            (&self.roles, SymbolKind::Role),
            (&self.individuals, SymbolKind::Individual),
        ] {
            out.extend(set.iter().map(|n| Symbol { name: n.clone(), kind }));
        }
        out
    }

    /// Names used with more than one kind.
    pub fn kind_clashes(&self) -> Vec<Name> {
        let mut out: Vec<Name> = Vec::new();
        for n in &self.concepts {
            if self.roles.contains(n) || self.individuals.contains(n) {
                out.push(n.clone());
            }
        }
        for n in &self.roles {
            if self.individuals.contains(n) && !out.contains(n) {
                out.push(n.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicError {
    /// DNF conversion produced more literals than the budget allows.
    DnfBudget { budget: usize },
}

impl fmt::Display for LogicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicError::DnfBudget { budget } => {
                write!(f, "DNF conversion exceeded the budget of {budget} literals")
            }
        }
    }
}

pub const DEFAULT_DNF_BUDGET: usize = 1_000_000;

/// Disjunctive normal form. Constraints holding complementary literals are
/// pruned, so `false` and `A ∧ ¬A` both yield the empty list.
pub fn to_dnf(f: &Formula, budget: usize) -> Result<Vec<Constraint>, LogicError> {
    let mut used = 0usize;
    dnf_rec(f, true, budget, &mut used)
}

fn dnf_rec(
    f: &Formula,
    positive: bool,
    budget: usize,
    used: &mut usize,
) -> Result<Vec<Constraint>, LogicError> {
    let out = match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => alloc::vec![Constraint::default()],
        (Formula::True, false) | (Formula::False, true) => Vec::new(),
        (Formula::Atom(a), pol) => {
            *used += 1;
            alloc::vec![Constraint::new([Literal { atom: a.clone(), positive: pol }])]
        }
        (Formula::Not(inner), pol) => dnf_rec(inner, !pol, budget, used)?,
        (Formula::And(ps), true) | (Formula::Or(ps), false) => {
            let mut acc = alloc::vec![Constraint::default()];
            for p in ps {
                let part = dnf_rec(p, positive, budget, used)?;
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        let c = a.and(b);
                        if c.is_contradictory() {
                            continue;
                        }
                        *used += c.len();
                        if *used > budget {
                            return Err(LogicError::DnfBudget { budget });
                        }
                        next.push(c);
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        (Formula::Or(ps), true) | (Formula::And(ps), false) => {
            let mut acc = Vec::new();
            for p in ps {
                for c in dnf_rec(p, positive, budget, used)? {
                    if !acc.contains(&c) {
                        acc.push(c);
                    }
                }
            }
            acc
        }
    };
    if *used > budget {
        return Err(LogicError::DnfBudget { budget });
    }
    Ok(out.into_iter().filter(|c| !c.is_contradictory()).collect())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Concept(c, t) => write!(f, "{c}({t})"),
            Atom::Role(r, s, t) => write!(f, "{r}({s},{t})"),
            Atom::Eq(s, t) => write!(f, "{s} = {t}"),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.atom, self.positive) {
            (a, true) => write!(f, "{a}"),
            (Atom::Eq(s, t), false) => write!(f, "{s} != {t}"),
            (a, false) => write!(f, "!{a}"),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("true");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("false");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Formula {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0: or-context, 1: and-context, 2: operand of `!`
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => {
                if prec == 2 && matches!(a, Atom::Eq(..)) {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(Atom::Eq(s, t)) => {
                    if prec == 2 {
                        write!(f, "({s} != {t})")
                    } else {
                        write!(f, "{s} != {t}")
                    }
                }
                other => {
                    f.write_str("!")?;
                    other.fmt_prec(f, 2)
                }
            },
            Formula::And(ps) => {
                let wrap = prec > 1;
                if wrap {
                    f.write_str("(")?;
                }
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    p.fmt_prec(f, 1)?;
                }
                if wrap {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Or(ps) => {
                let wrap = prec > 0;
                if wrap {
                    f.write_str("(")?;
                }
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    p.fmt_prec(f, 0)?;
                }
                if wrap {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Comma-separated rendering helper.
pub fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(sep);
        }
        let _ = write!(s, "{it}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a(c: &str, t: &str) -> Formula {
        Formula::Atom(Atom::concept(c, Term::var(t)))
    }

    #[test]
    fn substitute_concept_atom() {
        let f = a("A", "x");
        let mut s = Substitution::new();
        s.insert(name("x"), Term::ind("a"));
        assert_eq!(f.substitute(&s), Formula::Atom(Atom::concept("A", Term::ind("a"))));
    }

    #[test]
    fn substitute_equality_and_role() {
        let f = Formula::and([
            Formula::Atom(Atom::eq(Term::var("x"), Term::var("y"))),
            Formula::Atom(Atom::role("P", Term::var("x"), Term::var("y"))),
        ]);
        let mut s = Substitution::new();
        s.insert(name("x"), Term::var("y"));
        let expected = Formula::and([
            Formula::Atom(Atom::eq(Term::var("y"), Term::var("y"))),
            Formula::Atom(Atom::role("P", Term::var("y"), Term::var("y"))),
        ]);
        assert_eq!(f.substitute(&s), expected);
    }

    #[test]
    fn unmapped_variables_pass_through() {
        let f = a("A", "z");
        let mut s = Substitution::new();
        s.insert(name("x"), Term::ind("a"));
        assert_eq!(f.substitute(&s), f);
    }

    #[test]
    fn dnf_distributes() {
        let f = Formula::and([Formula::or([a("A", "x"), a("B", "x")]), a("C", "x")]);
        let d = to_dnf(&f, DEFAULT_DNF_BUDGET).unwrap();
        let lit = |c: &str| Literal::pos(Atom::concept(c, Term::var("x")));
        assert_eq!(
            d,
            vec![Constraint::new([lit("A"), lit("C")]), Constraint::new([lit("B"), lit("C")])]
        );
    }

    #[test]
    fn dnf_prunes_contradictions() {
        let f = Formula::and([a("A", "x"), Formula::negate(a("A", "x"))]);
        assert!(to_dnf(&f, DEFAULT_DNF_BUDGET).unwrap().is_empty());
        assert!(to_dnf(&Formula::False, DEFAULT_DNF_BUDGET).unwrap().is_empty());
        assert_eq!(to_dnf(&Formula::True, DEFAULT_DNF_BUDGET).unwrap(), vec![Constraint::default()]);
    }

    #[test]
    fn dnf_budget_is_enforced() {
        // (A1|B1) & ... & (A12|B12) has 4096 disjuncts
        let f = Formula::and((0..12).map(|i| {
            let x = alloc::format!("x{i}");
            Formula::or([a("A", &x), a("B", &x)])
        }));
        assert_eq!(to_dnf(&f, 1000), Err(LogicError::DnfBudget { budget: 1000 }));
        assert_eq!(to_dnf(&f, DEFAULT_DNF_BUDGET).unwrap().len(), 4096);
    }

    #[test]
    fn free_vars_and_signature() {
        let f = Formula::and([
            a("A", "x"),
            Formula::Atom(Atom::role("P", Term::ind("a"), Term::var("y"))),
        ]);
        let fv: Vec<_> = free_vars(&f).into_iter().collect();
        assert_eq!(fv, vec![name("x"), name("y")]);
        let sig = Signature::of(&Formula::Atom(Atom::concept("A", Term::ind("a"))));
        assert_eq!(sig.concepts.len(), 1);
        assert!(sig.roles.is_empty());
        assert!(sig.individuals.contains("a"));
    }

    #[test]
    fn equality_is_symmetric_by_construction() {
        assert_eq!(
            Atom::eq(Term::var("x"), Term::ind("a")),
            Atom::eq(Term::ind("a"), Term::var("x"))
        );
    }

    #[test]
    fn clause_tautology_and_negation() {
        let l = Literal::pos(Atom::concept("A", Term::var("x")));
        let c = Clause::new([l.clone(), !l.clone()]);
        assert!(c.is_tautology());
        let n = Clause::new([l.clone()]).negation();
        assert_eq!(n.literals(), &[!l]);
    }

    #[test]
    fn display_round_shape() {
        let f = Formula::and([
            a("User", "w"),
            Formula::negate(a("EligibleUser", "w")),
            Formula::or([a("A", "x"), Formula::negate(Formula::Atom(Atom::eq(Term::var("x"), Term::ind("u"))))]),
        ]);
        assert_eq!(alloc::format!("{f}"), "User(w) & !EligibleUser(w) & (A(x) | x != u)");
    }
}

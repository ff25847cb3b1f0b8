//! Seeded generators for small random instances, shared by the property
//! tests. Everything here is deterministic given the seed.

#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeSet;

use oreach_core::logic::{name, Atom, Constraint, Formula, Literal, Name, Term};
use oreach_core::ontology::{
    Assertion, Axiom, ConceptExpr, ConceptInclusion, Ontology, RoleExpr, RoleInclusion, UniversalTheory,
};
use oreach_core::oracle::{eval_literal, Assignment, Elem, FiniteInterpretation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Vocab {
    pub concepts: Vec<Name>,
    pub roles: Vec<Name>,
    pub constants: Vec<Name>,
}

impl Vocab {
    pub fn random(r: &mut ChaCha8Rng, max_concepts: usize, max_roles: usize, max_constants: usize) -> Self {
        let nc = r.gen_range(1..=max_concepts);
        let nr = r.gen_range(0..=max_roles);
        let nk = r.gen_range(0..=max_constants);
        Vocab {
            concepts: (0..nc).map(|i| name(&format!("C{i}"))).collect(),
            roles: (0..nr).map(|i| name(&format!("r{i}"))).collect(),
            constants: (0..nk).map(|i| name(&format!("k{i}"))).collect(),
        }
    }
}

fn pick<'a, T>(r: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(r).expect("non-empty")
}

fn role_expr(r: &mut ChaCha8Rng, v: &Vocab) -> RoleExpr {
    RoleExpr { role: pick(r, &v.roles).clone(), inverse: r.gen_bool(0.5) }
}

/// A random ontology over `v` with up to `max_tbox` inclusions and
/// `max_abox` assertions. Negated right-hand sides are rarer so that most
/// ontologies stay satisfiable.
pub fn ontology(r: &mut ChaCha8Rng, v: &Vocab, max_tbox: usize, max_abox: usize) -> Ontology {
    let mut o = Ontology::default();
    for _ in 0..r.gen_range(0..=max_tbox) {
        if !v.roles.is_empty() && r.gen_bool(0.15) {
            o.tbox.push(Axiom::Role(RoleInclusion {
                lhs: role_expr(r, v),
                rhs: role_expr(r, v),
                rhs_negated: r.gen_bool(0.3),
            }));
            continue;
        }
        let lhs = match r.gen_range(0..if v.roles.is_empty() { 1 } else { 3 }) {
            0 => {
                let k = r.gen_range(1..=2.min(v.concepts.len()));
                ConceptExpr::Conj(v.concepts.choose_multiple(r, k).cloned().collect())
            }
            1 => ConceptExpr::SomeT(role_expr(r, v)),
            _ => ConceptExpr::Some(role_expr(r, v), pick(r, &v.concepts).clone()),
        };
        let rhs = pick(r, &v.concepts).clone();
        o.tbox.push(Axiom::Concept(ConceptInclusion::new(lhs, &rhs, r.gen_bool(0.25))));
    }
    if !v.constants.is_empty() {
        for _ in 0..r.gen_range(0..=max_abox) {
            let a = pick(r, &v.constants).clone();
            let b = pick(r, &v.constants).clone();
            let positive = r.gen_bool(0.7);
            let asn = match r.gen_range(0..3) {
                0 | 1 if !v.roles.is_empty() && r.gen_bool(0.3) => {
                    Assertion::Role { role: pick(r, &v.roles).clone(), subject: a, object: b, positive }
                }
                0 | 1 => Assertion::Concept { concept: pick(r, &v.concepts).clone(), ind: a, positive },
                _ => Assertion::Eq { left: a, right: b, positive },
            };
            o.push_assertion(asn);
        }
    }
    o
}

pub fn literal(r: &mut ChaCha8Rng, v: &Vocab, terms: &[Term]) -> Literal {
    let atom = match r.gen_range(0..10) {
        0..=4 => Atom::Concept(pick(r, &v.concepts).clone(), pick(r, terms).clone()),
        5..=7 if !v.roles.is_empty() => {
            Atom::Role(pick(r, &v.roles).clone(), pick(r, terms).clone(), pick(r, terms).clone())
        }
        _ => Atom::eq(pick(r, terms).clone(), pick(r, terms).clone()),
    };
    Literal { atom, positive: r.gen_bool(0.6) }
}

pub fn constraint(r: &mut ChaCha8Rng, v: &Vocab, terms: &[Term], max_len: usize) -> Constraint {
    let n = r.gen_range(1..=max_len);
    Constraint::new((0..n).map(|_| literal(r, v, terms)))
}

pub fn formula(r: &mut ChaCha8Rng, v: &Vocab, terms: &[Term], depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.35) {
        return Formula::lit(literal(r, v, terms));
    }
    let k = r.gen_range(2..=3);
    let parts: Vec<Formula> = (0..k).map(|_| formula(r, v, terms, depth - 1)).collect();
    match r.gen_range(0..5) {
        0..=1 => Formula::and(parts),
        2..=3 => Formula::or(parts),
        _ => Formula::negate(Formula::and(parts)),
    }
}

pub fn vars(names: &[&str]) -> Vec<Term> {
    names.iter().map(|x| Term::var(x)).collect()
}

pub fn with_constants(mut terms: Vec<Term>, v: &Vocab) -> Vec<Term> {
    terms.extend(v.constants.iter().cloned().map(Term::Ind));
    terms
}

/// Close `i` under the Horn clauses of `t` by adding head atoms. Returns
/// `false` if a purely negative instance or a negative ground literal is
/// violated.
pub fn horn_close(i: &mut FiniteInterpretation, t: &UniversalTheory) -> bool {
    let x = Term::var("x");
    let y = Term::var("y");
    loop {
        let mut changed = false;
        for l in &t.ground {
            if eval_literal(i, &Assignment::new(), l).unwrap() {
                continue;
            }
            if !l.positive || matches!(l.atom, Atom::Eq(..)) {
                return false;
            }
            add_atom(i, &Assignment::new(), &l.atom);
            changed = true;
        }
        let dom = i.domain.clone();
        for c in &t.clauses {
            for &a in &dom {
                for &b in &dom {
                    if c.arity() == 1 && b != a {
                        continue;
                    }
                    let env: Assignment = [(name("x"), a), (name("y"), b)].into_iter().collect();
                    let lits = c.instantiate(&x, &y);
                    if lits.iter().any(|l| eval_literal(i, &env, l).unwrap()) {
                        continue;
                    }
                    match lits.iter().find(|l| l.positive) {
                        Some(l) => {
                            add_atom(i, &env, &l.atom);
                            changed = true;
                        }
                        None => return false,
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn add_atom(i: &mut FiniteInterpretation, env: &Assignment, a: &Atom) {
    match a {
        Atom::Concept(c, t) => {
            let e = i.elem(t, env).unwrap();
            i.concepts.entry(c.clone()).or_default().insert(e);
        }
        Atom::Role(p, s, t) => {
            let pair = (i.elem(s, env).unwrap(), i.elem(t, env).unwrap());
            i.roles.entry(p.clone()).or_default().insert(pair);
        }
        Atom::Eq(..) => unreachable!("equalities are never derived"),
    }
}

/// Random facts over `elems` (a subset of the domain of `i`), each atom
/// with probability `p`; role facts need at least one endpoint in `elems`.
pub fn sprinkle(r: &mut ChaCha8Rng, i: &mut FiniteInterpretation, elems: &[Elem], concepts: &[Name], roles: &[Name], p: f64) {
    let fresh: BTreeSet<Elem> = elems.iter().copied().collect();
    for c in concepts {
        for &e in elems {
            if r.gen_bool(p) {
                i.concepts.entry(c.clone()).or_default().insert(e);
            }
        }
    }
    let dom = i.domain.clone();
    for ro in roles {
        for &a in &dom {
            for &b in &dom {
                if (fresh.contains(&a) || fresh.contains(&b)) && r.gen_bool(p / 2.0) {
                    i.roles.entry(ro.clone()).or_default().insert((a, b));
                }
            }
        }
    }
}

//! Randomized checks against the oracle. Each returns the number of cases
//! run and a description of every failure, so callers can either assert
//! or report.

use std::collections::{BTreeMap, BTreeSet};

use oreach_core::cover::eliminate;
use oreach_core::ground::{sat_qff, GroundSession, GroundingDomain};
use oreach_core::logic::{free_vars, name, Atom, Constraint, Formula, Literal, Name, Signature, Term};
use oreach_core::ontology::{hiring_ontology, standard_translate, Ontology, UniversalTheory};
use oreach_core::oracle::{
    amalgamate, check_model, check_model_dl, eval_formula, for_each_model, is_embedding, is_substructure,
    sat_by_enumeration, sat_by_least_model, step_successors, Assignment, Elem, FiniteInterpretation, Morphism,
};
use oreach_core::sas::{
    eliminate_case_functions, ArtifactSystem, CaseFunction, OPartition, Transition, Update,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{constraint, formula, horn_close, literal, ontology, rng, sprinkle, vars, with_constants, Vocab};

#[derive(Debug, Default)]
pub struct Outcome {
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        } else if self.failures.len() == 20 {
            self.failures.push(String::from("..."));
        }
    }
}

/// Direct DL semantics against the translated clauses: every model of the
/// translation with at most `max_n` elements, and every interpretation one
/// atom away from such a model.
pub fn faithfulness(o: &Ontology, max_n: usize) -> Outcome {
    let mut out = Outcome::default();
    let t = standard_translate(o).expect("valid ontology");
    let sig = o.signature();
    let constants: Vec<Name> = sig.individuals.iter().cloned().collect();
    let mut flips = 0usize;
    for n in 1..=max_n {
        for_each_model(&t, &sig, n, &constants, u64::MAX, &mut |i| {
            out.cases += 1;
            let fo = check_model(i, &t).unwrap();
            let dl = check_model_dl(i, o).unwrap();
            if !fo || !dl {
                out.fail(format!("enumerated model rejected (fo={fo}, dl={dl}): {i:?}"));
            }
            for j in neighbours(i) {
                flips += 1;
                let fo = check_model(&j, &t).unwrap();
                let dl = check_model_dl(&j, o).unwrap();
                if fo != dl {
                    out.fail(format!("semantics differ (fo={fo}, dl={dl}) on {j:?}"));
                }
            }
            true
        })
        .unwrap();
    }
    out.notes.push(format!("{} models, {flips} one-atom variants", out.cases));
    out
}

fn neighbours(i: &FiniteInterpretation) -> Vec<FiniteInterpretation> {
    let mut out = Vec::new();
    for c in i.concepts.keys() {
        for &e in &i.domain {
            let mut j = i.clone();
            let ext = j.concepts.get_mut(c).unwrap();
            if !ext.remove(&e) {
                ext.insert(e);
            }
            out.push(j);
        }
    }
    for r in i.roles.keys() {
        for &a in &i.domain {
            for &b in &i.domain {
                let mut j = i.clone();
                let ext = j.roles.get_mut(r).unwrap();
                if !ext.remove(&(a, b)) {
                    ext.insert((a, b));
                }
                out.push(j);
            }
        }
    }
    out
}

/// `sat_qff` against the least-model oracle, and against brute-force
/// enumeration where the search space is small enough.
pub fn sat_exactness(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut r = rng(seed);
    let mut enumerated = 0;
    let mut sat = 0;
    for case in 0..count {
        let v = Vocab::random(&mut r, 3, 1, 2);
        let o = ontology(&mut r, &v, 4, 3);
        let t = standard_translate(&o).unwrap();
        let nv = r.gen_range(1..=3);
        let terms = with_constants(vars(&["x", "y", "z"][..nv]), &v);
        let phi = formula(&mut r, &v, &terms, 2);
        out.cases += 1;
        let engine = sat_qff(&t, &phi).unwrap();
        let oracle = sat_by_least_model(&t, &phi).unwrap().is_some();
        if engine.satisfiable != oracle {
            out.fail(format!("case {case}: engine {} oracle {oracle} for {phi} under {o:?}", engine.satisfiable));
            continue;
        }
        if let Some(w) = &engine.witness {
            sat += 1;
            let (mut i, env) = w.lift();
            let mut sig = t.signature();
            sig.union(&Signature::of(&phi));
            i.declare(&sig);
            let ok = check_model(&i, &t) == Ok(true) && eval_formula(&i, &env, &phi) == Ok(true);
            if !ok {
                out.fail(format!("case {case}: witness does not satisfy {phi}"));
            }
        }
        if let Ok(b) = sat_by_enumeration(&t, &phi, 1 << 16) {
            enumerated += 1;
            if b != oracle {
                out.fail(format!("case {case}: enumeration {b} least model {oracle} for {phi}"));
            }
        }
    }
    out.notes.push(format!("{sat} satisfiable, {enumerated} also brute-forced"));
    out
}

/// Soundness and clause-strength of quantifier elimination.
pub fn qe_contract(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut r = rng(seed);
    let mut clauses_checked = 0u64;
    let mut oracle_checked = 0u64;
    for case in 0..count {
        let v = Vocab::random(&mut r, 3, 1, 2);
        let o = ontology(&mut r, &v, 4, 2);
        let t = standard_translate(&o).unwrap();
        let nk = r.gen_range(1..=2);
        let nd = r.gen_range(1..=2);
        let kept = vars(&["x1", "x2"][..nk]);
        let dropped = vars(&["y1", "y2"][..nd]);
        let all: Vec<Term> = with_constants(kept.iter().chain(&dropped).cloned().collect(), &v);
        let delta = constraint(&mut r, &v, &all, 4);
        let drop: Vec<Name> = dropped.iter().map(|t| t.name().clone()).collect();
        out.cases += 1;
        let psi = match eliminate(&t, &delta, &drop) {
            Ok(res) => res.formula,
            Err(e) => {
                out.fail(format!("case {case}: {e}"));
                continue;
            }
        };
        if free_vars(&psi).iter().any(|x| drop.contains(x)) {
            out.fail(format!("case {case}: {psi} mentions an eliminated variable"));
            continue;
        }
        // soundness, by the oracle
        let gap = Formula::and([delta.to_formula(), Formula::negate(psi.clone())]);
        if sat_by_least_model(&t, &gap).unwrap().is_some() {
            out.fail(format!("case {case}: {delta} does not imply {psi}"));
            continue;
        }

        // strength: any conjunction of at most three target literals
        // consistent with ψ is consistent with δ
        let mut targets: Vec<Term> = kept.clone();
        targets.extend(t.individuals().into_iter().map(Term::Ind));
        targets.extend(Signature::of(&delta).individuals.into_iter().map(Term::Ind));
        targets.sort();
        targets.dedup();
        let lits = target_literals(&v, &targets);
        let mut sig = t.signature();
        sig.union(&Signature::of(&delta));
        for c in &v.concepts {
            sig.concepts.insert(c.clone());
        }
        for p in &v.roles {
            sig.roles.insert(p.clone());
        }
        let domain = GroundingDomain::new(targets.iter().chain(&dropped).cloned());
        let mut session = GroundSession::new(&t, domain, &sig);
        let psi_lit = session.encode(&psi).unwrap();
        let delta_lit = session.encode(&delta.to_formula()).unwrap();
        let lit_of: Vec<_> = lits.iter().map(|l| session.encode(&Formula::lit(l.clone())).unwrap()).collect();
        let mut bad = None;
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        while let Some((chosen, from)) = stack.pop() {
            for k in from..lits.len() {
                let mut c = chosen.clone();
                c.push(k);
                let cube = Formula::and(c.iter().map(|&i| Formula::lit(lits[i].clone())));
                let mut assumed: Vec<_> = c.iter().map(|&i| lit_of[i]).collect();
                clauses_checked += 1;
                assumed.push(psi_lit);
                if !session.is_sat_assuming(&assumed).unwrap() {
                    continue;
                }
                *assumed.last_mut().unwrap() = delta_lit;
                if !session.is_sat_assuming(&assumed).unwrap() {
                    bad = Some(cube);
                    break;
                }
                if c.len() == 1 {
                    // cross-check the grounding engine on the short cases
                    oracle_checked += 1;
                    let q = Formula::and([delta.to_formula(), cube.clone()]);
                    if sat_by_least_model(&t, &q).unwrap().is_none() {
                        bad = Some(cube);
                        break;
                    }
                }
                if c.len() < 3 {
                    stack.push((c, k + 1));
                }
            }
            if bad.is_some() {
                break;
            }
        }
        if let Some(cube) = bad {
            out.fail(format!("case {case}: {psi} is weaker than {delta} on ¬({cube}) under {o:?}"));
        }
    }
    out.notes.push(format!("{clauses_checked} target clauses, {oracle_checked} confirmed by the oracle"));
    out
}

fn target_literals(v: &Vocab, targets: &[Term]) -> Vec<Literal> {
    let mut atoms = Vec::new();
    for c in &v.concepts {
        for x in targets {
            atoms.push(Atom::Concept(c.clone(), x.clone()));
        }
    }
    for p in &v.roles {
        for x in targets {
            for y in targets {
                atoms.push(Atom::Role(p.clone(), x.clone(), y.clone()));
            }
        }
    }
    for (i, x) in targets.iter().enumerate() {
        for y in &targets[i + 1..] {
            atoms.push(Atom::eq(x.clone(), y.clone()));
        }
    }
    atoms.into_iter().flat_map(|a| [Literal::pos(a.clone()), Literal::neg(a)]).collect()
}

/// A random system with case-defined updates. Three-way partitions use a
/// concept the ontology forces empty.
pub fn case_system(r: &mut ChaCha8Rng) -> ArtifactSystem {
    let with_role = r.gen_bool(0.3);
    let mut v = Vocab::random(r, if with_role { 1 } else { 3 }, 0, 1);
    if with_role {
        v.roles.push(name("r0"));
    }
    if v.constants.is_empty() {
        v.constants.push(name("k0"));
    }
    let mut o = ontology(r, &v, 2, 0);
    let void = name("Void");
    o.tbox.push(oreach_core::ontology::Axiom::Concept(oreach_core::ontology::ConceptInclusion::new(
        oreach_core::ontology::ConceptExpr::atomic("Void"),
        "Void",
        true,
    )));
    let nv = r.gen_range(1..=2);
    let xs: Vec<Name> = ["x1", "x2"][..nv].iter().map(|x| name(x)).collect();
    let init = xs.iter().map(|x| (x.clone(), v.constants[0].clone())).collect();
    let mut budget = 2;
    let mut transitions = Vec::new();
    for j in 0..r.gen_range(1..=2) {
        let params: Vec<Name> = if r.gen_bool(0.5) { vec![name("y")] } else { Vec::new() };
        let mut terms: Vec<Term> = xs.iter().cloned().map(Term::Var).collect();
        terms.extend(params.iter().cloned().map(Term::Var));
        terms.extend(v.constants.iter().cloned().map(Term::Ind));
        let glen = r.gen_range(0..=2);
        let guard = Constraint::new((0..glen).map(|_| literal(r, &v, &terms)));
        let mut tau = Transition { name: name(&format!("t{j}")), params, guard, updates: Vec::new() };
        for x in &xs {
            let u = if budget > 0 && r.gen_bool(0.6) {
                budget -= 1;
                let l = literal(r, &v, &terms);
                let mut lits = vec![l.clone(), !l];
                if r.gen_bool(0.4) {
                    lits.push(Literal::pos(Atom::Concept(void.clone(), terms.choose(r).unwrap().clone())));
                }
                let branches = lits.iter().map(|_| terms.choose(r).unwrap().clone()).collect();
                Update::Case(CaseFunction {
                    symbol: name(&format!("F{j}{x}")),
                    partition: OPartition { literals: lits },
                    branches,
                })
            } else {
                Update::Term(terms.choose(r).unwrap().clone())
            };
            tau.updates.push((x.clone(), u));
        }
        transitions.push(tau);
    }
    ArtifactSystem { ontology: o, vars: xs, init, constants: v.constants.clone(), transitions }
}

fn step_relation(
    i: &FiniteInterpretation,
    s: &ArtifactSystem,
    state: &Assignment,
) -> BTreeSet<Assignment> {
    let mut out = BTreeSet::new();
    for tau in &s.transitions {
        out.extend(step_successors(i, s, tau, state).unwrap());
    }
    out
}

/// Step-relation equivalence of case-function elimination on every model
/// with at most three elements, and the quadratic size bound.
pub fn case_elimination(count: usize, seed: u64, size_constant: f64) -> Outcome {
    let mut out = Outcome::default();
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    let mut models = 0u64;
    let mut generated = 0;
    while out.cases < count {
        generated += 1;
        let s = case_system(&mut r);
        let diags = s.validate();
        if !diags.is_empty() {
            assert!(generated < 20 * count, "generator keeps producing invalid systems: {diags:?}");
            continue;
        }
        let Ok(t) = s.theory() else { continue };
        let flat = match eliminate_case_functions(&s) {
            Ok(f) => f,
            Err(e) => {
                out.fail(format!("system {generated}: {e}"));
                continue;
            }
        };
        out.cases += 1;
        let (n0, n1) = (s.size() as f64, flat.size() as f64);
        worst = worst.max(n1 / (n0 * n0));
        if n1 > size_constant * n0 * n0 {
            out.fail(format!("system {generated}: size {n1} exceeds {size_constant}·{n0}²"));
        }
        if flat.transitions.iter().any(|t| !t.is_case_free()) {
            out.fail(format!("system {generated}: case functions remain"));
        }
        let sig = s.signature();
        let constants: Vec<Name> = sig.individuals.iter().cloned().collect();
        let used = used_symbols(&s);
        let mut seen = BTreeSet::new();
        let mut mismatch = None;
        for n in 1..=3 {
            for_each_model(&t, &sig, n, &constants, u64::MAX, &mut |i| {
                models += 1;
                // steps only see the symbols the system mentions
                if !seen.insert(reduct(i, &used)) {
                    return true;
                }
                for_each_state(&s.vars, &i.domain, &mut |state| {
                    let a = step_relation(i, &s, state);
                    let b = step_relation(i, &flat, state);
                    if a != b {
                        mismatch = Some(format!("{state:?}: {a:?} vs {b:?} in {i:?}"));
                    }
                });
                mismatch.is_none()
            })
            .unwrap();
            if mismatch.is_some() {
                break;
            }
        }
        if let Some(m) = mismatch {
            out.fail(format!("system {generated}: step relations differ at {m}"));
        }
    }
    out.notes.push(format!("{models} models, largest size ratio {worst:.3}·n²"));
    out
}

fn used_symbols(s: &ArtifactSystem) -> Signature {
    let mut sig = Signature::default();
    for tau in &s.transitions {
        sig.union(&Signature::of(&tau.guard));
        for (_, u) in &tau.updates {
            if let Update::Case(cf) = u {
                sig.union(&Signature::of(&cf.partition.literals));
            }
        }
    }
    sig
}

type Reduct = (usize, BTreeMap<Name, Elem>, Vec<BTreeSet<Elem>>, Vec<BTreeSet<(Elem, Elem)>>);

fn reduct(i: &FiniteInterpretation, sig: &Signature) -> Reduct {
    (
        i.domain.len(),
        i.constants.clone(),
        sig.concepts.iter().map(|c| i.concepts.get(c).cloned().unwrap_or_default()).collect(),
        sig.roles.iter().map(|r| i.roles.get(r).cloned().unwrap_or_default()).collect(),
    )
}

fn for_each_state(vars: &[Name], dom: &[Elem], f: &mut dyn FnMut(&Assignment)) {
    let mut idx = vec![0usize; vars.len()];
    loop {
        let state: Assignment = vars.iter().cloned().zip(idx.iter().map(|&k| dom[k])).collect();
        f(&state);
        let mut p = 0;
        loop {
            if p == idx.len() {
                return;
            }
            idx[p] += 1;
            if idx[p] < dom.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// A model of `t` extending `base` by `extra` fresh elements starting at
/// `first`, in which `base` is a substructure. `None` after too many tries.
fn extend_model(
    r: &mut ChaCha8Rng,
    t: &UniversalTheory,
    sig: &Signature,
    base: &FiniteInterpretation,
    first: Elem,
    extra: usize,
) -> Option<FiniteInterpretation> {
    let concepts: Vec<Name> = sig.concepts.iter().cloned().collect();
    let roles: Vec<Name> = sig.roles.iter().cloned().collect();
    for attempt in 0..200 {
        let mut i = base.clone();
        let fresh: Vec<Elem> = (first..first + extra as Elem).collect();
        i.domain.extend(&fresh);
        let p = if attempt < 100 { 0.3 } else { 0.1 };
        sprinkle(r, &mut i, &fresh, &concepts, &roles, p);
        if horn_close(&mut i, t) && check_model(&i, t) == Ok(true) && is_substructure(base, &i) {
            return Some(i);
        }
    }
    None
}

/// Amalgams of random triples over the job-hiring ontology.
pub fn amalgamation(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut r = rng(seed);
    let o = hiring_ontology();
    let t = standard_translate(&o).unwrap();
    let sig = o.signature();
    let individuals: Vec<Name> = sig.individuals.iter().cloned().collect();
    let mut skipped = 0;
    while out.cases < count {
        // the common part: named elements, maybe one more
        let mut i0 = FiniteInterpretation::default();
        i0.declare(&sig);
        let mut cmap = BTreeMap::new();
        for (k, a) in individuals.iter().enumerate() {
            cmap.insert(a.clone(), k as Elem);
        }
        i0.constants = cmap;
        let extra = r.gen_range(0..=1);
        i0.domain = (0..(individuals.len() + extra) as Elem).collect();
        let all: Vec<Elem> = i0.domain.clone();
        let concepts: Vec<Name> = sig.concepts.iter().cloned().collect();
        let roles: Vec<Name> = sig.roles.iter().cloned().collect();
        sprinkle(&mut r, &mut i0, &all, &concepts, &roles, 0.05);
        if !horn_close(&mut i0, &t) || check_model(&i0, &t) != Ok(true) {
            skipped += 1;
            continue;
        }
        let n1 = r.gen_range(1..=2);
        let n2 = r.gen_range(1..=2);
        let (Some(i1), Some(i2)) = (extend_model(&mut r, &t, &sig, &i0, 10, n1), extend_model(&mut r, &t, &sig, &i0, 20, n2))
        else {
            skipped += 1;
            continue;
        };
        out.cases += 1;
        match amalgamate(&i1, &i2, &i0) {
            Ok(m) => {
                if check_model(&m, &t) != Ok(true) {
                    out.fail(format!("amalgam is not a model: {m:?}"));
                }
                if !is_embedding(&Morphism::inclusion(&i1, &m)) || !is_embedding(&Morphism::inclusion(&i2, &m)) {
                    out.fail(format!("inclusions are not embeddings: {m:?}"));
                }
            }
            Err(e) => out.fail(format!("{e}")),
        }
    }
    out.notes.push(format!("{skipped} generated triples discarded as invalid"));
    out
}

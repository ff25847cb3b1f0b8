//! A small CDCL SAT solver.
//!
//! Two watched literals, first-UIP learning, VSIDS with a binary heap, Luby
//! restarts and activity-based learnt clause deletion. Incremental use goes
//! through assumptions: clauses may be added between calls, and each call
//! may fix a list of literals for its duration only.
//!
//! Decisions always pick the negative phase and no phase is saved. Models
//! of the encodings built on top are therefore biased towards few true
//! atoms, which keeps witnesses small and makes runs reproducible.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Not;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

/// A literal, encoded as `2 * var + (negated as u32)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(v: Var, positive: bool) -> Lit {
        Lit(v.0 << 1 | (!positive) as u32)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    fn index(self) -> usize {
        self.0 as usize
    }

    /// DIMACS integer: `v+1` or `-(v+1)`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

const L_FALSE: u8 = 0;
const L_TRUE: u8 = 1;
const L_UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

#[inline]
fn lit_value(assigns: &[u8], l: Lit) -> u8 {
    let v = assigns[l.var().index()];
    if v == L_UNDEF {
        L_UNDEF
    } else {
        v ^ (l.0 & 1) as u8
    }
}

#[derive(Clone, Debug)]
struct ClauseData {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap of variables keyed by activity.
#[derive(Clone, Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    indices: Vec<i32>,
}

impl VarHeap {
    fn grow(&mut self) {
        self.indices.push(-1);
    }

    fn contains(&self, v: u32) -> bool {
        self.indices[v as usize] >= 0
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.indices[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        let i = self.indices[v as usize];
        if i >= 0 {
            self.up(i as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.indices[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.indices[last as usize] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if act[v as usize] <= act[p as usize] {
                break;
            }
            self.heap[i] = p;
            self.indices[p as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.indices[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let child = if r < self.heap.len() && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            let c = self.heap[child];
            if act[c as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = c;
            self.indices[c as usize] = i as i32;
            i = child;
        }
        self.heap[i] = v;
        self.indices[v as usize] = i as i32;
    }
}

/// Solver statistics, cumulative over all calls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub solves: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
}

#[derive(Clone, Debug)]
pub struct Solver {
    clauses: Vec<ClauseData>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    model: Vec<bool>,
    assumptions: Vec<Lit>,
    ok: bool,
    max_learnts: f64,
    conflict_budget: Option<u64>,
    stats: Stats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

fn luby(y: f64, mut x: u64) -> f64 {
    let mut size = 1u64;
    let mut seq = 0i32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    let mut r = 1.0;
    for _ in 0..seq {
        r *= y;
    }
    r
}

enum SearchOutcome {
    Sat,
    Unsat,
    Restart,
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            seen: Vec::new(),
            model: Vec::new(),
            assumptions: Vec::new(),
            ok: true,
            max_learnts: 0.0,
            conflict_budget: None,
            stats: Stats::default(),
        }
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.assigns.len() as u32;
        self.assigns.push(L_UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(0.0);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow();
        self.heap.insert(v, &self.activity);
        Var(v)
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// Number of original (non-learnt, non-unit) clauses currently stored.
    pub fn num_clauses(&self) -> usize {
        self.clauses.iter().filter(|c| !c.learnt && !c.deleted).count()
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// `false` once the clause set is known to be unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    /// Limit the number of conflicts per `solve` call.
    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.conflict_budget = budget;
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    #[inline]
    fn value(&self, l: Lit) -> u8 {
        lit_value(&self.assigns, l)
    }

    /// Add a clause. Returns `false` if the clause set became unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        debug_assert_eq!(self.decision_level(), 0);
        if !self.ok {
            return false;
        }
        let mut ps: Vec<Lit> = lits.to_vec();
        ps.sort_unstable();
        ps.dedup();
        let mut out = Vec::with_capacity(ps.len());
        for (i, &l) in ps.iter().enumerate() {
            if i + 1 < ps.len() && ps[i + 1] == !l {
                return true;
            }
            match self.value(l) {
                L_TRUE => return true,
                L_FALSE => {}
                _ => out.push(l),
            }
        }
        match out.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(out[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(out, false);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].index()].push(Watcher { cref, blocker: lits[1] });
        self.watches[lits[1].index()].push(Watcher { cref, blocker: lits[0] });
        self.clauses.push(ClauseData { lits, learnt, deleted: false, activity: 0.0 });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var().index();
        self.assigns[v] = l.is_positive() as u8;
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation. Returns a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = core::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == L_TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cd = &mut self.clauses[w.cref as usize];
                if cd.deleted {
                    continue;
                }
                let c = &mut cd.lits;
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let nw = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == L_TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                for k in 2..c.len() {
                    if lit_value(&self.assigns, c[k]) != L_FALSE {
                        c.swap(1, k);
                        let new_watch = c[1];
                        self.watches[new_watch.index()].push(nw);
                        continue 'watchers;
                    }
                }
                ws[j] = nw;
                j += 1;
                if lit_value(&self.assigns, first) == L_FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.index()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v as u32, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. The asserting literal comes first and a
    /// literal of the backtrack level second.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = alloc::vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let dl = self.decision_level() as u32;
        loop {
            self.bump_clause(confl);
            let start = if p.is_none() { 0 } else { 1 };
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            let v = lit.var().index();
            confl = self.reason[v];
            self.seen[v] = false;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = !p.unwrap();

        // drop literals implied by the rest of the clause
        let mut keep = alloc::vec![learnt[0]];
        for &l in &learnt[1..] {
            let r = self.reason[l.var().index()];
            let redundant = r != NO_REASON
                && self.clauses[r as usize].lits[1..].iter().all(|q| {
                    let v = q.var().index();
                    self.seen[v] || self.level[v] == 0
                });
            if !redundant {
                keep.push(l);
            }
        }
        for &l in &learnt {
            self.seen[l.var().index()] = false;
        }
        let mut learnt = keep;

        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[learnt[1].var().index()] as usize;
        }
        (learnt, bt)
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl];
        for i in (lim..self.trail.len()).rev() {
            let v = self.trail[i].var().index();
            self.assigns[v] = L_UNDEF;
            self.reason[v] = NO_REASON;
            self.heap.insert(v as u32, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v as usize] == L_UNDEF {
                return Some(Var(v).neg());
            }
        }
        None
    }

    fn locked(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        let l = c.lits[0];
        self.value(l) == L_TRUE && self.reason[l.var().index()] == cref
    }

    fn reduce_db(&mut self) {
        let mut ls = core::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            ca.activity.partial_cmp(&cb.activity).unwrap_or(core::cmp::Ordering::Equal)
        });
        let half = ls.len() / 2;
        let mut kept = Vec::with_capacity(ls.len());
        for (i, &cr) in ls.iter().enumerate() {
            let c = &self.clauses[cr as usize];
            if i < half && c.lits.len() > 2 && !self.locked(cr) {
                let c = &mut self.clauses[cr as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                kept.push(cr);
            }
        }
        self.learnts = kept;
    }

    fn budget_exhausted(&self, start: u64) -> bool {
        self.conflict_budget.is_some_and(|b| self.stats.conflicts - start >= b)
    }

    fn search(&mut self, nof_conflicts: u64, start: u64) -> SearchOutcome {
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SearchOutcome::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cr = self.attach(learnt, true);
                    self.bump_clause(cr);
                    self.enqueue(first, cr);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
            } else {
                if conflicts >= nof_conflicts || self.budget_exhausted(start) {
                    self.cancel_until(0);
                    return SearchOutcome::Restart;
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                }
                let mut next = None;
                while self.decision_level() < self.assumptions.len() {
                    let a = self.assumptions[self.decision_level()];
                    match self.value(a) {
                        L_TRUE => self.trail_lim.push(self.trail.len()),
                        L_FALSE => return SearchOutcome::Unsat,
                        _ => {
                            next = Some(a);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(l) => l,
                    None => match self.pick_branch() {
                        Some(l) => l,
                        None => return SearchOutcome::Sat,
                    },
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, NO_REASON);
            }
        }
    }

    pub fn solve(&mut self) -> SolveResult {
        self.solve_with(&[])
    }

    /// Solve under the given assumptions, which hold for this call only.
    pub fn solve_with(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        self.model.clear();
        if !self.ok {
            return SolveResult::Unsat;
        }
        self.assumptions = assumptions.to_vec();
        self.max_learnts = (self.num_clauses() as f64 / 3.0).max(2000.0);
        let start = self.stats.conflicts;
        let mut restarts = 0u64;
        let result = loop {
            let nof = (luby(2.0, restarts) * 100.0) as u64;
            match self.search(nof, start) {
                SearchOutcome::Sat => {
                    self.model = self.assigns.iter().map(|&v| v == L_TRUE).collect();
                    break SolveResult::Sat;
                }
                SearchOutcome::Unsat => break SolveResult::Unsat,
                SearchOutcome::Restart => {
                    if self.budget_exhausted(start) {
                        break SolveResult::Unknown;
                    }
                    restarts += 1;
                    self.stats.restarts += 1;
                    self.max_learnts *= 1.1;
                }
            }
        };
        self.cancel_until(0);
        self.assumptions.clear();
        result
    }

    /// Value of a variable in the last model. Only meaningful after `Sat`.
    pub fn model_value(&self, v: Var) -> bool {
        self.model.get(v.index()).copied().unwrap_or(false)
    }

    pub fn lit_model_value(&self, l: Lit) -> bool {
        self.model_value(l.var()) == l.is_positive()
    }

    pub fn model(&self) -> &[bool] {
        &self.model
    }

    /// Literals fixed at decision level 0.
    pub fn fixed_value(&self, v: Var) -> Option<bool> {
        match self.assigns[v.index()] {
            L_UNDEF => None,
            x => Some(x == L_TRUE),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn lits(s: &mut Solver, n: usize) -> Vec<Var> {
        (0..n).map(|_| s.new_var()).collect()
    }

    fn brute_force(n: usize, cnf: &[Vec<(usize, bool)>]) -> bool {
        (0u32..1 << n).any(|m| cnf.iter().all(|c| c.iter().any(|&(v, p)| ((m >> v) & 1 == 1) == p)))
    }

    #[test]
    fn luby_sequence() {
        let seq: Vec<u64> = (0..15).map(|i| luby(2.0, i) as u64).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial() {
        let mut s = Solver::new();
        assert_eq!(s.solve(), SolveResult::Sat);
        let v = lits(&mut s, 1);
        assert!(s.add_clause(&[v[0].pos()]));
        assert_eq!(s.solve(), SolveResult::Sat);
        assert!(s.model_value(v[0]));
        assert!(!s.add_clause(&[v[0].neg()]));
        assert_eq!(s.solve(), SolveResult::Unsat);
    }

    #[test]
    fn default_phase_is_false() {
        let mut s = Solver::new();
        let v = lits(&mut s, 3);
        s.add_clause(&[v[0].pos(), v[1].pos(), v[2].pos()]);
        assert_eq!(s.solve(), SolveResult::Sat);
        assert_eq!(s.model().iter().filter(|&&b| b).count(), 1);
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 5 pigeons, 4 holes
        let (p, h) = (5, 4);
        let mut s = Solver::new();
        let x: Vec<Vec<Var>> = (0..p).map(|_| lits(&mut s, h)).collect();
        for row in &x {
            s.add_clause(&row.iter().map(|v| v.pos()).collect::<Vec<_>>());
        }
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    s.add_clause(&[x[a][j].neg(), x[b][j].neg()]);
                }
            }
        }
        assert_eq!(s.solve(), SolveResult::Unsat);
    }

    #[test]
    fn assumptions_are_temporary() {
        let mut s = Solver::new();
        let v = lits(&mut s, 2);
        s.add_clause(&[v[0].neg(), v[1].pos()]);
        assert_eq!(s.solve_with(&[v[0].pos(), v[1].neg()]), SolveResult::Unsat);
        assert_eq!(s.solve_with(&[v[0].pos()]), SolveResult::Sat);
        assert!(s.model_value(v[1]));
        assert_eq!(s.solve(), SolveResult::Sat);
        assert!(s.is_ok());
    }

    #[test]
    fn conflict_budget_gives_unknown() {
        let (p, h) = (9, 8);
        let mut s = Solver::new();
        let x: Vec<Vec<Var>> = (0..p).map(|_| lits(&mut s, h)).collect();
        for row in &x {
            s.add_clause(&row.iter().map(|v| v.pos()).collect::<Vec<_>>());
        }
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    s.add_clause(&[x[a][j].neg(), x[b][j].neg()]);
                }
            }
        }
        s.set_conflict_budget(Some(10));
        assert_eq!(s.solve(), SolveResult::Unknown);
    }

    fn cnf_strategy() -> impl Strategy<Value = (usize, Vec<Vec<(usize, bool)>>)> {
        (1usize..=10).prop_flat_map(|n| {
            let clause = prop::collection::vec((0..n, any::<bool>()), 1..=3);
            (Just(n), prop::collection::vec(clause, 0..45))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force((n, cnf) in cnf_strategy()) {
            let mut s = Solver::new();
            let vs = lits(&mut s, n);
            for c in &cnf {
                let c: Vec<Lit> = c.iter().map(|&(v, p)| Lit::new(vs[v], p)).collect();
                s.add_clause(&c);
            }
            let r = s.solve();
            prop_assert_eq!(r == SolveResult::Sat, brute_force(n, &cnf));
            if r == SolveResult::Sat {
                for c in &cnf {
                    prop_assert!(c.iter().any(|&(v, p)| s.model_value(vs[v]) == p));
                }
            }
        }

        #[test]
        fn incremental_matches_fresh((n, cnf) in cnf_strategy(), assume in prop::collection::vec((0usize..10, any::<bool>()), 0..4)) {
            let mut s = Solver::new();
            let vs = lits(&mut s, n);
            for c in &cnf {
                let c: Vec<Lit> = c.iter().map(|&(v, p)| Lit::new(vs[v], p)).collect();
                s.add_clause(&c);
            }
            let assume: Vec<(usize, bool)> = assume.into_iter().filter(|&(v, _)| v < n).collect();
            let a: Vec<Lit> = assume.iter().map(|&(v, p)| Lit::new(vs[v], p)).collect();
            let mut with_units = cnf.clone();
            with_units.extend(assume.iter().map(|&u| vec![u]));
            prop_assert_eq!(s.solve_with(&a) == SolveResult::Sat, brute_force(n, &with_units));
            prop_assert_eq!(s.solve() == SolveResult::Sat, brute_force(n, &cnf));
        }
    }
}

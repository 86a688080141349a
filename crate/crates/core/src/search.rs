//! Depth-first branch-and-prune over the concrete model.

use std::time::Instant;

use crate::domain::{middle, BoolDomain, FpDomain};
use crate::eval::{constraint_holds, Value};
use crate::propagation::{DomainStore, Empty, PropStats, Propagator};
use crate::rewrite::{Domain, ModelM2};
use crate::smtlib::VarId;

/// Prohibition depths: a variable branched on at depth `d` is not selected
/// again above depth `d + u`.
#[derive(Debug, Clone)]
pub struct Diversification {
    u: usize,
    last: Vec<usize>,
}

impl Diversification {
    /// `u` is clamped to `num_decision_vars`.
    pub fn new(u: usize, num_decision_vars: usize, num_vars: usize) -> Self {
        Diversification {
            u: u.min(num_decision_vars),
            last: vec![0; num_vars],
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn last(&self, x: VarId) -> usize {
        self.last[x.0 as usize]
    }

    pub fn record_prohibition(&mut self, x: VarId, depth: usize) {
        self.last[x.0 as usize] = depth + self.u;
    }

    pub fn is_eligible(&self, x: VarId, depth: usize) -> bool {
        self.last(x) <= depth
    }
}

fn unbound_fp(store: &DomainStore, vars: &[VarId]) -> Vec<VarId> {
    vars.iter()
        .copied()
        .filter(|&v| matches!(store.get(v), Domain::Fp(d) if !d.is_instantiated()))
        .collect()
}

/// Candidate branching variables at depth `depth`: the unprohibited unbound
/// floating-point decision variables, else all unbound ones, else the
/// unbound floating-point auxiliaries.
pub fn eligible_set(m2: &ModelM2, store: &DomainStore, div: &Diversification, depth: usize) -> Vec<VarId> {
    let x1 = unbound_fp(store, &m2.decision_vars());
    let allowed: Vec<VarId> = x1.iter().copied().filter(|&v| div.is_eligible(v, depth)).collect();
    if !allowed.is_empty() {
        return allowed;
    }
    if !x1.is_empty() {
        return x1;
    }
    unbound_fp(store, &m2.auxiliary_vars())
}

/// The eligible variable of highest density, lowest index on ties.
pub fn select_variable(eligible: &[VarId], store: &DomainStore) -> VarId {
    let mut best = eligible[0];
    let mut best_density = store.get(best).fp().density();
    for &v in &eligible[1..] {
        let d = store.get(v).fp().density();
        if d > best_density || (d == best_density && v < best) {
            best = v;
            best_density = d;
        }
    }
    best
}

/// Sub-domains `[L]`, `[U]`, `[M]`, `[L+..M-]`, `[M+..U-]`, skipping empty
/// and repeated ones, then `{NaN}` when NaN is possible.
pub fn split_domain(d: &FpDomain) -> Vec<FpDomain> {
    let fmt = d.format();
    let mut out: Vec<FpDomain> = Vec::with_capacity(6);
    if let (Some(lb), Some(ub)) = (d.lb(), d.ub()) {
        let (l, u) = (d.lo(), d.hi());
        let m = middle(lb, ub).ordinal().unwrap();
        for (a, b) in [(l, l), (u, u), (m, m), (l + 1, m - 1), (m + 1, u - 1)] {
            if a > b || a < l || b > u {
                continue;
            }
            let part = FpDomain::from_ordinals(fmt, a, b, false);
            if !out.contains(&part) {
                out.push(part);
            }
        }
    }
    if d.may_nan() {
        out.push(FpDomain::nan_only(fmt));
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub u: usize,
    pub deadline: Option<Instant>,
    pub node_limit: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            u: 5,
            deadline: None,
            node_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    pub max_depth: usize,
    pub prop: PropStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// One value per variable of the model.
    Sat(Vec<Value>),
    Unsat,
    /// Deadline or node limit reached.
    Unknown,
}

struct Frame {
    var: VarId,
    branches: Vec<Domain>,
    next: usize,
    active: bool,
}

enum Decision {
    Bound,
    Branch(VarId, Vec<Domain>),
}

fn decide(m2: &ModelM2, store: &DomainStore, div: &mut Diversification, depth: usize) -> Decision {
    let eligible = eligible_set(m2, store, div, depth);
    if !eligible.is_empty() {
        let x = select_variable(&eligible, store);
        div.record_prohibition(x, depth);
        let parts = split_domain(&store.get(x).fp());
        return Decision::Branch(x, parts.into_iter().map(Domain::Fp).collect());
    }
    // declared floats are exhausted above, so only auxiliaries or Bools remain
    let n = store.domains().len() as u32;
    for v in (0..n).map(VarId) {
        match store.get(v) {
            Domain::Fp(d) if !d.is_instantiated() => {
                return Decision::Branch(v, split_domain(&d).into_iter().map(Domain::Fp).collect());
            }
            _ => {}
        }
    }
    for v in (0..n).map(VarId) {
        if let Domain::Bool(b) = store.get(v) {
            if b.value().is_none() {
                return Decision::Branch(v, vec![Domain::Bool(BoolDomain::FALSE), Domain::Bool(BoolDomain::TRUE)]);
            }
        }
    }
    Decision::Bound
}

fn assignment(store: &DomainStore) -> Vec<Value> {
    store
        .domains()
        .iter()
        .map(|d| match d {
            Domain::Fp(f) => Value::Fp(f.value().expect("bound variable")),
            Domain::Bool(b) => Value::Bool(b.value().expect("bound variable")),
        })
        .collect()
}

/// Searches for an assignment of every variable satisfying all constraints.
pub fn solve(m2: &ModelM2, config: &SearchConfig) -> (SearchOutcome, SearchStats) {
    let mut store = DomainStore::new(m2.domains.clone());
    let mut prop = Propagator::new(m2);
    let mut div = Diversification::new(config.u, m2.decision_vars().len(), m2.vars.len());
    let mut stats = SearchStats::default();
    let outcome = run(m2, config, &mut store, &mut prop, &mut div, &mut stats);
    stats.prop = prop.stats;
    (outcome, stats)
}

fn run(
    m2: &ModelM2,
    config: &SearchConfig,
    store: &mut DomainStore,
    prop: &mut Propagator,
    div: &mut Diversification,
    stats: &mut SearchStats,
) -> SearchOutcome {
    let mut stack: Vec<Frame> = Vec::new();
    let mut consistent = prop.propagate_all(store).is_ok();
    stats.nodes = 1;
    loop {
        if consistent {
            let depth = stack.len();
            stats.max_depth = stats.max_depth.max(depth);
            match decide(m2, store, div, depth) {
                Decision::Bound => {
                    let values = assignment(store);
                    let val = |v: VarId| values[v.0 as usize];
                    if m2.constraints.iter().all(|c| constraint_holds(c, &val)) {
                        return SearchOutcome::Sat(values);
                    }
                }
                Decision::Branch(var, branches) => stack.push(Frame {
                    var,
                    branches,
                    next: 0,
                    active: false,
                }),
            }
        }
        // move to the next unexplored branch
        loop {
            let Some(top) = stack.last_mut() else {
                return SearchOutcome::Unsat;
            };
            if top.active {
                store.pop_frame();
                top.active = false;
                stats.backtracks += 1;
            }
            if top.next == top.branches.len() {
                stack.pop();
                continue;
            }
            if config.deadline.is_some_and(|d| Instant::now() >= d)
                || config.node_limit.is_some_and(|n| stats.nodes >= n)
            {
                return SearchOutcome::Unknown;
            }
            let (var, d) = (top.var, top.branches[top.next]);
            top.next += 1;
            top.active = true;
            stats.nodes += 1;
            store.push_frame();
            let r: Result<_, Empty> = store.narrow(var, d).and_then(|_| prop.propagate_from(store, &[var]));
            consistent = r.is_ok();
            break;
        }
    }
}

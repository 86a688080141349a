//! Constraint propagation over interval domains.
//!
//! Projections are pure functions from the domains in a constraint's scope
//! to narrowed domains; [`Propagator`] runs them to a fixpoint over a
//! [`DomainStore`] that can be restored on backtrack.

mod arith;
mod bounds;
mod logic;

use std::collections::VecDeque;

use thiserror::Error;

use crate::rewrite::{Domain, ElemConstraint, ModelM2, UnaryOp};
use crate::smtlib::VarId;

pub use arith::{forward, negate};
pub use logic::{entailment, holds};

/// Some domain became empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a domain became empty")]
pub struct Empty;

/// Domains of all variables, with a trail for undoing narrowings.
#[derive(Debug, Clone)]
pub struct DomainStore {
    doms: Vec<Domain>,
    trail: Vec<(VarId, Domain)>,
    frames: Vec<usize>,
}

impl DomainStore {
    pub fn new(doms: Vec<Domain>) -> Self {
        DomainStore {
            doms,
            trail: Vec::new(),
            frames: Vec::new(),
        }
    }

    pub fn get(&self, v: VarId) -> Domain {
        self.doms[v.0 as usize]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.doms
    }

    /// Intersects the domain of `v` with `d`. Returns whether it shrank.
    pub fn narrow(&mut self, v: VarId, d: Domain) -> Result<bool, Empty> {
        let old = self.get(v);
        let new = old.intersect(&d);
        if new == old {
            return Ok(false);
        }
        self.trail.push((v, old));
        self.doms[v.0 as usize] = new;
        if new.is_empty() {
            Err(Empty)
        } else {
            Ok(true)
        }
    }

    pub fn push_frame(&mut self) {
        self.frames.push(self.trail.len());
    }

    /// Undoes every narrowing since the matching [`push_frame`](Self::push_frame).
    pub fn pop_frame(&mut self) {
        let mark = self.frames.pop().expect("pop_frame without push_frame");
        while self.trail.len() > mark {
            let (v, d) = self.trail.pop().unwrap();
            self.doms[v.0 as usize] = d;
        }
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }
}

/// Narrowed domains for the scope of `c`, given current domains.
pub fn project(c: &ElemConstraint, get: impl Fn(VarId) -> Domain) -> Vec<(VarId, Domain)> {
    let fp = |v: VarId| get(v).fp();
    let bl = |v: VarId| get(v).boolean();
    use Domain::{Bool as B, Fp as F};
    match c {
        ElemConstraint::Arith { op, mode, z, x, y } => {
            let (nz, nx, ny) = arith::project(*op, *mode, &fp(*z), &fp(*x), &fp(*y));
            // a repeated variable receives the meet of its narrowings
            vec![(*z, F(nz)), (*x, F(nx)), (*y, F(ny))]
        }
        ElemConstraint::Square { mode, z, x } => {
            let (nz, nx) = arith::project_square(*mode, &fp(*z), &fp(*x));
            vec![(*z, F(nz)), (*x, F(nx))]
        }
        ElemConstraint::Unary { op, z, x } => {
            let (nz, nx) = match op {
                UnaryOp::Neg => arith::project_neg(&fp(*z), &fp(*x)),
                UnaryOp::Abs => arith::project_abs(&fp(*z), &fp(*x)),
            };
            vec![(*z, F(nz)), (*x, F(nx))]
        }
        ElemConstraint::MinMax { max, z, x, y } => {
            let (nz, nx, ny) = arith::project_minmax(*max, &fp(*z), &fp(*x), &fp(*y));
            vec![(*z, F(nz)), (*x, F(nx)), (*y, F(ny))]
        }
        ElemConstraint::Cmp { rel, x, y } => {
            let (nx, ny) = logic::project_cmp(*rel, &fp(*x), &fp(*y), x == y);
            vec![(*x, F(nx)), (*y, F(ny))]
        }
        ElemConstraint::ReifCmp { b, rel, x, y } => {
            let (nb, nx, ny) = logic::project_reif(*rel, bl(*b), &fp(*x), &fp(*y), x == y);
            vec![(*b, B(nb)), (*x, F(nx)), (*y, F(ny))]
        }
        ElemConstraint::Clause(lits) => {
            let doms: Vec<_> = lits.iter().map(|l| bl(l.var)).collect();
            let pos: Vec<_> = lits.iter().map(|l| l.positive).collect();
            match logic::project_clause(&doms, &pos) {
                Some(out) => lits.iter().zip(out).map(|(l, d)| (l.var, B(d))).collect(),
                None => match lits.first() {
                    Some(l) => vec![(l.var, B(crate::domain::BoolDomain::EMPTY))],
                    None => Vec::new(),
                },
            }
        }
        ElemConstraint::Ite { b, z, x, y } => {
            let (nb, nz, nx, ny) = logic::project_ite(bl(*b), &fp(*z), &fp(*x), &fp(*y));
            vec![(*b, B(nb)), (*z, F(nz)), (*x, F(nx)), (*y, F(ny))]
        }
        ElemConstraint::Pred { pred, b, x } => {
            let (nb, nx) = logic::project_pred(*pred, bl(*b), &fp(*x));
            vec![(*b, B(nb)), (*x, F(nx))]
        }
    }
}

/// Counters accumulated over all propagation calls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PropStats {
    pub revisions: u64,
    pub prunes: u64,
    pub empty_events: u64,
    pub budget_exhaustions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixpoint {
    Stable,
    /// Stopped by the revision budget before reaching a fixpoint.
    BudgetExhausted,
}

/// Revisions allowed per propagation call, per constraint.
pub const BUDGET_PER_CONSTRAINT: u64 = 100;

/// AC3-style propagation loop with watch lists and a FIFO queue.
#[derive(Debug, Clone)]
pub struct Propagator {
    constraints: Vec<ElemConstraint>,
    watches: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    pub stats: PropStats,
}

impl Propagator {
    pub fn new(m2: &ModelM2) -> Self {
        let mut watches = vec![Vec::new(); m2.vars.len()];
        for (i, c) in m2.constraints.iter().enumerate() {
            let mut scope = c.scope();
            scope.sort_unstable();
            scope.dedup();
            for v in scope {
                watches[v.0 as usize].push(i);
            }
        }
        Propagator {
            constraints: m2.constraints.clone(),
            watches,
            queue: VecDeque::new(),
            queued: vec![false; m2.constraints.len()],
            stats: PropStats::default(),
        }
    }

    pub fn constraints(&self) -> &[ElemConstraint] {
        &self.constraints
    }

    fn enqueue(&mut self, c: usize) {
        if !self.queued[c] {
            self.queued[c] = true;
            self.queue.push_back(c);
        }
    }

    fn clear_queue(&mut self) {
        for c in self.queue.drain(..) {
            self.queued[c] = false;
        }
    }

    /// Revises every constraint until nothing changes.
    pub fn propagate_all(&mut self, store: &mut DomainStore) -> Result<Fixpoint, Empty> {
        for c in 0..self.constraints.len() {
            self.enqueue(c);
        }
        self.run(store)
    }

    /// Revises the constraints watching `changed`, then everything they wake.
    pub fn propagate_from(&mut self, store: &mut DomainStore, changed: &[VarId]) -> Result<Fixpoint, Empty> {
        for v in changed {
            for i in 0..self.watches[v.0 as usize].len() {
                let c = self.watches[v.0 as usize][i];
                self.enqueue(c);
            }
        }
        self.run(store)
    }

    fn run(&mut self, store: &mut DomainStore) -> Result<Fixpoint, Empty> {
        let budget = BUDGET_PER_CONSTRAINT * self.constraints.len().max(1) as u64;
        let mut spent = 0;
        while let Some(c) = self.queue.pop_front() {
            self.queued[c] = false;
            if spent == budget {
                self.clear_queue();
                self.stats.budget_exhaustions += 1;
                return Ok(Fixpoint::BudgetExhausted);
            }
            spent += 1;
            self.stats.revisions += 1;
            let updates = project(&self.constraints[c], |v| store.get(v));
            for (v, d) in updates {
                match store.narrow(v, d) {
                    Ok(false) => {}
                    Ok(true) => {
                        self.stats.prunes += 1;
                        for i in 0..self.watches[v.0 as usize].len() {
                            let w = self.watches[v.0 as usize][i];
                            self.enqueue(w);
                        }
                    }
                    Err(Empty) => {
                        self.stats.empty_events += 1;
                        self.clear_queue();
                        return Err(Empty);
                    }
                }
            }
        }
        Ok(Fixpoint::Stable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{decompose, inline_closure};
    use crate::smtlib::parse_str;

    fn m2_of(src: &str) -> ModelM2 {
        let m0 = parse_str(src).unwrap();
        decompose(&inline_closure(&m0).unwrap()).unwrap()
    }

    const TWO_X: &str = "(set-logic QF_FP)
        (declare-fun x () (_ FloatingPoint 8 24))
        (declare-fun y () (_ FloatingPoint 8 24))
        (assert (fp.lt ((_ to_fp 8 24) RNE 1.0) x))
        (assert (fp.lt x ((_ to_fp 8 24) RNE 2.0)))
        (assert (fp.eq y (fp.add RNE x x)))
        (check-sat)";

    #[test]
    fn fixpoint_narrows_and_is_idempotent() {
        let m2 = m2_of(TWO_X);
        let mut store = DomainStore::new(m2.domains.clone());
        let mut p = Propagator::new(&m2);
        assert_eq!(p.propagate_all(&mut store), Ok(Fixpoint::Stable));
        let y = m2.vars.iter().position(|v| v.name == "y").unwrap();
        let yd = store.get(VarId(y as u32)).fp();
        assert!(!yd.may_nan());
        assert!(yd.lb().unwrap().to_f64() > 2.0 && yd.ub().unwrap().to_f64() < 4.0, "{yd:?}");
        let before = store.domains().to_vec();
        p.propagate_all(&mut store).unwrap();
        assert_eq!(store.domains(), &before[..]);
    }

    #[test]
    fn frames_restore_domains() {
        let m2 = m2_of(TWO_X);
        let mut store = DomainStore::new(m2.domains.clone());
        let mut p = Propagator::new(&m2);
        p.propagate_all(&mut store).unwrap();
        let before = store.domains().to_vec();
        store.push_frame();
        let x = VarId(0);
        let one = crate::float::FpValue::one(crate::float::FpFormat::BINARY32);
        let r = store
            .narrow(x, Domain::Fp(crate::domain::FpDomain::singleton(one)))
            .and_then(|_| p.propagate_from(&mut store, &[x]));
        assert_eq!(r, Err(Empty));
        store.pop_frame();
        assert_eq!(store.domains(), &before[..]);
    }

    #[test]
    fn contradictory_bounds_fail() {
        let m2 = m2_of(
            "(set-logic QF_FP)
             (declare-fun x () (_ FloatingPoint 8 24))
             (assert (fp.lt x ((_ to_fp 8 24) RNE 1.0)))
             (assert (fp.gt x ((_ to_fp 8 24) RNE 2.0)))",
        );
        let mut store = DomainStore::new(m2.domains.clone());
        let mut p = Propagator::new(&m2);
        assert_eq!(p.propagate_all(&mut store), Err(Empty));
        assert_eq!(p.stats.empty_events, 1);
    }
}

use std::collections::HashMap;

use super::{
    ArithOp, Domain, ElemConstraint as C, Lit, ModelM1, ModelM2, Origin, PredKind, Rel, RewriteError, UnaryOp,
    VarInfo,
};
use crate::domain::{BoolDomain, FpDomain};
use crate::float::FpValue;
use crate::smtlib::{Op, Sort, TermId, TermKind, VarId};

/// Flattens every constraint of `m1` into elementary constraints.
///
/// Terms are walked as trees: without prior CSE, each occurrence of a
/// repeated subterm gets its own `__dec<k>` variable. A product of a
/// variable by itself becomes [`C::Square`].
pub fn decompose(m1: &ModelM1) -> Result<ModelM2, RewriteError> {
    let mut d = Decomposer {
        m1,
        out: ModelM2 {
            vars: m1.vars.clone(),
            domains: m1.vars.iter().map(|v| Domain::full(v.sort)).collect(),
            constraints: Vec::new(),
        },
        counter: 0,
        fp_consts: HashMap::new(),
        bool_consts: HashMap::new(),
    };
    for &c in &m1.constraints {
        d.assert_true(c)?;
    }
    Ok(d.out)
}

struct Decomposer<'a> {
    m1: &'a ModelM1,
    out: ModelM2,
    counter: usize,
    fp_consts: HashMap<FpValue, VarId>,
    bool_consts: HashMap<bool, VarId>,
}

fn cmp_rel(op: Op) -> Option<(Rel, bool)> {
    // (relation, operands swapped)
    match op {
        Op::FpEq => Some((Rel::Eq, false)),
        Op::FpLt => Some((Rel::Lt, false)),
        Op::FpLeq => Some((Rel::Le, false)),
        Op::FpGt => Some((Rel::Lt, true)),
        Op::FpGeq => Some((Rel::Le, true)),
        _ => None,
    }
}

impl Decomposer<'_> {
    fn node(&self, t: TermId) -> &crate::smtlib::Node {
        self.m1.terms.node(t)
    }

    fn new_var(&mut self, name: String, sort: Sort, origin: Origin, dom: Domain) -> VarId {
        let v = VarId(self.out.vars.len() as u32);
        self.out.vars.push(VarInfo { name, sort, origin });
        self.out.domains.push(dom);
        v
    }

    fn fresh(&mut self, sort: Sort) -> VarId {
        let name = loop {
            let n = format!("__dec{}", self.counter);
            self.counter += 1;
            if !self.out.vars.iter().any(|v| v.name == n) {
                break n;
            }
        };
        self.new_var(name, sort, Origin::Aux, Domain::full(sort))
    }

    fn fp_const(&mut self, v: FpValue) -> VarId {
        if let Some(&c) = self.fp_consts.get(&v) {
            return c;
        }
        let c = self.new_var(
            format!("{v}"),
            Sort::Fp(v.format()),
            Origin::Constant,
            Domain::Fp(FpDomain::singleton(v)),
        );
        self.fp_consts.insert(v, c);
        c
    }

    fn bool_const(&mut self, b: bool) -> VarId {
        if let Some(&c) = self.bool_consts.get(&b) {
            return c;
        }
        let c = self.new_var(b.to_string(), Sort::Bool, Origin::Constant, Domain::Bool(BoolDomain::of(b)));
        self.bool_consts.insert(b, c);
        c
    }

    fn unsupported(&self, t: TermId) -> RewriteError {
        let n = self.node(t);
        RewriteError::UnsupportedOperator(match n.kind {
            TermKind::App(op) => op.smt_name().to_string(),
            k => format!("{k:?}"),
        })
    }

    /// A variable equal to the floating-point term `t`.
    fn fp_var(&mut self, t: TermId) -> Result<VarId, RewriteError> {
        let n = self.node(t).clone();
        match n.kind {
            TermKind::Var(v) => Ok(v),
            TermKind::FpLit(v) => Ok(self.fp_const(v)),
            TermKind::App(_) => {
                let z = self.fresh(n.sort);
                self.define(z, t)?;
                Ok(z)
            }
            _ => Err(self.unsupported(t)),
        }
    }

    /// Emits constraints stating `z = t` for an application `t`.
    fn define(&mut self, z: VarId, t: TermId) -> Result<(), RewriteError> {
        let n = self.node(t).clone();
        let TermKind::App(op) = n.kind else {
            let x = self.fp_var(t)?;
            self.out.constraints.push(C::Cmp { rel: Rel::Ident, x: z, y: x });
            return Ok(());
        };
        let c = match op {
            Op::FpAdd | Op::FpSub | Op::FpMul | Op::FpDiv => {
                let TermKind::RmLit(mode) = self.node(n.args[0]).kind else {
                    return Err(RewriteError::UnsupportedOperator("non-literal rounding mode".into()));
                };
                let x = self.fp_var(n.args[1])?;
                let y = self.fp_var(n.args[2])?;
                let aop = match op {
                    Op::FpAdd => ArithOp::Add,
                    Op::FpSub => ArithOp::Sub,
                    Op::FpMul => ArithOp::Mul,
                    _ => ArithOp::Div,
                };
                if aop == ArithOp::Mul && x == y {
                    C::Square { mode, z, x }
                } else {
                    C::Arith { op: aop, mode, z, x, y }
                }
            }
            Op::FpNeg | Op::FpAbs => {
                let x = self.fp_var(n.args[0])?;
                let op = if op == Op::FpNeg { UnaryOp::Neg } else { UnaryOp::Abs };
                C::Unary { op, z, x }
            }
            Op::FpMin | Op::FpMax => {
                let x = self.fp_var(n.args[0])?;
                let y = self.fp_var(n.args[1])?;
                C::MinMax { max: op == Op::FpMax, z, x, y }
            }
            Op::Ite => {
                let l = self.lit(n.args[0])?;
                let x = self.fp_var(n.args[1])?;
                let y = self.fp_var(n.args[2])?;
                let (x, y) = if l.positive { (x, y) } else { (y, x) };
                C::Ite { b: l.var, z, x, y }
            }
            _ => return Err(self.unsupported(t)),
        };
        self.out.constraints.push(c);
        Ok(())
    }

    fn fp_pair(&mut self, t: TermId) -> Result<(VarId, VarId), RewriteError> {
        let args = self.node(t).args.clone();
        Ok((self.fp_var(args[0])?, self.fp_var(args[1])?))
    }

    fn is_fp(&self, t: TermId) -> bool {
        matches!(self.node(t).sort, Sort::Fp(_))
    }

    /// Relation and operands of an atomic comparison between floats.
    fn comparison(&mut self, t: TermId) -> Result<Option<(Rel, VarId, VarId)>, RewriteError> {
        let n = self.node(t).clone();
        let TermKind::App(op) = n.kind else { return Ok(None) };
        let (rel, swap) = match op {
            Op::Eq if self.is_fp(n.args[0]) => (Rel::Ident, false),
            Op::Distinct if self.is_fp(n.args[0]) => (Rel::NotIdent, false),
            _ => match cmp_rel(op) {
                Some(r) => r,
                None => return Ok(None),
            },
        };
        let (x, y) = self.fp_pair(t)?;
        Ok(Some(if swap { (rel, y, x) } else { (rel, x, y) }))
    }

    fn predicate(&self, t: TermId) -> Option<PredKind> {
        match self.node(t).kind {
            TermKind::App(Op::FpIsNaN) => Some(PredKind::IsNaN),
            TermKind::App(Op::FpIsInfinite) => Some(PredKind::IsInfinite),
            TermKind::App(Op::FpIsZero) => Some(PredKind::IsZero),
            _ => None,
        }
    }

    fn clause(&mut self, lits: Vec<Lit>) {
        self.out.constraints.push(C::Clause(lits));
    }

    /// A literal equivalent to the Bool term `t`.
    fn lit(&mut self, t: TermId) -> Result<Lit, RewriteError> {
        let n = self.node(t).clone();
        match n.kind {
            TermKind::Var(v) => return Ok(Lit::pos(v)),
            TermKind::BoolLit(b) => return Ok(Lit::pos(self.bool_const(b))),
            TermKind::App(Op::Not) => return Ok(self.lit(n.args[0])?.negate()),
            TermKind::App(_) => {}
            _ => return Err(self.unsupported(t)),
        }
        if let Some((rel, x, y)) = self.comparison(t)? {
            let b = self.fresh(Sort::Bool);
            self.out.constraints.push(C::ReifCmp { b, rel, x, y });
            return Ok(Lit::pos(b));
        }
        if let Some(pred) = self.predicate(t) {
            let x = self.fp_var(n.args[0])?;
            let b = self.fresh(Sort::Bool);
            self.out.constraints.push(C::Pred { pred, b, x });
            return Ok(Lit::pos(b));
        }
        let TermKind::App(op) = n.kind else { unreachable!() };
        let mut lits = Vec::with_capacity(n.args.len());
        for &a in &n.args {
            lits.push(self.lit(a)?);
        }
        let b = Lit::pos(self.fresh(Sort::Bool));
        match op {
            Op::And | Op::Or | Op::Implies => {
                // b <=> or(lits) ; and = not or(not lits)
                let (b, lits): (Lit, Vec<Lit>) = match op {
                    Op::And => (b.negate(), lits.into_iter().map(Lit::negate).collect()),
                    Op::Or => (b, lits),
                    _ => (b, vec![lits[0].negate(), lits[1]]),
                };
                for &l in &lits {
                    self.clause(vec![b, l.negate()]);
                }
                let mut big = vec![b.negate()];
                big.extend(lits);
                self.clause(big);
            }
            Op::Eq | Op::Distinct => {
                // b <=> (p <=> q), flipped for distinct
                let b = if op == Op::Eq { b } else { b.negate() };
                let (p, q) = (lits[0], lits[1]);
                self.clause(vec![b.negate(), p.negate(), q]);
                self.clause(vec![b.negate(), p, q.negate()]);
                self.clause(vec![b, p, q]);
                self.clause(vec![b, p.negate(), q.negate()]);
            }
            Op::Ite => {
                let (c, p, q) = (lits[0], lits[1], lits[2]);
                self.clause(vec![c.negate(), p.negate(), b]);
                self.clause(vec![c.negate(), p, b.negate()]);
                self.clause(vec![c, q.negate(), b]);
                self.clause(vec![c, q, b.negate()]);
            }
            _ => return Err(self.unsupported(t)),
        }
        Ok(b)
    }

    fn assert_true(&mut self, t: TermId) -> Result<(), RewriteError> {
        let n = self.node(t).clone();
        match n.kind {
            TermKind::BoolLit(true) => return Ok(()),
            TermKind::BoolLit(false) => {
                self.clause(Vec::new());
                return Ok(());
            }
            TermKind::App(Op::And) => {
                for &a in &n.args {
                    self.assert_true(a)?;
                }
                return Ok(());
            }
            TermKind::App(Op::Not) => return self.assert_false(n.args[0]),
            TermKind::App(Op::Or) => {
                let mut lits = Vec::new();
                for &a in &n.args {
                    lits.push(self.lit(a)?);
                }
                self.clause(lits);
                return Ok(());
            }
            TermKind::App(Op::Implies) => {
                let p = self.lit(n.args[0])?;
                let q = self.lit(n.args[1])?;
                self.clause(vec![p.negate(), q]);
                return Ok(());
            }
            TermKind::App(Op::Eq) if self.is_fp(n.args[0]) => {
                // a variable equated to an application is defined by it directly
                for (v, e) in [(n.args[0], n.args[1]), (n.args[1], n.args[0])] {
                    if let (TermKind::Var(z), TermKind::App(_)) = (self.node(v).kind, self.node(e).kind) {
                        return self.define(z, e);
                    }
                }
            }
            _ => {}
        }
        if let Some((rel, x, y)) = self.comparison(t)? {
            self.out.constraints.push(C::Cmp { rel, x, y });
            return Ok(());
        }
        if let Some(pred) = self.predicate(t) {
            let x = self.fp_var(n.args[0])?;
            let b = self.bool_const(true);
            self.out.constraints.push(C::Pred { pred, b, x });
            return Ok(());
        }
        let l = self.lit(t)?;
        self.clause(vec![l]);
        Ok(())
    }

    fn assert_false(&mut self, t: TermId) -> Result<(), RewriteError> {
        let n = self.node(t).clone();
        match n.kind {
            TermKind::App(Op::Not) => return self.assert_true(n.args[0]),
            TermKind::App(Op::Or) => {
                for &a in &n.args {
                    self.assert_false(a)?;
                }
                return Ok(());
            }
            TermKind::App(Op::Implies) => {
                self.assert_true(n.args[0])?;
                return self.assert_false(n.args[1]);
            }
            _ => {}
        }
        if let Some((rel, x, y)) = self.comparison(t)? {
            let c = match rel.negation() {
                Some(neg) => C::Cmp { rel: neg, x, y },
                None => C::ReifCmp {
                    b: self.bool_const(false),
                    rel,
                    x,
                    y,
                },
            };
            self.out.constraints.push(c);
            return Ok(());
        }
        if let Some(pred) = self.predicate(t) {
            let x = self.fp_var(n.args[0])?;
            let b = self.bool_const(false);
            self.out.constraints.push(C::Pred { pred, b, x });
            return Ok(());
        }
        let l = self.lit(t)?;
        self.clause(vec![l.negate()]);
        Ok(())
    }
}

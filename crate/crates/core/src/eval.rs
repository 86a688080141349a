//! Direct evaluation of terms and constraints on concrete assignments.
//!
//! This is independent of propagation and is used to validate models and
//! as a brute-force oracle on tiny formats.

use std::collections::HashMap;

use crate::float::{arith, FpValue, RoundingMode};
use crate::propagation::holds;
use crate::rewrite::{ArithOp, ElemConstraint, ModelM1, ModelM2, PredKind, UnaryOp};
use crate::smtlib::{MacroId, ModelM0, Op, Sort, TermId, TermKind, TermStore, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Fp(FpValue),
    Bool(bool),
    Rm(RoundingMode),
}

impl Value {
    pub fn fp(self) -> FpValue {
        match self {
            Value::Fp(v) => v,
            other => panic!("expected a float, got {other:?}"),
        }
    }

    pub fn boolean(self) -> bool {
        match self {
            Value::Bool(b) => b,
            other => panic!("expected a Bool, got {other:?}"),
        }
    }

    fn rm(self) -> RoundingMode {
        match self {
            Value::Rm(m) => m,
            other => panic!("expected a rounding mode, got {other:?}"),
        }
    }

    /// SMT-LIB `=`: all NaNs are one value, signed zeros differ.
    pub fn same(self, other: Value) -> bool {
        match (self, other) {
            (Value::Fp(a), Value::Fp(b)) => holds(crate::rewrite::Rel::Ident, a, b),
            _ => self == other,
        }
    }
}

/// Evaluates terms of one store under a variable assignment.
pub struct Evaluator<'a> {
    store: &'a TermStore,
    env: &'a dyn Fn(VarId) -> Value,
    macros: &'a dyn Fn(MacroId) -> TermId,
    memo: HashMap<TermId, Value>,
}

impl<'a> Evaluator<'a> {
    pub fn new(store: &'a TermStore, env: &'a dyn Fn(VarId) -> Value, macros: &'a dyn Fn(MacroId) -> TermId) -> Self {
        Evaluator {
            store,
            env,
            macros,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, id: TermId) -> Value {
        if let Some(&v) = self.memo.get(&id) {
            return v;
        }
        let node = self.store.node(id).clone();
        let v = match node.kind {
            TermKind::Var(x) => (self.env)(x),
            TermKind::Macro(m) => {
                let body = (self.macros)(m);
                self.eval(body)
            }
            TermKind::FpLit(v) => Value::Fp(v),
            TermKind::BoolLit(b) => Value::Bool(b),
            TermKind::RmLit(m) => Value::Rm(m),
            TermKind::App(op) => {
                let args: Vec<Value> = node.args.iter().map(|&a| self.eval(a)).collect();
                apply(op, &args)
            }
        };
        self.memo.insert(id, v);
        v
    }
}

fn apply(op: Op, a: &[Value]) -> Value {
    let f = |i: usize| a[i].fp();
    let b = |i: usize| a[i].boolean();
    let all_pairs = |p: &dyn Fn(FpValue, FpValue) -> bool| a.windows(2).all(|w| p(w[0].fp(), w[1].fp()));
    match op {
        Op::FpAdd => Value::Fp(arith::add(a[0].rm(), f(1), f(2))),
        Op::FpSub => Value::Fp(arith::sub(a[0].rm(), f(1), f(2))),
        Op::FpMul => Value::Fp(arith::mul(a[0].rm(), f(1), f(2))),
        Op::FpDiv => Value::Fp(arith::div(a[0].rm(), f(1), f(2))),
        Op::FpNeg => Value::Fp(f(0).negate()),
        Op::FpAbs => Value::Fp(f(0).abs()),
        Op::FpMin => Value::Fp(arith::min(f(0), f(1))),
        Op::FpMax => Value::Fp(arith::max(f(0), f(1))),
        Op::FpEq => Value::Bool(all_pairs(&arith::fp_eq)),
        Op::FpLt => Value::Bool(all_pairs(&arith::fp_lt)),
        Op::FpLeq => Value::Bool(all_pairs(&arith::fp_le)),
        Op::FpGt => Value::Bool(all_pairs(&|x, y| arith::fp_lt(y, x))),
        Op::FpGeq => Value::Bool(all_pairs(&|x, y| arith::fp_le(y, x))),
        Op::FpIsNaN => Value::Bool(f(0).is_nan()),
        Op::FpIsInfinite => Value::Bool(f(0).is_infinite()),
        Op::FpIsZero => Value::Bool(f(0).is_zero()),
        Op::Ite => {
            if b(0) {
                a[1]
            } else {
                a[2]
            }
        }
        Op::And => Value::Bool(a.iter().all(|v| v.boolean())),
        Op::Or => Value::Bool(a.iter().any(|v| v.boolean())),
        Op::Not => Value::Bool(!b(0)),
        Op::Implies => {
            let (last, prem) = a.split_last().unwrap();
            Value::Bool(!prem.iter().all(|v| v.boolean()) || last.boolean())
        }
        Op::Eq => Value::Bool(a.windows(2).all(|w| w[0].same(w[1]))),
        Op::Distinct => Value::Bool(
            (0..a.len()).all(|i| (i + 1..a.len()).all(|j| !a[i].same(a[j]))),
        ),
    }
}

/// Whether `assign` (indexed by declared variable) satisfies every assertion.
pub fn check_m0(m0: &ModelM0, assign: &[Value]) -> bool {
    let env = |v: VarId| assign[v.0 as usize];
    let macros = |m: MacroId| m0.macro_def(m).body;
    let mut ev = Evaluator::new(&m0.terms, &env, &macros);
    m0.assertions.iter().all(|&a| ev.eval(a).boolean())
}

/// Whether `assign` (indexed by M1 variable) satisfies every constraint.
pub fn check_m1(m1: &ModelM1, assign: &[Value]) -> bool {
    let env = |v: VarId| assign[v.0 as usize];
    let macros = |_: MacroId| -> TermId { panic!("macro left in an abstract model") };
    let mut ev = Evaluator::new(&m1.terms, &env, &macros);
    m1.constraints.iter().all(|&c| ev.eval(c).boolean())
}

/// Whether one elementary constraint holds on concrete values.
pub fn constraint_holds(c: &ElemConstraint, val: &dyn Fn(VarId) -> Value) -> bool {
    let f = |v: &VarId| val(*v).fp();
    let b = |v: &VarId| val(*v).boolean();
    let ident = |p: FpValue, q: FpValue| holds(crate::rewrite::Rel::Ident, p, q);
    match c {
        ElemConstraint::Arith { op, mode, z, x, y } => {
            let r = match op {
                ArithOp::Add => arith::add(*mode, f(x), f(y)),
                ArithOp::Sub => arith::sub(*mode, f(x), f(y)),
                ArithOp::Mul => arith::mul(*mode, f(x), f(y)),
                ArithOp::Div => arith::div(*mode, f(x), f(y)),
            };
            ident(f(z), r)
        }
        ElemConstraint::Square { mode, z, x } => ident(f(z), arith::mul(*mode, f(x), f(x))),
        ElemConstraint::Unary { op, z, x } => ident(
            f(z),
            match op {
                UnaryOp::Neg => f(x).negate(),
                UnaryOp::Abs => f(x).abs(),
            },
        ),
        ElemConstraint::MinMax { max, z, x, y } => ident(
            f(z),
            if *max {
                arith::max(f(x), f(y))
            } else {
                arith::min(f(x), f(y))
            },
        ),
        ElemConstraint::Cmp { rel, x, y } => holds(*rel, f(x), f(y)),
        ElemConstraint::ReifCmp { b: r, rel, x, y } => b(r) == holds(*rel, f(x), f(y)),
        ElemConstraint::Clause(lits) => lits.iter().any(|l| b(&l.var) == l.positive),
        ElemConstraint::Ite { b: c, z, x, y } => ident(f(z), if b(c) { f(x) } else { f(y) }),
        ElemConstraint::Pred { pred, b: r, x } => {
            let v = f(x);
            b(r) == match pred {
                PredKind::IsNaN => v.is_nan(),
                PredKind::IsInfinite => v.is_infinite(),
                PredKind::IsZero => v.is_zero(),
            }
        }
    }
}

/// Index of the first constraint of `m2` violated by `assign`.
pub fn first_violation(m2: &ModelM2, assign: &[Value]) -> Option<usize> {
    let val = |v: VarId| assign[v.0 as usize];
    m2.constraints.iter().position(|c| !constraint_holds(c, &val))
}

/// All values of a sort, NaN once; `None` for sorts too large to list.
pub fn values_of(sort: Sort, max_values: u64) -> Option<Vec<Value>> {
    match sort {
        Sort::Bool => Some(vec![Value::Bool(false), Value::Bool(true)]),
        Sort::RoundingMode => Some(RoundingMode::ALL.iter().map(|&m| Value::Rm(m)).collect()),
        Sort::Fp(fmt) => {
            if fmt.non_nan_count() + 1 > max_values {
                return None;
            }
            let mut v: Vec<Value> = FpValue::all_non_nan(fmt).map(Value::Fp).collect();
            v.push(Value::Fp(FpValue::nan(fmt)));
            Some(v)
        }
    }
}

/// Exhaustive search for a model of `m0`. `None` if the space exceeds
/// `max_points` assignments, otherwise the first model found, if any.
pub fn brute_force(m0: &ModelM0, max_points: u64) -> Option<Option<Vec<Value>>> {
    let mut spaces = Vec::new();
    let mut total: u64 = 1;
    for v in &m0.vars {
        let vals = values_of(v.sort, max_points)?;
        total = total.checked_mul(vals.len() as u64)?;
        if total > max_points {
            return None;
        }
        spaces.push(vals);
    }
    let mut idx = vec![0usize; spaces.len()];
    loop {
        let assign: Vec<Value> = idx.iter().zip(&spaces).map(|(&i, s)| s[i]).collect();
        if check_m0(m0, &assign) {
            return Some(Some(assign));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(None);
            }
            idx[k] += 1;
            if idx[k] < spaces[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

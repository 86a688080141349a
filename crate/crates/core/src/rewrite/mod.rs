//! Symbolic reconstruction: macro inlining (M0 to M1), common-subexpression
//! factoring, decomposition into elementary constraints (M1 to M2) and
//! detection of contradictory inequality cycles.

mod cse;
mod cycle;
mod decompose;
mod emit;
mod graph;
mod inline;

use thiserror::Error;

use crate::domain::{BoolDomain, FpDomain};
use crate::float::{FpFormat, FpValue, RoundingMode};
use crate::smtlib::{Sort, TermId, TermStore, VarId};

pub use cse::factor_cse;
pub use cycle::{detect_ineq_cycle, CycleVerdict};
pub use decompose::decompose;
pub use emit::emit_smt2;
pub use graph::ConstraintGraph;
pub use inline::{flatten_macros, identify_aux, inline_closure, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("macro {0} is defined in terms of itself")]
    CyclicDefinition(String),
    #[error("unsupported operator {0}")]
    UnsupportedOperator(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Declared by the script; the decision variables.
    Declared,
    /// A macro kept as a variable (naive reconstruction only).
    Macro,
    Cse,
    /// Fresh variable for an interior node of a decomposed term.
    Aux,
    /// Holds a literal; its domain is a singleton from the start.
    Constant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub sort: Sort,
    pub origin: Origin,
}

/// The abstract model: variables, and macro-free Boolean constraints over
/// one term DAG.
#[derive(Debug, Clone, Default)]
pub struct ModelM1 {
    pub terms: TermStore,
    pub vars: Vec<VarInfo>,
    pub constraints: Vec<TermId>,
}

impl ModelM1 {
    pub fn var(&self, v: VarId) -> &VarInfo {
        &self.vars[v.0 as usize]
    }

    /// The declared variables X1.
    pub fn decision_vars(&self) -> Vec<VarId> {
        (0..self.vars.len() as u32)
            .map(VarId)
            .filter(|&v| self.var(v).origin == Origin::Declared)
            .collect()
    }

    pub fn initial_domain(&self, v: VarId) -> Domain {
        Domain::full(self.var(v).sort)
    }

    fn fresh_name(&self, prefix: &str, counter: &mut usize) -> String {
        loop {
            let name = format!("{prefix}{counter}");
            *counter += 1;
            if !self.vars.iter().any(|v| v.name == name) {
                return name;
            }
        }
    }
}

/// A variable's domain in the concrete model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Fp(FpDomain),
    Bool(BoolDomain),
}

impl Domain {
    pub fn full(sort: Sort) -> Domain {
        match sort {
            Sort::Fp(f) => Domain::Fp(FpDomain::full(f)),
            _ => Domain::Bool(BoolDomain::UNKNOWN),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Domain::Fp(d) => d.is_empty(),
            Domain::Bool(b) => b.is_empty(),
        }
    }

    pub fn is_instantiated(&self) -> bool {
        match self {
            Domain::Fp(d) => d.is_instantiated(),
            Domain::Bool(b) => b.value().is_some(),
        }
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        match (self, other) {
            (Domain::Fp(a), Domain::Fp(b)) => Domain::Fp(a.intersect(b)),
            (Domain::Bool(a), Domain::Bool(b)) => Domain::Bool(a.intersect(b)),
            _ => panic!("intersecting domains of different sorts"),
        }
    }

    pub fn is_subset_of(&self, other: &Domain) -> bool {
        match (self, other) {
            (Domain::Fp(a), Domain::Fp(b)) => a.is_subset_of(b),
            (Domain::Bool(a), Domain::Bool(b)) => a.is_subset_of(b),
            _ => false,
        }
    }

    pub fn fp(&self) -> FpDomain {
        match self {
            Domain::Fp(d) => *d,
            Domain::Bool(_) => panic!("Bool variable used as floating-point"),
        }
    }

    pub fn boolean(&self) -> BoolDomain {
        match self {
            Domain::Bool(b) => *b,
            Domain::Fp(_) => panic!("floating-point variable used as Bool"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Abs,
}

/// Binary relations between floating-point variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    /// `fp.eq`: numeric equality, zeros equal, false on NaN.
    Eq,
    /// Negation of `fp.eq`; true on NaN.
    Ne,
    Lt,
    Le,
    /// SMT-LIB `=`: same value, NaN equal to NaN, zeros distinct.
    Ident,
    NotIdent,
}

impl Rel {
    /// The relation holding exactly when `self` does not.
    pub fn negation(self) -> Option<Rel> {
        match self {
            Rel::Eq => Some(Rel::Ne),
            Rel::Ne => Some(Rel::Eq),
            Rel::Ident => Some(Rel::NotIdent),
            Rel::NotIdent => Some(Rel::Ident),
            Rel::Lt | Rel::Le => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredKind {
    IsNaN,
    IsInfinite,
    IsZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: VarId,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: VarId) -> Lit {
        Lit { var, positive: true }
    }

    pub fn negate(self) -> Lit {
        Lit {
            positive: !self.positive,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElemConstraint {
    /// `z = x op y` rounded with `mode`.
    Arith {
        op: ArithOp,
        mode: RoundingMode,
        z: VarId,
        x: VarId,
        y: VarId,
    },
    /// `z = x * x` rounded with `mode`.
    Square { mode: RoundingMode, z: VarId, x: VarId },
    Unary { op: UnaryOp, z: VarId, x: VarId },
    /// `z = fp.max(x, y)` when `max`, else `fp.min`.
    MinMax { max: bool, z: VarId, x: VarId, y: VarId },
    Cmp { rel: Rel, x: VarId, y: VarId },
    /// `b <=> x rel y`
    ReifCmp { b: VarId, rel: Rel, x: VarId, y: VarId },
    /// Disjunction of literals.
    Clause(Vec<Lit>),
    /// `z = if b then x else y`
    Ite { b: VarId, z: VarId, x: VarId, y: VarId },
    /// `b <=> p(x)`
    Pred { pred: PredKind, b: VarId, x: VarId },
}

impl ElemConstraint {
    /// Variables in scope, in a fixed order, possibly repeated.
    pub fn scope(&self) -> Vec<VarId> {
        match self {
            ElemConstraint::Arith { z, x, y, .. } | ElemConstraint::MinMax { z, x, y, .. } => vec![*z, *x, *y],
            ElemConstraint::Square { z, x, .. } | ElemConstraint::Unary { z, x, .. } => vec![*z, *x],
            ElemConstraint::Cmp { x, y, .. } => vec![*x, *y],
            ElemConstraint::ReifCmp { b, x, y, .. } => vec![*b, *x, *y],
            ElemConstraint::Clause(lits) => lits.iter().map(|l| l.var).collect(),
            ElemConstraint::Ite { b, z, x, y } => vec![*b, *z, *x, *y],
            ElemConstraint::Pred { b, x, .. } => vec![*b, *x],
        }
    }

    /// The variable this constraint defines, for the forms `z = f(...)`.
    pub fn defined_var(&self) -> Option<VarId> {
        match self {
            ElemConstraint::Arith { z, .. }
            | ElemConstraint::Square { z, .. }
            | ElemConstraint::Unary { z, .. }
            | ElemConstraint::MinMax { z, .. }
            | ElemConstraint::Ite { z, .. } => Some(*z),
            ElemConstraint::ReifCmp { b, .. } | ElemConstraint::Pred { b, .. } => Some(*b),
            _ => None,
        }
    }
}

/// The concrete model: X2 (X1 first, in M1 order), initial domains and
/// elementary constraints.
#[derive(Debug, Clone, Default)]
pub struct ModelM2 {
    pub vars: Vec<VarInfo>,
    pub domains: Vec<Domain>,
    pub constraints: Vec<ElemConstraint>,
}

impl ModelM2 {
    pub fn var(&self, v: VarId) -> &VarInfo {
        &self.vars[v.0 as usize]
    }

    pub fn decision_vars(&self) -> Vec<VarId> {
        self.vars_with(|o| o == Origin::Declared)
    }

    /// Variables that are neither declared nor constants.
    pub fn auxiliary_vars(&self) -> Vec<VarId> {
        self.vars_with(|o| o != Origin::Declared && o != Origin::Constant)
    }

    fn vars_with(&self, keep: impl Fn(Origin) -> bool) -> Vec<VarId> {
        (0..self.vars.len() as u32)
            .map(VarId)
            .filter(|&v| keep(self.var(v).origin))
            .collect()
    }

    pub fn format_of(&self, v: VarId) -> Option<FpFormat> {
        self.var(v).sort.fp_format()
    }

    pub fn constant_value(&self, v: VarId) -> Option<FpValue> {
        match (self.var(v).origin, self.domains[v.0 as usize]) {
            (Origin::Constant, Domain::Fp(d)) => d.value(),
            _ => None,
        }
    }
}

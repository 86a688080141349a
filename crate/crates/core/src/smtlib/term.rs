use std::collections::HashMap;
use std::fmt;

use crate::float::{FpFormat, FpValue, RoundingMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Bool,
    RoundingMode,
    Fp(FpFormat),
}

impl Sort {
    pub fn fp_format(self) -> Option<FpFormat> {
        match self {
            Sort::Fp(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("Bool"),
            Sort::RoundingMode => f.write_str("RoundingMode"),
            Sort::Fp(fmt) => write!(f, "{fmt}"),
        }
    }
}

/// Operators of the supported QF_FP subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    FpAdd,
    FpSub,
    FpMul,
    FpDiv,
    FpNeg,
    FpAbs,
    FpMin,
    FpMax,
    FpEq,
    FpLt,
    FpLeq,
    FpGt,
    FpGeq,
    FpIsNaN,
    FpIsInfinite,
    FpIsZero,
    Ite,
    And,
    Or,
    Not,
    Implies,
    /// SMT-LIB `=`: identity on every sort (NaN = NaN, -0 != +0).
    Eq,
    Distinct,
}

impl Op {
    pub fn smt_name(self) -> &'static str {
        match self {
            Op::FpAdd => "fp.add",
            Op::FpSub => "fp.sub",
            Op::FpMul => "fp.mul",
            Op::FpDiv => "fp.div",
            Op::FpNeg => "fp.neg",
            Op::FpAbs => "fp.abs",
            Op::FpMin => "fp.min",
            Op::FpMax => "fp.max",
            Op::FpEq => "fp.eq",
            Op::FpLt => "fp.lt",
            Op::FpLeq => "fp.leq",
            Op::FpGt => "fp.gt",
            Op::FpGeq => "fp.geq",
            Op::FpIsNaN => "fp.isNaN",
            Op::FpIsInfinite => "fp.isInfinite",
            Op::FpIsZero => "fp.isZero",
            Op::Ite => "ite",
            Op::And => "and",
            Op::Or => "or",
            Op::Not => "not",
            Op::Implies => "=>",
            Op::Eq => "=",
            Op::Distinct => "distinct",
        }
    }

    pub fn from_smt_name(name: &str) -> Option<Op> {
        const ALL: [Op; 23] = [
            Op::FpAdd,
            Op::FpSub,
            Op::FpMul,
            Op::FpDiv,
            Op::FpNeg,
            Op::FpAbs,
            Op::FpMin,
            Op::FpMax,
            Op::FpEq,
            Op::FpLt,
            Op::FpLeq,
            Op::FpGt,
            Op::FpGeq,
            Op::FpIsNaN,
            Op::FpIsInfinite,
            Op::FpIsZero,
            Op::Ite,
            Op::And,
            Op::Or,
            Op::Not,
            Op::Implies,
            Op::Eq,
            Op::Distinct,
        ];
        ALL.into_iter().find(|op| op.smt_name() == name)
    }

    /// Rounded binary arithmetic taking a rounding-mode first argument.
    pub fn is_rounded_arith(self) -> bool {
        matches!(self, Op::FpAdd | Op::FpSub | Op::FpMul | Op::FpDiv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MacroId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(VarId),
    /// Reference to a `define-fun` macro, resolved by inlining.
    Macro(MacroId),
    FpLit(FpValue),
    BoolLit(bool),
    RmLit(RoundingMode),
    App(Op),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub kind: TermKind,
    pub args: Vec<TermId>,
    pub sort: Sort,
}

/// Hash-consed expression DAG: structurally equal terms share one id.
#[derive(Debug, Clone, Default)]
pub struct TermStore {
    nodes: Vec<Node>,
    index: HashMap<Node, TermId>,
}

impl TermStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mk(&mut self, kind: TermKind, args: Vec<TermId>, sort: Sort) -> TermId {
        let node = Node { kind, args, sort };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = TermId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn var(&mut self, v: VarId, sort: Sort) -> TermId {
        self.mk(TermKind::Var(v), Vec::new(), sort)
    }

    pub fn fp_lit(&mut self, v: FpValue) -> TermId {
        self.mk(TermKind::FpLit(v), Vec::new(), Sort::Fp(v.format()))
    }

    pub fn bool_lit(&mut self, b: bool) -> TermId {
        self.mk(TermKind::BoolLit(b), Vec::new(), Sort::Bool)
    }

    pub fn rm_lit(&mut self, m: RoundingMode) -> TermId {
        self.mk(TermKind::RmLit(m), Vec::new(), Sort::RoundingMode)
    }

    /// Application whose sort has already been checked by the caller.
    pub fn app(&mut self, op: Op, args: Vec<TermId>, sort: Sort) -> TermId {
        self.mk(TermKind::App(op), args, sort)
    }

    pub fn node(&self, id: TermId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub fn sort(&self, id: TermId) -> Sort {
        self.node(id).sort
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_leaf(&self, id: TermId) -> bool {
        self.node(id).args.is_empty()
    }

    /// Ids reachable from `roots`, children before parents.
    pub fn post_order(&self, roots: &[TermId]) -> Vec<TermId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut stack: Vec<(TermId, bool)> = roots.iter().rev().map(|&r| (r, false)).collect();
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                out.push(id);
                continue;
            }
            if seen[id.0 as usize] {
                continue;
            }
            seen[id.0 as usize] = true;
            stack.push((id, true));
            for &c in self.node(id).args.iter().rev() {
                if !seen[c.0 as usize] {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Structural equality across two stores, with variables compared by
    /// `var_eq` and macros never equal.
    pub fn tree_eq(
        &self,
        a: TermId,
        other: &TermStore,
        b: TermId,
        var_eq: &dyn Fn(VarId, VarId) -> bool,
    ) -> bool {
        let na = self.node(a);
        let nb = other.node(b);
        if na.sort != nb.sort || na.args.len() != nb.args.len() {
            return false;
        }
        let kinds_match = match (na.kind, nb.kind) {
            (TermKind::Var(x), TermKind::Var(y)) => var_eq(x, y),
            (TermKind::Macro(_), _) | (_, TermKind::Macro(_)) => false,
            (ka, kb) => ka == kb,
        };
        kinds_match
            && na
                .args
                .iter()
                .zip(&nb.args)
                .all(|(&x, &y)| self.tree_eq(x, other, y, var_eq))
    }
}

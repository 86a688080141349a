use std::collections::BTreeSet;
use std::fmt::Write;

use super::{ModelM1, ModelM2, Origin, VarInfo};
use crate::smtlib::{quote_symbol, TermKind, VarId};

/// Undirected variable co-occurrence graph. Constants are not nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    pub names: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl ConstraintGraph {
    fn build(vars: &[VarInfo], scopes: impl Iterator<Item = Vec<VarId>>) -> Self {
        let mut index = vec![None; vars.len()];
        let mut names = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            if v.origin != Origin::Constant {
                index[i] = Some(names.len());
                names.push(v.name.clone());
            }
        }
        let mut edges = BTreeSet::new();
        for scope in scopes {
            let ids: BTreeSet<usize> = scope.iter().filter_map(|v| index[v.0 as usize]).collect();
            let ids: Vec<usize> = ids.into_iter().collect();
            for (k, &a) in ids.iter().enumerate() {
                for &b in &ids[k + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        ConstraintGraph { names, edges }
    }

    pub fn of_m1(m: &ModelM1) -> Self {
        let scopes = m.constraints.iter().map(|&c| {
            m.terms
                .post_order(&[c])
                .into_iter()
                .filter_map(|t| match m.terms.node(t).kind {
                    TermKind::Var(v) => Some(v),
                    _ => None,
                })
                .collect()
        });
        Self::build(&m.vars, scopes)
    }

    pub fn of_m2(m: &ModelM2) -> Self {
        Self::build(&m.vars, m.constraints.iter().map(|c| c.scope()))
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph constraints {\n");
        for (i, n) in self.names.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", quote_symbol(n).replace('"', "\\\"")).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "  n{a} -- n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

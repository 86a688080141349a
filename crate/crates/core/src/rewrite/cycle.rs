use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{ElemConstraint, ModelM2, Origin, Rel};
use crate::smtlib::VarId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleVerdict {
    NoCycle,
    /// Indices into the model's constraints forming a cycle with at least
    /// one strict inequality.
    Unsat(Vec<usize>),
}

/// Looks for a cycle of asserted comparisons between variables whose total
/// strictness is positive. Only top-level [`ElemConstraint::Cmp`] with
/// `Lt`, `Le`, `Eq` or `Ident` count; constants are skipped.
pub fn detect_ineq_cycle(m2: &ModelM2) -> CycleVerdict {
    let mut g: DiGraph<VarId, (usize, bool)> = DiGraph::new();
    let mut nodes: HashMap<VarId, NodeIndex> = HashMap::new();
    let mut node = |g: &mut DiGraph<VarId, (usize, bool)>, v: VarId| *nodes.entry(v).or_insert_with(|| g.add_node(v));
    for (i, c) in m2.constraints.iter().enumerate() {
        let ElemConstraint::Cmp { rel, x, y } = *c else { continue };
        if m2.var(x).origin == Origin::Constant || m2.var(y).origin == Origin::Constant {
            continue;
        }
        let (a, b) = (node(&mut g, x), node(&mut g, y));
        match rel {
            Rel::Lt => {
                g.add_edge(a, b, (i, true));
            }
            Rel::Le => {
                g.add_edge(a, b, (i, false));
            }
            Rel::Eq | Rel::Ident => {
                g.add_edge(a, b, (i, false));
                g.add_edge(b, a, (i, false));
            }
            Rel::Ne | Rel::NotIdent => {}
        }
    }
    let sccs = tarjan_scc(&g);
    let mut comp = vec![usize::MAX; g.node_count()];
    for (k, scc) in sccs.iter().enumerate() {
        for n in scc {
            comp[n.index()] = k;
        }
    }
    for e in g.edge_indices() {
        let (i, strict) = g[e];
        let (a, b) = g.edge_endpoints(e).unwrap();
        if !strict || comp[a.index()] != comp[b.index()] {
            continue;
        }
        // close the cycle with a shortest path b ~> a inside the component
        let mut prev: HashMap<NodeIndex, (NodeIndex, usize)> = HashMap::new();
        let mut queue = VecDeque::from([b]);
        while let Some(n) = queue.pop_front() {
            if n == a {
                break;
            }
            for er in g.edges(n) {
                use petgraph::visit::EdgeRef;
                let t = er.target();
                if comp[t.index()] == comp[a.index()] && t != b && !prev.contains_key(&t) {
                    prev.insert(t, (n, er.weight().0));
                    queue.push_back(t);
                }
            }
        }
        let mut witness = vec![i];
        let mut cur = a;
        while cur != b {
            let (p, c) = prev[&cur];
            witness.push(c);
            cur = p;
        }
        witness.sort_unstable();
        witness.dedup();
        return CycleVerdict::Unsat(witness);
    }
    CycleVerdict::NoCycle
}

use std::collections::HashMap;

use super::{ModelM1, Origin, VarInfo};
use crate::smtlib::{Op, Sort, TermId, TermKind, VarId};

/// Replaces every non-leaf floating-point subterm referenced at least twice
/// by a fresh `__cse<k>` variable defined once by `(= __cse<k> body)`.
///
/// Sharing is structural (hash-consed ids), so two subterms that differ only
/// in rounding mode are distinct.
pub fn factor_cse(m1: &ModelM1) -> ModelM1 {
    let order = m1.terms.post_order(&m1.constraints);
    let mut refs: HashMap<TermId, usize> = HashMap::new();
    for &t in &order {
        for &a in &m1.terms.node(t).args {
            *refs.entry(a).or_default() += 1;
        }
    }
    for &c in &m1.constraints {
        *refs.entry(c).or_default() += 1;
    }

    let mut out = ModelM1 {
        terms: m1.terms.clone(),
        vars: m1.vars.clone(),
        constraints: Vec::new(),
    };
    let mut counter = 0;
    let mut map: HashMap<TermId, TermId> = HashMap::new();
    let mut defs = Vec::new();
    for &t in &order {
        let node = m1.terms.node(t).clone();
        let args: Vec<TermId> = node.args.iter().map(|a| map[a]).collect();
        let rebuilt = if args == node.args {
            t
        } else {
            out.terms.mk(node.kind, args, node.sort)
        };
        let shared = matches!(node.sort, Sort::Fp(_))
            && matches!(node.kind, TermKind::App(_))
            && refs.get(&t).copied().unwrap_or(0) >= 2;
        if shared {
            let name = out.fresh_name("__cse", &mut counter);
            let v = VarId(out.vars.len() as u32);
            out.vars.push(VarInfo {
                name,
                sort: node.sort,
                origin: Origin::Cse,
            });
            let var_t = out.terms.var(v, node.sort);
            defs.push(out.terms.app(Op::Eq, vec![var_t, rebuilt], Sort::Bool));
            map.insert(t, var_t);
        } else {
            map.insert(t, rebuilt);
        }
    }
    out.constraints = defs;
    out.constraints.extend(m1.constraints.iter().map(|c| map[c]));
    out
}

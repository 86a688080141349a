use std::collections::HashMap;
use std::fmt::Write;

use super::ModelM1;
use crate::smtlib::{quote_symbol, term_to_string, Node, TermId, TermKind};

/// Writes M1 as a standalone SMT-LIB script. Subterms referenced more than
/// once are bound by `define-fun` so the output stays linear in the DAG.
pub fn emit_smt2(m: &ModelM1) -> String {
    let order = m.terms.post_order(&m.constraints);
    let mut refs: HashMap<TermId, usize> = HashMap::new();
    for &t in &order {
        for &a in &m.terms.node(t).args {
            *refs.entry(a).or_default() += 1;
        }
    }
    let mut out = String::from("(set-logic QF_FP)\n");
    for v in &m.vars {
        writeln!(out, "(declare-fun {} () {})", quote_symbol(&v.name), v.sort).unwrap();
    }
    let mut shared: HashMap<TermId, String> = HashMap::new();
    let mut k = 0;
    for &t in &order {
        let node = m.terms.node(t);
        if node.args.is_empty() || refs.get(&t).copied().unwrap_or(0) < 2 {
            continue;
        }
        let name = loop {
            let n = format!("__s{k}");
            k += 1;
            if !m.vars.iter().any(|v| v.name == n) {
                break n;
            }
        };
        let body = term_to_string(&m.terms, t, &|id, n| namer(m, &shared, id, n, t));
        writeln!(out, "(define-fun {name} () {} {body})", node.sort).unwrap();
        shared.insert(t, name);
    }
    for &c in &m.constraints {
        let body = term_to_string(&m.terms, c, &|id, n| namer(m, &shared, id, n, c));
        writeln!(out, "(assert {body})").unwrap();
    }
    out.push_str("(check-sat)\n");
    out
}

fn namer(m: &ModelM1, shared: &HashMap<TermId, String>, id: TermId, n: &Node, root: TermId) -> Option<String> {
    match n.kind {
        TermKind::Var(v) => Some(m.var(v).name.clone()),
        _ if id != root => shared.get(&id).cloned(),
        _ => None,
    }
}

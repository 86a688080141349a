use std::fmt::Write;

use super::lexer::is_simple_symbol;
use super::parser::ModelM0;
use super::term::{Node, TermId, TermKind, TermStore};

pub fn quote_symbol(name: &str) -> String {
    if is_simple_symbol(name) {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

/// Prints `id` as an s-expression. `name_of` may replace any node by a name;
/// it must do so for variables and macro references.
pub fn term_to_string(store: &TermStore, id: TermId, name_of: &dyn Fn(TermId, &Node) -> Option<String>) -> String {
    let mut out = String::new();
    write_term(&mut out, store, id, name_of);
    out
}

fn write_term(out: &mut String, store: &TermStore, id: TermId, name_of: &dyn Fn(TermId, &Node) -> Option<String>) {
    let node = store.node(id);
    if let Some(name) = name_of(id, node) {
        out.push_str(&quote_symbol(&name));
        return;
    }
    match node.kind {
        TermKind::Var(v) => write!(out, "?v{}", v.0).unwrap(),
        TermKind::Macro(m) => write!(out, "?m{}", m.0).unwrap(),
        TermKind::FpLit(v) => write!(out, "{v}").unwrap(),
        TermKind::BoolLit(b) => write!(out, "{b}").unwrap(),
        TermKind::RmLit(m) => out.push_str(m.smt_name()),
        TermKind::App(op) => {
            out.push('(');
            out.push_str(op.smt_name());
            for &a in &node.args {
                out.push(' ');
                write_term(out, store, a, name_of);
            }
            out.push(')');
        }
    }
}

/// Re-emits a parsed script with its macros as `define-fun`s.
pub fn print_m0(m: &ModelM0) -> String {
    let name_of = |_: TermId, n: &Node| match n.kind {
        TermKind::Var(v) => Some(m.vars[v.0 as usize].name.clone()),
        TermKind::Macro(id) => Some(m.macro_def(id).name.clone()),
        _ => None,
    };
    let mut out = String::new();
    if let Some(l) = &m.logic {
        writeln!(out, "(set-logic {l})").unwrap();
    }
    for v in &m.vars {
        writeln!(out, "(declare-fun {} () {})", quote_symbol(&v.name), v.sort).unwrap();
    }
    for d in &m.macros {
        writeln!(
            out,
            "(define-fun {} () {} {})",
            quote_symbol(&d.name),
            d.sort,
            term_to_string(&m.terms, d.body, &name_of)
        )
        .unwrap();
    }
    for &a in &m.assertions {
        writeln!(out, "(assert {})", term_to_string(&m.terms, a, &name_of)).unwrap();
    }
    out.push_str("(check-sat)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse_str;

    #[test]
    fn print_parse_fixpoint() {
        let src = "(set-logic QF_FP)
            (declare-fun |odd name| () Float32)
            (define-fun m () RoundingMode RTZ)
            (define-fun a () Float32 (fp.div m |odd name| (_ -zero 8 24)))
            (assert (or (fp.isNaN a) (=> (fp.lt a (_ +oo 8 24)) (distinct a |odd name|))))";
        let once = print_m0(&parse_str(src).unwrap());
        let twice = print_m0(&parse_str(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.contains("(_ -zero 8 24)"));
    }
}

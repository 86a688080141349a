use std::collections::HashMap;

use super::{ModelM1, Origin, RewriteError, VarInfo};
use crate::smtlib::{MacroId, ModelM0, Sort, TermId, TermKind, TermStore, VarId};

/// Macro definitions versus asserted constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub aux: Vec<MacroId>,
    pub main: Vec<TermId>,
}

pub fn identify_aux(m0: &ModelM0) -> Partition {
    Partition {
        aux: (0..m0.macros.len() as u32).map(MacroId).collect(),
        main: m0.assertions.clone(),
    }
}

/// Substitutes every macro by its body, transitively. Shared subterms stay
/// shared in the new DAG.
pub fn inline_closure(m0: &ModelM0) -> Result<ModelM1, RewriteError> {
    let vars = m0
        .vars
        .iter()
        .map(|v| VarInfo {
            name: v.name.clone(),
            sort: v.sort,
            origin: Origin::Declared,
        })
        .collect();
    let mut cx = Copier::new(m0, |_| false);
    let constraints = m0
        .assertions
        .iter()
        .map(|&a| cx.copy(a))
        .collect::<Result<_, _>>()?;
    Ok(ModelM1 {
        terms: cx.out,
        vars,
        constraints,
    })
}

/// The naive reading of M0: every non rounding-mode macro becomes a variable
/// constrained by `(= name body)`.
pub fn flatten_macros(m0: &ModelM0) -> Result<ModelM1, RewriteError> {
    let mut vars: Vec<VarInfo> = m0
        .vars
        .iter()
        .map(|v| VarInfo {
            name: v.name.clone(),
            sort: v.sort,
            origin: Origin::Declared,
        })
        .collect();
    let mut kept = HashMap::new();
    for (i, d) in m0.macros.iter().enumerate() {
        if d.sort != Sort::RoundingMode {
            kept.insert(MacroId(i as u32), VarId(vars.len() as u32));
            vars.push(VarInfo {
                name: d.name.clone(),
                sort: d.sort,
                origin: Origin::Macro,
            });
        }
    }
    let mut cx = Copier::new(m0, |m| kept.contains_key(&m));
    cx.as_var = kept.clone();
    let mut constraints = Vec::new();
    for (i, d) in m0.macros.iter().enumerate() {
        if let Some(&v) = kept.get(&MacroId(i as u32)) {
            let body = cx.copy(d.body)?;
            let lhs = cx.out.var(v, d.sort);
            constraints.push(cx.out.app(crate::smtlib::Op::Eq, vec![lhs, body], Sort::Bool));
        }
    }
    for &a in &m0.assertions {
        constraints.push(cx.copy(a)?);
    }
    Ok(ModelM1 {
        terms: cx.out,
        vars,
        constraints,
    })
}

struct Copier<'a, F> {
    m0: &'a ModelM0,
    out: TermStore,
    memo: HashMap<TermId, TermId>,
    macro_memo: HashMap<MacroId, TermId>,
    in_progress: Vec<MacroId>,
    keep_macro: F,
    as_var: HashMap<MacroId, VarId>,
}

impl<'a, F: Fn(MacroId) -> bool> Copier<'a, F> {
    fn new(m0: &'a ModelM0, keep_macro: F) -> Self {
        Copier {
            m0,
            out: TermStore::new(),
            memo: HashMap::new(),
            macro_memo: HashMap::new(),
            in_progress: Vec::new(),
            keep_macro,
            as_var: HashMap::new(),
        }
    }

    fn copy(&mut self, t: TermId) -> Result<TermId, RewriteError> {
        if let Some(&r) = self.memo.get(&t) {
            return Ok(r);
        }
        let node = self.m0.terms.node(t).clone();
        let r = match node.kind {
            TermKind::Macro(m) if (self.keep_macro)(m) => self.out.var(self.as_var[&m], node.sort),
            TermKind::Macro(m) => self.expand(m)?,
            kind => {
                let mut args = Vec::with_capacity(node.args.len());
                for a in node.args {
                    args.push(self.copy(a)?);
                }
                self.out.mk(kind, args, node.sort)
            }
        };
        self.memo.insert(t, r);
        Ok(r)
    }

    fn expand(&mut self, m: MacroId) -> Result<TermId, RewriteError> {
        if let Some(&r) = self.macro_memo.get(&m) {
            return Ok(r);
        }
        if self.in_progress.contains(&m) {
            return Err(RewriteError::CyclicDefinition(self.m0.macro_def(m).name.clone()));
        }
        self.in_progress.push(m);
        let r = self.copy(self.m0.macro_def(m).body);
        self.in_progress.pop();
        let r = r?;
        self.macro_memo.insert(m, r);
        Ok(r)
    }
}

//! Brute-force oracles built on concrete IEEE evaluation only.

use fpcp_core::domain::{BoolDomain, FpDomain};
use fpcp_core::eval::{check_m1, constraint_holds, Evaluator, Value};
use fpcp_core::float::{arith, FpFormat, FpValue};
use fpcp_core::propagation::{holds, project};
use fpcp_core::rewrite::{ArithOp, Domain, ElemConstraint, ModelM1, ModelM2, Origin, PredKind, UnaryOp};
use fpcp_core::smtlib::{MacroId, Op, TermId, TermKind, VarId};

/// Value of the variable a functional constraint defines.
pub fn image(c: &ElemConstraint, val: &dyn Fn(VarId) -> Value) -> Value {
    let f = |v: &VarId| val(*v).fp();
    match c {
        ElemConstraint::Arith { op, mode, x, y, .. } => Value::Fp(match op {
            ArithOp::Add => arith::add(*mode, f(x), f(y)),
            ArithOp::Sub => arith::sub(*mode, f(x), f(y)),
            ArithOp::Mul => arith::mul(*mode, f(x), f(y)),
            ArithOp::Div => arith::div(*mode, f(x), f(y)),
        }),
        ElemConstraint::Square { mode, x, .. } => Value::Fp(arith::mul(*mode, f(x), f(x))),
        ElemConstraint::Unary { op: UnaryOp::Neg, x, .. } => Value::Fp(f(x).negate()),
        ElemConstraint::Unary { op: UnaryOp::Abs, x, .. } => Value::Fp(f(x).abs()),
        ElemConstraint::MinMax { max, x, y, .. } => Value::Fp(if *max {
            arith::max(f(x), f(y))
        } else {
            arith::min(f(x), f(y))
        }),
        ElemConstraint::ReifCmp { rel, x, y, .. } => Value::Bool(holds(*rel, f(x), f(y))),
        ElemConstraint::Ite { b, x, y, .. } => Value::Fp(if val(*b).boolean() { f(x) } else { f(y) }),
        ElemConstraint::Pred { pred, x, .. } => Value::Bool(match pred {
            PredKind::IsNaN => f(x).is_nan(),
            PredKind::IsInfinite => f(x).is_infinite(),
            PredKind::IsZero => f(x).is_zero(),
        }),
        ElemConstraint::Cmp { .. } | ElemConstraint::Clause(_) => panic!("not functional: {c:?}"),
    }
}

// ---------------------------------------------------------------------------
// projection soundness

/// Intervals with both ends on `lattice`, each with and without NaN, plus NaN
/// alone.
pub fn fp_family(fmt: FpFormat, lattice: &[i64]) -> Vec<Domain> {
    let mut out = vec![Domain::Fp(FpDomain::nan_only(fmt))];
    for (i, &lo) in lattice.iter().enumerate() {
        for &hi in &lattice[i..] {
            for nan in [false, true] {
                out.push(Domain::Fp(FpDomain::from_ordinals(fmt, lo, hi, nan)));
            }
        }
    }
    out
}

/// Evenly spaced ordinals plus the zeros, ±1 ulp around them and the ends.
pub fn lattice(fmt: FpFormat, step: usize) -> Vec<i64> {
    let (min, max) = (fmt.min_ordinal(), fmt.max_ordinal());
    let mut l: Vec<i64> = (min..=max).step_by(step).chain([max, -2, -1, 0, 1]).collect();
    l.sort_unstable();
    l.dedup();
    l
}

pub fn bool_family() -> Vec<Domain> {
    vec![
        Domain::Bool(BoolDomain::FALSE),
        Domain::Bool(BoolDomain::TRUE),
        Domain::Bool(BoolDomain::UNKNOWN),
    ]
}

/// Every value of a domain, NaN once.
pub fn members(d: &Domain) -> Vec<Value> {
    match d {
        Domain::Bool(b) => [false, true].into_iter().filter(|&v| b.can_be(v)).map(Value::Bool).collect(),
        Domain::Fp(d) => {
            let fmt = d.format();
            let mut v: Vec<Value> = if d.numeric_empty() {
                Vec::new()
            } else {
                (d.lo()..=d.hi())
                    .map(|o| Value::Fp(FpValue::from_ordinal(fmt, o).unwrap()))
                    .collect()
            };
            if d.may_nan() {
                v.push(Value::Fp(FpValue::nan(fmt)));
            }
            v
        }
    }
}

/// Smallest box shape holding a set of values of one variable.
#[derive(Debug, Clone, Copy)]
struct Hull {
    lo: i64,
    hi: i64,
    nan: bool,
    f: bool,
    t: bool,
}

impl Default for Hull {
    fn default() -> Self {
        Hull {
            lo: i64::MAX,
            hi: i64::MIN,
            nan: false,
            f: false,
            t: false,
        }
    }
}

impl Hull {
    fn add(&mut self, v: Value) {
        match v {
            Value::Bool(false) => self.f = true,
            Value::Bool(true) => self.t = true,
            Value::Fp(x) => match x.ordinal() {
                Ok(o) => {
                    self.lo = self.lo.min(o);
                    self.hi = self.hi.max(o);
                }
                Err(_) => self.nan = true,
            },
            Value::Rm(_) => unreachable!(),
        }
    }

    fn merge(&mut self, o: &Hull) {
        self.lo = self.lo.min(o.lo);
        self.hi = self.hi.max(o.hi);
        self.nan |= o.nan;
        self.f |= o.f;
        self.t |= o.t;
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi && !self.nan && !self.f && !self.t
    }

    fn within(&self, d: &Domain) -> bool {
        match d {
            Domain::Bool(b) => (!self.f || b.can_be(false)) && (!self.t || b.can_be(true)),
            Domain::Fp(d) => {
                (self.lo > self.hi || (d.contains_ordinal(self.lo) && d.contains_ordinal(self.hi)))
                    && (!self.nan || d.may_nan())
            }
        }
    }
}

fn narrowed(c: &ElemConstraint, boxd: &[Domain]) -> Vec<Domain> {
    let mut out = boxd.to_vec();
    for (v, d) in project(c, |v| boxd[v.0 as usize]) {
        let i = v.0 as usize;
        out[i] = out[i].intersect(&d);
    }
    out
}

fn describe(boxd: &[Domain], after: &[Domain], lost: usize) -> String {
    format!("box {boxd:?} narrowed to {after:?} loses solutions of variable {lost}")
}

/// Odometer over index vectors with the given radices.
fn next_index(idx: &mut [usize], radix: &[usize]) -> bool {
    for k in 0..idx.len() {
        idx[k] += 1;
        if idx[k] < radix[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Projection soundness over every box drawn from `fams` (one family per
/// variable, variables numbered from 0): every solution in a box is still
/// in the narrowed box. Returns the number of boxes with a solution.
pub fn check_generic(c: &ElemConstraint, fams: &[Vec<Domain>]) -> Result<u64, String> {
    let n = fams.len();
    let mems: Vec<Vec<Vec<Value>>> = fams.iter().map(|f| f.iter().map(members).collect()).collect();
    let radix: Vec<usize> = fams.iter().map(Vec::len).collect();
    let mut idx = vec![0; n];
    let mut boxes = 0;
    loop {
        let boxd: Vec<Domain> = (0..n).map(|i| fams[i][idx[i]]).collect();
        let m: Vec<&Vec<Value>> = (0..n).map(|i| &mems[i][idx[i]]).collect();
        if m.iter().all(|v| !v.is_empty()) {
            let mut hulls = vec![Hull::default(); n];
            let mut t = vec![0; n];
            let sizes: Vec<usize> = m.iter().map(|v| v.len()).collect();
            let mut any = false;
            loop {
                let val = |v: VarId| m[v.0 as usize][t[v.0 as usize]];
                if constraint_holds(c, &val) {
                    any = true;
                    for i in 0..n {
                        hulls[i].add(m[i][t[i]]);
                    }
                }
                if !next_index(&mut t, &sizes) {
                    break;
                }
            }
            if any {
                boxes += 1;
                let after = narrowed(c, &boxd);
                if let Some(i) = (0..n).find(|&i| !hulls[i].within(&after[i])) {
                    return Err(describe(&boxd, &after, i));
                }
            }
        }
        if !next_index(&mut idx, &radix) {
            return Ok(boxes);
        }
    }
}

/// Same as [`check_generic`] for a constraint that defines variable `out`
/// as a function of the others, which must not alias `out`. Solutions are
/// tabulated once and grouped by the output family's atoms.
pub fn check_functional(c: &ElemConstraint, out: usize, fams: &[Vec<Domain>], full: &[Domain]) -> Result<u64, String> {
    let n = fams.len();
    let inputs: Vec<usize> = (0..n).filter(|&i| i != out).collect();
    let universe: Vec<Vec<Value>> = full.iter().map(members).collect();

    // atoms: classes of output values with equal membership across the family
    let out_vals = &universe[out];
    let mut atom_of = Vec::with_capacity(out_vals.len());
    let mut sigs: Vec<Vec<bool>> = Vec::new();
    let contains = |d: &Domain, v: Value| match (d, v) {
        (Domain::Bool(b), Value::Bool(x)) => b.can_be(x),
        (Domain::Fp(d), Value::Fp(x)) => d.contains(x),
        _ => false,
    };
    for &v in out_vals {
        let sig: Vec<bool> = fams[out].iter().map(|d| contains(d, v)).collect();
        let a = match sigs.iter().position(|s| *s == sig) {
            Some(a) => a,
            None => {
                sigs.push(sig);
                sigs.len() - 1
            }
        };
        atom_of.push(a);
    }
    let atoms_of_member: Vec<Vec<usize>> = (0..fams[out].len())
        .map(|m| (0..sigs.len()).filter(|&a| sigs[a][m]).collect())
        .collect();

    // table over the full input space: (atom, output value)
    let in_sizes: Vec<usize> = inputs.iter().map(|&i| universe[i].len()).collect();
    let stride: Vec<usize> = (0..inputs.len())
        .map(|k| in_sizes[..k].iter().product())
        .collect();
    let total: usize = in_sizes.iter().product();
    let mut table = Vec::with_capacity(total);
    let mut t = vec![0; inputs.len()];
    let mut env = vec![Value::Bool(false); n];
    loop {
        for (k, &i) in inputs.iter().enumerate() {
            env[i] = universe[i][t[k]];
        }
        let r = image(c, &|v| env[v.0 as usize]);
        env[out] = r;
        debug_assert!(constraint_holds(c, &|v| env[v.0 as usize]));
        let a = out_vals.iter().position(|&w| w.same(r)).map(|p| atom_of[p]);
        table.push(a.map(|a| (a, r)));
        if !next_index(&mut t, &in_sizes) {
            break;
        }
    }

    // positions of each family member inside the universe
    let pos_of = |i: usize, d: &Domain| -> Vec<usize> {
        members(d)
            .into_iter()
            .map(|v| universe[i].iter().position(|&w| w.same(v)).unwrap())
            .collect()
    };
    let in_pos: Vec<Vec<Vec<usize>>> = inputs
        .iter()
        .map(|&i| fams[i].iter().map(|d| pos_of(i, d)).collect())
        .collect();
    let radix: Vec<usize> = inputs.iter().map(|&i| fams[i].len()).collect();
    let mut idx = vec![0; inputs.len()];
    let mut boxes = 0;
    let mut bins = vec![vec![Hull::default(); n]; sigs.len()];
    loop {
        let pos: Vec<&Vec<usize>> = (0..inputs.len()).map(|k| &in_pos[k][idx[k]]).collect();
        if pos.iter().all(|p| !p.is_empty()) {
            for b in bins.iter_mut() {
                b.fill(Hull::default());
            }
            let sizes: Vec<usize> = pos.iter().map(|p| p.len()).collect();
            let mut t = vec![0; inputs.len()];
            loop {
                let flat: usize = (0..inputs.len()).map(|k| pos[k][t[k]] * stride[k]).sum();
                if let Some((a, r)) = table[flat] {
                    let bin = &mut bins[a];
                    for (k, &i) in inputs.iter().enumerate() {
                        bin[i].add(universe[i][pos[k][t[k]]]);
                    }
                    bin[out].add(r);
                }
                if !next_index(&mut t, &sizes) {
                    break;
                }
            }
            let mut boxd: Vec<Domain> = full.to_vec();
            for (k, &i) in inputs.iter().enumerate() {
                boxd[i] = fams[i][idx[k]];
            }
            for (m, atoms) in atoms_of_member.iter().enumerate() {
                let mut hulls = vec![Hull::default(); n];
                for &a in atoms {
                    for i in 0..n {
                        hulls[i].merge(&bins[a][i]);
                    }
                }
                if hulls[out].is_empty() {
                    continue;
                }
                boxes += 1;
                boxd[out] = fams[out][m];
                let after = narrowed(c, &boxd);
                if let Some(i) = (0..n).find(|&i| !hulls[i].within(&after[i])) {
                    return Err(describe(&boxd, &after, i));
                }
            }
        }
        if !next_index(&mut idx, &radix) {
            return Ok(boxes);
        }
    }
}

// ---------------------------------------------------------------------------
// rewrite equisatisfiability

/// Whether values for the declared variables of `m1` extend to its CSE
/// variables so that every constraint holds. CSE definitions come first and
/// in dependency order, so each is evaluated forward.
pub fn m1_extends(m1: &ModelM1, declared: &[Value]) -> bool {
    let mut vals: Vec<Option<Value>> = vec![None; m1.vars.len()];
    let mut next = declared.iter();
    for (i, v) in m1.vars.iter().enumerate() {
        if v.origin == Origin::Declared {
            vals[i] = next.next().copied();
        }
    }
    let no_macro = |_: MacroId| -> TermId { unreachable!() };
    for &c in &m1.constraints {
        let node = m1.terms.node(c);
        if node.kind != TermKind::App(Op::Eq) || node.args.len() != 2 {
            continue;
        }
        let TermKind::Var(v) = m1.terms.node(node.args[0]).kind else { continue };
        if m1.var(v).origin != Origin::Cse {
            continue;
        }
        let env = |x: VarId| vals[x.0 as usize].expect("CSE definition out of order");
        let r = Evaluator::new(&m1.terms, &env, &no_macro).eval(node.args[1]);
        vals[v.0 as usize] = Some(r);
    }
    let full: Vec<Value> = vals.into_iter().map(|v| v.expect("undefined CSE variable")).collect();
    check_m1(m1, &full)
}

/// Whether values for the declared variables of `m2` extend to all its
/// other variables. Defined variables are evaluated forward; the remaining
/// Boolean gates are enumerated.
pub fn m2_extends(m2: &ModelM2, declared: &[Value]) -> bool {
    let mut vals: Vec<Option<Value>> = vec![None; m2.vars.len()];
    let mut next = declared.iter();
    for (i, v) in m2.vars.iter().enumerate() {
        match v.origin {
            Origin::Declared => vals[i] = next.next().copied(),
            Origin::Constant => {
                vals[i] = Some(match m2.domains[i] {
                    Domain::Fp(d) => Value::Fp(d.value().unwrap_or_else(|| FpValue::nan(d.format()))),
                    Domain::Bool(b) => Value::Bool(b.value().expect("constant Bool")),
                })
            }
            _ => {}
        }
    }
    extend(m2, vals)
}

fn in_domain(d: &Domain, v: Value) -> bool {
    match (d, v) {
        (Domain::Fp(d), Value::Fp(x)) => d.contains(x),
        (Domain::Bool(b), Value::Bool(x)) => b.can_be(x),
        _ => false,
    }
}

fn extend(m2: &ModelM2, mut vals: Vec<Option<Value>>) -> bool {
    loop {
        let mut progress = false;
        for c in &m2.constraints {
            let Some(d) = c.defined_var() else { continue };
            if vals[d.0 as usize].is_some() {
                continue;
            }
            let scope = c.scope();
            if scope.iter().any(|&v| v != d && vals[v.0 as usize].is_none()) {
                continue;
            }
            if scope.iter().filter(|&&v| v == d).count() > 1 {
                continue;
            }
            let r = image(c, &|v| vals[v.0 as usize].unwrap());
            vals[d.0 as usize] = Some(r);
            progress = true;
        }
        for c in &m2.constraints {
            if c.scope().iter().all(|v| vals[v.0 as usize].is_some())
                && !constraint_holds(c, &|v| vals[v.0 as usize].unwrap())
            {
                return false;
            }
        }
        if !progress {
            break;
        }
    }
    for (i, v) in vals.iter().enumerate() {
        if let Some(v) = v {
            if !in_domain(&m2.domains[i], *v) {
                return false;
            }
        }
    }
    match vals.iter().position(Option::is_none) {
        None => true,
        Some(i) => {
            assert!(matches!(m2.domains[i], Domain::Bool(_)), "floating-point variable {} not determined", m2.vars[i].name);
            [false, true].into_iter().any(|b| {
                let mut w = vals.clone();
                w[i] = Some(Value::Bool(b));
                extend(m2, w)
            })
        }
    }
}

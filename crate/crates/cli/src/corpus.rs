//! Deterministic generators of SMT-LIB test instances.

use fpcp_core::{FpFormat, FpValue, RoundingMode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of a random instance.
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub fmt: FpFormat,
    pub max_vars: usize,
    pub max_constraints: usize,
    /// Maximum nesting of operators in one term.
    pub max_depth: u32,
}

impl RandomSpec {
    pub fn mini(fmt: FpFormat) -> Self {
        RandomSpec {
            fmt,
            max_vars: 4,
            max_constraints: 8,
            max_depth: 2,
        }
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    spec: &'a RandomSpec,
    sort: String,
    vars: Vec<String>,
    macros: Vec<String>,
    rm_macro: Option<String>,
    shared: Vec<String>,
}

impl Gen<'_> {
    fn constant(&mut self) -> String {
        let fmt = self.spec.fmt;
        let v = match self.rng.gen_range(0..6) {
            0 => FpValue::one(fmt),
            1 => FpValue::zero(fmt, self.rng.gen()),
            2 => FpValue::infinity(fmt, self.rng.gen()),
            _ => FpValue::from_bits(fmt, self.rng.gen_range(0..1u64 << fmt.total_bits())),
        };
        v.to_string()
    }

    fn rm(&mut self) -> String {
        if let Some(m) = &self.rm_macro {
            if self.rng.gen_bool(0.3) {
                return m.clone();
            }
        }
        RoundingMode::ALL.choose(&mut self.rng).unwrap().smt_name().to_string()
    }

    fn leaf(&mut self) -> String {
        let r: f64 = self.rng.gen();
        if r < 0.6 || (self.macros.is_empty() && r < 0.8) {
            self.vars.choose(&mut self.rng).unwrap().clone()
        } else if r < 0.8 {
            self.macros.choose(&mut self.rng).unwrap().clone()
        } else {
            self.constant()
        }
    }

    fn fp_term(&mut self, depth: u32) -> String {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.leaf();
        }
        if !self.shared.is_empty() && self.rng.gen_bool(0.25) {
            return self.shared.choose(&mut self.rng).unwrap().clone();
        }
        let t = match self.rng.gen_range(0..10) {
            0..=4 => {
                let op = ["fp.add", "fp.sub", "fp.mul", "fp.div"].choose(&mut self.rng).unwrap();
                let rm = self.rm();
                let a = self.fp_term(depth - 1);
                let b = if self.rng.gen_bool(0.2) { a.clone() } else { self.fp_term(depth - 1) };
                format!("({op} {rm} {a} {b})")
            }
            5 => format!("(fp.neg {})", self.fp_term(depth - 1)),
            6 => format!("(fp.abs {})", self.fp_term(depth - 1)),
            7 | 8 => {
                let op = if self.rng.gen() { "fp.min" } else { "fp.max" };
                format!("({op} {} {})", self.fp_term(depth - 1), self.fp_term(depth - 1))
            }
            _ => {
                let c = self.atom(depth - 1);
                format!("(ite {c} {} {})", self.fp_term(depth - 1), self.fp_term(depth - 1))
            }
        };
        self.shared.push(t.clone());
        t
    }

    fn atom(&mut self, depth: u32) -> String {
        match self.rng.gen_range(0..10) {
            0..=6 => {
                let op = ["fp.lt", "fp.leq", "fp.gt", "fp.geq", "fp.eq", "=", "distinct"]
                    .choose(&mut self.rng)
                    .unwrap();
                format!("({op} {} {})", self.fp_term(depth), self.fp_term(depth))
            }
            _ => {
                let p = ["fp.isNaN", "fp.isInfinite", "fp.isZero"].choose(&mut self.rng).unwrap();
                format!("({p} {})", self.fp_term(depth))
            }
        }
    }

    fn constraint(&mut self) -> String {
        let d = self.spec.max_depth;
        match self.rng.gen_range(0..12) {
            0..=6 => self.atom(d),
            7 | 8 => format!("(not {})", self.atom(d)),
            9 => format!("(or {} {})", self.atom(d), self.atom(d)),
            10 => format!("(=> {} {})", self.atom(d), self.atom(d)),
            _ => format!("(and {} (not {}))", self.atom(d), self.atom(d)),
        }
    }
}

/// A random satisfiable-or-not QF_FP script, fully determined by `seed`.
pub fn random_instance(seed: u64, spec: &RandomSpec) -> String {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        spec,
        sort: format!("(_ FloatingPoint {} {})", spec.fmt.ebits(), spec.fmt.sbits()),
        vars: Vec::new(),
        macros: Vec::new(),
        rm_macro: None,
        shared: Vec::new(),
    };
    let nvars = g.rng.gen_range(1..=spec.max_vars);
    let ncons = g.rng.gen_range(1..=spec.max_constraints);
    let mut out = String::from("(set-logic QF_FP)\n");
    for i in 0..nvars {
        let name = format!("x{i}");
        out.push_str(&format!("(declare-fun {name} () {})\n", g.sort));
        g.vars.push(name);
    }
    if g.rng.gen_bool(0.3) {
        let m = RoundingMode::ALL.choose(&mut g.rng).unwrap().smt_name();
        out.push_str(&format!("(define-fun rm () RoundingMode {m})\n"));
        g.rm_macro = Some("rm".to_string());
    }
    for i in 0..g.rng.gen_range(0..=2) {
        let body = g.fp_term(spec.max_depth);
        let name = format!("t{i}");
        out.push_str(&format!("(define-fun {name} () {} {body})\n", g.sort));
        g.macros.push(name);
    }
    for _ in 0..ncons {
        let c = g.constraint();
        out.push_str(&format!("(assert {c})\n"));
    }
    out.push_str("(check-sat)\n");
    out
}

//! Random QF_FP scripts over a tiny format, small enough to enumerate.

#![allow(dead_code)]

use proptest::prelude::*;

pub const SORT: &str = "(_ FloatingPoint 3 3)";
pub const VARS: [&str; 3] = ["x", "y", "z"];

fn constant() -> impl Strategy<Value = String> {
    prop_oneof![
        (any::<bool>(), 0u8..7, 0u8..4).prop_map(|(s, e, m)| format!("(fp #b{} #b{e:03b} #b{m:02b})", s as u8)),
        Just("(_ +zero 3 3)".to_string()),
        Just("(_ -oo 3 3)".to_string()),
        Just("(_ NaN 3 3)".to_string()),
    ]
}

fn mode() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["RNE", "RNA", "RTP", "RTN", "RTZ"])
}

pub fn fp_term() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![3 => prop::sample::select(VARS.to_vec()).prop_map(String::from), 1 => constant()];
    leaf.prop_recursive(3, 12, 2, |t| {
        prop_oneof![
            (prop::sample::select(vec!["fp.add", "fp.sub", "fp.mul", "fp.div"]), mode(), t.clone(), t.clone())
                .prop_map(|(op, m, a, b)| format!("({op} {m} {a} {b})")),
            (mode(), t.clone()).prop_map(|(m, a)| format!("(fp.mul {m} {a} {a})")),
            (prop::sample::select(vec!["fp.neg", "fp.abs"]), t.clone()).prop_map(|(op, a)| format!("({op} {a})")),
            (prop::sample::select(vec!["fp.min", "fp.max"]), t.clone(), t.clone())
                .prop_map(|(op, a, b)| format!("({op} {a} {b})")),
        ]
    })
}

pub fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => (prop::sample::select(vec!["fp.lt", "fp.leq", "fp.gt", "fp.geq", "fp.eq", "="]), fp_term(), fp_term())
            .prop_map(|(r, a, b)| format!("({r} {a} {b})")),
        1 => (prop::sample::select(vec!["fp.isNaN", "fp.isZero", "fp.isInfinite"]), fp_term())
            .prop_map(|(p, a)| format!("({p} {a})")),
    ]
}

pub fn formula() -> impl Strategy<Value = String> {
    atom().prop_recursive(2, 6, 2, |f| {
        prop_oneof![
            f.clone().prop_map(|a| format!("(not {a})")),
            (f.clone(), f.clone()).prop_map(|(a, b)| format!("(or {a} {b})")),
            (f.clone(), f.clone()).prop_map(|(a, b)| format!("(and {a} {b})")),
        ]
    })
}

/// A script whose assertions are routed through `define-fun` temporaries.
pub fn script() -> impl Strategy<Value = String> {
    (prop::collection::vec(fp_term(), 0..3), prop::collection::vec(formula(), 1..3)).prop_map(|(defs, asserts)| {
        let mut s = String::from("(set-logic QF_FP)\n");
        for v in VARS {
            s += &format!("(declare-fun {v} () {SORT})\n");
        }
        for (i, d) in defs.iter().enumerate() {
            s += &format!("(define-fun _t_{i} () {SORT} {d})\n");
        }
        for (i, a) in asserts.iter().enumerate() {
            let a = if i < defs.len() { format!("(or {a} (fp.isNaN _t_{i}))") } else { a.clone() };
            s += &format!("(assert {a})\n");
        }
        s + "(check-sat)\n"
    })
}

//! Projections of comparisons, reified comparisons, clauses, `ite` and the
//! classification predicates.

use crate::domain::{BoolDomain, FpDomain};
use crate::rewrite::{PredKind, Rel};

/// Position in the real order; both zeros share key 0.
fn key(o: i64) -> i64 {
    if o >= 0 {
        o
    } else {
        o + 1
    }
}

/// Smallest ordinal with key `k`.
fn first_with_key(k: i64) -> i64 {
    if k > 0 {
        k
    } else {
        k - 1
    }
}

/// Largest ordinal with key `k`.
fn last_with_key(k: i64) -> i64 {
    if k >= 0 {
        k
    } else {
        k - 1
    }
}

fn below_key(d: &FpDomain, k: i64) -> FpDomain {
    d.numeric().with_bounds(d.lo(), d.hi().min(last_with_key(k)))
}

fn above_key(d: &FpDomain, k: i64) -> FpDomain {
    d.numeric().with_bounds(d.lo().max(first_with_key(k)), d.hi())
}

fn none(d: &FpDomain) -> FpDomain {
    FpDomain::empty(d.format())
}

/// Removes the value with key `k` from the ends of `d`.
fn shave_key(d: &FpDomain, k: i64) -> FpDomain {
    if d.numeric_empty() {
        return *d;
    }
    let mut lo = d.lo();
    let mut hi = d.hi();
    if key(lo) == k {
        lo = last_with_key(k) + 1;
    }
    if key(hi) == k {
        hi = first_with_key(k) - 1;
    }
    d.with_bounds(lo, hi)
}

/// Removes the single value `v` of `other` from `d` when `other` is instantiated.
fn shave_value(d: &FpDomain, other: &FpDomain) -> FpDomain {
    if !other.is_instantiated() {
        return *d;
    }
    if other.numeric_empty() {
        return d.with_nan(false);
    }
    let o = other.lo();
    if d.numeric_empty() {
        return *d;
    }
    let lo = if d.lo() == o { o + 1 } else { d.lo() };
    let hi = if d.hi() == o { o - 1 } else { d.hi() };
    d.with_bounds(lo, hi)
}

/// The key of `d` if all its numeric values share one and it cannot be NaN.
fn single_key(d: &FpDomain) -> Option<i64> {
    (!d.may_nan() && !d.numeric_empty() && key(d.lo()) == key(d.hi())).then(|| key(d.lo()))
}

/// Narrowed `(x, y)` for `x rel y`; `same` when both are one variable.
pub fn project_cmp(rel: Rel, x: &FpDomain, y: &FpDomain, same: bool) -> (FpDomain, FpDomain) {
    if same {
        let d = match rel {
            Rel::Lt | Rel::NotIdent => none(x),
            Rel::Le | Rel::Eq => x.numeric(),
            Rel::Ne => x.intersect(&FpDomain::nan_only(x.format())),
            Rel::Ident => *x,
        };
        return (d, d);
    }
    if matches!(rel, Rel::Lt | Rel::Le | Rel::Eq) && (x.numeric_empty() || y.numeric_empty()) {
        return (none(x), none(y));
    }
    match rel {
        Rel::Lt => (below_key(x, key(y.hi()) - 1), above_key(y, key(x.lo()) + 1)),
        Rel::Le => (below_key(x, key(y.hi())), above_key(y, key(x.lo()))),
        Rel::Eq => {
            let lo = key(x.lo()).max(key(y.lo()));
            let hi = key(x.hi()).min(key(y.hi()));
            let clip = |d: &FpDomain| above_key(&below_key(d, hi), lo);
            (clip(x), clip(y))
        }
        Rel::Ne => {
            let x2 = single_key(y).map_or(*x, |k| shave_key(x, k));
            let y2 = single_key(&x2).map_or(*y, |k| shave_key(y, k));
            (x2, y2)
        }
        Rel::Ident => {
            let d = x.intersect(y);
            (d, d)
        }
        Rel::NotIdent => {
            let x2 = shave_value(x, y);
            let y2 = shave_value(y, &x2);
            (x2, y2)
        }
    }
}

/// Whether `x rel y` is decided by the domains.
pub fn entailment(rel: Rel, x: &FpDomain, y: &FpDomain, same: bool) -> Option<bool> {
    if same {
        return match rel {
            Rel::Lt => Some(false),
            Rel::NotIdent => Some(false),
            Rel::Ident => Some(true),
            Rel::Le | Rel::Eq => match (x.may_nan(), x.numeric_empty()) {
                (false, _) => Some(true),
                (true, true) => Some(false),
                _ => None,
            },
            Rel::Ne => entailment(Rel::Eq, x, y, true).map(|b| !b),
        };
    }
    let no_nan = !x.may_nan() && !y.may_nan();
    let numeric = !x.numeric_empty() && !y.numeric_empty();
    match rel {
        Rel::Lt => {
            if !numeric || key(x.lo()) >= key(y.hi()) {
                Some(false)
            } else if no_nan && key(x.hi()) < key(y.lo()) {
                Some(true)
            } else {
                None
            }
        }
        Rel::Le => {
            if !numeric || key(x.lo()) > key(y.hi()) {
                Some(false)
            } else if no_nan && key(x.hi()) <= key(y.lo()) {
                Some(true)
            } else {
                None
            }
        }
        Rel::Eq => {
            if !numeric || key(x.hi()) < key(y.lo()) || key(y.hi()) < key(x.lo()) {
                Some(false)
            } else if single_key(x).is_some() && single_key(x) == single_key(y) {
                Some(true)
            } else {
                None
            }
        }
        Rel::Ne => entailment(Rel::Eq, x, y, false).map(|b| !b),
        Rel::Ident => {
            if x.intersect(y).is_empty() {
                Some(false)
            } else if x.is_instantiated() && x == y {
                Some(true)
            } else {
                None
            }
        }
        Rel::NotIdent => entailment(Rel::Ident, x, y, false).map(|b| !b),
    }
}

/// Narrowed `(b, x, y)` for `b <=> x rel y`.
pub fn project_reif(rel: Rel, b: BoolDomain, x: &FpDomain, y: &FpDomain, same: bool) -> (BoolDomain, FpDomain, FpDomain) {
    let b = match entailment(rel, x, y, same) {
        Some(t) => b.intersect(&BoolDomain::of(t)),
        None => b,
    };
    match b.value() {
        Some(true) => {
            let (x, y) = project_cmp(rel, x, y, same);
            (b, x, y)
        }
        Some(false) => match rel.negation() {
            Some(neg) => {
                let (x, y) = project_cmp(neg, x, y, same);
                (b, x, y)
            }
            None if same || x.may_nan() || y.may_nan() => (b, *x, *y),
            None => {
                let flipped = if rel == Rel::Lt { Rel::Le } else { Rel::Lt };
                let (y, x) = project_cmp(flipped, y, x, false);
                (b, x, y)
            }
        },
        None => (b, *x, *y),
    }
}

/// Narrowed literal domains for a clause; `doms[i]` is the domain of the
/// variable of literal `i`, `positive[i]` its polarity. `None` on conflict.
pub fn project_clause(doms: &[BoolDomain], positive: &[bool]) -> Option<Vec<BoolDomain>> {
    let mut open = None;
    let mut open_count = 0;
    for (i, (d, &p)) in doms.iter().zip(positive).enumerate() {
        match d.value() {
            Some(v) if v == p => return Some(doms.to_vec()),
            Some(_) => {}
            None if d.is_empty() => return None,
            None => {
                open = Some(i);
                open_count += 1;
            }
        }
    }
    match (open_count, open) {
        (0, _) => None,
        (1, Some(i)) => {
            let mut out = doms.to_vec();
            out[i] = BoolDomain::of(positive[i]);
            Some(out)
        }
        _ => Some(doms.to_vec()),
    }
}

/// Narrowed `(b, z, x, y)` for `z = ite(b, x, y)`.
pub fn project_ite(b: BoolDomain, z: &FpDomain, x: &FpDomain, y: &FpDomain) -> (BoolDomain, FpDomain, FpDomain, FpDomain) {
    let mut b = b;
    if z.intersect(x).is_empty() {
        b = b.intersect(&BoolDomain::FALSE);
    }
    if z.intersect(y).is_empty() {
        b = b.intersect(&BoolDomain::TRUE);
    }
    match b.value() {
        Some(true) => {
            let d = z.intersect(x);
            (b, d, d, *y)
        }
        Some(false) => {
            let d = z.intersect(y);
            (b, d, *x, d)
        }
        None if b.is_empty() => (b, *z, *x, *y),
        None => (b, z.intersect(&x.hull(y)), *x, *y),
    }
}

fn pred_truth(pred: PredKind, x: &FpDomain) -> Option<bool> {
    let fmt = x.format();
    let (min, max) = (fmt.min_ordinal(), fmt.max_ordinal());
    match pred {
        PredKind::IsNaN => {
            if !x.may_nan() {
                Some(false)
            } else if x.numeric_empty() {
                Some(true)
            } else {
                None
            }
        }
        PredKind::IsInfinite => {
            let has = x.contains_ordinal(min) || x.contains_ordinal(max);
            if !has {
                Some(false)
            } else if !x.may_nan() && ((x.lo() == min && x.hi() == min) || (x.lo() == max && x.hi() == max)) {
                Some(true)
            } else {
                None
            }
        }
        PredKind::IsZero => {
            let has = x.contains_ordinal(-1) || x.contains_ordinal(0);
            if !has {
                Some(false)
            } else if !x.may_nan() && x.lo() >= -1 && x.hi() <= 0 {
                Some(true)
            } else {
                None
            }
        }
    }
}

/// Narrowed `(b, x)` for `b <=> pred(x)`.
pub fn project_pred(pred: PredKind, b: BoolDomain, x: &FpDomain) -> (BoolDomain, FpDomain) {
    let b = match pred_truth(pred, x) {
        Some(t) => b.intersect(&BoolDomain::of(t)),
        None => b,
    };
    let fmt = x.format();
    let (min, max) = (fmt.min_ordinal(), fmt.max_ordinal());
    let x = match (pred, b.value()) {
        (_, None) => *x,
        (PredKind::IsNaN, Some(true)) => x.intersect(&FpDomain::nan_only(fmt)),
        (PredKind::IsNaN, Some(false)) => x.numeric(),
        (PredKind::IsInfinite, Some(true)) => {
            let lo = if x.lo() > min { max } else { x.lo() };
            let hi = if x.hi() < max { min } else { x.hi() };
            if lo == min && hi == max {
                x.numeric()
            } else {
                x.numeric().with_bounds(lo, hi)
            }
        }
        (PredKind::IsInfinite, Some(false)) => {
            let lo = if x.lo() == min { min + 1 } else { x.lo() };
            let hi = if x.hi() == max { max - 1 } else { x.hi() };
            x.with_bounds(lo, hi)
        }
        (PredKind::IsZero, Some(true)) => x.numeric().with_bounds(x.lo().max(-1), x.hi().min(0)),
        (PredKind::IsZero, Some(false)) => {
            let lo = if x.lo() == -1 || x.lo() == 0 { 1 } else { x.lo() };
            let hi = if x.hi() == -1 || x.hi() == 0 { -2 } else { x.hi() };
            if x.numeric_empty() {
                *x
            } else {
                x.with_bounds(lo, hi)
            }
        }
    };
    (b, x)
}

/// `fp.eq`, `fp.lt`, `fp.leq` and identity on concrete values.
pub fn holds(rel: Rel, a: crate::float::FpValue, b: crate::float::FpValue) -> bool {
    use crate::float::arith::{fp_eq, fp_le, fp_lt};
    match rel {
        Rel::Eq => fp_eq(a, b),
        Rel::Ne => !fp_eq(a, b),
        Rel::Lt => fp_lt(a, b),
        Rel::Le => fp_le(a, b),
        Rel::Ident => a.bits() == b.bits() || (a.is_nan() && b.is_nan()),
        Rel::NotIdent => !(a.bits() == b.bits() || (a.is_nan() && b.is_nan())),
    }
}

//! Projections of rounded arithmetic, negation, absolute value and min/max.
//!
//! Each function takes the current domains and returns narrowed ones, every
//! result a subset of its input. Emptiness is left to the caller.

use super::bounds::{
    add_r, clamp_nonneg, div_r, lower_ord, mirror, mul_r, pre_hi, pre_lo, sqrt_r, upper_ord, value,
};
use crate::domain::FpDomain;
use crate::float::exact::Real;
use crate::float::{arith, FpFormat, FpValue, RoundingMode};
use crate::rewrite::ArithOp;

/// Values worth evaluating to bound `op` over a box: the endpoints, their
/// inward neighbours at infinities, and the zeros and smallest subnormals.
fn candidates(d: &FpDomain) -> Vec<FpValue> {
    if d.numeric_empty() {
        return Vec::new();
    }
    let fmt = d.format();
    let (lo, hi) = (d.lo(), d.hi());
    let mut ords = vec![lo, hi, -2, -1, 0, 1];
    if lo == fmt.min_ordinal() {
        ords.push(lo + 1);
    }
    if hi == fmt.max_ordinal() {
        ords.push(hi - 1);
    }
    ords.retain(|&o| lo <= o && o <= hi);
    ords.sort_unstable();
    ords.dedup();
    ords.into_iter().map(|o| value(fmt, o)).collect()
}

fn apply(op: ArithOp, mode: RoundingMode, a: FpValue, b: FpValue) -> FpValue {
    match op {
        ArithOp::Add => arith::add(mode, a, b),
        ArithOp::Sub => arith::sub(mode, a, b),
        ArithOp::Mul => arith::mul(mode, a, b),
        ArithOp::Div => arith::div(mode, a, b),
    }
}

/// Hull of `x op y` over the boxes; the operations are monotone on each
/// sign quadrant so the candidate grid reaches both extremes.
pub fn forward(op: ArithOp, mode: RoundingMode, x: &FpDomain, y: &FpDomain) -> FpDomain {
    let fmt = x.format();
    let (cx, cy) = (candidates(x), candidates(y));
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    let mut nan = x.may_nan() || y.may_nan();
    for &a in &cx {
        for &b in &cy {
            match apply(op, mode, a, b).ordinal() {
                Ok(o) => {
                    lo = lo.min(o);
                    hi = hi.max(o);
                }
                Err(_) => nan = true,
            }
        }
    }
    if lo > hi {
        FpDomain::empty(fmt).with_nan(nan)
    } else {
        FpDomain::from_ordinals(fmt, lo, hi, nan)
    }
}

/// Accumulates ordinal intervals into a hull.
struct Support {
    fmt: FpFormat,
    lo: i64,
    hi: i64,
}

impl Support {
    fn new(fmt: FpFormat) -> Self {
        Support { fmt, lo: i64::MAX, hi: i64::MIN }
    }

    fn add(&mut self, lo: i64, hi: i64) {
        if lo <= hi {
            self.lo = self.lo.min(lo);
            self.hi = self.hi.max(hi);
        }
    }

    fn add_finite(&mut self) {
        self.add(self.fmt.min_ordinal() + 1, self.fmt.max_ordinal() - 1);
    }

    fn add_all(&mut self) {
        self.add(self.fmt.min_ordinal(), self.fmt.max_ordinal());
    }

    fn add_zeros(&mut self) {
        self.add(-1, 0);
    }

    fn add_infinities(&mut self) {
        self.add(self.fmt.min_ordinal(), self.fmt.max_ordinal());
    }

    /// Magnitude interval `[a..b]` with sign `neg`.
    fn add_mag(&mut self, neg: bool, a: i64, b: i64) {
        if neg {
            self.add(-b - 1, -a - 1);
        } else {
            self.add(a, b);
        }
    }

    /// Restricts `d` to the support; NaN stays only if `nan`.
    fn restrict(&self, d: &FpDomain, nan: bool) -> FpDomain {
        let lo = d.lo().max(self.lo);
        let hi = d.hi().min(self.hi);
        FpDomain::from_ordinals(self.fmt, lo, hi, d.may_nan() && nan)
    }
}

fn has_pos_inf(d: &FpDomain) -> bool {
    d.contains_ordinal(d.format().max_ordinal())
}

fn has_neg_inf(d: &FpDomain) -> bool {
    d.contains_ordinal(d.format().min_ordinal())
}

fn has_inf(d: &FpDomain) -> bool {
    has_pos_inf(d) || has_neg_inf(d)
}

fn has_zero(d: &FpDomain) -> bool {
    d.contains_ordinal(-1) || d.contains_ordinal(0)
}

/// Narrows `x` in `z = x + y`.
pub fn add_inverse(mode: RoundingMode, z: &FpDomain, y: &FpDomain, x: &FpDomain) -> FpDomain {
    let fmt = x.format();
    let (min, max) = (fmt.min_ordinal(), fmt.max_ordinal());
    let mut s = Support::new(fmt);
    if !z.numeric_empty() && !y.numeric_empty() {
        let (ylo, yhi) = (y.lo().max(min + 1), y.hi().min(max - 1));
        if ylo <= yhi {
            let plo = pre_lo(value(fmt, z.lo()), mode);
            let phi = pre_hi(value(fmt, z.hi()), mode);
            let lo = lower_ord(fmt, add_r(plo, Real::of(value(fmt, yhi)).negate(), true));
            let hi = upper_ord(fmt, add_r(phi, Real::of(value(fmt, ylo)).negate(), false));
            s.add(lo.max(min + 1), hi.min(max - 1));
        }
        if has_pos_inf(z) && y.hi() > min {
            s.add(max, max);
        }
        if has_neg_inf(z) && y.lo() < max {
            s.add(min, min);
        }
        if (has_pos_inf(y) && has_pos_inf(z)) || (has_neg_inf(y) && has_neg_inf(z)) {
            s.add_finite();
        }
    }
    if z.may_nan() {
        if y.may_nan() {
            s.add_all();
        }
        if has_pos_inf(y) {
            s.add(min, min);
        }
        if has_neg_inf(y) {
            s.add(max, max);
        }
    }
    s.restrict(x, z.may_nan())
}

/// Magnitude range of the `neg` half of `d`, or `None` if that half is empty.
fn half(d: &FpDomain, neg: bool) -> Option<(i64, i64)> {
    let h = d.sign_half(neg);
    if h.numeric_empty() {
        None
    } else if neg {
        Some((-h.hi() - 1, -h.lo() - 1))
    } else {
        Some((h.lo(), h.hi()))
    }
}

#[derive(Clone, Copy)]
enum MagSolve {
    /// Unknown factor of a product.
    Factor,
    /// Numerator of a quotient.
    Numerator,
    /// Denominator of a quotient.
    Denominator,
}

/// Magnitudes of the unknown operand given the known operand's magnitude
/// range `k` and the result's range `r`, with `m` the magnitude rounding.
fn solve_mag(
    fmt: FpFormat,
    kind: MagSolve,
    m: RoundingMode,
    (ka, kb): (i64, i64),
    (za, zb): (i64, i64),
    s: &mut Support,
    neg: bool,
) {
    let inf = fmt.max_ordinal();
    let mut push = |a: i64, b: i64| s.add_mag(neg, a, b);
    let (zero_case, inf_case, any_finite) = match kind {
        MagSolve::Factor => (
            ka < inf && za == 0,
            kb > 0 && zb == inf,
            (kb == inf && zb == inf) || (ka == 0 && za == 0),
        ),
        MagSolve::Numerator => (
            kb > 0 && za == 0,
            ka < inf && zb == inf,
            (ka == 0 && zb == inf) || (kb == inf && za == 0),
        ),
        MagSolve::Denominator => (
            kb > 0 && zb == inf,
            ka < inf && za == 0,
            (ka == 0 && za == 0) || (kb == inf && zb == inf),
        ),
    };
    if zero_case {
        push(0, 0);
    }
    if inf_case {
        push(inf, inf);
    }
    if any_finite {
        push(1, inf - 1);
        return;
    }
    let (fa, fb) = (ka.max(1), kb.min(inf - 1));
    if fa > fb {
        return;
    }
    let plo = clamp_nonneg(pre_lo(value(fmt, za), m));
    let phi = pre_hi(value(fmt, zb), m);
    let (fa, fb) = (Real::of(value(fmt, fa)), Real::of(value(fmt, fb)));
    let (lo, hi) = match kind {
        MagSolve::Factor => (div_r(plo, fb, true), div_r(phi, fa, false)),
        MagSolve::Numerator => (mul_r(plo, fa, true), mul_r(phi, fb, false)),
        MagSolve::Denominator => (div_r(fa, phi, true), div_r(fb, plo, false)),
    };
    let lo = lower_ord(fmt, lo).max(1);
    let hi = upper_ord(fmt, hi).min(inf - 1);
    push(lo, hi);
}

/// Narrows the unknown `x` of a product or quotient, `k` being the other
/// operand and `z` the result.
fn muldiv_inverse(kind: MagSolve, mode: RoundingMode, z: &FpDomain, k: &FpDomain, x: &FpDomain) -> FpDomain {
    let fmt = x.format();
    let mut s = Support::new(fmt);
    for sx in [false, true] {
        for sk in [false, true] {
            let sz = sx != sk;
            let (Some(km), Some(zm)) = (half(k, sk), half(z, sz)) else {
                continue;
            };
            let m = if sz { mirror(mode) } else { mode };
            solve_mag(fmt, kind, m, km, zm, &mut s, sx);
        }
    }
    if z.may_nan() {
        if k.may_nan() {
            s.add_all();
        }
        match kind {
            // 0 * inf
            MagSolve::Factor => {
                if has_inf(k) {
                    s.add_zeros();
                }
                if has_zero(k) {
                    s.add_infinities();
                }
            }
            // 0 / 0 and inf / inf, read either way
            MagSolve::Numerator | MagSolve::Denominator => {
                if has_zero(k) {
                    s.add_zeros();
                }
                if has_inf(k) {
                    s.add_infinities();
                }
            }
        }
    }
    s.restrict(x, z.may_nan())
}

/// Narrowed `(z, x, y)` for `z = x op y`.
pub fn project(op: ArithOp, mode: RoundingMode, z: &FpDomain, x: &FpDomain, y: &FpDomain) -> (FpDomain, FpDomain, FpDomain) {
    let z = z.intersect(&forward(op, mode, x, y));
    match op {
        ArithOp::Add => {
            let x = add_inverse(mode, &z, y, x);
            let y = add_inverse(mode, &z, &x, y);
            (z, x, y)
        }
        ArithOp::Sub => {
            let x = add_inverse(mode, &z, &negate(y), x);
            let y = negate(&add_inverse(mode, &z, &x, &negate(y)));
            (z, x, y)
        }
        ArithOp::Mul => {
            let x = muldiv_inverse(MagSolve::Factor, mode, &z, y, x);
            let y = muldiv_inverse(MagSolve::Factor, mode, &z, &x, y);
            (z, x, y)
        }
        ArithOp::Div => {
            let x = muldiv_inverse(MagSolve::Numerator, mode, &z, y, x);
            let y = muldiv_inverse(MagSolve::Denominator, mode, &z, &x, y);
            (z, x, y)
        }
    }
}

/// Narrowed `(z, x)` for `z = x * x`.
pub fn project_square(mode: RoundingMode, z: &FpDomain, x: &FpDomain) -> (FpDomain, FpDomain) {
    let fmt = x.format();
    let mut fwd = Support::new(fmt);
    for neg in [false, true] {
        if let Some((a, b)) = half(x, neg) {
            let sq = |o: i64| {
                let v = value(fmt, o);
                arith::mul(mode, v, v).ordinal().unwrap()
            };
            fwd.add(sq(a), sq(b));
        }
    }
    let z = fwd.restrict(z, x.may_nan());
    let mut inv = Support::new(fmt);
    if let Some((za, zb)) = half(&z, false) {
        let plo = clamp_nonneg(pre_lo(value(fmt, za), mode));
        let phi = pre_hi(value(fmt, zb), mode);
        let lo = lower_ord(fmt, sqrt_r(plo)).max(0);
        let hi = upper_ord(fmt, sqrt_r(phi));
        inv.add_mag(false, lo, hi);
        inv.add_mag(true, lo, hi);
    }
    let x = inv.restrict(x, z.may_nan());
    (z, x)
}

/// `{-v : v in d}`
pub fn negate(d: &FpDomain) -> FpDomain {
    if d.numeric_empty() {
        return *d;
    }
    FpDomain::from_ordinals(d.format(), -d.hi() - 1, -d.lo() - 1, d.may_nan())
}

/// `{|v| : v in d}`
fn abs_image(d: &FpDomain) -> FpDomain {
    let mut s = Support::new(d.format());
    for neg in [false, true] {
        if let Some((a, b)) = half(d, neg) {
            s.add(a, b);
        }
    }
    s.restrict(&FpDomain::full(d.format()), d.may_nan())
}

/// Narrowed `(z, x)` for `z = fp.neg(x)`.
pub fn project_neg(z: &FpDomain, x: &FpDomain) -> (FpDomain, FpDomain) {
    let z = z.intersect(&negate(x));
    let x = x.intersect(&negate(&z));
    (z, x)
}

/// Narrowed `(z, x)` for `z = fp.abs(x)`.
pub fn project_abs(z: &FpDomain, x: &FpDomain) -> (FpDomain, FpDomain) {
    let z = z.intersect(&abs_image(x));
    let pos = z.sign_half(false).with_nan(z.may_nan());
    let x = x.intersect(&pos.hull(&negate(&pos)));
    (z, x)
}

fn min_forward(x: &FpDomain, y: &FpDomain) -> FpDomain {
    let fmt = x.format();
    let mut s = Support::new(fmt);
    if !x.numeric_empty() && !y.numeric_empty() {
        s.add(x.lo().min(y.lo()), x.hi().min(y.hi()));
    }
    if x.may_nan() && !y.numeric_empty() {
        s.add(y.lo(), y.hi());
    }
    if y.may_nan() && !x.numeric_empty() {
        s.add(x.lo(), x.hi());
    }
    s.restrict(&FpDomain::full(fmt), x.may_nan() && y.may_nan())
}

/// Narrows `x` in `z = fp.min(x, y)`.
fn min_inverse(z: &FpDomain, y: &FpDomain, x: &FpDomain) -> FpDomain {
    let fmt = x.format();
    let mut s = Support::new(fmt);
    let overlap = !y.numeric().intersect(&z.numeric()).numeric_empty();
    if !z.numeric_empty() {
        let hi = if overlap { fmt.max_ordinal() } else { z.hi() };
        s.add(z.lo(), hi);
        if y.may_nan() {
            s.add(z.lo(), z.hi());
        }
    }
    s.restrict(x, overlap || (y.may_nan() && z.may_nan()))
}

/// Narrowed `(z, x, y)` for `z = fp.min(x, y)` or `fp.max` when `max`.
pub fn project_minmax(max: bool, z: &FpDomain, x: &FpDomain, y: &FpDomain) -> (FpDomain, FpDomain, FpDomain) {
    if max {
        let (z, x, y) = project_minmax(false, &negate(z), &negate(x), &negate(y));
        return (negate(&z), negate(&x), negate(&y));
    }
    let z = z.intersect(&min_forward(x, y));
    let x = min_inverse(&z, y, x);
    let y = min_inverse(&z, &x, y);
    (z, x, y)
}

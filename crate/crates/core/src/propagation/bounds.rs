//! Rounding preimages and outward conversion of real bounds to ordinals.

use crate::float::exact::{add_exact, div_exact, mul_exact, round_wide, sqrt_exact, Exact, Real, Wide};
use crate::float::{FpFormat, FpValue, RoundingMode};

/// Result of real arithmetic on bounds, before rounding into a format.
#[derive(Debug, Clone, Copy)]
pub(crate) enum WideReal {
    NegInf,
    Fin(Wide),
    PosInf,
}

pub(crate) fn mirror(m: RoundingMode) -> RoundingMode {
    match m {
        RoundingMode::Rtp => RoundingMode::Rtn,
        RoundingMode::Rtn => RoundingMode::Rtp,
        other => other,
    }
}

pub(crate) fn value(fmt: FpFormat, ord: i64) -> FpValue {
    FpValue::from_ordinal_unchecked(fmt, ord)
}

/// `max_finite + ulp/2`, the first real that rounds to infinity under the
/// nearest modes.
fn overflow_threshold(fmt: FpFormat) -> Exact {
    let s = fmt.sbits() as i32;
    Exact::new(false, (1u64 << (s + 1)) - 1, fmt.emax() - s)
}

fn midpoint(a: FpValue, b: FpValue) -> Exact {
    let mut e = add_exact(a.to_exact().unwrap(), b.to_exact().unwrap()).into_exact();
    e.exp -= 1;
    e
}

/// A real below or equal to every `r` with `round(r) >= z`.
pub(crate) fn pre_lo(z: FpValue, mode: RoundingMode) -> Real {
    let fmt = z.format();
    if z.is_infinite() && z.sign_bit() {
        return Real::NegInf;
    }
    let pos_inf = z.is_infinite();
    let pred = |z: FpValue| z.pred().expect("predecessor of a value above -inf");
    match mode {
        RoundingMode::Rne | RoundingMode::Rna => {
            if pos_inf {
                return Real::Fin(overflow_threshold(fmt));
            }
            let p = pred(z);
            if p.is_infinite() {
                Real::Fin(overflow_threshold(fmt).negate())
            } else {
                Real::Fin(midpoint(p, z))
            }
        }
        RoundingMode::Rtp => {
            if pos_inf {
                return Real::of(FpValue::max_finite(fmt, false));
            }
            let p = pred(z);
            if p.is_infinite() {
                Real::NegInf
            } else {
                Real::of(p)
            }
        }
        RoundingMode::Rtn => Real::of(z),
        RoundingMode::Rtz => {
            if pos_inf || !z.sign_bit() {
                return Real::of(z);
            }
            let p = pred(z);
            if p.is_infinite() {
                Real::NegInf
            } else {
                Real::of(p)
            }
        }
    }
}

/// A real above or equal to every `r` with `round(r) <= z`.
pub(crate) fn pre_hi(z: FpValue, mode: RoundingMode) -> Real {
    pre_lo(z.negate(), mirror(mode)).negate()
}

fn fin(e: Exact) -> WideReal {
    WideReal::Fin(Wide::from(e))
}

/// `a + b`; an undefined `inf - inf` yields the infinity that widens the
/// bound in the requested direction.
pub(crate) fn add_r(a: Real, b: Real, lower: bool) -> WideReal {
    match (a, b) {
        (Real::Fin(x), Real::Fin(y)) => WideReal::Fin(add_exact(x, y)),
        (Real::NegInf, Real::PosInf) | (Real::PosInf, Real::NegInf) => widest(lower),
        (Real::NegInf, _) | (_, Real::NegInf) => WideReal::NegInf,
        _ => WideReal::PosInf,
    }
}

fn widest(lower: bool) -> WideReal {
    if lower {
        WideReal::NegInf
    } else {
        WideReal::PosInf
    }
}

/// Product of two non-negative reals.
pub(crate) fn mul_r(a: Real, b: Real, lower: bool) -> WideReal {
    match (a, b) {
        (Real::Fin(x), Real::Fin(y)) => WideReal::Fin(mul_exact(x, y)),
        (Real::Fin(x), _) | (_, Real::Fin(x)) if x.is_zero() => {
            if lower {
                fin(Exact::zero(false))
            } else {
                WideReal::PosInf
            }
        }
        _ => WideReal::PosInf,
    }
}

/// Quotient of two non-negative reals.
pub(crate) fn div_r(a: Real, b: Real, lower: bool) -> WideReal {
    match (a, b) {
        (Real::Fin(x), Real::Fin(y)) if !y.is_zero() => WideReal::Fin(div_exact(x, y)),
        (Real::Fin(x), Real::Fin(_)) if !x.is_zero() => WideReal::PosInf,
        (Real::Fin(_), Real::Fin(_)) => widest_nonneg(lower),
        (Real::Fin(_), _) => fin(Exact::zero(false)),
        (_, Real::Fin(_)) => WideReal::PosInf,
        _ => widest_nonneg(lower),
    }
}

fn widest_nonneg(lower: bool) -> WideReal {
    if lower {
        fin(Exact::zero(false))
    } else {
        WideReal::PosInf
    }
}

/// Square root of a non-negative real.
pub(crate) fn sqrt_r(a: Real) -> WideReal {
    match a {
        Real::Fin(x) => WideReal::Fin(sqrt_exact(x.abs())),
        Real::PosInf => WideReal::PosInf,
        Real::NegInf => fin(Exact::zero(false)),
    }
}

/// Non-negative part of a real bound.
pub(crate) fn clamp_nonneg(a: Real) -> Real {
    if a.cmp_value(&Real::zero()).is_lt() {
        Real::zero()
    } else {
        a
    }
}

/// Smallest ordinal whose value is `>= r`; a zero bound admits `-0`.
pub(crate) fn lower_ord(fmt: FpFormat, r: WideReal) -> i64 {
    match r {
        WideReal::NegInf => fmt.min_ordinal(),
        WideReal::PosInf => fmt.max_ordinal(),
        WideReal::Fin(w) => {
            let v = round_wide(fmt, RoundingMode::Rtp, w);
            if v.is_zero() {
                -1
            } else {
                v.ordinal().unwrap()
            }
        }
    }
}

/// Largest ordinal whose value is `<= r`; a zero bound admits `+0`.
pub(crate) fn upper_ord(fmt: FpFormat, r: WideReal) -> i64 {
    match r {
        WideReal::NegInf => fmt.min_ordinal(),
        WideReal::PosInf => fmt.max_ordinal(),
        WideReal::Fin(w) => {
            let v = round_wide(fmt, RoundingMode::Rtn, w);
            if v.is_zero() {
                0
            } else {
                v.ordinal().unwrap()
            }
        }
    }
}

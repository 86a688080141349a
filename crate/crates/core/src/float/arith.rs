//! IEEE-754 arithmetic on [`FpValue`] for any supported format.

use super::exact::{add_exact, div_exact, mul_exact, round_wide, Wide};
use super::value::{FpClass, FpValue, RoundingMode};

fn same_format(a: FpValue, b: FpValue) {
    debug_assert_eq!(a.format(), b.format(), "operands of different formats");
}

fn exact_zero_sum_sign(mode: RoundingMode) -> bool {
    mode == RoundingMode::Rtn
}

pub fn add(mode: RoundingMode, a: FpValue, b: FpValue) -> FpValue {
    same_format(a, b);
    let fmt = a.format();
    if a.is_nan() || b.is_nan() {
        return FpValue::nan(fmt);
    }
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) if a.sign_bit() != b.sign_bit() => return FpValue::nan(fmt),
        (true, _) => return a,
        (_, true) => return b,
        _ => {}
    }
    if a.is_zero() && b.is_zero() {
        if a.sign_bit() == b.sign_bit() {
            return a;
        }
        return FpValue::zero(fmt, exact_zero_sum_sign(mode));
    }
    let w = add_exact(a.to_exact().unwrap(), b.to_exact().unwrap());
    if w.is_exact_zero() {
        return FpValue::zero(fmt, exact_zero_sum_sign(mode));
    }
    round_wide(fmt, mode, w)
}

pub fn sub(mode: RoundingMode, a: FpValue, b: FpValue) -> FpValue {
    add(mode, a, b.negate())
}

pub fn mul(mode: RoundingMode, a: FpValue, b: FpValue) -> FpValue {
    same_format(a, b);
    let fmt = a.format();
    let neg = a.sign_bit() != b.sign_bit();
    match (a.class(), b.class()) {
        (FpClass::NaN, _) | (_, FpClass::NaN) => FpValue::nan(fmt),
        (FpClass::Infinite, FpClass::Zero) | (FpClass::Zero, FpClass::Infinite) => FpValue::nan(fmt),
        (FpClass::Infinite, _) | (_, FpClass::Infinite) => FpValue::infinity(fmt, neg),
        (FpClass::Zero, _) | (_, FpClass::Zero) => FpValue::zero(fmt, neg),
        _ => round_wide(fmt, mode, mul_exact(a.to_exact().unwrap(), b.to_exact().unwrap())),
    }
}

pub fn div(mode: RoundingMode, a: FpValue, b: FpValue) -> FpValue {
    same_format(a, b);
    let fmt = a.format();
    let neg = a.sign_bit() != b.sign_bit();
    match (a.class(), b.class()) {
        (FpClass::NaN, _) | (_, FpClass::NaN) => FpValue::nan(fmt),
        (FpClass::Infinite, FpClass::Infinite) | (FpClass::Zero, FpClass::Zero) => FpValue::nan(fmt),
        (FpClass::Infinite, _) | (_, FpClass::Zero) => FpValue::infinity(fmt, neg),
        (_, FpClass::Infinite) | (FpClass::Zero, _) => FpValue::zero(fmt, neg),
        _ => {
            let w: Wide = div_exact(a.to_exact().unwrap(), b.to_exact().unwrap());
            round_wide(fmt, mode, w)
        }
    }
}

/// `fp.min`: NaN operands are ignored; `min(-0, +0)` is `-0` in either order.
pub fn min(a: FpValue, b: FpValue) -> FpValue {
    same_format(a, b);
    match (a.ordinal(), b.ordinal()) {
        (Err(_), _) => b,
        (_, Err(_)) => a,
        (Ok(x), Ok(y)) => {
            if x <= y {
                a
            } else {
                b
            }
        }
    }
}

/// `fp.max`: NaN operands are ignored; `max(-0, +0)` is `+0` in either order.
pub fn max(a: FpValue, b: FpValue) -> FpValue {
    same_format(a, b);
    match (a.ordinal(), b.ordinal()) {
        (Err(_), _) => b,
        (_, Err(_)) => a,
        (Ok(x), Ok(y)) => {
            if x >= y {
                a
            } else {
                b
            }
        }
    }
}

/// IEEE `compareQuietEqual`: NaN is unordered, `-0 == +0`.
pub fn fp_eq(a: FpValue, b: FpValue) -> bool {
    if a.is_nan() || b.is_nan() {
        return false;
    }
    if a.is_zero() && b.is_zero() {
        return true;
    }
    a == b
}

pub fn fp_lt(a: FpValue, b: FpValue) -> bool {
    if a.is_nan() || b.is_nan() || (a.is_zero() && b.is_zero()) {
        return false;
    }
    a.ordinal().unwrap() < b.ordinal().unwrap()
}

pub fn fp_le(a: FpValue, b: FpValue) -> bool {
    fp_lt(a, b) || fp_eq(a, b)
}

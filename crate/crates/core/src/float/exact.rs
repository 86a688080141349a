//! Exact dyadic rationals and single-rounding into a target format.
//!
//! Every arithmetic result in the crate is produced by computing the exact
//! result (or a sticky-bit approximation that carries enough bits to decide
//! rounding) and rounding it exactly once.

use std::cmp::Ordering;

use super::format::FpFormat;
use super::value::{FpValue, RoundingMode};

/// A finite dyadic rational `(-1)^neg * mant * 2^exp`.
///
/// Zero is represented with `mant == 0`; its sign is kept for callers that
/// need IEEE signed-zero behaviour but is ignored by comparisons.
#[derive(Debug, Clone, Copy)]
pub struct Exact {
    pub neg: bool,
    pub mant: u64,
    pub exp: i32,
}

impl Exact {
    pub fn new(neg: bool, mant: u64, exp: i32) -> Self {
        Exact { neg, mant, exp }.normalized()
    }

    pub fn zero(neg: bool) -> Self {
        Exact { neg, mant: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0
    }

    fn normalized(mut self) -> Self {
        if self.mant == 0 {
            self.exp = 0;
        } else {
            let tz = self.mant.trailing_zeros();
            self.mant >>= tz;
            self.exp += tz as i32;
        }
        self
    }

    pub fn negate(self) -> Self {
        Exact { neg: !self.neg, ..self }
    }

    pub fn abs(self) -> Self {
        Exact { neg: false, ..self }
    }

    /// Exact for anything with at most 53 significant bits in the double range.
    pub fn to_f64(self) -> f64 {
        let m = self.mant as f64;
        let v = m * f64::powi(2.0, self.exp);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Real-number comparison (signed zeros compare equal).
    pub fn cmp_value(&self, other: &Exact) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let mag = cmp_magnitude(self, other);
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    fn signum(&self) -> i8 {
        if self.mant == 0 {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    /// The value in `fmt` if it is exactly representable there.
    pub fn round_exactly(self, fmt: FpFormat) -> Option<FpValue> {
        let down = round_wide(fmt, RoundingMode::Rtn, Wide::from(self));
        let up = round_wide(fmt, RoundingMode::Rtp, Wide::from(self));
        if down == up && down.is_finite() {
            Some(down)
        } else {
            None
        }
    }

    pub fn round(self, fmt: FpFormat, mode: RoundingMode) -> FpValue {
        round_wide(fmt, mode, Wide::from(self))
    }
}

fn cmp_magnitude(a: &Exact, b: &Exact) -> Ordering {
    let la = 64 - a.mant.leading_zeros() as i32 + a.exp;
    let lb = 64 - b.mant.leading_zeros() as i32 + b.exp;
    if la != lb {
        return la.cmp(&lb);
    }
    // same top-bit position: align to the smaller exponent
    let e = a.exp.min(b.exp);
    let ma = (a.mant as u128) << (a.exp - e);
    let mb = (b.mant as u128) << (b.exp - e);
    ma.cmp(&mb)
}

/// Intermediate result: `(-1)^neg * (mant + s) * 2^exp` where `s` is zero
/// when `sticky` is false and lies strictly inside `(0, 1)` otherwise.
#[derive(Debug, Clone, Copy)]
pub struct Wide {
    pub neg: bool,
    pub mant: u128,
    pub exp: i32,
    pub sticky: bool,
}

impl From<Exact> for Wide {
    fn from(e: Exact) -> Self {
        Wide {
            neg: e.neg,
            mant: e.mant as u128,
            exp: e.exp,
            sticky: false,
        }
    }
}

impl Wide {
    pub fn is_exact_zero(&self) -> bool {
        self.mant == 0 && !self.sticky
    }

    /// Converts back to an [`Exact`]; only valid for results known to be exact
    /// and to fit in 64 bits after trailing-zero removal.
    pub fn into_exact(self) -> Exact {
        debug_assert!(!self.sticky);
        let mut mant = self.mant;
        let mut exp = self.exp;
        if mant != 0 {
            let tz = mant.trailing_zeros();
            mant >>= tz;
            exp += tz as i32;
        }
        assert!(mant <= u64::MAX as u128, "exact value does not fit 64 bits");
        Exact {
            neg: self.neg,
            mant: mant as u64,
            exp,
        }
    }
}

fn bit_len(x: u128) -> i32 {
    128 - x.leading_zeros() as i32
}

/// Rounds `w` into `fmt` with `mode`. A zero result takes the sign of `w`.
pub fn round_wide(fmt: FpFormat, mode: RoundingMode, w: Wide) -> FpValue {
    let neg = w.neg;
    if w.is_exact_zero() {
        return FpValue::zero(fmt, neg);
    }
    let p = fmt.sbits() as i32;
    let top = if w.mant == 0 {
        // only sticky: the value is below 2^exp
        w.exp - 1
    } else {
        w.exp + bit_len(w.mant) - 1
    };
    let q = top.max(fmt.emin()) - (p - 1);

    let (kept, half_cmp, inexact) = if w.exp >= q {
        debug_assert!(!w.sticky, "sticky result without guard bits");
        (w.mant << (w.exp - q), Ordering::Less, w.sticky)
    } else {
        let s = (q - w.exp) as u32;
        let (kept, rem_cmp, rem_nonzero) = if s > 128 {
            (0u128, Ordering::Less, w.mant != 0)
        } else if s == 128 {
            let half = 1u128 << 127;
            (0u128, w.mant.cmp(&half), w.mant != 0)
        } else {
            let rem = w.mant & ((1u128 << s) - 1);
            let half = 1u128 << (s - 1);
            (w.mant >> s, rem.cmp(&half), rem != 0)
        };
        let cmp = if rem_cmp == Ordering::Equal && w.sticky {
            Ordering::Greater
        } else {
            rem_cmp
        };
        (kept, cmp, rem_nonzero || w.sticky)
    };

    let increment = match mode {
        RoundingMode::Rne => {
            half_cmp == Ordering::Greater || (half_cmp == Ordering::Equal && kept & 1 == 1)
        }
        RoundingMode::Rna => half_cmp != Ordering::Less && inexact,
        RoundingMode::Rtp => inexact && !neg,
        RoundingMode::Rtn => inexact && neg,
        RoundingMode::Rtz => false,
    };
    let mut kept = kept + increment as u128;
    let mut qe = q;
    if kept == 1u128 << p {
        kept >>= 1;
        qe += 1;
    }
    if kept == 0 {
        return FpValue::zero(fmt, neg);
    }
    let frac_bits = fmt.frac_bits();
    if kept >= 1u128 << (p - 1) {
        let e = qe + p - 1;
        if e > fmt.emax() {
            return overflow(fmt, mode, neg);
        }
        let biased = (e + fmt.bias()) as u64;
        let frac = (kept - (1u128 << (p - 1))) as u64;
        FpValue::from_fields(fmt, neg, biased, frac)
    } else {
        debug_assert_eq!(qe, fmt.emin() - frac_bits as i32);
        FpValue::from_fields(fmt, neg, 0, kept as u64)
    }
}

fn overflow(fmt: FpFormat, mode: RoundingMode, neg: bool) -> FpValue {
    let to_inf = match mode {
        RoundingMode::Rne | RoundingMode::Rna => true,
        RoundingMode::Rtz => false,
        RoundingMode::Rtp => !neg,
        RoundingMode::Rtn => neg,
    };
    if to_inf {
        FpValue::infinity(fmt, neg)
    } else {
        FpValue::max_finite(fmt, neg)
    }
}

/// Exact sum, or a sticky approximation with at least 64 significant bits.
/// An exact zero result is returned with `neg = false`.
pub fn add_exact(a: Exact, b: Exact) -> Wide {
    if a.is_zero() {
        return Wide::from(b);
    }
    if b.is_zero() {
        return Wide::from(a);
    }
    let (hi, lo) = if a.exp >= b.exp { (a, b) } else { (b, a) };
    let d = hi.exp - lo.exp;
    let (big, small, exp, sticky) = if d <= 64 {
        ((hi.mant as u128) << d, lo.mant as u128, lo.exp, false)
    } else {
        let sh = (d - 64) as u32;
        let (small, lost) = if sh >= 64 {
            (0u128, true)
        } else {
            let m = lo.mant as u128;
            (m >> sh, m & ((1u128 << sh) - 1) != 0)
        };
        ((hi.mant as u128) << 64, small, hi.exp - 64, lost)
    };
    if hi.neg == lo.neg {
        return Wide {
            neg: hi.neg,
            mant: big + small,
            exp,
            sticky,
        };
    }
    if sticky {
        // big >= 2^64 > small + 1, so the difference stays positive
        return Wide {
            neg: hi.neg,
            mant: big - small - 1,
            exp,
            sticky: true,
        };
    }
    match big.cmp(&small) {
        Ordering::Greater => Wide {
            neg: hi.neg,
            mant: big - small,
            exp,
            sticky: false,
        },
        Ordering::Less => Wide {
            neg: lo.neg,
            mant: small - big,
            exp,
            sticky: false,
        },
        Ordering::Equal => Wide {
            neg: false,
            mant: 0,
            exp: 0,
            sticky: false,
        },
    }
}

pub fn mul_exact(a: Exact, b: Exact) -> Wide {
    Wide {
        neg: a.neg != b.neg,
        mant: a.mant as u128 * b.mant as u128,
        exp: a.exp + b.exp,
        sticky: false,
    }
}

/// Quotient with at least 72 significant bits; `b` must be non-zero.
pub fn div_exact(a: Exact, b: Exact) -> Wide {
    assert!(!b.is_zero(), "division by exact zero");
    let neg = a.neg != b.neg;
    if a.is_zero() {
        return Wide {
            neg,
            mant: 0,
            exp: 0,
            sticky: false,
        };
    }
    let s = 127 - bit_len(a.mant as u128);
    let num = (a.mant as u128) << s;
    let den = b.mant as u128;
    Wide {
        neg,
        mant: num / den,
        exp: a.exp - s - b.exp,
        sticky: !num.is_multiple_of(den),
    }
}

/// Square root of a non-negative value with at least 62 significant bits.
pub fn sqrt_exact(a: Exact) -> Wide {
    debug_assert!(!a.neg || a.is_zero());
    if a.is_zero() {
        return Wide {
            neg: false,
            mant: 0,
            exp: 0,
            sticky: false,
        };
    }
    let mut s = 126 - bit_len(a.mant as u128);
    if (a.exp - s).rem_euclid(2) != 0 {
        s += 1;
    }
    let m = (a.mant as u128) << s;
    let r = isqrt(m);
    Wide {
        neg: false,
        mant: r,
        exp: (a.exp - s) / 2,
        sticky: r * r != m,
    }
}

fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // f64 estimate is within a few units; fix up exactly
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// An extended-real bound used by inverse projections.
#[derive(Debug, Clone, Copy)]
pub enum Real {
    NegInf,
    Fin(Exact),
    PosInf,
}

impl Real {
    pub fn zero() -> Self {
        Real::Fin(Exact::zero(false))
    }

    /// Real value of a non-NaN float (signed zeros collapse to 0).
    pub fn of(v: FpValue) -> Self {
        if v.is_infinite() {
            if v.sign_bit() {
                Real::NegInf
            } else {
                Real::PosInf
            }
        } else {
            Real::Fin(v.to_exact().expect("non-NaN finite value"))
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Real::NegInf => Real::PosInf,
            Real::PosInf => Real::NegInf,
            Real::Fin(e) => Real::Fin(e.negate()),
        }
    }

    pub fn abs(self) -> Self {
        match self {
            Real::NegInf | Real::PosInf => Real::PosInf,
            Real::Fin(e) => Real::Fin(e.abs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Real::Fin(e) if e.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, Real::Fin(_))
    }

    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::NegInf, Real::NegInf) | (Real::PosInf, Real::PosInf) => Ordering::Equal,
            (Real::NegInf, _) | (_, Real::PosInf) => Ordering::Less,
            (_, Real::NegInf) | (Real::PosInf, _) => Ordering::Greater,
            (Real::Fin(a), Real::Fin(b)) => a.cmp_value(b),
        }
    }

    pub fn max(self, other: Real) -> Real {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

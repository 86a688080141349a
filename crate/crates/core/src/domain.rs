//! Interval domains over floating-point ordinals.

use std::fmt;

use crate::float::arith;
use crate::float::exact::{add_exact, round_wide};
use crate::float::{FpFormat, FpValue, RoundingMode};

/// `[lb..ub]` over the extended order of a format, plus a separate NaN flag.
///
/// Bounds are stored as ordinals (see [`FpValue::ordinal`]); `-0` and `+0`
/// are distinct adjacent ordinals. An empty numeric part is normalised to
/// `lo = 1, hi = 0` so structural equality is meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpDomain {
    fmt: FpFormat,
    lo: i64,
    hi: i64,
    nan: bool,
}

pub const ORD_NEG_ZERO: i64 = -1;
pub const ORD_POS_ZERO: i64 = 0;

impl FpDomain {
    pub fn full(fmt: FpFormat) -> Self {
        FpDomain {
            fmt,
            lo: fmt.min_ordinal(),
            hi: fmt.max_ordinal(),
            nan: true,
        }
    }

    /// Every non-NaN value.
    pub fn numeric_full(fmt: FpFormat) -> Self {
        FpDomain {
            nan: false,
            ..FpDomain::full(fmt)
        }
    }

    pub fn empty(fmt: FpFormat) -> Self {
        FpDomain {
            fmt,
            lo: 1,
            hi: 0,
            nan: false,
        }
    }

    pub fn nan_only(fmt: FpFormat) -> Self {
        FpDomain {
            nan: true,
            ..FpDomain::empty(fmt)
        }
    }

    /// Ordinal interval, clamped to the format's range.
    pub fn from_ordinals(fmt: FpFormat, lo: i64, hi: i64, nan: bool) -> Self {
        let lo = lo.max(fmt.min_ordinal());
        let hi = hi.min(fmt.max_ordinal());
        if lo > hi {
            FpDomain {
                nan,
                ..FpDomain::empty(fmt)
            }
        } else {
            FpDomain { fmt, lo, hi, nan }
        }
    }

    pub fn interval(lb: FpValue, ub: FpValue) -> Self {
        FpDomain::from_ordinals(
            lb.format(),
            lb.ordinal().expect("NaN bound"),
            ub.ordinal().expect("NaN bound"),
            false,
        )
    }

    pub fn singleton(v: FpValue) -> Self {
        if v.is_nan() {
            FpDomain::nan_only(v.format())
        } else {
            FpDomain::interval(v, v)
        }
    }

    pub fn format(&self) -> FpFormat {
        self.fmt
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn may_nan(&self) -> bool {
        self.nan
    }

    pub fn lb(&self) -> Option<FpValue> {
        (!self.numeric_empty()).then(|| FpValue::from_ordinal_unchecked(self.fmt, self.lo))
    }

    pub fn ub(&self) -> Option<FpValue> {
        (!self.numeric_empty()).then(|| FpValue::from_ordinal_unchecked(self.fmt, self.hi))
    }

    pub fn numeric_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.numeric_empty() && !self.nan
    }

    /// Exactly one value remains.
    pub fn is_instantiated(&self) -> bool {
        if self.numeric_empty() {
            self.nan
        } else {
            self.lo == self.hi && !self.nan
        }
    }

    /// The single remaining value of an instantiated domain.
    pub fn value(&self) -> Option<FpValue> {
        if !self.is_instantiated() {
            return None;
        }
        if self.numeric_empty() {
            Some(FpValue::nan(self.fmt))
        } else {
            self.lb()
        }
    }

    pub fn contains(&self, v: FpValue) -> bool {
        match v.ordinal() {
            Err(_) => self.nan,
            Ok(o) => self.contains_ordinal(o),
        }
    }

    pub fn contains_ordinal(&self, o: i64) -> bool {
        self.lo <= o && o <= self.hi
    }

    pub fn with_nan(self, nan: bool) -> Self {
        FpDomain { nan, ..self }
    }

    pub fn with_bounds(self, lo: i64, hi: i64) -> Self {
        FpDomain::from_ordinals(self.fmt, lo, hi, self.nan)
    }

    pub fn numeric(self) -> Self {
        self.with_nan(false)
    }

    pub fn intersect(&self, other: &FpDomain) -> FpDomain {
        debug_assert_eq!(self.fmt, other.fmt);
        FpDomain::from_ordinals(
            self.fmt,
            self.lo.max(other.lo),
            self.hi.min(other.hi),
            self.nan && other.nan,
        )
    }

    /// Smallest domain containing both.
    pub fn hull(&self, other: &FpDomain) -> FpDomain {
        debug_assert_eq!(self.fmt, other.fmt);
        let nan = self.nan || other.nan;
        match (self.numeric_empty(), other.numeric_empty()) {
            (true, true) => FpDomain::empty(self.fmt).with_nan(nan),
            (true, false) => other.with_nan(nan),
            (false, true) => self.with_nan(nan),
            (false, false) => FpDomain::from_ordinals(
                self.fmt,
                self.lo.min(other.lo),
                self.hi.max(other.hi),
                nan,
            ),
        }
    }

    pub fn is_subset_of(&self, other: &FpDomain) -> bool {
        (!self.nan || other.nan)
            && (self.numeric_empty() || (other.lo <= self.lo && self.hi <= other.hi))
    }

    /// Numeric part restricted to the sign bit `negative`.
    pub fn sign_half(&self, negative: bool) -> FpDomain {
        let (lo, hi) = if negative {
            (self.fmt.min_ordinal(), ORD_NEG_ZERO)
        } else {
            (ORD_POS_ZERO, self.fmt.max_ordinal())
        };
        FpDomain::from_ordinals(self.fmt, self.lo.max(lo), self.hi.min(hi), false)
    }

    /// Number of values, NaN counted once when allowed.
    pub fn cardinality(&self) -> u64 {
        let numeric = if self.numeric_empty() {
            0
        } else {
            (self.hi as i128 - self.lo as i128 + 1) as u64
        };
        numeric + self.nan as u64
    }

    /// `ub - lb` rounded upward in binary64; `+inf` if either bound is infinite.
    pub fn width(&self) -> f64 {
        let (Some(lb), Some(ub)) = (self.lb(), self.ub()) else {
            return 0.0;
        };
        if lb.is_infinite() || ub.is_infinite() {
            return f64::INFINITY;
        }
        let w = add_exact(ub.to_exact().unwrap(), lb.to_exact().unwrap().negate());
        round_wide(FpFormat::BINARY64, RoundingMode::Rtp, w).to_f64()
    }

    /// Cardinality over width; `+inf` for a numeric singleton, and unbounded
    /// domains are normalised by the width of the full finite range.
    pub fn density(&self) -> f64 {
        let card = self.cardinality() as f64;
        let (Some(lb), Some(ub)) = (self.lb(), self.ub()) else {
            return f64::INFINITY;
        };
        if self.lo == self.hi {
            return f64::INFINITY;
        }
        // half widths keep binary64 ranges finite
        let half_width = if lb.is_infinite() || ub.is_infinite() {
            FpValue::max_finite(self.fmt, false).to_f64()
        } else {
            let mut w = add_exact(ub.to_exact().unwrap(), lb.to_exact().unwrap().negate());
            w.exp -= 1;
            round_wide(FpFormat::BINARY64, RoundingMode::Rtp, w).to_f64()
        };
        (card / 2.0) / half_width
    }
}

impl fmt::Debug for FpDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lb(), self.ub()) {
            (Some(l), Some(u)) => write!(f, "[{}..{}]", l.to_f64(), u.to_f64())?,
            _ => write!(f, "[]")?,
        }
        if self.nan {
            write!(f, "+NaN")?;
        }
        Ok(())
    }
}

/// Split point for the 5-way split.
///
/// Prefers 0, then 1, then -1 when they lie in `[lb..ub]`, and otherwise the
/// average `lb/2 + ub/2` in round-to-nearest-even. Whenever the two bounds are
/// at least two ordinals apart the result is moved strictly inside.
pub fn middle(lb: FpValue, ub: FpValue) -> FpValue {
    let fmt = lb.format();
    let lo = lb.ordinal().expect("NaN bound");
    let hi = ub.ordinal().expect("NaN bound");
    debug_assert!(lo <= hi);
    let one = FpValue::one(fmt);
    let one_ord = one.ordinal().unwrap();
    let m = if lo <= ORD_POS_ZERO && ORD_POS_ZERO <= hi {
        ORD_POS_ZERO
    } else if lo <= ORD_NEG_ZERO && ORD_NEG_ZERO <= hi {
        ORD_NEG_ZERO
    } else if lo <= one_ord && one_ord <= hi {
        one_ord
    } else if lo < -one_ord && -one_ord - 1 <= hi {
        -one_ord - 1
    } else {
        let two = arith::add(RoundingMode::Rne, one, one);
        let avg = arith::add(
            RoundingMode::Rne,
            arith::div(RoundingMode::Rne, lb, two),
            arith::div(RoundingMode::Rne, ub, two),
        );
        avg.ordinal().unwrap_or(lo)
    };
    let m = if hi as i128 - lo as i128 >= 2 {
        m.clamp(lo + 1, hi - 1)
    } else {
        m.clamp(lo, hi)
    };
    FpValue::from_ordinal_unchecked(fmt, m)
}

/// Three-valued Boolean domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolDomain {
    can_false: bool,
    can_true: bool,
}

impl BoolDomain {
    pub const UNKNOWN: BoolDomain = BoolDomain {
        can_false: true,
        can_true: true,
    };
    pub const TRUE: BoolDomain = BoolDomain {
        can_false: false,
        can_true: true,
    };
    pub const FALSE: BoolDomain = BoolDomain {
        can_false: true,
        can_true: false,
    };
    pub const EMPTY: BoolDomain = BoolDomain {
        can_false: false,
        can_true: false,
    };

    pub fn of(b: bool) -> Self {
        if b {
            BoolDomain::TRUE
        } else {
            BoolDomain::FALSE
        }
    }

    pub fn can_be(&self, b: bool) -> bool {
        if b {
            self.can_true
        } else {
            self.can_false
        }
    }

    pub fn value(&self) -> Option<bool> {
        match (self.can_false, self.can_true) {
            (false, true) => Some(true),
            (true, false) => Some(false),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.can_false && !self.can_true
    }

    pub fn intersect(&self, other: &BoolDomain) -> BoolDomain {
        BoolDomain {
            can_false: self.can_false && other.can_false,
            can_true: self.can_true && other.can_true,
        }
    }

    pub fn is_subset_of(&self, other: &BoolDomain) -> bool {
        (!self.can_false || other.can_false) && (!self.can_true || other.can_true)
    }
}

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::exact::Exact;
use super::format::FpFormat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("NaN has no ordinal")]
    NaNHasNoOrdinal,
    #[error("no {0} value exists at the end of the extended order")]
    AtBoundary(&'static str),
    #[error("ordinal {0} out of range for {1}")]
    OrdinalOutOfRange(i64, FpFormat),
}

/// IEEE-754 rounding attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoundingMode {
    /// roundNearestTiesToEven
    Rne,
    /// roundNearestTiesToAway
    Rna,
    /// roundTowardPositive
    Rtp,
    /// roundTowardNegative
    Rtn,
    /// roundTowardZero
    Rtz,
}

impl RoundingMode {
    pub const ALL: [RoundingMode; 5] = [
        RoundingMode::Rne,
        RoundingMode::Rna,
        RoundingMode::Rtp,
        RoundingMode::Rtn,
        RoundingMode::Rtz,
    ];

    pub fn smt_name(self) -> &'static str {
        match self {
            RoundingMode::Rne => "RNE",
            RoundingMode::Rna => "RNA",
            RoundingMode::Rtp => "RTP",
            RoundingMode::Rtn => "RTN",
            RoundingMode::Rtz => "RTZ",
        }
    }

    /// Accepts both the short and the long SMT-LIB spellings.
    pub fn from_smt_name(name: &str) -> Option<Self> {
        Some(match name {
            "RNE" | "roundNearestTiesToEven" => RoundingMode::Rne,
            "RNA" | "roundNearestTiesToAway" => RoundingMode::Rna,
            "RTP" | "roundTowardPositive" => RoundingMode::Rtp,
            "RTN" | "roundTowardNegative" => RoundingMode::Rtn,
            "RTZ" | "roundTowardZero" => RoundingMode::Rtz,
            _ => return None,
        })
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.smt_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpClass {
    NaN,
    Infinite,
    Normal,
    Subnormal,
    Zero,
}

/// A value of some [`FpFormat`], stored as its raw bit pattern.
///
/// All NaN patterns are canonicalised to the quiet NaN with the lowest
/// fraction bit set, so bitwise equality coincides with SMT-LIB `=`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpValue {
    fmt: FpFormat,
    bits: u64,
}

impl FpValue {
    pub fn from_bits(fmt: FpFormat, bits: u64) -> Self {
        let mask = if fmt.total_bits() == 64 {
            u64::MAX
        } else {
            (1u64 << fmt.total_bits()) - 1
        };
        let v = FpValue { fmt, bits: bits & mask };
        if v.is_nan() {
            FpValue::nan(fmt)
        } else {
            v
        }
    }

    /// Builds a value from its three SMT-LIB fields.
    pub fn from_fields(fmt: FpFormat, sign: bool, exp: u64, frac: u64) -> Self {
        let bits = ((sign as u64) << (fmt.total_bits() - 1)) | (exp << fmt.frac_bits()) | frac;
        FpValue::from_bits(fmt, bits)
    }

    pub fn nan(fmt: FpFormat) -> Self {
        FpValue {
            fmt,
            bits: (fmt.exp_field_max() << fmt.frac_bits()) | 1,
        }
    }

    pub fn zero(fmt: FpFormat, negative: bool) -> Self {
        FpValue {
            fmt,
            bits: if negative { fmt.sign_mask() } else { 0 },
        }
    }

    pub fn infinity(fmt: FpFormat, negative: bool) -> Self {
        let mag = fmt.exp_field_max() << fmt.frac_bits();
        FpValue {
            fmt,
            bits: if negative { mag | fmt.sign_mask() } else { mag },
        }
    }

    pub fn max_finite(fmt: FpFormat, negative: bool) -> Self {
        FpValue::infinity(fmt, negative).step_toward_zero()
    }

    pub fn min_subnormal(fmt: FpFormat, negative: bool) -> Self {
        FpValue {
            fmt,
            bits: 1 | if negative { fmt.sign_mask() } else { 0 },
        }
    }

    pub fn one(fmt: FpFormat) -> Self {
        FpValue::from_fields(fmt, false, fmt.bias() as u64, 0)
    }

    fn step_toward_zero(self) -> Self {
        FpValue {
            fmt: self.fmt,
            bits: self.bits - 1,
        }
    }

    pub fn format(self) -> FpFormat {
        self.fmt
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn sign_bit(self) -> bool {
        self.bits & self.fmt.sign_mask() != 0
    }

    pub fn exp_field(self) -> u64 {
        (self.bits >> self.fmt.frac_bits()) & self.fmt.exp_field_max()
    }

    pub fn frac_field(self) -> u64 {
        self.bits & self.fmt.frac_mask()
    }

    pub fn class(self) -> FpClass {
        let e = self.exp_field();
        let m = self.frac_field();
        if e == self.fmt.exp_field_max() {
            if m == 0 {
                FpClass::Infinite
            } else {
                FpClass::NaN
            }
        } else if e == 0 {
            if m == 0 {
                FpClass::Zero
            } else {
                FpClass::Subnormal
            }
        } else {
            FpClass::Normal
        }
    }

    pub fn is_nan(self) -> bool {
        self.class() == FpClass::NaN
    }

    pub fn is_infinite(self) -> bool {
        self.class() == FpClass::Infinite
    }

    pub fn is_zero(self) -> bool {
        self.class() == FpClass::Zero
    }

    pub fn is_finite(self) -> bool {
        !matches!(self.class(), FpClass::NaN | FpClass::Infinite)
    }

    pub fn negate(self) -> Self {
        if self.is_nan() {
            return self;
        }
        FpValue {
            fmt: self.fmt,
            bits: self.bits ^ self.fmt.sign_mask(),
        }
    }

    pub fn abs(self) -> Self {
        if self.is_nan() {
            return self;
        }
        FpValue {
            fmt: self.fmt,
            bits: self.bits & !self.fmt.sign_mask(),
        }
    }

    /// Rank in the extended order `-inf < ... < -0 < +0 < ... < +inf`.
    pub fn ordinal(self) -> Result<i64, ValueError> {
        if self.is_nan() {
            return Err(ValueError::NaNHasNoOrdinal);
        }
        let mag = (self.bits & !self.fmt.sign_mask()) as i64;
        Ok(if self.sign_bit() { -mag - 1 } else { mag })
    }

    pub fn from_ordinal(fmt: FpFormat, ord: i64) -> Result<Self, ValueError> {
        if ord < fmt.min_ordinal() || ord > fmt.max_ordinal() {
            return Err(ValueError::OrdinalOutOfRange(ord, fmt));
        }
        Ok(Self::from_ordinal_unchecked(fmt, ord))
    }

    pub(crate) fn from_ordinal_unchecked(fmt: FpFormat, ord: i64) -> Self {
        debug_assert!(ord >= fmt.min_ordinal() && ord <= fmt.max_ordinal());
        let bits = if ord >= 0 {
            ord as u64
        } else {
            (-(ord + 1)) as u64 | fmt.sign_mask()
        };
        FpValue { fmt, bits }
    }

    pub fn succ(self) -> Result<Self, ValueError> {
        let o = self.ordinal()?;
        if o == self.fmt.max_ordinal() {
            return Err(ValueError::AtBoundary("successor"));
        }
        Ok(Self::from_ordinal_unchecked(self.fmt, o + 1))
    }

    pub fn pred(self) -> Result<Self, ValueError> {
        let o = self.ordinal()?;
        if o == self.fmt.min_ordinal() {
            return Err(ValueError::AtBoundary("predecessor"));
        }
        Ok(Self::from_ordinal_unchecked(self.fmt, o - 1))
    }

    /// Exact rational value of a finite value.
    pub fn to_exact(self) -> Option<Exact> {
        let fmt = self.fmt;
        match self.class() {
            FpClass::NaN | FpClass::Infinite => None,
            FpClass::Zero => Some(Exact::zero(self.sign_bit())),
            FpClass::Subnormal => Some(Exact::new(
                self.sign_bit(),
                self.frac_field(),
                fmt.emin() - fmt.frac_bits() as i32,
            )),
            FpClass::Normal => Some(Exact::new(
                self.sign_bit(),
                self.frac_field() | (1 << fmt.frac_bits()),
                self.exp_field() as i32 - fmt.bias() - fmt.frac_bits() as i32,
            )),
        }
    }

    /// Widening conversion; exact for every supported format.
    pub fn to_f64(self) -> f64 {
        match self.class() {
            FpClass::NaN => f64::NAN,
            FpClass::Infinite => {
                if self.sign_bit() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            _ => self.to_exact().expect("finite").to_f64(),
        }
    }

    /// Conversion from a host double; `None` when the value is not exactly representable.
    pub fn from_f64_exact(fmt: FpFormat, x: f64) -> Option<Self> {
        if x.is_nan() {
            return Some(FpValue::nan(fmt));
        }
        if x.is_infinite() {
            return Some(FpValue::infinity(fmt, x < 0.0));
        }
        let v = FpValue::from_bits(FpFormat::BINARY64, x.to_bits());
        let exact = v.to_exact()?;
        exact.round_exactly(fmt)
    }

    /// Total order that coincides with the ordinal order and puts NaN last.
    pub fn total_cmp(self, other: FpValue) -> Ordering {
        match (self.ordinal(), other.ordinal()) {
            (Ok(a), Ok(b)) => a.cmp(&b),
            (Err(_), Err(_)) => Ordering::Equal,
            (Err(_), Ok(_)) => Ordering::Greater,
            (Ok(_), Err(_)) => Ordering::Less,
        }
    }

    /// Every non-NaN value of `fmt` in increasing order; test helper for mini formats.
    pub fn all_non_nan(fmt: FpFormat) -> impl Iterator<Item = FpValue> {
        (fmt.min_ordinal()..=fmt.max_ordinal()).map(move |o| FpValue::from_ordinal_unchecked(fmt, o))
    }
}

impl fmt::Debug for FpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{:#x}]", self.to_f64(), self.bits)
    }
}

impl fmt::Display for FpValue {
    /// SMT-LIB literal syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (eb, sb) = (self.fmt.ebits(), self.fmt.sbits());
        match self.class() {
            FpClass::NaN => write!(f, "(_ NaN {eb} {sb})"),
            FpClass::Infinite if self.sign_bit() => write!(f, "(_ -oo {eb} {sb})"),
            FpClass::Infinite => write!(f, "(_ +oo {eb} {sb})"),
            FpClass::Zero if self.sign_bit() => write!(f, "(_ -zero {eb} {sb})"),
            FpClass::Zero => write!(f, "(_ +zero {eb} {sb})"),
            _ => write!(
                f,
                "(fp #b{} #b{:0ew$b} #b{:0fw$b})",
                self.sign_bit() as u8,
                self.exp_field(),
                self.frac_field(),
                ew = eb as usize,
                fw = (sb - 1) as usize
            ),
        }
    }
}

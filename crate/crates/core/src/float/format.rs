use std::fmt;

use thiserror::Error;

/// Largest exponent width accepted as a solver domain (binary64).
pub const MAX_EBITS: u32 = 11;
/// Largest significand width accepted as a solver domain (binary64).
pub const MAX_SBITS: u32 = 53;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported floating-point format (_ FloatingPoint {ebits} {sbits}): need 2 <= eb <= {MAX_EBITS} and 2 <= sb <= {MAX_SBITS}")]
pub struct FormatError {
    pub ebits: u32,
    pub sbits: u32,
}

/// A binary IEEE-754 interchange format.
///
/// `sbits` counts the hidden bit, so binary32 is `(8, 24)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpFormat {
    ebits: u32,
    sbits: u32,
}

impl FpFormat {
    pub const BINARY16: FpFormat = FpFormat { ebits: 5, sbits: 11 };
    pub const BINARY32: FpFormat = FpFormat { ebits: 8, sbits: 24 };
    pub const BINARY64: FpFormat = FpFormat { ebits: 11, sbits: 53 };

    pub fn new(ebits: u32, sbits: u32) -> Result<Self, FormatError> {
        if !(2..=MAX_EBITS).contains(&ebits) || !(2..=MAX_SBITS).contains(&sbits) {
            return Err(FormatError { ebits, sbits });
        }
        Ok(FpFormat { ebits, sbits })
    }

    pub fn ebits(self) -> u32 {
        self.ebits
    }

    pub fn sbits(self) -> u32 {
        self.sbits
    }

    /// Stored fraction bits (`sbits - 1`).
    pub fn frac_bits(self) -> u32 {
        self.sbits - 1
    }

    pub fn total_bits(self) -> u32 {
        self.ebits + self.sbits
    }

    pub fn bias(self) -> i32 {
        (1 << (self.ebits - 1)) - 1
    }

    pub fn emax(self) -> i32 {
        self.bias()
    }

    pub fn emin(self) -> i32 {
        1 - self.bias()
    }

    pub(crate) fn sign_mask(self) -> u64 {
        1 << (self.total_bits() - 1)
    }

    pub(crate) fn frac_mask(self) -> u64 {
        (1 << self.frac_bits()) - 1
    }

    pub(crate) fn exp_field_max(self) -> u64 {
        (1 << self.ebits) - 1
    }

    /// Ordinal of `+inf`; the ordinal range is `[-max_ordinal() - 1, max_ordinal()]`.
    pub fn max_ordinal(self) -> i64 {
        (self.exp_field_max() << self.frac_bits()) as i64
    }

    pub fn min_ordinal(self) -> i64 {
        -self.max_ordinal() - 1
    }

    /// Number of non-NaN values, both zeros and both infinities included.
    pub fn non_nan_count(self) -> u64 {
        2 * (self.max_ordinal() as u64 + 1)
    }
}

impl fmt::Display for FpFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(_ FloatingPoint {} {})", self.ebits, self.sbits)
    }
}

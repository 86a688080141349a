//! Parametric IEEE-754 binary formats and correctly rounded arithmetic.

pub mod arith;
pub mod exact;
mod format;
mod value;

pub use format::{FormatError, FpFormat, MAX_EBITS, MAX_SBITS};
pub use value::{FpClass, FpValue, RoundingMode, ValueError};

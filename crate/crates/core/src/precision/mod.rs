//! Working-precision arithmetic shared by every other module.
//!
//! Reals are MPFR floats; [`Complex`] pairs two of them. All exact
//! combinatorial quantities (harmonic numbers, Pochhammer ratios, Bernoulli
//! numbers) are built in integer/rational arithmetic and rounded once.

mod combinatorics;
mod complex;
mod quadrature;
mod serial;
mod series;

pub use combinatorics::{
    bernoulli, coeff_ratio, coeff_ratio_exact, factorial, harmonic, harmonic_exact, log_power,
    pochhammer, pochhammer_int, CoeffRatio,
};
pub use complex::Complex;
pub use quadrature::{gauss_legendre_unit, GaussRule};
pub use serial::{parse_complex, parse_real, render_complex, render_complex_json, render_real};
pub use series::TruncSeries;

use rug::Float;

use crate::error::{Error, Result};

/// Arbitrary-precision real at the context's working precision.
pub type WPReal = Float;
/// Arbitrary-precision complex at the context's working precision.
pub type WPComplex = Complex;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Decimal working precision plus guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const DEFAULT_DIGITS: u32 = 30;
    pub const DEFAULT_GUARD: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "digits must be at least {}, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Total decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// MPFR precision in bits for `digits + guard` decimal digits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.working_digits()) * BITS_PER_DIGIT).ceil() as u32 + 4
    }

    /// MPFR precision for the reported digits only.
    pub fn report_bits(&self) -> u32 {
        (f64::from(self.digits) * BITS_PER_DIGIT).ceil() as u32 + 1
    }

    /// Target absolute truncation error for series evaluations, 10^-(digits+guard).
    pub fn target_eps(&self) -> f64 {
        10f64.powi(-(self.working_digits() as i32))
    }

    pub fn real(&self, v: f64) -> Float {
        Float::with_val(self.bits(), v)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::from_f64(self.bits(), re, im)
    }

    /// Residual tolerance 10^-(digits - slack).
    pub fn tolerance(&self, slack: u32) -> f64 {
        10f64.powi(-(self.digits as i32 - slack as i32))
    }

    /// Rounds `x` to the reported precision.
    pub fn report(&self, x: &Float) -> Float {
        Float::with_val(self.report_bits(), x)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            digits: Self::DEFAULT_DIGITS,
            guard: Self::DEFAULT_GUARD,
        }
    }
}

/// Least-squares slope of `y` against `x`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

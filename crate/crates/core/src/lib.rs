//! Generalized Stieltjes constants `gamma_l(a)` computed from finite and
//! infinite series in s-derivatives of the Hurwitz zeta function at
//! integer arguments, with exact integral remainders, remainder envelopes,
//! and an independent limit-representation oracle.

pub mod calibration;
pub mod cli;
pub mod error;
pub mod hurwitz;
pub mod methods;
pub mod oracle;
pub mod pade;
pub mod stieltjes;
pub mod precision;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use precision::{Complex, PrecisionContext, WPComplex, WPReal};

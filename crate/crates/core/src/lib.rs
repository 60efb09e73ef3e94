//! Exact-arithmetic engine for q-Schröder-like numbers.
//!
//! The numbers `A(n,x,y)` and `a(n,x,y)` are the coefficients of the power
//! series `F(z,x,y)` and `f(z,x,y)` defined by
//!
//! ```text
//! F(z) = 1 + x z F(z) + y z F(z) F(qz)
//! f(z) = (x + y F(z)) / (x + y)
//! ```
//!
//! The crate builds these series two ways (coefficient recurrences and closed
//! forms through the auxiliary series `h` and `H`), expands the associated
//! q-continued fractions as truncated power series, and checks the identities
//! relating them coefficientwise at exact rational sample points.
//!
//! Everything is exact: scalars are [`Rational`]s, polynomials in `q` are
//! [`QPoly`]s, and series are [`TruncSeries`] truncated at a fixed order.

pub mod closedforms;
pub mod contfrac;
pub mod error;
pub mod exactnum;
pub mod params;
pub mod powerseries;
pub mod qkit;
pub mod schroeder;
pub mod verifier;

pub use error::{Error, Result};
pub use exactnum::{QPoly, Rational};
pub use params::Params;
pub use powerseries::{Coeff, Mode, TruncSeries};

/// Default truncation order for series.
pub const DEFAULT_ORDER: usize = 16;

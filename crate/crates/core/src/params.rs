use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::qkit::QFactorialCache;
use crate::DEFAULT_ORDER;

/// An evaluation point `(q, x, y)` together with the truncation order `N`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub q: Rational,
    pub x: Rational,
    pub y: Rational,
    #[serde(rename = "N")]
    pub order: usize,
}

impl Params {
    pub fn new(q: Rational, x: Rational, y: Rational, order: usize) -> Self {
        Params { q, x, y, order }
    }

    /// `(q, x, y)` at the default order.
    pub fn at(q: Rational, x: Rational, y: Rational) -> Self {
        Params::new(q, x, y, DEFAULT_ORDER)
    }

    /// The classical point `q = x = y = 1`.
    pub fn classical(order: usize) -> Self {
        Params::new(Rational::one(), Rational::one(), Rational::one(), order)
    }

    pub fn with_order(&self, order: usize) -> Self {
        Params { order, ..self.clone() }
    }

    pub fn with_x(&self, x: Rational) -> Self {
        Params { x, ..self.clone() }
    }

    pub fn with_y(&self, y: Rational) -> Self {
        Params { y, ..self.clone() }
    }

    /// The point with `y` replaced by `q^k·y`.
    pub fn with_y_scaled(&self, k: u32) -> Self {
        self.with_y(&self.y * &self.q.pow(k))
    }

    pub fn x_plus_y(&self) -> Rational {
        &self.x + &self.y
    }

    /// Fails unless `(q;q)_j ≠ 0` for `1 ≤ j ≤ N`.
    pub fn require_generic_q(&self) -> Result<()> {
        QFactorialCache::new(&self.q, self.order).require_invertible(self.order)
    }

    pub fn require_nonzero_q(&self) -> Result<()> {
        if self.q.is_zero() {
            return Err(Error::RejectedParams("q must be nonzero".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, x={}, y={}, N={})", self.q, self.x, self.y, self.order)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

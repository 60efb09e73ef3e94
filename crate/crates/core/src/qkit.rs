//! q-combinatorial building blocks: `(q;q)_k`, Gaussian binomials,
//! q-Pochhammer products in `z` and the q-exponential `e(z) = Σ zⁿ/(q;q)_n`.
//!
//! The Gaussian binomial uses the q-Pascal rule and never divides, so it is
//! defined for every `q`. Everything that divides by `(q;q)_k` fails with
//! [`Error::DegenerateQ`] when some `q^j = 1`; no limits are taken.

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::powerseries::{Coeff, TruncSeries};

/// Table of `(q;q)_k = (1-q)(1-q²)⋯(1-q^k)` for `k = 0..=K`.
#[derive(Debug, Clone)]
pub struct QFactorialCache {
    q: Rational,
    table: Vec<Rational>,
    first_vanishing: Option<usize>,
}

impl QFactorialCache {
    pub fn new(q: &Rational, max_k: usize) -> Self {
        let mut table = Vec::with_capacity(max_k + 1);
        table.push(Rational::one());
        let mut q_pow = Rational::one();
        let mut first_vanishing = None;
        for k in 1..=max_k {
            q_pow = &q_pow * q;
            let factor = Rational::one() - &q_pow;
            if factor.is_zero() && first_vanishing.is_none() {
                first_vanishing = Some(k);
            }
            let next = &table[k - 1] * &factor;
            table.push(next);
        }
        QFactorialCache { q: q.clone(), table, first_vanishing }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn max_k(&self) -> usize {
        self.table.len() - 1
    }

    /// Smallest `j` with `(q;q)_j = 0`, if any within the table.
    pub fn first_vanishing(&self) -> Option<usize> {
        self.first_vanishing
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.table.get(k)
    }

    /// Fails when some `(q;q)_j` with `j ≤ k` vanishes.
    pub fn require_invertible(&self, k: usize) -> Result<()> {
        match self.first_vanishing {
            Some(j) if j <= k => Err(Error::DegenerateQ { index: j }),
            _ => Ok(()),
        }
    }

    /// `1/(q;q)_k`.
    pub fn inverse(&self, k: usize) -> Result<Rational> {
        self.require_invertible(k)?;
        let v = self.table.get(k).ok_or_else(|| {
            Error::Domain(format!("(q;q)_{k} is beyond the cached range 0..={}", self.max_k()))
        })?;
        v.recip()
    }
}

/// Gaussian binomial `[n choose k]_q` by the q-Pascal rule
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`. Zero when `k > n`.
pub fn qbinomial<C: Coeff>(n: usize, k: usize, q: &C) -> C {
    if k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let q_pows: Vec<C> = std::iter::successors(Some(C::one()), |p| Some(p.mul(q)))
        .take(k + 1)
        .collect();
    // row[j] = [m choose j] for the current m, j ≤ k.
    let mut row = vec![C::zero(); k + 1];
    row[0] = C::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = row[j - 1].add(&q_pows[j].mul(&row[j]));
        }
    }
    row[k].clone()
}

/// The polynomial `(xz;q)_k = Π_{j<k} (1 - q^j x z)` truncated at order `N`.
pub fn qpochhammer_series(x: &Rational, k: usize, order: usize, q: &Rational) -> TruncSeries<Rational> {
    let mut acc = TruncSeries::one(q.clone(), order);
    let mut root = x.clone();
    for _ in 0..k {
        let factor = TruncSeries::from_prefix(q.clone(), order, [Rational::one(), -&root]);
        acc = acc.mul(&factor).expect("same order and q");
        root = &root * q;
    }
    acc
}

/// `1/(xz;q)_k` as the inverse of [`qpochhammer_series`].
pub fn qpochhammer_inv_series(x: &Rational, k: usize, order: usize, q: &Rational) -> TruncSeries<Rational> {
    qpochhammer_series(x, k, order, q)
        .inverse()
        .expect("constant term of (xz;q)_k is 1")
}

/// `1/(xz;q)_k` from the expansion `Σ_j [k+j-1 choose j]_q (xz)^j`.
///
/// The `x^j` factor is required: without it the sum is only the `x = 1`
/// case and is not the inverse of `(xz;q)_k`.
pub fn qpochhammer_inv_binomial(x: &Rational, k: usize, order: usize, q: &Rational) -> TruncSeries<Rational> {
    if k == 0 {
        return TruncSeries::one(q.clone(), order);
    }
    let coeffs = (0..=order).map(|j| qbinomial(k + j - 1, j, q) * x.pow(j as u32));
    TruncSeries::from_prefix(q.clone(), order, coeffs)
}

/// `e(scale·z) = Σ scaleⁿ zⁿ / (q;q)_n`.
pub fn qexp_series(order: usize, q: &Rational, scale: &Rational) -> Result<TruncSeries<Rational>> {
    let cache = QFactorialCache::new(q, order);
    cache.require_invertible(order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coeffs.push(scale.pow(n as u32) * cache.inverse(n)?);
    }
    TruncSeries::new(q.clone(), order, coeffs)
}

/// `1/e(scale·z) = Σ (-1)ⁿ q^{n(n-1)/2} scaleⁿ zⁿ / (q;q)_n`.
pub fn qexp_inv_series(order: usize, q: &Rational, scale: &Rational) -> Result<TruncSeries<Rational>> {
    let cache = QFactorialCache::new(q, order);
    cache.require_invertible(order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = q.pow(triangular(n)) * scale.pow(n as u32) * cache.inverse(n)?;
        if n % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    TruncSeries::new(q.clone(), order, coeffs)
}

/// `n(n-1)/2`, the exponent `C(n,2)`.
pub(crate) fn triangular(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

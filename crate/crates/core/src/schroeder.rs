//! q-Schröder-like numbers from their coefficient recurrences.
//!
//! `A(n,x,y)` are the coefficients of `F(z) = 1 + xzF(z) + yzF(z)F(qz)`:
//!
//! ```text
//! A(0) = 1,  A(n) = x A(n-1) + y Σ_{k<n} A(k) q^k A(n-1-k)
//! ```
//!
//! and `a(n,x,y)` those of `f = (x + yF)/(x + y)`:
//!
//! ```text
//! a(0) = 1,  a(n) = -q^{n-1} x a(n-1) + (x+y) Σ_{k<n} a(k) q^k a(n-1-k)
//! ```
//!
//! Both recurrences are division-free, so they work for any `q, x, y` and in
//! polynomial mode. They are deliberately independent of the closed forms in
//! [`crate::closedforms`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{QPoly, Rational};
use crate::params::Params;
use crate::powerseries::Coeff;

/// `A(0..=nmax)` for the point `(q, x, y)`.
#[allow(non_snake_case)]
pub fn gen_A<C: Coeff>(nmax: usize, q: &C, x: &C, y: &C) -> Vec<C> {
    let q_pows = powers(q, nmax);
    let mut out: Vec<C> = Vec::with_capacity(nmax + 1);
    out.push(C::one());
    for n in 1..=nmax {
        let conv = twisted_convolution(&out, &q_pows, n - 1);
        out.push(x.mul(&out[n - 1]).add(&y.mul(&conv)));
    }
    out
}

/// `a(0..=nmax)` for the point `(q, x, y)`.
pub fn gen_a<C: Coeff>(nmax: usize, q: &C, x: &C, y: &C) -> Vec<C> {
    let q_pows = powers(q, nmax);
    let x_plus_y = x.add(y);
    let mut out: Vec<C> = Vec::with_capacity(nmax + 1);
    out.push(C::one());
    for n in 1..=nmax {
        let conv = twisted_convolution(&out, &q_pows, n - 1);
        let lead = q_pows[n - 1].mul(x).mul(&out[n - 1]).neg();
        out.push(lead.add(&x_plus_y.mul(&conv)));
    }
    out
}

fn powers<C: Coeff>(q: &C, n: usize) -> Vec<C> {
    std::iter::successors(Some(C::one()), |p| Some(p.mul(q)))
        .take(n + 1)
        .collect()
}

/// `Σ_{k=0}^{m} s[k] q^k s[m-k]`.
fn twisted_convolution<C: Coeff>(s: &[C], q_pows: &[C], m: usize) -> C {
    (0..=m).fold(C::zero(), |acc, k| acc.add(&s[k].mul(&q_pows[k]).mul(&s[m - k])))
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan_closed(n: usize) -> Rational {
    let mut binom = BigInt::from(1u32);
    for i in 0..n {
        binom = binom * BigInt::from(2 * n - i) / BigInt::from(i + 1);
    }
    let (quot, rem) = binom.div_rem(&BigInt::from(n + 1));
    debug_assert!(rem == BigInt::from(0u32));
    Rational::from(quot)
}

/// Sequence families the generators can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A(n,x,y)`.
    A,
    /// `a(n,x,y)`.
    LowerA,
    /// Carlitz q-Catalan numbers `C_n(q) = A(n,0,1) = a(n,0,1)`.
    CarlitzCatalan,
    /// Catalan numbers, the `q = 1` case of the Carlitz numbers.
    Catalan,
    /// `a(n,1,1)` at `q = 1`.
    LittleSchroeder,
    /// `A(n,1,1)` at `q = 1`.
    LargeSchroeder,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::A,
        Family::LowerA,
        Family::CarlitzCatalan,
        Family::Catalan,
        Family::LittleSchroeder,
        Family::LargeSchroeder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::LowerA => "a",
            Family::CarlitzCatalan => "carlitz",
            Family::Catalan => "catalan",
            Family::LittleSchroeder => "little-schroeder",
            Family::LargeSchroeder => "large-schroeder",
        }
    }

    /// Classical families are pinned to `q = 1`.
    pub fn is_classical(self) -> bool {
        matches!(self, Family::Catalan | Family::LittleSchroeder | Family::LargeSchroeder)
    }

    /// Families whose recurrence is division-free in symbolic `q`.
    pub fn supports_qpoly(self) -> bool {
        !self.is_classical()
    }

    /// Terms `0..=nmax` at the rational point in `p`. Classical families
    /// ignore `p`; the Carlitz family ignores `x` and `y`.
    pub fn generate(self, nmax: usize, p: &Params) -> Vec<Rational> {
        let one = Rational::one();
        let zero = Rational::zero();
        match self {
            Family::A => gen_A(nmax, &p.q, &p.x, &p.y),
            Family::LowerA => gen_a(nmax, &p.q, &p.x, &p.y),
            Family::CarlitzCatalan => gen_A(nmax, &p.q, &zero, &one),
            Family::Catalan => gen_A(nmax, &one, &zero, &one),
            Family::LittleSchroeder => gen_a(nmax, &one, &one, &one),
            Family::LargeSchroeder => gen_A(nmax, &one, &one, &one),
        }
    }

    /// Terms `0..=nmax` as polynomials in `q`, with `x` and `y` given as
    /// polynomials in `q`. The Carlitz family ignores `x` and `y`.
    pub fn generate_qpoly(self, nmax: usize, x: &QPoly, y: &QPoly) -> Result<Vec<QPoly>> {
        let q = QPoly::q();
        match self {
            Family::A => Ok(gen_A(nmax, &q, x, y)),
            Family::LowerA => Ok(gen_a(nmax, &q, x, y)),
            Family::CarlitzCatalan => Ok(gen_A(nmax, &q, &QPoly::zero(), &QPoly::one())),
            _ => Err(Error::Domain(format!(
                "family `{}` is a q = 1 specialization and has no polynomial mode",
                self.name()
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "carlitz-catalan" => Ok(Family::CarlitzCatalan),
            _ => Family::ALL
                .into_iter()
                .find(|f| f.name() == s)
                .ok_or_else(|| Error::Unknown { kind: "family", name: s.to_string() }),
        }
    }
}

const LITTLE_SCHROEDER: [u64; 12] = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859, 2646723];
const LARGE_SCHROEDER: [u64; 12] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098, 1037718, 5293446];
const CATALAN: [u64; 12] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];

/// Embedded reference values (OEIS A001003, A006318, A000108) for the
/// classical families.
pub fn reference_prefix(family: Family) -> Result<&'static [u64]> {
    match family {
        Family::LittleSchroeder => Ok(&LITTLE_SCHROEDER),
        Family::LargeSchroeder => Ok(&LARGE_SCHROEDER),
        Family::Catalan => Ok(&CATALAN),
        other => Err(Error::Unknown { kind: "reference sequence", name: other.name().to_string() }),
    }
}

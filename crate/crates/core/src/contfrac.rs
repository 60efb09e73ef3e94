//! Continued fractions whose partial numerators and denominators are
//! truncated power series.
//!
//! A [`CFSpec`] describes
//!
//! ```text
//! D = b0 + a1/(b1 + a2/(b2 + ⋯))
//! ```
//!
//! with every minus sign folded into the `a_k`. Its value is either `D`
//! itself ([`Form::Direct`]) or `1/D` ([`Form::Reciprocal`]); every fraction
//! in the catalogue has the reciprocal form `1/(1 - ⋯)`.
//!
//! Each `a_k` is divisible by `z` and each `b_k` has constant term 1, so
//! truncating at depth `d` only disturbs coefficients of order at least
//! `v(a_1) + ⋯ + v(a_{d+1})`, where `v` is the `z`-adic valuation. This bound
//! is what certifies a convergent in [`CFSpec::stabilized`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::closedforms::{f_from_recurrence, F_from_recurrence};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::Params;
use crate::powerseries::TruncSeries;

type Series = TruncSeries<Rational>;

/// Level generator: `k ↦ (a_k, b_k)` for `k ≥ 1`.
pub type LevelFn = Arc<dyn Fn(usize) -> Result<(Series, Series)> + Send + Sync>;

/// Whether the fraction's value is `D` or `1/D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Direct,
    Reciprocal,
}

#[derive(Clone)]
pub struct CFSpec {
    pub label: String,
    pub params: Params,
    pub form: Form,
    pub b0: Series,
    levels: LevelFn,
}

/// A finite truncation of a [`CFSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent {
    pub depth: usize,
    pub value: Series,
    /// Largest `m` such that the convergents at `depth` and `depth - 1`
    /// agree through `z^m`. `None` at depth 0 or when they differ already at
    /// the constant term.
    pub stabilized_to: Option<usize>,
}

/// Result of [`CFSpec::stabilized`].
#[derive(Debug, Clone, PartialEq)]
pub struct Stabilization {
    pub value: Series,
    /// Depth at which two consecutive convergents first agreed through the
    /// full order with the truncation bound certifying the shallower one.
    pub depth: usize,
}

impl fmt::Debug for CFSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CFSpec")
            .field("label", &self.label)
            .field("params", &self.params)
            .field("form", &self.form)
            .field("b0", &self.b0)
            .finish_non_exhaustive()
    }
}

impl CFSpec {
    pub fn new(
        label: impl Into<String>,
        params: Params,
        form: Form,
        b0: Series,
        levels: impl Fn(usize) -> Result<(Series, Series)> + Send + Sync + 'static,
    ) -> Self {
        CFSpec { label: label.into(), params, form, b0, levels: Arc::new(levels) }
    }

    pub fn order(&self) -> usize {
        self.b0.order()
    }

    /// `(a_k, b_k)` for `k ≥ 1`.
    pub fn level(&self, k: usize) -> Result<(Series, Series)> {
        let (a, b) = (self.levels)(k)?;
        self.b0.is_compatible(&a)?;
        self.b0.is_compatible(&b)?;
        Ok((a, b))
    }

    fn evaluate(&self, levels: &[(Series, Series)]) -> Result<Series> {
        let mut tail: Option<Series> = None;
        for k in (0..=levels.len()).rev() {
            let b = if k == 0 { &self.b0 } else { &levels[k - 1].1 };
            let r = match tail {
                None => b.clone(),
                Some(next) => {
                    let a = &levels[k].0;
                    let inv = next.inverse().map_err(|_| Error::NonUnitLevel { level: k + 1 })?;
                    b.add(&a.mul(&inv)?)?
                }
            };
            tail = Some(r);
        }
        let d = tail.expect("level 0 always evaluated");
        match self.form {
            Form::Direct => Ok(d),
            Form::Reciprocal => d.inverse().map_err(|_| Error::NonUnitLevel { level: 0 }),
        }
    }

    /// Forward three-term recurrence: the convergents at depths `d - 1` and
    /// `d = levels.len()`, each as a single quotient. Independent of the
    /// backward evaluation in [`CFSpec::convergent`].
    fn wallis_pair(&self, levels: &[(Series, Series)]) -> Result<(Series, Series)> {
        let one = self.b0.lift(Rational::one());
        let zero = self.b0.lift(Rational::zero());
        // (P_{k-1}, Q_{k-1}) and (P_k, Q_k), starting from k = 0.
        let (mut p_prev, mut q_prev) = (one.clone(), zero);
        let (mut p_cur, mut q_cur) = (self.b0.clone(), one);
        for (a, b) in levels {
            let p_next = b.mul(&p_cur)?.add(&a.mul(&p_prev)?)?;
            let q_next = b.mul(&q_cur)?.add(&a.mul(&q_prev)?)?;
            p_prev = std::mem::replace(&mut p_cur, p_next);
            q_prev = std::mem::replace(&mut q_cur, q_next);
        }
        let quotient = |p: &Series, q: &Series| -> Result<Series> {
            let (num, den) = match self.form {
                Form::Direct => (p, q),
                Form::Reciprocal => (q, p),
            };
            let inv = den
                .inverse()
                .map_err(|_| Error::NonUnitLevel { level: levels.len() })?;
            num.mul(&inv)
        };
        let cur = quotient(&p_cur, &q_cur)?;
        let prev = if levels.is_empty() { cur.clone() } else { quotient(&p_prev, &q_prev)? };
        Ok((prev, cur))
    }

    fn levels_through(&self, depth: usize) -> Result<Vec<(Series, Series)>> {
        (1..=depth).map(|k| self.level(k)).collect()
    }

    /// Value of the fraction cut off after level `depth`, evaluated from the
    /// bottom up: `r_depth = b_depth`, `r_k = b_k + a_{k+1}/r_{k+1}`.
    pub fn convergent(&self, depth: usize) -> Result<Convergent> {
        let levels = self.levels_through(depth)?;
        let value = self.evaluate(&levels)?;
        let stabilized_to = if depth == 0 {
            None
        } else {
            let (prev, _) = self.wallis_pair(&levels)?;
            let cmp = prev.eq_to_order(&value, self.order());
            match cmp.mismatch {
                None => Some(cmp.through),
                Some(m) => m.index.checked_sub(1),
            }
        };
        Ok(Convergent { depth, value, stabilized_to })
    }

    /// Smallest depth at which two consecutive convergents agree through
    /// `z^N`, together with the agreed value.
    ///
    /// Consecutive convergents differ by `±a_1⋯a_d / (Q_{d-1} Q_d)` with unit
    /// `Q`s, so they first agree through `z^N` exactly when
    /// `v(a_1) + ⋯ + v(a_d) > N` (or some `a_k` vanishes). The depth is found
    /// from the valuations; the pair of convergents is then computed by the
    /// forward recurrence, compared, and the deeper one is checked against
    /// the backward evaluation. Gives up after depth `4N`, which only happens
    /// when some `a_k` is not divisible by `z`.
    pub fn stabilized(&self) -> Result<Stabilization> {
        let order = self.order();
        let max_depth = 4 * order.max(1);
        let mut levels: Vec<(Series, Series)> = Vec::new();
        // Σ v(a_k) so far; `None` once some a_k vanishes (the tail is dead).
        let mut exact_below: Option<usize> = Some(0);
        for depth in 1..=max_depth {
            let (a, b) = self.level(depth)?;
            exact_below = match (exact_below, a.valuation()) {
                (Some(s), Some(v)) => Some(s + v),
                _ => None,
            };
            levels.push((a, b));
            if exact_below.is_some_and(|s| s <= order) {
                continue;
            }
            let (prev, cur) = self.wallis_pair(&levels)?;
            let backward = self.evaluate(&levels)?;
            if !prev.eq_to_order(&cur, order).agrees() || backward != cur {
                return Err(Error::Domain(format!(
                    "{}: convergents at depths {} and {depth} disagree below z^{}",
                    self.label,
                    depth - 1,
                    order + 1
                )));
            }
            return Ok(Stabilization { value: backward, depth });
        }
        Err(Error::NonStabilizing { depth: max_depth })
    }
}

/// Which series a catalogue fraction expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `F(z,x,y)`, coefficients `A(n,x,y)`.
    BigF,
    /// `f(z,x,y)`, coefficients `a(n,x,y)`.
    SmallF,
}

/// Continued fractions in the catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfId {
    /// `F = 1/(1 - xz - yz/(1 - qxz - qyz/(1 - q²xz - ⋯)))`.
    Cf2_5,
    /// Jacobi-type fraction for `f` with `z²` partial numerators.
    Jacobi,
    /// `f = 1/(1 - yz/(1 - (x+qy)z/(1 - q²yz/(1 - q(x+q²y)z/⋯))))`.
    Cf3_3,
    /// `f = 1/(1 + xz/q - (z/q)(x+qy)/(1 + xz/q - (z/q)(x+q²y)/⋯))`.
    Cf3_4,
    /// Touchard's fraction: [`CfId::Cf3_4`] at `(x,y) = (q,-q)`.
    Cf3_5,
    /// `f = 1/(1 - yz/(1 - xz - qyz/(1 - qxz - ⋯)))`.
    Cf3_8,
    /// [`CfId::Cf3_8`] at `(x,y) = (1,-1)`, whose value is `Σ (-1)ⁿ q^{n(n-1)/2} zⁿ`.
    Cf3_9,
    /// [`CfId::Jacobi`] at `q = x = y = 1`.
    Cf1_3,
    /// [`CfId::Cf3_4`] at `q = x = y = 1`.
    Cf1_4,
    /// [`CfId::Cf3_8`] at `q = x = y = 1`.
    Cf1_5,
    /// [`CfId::Cf3_3`] at `q = x = y = 1`.
    Cf1_6,
    /// [`CfId::Cf3_4`] at `(x,y) = (1,q)`.
    Cf3_10,
    /// [`CfId::Cf3_8`] at `(x,y) = (1,q)`.
    Cf3_11,
    /// [`CfId::Cf3_3`] at `(x,y) = (1,q)`.
    Cf3_12,
    /// Rogers–Ramanujan: [`CfId::Cf3_4`] at `(x,y) = (0,-q)`.
    RogersRamanujan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Schroeder,
    Jacobi,
    Alternating,
    Touchard,
    Thron,
}

impl CfId {
    pub const ALL: [CfId; 15] = [
        CfId::Cf2_5,
        CfId::Jacobi,
        CfId::Cf3_3,
        CfId::Cf3_4,
        CfId::Cf3_5,
        CfId::Cf3_8,
        CfId::Cf3_9,
        CfId::Cf1_3,
        CfId::Cf1_4,
        CfId::Cf1_5,
        CfId::Cf1_6,
        CfId::Cf3_10,
        CfId::Cf3_11,
        CfId::Cf3_12,
        CfId::RogersRamanujan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CfId::Cf2_5 => "cf-2.5",
            CfId::Jacobi => "cf-jacobi",
            CfId::Cf3_3 => "cf-3.3",
            CfId::Cf3_4 => "cf-3.4",
            CfId::Cf3_5 => "cf-3.5",
            CfId::Cf3_8 => "cf-3.8",
            CfId::Cf3_9 => "cf-3.9",
            CfId::Cf1_3 => "cf-1.3",
            CfId::Cf1_4 => "cf-1.4",
            CfId::Cf1_5 => "cf-1.5",
            CfId::Cf1_6 => "cf-1.6",
            CfId::Cf3_10 => "cf-3.10",
            CfId::Cf3_11 => "cf-3.11",
            CfId::Cf3_12 => "cf-3.12",
            CfId::RogersRamanujan => "cf-rr",
        }
    }

    pub fn target(self) -> Target {
        match self {
            CfId::Cf2_5 => Target::BigF,
            _ => Target::SmallF,
        }
    }

    /// True for the Jacobi-type shape, whose numerators are quadratic in `z`.
    pub fn is_jacobi(self) -> bool {
        self.shape() == Shape::Jacobi
    }

    fn shape(self) -> Shape {
        match self {
            CfId::Cf2_5 => Shape::Schroeder,
            CfId::Jacobi | CfId::Cf1_3 => Shape::Jacobi,
            CfId::Cf3_3 | CfId::Cf1_6 | CfId::Cf3_12 => Shape::Alternating,
            CfId::Cf3_4 | CfId::Cf3_5 | CfId::Cf1_4 | CfId::Cf3_10 | CfId::RogersRamanujan => Shape::Touchard,
            CfId::Cf3_8 | CfId::Cf3_9 | CfId::Cf1_5 | CfId::Cf3_11 => Shape::Thron,
        }
    }

    /// The point at which this entry is evaluated. General entries keep `p`;
    /// specializations overwrite `x`, `y` and, for the `q = 1` entries, `q`.
    pub fn specialize(self, p: &Params) -> Params {
        let one = Rational::one();
        match self {
            CfId::Cf2_5 | CfId::Jacobi | CfId::Cf3_3 | CfId::Cf3_4 | CfId::Cf3_8 => p.clone(),
            CfId::Cf3_5 => Params::new(p.q.clone(), p.q.clone(), -&p.q, p.order),
            CfId::Cf3_9 => Params::new(p.q.clone(), one.clone(), -&one, p.order),
            CfId::Cf1_3 | CfId::Cf1_4 | CfId::Cf1_5 | CfId::Cf1_6 => Params::classical(p.order),
            CfId::Cf3_10 | CfId::Cf3_11 | CfId::Cf3_12 => Params::new(p.q.clone(), one, p.q.clone(), p.order),
            CfId::RogersRamanujan => Params::new(p.q.clone(), Rational::zero(), -&p.q, p.order),
        }
    }
}

impl fmt::Display for CfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CfId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CfId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "continued fraction", name: s.to_string() })
    }
}

/// `c0 + c1·z + c2·z²` with the order and `q` of `p`.
fn poly(p: &Params, cs: [Rational; 3]) -> Series {
    TruncSeries::from_prefix(p.q.clone(), p.order, cs)
}

/// The catalogue entry `id` at the (specialized) point `p`.
pub fn cf_catalogue(id: CfId, p: &Params) -> Result<CFSpec> {
    let p = id.specialize(p);
    let one = Rational::one();
    let zero = Rational::zero;
    let (q, x, y) = (p.q.clone(), p.x.clone(), p.y.clone());
    let qp = move |k: usize| q.pow(k as u32);
    let pp = p.clone();
    let spec = match id.shape() {
        Shape::Schroeder => {
            let b0 = poly(&p, [one.clone(), -&x, zero()]);
            CFSpec::new(id.name(), p.clone(), Form::Reciprocal, b0, move |k| {
                let a = poly(&pp, [zero(), -(qp(k - 1) * &y), zero()]);
                let b = poly(&pp, [Rational::one(), -(qp(k) * &x), zero()]);
                Ok((a, b))
            })
        }
        Shape::Jacobi => {
            let b0 = poly(&p, [one.clone(), -&y, zero()]);
            CFSpec::new(id.name(), p.clone(), Form::Reciprocal, b0, move |k| {
                let lambda = qp(3 * (k - 1)) * &y * (&x + &(qp(k) * &y));
                let a = poly(&pp, [zero(), zero(), -lambda]);
                let q1 = Rational::one() + &qp(1);
                let slope = qp(k - 1) * (&x + &(qp(k) * &q1 * &y));
                let b = poly(&pp, [Rational::one(), -slope, zero()]);
                Ok((a, b))
            })
        }
        Shape::Alternating => {
            let b0 = poly(&p, [one.clone(), zero(), zero()]);
            CFSpec::new(id.name(), p.clone(), Form::Reciprocal, b0.clone(), move |k| {
                let j = k / 2;
                let c = if k % 2 == 0 {
                    qp(j - 1) * (&x + &(qp(j) * &y))
                } else {
                    qp(2 * j) * &y
                };
                Ok((poly(&pp, [zero(), -c, zero()]), b0.clone()))
            })
        }
        Shape::Touchard => {
            p.require_nonzero_q()?;
            let x_over_q = x.checked_div(&p.q)?;
            let b = poly(&p, [one.clone(), x_over_q, zero()]);
            let inv_q = p.q.recip()?;
            CFSpec::new(id.name(), p.clone(), Form::Reciprocal, b.clone(), move |k| {
                let c = (&x + &(qp(k) * &y)) * &inv_q;
                Ok((poly(&pp, [zero(), -c, zero()]), b.clone()))
            })
        }
        Shape::Thron => {
            let b0 = poly(&p, [one.clone(), zero(), zero()]);
            CFSpec::new(id.name(), p.clone(), Form::Reciprocal, b0, move |k| {
                let a = poly(&pp, [zero(), -(qp(k - 1) * &y), zero()]);
                let b = poly(&pp, [Rational::one(), -(qp(k - 1) * &x), zero()]);
                Ok((a, b))
            })
        }
    };
    Ok(spec)
}

/// The series a catalogue entry must reproduce, from the recurrences.
pub fn cf_target(id: CfId, p: &Params) -> Series {
    let p = id.specialize(p);
    match id.target() {
        Target::BigF => F_from_recurrence(&p),
        Target::SmallF => f_from_recurrence(&p),
    }
}

/// Partial numerator coefficient `λ_k = q^{3(k-1)} y (x + q^k y)` of the
/// Jacobi-type fraction, whose `k`-th numerator is `-λ_k z²`.
pub fn jacobi_lambda(p: &Params, k: usize) -> Rational {
    p.q.pow(3 * (k as u32 - 1)) * &p.y * (&p.x + &(p.q.pow(k as u32) * &p.y))
}

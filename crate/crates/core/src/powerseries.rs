//! Truncated formal power series in `z`.
//!
//! A [`TruncSeries`] carries its truncation order and the ambient `q` used by
//! the substitution `z → qz`. In rational mode `q` is an exact number; in
//! polynomial mode the coefficients are polynomials in a symbolic `q` and the
//! ambient value is the monomial `q` itself. Two series combine only when
//! their orders and ambient `q` agree.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{QPoly, Rational};

/// Coefficient domain tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Qpoly,
}

/// Commutative ring of series coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse of a unit of the ring, `None` otherwise.
    fn unit_inverse(&self) -> Option<Self>;

    /// Ambient `q` implied by the domain itself, if any.
    fn symbolic_q() -> Option<Self> {
        None
    }

    fn pow(&self, e: usize) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Coeff for Rational {
    const MODE: Mode = Mode::Rational;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Coeff for QPoly {
    const MODE: Mode = Mode::Qpoly;

    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    // Units of Q[q] are the nonzero constants.
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeff(0).recip().ok().map(QPoly::constant),
            _ => None,
        }
    }
    fn symbolic_q() -> Option<Self> {
        Some(QPoly::q())
    }
}

/// First index where two series differ, with both coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<C> {
    pub index: usize,
    pub lhs: C,
    pub rhs: C,
}

/// Outcome of [`TruncSeries::eq_to_order`].
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison<C> {
    /// Highest index that was compared.
    pub through: usize,
    pub mismatch: Option<Mismatch<C>>,
}

impl<C> Comparison<C> {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Power series `Σ_{n=0}^{N} c_n z^n` known exactly through `z^N`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    q: C,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Builds a series from exactly `order + 1` coefficients.
    pub fn new(q: C, order: usize, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != order + 1 {
            return Err(Error::Domain(format!(
                "series of order {order} needs {} coefficients, got {}",
                order + 1,
                coeffs.len()
            )));
        }
        Ok(TruncSeries { q, coeffs })
    }

    /// Pads with zeros or truncates `prefix` to `order + 1` coefficients.
    pub fn from_prefix(q: C, order: usize, prefix: impl IntoIterator<Item = C>) -> Self {
        let mut coeffs: Vec<C> = prefix.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, C::zero());
        TruncSeries { q, coeffs }
    }

    pub fn zero(q: C, order: usize) -> Self {
        TruncSeries { q, coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(q: C, order: usize, c: C) -> Self {
        let mut s = Self::zero(q, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(q: C, order: usize) -> Self {
        Self::constant(q, order, C::one())
    }

    /// `c·z^k`, or zero when `k` exceeds the order.
    pub fn monomial(q: C, order: usize, c: C, k: usize) -> Self {
        let mut s = Self::zero(q, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The same-shaped series `c` (shares order and ambient `q` with `self`).
    pub fn lift(&self, c: C) -> Self {
        Self::constant(self.q.clone(), self.order(), c)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ambient_q(&self) -> &C {
        &self.q
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_compatible(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Incompatible(format!(
                "orders {} and {} differ",
                self.order(),
                other.order()
            )));
        }
        if self.q != other.q {
            return Err(Error::Incompatible(format!(
                "ambient q {} and {} differ",
                self.q, other.q
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self> {
        self.is_compatible(other)?;
        Ok(TruncSeries {
            q: self.q.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, C::sub)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.is_compatible(other)?;
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncSeries { q: self.q.clone(), coeffs: out })
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        TruncSeries { q: self.q.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].unit_inverse().ok_or(Error::NonUnit)?;
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(TruncSeries { q: self.q.clone(), coeffs: out })
    }

    /// `self / other`, as `self · other⁻¹`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// The substitution `z → cz`: coefficient `n` is multiplied by `c^n`.
    pub fn dilate(&self, c: &C) -> Self {
        let mut factor = C::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a.mul(&factor);
                factor = factor.mul(c);
                v
            })
            .collect();
        TruncSeries { q: self.q.clone(), coeffs }
    }

    /// The substitution `z → qz` with the ambient `q`.
    pub fn qdilate(&self) -> Self {
        self.dilate(&self.q)
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn mul_z(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![C::zero(); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        TruncSeries { q: self.q.clone(), coeffs }
    }

    /// Compares coefficients `0..=m` exactly. `m` is clamped to the smaller
    /// order of the two series.
    pub fn eq_to_order(&self, other: &Self, m: usize) -> Comparison<C> {
        let through = m.min(self.order()).min(other.order());
        let mismatch = (0..=through).find_map(|i| {
            (self.coeffs[i] != other.coeffs[i]).then(|| Mismatch {
                index: i,
                lhs: self.coeffs[i].clone(),
                rhs: other.coeffs[i].clone(),
            })
        });
        Comparison { through, mismatch }
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries")
            .field("q", &self.q)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SeriesReprRef<'a, C> {
    order: usize,
    mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<&'a C>,
    coeffs: &'a [C],
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "C: Deserialize<'de>"))]
struct SeriesRepr<C> {
    order: usize,
    mode: Mode,
    #[serde(default)]
    q: Option<C>,
    coeffs: Vec<C>,
}

/// `{"order": N, "mode": "rational"|"qpoly", "q": "p/r", "coeffs": [...]}`.
/// The `q` field is omitted in polynomial mode, where `q` is symbolic.
impl<C: Coeff + Serialize> Serialize for TruncSeries<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let q = match C::symbolic_q() {
            Some(_) => None,
            None => Some(&self.q),
        };
        SeriesReprRef { order: self.order(), mode: C::MODE, q, coeffs: &self.coeffs }.serialize(serializer)
    }
}

impl<'de, C: Coeff + DeserializeOwned> Deserialize<'de> for TruncSeries<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::<C>::deserialize(deserializer)?;
        if repr.mode != C::MODE {
            return Err(D::Error::custom(format!("expected mode {:?}, found {:?}", C::MODE, repr.mode)));
        }
        let q = match (C::symbolic_q(), repr.q) {
            (Some(sym), None) => sym,
            (Some(sym), Some(q)) if q == sym => sym,
            (Some(_), Some(q)) => return Err(D::Error::custom(format!("symbolic mode cannot carry q = {q}"))),
            (None, Some(q)) => q,
            (None, None) => return Err(D::Error::missing_field("q")),
        };
        TruncSeries::new(q, repr.order, repr.coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ser(q: &str, order: usize, cs: &[i64]) -> TruncSeries<Rational> {
        TruncSeries::from_prefix(r(q), order, cs.iter().map(|&c| Rational::from(c)))
    }

    #[test]
    fn add_examples() {
        assert_eq!(ser("2", 2, &[1, 1]).add(&ser("2", 2, &[1, -1])).unwrap(), ser("2", 2, &[2]));
        let s = ser("2", 2, &[1, 1, 3]);
        assert_eq!(s.add(&TruncSeries::zero(r("2"), 2)).unwrap(), s);
        assert_eq!(s.add(&ser("2", 2, &[-1])).unwrap(), ser("2", 2, &[0, 1, 3]));
    }

    #[test]
    fn incompatible_series_rejected() {
        let a = ser("2", 2, &[1]);
        assert!(matches!(a.add(&ser("2", 3, &[1])), Err(Error::Incompatible(_))));
        assert!(matches!(a.mul(&ser("1/2", 2, &[1])), Err(Error::Incompatible(_))));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ser("1", 2, &[1, 1]).mul(&ser("1", 2, &[1, 1])).unwrap(), ser("1", 2, &[1, 2, 1]));
        // Prefix of the little Schröder numbers squared, by hand convolution.
        let f = ser("1", 3, &[1, 1, 3, 11]);
        assert_eq!(f.mul(&f).unwrap(), ser("1", 3, &[1, 2, 7, 28]));
        assert_eq!(f.mul(&TruncSeries::one(r("1"), 3)).unwrap(), f);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ser("1", 3, &[1, -1]).inverse().unwrap(), ser("1", 3, &[1, 1, 1, 1]));
        assert_eq!(ser("1", 2, &[1, 1]).inverse().unwrap(), ser("1", 2, &[1, -1, 1]));
        assert_eq!(ser("1", 4, &[0, 1, 1]).inverse(), Err(Error::NonUnit));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(ser("2", 2, &[1, 1, 1]).qdilate(), ser("2", 2, &[1, 2, 4]));
        assert_eq!(ser("5/7", 4, &[3]).qdilate(), ser("5/7", 4, &[3]));
        let h = ser("1/2", 5, &[1, -2, 3, 7, -1, 4]);
        assert_eq!(h.qdilate().qdilate(), h.dilate(&r("1/4")));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ser("1", 2, &[1, 1]).mul_z(1), ser("1", 2, &[0, 1, 1]));
        let s = ser("1", 2, &[4, 5, 6]);
        assert_eq!(s.mul_z(0), s);
        assert_eq!(s.mul_z(3), TruncSeries::zero(r("1"), 2));
        assert_eq!(s.mul_z(100), TruncSeries::zero(r("1"), 2));
    }

    #[test]
    fn comparison_examples() {
        let a = ser("1", 3, &[1, 1]);
        let b = ser("1", 3, &[1, 1, 0, 5]);
        assert!(a.eq_to_order(&b, 2).agrees());
        let cmp = a.eq_to_order(&b, 3);
        let m = cmp.mismatch.unwrap();
        assert_eq!((m.index, m.lhs, m.rhs), (3, r("0"), r("5")));
        assert!(b.eq_to_order(&b, 3).agrees());
    }

    #[test]
    fn qpoly_mode_dilation_multiplies_by_monomials() {
        let s = TruncSeries::from_prefix(QPoly::q(), 3, vec![QPoly::one(); 4]);
        let d = s.qdilate();
        for n in 0..=3 {
            assert_eq!(d.coeff(n), &QPoly::monomial(Rational::one(), n));
        }
    }

    #[test]
    fn json_shape() {
        let s = ser("1/2", 2, &[1, -3]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":2,"mode":"rational","q":"1/2","coeffs":["1","-3","0"]}"#);
        let back: TruncSeries<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let p = TruncSeries::from_prefix(QPoly::q(), 1, vec![QPoly::one(), "1+q^2".parse().unwrap()]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"order":1,"mode":"qpoly","coeffs":[["1"],["1","0","1"]]}"#);
        assert_eq!(serde_json::from_str::<TruncSeries<QPoly>>(&text).unwrap(), p);
    }

    #[test]
    fn json_rejects_malformed() {
        for bad in [
            r#"{"order":2,"mode":"rational","q":"1/2","coeffs":["1"]}"#,
            r#"{"order":0,"mode":"rational","coeffs":["1"]}"#,
            r#"{"order":0,"mode":"qpoly","q":"1","coeffs":["1"]}"#,
            r#"{"order":0,"mode":"rational","q":"1/0","coeffs":["1"]}"#,
        ] {
            assert!(serde_json::from_str::<TruncSeries<Rational>>(bad).is_err(), "{bad}");
        }
    }
}

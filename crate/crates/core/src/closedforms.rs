//! The series `h`, `H`, `F`, `f` built from closed forms.
//!
//! ```text
//! h(z,x,y) = Σ_k (-1)^k q^{k(k-1)/2} (x+y)(x+qy)⋯(x+q^{k-1}y) / (q;q)_k · z^k
//! H(z,x,y) = Σ_k q^{k²-k} (-yz)^k / ((q;q)_k (xz;q)_k)
//! F(z,x,y) = h(qz,x,y) / h(z,x,y)
//! f(z,x,y) = h(z,x,qy) / h(z,x,y) = H(z,x,qy) / H(z,x,y)
//! ```
//!
//! The sign `(-1)^k` of `(-z)^k` is kept inside the coefficient of `h`, so
//! `h_k` here is the signed coefficient; it satisfies
//! `(q^k - 1) h_k = q^{k-1}(x + q^{k-1}y) h_{k-1}`.
//!
//! Variants at `y → qy` are built by calling the same builders on modified
//! [`Params`]. Every builder that divides by `(q;q)_k` requires a generic `q`.

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::Params;
use crate::powerseries::TruncSeries;
use crate::qkit::{qpochhammer_inv_series, triangular, QFactorialCache};
use crate::schroeder::{gen_A, gen_a};

pub fn h_series(p: &Params) -> Result<TruncSeries<Rational>> {
    p.require_generic_q()?;
    let cache = QFactorialCache::new(&p.q, p.order);
    let mut coeffs = Vec::with_capacity(p.order + 1);
    // Running product (x+y)(x+qy)⋯(x+q^{k-1}y).
    let mut numer = Rational::one();
    let mut q_pow = Rational::one();
    for k in 0..=p.order {
        let mut c = &numer * &p.q.pow(triangular(k)) * cache.inverse(k)?;
        if k % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
        numer = numer * (&p.x + &(&q_pow * &p.y));
        q_pow = q_pow * &p.q;
    }
    TruncSeries::new(p.q.clone(), p.order, coeffs)
}

#[allow(non_snake_case)]
pub fn H_series(p: &Params) -> Result<TruncSeries<Rational>> {
    p.require_generic_q()?;
    let cache = QFactorialCache::new(&p.q, p.order);
    let minus_y = -&p.y;
    let mut acc = TruncSeries::zero(p.q.clone(), p.order);
    for k in 0..=p.order {
        let weight = p.q.pow((k * k - k) as u32) * minus_y.pow(k as u32) * cache.inverse(k)?;
        if weight.is_zero() {
            continue;
        }
        let term = qpochhammer_inv_series(&p.x, k, p.order, &p.q).mul_z(k).scale(&weight);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `F = h(qz) / h(z)`.
#[allow(non_snake_case)]
pub fn F_from_h(p: &Params) -> Result<TruncSeries<Rational>> {
    let h = h_series(p)?;
    h.qdilate().div(&h)
}

/// `f = h(z,x,qy) / h(z,x,y)`; defined also when `x + y = 0`.
pub fn f_from_h(p: &Params) -> Result<TruncSeries<Rational>> {
    h_series(&p.with_y_scaled(1))?.div(&h_series(p)?)
}

/// `f = H(z,x,qy) / H(z,x,y)`.
#[allow(non_snake_case)]
pub fn f_from_H(p: &Params) -> Result<TruncSeries<Rational>> {
    H_series(&p.with_y_scaled(1))?.div(&H_series(p)?)
}

/// `F` with coefficients `A(n,x,y)` from the recurrence.
#[allow(non_snake_case)]
pub fn F_from_recurrence(p: &Params) -> TruncSeries<Rational> {
    TruncSeries::from_prefix(p.q.clone(), p.order, gen_A(p.order, &p.q, &p.x, &p.y))
}

/// `f` with coefficients `a(n,x,y)` from the recurrence.
pub fn f_from_recurrence(p: &Params) -> TruncSeries<Rational> {
    TruncSeries::from_prefix(p.q.clone(), p.order, gen_a(p.order, &p.q, &p.x, &p.y))
}

/// `f = (x + yF) / (x + y)`. Rejects `x + y = 0`; use [`f_from_h`] or
/// [`f_from_recurrence`] there.
#[allow(non_snake_case)]
pub fn f_from_F(big_f: &TruncSeries<Rational>, p: &Params) -> Result<TruncSeries<Rational>> {
    let s = p.x_plus_y();
    if s.is_zero() {
        return Err(Error::Domain(
            "f = (x + yF)/(x + y) needs x + y ≠ 0; use the h-quotient or the recurrence".into(),
        ));
    }
    let inv = s.recip()?;
    big_f.scale(&p.y).add(&big_f.lift(p.x.clone())).map(|t| t.scale(&inv))
}

/// `h`, `H`, `F`, `f` and their `y → qy` companions at one point.
#[derive(Debug, Clone)]
#[allow(non_snake_case)]
pub struct SeriesBundle {
    pub params: Params,
    pub h: TruncSeries<Rational>,
    pub h_qy: TruncSeries<Rational>,
    pub H: TruncSeries<Rational>,
    pub H_qy: TruncSeries<Rational>,
    pub F: TruncSeries<Rational>,
    pub f: TruncSeries<Rational>,
}

impl SeriesBundle {
    #[allow(non_snake_case)]
    pub fn build(p: &Params) -> Result<Self> {
        let h = h_series(p)?;
        let h_qy = h_series(&p.with_y_scaled(1))?;
        let H = H_series(p)?;
        let H_qy = H_series(&p.with_y_scaled(1))?;
        let F = h.qdilate().div(&h)?;
        let f = h_qy.div(&h)?;
        Ok(SeriesBundle { params: p.clone(), h, h_qy, H, H_qy, F, f })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkit::qexp_series;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pt(q: &str, x: &str, y: &str, n: usize) -> Params {
        Params::new(r(q), r(x), r(y), n)
    }

    fn touchard(q: &str, n: usize) -> Params {
        let q = r(q);
        Params::new(q.clone(), q.clone(), -&q, n)
    }

    /// `(-1)^n q^{n(n+1)/2}`.
    fn touchard_coeffs(q: &Rational, n: usize) -> TruncSeries<Rational> {
        TruncSeries::from_prefix(
            q.clone(),
            n,
            (0..=n).map(|k| {
                let v = q.pow((k * (k + 1) / 2) as u32);
                if k % 2 == 1 { -v } else { v }
            }),
        )
    }

    #[test]
    fn h_examples() {
        let p = touchard("2/3", 10);
        assert_eq!(h_series(&p).unwrap(), TruncSeries::one(p.q.clone(), 10));
        assert_eq!(*h_series(&pt("2", "1", "1", 3)).unwrap().coeff(1), r("2"));
        assert_eq!(*h_series(&pt("-3/7", "5", "1/9", 4)).unwrap().coeff(0), r("1"));
        assert_eq!(h_series(&pt("1", "1", "1", 3)), Err(Error::DegenerateQ { index: 1 }));
    }

    #[test]
    fn h_coefficient_ratio() {
        for p in [pt("1/2", "1", "1", 12), pt("3/2", "-1/2", "3", 12), pt("2", "2", "1/2", 12)] {
            let h = h_series(&p).unwrap();
            for n in 1..=12 {
                let qn = p.q.pow(n as u32);
                let lhs = (&qn - &r("1")) * h.coeff(n);
                let rhs = p.q.pow(n as u32 - 1) * (&p.x + &(p.q.pow(n as u32 - 1) * &p.y)) * h.coeff(n - 1);
                assert_eq!(lhs, rhs, "n={n}");
            }
        }
    }

    #[test]
    #[allow(non_snake_case)]
    fn H_examples() {
        let p = touchard("1/3", 16);
        assert_eq!(H_series(&p).unwrap(), qexp_series(16, &p.q, &p.q).unwrap());
        let p0 = pt("2/3", "5", "0", 8);
        assert_eq!(H_series(&p0).unwrap(), TruncSeries::one(p0.q.clone(), 8));
        assert_eq!(*H_series(&pt("2", "1", "1", 2)).unwrap().coeff(1), r("1"));
    }

    #[test]
    #[allow(non_snake_case)]
    fn F_examples() {
        let p = pt("1/2", "1", "1", 16);
        assert_eq!(F_from_h(&p).unwrap(), F_from_recurrence(&p));
        let t = touchard("3/2", 9);
        assert_eq!(F_from_h(&t).unwrap(), TruncSeries::one(t.q.clone(), 9));
        assert_eq!(*F_from_h(&pt("-2", "7", "1/3", 5)).unwrap().coeff(0), r("1"));
    }

    #[test]
    fn f_examples() {
        let p = pt("1/2", "1", "1", 16);
        assert_eq!(f_from_h(&p).unwrap(), f_from_recurrence(&p));
        let t = touchard("1/3", 12);
        let via_h = f_from_h(&t).unwrap();
        assert_eq!(via_h, h_series(&t.with_y_scaled(1)).unwrap());
        assert_eq!(via_h, touchard_coeffs(&t.q, 12));
        let rr = pt("1/2", "0", "-1/2", 12);
        assert_eq!(f_from_h(&rr).unwrap(), f_from_H(&rr).unwrap());
        assert_eq!(f_from_h(&rr).unwrap(), f_from_recurrence(&rr));
    }

    #[test]
    #[allow(non_snake_case)]
    fn f_from_H_examples() {
        let p = pt("1/3", "2", "5", 16);
        assert_eq!(f_from_H(&p).unwrap(), f_from_h(&p).unwrap());
        let p0 = pt("2", "3", "0", 6);
        assert_eq!(f_from_H(&p0).unwrap(), TruncSeries::one(p0.q.clone(), 6));
    }

    #[test]
    fn recurrence_series_examples() {
        let c = Params::classical(4);
        assert_eq!(
            F_from_recurrence(&c).into_coeffs(),
            [1, 2, 6, 22, 90].map(Rational::from).to_vec()
        );
        assert_eq!(
            f_from_recurrence(&c).into_coeffs(),
            [1, 1, 3, 11, 45].map(Rational::from).to_vec()
        );
        let t = touchard("2/3", 10);
        assert_eq!(f_from_recurrence(&t), touchard_coeffs(&t.q, 10));
    }

    #[test]
    #[allow(non_snake_case)]
    fn f_from_F_examples() {
        let c = Params::classical(10);
        assert_eq!(f_from_F(&F_from_recurrence(&c), &c).unwrap(), f_from_recurrence(&c));
        let p = pt("2/3", "3", "0", 5);
        assert_eq!(f_from_F(&F_from_recurrence(&p), &p).unwrap(), TruncSeries::one(p.q.clone(), 5));
        let t = touchard("1/2", 5);
        assert!(matches!(f_from_F(&F_from_recurrence(&t), &t), Err(Error::Domain(_))));
    }

    #[test]
    fn bundle_is_consistent() {
        let p = pt("2/3", "1/2", "3", 12);
        let b = SeriesBundle::build(&p).unwrap();
        assert_eq!(b.F, F_from_recurrence(&p));
        assert_eq!(b.f, f_from_recurrence(&p));
        assert_eq!(b.H_qy.div(&b.H).unwrap(), b.f);
        assert_eq!(*b.F.coeff(0), r("1"));
        assert_eq!(*b.f.coeff(0), r("1"));
    }
}

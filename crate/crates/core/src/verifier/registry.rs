//! The identity registry.
//!
//! Each id names one identity; sides are built by different paths, typically
//! the recurrence series on one side and closed-form quotients on the other.
//! `eq-2.6` also stands for the restatement of the same equation later on.
//! Series definitions and intermediate derivation steps are not separate
//! cases: they are the builders in [`crate::closedforms`] and
//! [`crate::qkit`], exercised by every case below. Continued fractions are
//! registered as `cf-*`, one per catalogue entry, each compared with its
//! target series.

use crate::closedforms::{f_from_F, f_from_H, f_from_h, f_from_recurrence, h_series, F_from_h, F_from_recurrence, H_series};
use crate::contfrac::{cf_catalogue, cf_target, CfId};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::Params;
use crate::powerseries::TruncSeries;
use crate::qkit::{qbinomial, qexp_series, triangular};

use super::{IdentityCase, Series};

fn one(p: &Params) -> Series {
    TruncSeries::one(p.q.clone(), p.order)
}

/// `c·z·s`.
fn cz(c: &Rational, s: &Series) -> Series {
    s.mul_z(1).scale(c)
}

fn generic(p: &Params) -> Result<()> {
    p.require_generic_q()
}

fn generic_nonzero(p: &Params) -> Result<()> {
    p.require_nonzero_q()?;
    p.require_generic_q()
}

/// `(x,y) = (q,-q)`.
fn touchard(p: &Params) -> Params {
    Params::new(p.q.clone(), p.q.clone(), -&p.q, p.order)
}

/// `Σ sign(n) q^{e(n)} c(n) zⁿ` with alternating sign.
fn alternating(p: &Params, term: impl Fn(usize) -> Rational) -> Series {
    TruncSeries::from_prefix(
        p.q.clone(),
        p.order,
        (0..=p.order).map(|n| if n % 2 == 1 { -term(n) } else { term(n) }),
    )
}

/// `(x + qy)/q`.
fn shifted_over_q(p: &Params) -> Result<Rational> {
    (&p.x + &(&p.q * &p.y)).checked_div(&p.q)
}

#[allow(non_snake_case)]
fn core_cases() -> Vec<IdentityCase> {
    vec![
        IdentityCase::new("eq-1.2", |p| {
            let f = f_from_recurrence(p);
            let s = cf_catalogue(CfId::Cf1_5, p)?.stabilized()?.value;
            let rhs = one(p).sub(&s.mul_z(1))?.add(&cz(&Rational::from(2), &s.mul(&s)?))?;
            Ok(vec![f, rhs])
        })
        .with_specialize(|p| Params::classical(p.order)),
        IdentityCase::new("eq-2.2", |p| {
            let Fh = F_from_h(p)?;
            let rhs = one(p).add(&cz(&p.x, &Fh))?.add(&cz(&p.y, &Fh.mul(&Fh.qdilate())?))?;
            Ok(vec![F_from_recurrence(p), rhs])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-2.4", |p| {
            let fh = f_from_h(p)?;
            let fq = fh.qdilate();
            let rhs = one(p).sub(&cz(&p.x, &fq))?.add(&cz(&p.x_plus_y(), &fh.mul(&fq)?))?;
            Ok(vec![f_from_recurrence(p), rhs])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-2.6", |p| {
            let rhs = one(p).add(&cz(&p.x_plus_y(), &F_from_h(p)?.mul(&f_from_h(p)?.qdilate())?))?;
            Ok(vec![F_from_recurrence(p), rhs])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-2.7", |p| Ok(vec![F_from_h(p)?, F_from_recurrence(p)])).with_constraint(generic),
        IdentityCase::new("eq-2.10", |p| Ok(vec![f_from_F(&F_from_recurrence(p), p)?, f_from_h(p)?])).with_constraint(
            |p| {
                generic(p)?;
                if p.x_plus_y().is_zero() {
                    return Err(Error::RejectedParams(format!("x + y = 0 at {p}")));
                }
                Ok(())
            },
        ),
        IdentityCase::new("eq-2.10h", |p| Ok(vec![f_from_recurrence(p), f_from_h(p)?])).with_constraint(generic),
        IdentityCase::new("eq-2.11", |p| {
            let lhs = F_from_recurrence(p).mul(&f_from_recurrence(p).qdilate())?;
            let rhs = f_from_h(p)?.mul(&F_from_h(&p.with_y_scaled(1))?)?;
            Ok(vec![lhs, rhs])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-2.13", |p| {
            let rhs = one(p).add(&cz(&p.y, &f_from_h(p)?.mul(&F_from_h(&p.with_y_scaled(1))?)?))?;
            Ok(vec![f_from_recurrence(p), rhs])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-2.14", |p| {
            let x_over_q = p.x.checked_div(&p.q)?;
            let h1 = h_series(&p.with_y_scaled(1))?;
            let h2 = h_series(&p.with_y_scaled(2))?;
            let rhs = h1.add(&cz(&x_over_q, &h1))?.sub(&cz(&shifted_over_q(p)?, &h2))?;
            Ok(vec![h_series(p)?, rhs])
        })
        .with_constraint(generic_nonzero),
        IdentityCase::new("eq-2.17", |p| Ok(vec![f_from_recurrence(p), f_from_H(p)?])).with_constraint(generic),
        IdentityCase::new("eq-2.18", |p| {
            let x_over_q = p.x.checked_div(&p.q)?;
            let denom = one(p)
                .add(&cz(&x_over_q, &one(p)))?
                .sub(&cz(&shifted_over_q(p)?, &f_from_h(&p.with_y_scaled(1))?))?;
            Ok(vec![f_from_recurrence(p), denom.inverse()?])
        })
        .with_constraint(generic_nonzero),
        IdentityCase::new("eq-2.19", |p| {
            let x_over_q = p.x.checked_div(&p.q)?;
            let fh = f_from_h(p)?;
            let prod = fh.mul(&f_from_h(&p.with_y_scaled(1))?)?;
            let rhs = one(p).sub(&cz(&x_over_q, &fh))?.add(&cz(&shifted_over_q(p)?, &prod))?;
            Ok(vec![f_from_recurrence(p), rhs])
        })
        .with_constraint(generic_nonzero),
        IdentityCase::new("eq-2.22", |p| {
            let x_over_q = p.x.checked_div(&p.q)?;
            let H1 = H_series(&p.with_y_scaled(1))?;
            let rhs = H_series(p)?
                .sub(&cz(&x_over_q, &H1))?
                .add(&cz(&shifted_over_q(p)?, &H_series(&p.with_y_scaled(2))?))?;
            Ok(vec![H1, rhs])
        })
        .with_constraint(generic_nonzero),
        IdentityCase::new("eq-2.24", |p| Ok(vec![f_from_h(p)?, f_from_H(p)?])).with_constraint(generic),
        IdentityCase::new("eq-2.26", |p| {
            let lhs = h_series(p)?.mul(&qexp_series(p.order, &p.q, &p.x)?)?;
            Ok(vec![lhs, H_series(p)?])
        })
        .with_specialize(|p| p.with_y(Rational::zero()))
        .with_constraint(generic),
        IdentityCase::new("eq-cauchy", |p| {
            let H = H_series(p)?;
            let e = qexp_series(p.order, &p.q, &p.q)?;
            // h·H equals H exactly when h = 1.
            let hH = h_series(p)?.mul(&H)?;
            Ok(vec![H, e, hH])
        })
        .with_specialize(touchard)
        .with_constraint(generic),
        IdentityCase::new("eq-3.1", |p| {
            let denom = one(p).sub(&cz(&p.x_plus_y(), &f_from_h(p)?.qdilate()))?;
            Ok(vec![F_from_recurrence(p), denom.inverse()?])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-3.2", |p| {
            let denom = one(p).sub(&cz(&p.y, &F_from_h(&p.with_y_scaled(1))?))?;
            Ok(vec![f_from_recurrence(p), denom.inverse()?])
        })
        .with_constraint(generic),
        IdentityCase::new("eq-3.6", |p| {
            let explicit = alternating(p, |n| p.q.pow(triangular(n + 1)));
            Ok(vec![f_from_recurrence(p), f_from_h(p)?, h_series(&p.with_y_scaled(1))?, explicit])
        })
        .with_specialize(touchard)
        .with_constraint(generic),
    ]
}

/// Quotient `H(z,q,-q^{i+2}) / H(z,q,-q)` against
/// `Σ q^{k(k+1)/2} [k+i, k]_q (-z)^k`.
fn quotient_case(i: usize) -> IdentityCase {
    IdentityCase::new(format!("eq-3.7-i{i}"), move |p| {
        let base = H_series(&p.with_y(-&p.q))?;
        let lhs = H_series(p)?.div(&base)?;
        let explicit = alternating(p, |k| p.q.pow(triangular(k + 1)) * qbinomial(k + i, k, &p.q));
        Ok(vec![lhs, explicit])
    })
    .with_specialize(move |p| Params::new(p.q.clone(), p.q.clone(), -p.q.pow(i as u32 + 2), p.order))
    .with_constraint(generic)
}

fn cf_case(id: CfId) -> IdentityCase {
    IdentityCase::new(id.name(), move |p| {
        let value = cf_catalogue(id, p)?.stabilized()?.value;
        Ok(vec![value, cf_target(id, p)])
    })
    .with_specialize(move |p| id.specialize(p))
    .with_constraint(move |p| cf_catalogue(id, p).map(|_| ()))
}

/// Every registered identity, in report order.
pub fn registry() -> Vec<IdentityCase> {
    let mut cases = core_cases();
    cases.extend((0..4).map(quotient_case));
    cases.extend(CfId::ALL.into_iter().map(cf_case));
    cases
}

pub fn find_case(id: &str) -> Result<IdentityCase> {
    registry()
        .into_iter()
        .find(|c| c.id() == id)
        .ok_or_else(|| Error::Unknown { kind: "identity", name: id.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let reg = registry();
        let ids: HashSet<_> = reg.iter().map(|c| c.id().to_string()).collect();
        assert_eq!(ids.len(), reg.len());
        for id in ["eq-2.10h", "eq-cauchy", "eq-3.7-i3", "cf-jacobi", "cf-rr"] {
            assert!(ids.contains(id), "{id}");
        }
    }

    #[test]
    fn every_case_passes_at_a_generic_point() {
        let p = Params::new("2/3".parse().unwrap(), "2".parse().unwrap(), "1/2".parse().unwrap(), 8);
        for case in registry() {
            let res = case.check(&p, None).unwrap();
            assert!(res.pass, "{} {:?}", case.id(), res);
        }
    }

    #[test]
    fn degenerate_q_is_rejected() {
        let p = Params::classical(6);
        assert!(matches!(find_case("eq-2.2").unwrap().admits(&p), Err(Error::RejectedParams(_))));
        assert!(find_case("eq-1.2").unwrap().check(&p, None).unwrap().pass);
    }
}

use crate::contfrac::jacobi_lambda;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::Params;
use crate::schroeder::gen_a;

use super::{IdentityReport, PointResult};

/// Determinant of the `n×n` Hankel matrix `M[i][j] = seq[i + j + offset]`,
/// by fraction-free (Bareiss) elimination with row pivoting.
pub fn hankel_det(seq: &[Rational], n: usize, offset: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let needed = 2 * n - 1 + offset;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { needed, got: seq.len() });
    }
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| seq[i + j + offset].clone()).collect())
        .collect();
    bareiss_det(m)
}

/// Determinant of a square matrix by Bareiss elimination. Every division is
/// exact, so intermediate entries stay minors of the input.
pub fn bareiss_det(mut m: Vec<Vec<Rational>>) -> Result<Rational> {
    let n = m.len();
    if n == 0 {
        return Ok(Rational::one());
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("matrix is not square".into()));
    }
    let mut negate = false;
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t.checked_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Compares the Hankel determinants `D_1..D_nmax` of `a(n,x,y)` against the
/// product `λ_1^{n-1} λ_2^{n-2} ⋯ λ_{n-1}` predicted by the Jacobi-type
/// fraction with numerators `-λ_k z²`.
///
/// The product relation between a J-fraction and the Hankel determinants of
/// its series is classical theory rather than one of the registered
/// identities; it is the independent check of the inferred `λ_k`.
pub fn jfraction_hankel_check(p: &Params, nmax: usize) -> Result<IdentityReport> {
    let lambdas: Vec<Rational> = (1..nmax).map(|k| jacobi_lambda(p, k)).collect();
    if let Some(k) = lambdas.iter().position(Rational::is_zero) {
        return Err(Error::RejectedParams(format!("λ_{} vanishes at {p}", k + 1)));
    }
    let seq = gen_a(2 * nmax.max(1) - 2, &p.q, &p.x, &p.y);
    let mut direct = Vec::with_capacity(nmax);
    let mut product = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        direct.push(hankel_det(&seq, n, 0)?);
        let expect = (1..n).fold(Rational::one(), |acc, k| acc * lambdas[k - 1].pow((n - k) as u32));
        product.push(expect);
    }
    let mismatch = direct.iter().zip(&product).position(|(a, b)| a != b);
    let pass = mismatch.is_none();
    let point = PointResult {
        q: p.q.clone(),
        x: p.x.clone(),
        y: p.y.clone(),
        order: nmax,
        pass,
        mismatch_order: mismatch.map(|i| i + 1),
        lhs: (!pass).then(|| direct.clone()),
        rhs: (!pass).then(|| product.clone()),
        error: None,
    };
    Ok(IdentityReport::new(
        "hankel-jfraction",
        vec![point],
        Some("external cross-check: J-fraction/Hankel product relation; point N is nmax".into()),
    ))
}

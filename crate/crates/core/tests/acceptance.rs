//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use qschroeder::closedforms::{f_from_h, f_from_recurrence, h_series, H_series};
use qschroeder::contfrac::{cf_catalogue, cf_target, CfId};
use qschroeder::qkit::qexp_series;
use qschroeder::schroeder::{catalan_closed, gen_A, gen_a, reference_prefix, Family};
use qschroeder::verifier::{find_case, hankel_det, jfraction_hankel_check, verify_all, SamplePlan};
use qschroeder::{Params, QPoly, Rational, TruncSeries};

type Check = Result<String, String>;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn ints(xs: &[u64]) -> Vec<Rational> {
    xs.iter().map(|&n| Rational::from(n as i64)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Points drawn by the verifier's sampler for registry case `id`.
fn drawn(plan: &SamplePlan, id: &str) -> Result<Vec<Params>, String> {
    let case = find_case(id).map_err(|e| e.to_string())?;
    plan.draw(&case)
        .into_iter()
        .map(|d| d.map(|p| case.specialize(&p)))
        .collect()
}

/// `[n, k]_q` from the product formula.
fn gauss(n: usize, k: usize, q: &Rational) -> Rational {
    let mut num = Rational::one();
    let mut den = Rational::one();
    for j in 0..k {
        num = num * (Rational::one() - q.pow((n - j) as u32));
        den = den * (Rational::one() - q.pow((j + 1) as u32));
    }
    num.checked_div(&den).unwrap()
}

/// Determinant by Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn ac1() -> Check {
    let got = gen_a(5, &r("1"), &r("1"), &r("1"));
    let want = ints(&[1, 1, 3, 11, 45, 197]);
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("a(0..5) = 1, 1, 3, 11, 45, 197".into())
}

fn ac2() -> Check {
    let got = gen_A(10, &r("1"), &r("0"), &r("1"));
    for (n, v) in got.iter().enumerate() {
        ensure(*v == catalan_closed(n), || format!("n={n}: {v} vs {}", catalan_closed(n)))?;
    }
    Ok("A(n,0,1) at q=1 equals C(2n,n)/(n+1) for n ≤ 10".into())
}

fn ac3() -> Check {
    let polys = Family::CarlitzCatalan.generate_qpoly(8, &QPoly::zero(), &QPoly::one()).map_err(|e| e.to_string())?;
    for q in ["1/2", "1/3", "2", "3/2", "2/3"].map(r) {
        let rational = gen_A(8, &q, &r("0"), &r("1"));
        for (n, (p, v)) in polys.iter().zip(&rational).enumerate() {
            ensure(p.eval(&q) == *v, || format!("q={q}, n={n}: {} vs {v}", p.eval(&q)))?;
        }
    }
    Ok("C_n(q), n ≤ 8, agrees with rational mode at 5 values of q".into())
}

fn ac4() -> Check {
    let reports = verify_all(&SamplePlan::default());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.clone()).collect();
    ensure(failed.is_empty(), || format!("failed: {}", failed.join(", ")))?;
    let required = [
        "eq-2.2", "eq-2.4", "eq-2.6", "eq-2.7", "eq-2.10", "eq-2.10h", "eq-2.11", "eq-2.13", "eq-2.14", "eq-2.17",
        "eq-2.18", "eq-2.19", "eq-2.22", "eq-2.24", "eq-2.26", "eq-cauchy", "eq-3.1", "eq-3.2", "eq-3.6", "eq-1.2",
    ];
    for id in required {
        let rep = reports.iter().find(|r| r.id == id).ok_or_else(|| format!("{id} missing"))?;
        ensure(rep.points.len() == 5, || format!("{id}: {} points", rep.points.len()))?;
        ensure(rep.points.iter().all(|p| p.order == 16), || format!("{id}: wrong order"))?;
    }
    let checks: usize = reports.iter().map(|r| r.points.len()).sum();
    Ok(format!("{} registry entries, {checks} point checks through z^16", reports.len()))
}

fn ac5() -> Check {
    let plan = SamplePlan::default();
    let results: Vec<Result<usize, String>> = thread::scope(|s| {
        let handles: Vec<_> = CfId::ALL
            .into_iter()
            .map(|id| {
                let plan = &plan;
                s.spawn(move || -> Result<usize, String> {
                    let bound = if id.is_jacobi() { 10 } else { 18 };
                    let mut deepest = 0;
                    for p in drawn(plan, id.name())? {
                        let st = cf_catalogue(id, &p).and_then(|c| c.stabilized()).map_err(|e| format!("{id}: {e}"))?;
                        let target = cf_target(id, &p);
                        ensure(st.value.eq_to_order(&target, 16).agrees(), || format!("{id} at {p}: value differs"))?;
                        ensure(st.depth <= bound, || format!("{id} at {p}: depth {} > {bound}", st.depth))?;
                        deepest = deepest.max(st.depth);
                    }
                    Ok(deepest)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut depths = Vec::new();
    for (id, res) in CfId::ALL.iter().zip(results) {
        depths.push(format!("{id}:{}", res?));
    }
    Ok(format!("15 fractions stabilize to their targets; max depths {}", depths.join(" ")))
}

fn ac6() -> Check {
    for q in ["1/2", "1/3", "3/2"].map(r) {
        let p = Params::new(q.clone(), q.clone(), -&q, 16);
        let explicit = TruncSeries::from_prefix(
            q.clone(),
            16,
            (0..=16usize).map(|n| {
                let v = q.pow((n * (n + 1) / 2) as u32);
                if n % 2 == 1 { -v } else { v }
            }),
        );
        let rec = f_from_recurrence(&p);
        let quot = f_from_h(&p).map_err(|e| e.to_string())?;
        let h_shift = h_series(&p.with_y_scaled(1)).map_err(|e| e.to_string())?;
        ensure(rec == explicit, || format!("q={q}: recurrence differs"))?;
        ensure(quot == explicit, || format!("q={q}: h-quotient differs"))?;
        ensure(h_shift == explicit, || format!("q={q}: h(z,q,-q²) differs"))?;
    }
    Ok("f(z,q,-q) = h(z,q,-q²) = Σ(-1)^n q^{n(n+1)/2} z^n at q = 1/2, 1/3, 3/2".into())
}

fn ac7() -> Check {
    let mut plan = SamplePlan::default();
    plan.points = 3;
    let mut qs = Vec::new();
    for p in drawn(&plan, "eq-cauchy")? {
        let big_h = H_series(&p).map_err(|e| e.to_string())?;
        let e = qexp_series(16, &p.q, &p.q).map_err(|e| e.to_string())?;
        ensure(big_h == e, || format!("q={}: H ≠ e(qz)", p.q))?;
        let h = h_series(&p).map_err(|e| e.to_string())?;
        ensure(h == TruncSeries::one(p.q.clone(), 16), || format!("q={}: h ≠ 1", p.q))?;
        qs.push(p.q.to_string());
    }
    Ok(format!("H(z,q,-q) = e(qz) and h(z,q,-q) = 1 at q = {}", qs.join(", ")))
}

fn ac8() -> Check {
    let mut plan = SamplePlan::default();
    plan.points = 3;
    plan.order = 12;
    for i in 0..4usize {
        for p in drawn(&plan, &format!("eq-3.7-i{i}"))? {
            let q = &p.q;
            let base = H_series(&p.with_y(-q)).map_err(|e| e.to_string())?;
            let lhs = H_series(&p).and_then(|h| h.div(&base)).map_err(|e| e.to_string())?;
            ensure(p.y == -q.pow(i as u32 + 2), || format!("i={i}: wrong specialization {p}"))?;
            for k in 0..=12usize {
                let v = q.pow((k * (k + 1) / 2) as u32) * gauss(k + i, k, q);
                let want = if k % 2 == 1 { -v } else { v };
                ensure(*lhs.coeff(k) == want, || format!("i={i}, q={q}, k={k}"))?;
            }
        }
    }
    Ok("quotients for i = 0..3 match the q-binomial sums through z^12 at 3 q each".into())
}

fn ac9() -> Check {
    for p in drawn(&SamplePlan::default(), "cf-jacobi")? {
        let st = cf_catalogue(CfId::Jacobi, &p).and_then(|c| c.stabilized()).map_err(|e| e.to_string())?;
        ensure(st.value == f_from_recurrence(&p), || format!("at {p}"))?;
    }
    for p in [Params::classical(0), Params::new(r("1/2"), r("1"), r("1"), 0)] {
        let rep = jfraction_hankel_check(&p, 5).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("Hankel product fails at {p}"))?;
    }
    Ok("cf-jacobi equals f at 5 points; D_n = Π λ_k^{n-k} for n ≤ 5 at (1,1,1), (1/2,1,1)".into())
}

fn ac10() -> Check {
    let want = ints(&reference_prefix(Family::LittleSchroeder).unwrap()[..11]);
    for id in [CfId::Cf1_3, CfId::Cf1_4, CfId::Cf1_5, CfId::Cf1_6] {
        let v = cf_catalogue(id, &Params::classical(10))
            .and_then(|c| c.stabilized())
            .map_err(|e| e.to_string())?
            .value;
        ensure(v.coeffs() == want.as_slice(), || format!("{id}: {v}"))?;
    }
    Ok("cf-1.3, cf-1.4, cf-1.5, cf-1.6 give 1, 1, 3, 11, 45, … through z^10".into())
}

fn ac11() -> Check {
    let seq = ints(reference_prefix(Family::LittleSchroeder).unwrap());
    let mut bareiss = Vec::new();
    for n in 1..=5 {
        let d = hankel_det(&seq, n, 0).map_err(|e| e.to_string())?;
        let m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| seq[i + j].clone()).collect()).collect();
        let c = cofactor_det(&m);
        ensure(d == c, || format!("n={n}: Bareiss {d} vs cofactor {c}"))?;
        bareiss.push(d);
    }
    ensure(bareiss == ints(&[1, 2, 8, 64, 1024]), || format!("got {bareiss:?}"))?;
    Ok("D_1..D_5 = 1, 2, 8, 64, 1024 by both eliminations".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 11] = [
        ("little Schröder golden prefix", Some(Duration::from_millis(100)), ac1),
        ("Catalan reduction", Some(Duration::from_millis(100)), ac2),
        ("Carlitz polynomial vs rational mode", Some(Duration::from_secs(1)), ac3),
        ("identity suite (seed 42, 5 points, N=16)", Some(Duration::from_secs(60)), ac4),
        ("continued-fraction catalogue", Some(Duration::from_secs(60)), ac5),
        ("three-way closed form at (q,-q)", None, ac6),
        ("Cauchy case", None, ac7),
        ("H-quotient q-binomial sums", None, ac8),
        ("Jacobi-type fraction and Hankel product", None, ac9),
        ("q = 1 fractions coherence", None, ac10),
        ("little Schröder Hankel values", None, ac11),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:.2?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("AC{:<2} PASS  {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("AC{:<2} FAIL  {name} [{elapsed:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Coefficientwise verification of identities at exact sample points.
//!
//! Every case in [`registry`] produces two or more series by different
//! construction paths; the check compares each against the first through
//! `z^N`. Three-variable identities are checked at seeded points drawn from
//! small rational pools.

mod hankel;
mod registry;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::params::Params;
use crate::powerseries::TruncSeries;
use crate::qkit::QFactorialCache;

pub use hankel::{bareiss_det, hankel_det, jfraction_hankel_check};
pub use registry::{find_case, registry};

pub type Series = TruncSeries<Rational>;

type SpecializeFn = Arc<dyn Fn(&Params) -> Params + Send + Sync>;
type ConstraintFn = Arc<dyn Fn(&Params) -> Result<()> + Send + Sync>;
type BuildFn = Arc<dyn Fn(&Params) -> Result<Vec<Series>> + Send + Sync>;

/// One registered identity.
#[derive(Clone)]
pub struct IdentityCase {
    id: String,
    specialize: SpecializeFn,
    constraint: ConstraintFn,
    build: BuildFn,
}

impl IdentityCase {
    /// `build` returns the sides; all are compared against the first.
    pub fn new(
        id: impl Into<String>,
        build: impl Fn(&Params) -> Result<Vec<Series>> + Send + Sync + 'static,
    ) -> Self {
        IdentityCase {
            id: id.into(),
            specialize: Arc::new(Params::clone),
            constraint: Arc::new(|_| Ok(())),
            build: Arc::new(build),
        }
    }

    /// Maps a sampled point to the point the identity lives at, e.g. `(x,y) = (q,-q)`.
    pub fn with_specialize(mut self, f: impl Fn(&Params) -> Params + Send + Sync + 'static) -> Self {
        self.specialize = Arc::new(f);
        self
    }

    /// Extra requirement on the specialized point; an `Err` rejects it.
    pub fn with_constraint(mut self, f: impl Fn(&Params) -> Result<()> + Send + Sync + 'static) -> Self {
        self.constraint = Arc::new(f);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn specialize(&self, p: &Params) -> Params {
        (self.specialize)(p)
    }

    /// Checks the constraint at the specialized point.
    pub fn admits(&self, p: &Params) -> Result<()> {
        (self.constraint)(&self.specialize(p)).map_err(|e| match e {
            Error::RejectedParams(_) => e,
            other => Error::RejectedParams(format!("{}: {other}", self.id)),
        })
    }

    pub fn sides(&self, p: &Params) -> Result<Vec<Series>> {
        self.admits(p)?;
        let sides = (self.build)(&self.specialize(p))?;
        if sides.len() < 2 {
            return Err(Error::Domain(format!("{} builds fewer than two sides", self.id)));
        }
        Ok(sides)
    }

    /// Compares the sides at one point. `perturb` adds one to the first side's
    /// coefficient at that index before comparing.
    pub fn check(&self, p: &Params, perturb: Option<usize>) -> Result<PointResult> {
        let at = self.specialize(p);
        let mut sides = self.sides(p)?;
        if let Some(i) = perturb {
            let mut cs = sides[0].clone().into_coeffs();
            if let Some(c) = cs.get_mut(i) {
                *c = &*c + &Rational::one();
            }
            sides[0] = TruncSeries::new(at.q.clone(), sides[0].order(), cs)?;
        }
        let (first, rest) = sides.split_first().expect("at least two sides");
        let worst = rest
            .iter()
            .filter_map(|s| first.eq_to_order(s, at.order).mismatch.map(|m| (m.index, s)))
            .min_by_key(|(i, _)| *i);
        let mut result = PointResult::at(&at);
        result.pass = worst.is_none();
        if let Some((i, other)) = worst {
            result.mismatch_order = Some(i);
            result.lhs = Some(first.coeffs().to_vec());
            result.rhs = Some(other.coeffs().to_vec());
        }
        Ok(result)
    }
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase").field("id", &self.id).finish_non_exhaustive()
    }
}

/// Outcome at one sample point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub q: Rational,
    pub x: Rational,
    pub y: Rational,
    #[serde(rename = "N")]
    pub order: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PointResult {
    fn at(p: &Params) -> Self {
        PointResult {
            q: p.q.clone(),
            x: p.x.clone(),
            y: p.y.clone(),
            order: p.order,
            pass: false,
            mismatch_order: None,
            lhs: None,
            rhs: None,
            error: None,
        }
    }

    fn failed(p: &Params, error: impl ToString) -> Self {
        PointResult { error: Some(error.to_string()), ..PointResult::at(p) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// All points checked for one identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub points: Vec<PointResult>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    /// The verdict is pass iff every point passes.
    pub fn new(id: impl Into<String>, points: Vec<PointResult>, note: Option<String>) -> Self {
        let verdict = if points.iter().all(|p| p.pass) { Verdict::Pass } else { Verdict::Fail };
        IdentityReport { id: id.into(), points, verdict, note }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Add one to the first side's coefficient `index` of case `id`; used to
/// exercise the failure path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub id: String,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct SamplePlan {
    pub seed: u64,
    pub points: usize,
    pub q_pool: Vec<Rational>,
    pub x_pool: Vec<Rational>,
    pub y_pool: Vec<Rational>,
    pub order: usize,
    pub perturb: Option<Perturbation>,
}

fn pool(items: &[&str]) -> Vec<Rational> {
    items.iter().map(|s| s.parse().expect("valid pool literal")).collect()
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 42,
            points: 5,
            q_pool: pool(&["1/2", "1/3", "2/3", "2", "3/2"]),
            x_pool: pool(&["1", "2", "1/2", "-1/2", "3"]),
            y_pool: pool(&["1", "2", "1/2", "-1/2", "3"]),
            order: crate::DEFAULT_ORDER,
            perturb: None,
        }
    }
}

impl SamplePlan {
    pub fn new(seed: u64, points: usize, order: usize) -> Self {
        SamplePlan { seed, points, order, ..SamplePlan::default() }
    }

    /// Pool members `q` with `q ≠ 0` and `q^j ≠ 1` for `1 ≤ j ≤ N`.
    fn usable_q(&self) -> Vec<Rational> {
        self.q_pool
            .iter()
            .filter(|q| !q.is_zero() && QFactorialCache::new(q, self.order).first_vanishing().is_none())
            .cloned()
            .collect()
    }

    /// Draws `points` admissible points for `case`. A specialized point is
    /// repeated only when fresh ones keep failing to turn up.
    pub fn draw(&self, case: &IdentityCase) -> Vec<std::result::Result<Params, String>> {
        const ATTEMPTS: usize = 64;
        let qs = self.usable_q();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(case.id()));
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.points);
        for _ in 0..self.points {
            if qs.is_empty() || self.x_pool.is_empty() || self.y_pool.is_empty() {
                out.push(Err("empty sample pool".to_string()));
                continue;
            }
            let mut found = None;
            for attempt in 0..ATTEMPTS {
                let key = (
                    rng.gen_range(0..qs.len()),
                    rng.gen_range(0..self.x_pool.len()),
                    rng.gen_range(0..self.y_pool.len()),
                );
                let p = Params::new(qs[key.0].clone(), self.x_pool[key.1].clone(), self.y_pool[key.2].clone(), self.order);
                let at = case.specialize(&p);
                let at = (at.q.to_string(), at.x.to_string(), at.y.to_string());
                if seen.contains(&at) && attempt < ATTEMPTS / 2 {
                    continue;
                }
                if case.admits(&p).is_ok() {
                    seen.insert(at);
                    found = Some(p);
                    break;
                }
            }
            out.push(found.ok_or_else(|| "no admissible sample point".to_string()));
        }
        out
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Checks registry case `id` at the single point `p`.
pub fn verify_identity(id: &str, p: &Params) -> Result<IdentityReport> {
    let case = find_case(id)?;
    let point = case.check(p, None)?;
    Ok(IdentityReport::new(id, vec![point], None))
}

/// Runs one case over the plan's sample points. Failures are recorded in the
/// report.
pub fn verify_case(case: &IdentityCase, plan: &SamplePlan) -> IdentityReport {
    let perturb = plan.perturb.as_ref().filter(|t| t.id == case.id()).map(|t| t.index);
    let points = plan
        .draw(case)
        .into_iter()
        .map(|draw| match draw {
            Ok(p) => case.check(&p, perturb).unwrap_or_else(|e| PointResult::failed(&case.specialize(&p), e)),
            Err(msg) => PointResult::failed(&Params::new(Rational::zero(), Rational::zero(), Rational::zero(), plan.order), msg),
        })
        .collect();
    IdentityReport::new(case.id(), points, None)
}

/// Runs the given cases, one thread each, and returns reports in input order.
pub fn verify_cases(cases: &[IdentityCase], plan: &SamplePlan) -> Vec<IdentityReport> {
    thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|c| s.spawn(move || verify_case(c, plan))).collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    })
}

/// Every registry case under `plan`.
pub fn verify_all(plan: &SamplePlan) -> Vec<IdentityReport> {
    verify_cases(&registry(), plan)
}

/// The named registry cases under `plan`, in the order given.
pub fn verify_selected(plan: &SamplePlan, ids: &[&str]) -> Result<Vec<IdentityReport>> {
    let cases = ids.iter().map(|id| find_case(id)).collect::<Result<Vec<_>>>()?;
    Ok(verify_cases(&cases, plan))
}

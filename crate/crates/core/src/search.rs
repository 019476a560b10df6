//! Parameter sweeps over (a, b, c), a != 0, for a fixed field and twist.
//!
//! Triples are enumerated in ascending (a, b, c) order. Work is split into
//! contiguous a-slices whose results are concatenated in order, so reports do
//! not depend on the worker count.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{
    condition_has_root, family_lut, projective_bijective, FamilyError, FamilyParams,
};
use crate::gf::{Felt, FieldCtx};
use crate::vectfun::{differential_uniformity_until, image_multiplicity, ImageClass};

/// Full-DDT sweeps without a cap are limited to tables of this width.
pub const FULL_SWEEP_MAX_BITS: u32 = 24;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("full-DDT sweep over 2^{n}-entry tables needs a triple cap")]
    TooLarge { n: u32 },
    #[error("no condition-passing triple among {searched} searched")]
    NoneFound { searched: u64 },
    #[error("time budget exhausted after {searched} triples")]
    BudgetExceeded { searched: u64 },
    #[error("cannot build a pool of {0} workers")]
    Workers(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyLevel {
    ConditionOnly,
    Projective,
    FullDdt,
}

impl FromStr for VerifyLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cond" | "condition_only" => Ok(VerifyLevel::ConditionOnly),
            "proj" | "projective" => Ok(VerifyLevel::Projective),
            "full" | "full_ddt" => Ok(VerifyLevel::FullDdt),
            other => Err(format!("unknown level {other:?} (cond, proj, full)")),
        }
    }
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyLevel::ConditionOnly => "cond",
            VerifyLevel::Projective => "proj",
            VerifyLevel::FullDdt => "full",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub ctx: FieldCtx,
    pub k: u32,
    pub level: VerifyLevel,
    /// Only the first `limit` triples in canonical order are considered.
    pub limit: Option<u64>,
    pub budget: Option<Duration>,
    /// 0 selects the default pool.
    pub workers: usize,
}

impl SweepSpec {
    pub fn new(ctx: FieldCtx, k: u32, level: VerifyLevel) -> Self {
        SweepSpec {
            ctx,
            k,
            level,
            limit: None,
            budget: None,
            workers: 0,
        }
    }

    /// Number of triples with a != 0, before the cap.
    pub fn space(&self) -> u64 {
        let q = self.ctx.order() as u64;
        (q - 1) * q * q
    }

    fn triples(&self) -> u64 {
        self.limit.map_or(self.space(), |l| l.min(self.space()))
    }

    fn triple_at(&self, idx: u64) -> (Felt, Felt, Felt) {
        let q = self.ctx.order() as u64;
        let a = idx / (q * q) + 1;
        let b = idx / q % q;
        let c = idx % q;
        (Felt(a as u32), Felt(b as u32), Felt(c as u32))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: Felt,
    pub b: Felt,
    pub c: Felt,
    pub condition_pass: bool,
    pub projective: Option<bool>,
    /// Some nonzero point maps to zero, so the projective map is undefined.
    pub zero_image: bool,
    pub du: Option<u32>,
    pub image_class: Option<ImageClass>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub m: u32,
    pub k: u32,
    pub reduction: String,
    pub level: String,
    pub total: u64,
    pub condition_pass: u64,
    pub projective_bijective: u64,
    pub zero_image: u64,
    pub verified_du_equals_2d: u64,
    pub violations: u64,
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// `Ok(None)` when the deadline passes before the row is complete.
fn evaluate(
    p: &FamilyParams,
    level: VerifyLevel,
    deadline: Option<Instant>,
) -> Result<Option<SweepRow>, FamilyError> {
    let pass = !condition_has_root(p)?;
    let mut row = SweepRow {
        a: p.a(),
        b: p.b(),
        c: p.c(),
        condition_pass: pass,
        projective: None,
        zero_image: false,
        du: None,
        image_class: None,
        violations: Vec::new(),
    };
    if level >= VerifyLevel::Projective {
        let bij = match projective_bijective(p) {
            Ok(b) => b,
            Err(FamilyError::ZeroImage(_)) => {
                row.zero_image = true;
                false
            }
            Err(e) => return Err(e),
        };
        row.projective = Some(bij);
        if bij != pass {
            row.violations.push(format!(
                "condition_pass={pass} but projective_bijective={bij}"
            ));
        }
    }
    if level == VerifyLevel::FullDdt && pass {
        let lut = family_lut(p)?;
        let expected = p.expected_uniformity();
        let Some(ddt) = differential_uniformity_until(&lut, Some(expected), deadline) else {
            return Ok(None);
        };
        let du = ddt.max_uniformity;
        let class = image_multiplicity(&lut);
        if du != expected {
            row.violations
                .push(format!("differential uniformity {du} != {expected}"));
        }
        let want = p.expected_image_class();
        if class != want {
            row.violations
                .push(format!("image class {class} != expected {want}"));
        }
        row.du = Some(du);
        row.image_class = Some(class);
    }
    Ok(Some(row))
}

/// Runs `f` on a pool of `workers` threads (0 keeps the current pool).
pub fn with_workers<T: Send>(
    workers: usize,
    f: impl FnOnce() -> T + Send,
) -> Result<T, SearchError> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|_| SearchError::Workers(workers))?;
    Ok(pool.install(f))
}

fn check_spec(spec: &SweepSpec) -> Result<(), SearchError> {
    // validates k against m
    FamilyParams::new(spec.ctx.clone(), spec.k, Felt::ONE, Felt::ZERO, Felt::ZERO)?;
    let n = 3 * spec.ctx.m();
    if spec.level == VerifyLevel::FullDdt && n > FULL_SWEEP_MAX_BITS && spec.limit.is_none() {
        return Err(SearchError::TooLarge { n });
    }
    Ok(())
}

/// Evaluates every triple (up to the cap) at the requested level.
///
/// When the time budget runs out the outcome is partial and
/// `summary.budget_exceeded` is set.
pub fn sweep(spec: &SweepSpec) -> Result<SweepOutcome, SearchError> {
    check_spec(spec)?;
    let q = spec.ctx.order() as u64;
    let total = spec.triples();
    let deadline = spec.budget.map(|b| Instant::now() + b);
    let cancelled = AtomicBool::new(false);
    let slices: Vec<(u64, u64)> = (0..q - 1)
        .map(|s| (s * q * q, ((s + 1) * q * q).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let run = || -> Result<Vec<Vec<SweepRow>>, FamilyError> {
        slices
            .par_iter()
            .map(|&(lo, hi)| {
                let mut rows = Vec::with_capacity((hi - lo) as usize);
                for idx in lo..hi {
                    if deadline.is_some_and(|d| Instant::now() >= d) {
                        cancelled.store(true, Ordering::Relaxed);
                    }
                    if cancelled.load(Ordering::Relaxed) {
                        break;
                    }
                    let (a, b, c) = spec.triple_at(idx);
                    let p = FamilyParams::new(spec.ctx.clone(), spec.k, a, b, c)?;
                    match evaluate(&p, spec.level, deadline)? {
                        Some(row) => rows.push(row),
                        None => cancelled.store(true, Ordering::Relaxed),
                    }
                }
                Ok(rows)
            })
            .collect()
    };
    let slices = with_workers(spec.workers, run)??;
    let rows: Vec<SweepRow> = slices.into_iter().flatten().collect();

    let expected_du = 1u32 << gcd(spec.k, spec.ctx.m());
    let summary = SweepSummary {
        m: spec.ctx.m(),
        k: spec.k,
        reduction: format!("{:#b}", spec.ctx.reduction()),
        level: spec.level.to_string(),
        total: rows.len() as u64,
        condition_pass: rows.iter().filter(|r| r.condition_pass).count() as u64,
        projective_bijective: rows.iter().filter(|r| r.projective == Some(true)).count() as u64,
        zero_image: rows.iter().filter(|r| r.zero_image).count() as u64,
        verified_du_equals_2d: rows
            .iter()
            .filter(|r| r.condition_pass && r.du == Some(expected_du))
            .count() as u64,
        violations: rows.iter().filter(|r| !r.violations.is_empty()).count() as u64,
        budget_exceeded: cancelled.load(Ordering::Relaxed),
    };
    Ok(SweepOutcome { rows, summary })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// First condition-passing triple in canonical order, verified at the
/// requested level.
pub fn find_first(spec: &SweepSpec) -> Result<SweepRow, SearchError> {
    check_spec(spec)?;
    let total = spec.triples();
    let deadline = spec.budget.map(|b| Instant::now() + b);
    for idx in 0..total {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(SearchError::BudgetExceeded { searched: idx });
        }
        let (a, b, c) = spec.triple_at(idx);
        let p = FamilyParams::new(spec.ctx.clone(), spec.k, a, b, c)?;
        if !condition_has_root(&p)? {
            return with_workers(spec.workers, || evaluate(&p, spec.level, deadline))??
                .ok_or(SearchError::BudgetExceeded { searched: idx });
        }
    }
    Err(SearchError::NoneFound { searched: total })
}

#[derive(Serialize)]
struct CsvRow {
    a: String,
    b: String,
    c: String,
    condition_pass: bool,
    projective: Option<bool>,
    du: Option<u32>,
    image_class: Option<String>,
}

/// Writes `a,b,c,condition_pass,projective,du,image_class` with hex field
/// elements; absent values are empty cells.
pub fn write_csv<W: Write>(rows: &[SweepRow], w: W) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(CsvRow {
            a: r.a.to_string(),
            b: r.b.to_string(),
            c: r.c.to_string(),
            condition_pass: r.condition_pass,
            projective: r.projective,
            du: r.du,
            image_class: r.image_class.as_ref().map(|c| c.to_string()),
        })?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, k: u32, level: VerifyLevel) -> SweepSpec {
        SweepSpec::new(FieldCtx::new(m, None).unwrap(), k, level)
    }

    #[test]
    fn level_contract() {
        let out = sweep(&spec(2, 1, VerifyLevel::ConditionOnly)).unwrap();
        assert_eq!(out.rows.len(), 48);
        assert!(out
            .rows
            .iter()
            .all(|r| r.projective.is_none() && r.du.is_none()));
        let out = sweep(&spec(2, 1, VerifyLevel::Projective)).unwrap();
        assert!(out
            .rows
            .iter()
            .all(|r| r.projective.is_some() && r.du.is_none()));
    }

    #[test]
    fn canonical_order_and_cap() {
        let mut s = spec(3, 1, VerifyLevel::ConditionOnly);
        s.limit = Some(70);
        let out = sweep(&s).unwrap();
        assert_eq!(out.rows.len(), 70);
        let keys: Vec<_> = out.rows.iter().map(|r| (r.a, r.b, r.c)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0], (Felt(1), Felt(0), Felt(0)));
        assert_eq!(keys[64], (Felt(2), Felt(0), Felt(0)));
    }

    #[test]
    fn find_first_cases() {
        let row = find_first(&spec(3, 1, VerifyLevel::FullDdt)).unwrap();
        assert!((row.a, row.b, row.c) <= (Felt(1), Felt(1), Felt(0)));
        assert_eq!(row.du, Some(2));
        let mut s = spec(3, 1, VerifyLevel::FullDdt);
        s.limit = Some(0);
        assert!(matches!(
            find_first(&s),
            Err(SearchError::NoneFound { searched: 0 })
        ));
    }

    #[test]
    fn large_full_sweep_needs_cap() {
        let s = spec(9, 1, VerifyLevel::FullDdt);
        assert!(matches!(sweep(&s), Err(SearchError::TooLarge { n: 27 })));
        let bad = spec(3, 3, VerifyLevel::ConditionOnly);
        assert!(matches!(
            sweep(&bad),
            Err(SearchError::Family(FamilyError::BadTwist { .. }))
        ));
    }

    #[test]
    fn csv_shape() {
        let mut s = spec(2, 1, VerifyLevel::FullDdt);
        s.limit = Some(3);
        let out = sweep(&s).unwrap();
        let mut buf = Vec::new();
        write_csv(&out.rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("a,b,c,condition_pass,projective,du,image_class")
        );
        assert_eq!(lines.count(), 3);
    }
}

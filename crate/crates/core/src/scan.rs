//! Search for `(h^2, v)` with every wall fake.
//!
//! For each even `h^2 = 2d` in range and each target `v^2`, the scanned
//! vectors are `v = (r, t h, s)` with `r >= 1` and `2d t^2 - 2rs = v^2`. By
//! default `t = 1`, which makes `v` primitive automatically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::diophantine::SolverConfig;
use crate::error::{invalid, Result};
use crate::lattice::MukaiVector;
use crate::walls::{all_walls_fake_with, Strength};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "MUKAI_WORKERS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanJob {
    pub h2_min: u64,
    pub h2_max: u64,
    pub v2_targets: Vec<u64>,
    /// at most this many vectors are examined
    pub budget: Option<usize>,
    /// middle coefficients `1..=max_t` are scanned
    pub max_t: u64,
}

impl ScanJob {
    pub fn new(h2_min: u64, h2_max: u64, v2_targets: Vec<u64>) -> Result<Self> {
        let job = ScanJob {
            h2_min,
            h2_max,
            v2_targets,
            budget: None,
            max_t: 1,
        };
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        if self.h2_min == 0 || self.h2_min % 2 == 1 || self.h2_max % 2 == 1 {
            return invalid("h^2 range endpoints must be even and positive");
        }
        if self.h2_min > self.h2_max {
            return invalid("empty h^2 range");
        }
        if self.v2_targets.is_empty() || self.v2_targets.iter().any(|&t| t == 0 || t % 2 == 1) {
            return invalid("v^2 targets must be positive and even");
        }
        if self.max_t == 0 {
            return invalid("max_t must be positive");
        }
        Ok(())
    }

    /// Every vector the job covers, ordered by `(h^2, t, v^2, r)`.
    pub fn vectors(&self) -> Vec<MukaiVector> {
        let mut targets = self.v2_targets.clone();
        targets.sort_unstable();
        targets.dedup();
        let mut out = Vec::new();
        for h2 in (self.h2_min..=self.h2_max).step_by(2) {
            let d = BigInt::from(h2 / 2);
            for t in 1..=self.max_t {
                let t = BigInt::from(t);
                for &v2 in &targets {
                    // rs = d t^2 - v^2 / 2
                    let rs = &d * &t * &t - BigInt::from(v2 / 2);
                    let pairs: Vec<(BigInt, BigInt)> = if rs.is_zero() {
                        vec![(BigInt::from(1), BigInt::zero())]
                    } else {
                        arith::divisors(&rs.abs())
                            .into_iter()
                            .map(|r| {
                                let s = &rs / &r;
                                (r, s)
                            })
                            .collect()
                    };
                    for (r, s) in pairs {
                        if !r.gcd(&t).gcd(&s).is_one() {
                            continue;
                        }
                        if let Ok(v) = MukaiVector::new(r, t.clone(), s, d.clone()) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    #[serde(with = "crate::report::bigint_str")]
    pub h2: BigInt,
    pub v: MukaiVector,
    #[serde(with = "crate::report::bigint_str")]
    pub v_squared: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub dim: BigInt,
    pub strength: Strength,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutcome {
    /// positive findings in job order
    pub records: Vec<ScanRecord>,
    pub examined: usize,
    /// the budget stopped the scan before every vector was examined
    pub truncated: bool,
}

/// Worker count: the environment override if set, else `fallback`, else all cores.
pub fn worker_count(fallback: Option<usize>) -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .or(fallback)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn scan(job: &ScanJob, workers: usize, cfg: &SolverConfig) -> Result<ScanOutcome> {
    job.validate()?;
    let mut vectors = job.vectors();
    let truncated = matches!(job.budget, Some(b) if vectors.len() > b);
    if let Some(b) = job.budget {
        vectors.truncate(b);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| crate::Error::Invariant(format!("thread pool: {e}")))?;
    let verdicts: Vec<Result<_>> =
        pool.install(|| vectors.par_iter().map(|v| all_walls_fake_with(v, cfg)).collect());
    let mut records = Vec::new();
    for verdict in verdicts {
        let w = verdict?;
        if w.strength.is_positive() {
            records.push(ScanRecord {
                h2: w.v.h_squared(),
                v: w.v.clone(),
                v_squared: w.v_squared.clone(),
                dim: w.dim.clone(),
                strength: w.strength,
            });
        }
    }
    // par_iter keeps input order; sort anyway so the order never depends on it
    records.sort_by(|a, b| {
        (&a.h2, &a.v.t, &a.v_squared, &a.v.r).cmp(&(&b.h2, &b.v.t, &b.v_squared, &b.v.r))
    });
    Ok(ScanOutcome {
        records,
        examined: vectors.len(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_the_six_dimensional_example() {
        let job = ScanJob::new(100, 140, vec![4]).unwrap();
        let out = scan(&job, 2, &SolverConfig::default()).unwrap();
        let v = MukaiVector::from_i64(4, 1, 16, 66).unwrap();
        assert!(out.records.iter().any(|r| r.v == v && r.strength == Strength::Strict));
        assert!(!out.truncated);
    }

    #[test]
    fn small_range_has_no_strict_finding() {
        let job = ScanJob::new(4, 8, vec![2]).unwrap();
        let out = scan(&job, 1, &SolverConfig::default()).unwrap();
        assert!(out.records.iter().all(|r| r.strength != Strength::Strict));
    }

    #[test]
    fn budget_truncates() {
        let mut job = ScanJob::new(100, 140, vec![4]).unwrap();
        job.budget = Some(3);
        let out = scan(&job, 1, &SolverConfig::default()).unwrap();
        assert!(out.truncated);
        assert_eq!(out.examined, 3);
    }

    #[test]
    fn rejects_odd_input() {
        assert!(ScanJob::new(101, 140, vec![4]).is_err());
        assert!(ScanJob::new(100, 140, vec![3]).is_err());
        assert!(ScanJob::new(140, 100, vec![4]).is_err());
    }

    #[test]
    fn vectors_have_target_square() {
        let mut job = ScanJob::new(20, 30, vec![2, 4]).unwrap();
        job.max_t = 2;
        for v in job.vectors() {
            assert!(v.is_primitive());
            assert!(job.v2_targets.contains(&v.square().try_into().unwrap()));
        }
    }
}

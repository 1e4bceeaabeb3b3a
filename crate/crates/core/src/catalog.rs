//! Registry of every verifiable identity, keyed by a short id.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergeom::{verify_lemma_vanish, verify_thm3};
use crate::identities::{e2s, linear_exp, quadratic_exp, tanh, IdentityReport};

pub const THREADS_ENV: &str = "CF_ERRSUM_THREADS";

pub struct CatalogEntry {
    pub id: &'static str,
    pub label: &'static str,
    /// Smallest admissible instance.
    pub min: u64,
    /// Range exercised by `report` and the acceptance suite.
    pub default_range: RangeInclusive<u64>,
    run: fn(u64) -> Vec<IdentityReport>,
}

impl CatalogEntry {
    pub fn run(&self, instance: u64) -> Result<Vec<IdentityReport>> {
        if instance < self.min {
            return Err(Error::InvalidArgument(format!(
                "{} is defined for instances >= {}, got {instance}",
                self.id, self.min
            )));
        }
        Ok((self.run)(instance))
    }
}

static CATALOG: [CatalogEntry; 13] = [
    CatalogEntry {
        id: "cor1",
        label: "S_k = 1/k! with its binomial form and the two-line coefficient of the e^{1/s} linear sum",
        min: 0,
        default_range: 0..=200,
        run: |k| vec![linear_exp::cor1_summary(k)],
    },
    CatalogEntry {
        id: "thm1",
        label: "coefficient of s^{-r} in the e^{1/s} quadratic sum is 1/r!, four-sum formula and squared series",
        min: 0,
        default_range: 0..=40,
        run: quadratic_exp::thm1_reports,
    },
    CatalogEntry {
        id: "thm3",
        label: "3F2(-k,3/2,1;1/2,k+2;-1) = k+1 and S_k = 3F2/(k+1)! = 1/k!",
        min: 0,
        default_range: 0..=200,
        run: verify_thm3,
    },
    CatalogEntry {
        id: "thm4",
        label: "1/k! = sum (4n+1) 2/(k-2n)! k!/(2n+k+1)!, binomial form, parity split of S_k",
        min: 1,
        default_range: 1..=150,
        run: tanh::thm4,
    },
    CatalogEntry {
        id: "thm5",
        label: "1/k! = sum (4n+3) 2/(k-2n-1)! k!/(k+2n+2)!, binomial form and conversions",
        min: 1,
        default_range: 1..=150,
        run: tanh::thm5,
    },
    CatalogEntry {
        id: "thm-quad-tanh",
        label: "4^k/(k+1)! as two constrained triple sums",
        min: 0,
        default_range: 0..=25,
        run: |k| vec![tanh::quad_tanh(k)],
    },
    CatalogEntry {
        id: "thm-e2s",
        label: "2^l/l! as seven factorial sums from the e^{2/s} error series",
        min: 1,
        default_range: 1..=60,
        run: |l| vec![e2s::e2s_theorem(l)],
    },
    CatalogEntry {
        id: "lemma-3f2",
        label: "3F2(-k,3/2,1;1/2,k+2;1) = 0",
        min: 1,
        default_range: 1..=200,
        run: |k| vec![verify_lemma_vanish(k).expect("k >= 1")],
    },
    CatalogEntry {
        id: "goal-z",
        label: "coefficients of (e^{2/s}+1)/2 from the tanh error series",
        min: 0,
        default_range: 0..=150,
        run: |k| vec![tanh::goal_z_coeff(k)],
    },
    CatalogEntry {
        id: "second-tanh",
        label: "coefficients of (e^{2/s}-1)/2 from the tanh error series",
        min: 1,
        default_range: 1..=150,
        run: |k| vec![tanh::second_tanh_coeff(k)],
    },
    CatalogEntry {
        id: "assemble-exp",
        label: "weighted |E_n| series for e^{1/s} sum to 2 + sum t^k/k! through t^T",
        min: 0,
        default_range: 0..=30,
        run: |t| vec![linear_exp::assemble_linear_sum_exp(t as i64).report("assemble-exp")],
    },
    CatalogEntry {
        id: "assemble-e2s",
        label: "weighted |E_n| series for e^{2/s} sum to 2 + sum (2t)^l/l! through t^T",
        min: 0,
        default_range: 0..=20,
        run: |t| vec![e2s::assemble_linear_sum_e2s(t as i64).report("assemble-e2s")],
    },
    CatalogEntry {
        id: "quad-series",
        label: "Phi_0 + Phi_1 equals sum 4^k t^k/(k+1)! through t^T",
        min: 0,
        default_range: 0..=20,
        run: |t| vec![tanh::assemble_phi_sum(t as i64).report("quad-series")],
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn lookup(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

/// Thread cap from `CF_ERRSUM_THREADS`; unset means rayon's default.
pub fn thread_cap_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidArgument(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Runs `entry` over `range` in parallel; reports come back in instance order.
pub fn run_range(
    entry: &CatalogEntry,
    range: RangeInclusive<u64>,
    threads: Option<usize>,
) -> Result<Vec<IdentityReport>> {
    if range.start() < &entry.min {
        return Err(Error::InvalidArgument(format!(
            "{} is defined for instances >= {}, got {}",
            entry.id,
            entry.min,
            range.start()
        )));
    }
    let instances: Vec<u64> = range.collect();
    let work = || -> Vec<IdentityReport> {
        instances
            .par_iter()
            .map(|&k| (entry.run)(k))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    match threads {
        None => Ok(work()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(work))
        }
    }
}

//! Failure resilience: the largest number of simultaneous failures that can always
//! be repaired.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::Result;
use crate::repair::{check_beta_recoverable, SearchLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResilienceMode {
    /// Every failed node must be repaired from the original survivors.
    Static,
    /// Repaired nodes may help later repairs.
    Sequential,
}

#[derive(Debug, Clone, Copy)]
pub struct ResilienceOptions {
    /// Levels with more failure patterns than this are sampled instead of enumerated.
    pub budget: u64,
    /// Patterns drawn at a sampled level.
    pub samples: usize,
    pub seed: u64,
    pub limits: SearchLimits,
}

impl Default for ResilienceOptions {
    fn default() -> Self {
        ResilienceOptions { budget: 1_000_000, samples: 10_000, seed: 0, limits: SearchLimits::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResilienceReport {
    pub mode: ResilienceMode,
    /// Largest failure count verified over every pattern.
    pub tau: usize,
    /// True when `tau + 1` has a concrete unrepairable pattern, so `tau` is exact.
    pub exhaustive: bool,
    /// Largest failure count that passed, counting sampled levels.
    pub sampled_tau: usize,
    pub counterexample: Option<Vec<usize>>,
}

/// Whether the failure pattern `failed` can be repaired under `mode`.
pub fn repairable(
    code: &FrCode,
    failed: &[usize],
    d: usize,
    beta: usize,
    mode: ResilienceMode,
    limits: SearchLimits,
) -> Result<bool> {
    let mut alive = vec![true; code.n()];
    for &f in failed {
        alive[f] = false;
    }
    match mode {
        ResilienceMode::Static => {
            for &f in failed {
                if check_beta_recoverable(code, f, &alive, d, beta, limits)?.is_none() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ResilienceMode::Sequential => {
            let mut pending: Vec<usize> = failed.to_vec();
            pending.sort_unstable();
            while !pending.is_empty() {
                let mut next = None;
                for (k, &f) in pending.iter().enumerate() {
                    if check_beta_recoverable(code, f, &alive, d, beta, limits)?.is_some() {
                        next = Some(k);
                        break;
                    }
                }
                match next {
                    Some(k) => {
                        alive[pending.remove(k)] = true;
                    }
                    None => return Ok(false),
                }
            }
            Ok(true)
        }
    }
}

/// Largest `tau` such that every set of `tau` failures is repairable.
pub fn resilience(
    code: &FrCode,
    d: usize,
    beta: usize,
    mode: ResilienceMode,
    opts: ResilienceOptions,
) -> Result<ResilienceReport> {
    let n = code.n();
    let mut report =
        ResilienceReport { mode, tau: 0, exhaustive: false, sampled_tau: 0, counterexample: None };
    let mut certified = true;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for tau in 1..=n {
        let total = binomial(n as u64, tau as u64);
        let failure = if total <= opts.budget as u128 {
            first_failure(code, (0..n).combinations(tau), d, beta, mode, opts.limits)?
        } else {
            certified = false;
            let draws: Vec<Vec<usize>> = (0..opts.samples)
                .map(|_| {
                    let mut s = sample(&mut rng, n, tau).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            first_failure(code, draws.into_iter(), d, beta, mode, opts.limits)?
        };
        match failure {
            Some(pattern) => {
                report.counterexample = Some(pattern);
                report.exhaustive = report.tau == report.sampled_tau;
                return Ok(report);
            }
            None => {
                report.sampled_tau = tau;
                if certified {
                    report.tau = tau;
                }
            }
        }
    }
    Ok(report)
}

fn first_failure(
    code: &FrCode,
    patterns: impl Iterator<Item = Vec<usize>>,
    d: usize,
    beta: usize,
    mode: ResilienceMode,
    limits: SearchLimits,
) -> Result<Option<Vec<usize>>> {
    const CHUNK: usize = 4096;
    let mut patterns = patterns.peekable();
    while patterns.peek().is_some() {
        let chunk: Vec<Vec<usize>> = patterns.by_ref().take(CHUNK).collect();
        let results: Vec<Result<bool>> =
            chunk.par_iter().map(|f| repairable(code, f, d, beta, mode, limits)).collect();
        for (f, r) in chunk.into_iter().zip(results) {
            if !r? {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

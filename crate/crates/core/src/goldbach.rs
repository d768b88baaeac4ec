//! Goldbach partitions and the residue-class prime choices used by the
//! inductive arguments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sieve::PrimeSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldbachError {
    #[error("{0}")]
    Domain(String),
    #[error("malformed scan range [{lo}, {hi}]: bounds must be even with 4 <= lo <= hi")]
    Bounds { lo: u64, hi: u64 },
    #[error("prime set covers only up to {have}, need {need}")]
    PrimesTooSmall { need: u64, have: u64 },
    #[error("no Goldbach partition found for {0}")]
    NoPair(u64),
}

/// `n = p + q` with `p <= q`, both prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldbachPair {
    pub n: u64,
    pub p: u64,
    pub q: u64,
}

/// Outcome of an exhaustive scan over the even numbers of `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionReport {
    pub lo: u64,
    pub hi: u64,
    /// Even numbers in range with no prime pair.
    pub exceptions: Vec<u64>,
    /// Number of even integers examined.
    pub scanned: u64,
}

impl ExceptionReport {
    pub fn is_clean(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// True when this is a clean scan whose range contains `[lo, hi]`.
    pub fn certifies(&self, lo: u64, hi: u64) -> bool {
        self.is_clean() && self.lo <= lo.max(4) && self.hi >= hi
    }
}

fn require_cover(primes: &PrimeSet, need: u64) -> Result<(), GoldbachError> {
    if primes.limit() < need {
        return Err(GoldbachError::PrimesTooSmall {
            need,
            have: primes.limit(),
        });
    }
    Ok(())
}

/// Minimal-`p` partition of an even `n >= 4`.
pub fn goldbach_pair(primes: &PrimeSet, n: u64) -> Result<GoldbachPair, GoldbachError> {
    if n < 4 || n % 2 == 1 {
        return Err(GoldbachError::Domain(format!(
            "goldbach_pair needs an even n >= 4, got {n}"
        )));
    }
    require_cover(primes, n)?;
    primes
        .iter()
        .take_while(|&p| p <= n / 2)
        .find(|&p| primes.contains(n - p))
        .map(|p| GoldbachPair { n, p, q: n - p })
        .ok_or(GoldbachError::NoPair(n))
}

/// Checks every even number in `[lo, hi]` for a prime pair, splitting the
/// range across `jobs` worker threads.
pub fn scan_goldbach(
    primes: &PrimeSet,
    lo: u64,
    hi: u64,
    jobs: usize,
) -> Result<ExceptionReport, GoldbachError> {
    if lo < 4 || lo > hi || lo % 2 == 1 || hi % 2 == 1 {
        return Err(GoldbachError::Bounds { lo, hi });
    }
    require_cover(primes, hi)?;
    let small: Vec<u64> = primes.primes_up_to(hi / 2);
    let scan_chunk = |a: u64, b: u64| -> Vec<u64> {
        let mut exceptions = Vec::new();
        let mut n = a;
        while n <= b {
            let found = small
                .iter()
                .take_while(|&&p| p <= n / 2)
                .any(|&p| primes.contains(n - p));
            if !found {
                exceptions.push(n);
            }
            n += 2;
        }
        exceptions
    };

    let jobs = jobs.max(1);
    let evens = (hi - lo) / 2 + 1;
    let n_chunks = (jobs as u64 * 8).min(evens);
    let per_chunk = evens.div_ceil(n_chunks);
    let ranges: Vec<(u64, u64)> = (0..n_chunks)
        .map(|c| {
            let a = lo + 2 * c * per_chunk;
            let b = (a + 2 * (per_chunk - 1)).min(hi);
            (a, b)
        })
        .filter(|(a, b)| a <= b)
        .collect();

    let exceptions: Vec<u64> = if jobs == 1 {
        ranges.iter().flat_map(|&(a, b)| scan_chunk(a, b)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| GoldbachError::Domain(format!("thread pool: {e}")))?;
        let parts: Vec<Vec<u64>> =
            pool.install(|| ranges.par_iter().map(|&(a, b)| scan_chunk(a, b)).collect());
        parts.into_iter().flatten().collect()
    };
    Ok(ExceptionReport {
        lo,
        hi,
        exceptions,
        scanned: evens,
    })
}

/// `q` in {3, 5} with `m + q = 0 (mod 4)`.
pub fn choose_q_mod4(m: u64) -> Result<u64, GoldbachError> {
    match m % 4 {
        1 => Ok(3),
        3 => Ok(5),
        _ => Err(GoldbachError::Domain(format!(
            "choose_q_mod4 needs an odd input, got {m}"
        ))),
    }
}

/// `r` in {3, 5, 7, 17} with `q + r = 6 (mod 8)`.
pub fn choose_r_mod8(q: u64) -> Result<u64, GoldbachError> {
    match q % 8 {
        1 => Ok(5),
        3 => Ok(3),
        5 => Ok(17),
        7 => Ok(7),
        _ => Err(GoldbachError::Domain(format!(
            "choose_r_mod8 needs an odd input, got {q}"
        ))),
    }
}

/// Primes `p < m + 1 < q` with `p + q = 2m + 2`, minimal `p`.
///
/// `None` is the not-found signal; callers must report it.
pub fn unbalanced_split(primes: &PrimeSet, m: u64) -> Result<Option<(u64, u64)>, GoldbachError> {
    if m < 2 {
        return Err(GoldbachError::Domain(format!(
            "unbalanced_split needs m >= 2, got {m}"
        )));
    }
    let total = 2 * m + 2;
    require_cover(primes, total)?;
    Ok(primes
        .iter()
        .take_while(|&p| p < m + 1)
        .find(|&p| primes.contains(total - p))
        .map(|p| (p, total - p)))
}

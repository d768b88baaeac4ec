//! The Spiro set `H`, the sets `H_n`, and the witness search for `m + q in H`.
//!
//! `H` holds the positive integers whose prime exponents respect a cap: at
//! most 1 above the prime threshold, and at most the largest `e` with
//! `p^e <= cap_bound` below it. Everything below `1009^2` is a member.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Q;
use crate::sieve::{build_prime_set, is_prime_u64, Factorization, Factorizer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpiroError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0}")]
    Domain(String),
    #[error("invalid H parameters: {0}")]
    Params(String),
}

/// Parameters of the exponent cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HParams {
    pub cap_bound: u64,
    pub prime_threshold: u64,
    /// Subtract one from every small-prime cap (the displayed set-builder
    /// formula). The default follows the prime-power table instead.
    pub minus_one: bool,
}

impl Default for HParams {
    fn default() -> Self {
        HParams {
            cap_bound: 1_000_000_000,
            prime_threshold: 1000,
            minus_one: false,
        }
    }
}

impl HParams {
    pub fn new(cap_bound: u64, prime_threshold: u64) -> Result<Self, SpiroError> {
        if cap_bound < 2 || prime_threshold < 2 {
            return Err(SpiroError::Params(format!(
                "cap_bound ({cap_bound}) and prime_threshold ({prime_threshold}) must be >= 2"
            )));
        }
        Ok(HParams {
            cap_bound,
            prime_threshold,
            minus_one: false,
        })
    }

    pub fn with_minus_one(mut self, on: bool) -> Self {
        self.minus_one = on;
        self
    }

    /// Cap for a prime already known to be prime.
    fn cap_unchecked(&self, p: u64) -> u32 {
        if p > self.prime_threshold {
            return 1;
        }
        let mut e = 0u32;
        let mut pow = 1u64;
        while let Some(next) = pow.checked_mul(p).filter(|&v| v <= self.cap_bound) {
            pow = next;
            e += 1;
        }
        if self.minus_one {
            e.saturating_sub(1)
        } else {
            e
        }
    }

    /// Exponent cap of `p` in `H`, by integer arithmetic.
    pub fn h_cap(&self, p: u64) -> Result<u32, SpiroError> {
        if !is_prime_u64(p) {
            return Err(SpiroError::NotPrime(p));
        }
        Ok(self.cap_unchecked(p))
    }
}

/// Membership oracle for `H` with a factorization table.
#[derive(Clone, Debug)]
pub struct SpiroSet {
    params: HParams,
    /// `caps[p]` for primes `p <= prime_threshold`.
    small_caps: Vec<u32>,
    factorizer: Factorizer,
}

/// Size of the smallest-prime-factor table used by [`SpiroSet::new`].
pub const DEFAULT_TABLE: u32 = 1 << 22;

impl SpiroSet {
    pub fn new(params: HParams) -> Self {
        SpiroSet::with_table(params, DEFAULT_TABLE)
    }

    pub fn with_table(params: HParams, table_limit: u32) -> Self {
        let mut small_caps = vec![0u32; params.prime_threshold.min(1 << 24) as usize + 1];
        for (p, cap) in small_caps.iter_mut().enumerate() {
            if is_prime_u64(p as u64) {
                *cap = params.cap_unchecked(p as u64);
            }
        }
        let factorizer = Factorizer::new(table_limit)
            .with_primes(build_prime_set(1 << 16).expect("fixed limit"));
        SpiroSet {
            params,
            small_caps,
            factorizer,
        }
    }

    pub fn params(&self) -> &HParams {
        &self.params
    }

    pub fn h_cap(&self, p: u64) -> Result<u32, SpiroError> {
        self.params.h_cap(p)
    }

    fn cap(&self, p: u64) -> u32 {
        match self.small_caps.get(p as usize) {
            Some(&c) if p <= self.params.prime_threshold => c,
            _ => self.params.cap_unchecked(p),
        }
    }

    pub fn factorize(&self, n: u64) -> Factorization {
        self.factorizer.factorize(n).expect("n >= 1")
    }

    pub fn admits(&self, n: &Factorization) -> bool {
        n.factors().iter().all(|&(p, e)| e <= self.cap(p))
    }

    /// `n in H`; `1` is a member.
    pub fn in_h(&self, n: u64) -> bool {
        n >= 1 && self.admits(&self.factorize(n))
    }

    /// Least positive non-member up to `limit`.
    ///
    /// Every non-member is divisible by some `p^(cap(p)+1)`, which is itself a
    /// non-member, so the minimum over primes of that power is the answer.
    pub fn smallest_non_member(&self, limit: u64) -> Option<u64> {
        let above = (self.params.prime_threshold + 1..)
            .find(|&p| is_prime_u64(p))
            .and_then(|p| p.checked_mul(p));
        let below = (2..=self.params.prime_threshold)
            .filter(|&p| is_prime_u64(p))
            .filter_map(|p| p.checked_pow(self.cap(p) + 1))
            .min();
        [above, below]
            .into_iter()
            .flatten()
            .min()
            .filter(|&n| n <= limit)
    }

    /// Ascending elements of `H_n` up to `limit`.
    pub fn hn_stream(&self, n: u64, limit: u64) -> HnStream<'_> {
        assert!(n >= 1, "H_n is defined for n >= 1");
        HnStream {
            set: self,
            n,
            limit,
            m: 0,
        }
    }

    /// `|H_n ∩ [1, limit]| / limit`.
    pub fn hn_density(&self, n: u64, limit: u64) -> Result<Density, SpiroError> {
        if n < 1 || limit < n {
            return Err(SpiroError::Domain(format!(
                "hn_density needs 1 <= n <= limit, got n = {n}, limit = {limit}"
            )));
        }
        let count = self.hn_stream(n, limit).count() as u64;
        Ok(Density { count, limit })
    }

    /// Smallest odd prime `q <= m - 1` with `m + q in H`.
    pub fn find_q_for_m(&self, m: u64) -> Result<Option<u64>, SpiroError> {
        if m < 4 {
            return Err(SpiroError::Domain(format!(
                "find_q_for_m needs m >= 4, got {m}"
            )));
        }
        Ok((3..m)
            .step_by(2)
            .filter(|&q| is_prime_u64(q))
            .find(|&q| self.in_h(m + q)))
    }

    /// Odd primes `q <= m - 1` with `m + q in H`, ascending.
    pub fn q_candidates(&self, m: u64) -> impl Iterator<Item = u64> + '_ {
        (3..m)
            .step_by(2)
            .filter(|&q| is_prime_u64(q))
            .filter(move |&q| self.in_h(m + q))
    }
}

/// Streams `H_n`: `m n` with `m in H`, `gcd(m, n) = 1` for even `n`;
/// `2 m n` with `2m in H`, `gcd(m, n) = 1` for odd `n`.
pub struct HnStream<'a> {
    set: &'a SpiroSet,
    n: u64,
    limit: u64,
    m: u64,
}

impl Iterator for HnStream<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let even = self.n % 2 == 0;
        let step = if even { self.n } else { 2 * self.n };
        loop {
            self.m += 1;
            let k = self.m.checked_mul(step).filter(|&k| k <= self.limit)?;
            if self.m.gcd(&self.n) != 1 {
                continue;
            }
            let member = if even {
                self.set.in_h(self.m)
            } else {
                self.set.in_h(2 * self.m)
            };
            if member {
                return Some(k);
            }
        }
    }
}

/// Exact `count / limit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Density {
    pub count: u64,
    pub limit: u64,
}

impl Density {
    pub fn as_q(&self) -> Q {
        Q::new(BigInt::from(self.count), BigInt::from(self.limit))
    }

    /// `"count/limit"` as stated, not reduced.
    pub fn exact(&self) -> String {
        format!("{}/{}", self.count, self.limit)
    }

    pub fn approx(&self) -> f64 {
        self.count as f64 / self.limit as f64
    }
}

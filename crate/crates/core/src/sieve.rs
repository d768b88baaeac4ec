//! Prime generation, primality and factorization.
//!
//! [`PrimeSet`] is an odd-only bitmap (bit `i` stands for `2i + 1`) filled by a
//! segmented sieve of Eratosthenes. Segments cover [`SEGMENT_SPAN`] integers
//! each and are sieved independently, so they can run on any number of worker
//! threads without changing the result.
//!
//! The bitmap can be persisted to a small cache file:
//!
//! ```text
//! "ADQ1" | limit: u64 little-endian | odd-only bitmap, LSB-first bytes
//! ```
//!
//! Writes go to a temporary file in the same directory and are renamed into
//! place, so readers never observe a half-written cache.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest limit accepted by [`build_prime_set`].
pub const DEFAULT_MAX_LIMIT: u64 = 1_000_000_000;

/// Number of consecutive integers covered by one sieve segment.
pub const SEGMENT_SPAN: u64 = 1 << 20;

const CACHE_MAGIC: &[u8; 4] = b"ADQ1";
const SEGMENT_WORDS: usize = (SEGMENT_SPAN / 128) as usize;

#[derive(Debug, Error)]
pub enum SieveError {
    #[error("sieve limit {limit} outside the supported range [2, {max}]")]
    Bounds { limit: u64, max: u64 },
    #[error("cannot factorize 0")]
    Zero,
    #[error("malformed sieve cache {path}: {reason}")]
    Cache { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Exact set of primes in `[2, limit]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeSet {
    limit: u64,
    /// Bit `i` set iff `2i + 1` is prime. Bits past `limit` are always clear.
    bits: Vec<u64>,
    count: u64,
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeSet")
            .field("limit", &self.limit)
            .field("count", &self.count)
            .finish()
    }
}

/// Sieves all primes up to `limit` with the default upper bound.
pub fn build_prime_set(limit: u64) -> Result<PrimeSet, SieveError> {
    PrimeSet::build(limit, DEFAULT_MAX_LIMIT)
}

impl PrimeSet {
    pub fn build(limit: u64, max_limit: u64) -> Result<Self, SieveError> {
        if limit < 2 || limit > max_limit {
            return Err(SieveError::Bounds {
                limit,
                max: max_limit,
            });
        }
        let base = small_odd_primes(isqrt(limit));
        let n_words = word_count(limit);
        let mut bits = vec![0u64; n_words];
        bits.par_chunks_mut(SEGMENT_WORDS)
            .enumerate()
            .for_each(|(seg, words)| sieve_segment(seg, words, &base, limit));
        let count = bits.iter().map(|w| u64::from(w.count_ones())).sum::<u64>() + 1;
        Ok(PrimeSet { limit, bits, count })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes `<= limit`.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Bitmap lookup. Returns `false` for anything outside `[2, limit]`.
    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        if n == 2 {
            return true;
        }
        if n < 2 || n > self.limit || n % 2 == 0 {
            return false;
        }
        let i = (n / 2) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Primality of any `n`, falling back to trial division past the limit.
    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            return self.contains(n);
        }
        if isqrt(n) <= self.limit {
            return self.iter().take_while(|&p| p * p <= n).all(|p| n % p != 0);
        }
        is_prime_u64(n)
    }

    /// Primes in ascending order.
    pub fn iter(&self) -> Primes<'_> {
        Primes {
            set: self,
            word: 0,
            pending: 0,
            emitted_two: false,
        }
    }

    /// Primes in `[2, bound]` (clamped to the limit).
    pub fn primes_up_to(&self, bound: u64) -> Vec<u64> {
        self.iter().take_while(|&p| p <= bound).collect()
    }

    /// Writes the cache file atomically.
    pub fn write_cache(&self, path: &Path) -> Result<(), SieveError> {
        let dir = path
            .parent()
            .filter(|d| !d.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let file_name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "sieve".into());
        let tmp = dir.join(format!(".{file_name}.{}.tmp", std::process::id()));
        {
            let mut out = io::BufWriter::new(fs::File::create(&tmp)?);
            out.write_all(CACHE_MAGIC)?;
            out.write_all(&self.limit.to_le_bytes())?;
            let n_bytes = cache_bitmap_bytes(self.limit);
            let mut written = 0;
            for word in &self.bits {
                let bytes = word.to_le_bytes();
                let take = (n_bytes - written).min(8);
                out.write_all(&bytes[..take])?;
                written += take;
            }
            out.flush()?;
            out.get_ref().sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Reads and validates a cache file written by [`PrimeSet::write_cache`].
    pub fn read_cache(path: &Path) -> Result<Self, SieveError> {
        let bad = |reason: &str| SieveError::Cache {
            path: path.to_path_buf(),
            reason: reason.into(),
        };
        let mut raw = Vec::new();
        fs::File::open(path)?.read_to_end(&mut raw)?;
        if raw.len() < 12 || &raw[..4] != CACHE_MAGIC {
            return Err(bad("missing ADQ1 header"));
        }
        let limit = u64::from_le_bytes(raw[4..12].try_into().expect("8 bytes"));
        if limit < 2 {
            return Err(bad("limit below 2"));
        }
        let body = &raw[12..];
        if body.len() != cache_bitmap_bytes(limit) {
            return Err(bad("bitmap length does not match limit"));
        }
        let mut bits = vec![0u64; word_count(limit)];
        for (i, chunk) in body.chunks(8).enumerate() {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            bits[i] = u64::from_le_bytes(word);
        }
        // Trailing bits beyond the limit must be clear for `count` to be right.
        let last_index = (limit - 1) / 2;
        let tail_start = last_index as usize + 1;
        for i in tail_start..bits.len() * 64 {
            if bits[i / 64] >> (i % 64) & 1 == 1 {
                return Err(bad("bits set past the limit"));
            }
        }
        if bits[0] & 1 == 1 {
            return Err(bad("1 marked prime"));
        }
        let count = bits.iter().map(|w| u64::from(w.count_ones())).sum::<u64>() + 1;
        Ok(PrimeSet { limit, bits, count })
    }
}

/// `dir/sieve_<limit>.adq`
pub fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("sieve_{limit}.adq"))
}

/// Loads `sieve_<limit>.adq` from `dir` if present and valid, otherwise sieves
/// and writes it. Returns the set and whether it came from the cache.
pub fn load_or_build(dir: &Path, limit: u64) -> Result<(PrimeSet, bool), SieveError> {
    let path = cache_path(dir, limit);
    if path.exists() {
        if let Ok(set) = PrimeSet::read_cache(&path) {
            if set.limit == limit {
                return Ok((set, true));
            }
        }
    }
    let set = build_prime_set(limit)?;
    set.write_cache(&path)?;
    Ok((set, false))
}

pub struct Primes<'a> {
    set: &'a PrimeSet,
    word: usize,
    pending: u64,
    emitted_two: bool,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            self.pending = self.set.bits.first().copied().unwrap_or(0);
            return Some(2);
        }
        loop {
            if self.pending != 0 {
                let bit = self.pending.trailing_zeros() as u64;
                self.pending &= self.pending - 1;
                return Some(2 * (self.word as u64 * 64 + bit) + 1);
            }
            self.word += 1;
            if self.word >= self.set.bits.len() {
                return None;
            }
            self.pending = self.set.bits[self.word];
        }
    }
}

fn word_count(limit: u64) -> usize {
    let n_bits = limit / 2 + 1;
    n_bits.div_ceil(64) as usize
}

fn cache_bitmap_bytes(limit: u64) -> usize {
    (limit / 2 + 1).div_ceil(8) as usize
}

fn sieve_segment(seg: usize, words: &mut [u64], base: &[u64], limit: u64) {
    // Index range of this segment in the odd-only bitmap.
    let i0 = (seg * SEGMENT_WORDS * 64) as u64;
    let i1 = i0 + (words.len() * 64) as u64;
    words.fill(u64::MAX);
    let hi_number = 2 * (i1 - 1) + 1;
    for &p in base {
        if p * p > hi_number {
            break;
        }
        // First odd multiple of p that is >= max(p^2, 2*i0+1).
        let lo_number = 2 * i0 + 1;
        let mut start = (p * p).max(lo_number.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut j = (start - 1) / 2 - i0;
        let span = i1 - i0;
        while j < span {
            words[(j / 64) as usize] &= !(1u64 << (j % 64));
            j += p;
        }
    }
    if seg == 0 {
        words[0] &= !1; // 1 is not prime
    }
    let last = (limit - 1) / 2; // largest index with 2i+1 <= limit
    if last < i1 - 1 {
        for i in (last + 1).max(i0)..i1 {
            let k = i - i0;
            words[(k / 64) as usize] &= !(1u64 << (k % 64));
        }
    }
}

/// Odd primes `<= bound`, by a plain sieve.
fn small_odd_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Floor of the square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Deterministic trial division over 6k +- 1.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Canonical factorization: strictly increasing primes with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds from pairs, validating canonical form.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Option<Self> {
        let ok = pairs.iter().all(|&(p, e)| e >= 1 && is_prime_u64(p))
            && pairs.windows(2).all(|w| w[0].0 < w[1].0);
        ok.then_some(Factorization { factors: pairs })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of `p^e`, or `None` on `u64` overflow.
    pub fn value(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|f| f.0 == p).map_or(0, |f| f.1)
    }

    /// `Some((p, e))` when the number is a single prime power.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Every exponent at least 2 (powerful). `1` counts as squareful here;
    /// callers needing `n >= 2` check that themselves.
    pub fn is_squareful(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e >= 2)
    }

    /// Sorted merge of two factorizations of coprime numbers.
    pub fn merge_coprime(&self, other: &Factorization) -> Option<Factorization> {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => return None,
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) | (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some(Factorization { factors: out })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<Factorization, SieveError> {
    if n == 0 {
        return Err(SieveError::Zero);
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3] {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut d = 5u64;
    let mut step = 2;
    while d <= m / d {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += step;
        step = 6 - step;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { factors })
}

/// Factorization backed by a smallest-prime-factor table, with trial
/// division by sieved primes above the table.
#[derive(Clone, Debug)]
pub struct Factorizer {
    spf: Vec<u32>,
    primes: Option<PrimeSet>,
}

impl Factorizer {
    /// Table covering `[0, table_limit]`.
    pub fn new(table_limit: u32) -> Self {
        let n = table_limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Factorizer { spf, primes: None }
    }

    /// Adds a prime set used for trial division past the table.
    pub fn with_primes(mut self, primes: PrimeSet) -> Self {
        self.primes = Some(primes);
        self
    }

    pub fn table_limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization, SieveError> {
        if n == 0 {
            return Err(SieveError::Zero);
        }
        if n <= self.table_limit() {
            let mut factors: Vec<(u64, u32)> = Vec::new();
            let mut m = n as usize;
            while m > 1 {
                let p = self.spf[m] as usize;
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                factors.push((p as u64, e));
            }
            return Ok(Factorization { factors });
        }
        match &self.primes {
            Some(set) if isqrt(n) <= set.limit() => {
                let mut factors = Vec::new();
                let mut m = n;
                for p in set.iter() {
                    if p > m / p {
                        break;
                    }
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    if e > 0 {
                        factors.push((p, e));
                    }
                }
                if m > 1 {
                    factors.push((m, 1));
                }
                Ok(Factorization { factors })
            }
            _ => factorize(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_limit() {
        let set = build_prime_set(10).unwrap();
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(set.count(), 4);
    }

    #[test]
    fn limit_two_and_three() {
        assert_eq!(
            build_prime_set(2).unwrap().iter().collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(
            build_prime_set(3).unwrap().iter().collect::<Vec<_>>(),
            vec![2, 3]
        );
    }

    #[test]
    fn bounds() {
        assert!(matches!(build_prime_set(1), Err(SieveError::Bounds { .. })));
        assert!(matches!(build_prime_set(0), Err(SieveError::Bounds { .. })));
        assert!(matches!(
            PrimeSet::build(101, 100),
            Err(SieveError::Bounds { .. })
        ));
    }

    #[test]
    fn is_prime_cases() {
        let set = build_prime_set(1000).unwrap();
        assert!(set.is_prime(2));
        assert!(!set.is_prime(1));
        assert!(!set.is_prime(1_018_081));
        assert!(set.is_prime(1_000_003));
        assert!(!is_prime_u64(1_018_081));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn factorize_cases() {
        assert!(factorize(1).unwrap().is_one());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(1_018_081).unwrap().factors(), &[(1009, 2)]);
        assert!(matches!(factorize(0), Err(SieveError::Zero)));
        assert_eq!(factorize(12).unwrap().to_string(), "2^2 * 3");
    }

    #[test]
    fn factorizer_matches_trial_division() {
        let fz = Factorizer::new(10_000).with_primes(build_prime_set(2_000).unwrap());
        for n in (1..20_000u64).chain([1_018_081, 3_999_999, 2_147_483_647]) {
            assert_eq!(fz.factorize(n).unwrap(), factorize(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn segment_boundaries() {
        // Limits straddling a segment edge must agree with trial division.
        for limit in [
            SEGMENT_SPAN - 1,
            SEGMENT_SPAN,
            SEGMENT_SPAN + 1,
            2 * SEGMENT_SPAN + 3,
        ] {
            let set = build_prime_set(limit).unwrap();
            for n in limit.saturating_sub(200)..=limit + 5 {
                assert_eq!(
                    set.contains(n),
                    n <= limit && is_prime_u64(n),
                    "limit {limit}, n {n}"
                );
            }
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in [
            0u64,
            1,
            2,
            3,
            4,
            15,
            16,
            17,
            u64::MAX,
            (1u64 << 32) * ((1u64 << 32) - 1),
        ] {
            let r = isqrt(n);
            assert!(r.checked_mul(r).unwrap() <= n);
            assert!((r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
        }
    }

    #[test]
    fn cache_rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.adq");
        fs::write(&path, b"XXXX00000000").unwrap();
        assert!(matches!(
            PrimeSet::read_cache(&path),
            Err(SieveError::Cache { .. })
        ));
    }
}

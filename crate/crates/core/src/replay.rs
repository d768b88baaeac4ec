//! Executable re-enactments of the inductive arguments: the Goldbach
//! induction that pins `f(n) = n` below a bound, its extension over `H`, the
//! `H_n` witness search, and the `f(2) = 0` / `f(2) = 1` branch arguments.
//!
//! Every replay walks `n` upward and records, per `n`, which case fired, the
//! integers it used and the earlier values it read. A value that cannot be
//! derived becomes a failure entry; the run keeps going.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::goldbach::{
    choose_q_mod4, choose_r_mod8, goldbach_pair, scan_goldbach, unbalanced_split, ExceptionReport,
    GoldbachError,
};
use crate::rational::{self, Q};
use crate::sieve::{build_prime_set, Factorization, Factorizer, PrimeSet, SieveError};
use crate::spiro::{SpiroError, SpiroSet};

/// Largest `n` covered by the hand-checked small-argument table.
pub const BASE_TABLE: u64 = 18;

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Bounds(String),
    #[error(transparent)]
    Goldbach(#[from] GoldbachError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Spiro(#[from] SpiroError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    EvenGoldbach,
    #[serde(rename = "odd-prime-q35")]
    OddPrimeQ35,
    CoprimeSplit,
    PrimePowerSplit,
    BaseTable,
    HComposite,
    HPrimeQ,
}

impl Case {
    pub fn as_str(&self) -> &'static str {
        match self {
            Case::EvenGoldbach => "even-goldbach",
            Case::OddPrimeQ35 => "odd-prime-q35",
            Case::CoprimeSplit => "coprime-split",
            Case::PrimePowerSplit => "prime-power-split",
            Case::BaseTable => "base-table",
            Case::HComposite => "h-composite",
            Case::HPrimeQ => "h-prime-q",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub n: u64,
    pub established: bool,
    pub case: Option<Case>,
    /// Integers the step used (primes, cofactors, split parts).
    pub witnesses: Vec<u64>,
    /// Arguments whose values the step read.
    pub depends_on: Vec<u64>,
    #[serde(with = "opt_q")]
    pub value: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u64,
    pub case: Option<Case>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub kind: String,
    pub range: (u64, u64),
    /// Arguments up to here count as given.
    pub base: u64,
    pub counters: BTreeMap<String, u64>,
    pub outcomes: Vec<Outcome>,
    pub failures: Vec<Failure>,
    /// Arguments whose value is left unconstrained.
    pub free: Vec<u64>,
}

impl ReplayReport {
    fn new(kind: &str, range: (u64, u64), base: u64, cases: &[Case]) -> Self {
        ReplayReport {
            kind: kind.to_string(),
            range,
            base,
            counters: cases.iter().map(|c| (c.as_str().to_string(), 0)).collect(),
            outcomes: Vec::new(),
            failures: Vec::new(),
            free: Vec::new(),
        }
    }

    fn record(&mut self, out: Outcome) {
        if let Some(c) = out.case {
            *self.counters.entry(c.as_str().to_string()).or_insert(0) += 1;
        }
        self.outcomes.push(out);
    }

    fn fail(&mut self, n: u64, case: Option<Case>, reason: String) {
        self.outcomes.push(Outcome {
            n,
            established: false,
            case,
            witnesses: Vec::new(),
            depends_on: Vec::new(),
            value: None,
        });
        self.failures.push(Failure { n, case, reason });
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn counter(&self, case: Case) -> u64 {
        self.counters.get(case.as_str()).copied().unwrap_or(0)
    }

    pub fn outcome(&self, n: u64) -> Option<&Outcome> {
        self.outcomes
            .binary_search_by_key(&n, |o| o.n)
            .ok()
            .map(|i| &self.outcomes[i])
    }

    pub fn established_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.established).count()
    }

    /// Every dependency of an established value is either in the base range
    /// or an earlier established outcome.
    pub fn check_well_founded(&self) -> Result<(), String> {
        let mut done = BTreeMap::new();
        for o in &self.outcomes {
            if o.established {
                for &d in &o.depends_on {
                    let ok = d <= self.base || (d < o.n && done.get(&d) == Some(&true));
                    if !ok {
                        return Err(format!("f({}) reads f({d}) before it is established", o.n));
                    }
                }
            }
            done.insert(o.n, o.established);
        }
        Ok(())
    }
}

mod opt_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&rational::format_q(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| rational::parse_q(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Primes plus a clean Goldbach scan, the precondition of the induction.
#[derive(Clone, Debug)]
pub struct Certificate {
    primes: PrimeSet,
    scan: ExceptionReport,
}

impl Certificate {
    /// Sieves to `2 big_n` and scans `[4, 2 big_n]`.
    pub fn build(big_n: u64, jobs: usize) -> Result<Self, ReplayError> {
        let hi = 2 * big_n.max(2);
        let primes = build_prime_set(hi)?;
        let scan = scan_goldbach(&primes, 4, hi, jobs)?;
        Ok(Certificate { primes, scan })
    }

    pub fn from_parts(primes: PrimeSet, scan: ExceptionReport) -> Self {
        Certificate { primes, scan }
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn scan(&self) -> &ExceptionReport {
        &self.scan
    }

    /// Clean scan of `[4, 2 big_n]` and primes to match.
    pub fn covers(&self, big_n: u64) -> bool {
        self.scan.certifies(4, 2 * big_n) && self.primes.limit() >= 2 * big_n
    }

    fn require(&self, big_n: u64) -> Result<(), ReplayError> {
        if self.covers(big_n) {
            Ok(())
        } else {
            Err(ReplayError::Refused(format!(
                "no clean Goldbach scan of [4, {}] (scan [{}, {}] with {} exceptions, primes to {})",
                2 * big_n,
                self.scan.lo,
                self.scan.hi,
                self.scan.exceptions.len(),
                self.primes.limit()
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Identity,
    One,
}

impl Target {
    fn value(self, n: u64) -> Q {
        match self {
            Target::Identity => Q::from_integer(n.into()),
            Target::One => Q::one(),
        }
    }
}

struct Step {
    case: Case,
    witnesses: Vec<u64>,
    depends_on: Vec<u64>,
    value: Q,
}

/// Values established so far, indexed by argument.
struct Table {
    values: Vec<Option<Q>>,
}

impl Table {
    fn new(size: u64) -> Self {
        let mut values = vec![None; size as usize + 1];
        if size >= 1 {
            values[1] = Some(Q::one());
        }
        Table { values }
    }

    fn get(&self, n: u64) -> Result<&Q, String> {
        self.values
            .get(n as usize)
            .and_then(Option::as_ref)
            .ok_or_else(|| format!("f({n}) not established"))
    }

    fn set(&mut self, n: u64, v: Q) {
        self.values[n as usize] = Some(v);
    }
}

/// The four-case step for an argument `n > 18` with every smaller argument
/// already in the table.
fn induction_step(
    primes: &PrimeSet,
    table: &Table,
    n: u64,
    fact: &Factorization,
) -> Result<Step, (Case, String)> {
    let f2 = table.get(2).map_err(|e| (Case::EvenGoldbach, e))?.clone();
    if n % 2 == 0 {
        let case = Case::EvenGoldbach;
        let err = |e: String| (case, e);
        let pair = goldbach_pair(primes, n + 2).map_err(|e| err(e.to_string()))?;
        let v = table.get(pair.p).map_err(err)? + table.get(pair.q).map_err(err)? - &f2;
        return Ok(Step {
            case,
            witnesses: vec![pair.p, pair.q],
            depends_on: vec![2, pair.p, pair.q],
            value: v,
        });
    }
    let factors = fact.factors();
    if factors.len() == 1 && factors[0].1 == 1 {
        let case = Case::OddPrimeQ35;
        let err = |e: String| (case, e);
        let q = choose_q_mod4(n).map_err(|e| err(e.to_string()))?;
        let t = (n + q - 2) / 2;
        if t % 2 == 0 || t >= n {
            return Err(err(format!(
                "(n+q-2)/2 = {t} is not an odd argument below {n}"
            )));
        }
        // f(2t) = f(2) f(t) = f(n) + f(q) - f(2)
        let v = &f2 * table.get(t).map_err(err)? - table.get(q).map_err(err)? + &f2;
        return Ok(Step {
            case,
            witnesses: vec![q, t],
            depends_on: vec![2, q, t],
            value: v,
        });
    }
    if factors.len() > 1 {
        let case = Case::CoprimeSplit;
        let err = |e: String| (case, e);
        let (p, e) = factors[0];
        let a = p.pow(e);
        let b = n / a;
        let v = table.get(a).map_err(err)? * table.get(b).map_err(err)?;
        return Ok(Step {
            case,
            witnesses: vec![a, b],
            depends_on: vec![a, b],
            value: v,
        });
    }
    let case = Case::PrimePowerSplit;
    let err = |e: String| (case, e);
    let (p, q) = unbalanced_split(primes, n)
        .map_err(|e| err(e.to_string()))?
        .ok_or_else(|| {
            err(format!(
                "no primes p < {} < q with p + q = {}",
                n + 1,
                2 * n + 2
            ))
        })?;
    let r = choose_r_mod8(q).map_err(|e| err(e.to_string()))?;
    let s = (q + r - 2) / 4;
    if (q + r - 2) % 4 != 0 || s % 2 == 0 || s >= n - 1 {
        return Err(err(format!(
            "(q+r-2)/4 = {s} is not an odd argument below {}",
            n - 1
        )));
    }
    if f2.is_zero() {
        return Err(err(
            "f(2) = 0 leaves f(n) undetermined in this step".to_string()
        ));
    }
    // f(4s) = f(4) f(s) = f(q) + f(r) - f(2), then f(2n) = f(2) f(n) = f(p) + f(q) - f(2)
    let fq =
        table.get(4).map_err(err)? * table.get(s).map_err(err)? - table.get(r).map_err(err)? + &f2;
    let v = (table.get(p).map_err(err)? + fq - &f2) / &f2;
    Ok(Step {
        case,
        witnesses: vec![p, q, r, s],
        depends_on: vec![2, 4, p, r, s],
        value: v,
    })
}

fn accept(report: &mut ReplayReport, table: &mut Table, n: u64, target: Target, step: Step) {
    let want = target.value(n);
    if step.value != want {
        report.fail(
            n,
            Some(step.case),
            format!(
                "derived {} but expected {}",
                rational::format_q(&step.value),
                rational::format_q(&want)
            ),
        );
        return;
    }
    table.set(n, step.value.clone());
    report.record(Outcome {
        n,
        established: true,
        case: Some(step.case),
        witnesses: step.witnesses,
        depends_on: step.depends_on,
        value: Some(step.value),
    });
}

const INDUCTION_CASES: [Case; 5] = [
    Case::BaseTable,
    Case::EvenGoldbach,
    Case::OddPrimeQ35,
    Case::CoprimeSplit,
    Case::PrimePowerSplit,
];

fn induction_machine(
    cert: &Certificate,
    big_n: u64,
    target: Target,
    kind: &str,
) -> Result<(ReplayReport, Table), ReplayError> {
    if big_n < 21 {
        return Err(ReplayError::Bounds(format!(
            "N must be at least 21, got {big_n}"
        )));
    }
    cert.require(big_n)?;
    let top = big_n - 2;
    let factorizer = Factorizer::new(
        u32::try_from(top).map_err(|_| ReplayError::Bounds(format!("N = {big_n} too large")))?,
    );
    let mut table = Table::new(top);
    let mut report = ReplayReport::new(kind, (2, top), BASE_TABLE, &INDUCTION_CASES);
    for n in 2..=BASE_TABLE {
        let v = target.value(n);
        table.set(n, v.clone());
        report.record(Outcome {
            n,
            established: true,
            case: Some(Case::BaseTable),
            witnesses: Vec::new(),
            depends_on: Vec::new(),
            value: Some(v),
        });
    }
    for n in BASE_TABLE + 1..=top {
        let fact = factorizer.factorize(n)?;
        match induction_step(cert.primes(), &table, n, &fact) {
            Ok(step) => accept(&mut report, &mut table, n, target, step),
            Err((case, reason)) => report.fail(n, Some(case), reason),
        }
    }
    Ok((report, table))
}

/// Establishes `f(n) = n` for `n <= big_n - 2` from `f(2) = 2` and the small
/// table, one argument at a time.
pub fn lemma4_replay(cert: &Certificate, big_n: u64) -> Result<ReplayReport, ReplayError> {
    induction_machine(cert, big_n, Target::Identity, "lemma4").map(|(r, _)| r)
}

/// Extends `f(n) = n` from `[1, base_bound]` to every member of `H` in
/// `(base_bound, limit]`.
///
/// Needs a certificate covering `max(base_bound + 2, 21)` and primes up to
/// `2 limit + 2`.
pub fn h_induction_replay(
    cert: &Certificate,
    spiro: &SpiroSet,
    base_bound: u64,
    limit: u64,
) -> Result<ReplayReport, ReplayError> {
    if base_bound >= limit {
        return Err(ReplayError::Bounds(format!(
            "base_bound ({base_bound}) must be below limit ({limit})"
        )));
    }
    if base_bound < BASE_TABLE {
        return Err(ReplayError::Bounds(format!(
            "base_bound must be at least {BASE_TABLE}, got {base_bound}"
        )));
    }
    if cert.primes().limit() < 2 * limit + 2 {
        return Err(GoldbachError::PrimesTooSmall {
            need: 2 * limit + 2,
            have: cert.primes().limit(),
        }
        .into());
    }
    let (base, mut table) =
        induction_machine(cert, (base_bound + 2).max(21), Target::Identity, "lemma4")?;
    let mut report = ReplayReport::new(
        "h-induction",
        (base_bound + 1, limit),
        base_bound,
        &[
            Case::HComposite,
            Case::HPrimeQ,
            Case::EvenGoldbach,
            Case::PrimePowerSplit,
        ],
    );
    for f in base.failures.iter().filter(|f| f.n <= base_bound) {
        report.failures.push(Failure {
            n: f.n,
            case: f.case,
            reason: format!("base coverage: {}", f.reason),
        });
    }
    let mut grown = Table::new(limit);
    for n in 1..=base_bound {
        if let Ok(v) = table.get(n) {
            grown.set(n, v.clone());
        }
    }
    table = grown;
    let factorizer = Factorizer::new(
        u32::try_from(limit)
            .map_err(|_| ReplayError::Bounds(format!("limit {limit} too large")))?,
    );
    let f2 = Q::from_integer(2.into());

    for n in base_bound + 1..=limit {
        if !spiro.in_h(n) {
            continue;
        }
        let fact = factorizer.factorize(n)?;
        let factors = fact.factors();
        let step = if factors.len() > 1 {
            let case = Case::HComposite;
            let (p, e) = factors[0];
            let a = p.pow(e);
            let b = n / a;
            match (table.get(a), table.get(b)) {
                (Ok(fa), Ok(fb)) => Ok(Step {
                    case,
                    witnesses: vec![a, b],
                    depends_on: vec![a, b],
                    value: fa * fb,
                }),
                (Err(e), _) | (_, Err(e)) => Err((case, e)),
            }
        } else if factors[0].1 == 1 {
            h_prime_step(spiro, &table, n, &f2)
        } else {
            induction_step(cert.primes(), &table, n, &fact)
        };
        match step {
            Ok(step) => accept(&mut report, &mut table, n, Target::Identity, step),
            Err((case, reason)) => report.fail(n, Some(case), reason),
        }
    }
    Ok(report)
}

/// `n` prime: `n + q - 2 = 2^s k` in `H`, so `f(n) = f(2^s) f(k) - f(q) + f(2)`.
fn h_prime_step(spiro: &SpiroSet, table: &Table, n: u64, f2: &Q) -> Result<Step, (Case, String)> {
    let case = Case::HPrimeQ;
    for q in spiro.q_candidates(n - 2) {
        let m = n + q - 2;
        let s = m.trailing_zeros();
        let two_s = 1u64 << s;
        let k = m >> s;
        if let (Ok(a), Ok(b), Ok(fq)) = (table.get(two_s), table.get(k), table.get(q)) {
            return Ok(Step {
                case,
                witnesses: vec![q, two_s, k],
                depends_on: vec![2, q, two_s, k],
                value: a * b - fq + f2,
            });
        }
    }
    Err((
        case,
        format!(
            "no odd prime q <= {} with {} + q in H and both parts established",
            n - 3,
            n - 2
        ),
    ))
}

/// Element `k` of `H_n` with `k + 2 = p + q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnWitness {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    pub q: u64,
}

/// Smallest `k` in `H_n`, `k <= search_limit`, with `k + 2` a sum of two
/// primes. `k = 2` counts for `n = 2` (`4 = 2 + 2`).
pub fn hn_witness(
    primes: &PrimeSet,
    spiro: &SpiroSet,
    n: u64,
    search_limit: u64,
) -> Result<Option<HnWitness>, ReplayError> {
    if n < 2 {
        return Err(ReplayError::Bounds(format!(
            "hn_witness needs n >= 2, got {n}"
        )));
    }
    for k in spiro.hn_stream(n, search_limit) {
        match goldbach_pair(primes, k + 2) {
            Ok(pair) => {
                return Ok(Some(HnWitness {
                    n,
                    k,
                    p: pair.p,
                    q: pair.q,
                }))
            }
            Err(GoldbachError::NoPair(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}

/// Replays the argument for `f(2) = branch_value`.
///
/// Value 1 runs the Goldbach induction with target 1. Value 0 forces zeros on
/// primes, on powers of two and on every nonsquareful argument, and lists the
/// odd squareful arguments as free after checking that none of them is the
/// argument `p + q - 2` of any constraint.
pub fn branch_replay(
    cert: &Certificate,
    branch_value: u8,
    limit: u64,
) -> Result<ReplayReport, ReplayError> {
    if limit < BASE_TABLE {
        return Err(ReplayError::Bounds(format!(
            "limit must be at least {BASE_TABLE}, got {limit}"
        )));
    }
    match branch_value {
        1 => {
            let big_n = (limit + 2).max(21);
            let (mut report, _) = induction_machine(cert, big_n, Target::One, "branch-1")?;
            report.outcomes.retain(|o| o.n <= limit);
            report.failures.retain(|f| f.n <= limit);
            report.range = (2, limit);
            recount(&mut report);
            Ok(report)
        }
        0 => branch_zero(cert.primes(), limit),
        v => Err(ReplayError::Bounds(format!(
            "branch value must be 0 or 1, got {v}"
        ))),
    }
}

fn recount(report: &mut ReplayReport) {
    for c in report.counters.values_mut() {
        *c = 0;
    }
    for o in &report.outcomes {
        if let Some(c) = o.case {
            *report.counters.entry(c.as_str().to_string()).or_insert(0) += 1;
        }
    }
}

/// Prime pairs `p <= q` with `p + q - 2 = n`, i.e. constraints with argument `n`.
fn constraint_pairs(primes: &PrimeSet, n: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
    let total = n + 2;
    primes
        .iter()
        .take_while(move |&p| p <= total / 2)
        .filter(move |&p| primes.contains(total - p))
        .map(move |p| (p, total - p))
}

fn branch_zero(primes: &PrimeSet, limit: u64) -> Result<ReplayReport, ReplayError> {
    if primes.limit() < limit + 2 {
        return Err(GoldbachError::PrimesTooSmall {
            need: limit + 2,
            have: primes.limit(),
        }
        .into());
    }
    let factorizer = Factorizer::new(
        u32::try_from(limit)
            .map_err(|_| ReplayError::Bounds(format!("limit {limit} too large")))?,
    );
    let mut report = ReplayReport::new(
        "branch-0",
        (2, limit),
        BASE_TABLE,
        &[
            Case::BaseTable,
            Case::OddPrimeQ35,
            Case::EvenGoldbach,
            Case::CoprimeSplit,
        ],
    );
    let zero = Q::zero();
    let mut table = Table::new(limit);
    let free_at = |report: &mut ReplayReport, n: u64| -> Result<(), String> {
        if let Some((p, q)) = constraint_pairs(primes, n).next() {
            return Err(format!("f({n}) appears as f({p}+{q}-2)"));
        }
        report.free.push(n);
        report.outcomes.push(Outcome {
            n,
            established: false,
            case: None,
            witnesses: Vec::new(),
            depends_on: Vec::new(),
            value: None,
        });
        Ok(())
    };

    for n in 2..=limit {
        let fact = factorizer.factorize(n)?;
        let factors = fact.factors();
        let odd_squareful = n % 2 == 1 && fact.is_squareful();
        if odd_squareful {
            if let Err(reason) = free_at(&mut report, n) {
                report.fail(n, None, reason);
            }
            continue;
        }
        let step: Result<Step, (Case, String)> = if n <= BASE_TABLE {
            Ok(Step {
                case: Case::BaseTable,
                witnesses: vec![],
                depends_on: vec![],
                value: zero.clone(),
            })
        } else if factors.len() == 1 && factors[0].1 == 1 {
            // f(2t) = f(2) f(t) = 0 = f(n) + f(q) - f(2)
            let case = Case::OddPrimeQ35;
            choose_q_mod4(n)
                .map_err(|e| (case, e.to_string()))
                .and_then(|q| {
                    let err = |e| (case, e);
                    let t = (n + q - 2) / 2;
                    let v = table.get(2).map_err(err)? - table.get(q).map_err(err)?;
                    Ok(Step {
                        case,
                        witnesses: vec![q, t],
                        depends_on: vec![2, q],
                        value: v,
                    })
                })
        } else if factors.len() == 1 {
            // a power of two
            let case = Case::EvenGoldbach;
            goldbach_pair(primes, n + 2)
                .map_err(|e| (case, e.to_string()))
                .and_then(|pair| {
                    let err = |e| (case, e);
                    let v = table.get(pair.p).map_err(err)? + table.get(pair.q).map_err(err)?
                        - table.get(2).map_err(err)?;
                    Ok(Step {
                        case,
                        witnesses: vec![pair.p, pair.q],
                        depends_on: vec![2, pair.p, pair.q],
                        value: v,
                    })
                })
        } else {
            // a zero factor: a power of two, or a prime with exponent one
            let case = Case::CoprimeSplit;
            let z = factors
                .iter()
                .find(|&&(p, e)| p == 2 || e == 1)
                .map(|&(p, e)| p.pow(e))
                .expect("not odd squareful");
            table
                .get(z)
                // f(z) f(n/z) with f(z) = 0, whatever f(n/z) is
                .map(|fz| Step {
                    case,
                    witnesses: vec![z, n / z],
                    depends_on: vec![z],
                    value: fz.clone(),
                })
                .map_err(|e| (case, e))
        };
        match step {
            Ok(step) if step.value.is_zero() => {
                table.set(n, zero.clone());
                report.record(Outcome {
                    n,
                    established: true,
                    case: Some(step.case),
                    witnesses: step.witnesses,
                    depends_on: step.depends_on,
                    value: Some(zero.clone()),
                });
            }
            Ok(step) => report.fail(
                n,
                Some(step.case),
                format!("derived {} instead of 0", rational::format_q(&step.value)),
            ),
            Err((case, reason)) => report.fail(n, Some(case), reason),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spiro::HParams;

    #[test]
    fn induction_small() {
        let cert = Certificate::build(2000, 2).unwrap();
        let r = lemma4_replay(&cert, 2000).unwrap();
        assert!(r.is_clean(), "{:?}", &r.failures[..r.failures.len().min(3)]);
        assert_eq!(r.outcome(27).unwrap().case, Some(Case::PrimePowerSplit));
        assert_eq!(r.outcome(21).unwrap().case, Some(Case::CoprimeSplit));
        assert_eq!(
            r.outcome(1998).unwrap().value,
            Some(Q::from_integer(1998.into()))
        );
        r.check_well_founded().unwrap();
        for c in [
            Case::EvenGoldbach,
            Case::OddPrimeQ35,
            Case::CoprimeSplit,
            Case::PrimePowerSplit,
        ] {
            assert!(r.counter(c) > 0, "{c}");
        }
    }

    #[test]
    fn refuses_unscanned() {
        let cert = Certificate::build(100, 1).unwrap();
        assert!(matches!(
            lemma4_replay(&cert, 1000),
            Err(ReplayError::Refused(_))
        ));
        assert!(matches!(
            lemma4_replay(&cert, 20),
            Err(ReplayError::Bounds(_))
        ));
    }

    #[test]
    fn h_induction_small() {
        let cert = Certificate::build(3001, 2).unwrap();
        let spiro = SpiroSet::with_table(HParams::default(), 1 << 16);
        let r = h_induction_replay(&cert, &spiro, 100, 3000).unwrap();
        assert!(r.is_clean(), "{:?}", r.failures);
        assert!(r.counter(Case::HPrimeQ) > 0 && r.counter(Case::HComposite) > 0);
        r.check_well_founded().unwrap();
        assert!(matches!(
            h_induction_replay(&cert, &spiro, 3000, 100),
            Err(ReplayError::Bounds(_))
        ));
    }

    #[test]
    fn witnesses() {
        let primes = build_prime_set(20_000).unwrap();
        let spiro = SpiroSet::with_table(HParams::default(), 1 << 16);
        assert_eq!(
            hn_witness(&primes, &spiro, 31, 10_000)
                .unwrap()
                .map(|w| w.k),
            Some(62)
        );
        assert_eq!(
            hn_witness(&primes, &spiro, 9, 10_000).unwrap().map(|w| w.k),
            Some(18)
        );
        assert_eq!(
            hn_witness(&primes, &spiro, 2, 2).unwrap().map(|w| w.k),
            Some(2)
        );
    }

    #[test]
    fn branches() {
        let cert = Certificate::build(1002, 2).unwrap();
        let zero = branch_replay(&cert, 0, 18).unwrap();
        assert_eq!(zero.free, vec![9]);
        assert!(zero.is_clean());
        let zero = branch_replay(&cert, 0, 1000).unwrap();
        assert!(zero.is_clean(), "{:?}", zero.failures);
        assert!(zero.free.starts_with(&[9, 25, 27, 49, 81, 121, 125]));
        zero.check_well_founded().unwrap();
        let one = branch_replay(&cert, 1, 1000).unwrap();
        assert!(one.is_clean());
        assert_eq!(one.range, (2, 1000));
        assert!(one.outcomes.iter().all(|o| o.value == Some(Q::one())));
    }
}

//! Library results against slow, independent reimplementations.

use std::collections::BTreeMap;

use adq::goldbach::{choose_q_mod4, choose_r_mod8, goldbach_pair, unbalanced_split};
use adq::multfunc::{check_equation, family, EquationForm, FamilyKind, MultiplicativeFn};
use adq::rational::{q, q_frac, Q};
use adq::sieve::{build_prime_set, factorize};
use adq::solver::{classify, forced_values, ForcedValue};
use adq::spiro::{HParams, SpiroSet};

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponent caps transcribed row by row from the prime-power table.
fn table_cap(p: u64) -> u32 {
    match p {
        2 => 29,
        3 => 18,
        5 => 12,
        7 => 10,
        11 | 13 => 8,
        17 | 19 => 7,
        23..=31 => 6,
        37..=61 => 5,
        67..=173 => 4,
        179..=997 => 3,
        _ => 1,
    }
}

fn oracle_in_h(n: u64) -> bool {
    trial_factor(n).iter().all(|&(p, e)| e <= table_cap(p))
}

#[test]
fn prime_counts_match_trial_division() {
    let primes = build_prime_set(1_000_000).unwrap();
    assert_eq!(primes.count(), 78_498);
    let small = build_prime_set(100_000).unwrap();
    let brute = (0..=100_000).filter(|&n| trial_prime(n)).count() as u64;
    assert_eq!(small.count(), brute);
    for n in 0..=100_000 {
        assert_eq!(small.contains(n), trial_prime(n), "n = {n}");
    }
    for n in (999_000..1_000_000).step_by(7) {
        assert_eq!(primes.contains(n), trial_prime(n), "n = {n}");
    }
}

#[test]
fn factorization_matches_trial_division() {
    for n in (1..50_000).chain([1_018_081, 999_999_937, 4_294_967_297, 600_851_475_143]) {
        assert_eq!(
            factorize(n).unwrap().factors(),
            &trial_factor(n)[..],
            "n = {n}"
        );
    }
}

#[test]
fn goldbach_pairs_match_brute_force() {
    let primes = build_prime_set(10_000).unwrap();
    for n in (4..=10_000).step_by(2) {
        let p = (2..=n / 2)
            .find(|&p| trial_prime(p) && trial_prime(n - p))
            .unwrap();
        let pair = goldbach_pair(&primes, n).unwrap();
        assert_eq!((pair.p, pair.q), (p, n - p), "n = {n}");
    }
}

#[test]
fn unbalanced_split_matches_brute_force() {
    let primes = build_prime_set(4_002).unwrap();
    for m in 2..=2_000u64 {
        let total = 2 * m + 2;
        let brute = (2..m + 1)
            .find(|&p| trial_prime(p) && trial_prime(total - p))
            .map(|p| (p, total - p));
        assert_eq!(unbalanced_split(&primes, m).unwrap(), brute, "m = {m}");
    }
    assert_eq!(unbalanced_split(&primes, 27).unwrap(), Some((3, 53)));
    assert_eq!(unbalanced_split(&primes, 9).unwrap(), Some((3, 17)));
    assert_eq!(unbalanced_split(&primes, 2).unwrap(), None);
}

#[test]
fn residue_choices_hit_their_classes() {
    for m in (1..20_000u64).step_by(2) {
        let q = choose_q_mod4(m).unwrap();
        assert!([3, 5].contains(&q) && (m + q) % 4 == 0);
        let r = choose_r_mod8(m).unwrap();
        assert!([3, 5, 7, 17].contains(&r) && (m + r) % 8 == 6);
    }
    assert_eq!(choose_r_mod8(17).unwrap(), 5);
    assert_eq!(choose_r_mod8(13).unwrap(), 17);
}

#[test]
fn caps_match_the_prime_power_table() {
    let params = HParams::default();
    for p in (2..5_000).filter(|&p| trial_prime(p)) {
        assert_eq!(params.h_cap(p).unwrap(), table_cap(p), "p = {p}");
    }
}

#[test]
fn smallest_non_member_by_exhaustion() {
    let h = SpiroSet::new(HParams::default());
    let first = (1..=2_000_000u64).find(|&n| !oracle_in_h(n));
    assert_eq!(first, Some(1_018_081));
    assert_eq!(h.smallest_non_member(2_000_000), first);
    for n in (1_018_000..1_019_000).chain([
        1 << 29,
        1 << 30,
        3u64.pow(18),
        3u64.pow(19),
        997 * 997 * 997 * 997,
    ]) {
        assert_eq!(h.in_h(n), oracle_in_h(n), "n = {n}");
    }
}

#[test]
fn hn_streams_match_the_definition() {
    let h = SpiroSet::new(HParams::default());
    for n in 1..=40u64 {
        let brute: Vec<u64> = (1..=3_000u64)
            .filter(|&k| {
                if n % 2 == 0 {
                    k % n == 0 && gcd(k / n, n) == 1 && oracle_in_h(k / n)
                } else {
                    k % (2 * n) == 0 && gcd(k / (2 * n), n) == 1 && oracle_in_h(k / n)
                }
            })
            .collect();
        assert_eq!(h.hn_stream(n, 3_000).collect::<Vec<_>>(), brute, "n = {n}");
        let d = h.hn_density(n, 3_000).unwrap();
        assert_eq!(d.as_q(), q_frac(brute.len() as i64, 3_000));
    }
}

#[test]
fn find_q_matches_brute_force() {
    let h = SpiroSet::new(HParams::default());
    for m in (4..3_000).chain(1_018_000..1_018_100) {
        let brute = (3..m).find(|&q| trial_prime(q) && q % 2 == 1 && oracle_in_h(m + q));
        assert_eq!(h.find_q_for_m(m).unwrap(), brute, "m = {m}");
    }
}

#[test]
fn family_values_match_factorwise_evaluation() {
    let mut assigned = BTreeMap::new();
    assigned.insert((3, 2), q_frac(5, 7));
    assigned.insert((3, 3), q(-2));
    assigned.insert((7, 2), q(4));
    let f = family(FamilyKind::OddSquarefulIndicator, &assigned).unwrap();
    for n in 1..5_000u64 {
        let fac = trial_factor(n);
        let want = if n == 1 {
            q(1)
        } else if n % 2 == 0 || fac.iter().any(|&(_, e)| e == 1) {
            q(0)
        } else {
            fac.iter()
                .map(|&(p, e)| assigned.get(&(p, e)).cloned().unwrap_or_else(|| q(1)))
                .product::<Q>()
        };
        assert_eq!(f.eval(n), want, "n = {n}");
        assert_eq!(MultiplicativeFn::identity().eval(n), q(n as i64));
        assert_eq!(MultiplicativeFn::one().eval(n), q(1));
    }
}

#[test]
fn violation_counts_match_direct_enumeration() {
    // n -> n^2 is multiplicative but breaks the equation almost everywhere.
    let square = MultiplicativeFn::from_rule("square", |p, e| q((p as i64).pow(2 * e)));
    let limit = 300;
    let ps: Vec<i64> = (2..=limit).filter(|&p| trial_prime(p as u64)).collect();
    let mut shifted = 0;
    for (i, &p) in ps.iter().enumerate() {
        for &r in &ps[i..] {
            if (p + r - 2).pow(2) != p * p + r * r - 4 {
                shifted += 1;
            }
        }
    }
    assert_eq!(
        check_equation(&square, EquationForm::Shifted, limit as u64).len(),
        shifted
    );
    let ms: Vec<i64> = ps.iter().map(|p| p - 1).collect();
    let mut pm1 = 0;
    for (i, &a) in ms.iter().enumerate() {
        for &b in &ms[i..] {
            if (a + b).pow(2) != a * a + b * b {
                pm1 += 1;
            }
        }
    }
    assert_eq!(
        check_equation(&square, EquationForm::Primesm1, limit as u64).len(),
        pm1
    );
}

#[test]
fn forced_values_reproduce_the_small_table() {
    let c = classify(EquationForm::Shifted, 17).unwrap();
    let f2: Vec<Q> = c.families.iter().map(|f| f.f2().unwrap().clone()).collect();
    assert_eq!(f2, vec![q(0), q(1), q(2)]);
    for n in 3..=18u64 {
        let zero = &forced_values(&c.families[0], 18)[n as usize - 1].1;
        let one = &forced_values(&c.families[1], 18)[n as usize - 1].1;
        let ident = &forced_values(&c.families[2], 18)[n as usize - 1].1;
        let want_zero = if n == 9 {
            ForcedValue::Free
        } else {
            ForcedValue::Value(q(0))
        };
        assert_eq!(zero, &want_zero, "n = {n}");
        assert_eq!(one, &ForcedValue::Value(q(1)), "n = {n}");
        assert_eq!(ident, &ForcedValue::Value(q(n as i64)), "n = {n}");
    }
}

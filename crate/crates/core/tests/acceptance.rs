//! One line per acceptance criterion. Runs as a plain binary so the lines
//! print in order; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use adq::goldbach::{choose_q_mod4, choose_r_mod8, scan_goldbach};
use adq::multfunc::{check_equation, family, EquationForm, FamilyKind, MultiplicativeFn};
use adq::rational::{q, q_frac, Q};
use adq::replay::{branch_replay, hn_witness, lemma4_replay, Case, Certificate};
use adq::sieve::{build_prime_set, is_prime_u64};
use adq::solver::{classify, forced_values, ForcedValue, Sym};
use adq::spiro::{HParams, SpiroSet};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_families() -> Check {
    let t = Instant::now();
    let c = classify(EquationForm::Shifted, 17).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let f2: Vec<Q> = c.families.iter().filter_map(|f| f.f2().cloned()).collect();
    ensure(f2 == [q(0), q(1), q(2)], || format!("f(2) values {f2:?}"))?;
    let free: Vec<Sym> = c.families[0].free.iter().copied().collect();
    ensure(free == [Sym::new(3, 2)], || {
        format!("f(2)=0 family free {free:?}")
    })?;
    ensure(c.families[1..].iter().all(|f| f.free.is_empty()), || {
        "unexpected free symbols".into()
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "3 families, f(2) in {{0, 1, 2}}, f(9) free, {elapsed:.2?}"
    ))
}

fn forced_table() -> Check {
    let c = classify(EquationForm::Shifted, 17).map_err(|e| e.to_string())?;
    let tables: Vec<_> = c.families.iter().map(|f| forced_values(f, 18)).collect();
    for n in 3..=18usize {
        let want = [
            if n == 9 {
                ForcedValue::Free
            } else {
                ForcedValue::Value(q(0))
            },
            ForcedValue::Value(q(1)),
            ForcedValue::Value(q(n as i64)),
        ];
        for (t, w) in tables.iter().zip(&want) {
            ensure(t[n - 1].1 == *w, || {
                format!("n = {n}: got {}, want {w}", t[n - 1].1)
            })?;
        }
    }
    Ok("3 <= n <= 18 gives n / 1 / 0 except f(9) free".into())
}

fn primesm1_identity() -> Check {
    let c = classify(EquationForm::Primesm1, 17).map_err(|e| e.to_string())?;
    ensure(c.families.len() == 1, || {
        format!("{} families", c.families.len())
    })?;
    let fam = &c.families[0];
    ensure(fam.f2() == Some(&q(2)), || "f(2) != 2".into())?;
    ensure(
        fam.assignments
            .iter()
            .all(|(s, v)| *v == q(s.value() as i64)),
        || "not the identity".into(),
    )?;
    Ok(format!(
        "1 family, {} values all equal to the identity",
        fam.assignments.len()
    ))
}

fn goldbach_desk_scan() -> Check {
    let hi = 20_000_000;
    let primes = build_prime_set(hi).map_err(|e| e.to_string())?;
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let t = Instant::now();
    let a = scan_goldbach(&primes, 4, hi, jobs).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let b = scan_goldbach(&primes, 4, hi, jobs.max(2) + 1).map_err(|e| e.to_string())?;
    ensure(a.is_clean(), || format!("exceptions {:?}", a.exceptions))?;
    ensure(a == b, || "result depends on jobs".into())?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} even numbers, 0 exceptions, {elapsed:.2?} with {jobs} jobs, same with {}",
        a.scanned,
        jobs.max(2) + 1
    ))
}

fn random_odd_family(rng: &mut ChaCha8Rng) -> MultiplicativeFn {
    let odd = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut map = BTreeMap::new();
    while map.len() < 20 {
        let p = odd[rng.random_range(0..odd.len())];
        let e = rng.random_range(2..6);
        map.insert(
            (p, e),
            q_frac(rng.random_range(-100..100), rng.random_range(1..30)),
        );
    }
    family(FamilyKind::OddSquarefulIndicator, &map).expect("valid assignments")
}

fn family_verification() -> Check {
    let limit = 10_000;
    let mut checks = vec![
        (MultiplicativeFn::identity(), EquationForm::Shifted),
        (MultiplicativeFn::identity(), EquationForm::Primesm1),
        (MultiplicativeFn::one(), EquationForm::Shifted),
        (
            family(FamilyKind::OddSquarefulIndicator, &BTreeMap::new()).unwrap(),
            EquationForm::Shifted,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        checks.push((random_odd_family(&mut rng), EquationForm::Shifted));
    }
    for (f, form) in &checks {
        let v = check_equation(f, *form, limit);
        ensure(v.is_empty(), || {
            format!(
                "{} {form}: {} violations, first {}",
                f.name(),
                v.len(),
                v[0]
            )
        })?;
    }
    Ok(format!(
        "{} family/form checks over pairs <= {limit}, 0 violations",
        checks.len()
    ))
}

fn induction_replay() -> Check {
    let big_n = 100_000;
    let cert = Certificate::build(big_n, 0).map_err(|e| e.to_string())?;
    let r = lemma4_replay(&cert, big_n).map_err(|e| e.to_string())?;
    ensure(r.is_clean(), || {
        format!("{} failures, first {:?}", r.failures.len(), r.failures[0])
    })?;
    ensure(r.established_count() as u64 == big_n - 3, || {
        format!("{} established", r.established_count())
    })?;
    ensure(
        r.outcomes.iter().all(|o| o.value == Some(q(o.n as i64))),
        || "value differs from n".into(),
    )?;
    r.check_well_founded()?;
    let cases = [
        Case::EvenGoldbach,
        Case::OddPrimeQ35,
        Case::CoprimeSplit,
        Case::PrimePowerSplit,
    ];
    ensure(cases.iter().all(|&c| r.counter(c) > 0), || {
        format!("counters {:?}", r.counters)
    })?;
    let counts: Vec<String> = cases
        .iter()
        .map(|&c| format!("{c} {}", r.counter(c)))
        .collect();
    Ok(format!(
        "f(n) = n for n <= {}, 0 failures; {}",
        big_n - 2,
        counts.join(", ")
    ))
}

fn spiro_set() -> Check {
    let h = SpiroSet::new(HParams::default());
    let smallest = h.smallest_non_member(2_000_000);
    ensure(smallest == Some(1_018_081), || {
        format!("smallest non-member {smallest:?}")
    })?;
    let rows: [(&[u64], u32); 11] = [
        (&[2], 29),
        (&[3], 18),
        (&[5], 12),
        (&[7], 10),
        (&[11, 13], 8),
        (&[17, 19], 7),
        (&[23, 29, 31], 6),
        (&[37, 61], 5),
        (&[67, 173], 4),
        (&[179, 997], 3),
        (&[1009, 1013, 7919], 1),
    ];
    for (ps, cap) in rows {
        for &p in ps {
            let got = h.h_cap(p).map_err(|e| e.to_string())?;
            ensure(got == cap, || format!("cap({p}) = {got}, want {cap}"))?;
        }
    }
    for p in (37..1000).filter(|&p| is_prime_u64(p)) {
        let want = match p {
            37..=61 => 5,
            67..=173 => 4,
            _ => 3,
        };
        ensure(h.h_cap(p) == Ok(want), || format!("cap({p})"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    while sampled < 10_000 {
        let n = rng.random_range(1..10_000_000_000u64);
        if !h.in_h(n) {
            continue;
        }
        sampled += 1;
        let f = h.factorize(n);
        let mut divisors = vec![1u64];
        for &(p, e) in f.factors() {
            let prev = divisors.clone();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                divisors.extend(prev.iter().map(|d| d * pk));
            }
        }
        ensure(divisors.iter().all(|&d| h.in_h(d)), || {
            format!("{n} has a divisor outside H")
        })?;
    }
    Ok(
        "smallest non-member 1018081, every cap row matches, 10^4 sampled members divisor-closed"
            .into(),
    )
}

fn witness_searches() -> Check {
    let h = SpiroSet::new(HParams::default());
    for m in 10_000..=11_000 {
        ensure(
            h.find_q_for_m(m).map_err(|e| e.to_string())?.is_some(),
            || format!("no q for m = {m}"),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1_000 {
        let m = rng.random_range(1_000_000..=10_000_000);
        ensure(
            h.find_q_for_m(m).map_err(|e| e.to_string())?.is_some(),
            || format!("no q for m = {m}"),
        )?;
    }
    let primes = build_prime_set(100_002).map_err(|e| e.to_string())?;
    for n in 2..=1_000 {
        let w = hn_witness(&primes, &h, n, 100_000).map_err(|e| e.to_string())?;
        ensure(w.is_some(), || format!("no H_{n} witness"))?;
    }
    Ok("find_q on [10^4, 10^4+10^3] and 10^3 random m in [10^6, 10^7]; hn_witness for 2 <= n <= 10^3".into())
}

fn branch_replays() -> Check {
    let limit = 10_000;
    let cert = Certificate::build(limit + 2, 0).map_err(|e| e.to_string())?;
    let one = branch_replay(&cert, 1, limit).map_err(|e| e.to_string())?;
    ensure(
        one.is_clean() && one.established_count() as u64 == limit - 1,
        || "constant-1 replay incomplete".into(),
    )?;
    ensure(one.outcomes.iter().all(|o| o.value == Some(q(1))), || {
        "a value differs from 1".into()
    })?;
    let zero = branch_replay(&cert, 0, limit).map_err(|e| e.to_string())?;
    ensure(zero.is_clean(), || format!("{:?}", zero.failures.first()))?;
    for p in cert.primes().primes_up_to(limit) {
        let v = zero.outcome(p).and_then(|o| o.value.clone());
        ensure(v == Some(q(0)), || format!("f({p}) not forced to 0"))?;
    }
    for n in [9, 25, 27] {
        ensure(zero.free.contains(&n), || format!("f({n}) not free"))?;
    }
    Ok(format!("f(2)=1: {} values equal 1; f(2)=0: all primes <= {limit} forced 0, {} free incl. 9, 25, 27", one.established_count(), zero.free.len()))
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f = random_odd_family(&mut rng);
    let fs = [MultiplicativeFn::identity(), MultiplicativeFn::one(), f];
    let mut pairs = 0;
    while pairs < 10_000 {
        let a = rng.random_range(1..1_000_000u64);
        let b = rng.random_range(1..1_000_000u64);
        if a.gcd(&b) != 1 {
            continue;
        }
        pairs += 1;
        for f in &fs {
            ensure(f.eval(a * b) == f.eval(a) * f.eval(b), || {
                format!("{} at ({a}, {b})", f.name())
            })?;
        }
    }
    let params = HParams::default();
    for p in (2..1000u64).filter(|&p| is_prime_u64(p)) {
        let cap = params.h_cap(p).map_err(|e| e.to_string())?;
        ensure(
            p.pow(cap) <= 1_000_000_000 && p.pow(cap + 1) > 1_000_000_000,
            || format!("cap({p})"),
        )?;
    }
    for m in (1..1_000_000u64).step_by(2) {
        let qq = choose_q_mod4(m).map_err(|e| e.to_string())?;
        let r = choose_r_mod8(m).map_err(|e| e.to_string())?;
        ensure((m + qq) % 4 == 0 && (m + r) % 8 == 6, || {
            format!("residue choice at {m}")
        })?;
    }
    let h = SpiroSet::new(params);
    let mut streamed = 0;
    for n in 1..=300 {
        for k in h.hn_stream(n, 100_000) {
            streamed += 1;
            ensure(k % 2 == 0, || format!("{k} in H_{n} is odd"))?;
        }
    }
    Ok(format!("10^4 coprime pairs, caps for p < 1000, residues for odd m < 10^6, {streamed} H_n members even"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("trichotomy rediscovery", three_families),
        ("forced table", forced_table),
        ("uniqueness on PRIMES-1", primesm1_identity),
        ("Goldbach desk scan", goldbach_desk_scan),
        ("family verification", family_verification),
        ("Goldbach induction replay", induction_replay),
        ("Spiro set", spiro_set),
        ("witness searches", witness_searches),
        ("branch replays", branch_replays),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

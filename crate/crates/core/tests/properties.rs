use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;

use adq::goldbach::{choose_q_mod4, choose_r_mod8, scan_goldbach};
use adq::multfunc::{check_equation, family, EquationForm, FamilyKind, MultiplicativeFn};
use adq::rational::{format_q, parse_q, q_frac};
use adq::sieve::{build_prime_set, factorize, is_prime_u64, PrimeSet};
use adq::spiro::{HParams, SpiroSet};

fn primes() -> &'static PrimeSet {
    static P: OnceLock<PrimeSet> = OnceLock::new();
    P.get_or_init(|| build_prime_set(400_000).unwrap())
}

fn h() -> &'static SpiroSet {
    static H: OnceLock<SpiroSet> = OnceLock::new();
    H.get_or_init(|| SpiroSet::new(HParams::default()))
}

fn odd_prime_power() -> impl Strategy<Value = (u64, u32)> {
    (
        prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23]),
        2u32..5,
    )
}

fn assignments() -> impl Strategy<Value = BTreeMap<(u64, u32), adq::rational::Q>> {
    prop::collection::btree_map(
        odd_prime_power(),
        (-50i64..50, 1i64..20).prop_map(|(a, b)| q_frac(a, b)),
        0..8,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn families_are_multiplicative(a in 1u64..200_000, b in 1u64..200_000, assigned in assignments()) {
        prop_assume!(a.gcd(&b) == 1);
        let fs = [
            MultiplicativeFn::identity(),
            MultiplicativeFn::one(),
            family(FamilyKind::OddSquarefulIndicator, &assigned).unwrap(),
        ];
        for f in &fs {
            prop_assert_eq!(f.eval(a * b), f.eval(a) * f.eval(b));
        }
    }

    #[test]
    fn odd_squareful_families_satisfy_the_shifted_form(assigned in assignments()) {
        let f = family(FamilyKind::OddSquarefulIndicator, &assigned).unwrap();
        prop_assert!(check_equation(&f, EquationForm::Shifted, 300).is_empty());
    }

    #[test]
    fn residue_choices_are_total_on_odd_inputs(k in 0u64..500_000) {
        let m = 2 * k + 1;
        let q = choose_q_mod4(m).unwrap();
        prop_assert_eq!((m + q) % 4, 0);
        let r = choose_r_mod8(m).unwrap();
        prop_assert_eq!((m + r) % 8, 6);
        prop_assert!(choose_q_mod4(m + 1).is_err() && choose_r_mod8(m + 1).is_err());
    }

    #[test]
    fn factorizations_multiply_back(n in 1u64..1_000_000_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.value(), Some(n));
        for &(p, e) in f.factors() {
            prop_assert!(e >= 1 && is_prime_u64(p));
        }
    }

    #[test]
    fn h_is_divisor_closed(n in 1u64..50_000_000) {
        prop_assume!(h().in_h(n));
        let f = h().factorize(n);
        // every divisor p^i * rest is covered by lowering one exponent at a time
        for &(p, _) in f.factors() {
            prop_assert!(h().in_h(n / p));
        }
    }

    #[test]
    fn hn_members_are_even_and_well_formed(n in 1u64..500, limit in 1u64..20_000) {
        for k in h().hn_stream(n, limit) {
            prop_assert_eq!(k % 2, 0);
            let m = if n % 2 == 0 { k / n } else { k / (2 * n) };
            prop_assert_eq!(m.gcd(&n), 1);
            let base = if n % 2 == 0 { m } else { 2 * m };
            prop_assert!(h().in_h(base));
        }
    }

    #[test]
    fn found_q_is_minimal_and_valid(m in 4u64..3_000_000) {
        let q = h().find_q_for_m(m).unwrap().expect("a witness exists at this size");
        prop_assert!(q % 2 == 1 && is_prime_u64(q) && q < m && h().in_h(m + q));
        for smaller in (3..q).step_by(2).filter(|&s| is_prime_u64(s)) {
            prop_assert!(!h().in_h(m + smaller));
        }
    }

    #[test]
    fn scans_do_not_depend_on_partitioning(a in 2u64..100_000, span in 0u64..50_000, jobs in 1usize..9) {
        let lo = 2 * a;
        let hi = lo + 2 * span;
        let serial = scan_goldbach(primes(), lo, hi, 1).unwrap();
        prop_assert_eq!(scan_goldbach(primes(), lo, hi, jobs).unwrap(), serial);
    }

    #[test]
    fn rationals_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let v = q_frac(n, d);
        prop_assert_eq!(parse_q(&format_q(&v)).unwrap(), v);
    }
}

#[test]
fn caps_straddle_the_bound_for_small_primes() {
    let params = HParams::default();
    for p in (2..1000u64).filter(|&p| is_prime_u64(p)) {
        let cap = params.h_cap(p).unwrap();
        assert!(p.pow(cap) <= 1_000_000_000, "p = {p}");
        assert!(
            p.checked_pow(cap + 1).is_none_or(|v| v > 1_000_000_000),
            "p = {p}"
        );
    }
}

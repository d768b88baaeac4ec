//! Multiplicative functions with exact-rational values, the three solution
//! families, and checkers for both forms of the functional equation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, format_q, parse_q, Q};
use crate::sieve::{build_prime_set, factorize, Factorization, Factorizer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultFnError {
    #[error("{0}")]
    Domain(String),
    #[error("invalid family config: {0}")]
    Config(String),
}

/// Which functional equation to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationForm {
    /// `f(p+q-2) = f(p) + f(q) - f(2)` over primes.
    Shifted,
    /// `f(a+b) = f(a) + f(b)` over `PRIMES - 1`.
    Primesm1,
}

impl fmt::Display for EquationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationForm::Shifted => "shifted",
            EquationForm::Primesm1 => "primesm1",
        })
    }
}

impl std::str::FromStr for EquationForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "shifted" => Ok(EquationForm::Shifted),
            "primesm1" => Ok(EquationForm::Primesm1),
            other => Err(format!(
                "unknown form {other:?} (expected shifted|primesm1)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Identity,
    One,
    OddSquarefulIndicator,
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identity" => Ok(FamilyKind::Identity),
            "one" => Ok(FamilyKind::One),
            "odd-squareful" | "odd_squareful" | "odd_squareful_indicator" => {
                Ok(FamilyKind::OddSquarefulIndicator)
            }
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

type RuleFn = dyn Fn(u64, u32) -> Q + Send + Sync;

#[derive(Clone)]
enum Rule {
    Identity,
    One,
    OddSquareful(BTreeMap<(u64, u32), Q>),
    Custom(Arc<RuleFn>),
}

/// A multiplicative function given by its values on prime powers.
#[derive(Clone)]
pub struct MultiplicativeFn {
    name: String,
    rule: Rule,
}

impl fmt::Debug for MultiplicativeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFn")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl MultiplicativeFn {
    /// Arbitrary prime-power rule. The rule is only ever called with a prime
    /// `p` and `e >= 1`.
    pub fn from_rule<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Q + Send + Sync + 'static,
    {
        MultiplicativeFn {
            name: name.into(),
            rule: Rule::Custom(Arc::new(rule)),
        }
    }

    pub fn identity() -> Self {
        MultiplicativeFn {
            name: "identity".into(),
            rule: Rule::Identity,
        }
    }

    pub fn one() -> Self {
        MultiplicativeFn {
            name: "one".into(),
            rule: Rule::One,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `f(p^e)`.
    pub fn prime_power(&self, p: u64, e: u32) -> Q {
        match &self.rule {
            Rule::Identity => Q::from_integer(num_bigint::BigInt::from(p).pow(e)),
            Rule::One => Q::one(),
            Rule::OddSquareful(assigned) => {
                if p == 2 || e == 1 {
                    Q::zero()
                } else {
                    assigned.get(&(p, e)).cloned().unwrap_or_else(Q::one)
                }
            }
            Rule::Custom(rule) => rule(p, e),
        }
    }

    pub fn eval_factored(&self, n: &Factorization) -> Q {
        let mut acc = Q::one();
        for &(p, e) in n.factors() {
            let v = self.prime_power(p, e);
            if v.is_zero() {
                return v;
            }
            acc *= v;
        }
        acc
    }

    /// `f(n)` for `n >= 1`; `f(1) = 1`.
    pub fn eval(&self, n: u64) -> Q {
        assert!(
            n >= 1,
            "multiplicative functions are defined on positive integers"
        );
        self.eval_factored(&factorize(n).expect("n >= 1"))
    }

    /// `[f(0)?, f(1), ..., f(bound)]`; index 0 holds zero as a placeholder.
    pub fn table(&self, bound: u64) -> Vec<Q> {
        let fz = Factorizer::new(bound.max(2) as u32);
        (0..=bound)
            .into_par_iter()
            .map(|n| {
                if n == 0 {
                    Q::zero()
                } else {
                    self.eval_factored(&fz.factorize(n).unwrap())
                }
            })
            .collect()
    }
}

/// Every prime exponent at least 2. Defined for `n >= 2`.
pub fn is_squareful(n: u64) -> Result<bool, MultFnError> {
    if n < 2 {
        return Err(MultFnError::Domain(format!(
            "is_squareful is defined for n >= 2, got {n}"
        )));
    }
    Ok(factorize(n).expect("n >= 2").is_squareful())
}

/// One of the three solution families. `assignments` only applies to the
/// odd-squareful indicator and must target odd primes with exponent >= 2.
pub fn family(
    kind: FamilyKind,
    assignments: &BTreeMap<(u64, u32), Q>,
) -> Result<MultiplicativeFn, MultFnError> {
    match kind {
        FamilyKind::Identity | FamilyKind::One if !assignments.is_empty() => Err(
            MultFnError::Domain(format!("{kind:?} family takes no assignments")),
        ),
        FamilyKind::Identity => Ok(MultiplicativeFn::identity()),
        FamilyKind::One => Ok(MultiplicativeFn::one()),
        FamilyKind::OddSquarefulIndicator => {
            for &(p, e) in assignments.keys() {
                if p == 2 || e < 2 {
                    return Err(MultFnError::Domain(format!(
                        "cannot assign f({p}^{e}): the value is forced to 0 at p = 2 or e = 1"
                    )));
                }
                if !crate::sieve::is_prime_u64(p) {
                    return Err(MultFnError::Domain(format!("{p} is not prime")));
                }
            }
            Ok(MultiplicativeFn {
                name: "odd-squareful".into(),
                rule: Rule::OddSquareful(assignments.clone()),
            })
        }
    }
}

/// JSON form: `{"kind": "...", "assignments": [[p, e, "num/den"], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub kind: FamilyKind,
    #[serde(default)]
    pub assignments: Vec<(u64, u32, String)>,
}

impl FamilyConfig {
    pub fn build(&self) -> Result<MultiplicativeFn, MultFnError> {
        let mut map = BTreeMap::new();
        for (p, e, v) in &self.assignments {
            let v = parse_q(v).map_err(MultFnError::Config)?;
            map.insert((*p, *e), v);
        }
        family(self.kind, &map)
    }
}

/// A pair at which the equation fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    /// Primes `p <= q` (shifted) or members `a <= b` of `PRIMES - 1`.
    pub a: u64,
    pub b: u64,
    #[serde(with = "rational")]
    pub lhs: Q,
    #[serde(with = "rational")]
    pub rhs: Q,
}

impl fmt::Display for ViolationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): {} != {}",
            self.a,
            self.b,
            format_q(&self.lhs),
            format_q(&self.rhs)
        )
    }
}

/// Every violation of `form` over pairs bounded by `limit`, sorted by pair.
///
/// Shifted: primes `p <= q <= limit`. Primesm1: `a <= b <= limit` with
/// `a + 1`, `b + 1` prime.
pub fn check_equation(
    f: &MultiplicativeFn,
    form: EquationForm,
    limit: u64,
) -> Vec<ViolationRecord> {
    let limit = limit.max(2);
    let primes = build_prime_set(limit + 1).expect("limit in range");
    let members: Vec<u64> = match form {
        EquationForm::Shifted => primes.primes_up_to(limit),
        EquationForm::Primesm1 => primes
            .iter()
            .map(|p| p - 1)
            .filter(|&a| a <= limit)
            .collect(),
    };
    let table = f.table(2 * limit);
    let shift = match form {
        EquationForm::Shifted => 2u64,
        EquationForm::Primesm1 => 0,
    };
    let f2 = &table[2];
    (0..members.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = members[i];
            let table = &table;
            members[i..].iter().filter_map(move |&b| {
                let lhs = &table[(a + b - shift) as usize];
                let mut rhs = &table[a as usize] + &table[b as usize];
                if shift == 2 {
                    rhs -= f2;
                }
                (*lhs != rhs).then(|| ViolationRecord {
                    a,
                    b,
                    lhs: lhs.clone(),
                    rhs,
                })
            })
        })
        .collect()
}

/// Result of checking that the `PRIMES - 1` equation implies the shifted one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftImplicationReport {
    pub limit: u64,
    pub premise_holds: bool,
    /// First failing pair of the premise, when it fails.
    pub premise_witness: Option<ViolationRecord>,
    /// `f(2) == 2`; only checked when the premise holds.
    pub f2_is_two: Option<bool>,
    /// Primes `p <= limit` with `f(p) != f(p-1) + 1`.
    pub prime_step_failures: Vec<u64>,
    pub shifted_violations: Vec<ViolationRecord>,
    pub conclusion_holds: Option<bool>,
}

pub fn check_shift_implication(f: &MultiplicativeFn, limit: u64) -> ShiftImplicationReport {
    let limit = limit.max(3);
    let premise = check_equation(f, EquationForm::Primesm1, limit);
    if let Some(first) = premise.into_iter().next() {
        return ShiftImplicationReport {
            limit,
            premise_holds: false,
            premise_witness: Some(first),
            f2_is_two: None,
            prime_step_failures: Vec::new(),
            shifted_violations: Vec::new(),
            conclusion_holds: None,
        };
    }
    let table = f.table(limit);
    let f2_is_two = table[2] == rational::q(2);
    let primes = build_prime_set(limit).expect("limit >= 3");
    let prime_step_failures: Vec<u64> = primes
        .iter()
        .filter(|&p| table[p as usize] != &table[p as usize - 1] + Q::one())
        .collect();
    let shifted_violations = check_equation(f, EquationForm::Shifted, limit);
    let conclusion = f2_is_two && prime_step_failures.is_empty() && shifted_violations.is_empty();
    ShiftImplicationReport {
        limit,
        premise_holds: true,
        premise_witness: None,
        f2_is_two: Some(f2_is_two),
        prime_step_failures,
        shifted_violations,
        conclusion_holds: Some(conclusion),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn indicator() -> MultiplicativeFn {
        family(FamilyKind::OddSquarefulIndicator, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(MultiplicativeFn::identity().eval(12), q(12));
        assert_eq!(MultiplicativeFn::identity().eval(343), q(343));
        assert_eq!(MultiplicativeFn::identity().eval(1), q(1));
        assert_eq!(indicator().eval(18), q(0));
        assert_eq!(indicator().eval(675), q(1));
        assert_eq!(indicator().eval(9), q(1));
        assert_eq!(indicator().eval(1), q(1));
    }

    #[test]
    fn assignments() {
        let mut a = BTreeMap::new();
        a.insert((3, 2), q(5));
        let f = family(FamilyKind::OddSquarefulIndicator, &a).unwrap();
        assert_eq!(f.eval(9), q(5));
        assert_eq!(f.eval(45), q(0));
        assert_eq!(f.eval(9 * 25), q(5));

        let mut bad = BTreeMap::new();
        bad.insert((2, 2), q(1));
        assert!(family(FamilyKind::OddSquarefulIndicator, &bad).is_err());
        let mut bad = BTreeMap::new();
        bad.insert((3, 1), q(1));
        assert!(family(FamilyKind::OddSquarefulIndicator, &bad).is_err());
        assert!(family(FamilyKind::Identity, &a).is_err());
    }

    #[test]
    fn squareful() {
        assert_eq!(is_squareful(9), Ok(true));
        assert_eq!(is_squareful(12), Ok(false));
        assert_eq!(is_squareful(8), Ok(true));
        assert!(is_squareful(1).is_err());
    }

    #[test]
    fn equation_examples() {
        assert!(
            check_equation(&MultiplicativeFn::identity(), EquationForm::Shifted, 1000).is_empty()
        );
        assert!(
            check_equation(&MultiplicativeFn::identity(), EquationForm::Primesm1, 1000).is_empty()
        );
        assert!(check_equation(&indicator(), EquationForm::Shifted, 1000).is_empty());
        let v = check_equation(&MultiplicativeFn::one(), EquationForm::Primesm1, 1000);
        let members = build_prime_set(1001)
            .unwrap()
            .iter()
            .filter(|p| p - 1 <= 1000)
            .count();
        assert_eq!(v.len(), members * (members + 1) / 2);
        assert_eq!(
            (v[0].a, v[0].b, v[0].lhs.clone(), v[0].rhs.clone()),
            (1, 1, q(1), q(2))
        );
    }

    #[test]
    fn shift_implication() {
        let r = check_shift_implication(&MultiplicativeFn::identity(), 500);
        assert!(r.premise_holds);
        assert_eq!(r.conclusion_holds, Some(true));

        for f in [MultiplicativeFn::one(), indicator()] {
            let r = check_shift_implication(&f, 500);
            assert!(!r.premise_holds);
            let w = r.premise_witness.unwrap();
            assert_eq!((w.a, w.b), (1, 1));
        }
    }

    #[test]
    fn config_json() {
        let cfg: FamilyConfig = serde_json::from_str(
            r#"{"kind": "odd_squareful_indicator", "assignments": [[3, 2, "7/2"]]}"#,
        )
        .unwrap();
        let f = cfg.build().unwrap();
        assert_eq!(f.eval(9), q_frac(7, 2));
        let bad: FamilyConfig = serde_json::from_str(
            r#"{"kind": "odd_squareful_indicator", "assignments": [[3, 2, "1/0"]]}"#,
        )
        .unwrap();
        assert!(matches!(bad.build(), Err(MultFnError::Config(_))));
    }
}

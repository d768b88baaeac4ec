//! Sparse multivariate polynomials over prime-power symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::UPoly;
use crate::rational::{format_q, Q};
use crate::sieve::Factorization;

/// The unknown `f(p^e)`. Ordered by `p`, then `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub p: u64,
    pub e: u32,
}

impl Sym {
    pub fn new(p: u64, e: u32) -> Self {
        Sym { p, e }
    }

    /// `p^e`; used to rank symbols by the size of their argument.
    pub fn value(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// `"p^e"`
    pub fn key(&self) -> String {
        format!("{}^{}", self.p, self.e)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "f({})", self.p)
        } else {
            write!(f, "f({}^{})", self.p, self.e)
        }
    }
}

impl FromStr for Sym {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, e) = s
            .split_once('^')
            .ok_or_else(|| format!("expected p^e, got {s:?}"))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| format!("bad prime in {s:?}"))?;
        let e = e
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent in {s:?}"))?;
        if e == 0 || !crate::sieve::is_prime_u64(p) {
            return Err(format!("{s:?} is not a prime power symbol"));
        }
        Ok(Sym { p, e })
    }
}

impl Serialize for Sym {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for Sym {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Sorted `(symbol, power)` pairs; the empty monomial is `1`.
pub type Monomial = Vec<(Sym, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<Sym, u32> = a.iter().copied().collect();
    for &(s, k) in b {
        *out.entry(s).or_insert(0) += k;
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn sym(s: Sym) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(s, 1)], Q::one());
        p
    }

    /// `f(n)` expanded by multiplicativity: the product of the prime-power
    /// symbols of `n`, or `1` for `n = 1`.
    pub fn of_factorization(n: &Factorization) -> Self {
        let mono: Monomial = n
            .factors()
            .iter()
            .map(|&(p, e)| (Sym::new(p, e), 1))
            .collect();
        let mut out = Poly::zero();
        out.add_term(mono, Q::one());
        out
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    fn add_term(&mut self, mono: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn syms(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.iter().find(|(t, _)| *t == s).map(|&(_, k)| k))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, k)| k).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest power of any single symbol.
    pub fn max_var_degree(&self) -> u32 {
        self.syms()
            .into_iter()
            .map(|s| self.degree_in(s))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(mono_mul(ma, mb), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(Q::one()), |acc, _| acc.mul(self))
    }

    /// Partial evaluation. A symbol valued 0 annihilates every monomial it
    /// appears in, whatever the other factors are.
    pub fn substitute(&self, values: &BTreeMap<Sym, Q>) -> Poly {
        let mut out = Poly::zero();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::with_capacity(m.len());
            for &(s, k) in m {
                match values.get(&s) {
                    Some(v) if v.is_zero() => continue 'terms,
                    Some(v) => coeff *= num_traits::pow(v.clone(), k as usize),
                    None => rest.push((s, k)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Replaces `s` by the polynomial `expr`.
    pub fn substitute_poly(&self, s: Sym, expr: &Poly) -> Poly {
        if !self.terms.keys().any(|m| m.iter().any(|(t, _)| *t == s)) {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.iter().find(|(t, _)| *t == s).map_or(0, |&(_, k)| k);
            let rest: Monomial = m.iter().copied().filter(|(t, _)| *t != s).collect();
            let mut term = Poly::zero();
            term.add_term(rest, c.clone());
            if k > 0 {
                term = term.mul(&expr.pow(k));
            }
            out = out.add(&term);
        }
        out
    }

    /// If `s` occurs only in the monomial `s^1` with a constant coefficient,
    /// returns the expression `s = rhs` that makes this polynomial vanish.
    pub fn solve_linear(&self, s: Sym) -> Option<Poly> {
        let key: Monomial = vec![(s, 1)];
        let c = self.terms.get(&key)?;
        let elsewhere = self
            .terms
            .keys()
            .any(|m| m != &key && m.iter().any(|(t, _)| *t == s));
        if elsewhere {
            return None;
        }
        let mut rest = self.clone();
        rest.terms.remove(&key);
        Some(rest.scale(&(-Q::one() / c)))
    }

    /// Affine form `sum c_i s_i + c_0` when the total degree is at most 1.
    pub fn as_affine(&self) -> Option<(BTreeMap<Sym, Q>, Q)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut lin = BTreeMap::new();
        let mut c0 = Q::zero();
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => c0 = c.clone(),
                [(s, 1)] => {
                    lin.insert(*s, c.clone());
                }
                _ => return None,
            }
        }
        Some((lin, c0))
    }

    /// Univariate view in `s`, requiring that `s` is the only symbol.
    pub fn to_upoly(&self, s: Sym) -> Option<UPoly> {
        let mut coeffs = vec![Q::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => coeffs[0] += c,
                [(t, k)] if *t == s => coeffs[*k as usize] += c,
                _ => return None,
            }
        }
        Some(UPoly::new(coeffs))
    }

    /// Coefficients of powers of `y`, each a univariate polynomial in `x`.
    /// `None` if other symbols occur.
    pub fn to_bivariate(&self, x: Sym, y: Sym) -> Option<Vec<UPoly>> {
        let dy = self.degree_in(y) as usize;
        let dx = self.degree_in(x) as usize;
        let mut grid = vec![vec![Q::zero(); dx + 1]; dy + 1];
        for (m, c) in &self.terms {
            let (mut i, mut j) = (0usize, 0usize);
            for &(s, k) in m {
                if s == x {
                    i = k as usize;
                } else if s == y {
                    j = k as usize;
                } else {
                    return None;
                }
            }
            grid[j][i] += c;
        }
        Some(grid.into_iter().map(UPoly::new).collect())
    }

    /// Scales so the leading term (in monomial order) has coefficient 1,
    /// giving a canonical representative of the constraint `self = 0`.
    pub fn normalized(&self) -> Poly {
        match self.terms.iter().next_back() {
            None => Poly::zero(),
            Some((_, lc)) => self.scale(&(Q::one() / lc)),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest-degree terms first reads more naturally.
        let mut terms: Vec<(&Monomial, &Q)> = self.terms.iter().collect();
        let rank = |m: &Monomial| -> (u32, Vec<(u64, u32)>) {
            let mut v: Vec<(u64, u32)> = m.iter().map(|&(s, k)| (s.value(), k)).collect();
            v.sort_by(|x, y| y.cmp(x));
            (m.iter().map(|t| t.1).sum(), v)
        };
        terms.sort_by_key(|t| std::cmp::Reverse(rank(t.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format_q(&mag)
            };
            let body: Vec<String> = m
                .iter()
                .map(|&(s, k)| {
                    if k == 1 {
                        s.to_string()
                    } else {
                        format!("{s}^{k}")
                    }
                })
                .collect();
            if body.is_empty() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                f.write_str(&body.join("·"))?;
            } else {
                write!(f, "{coeff}·{}", body.join("·"))?;
            }
        }
        Ok(())
    }
}

/// Integer constant as a polynomial.
pub fn pconst(n: i64) -> Poly {
    Poly::constant(Q::from_integer(BigInt::from(n)))
}

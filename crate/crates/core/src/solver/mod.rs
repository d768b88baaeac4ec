//! Constraint solver that rediscovers the solution families of the shifted
//! prime equation from first principles.
//!
//! Each admissible prime pair contributes one polynomial constraint over the
//! unknowns `f(p^e)` ([`Sym`]); composite arguments are expanded by
//! multiplicativity, so `f(12)` becomes `f(2^2)·f(3)`. Solving proceeds by
//!
//! 1. propagation to a fixpoint: substitute known values (a symbol valued 0
//!    kills every monomial containing it), then row-reduce the constraints
//!    that have become affine and read off pinned symbols;
//! 2. triangular elimination of symbols that occur linearly with a constant
//!    coefficient, largest argument first;
//! 3. resultants of the residue in the two smallest base symbols, giving a
//!    univariate eliminant whose rational roots become branches;
//! 4. recursion on each branch, and verification of every finished branch
//!    against the original constraints.
//!
//! Only rational roots are followed. Eliminant factors without rational roots
//! are reported as warnings rather than silently dropped.

pub mod poly;
pub mod resultant;
pub mod upoly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::{Poly, Sym};
use resultant::resultant_y;
use upoly::UPoly;

use crate::multfunc::EquationForm;
use crate::rational::{self, format_q, parse_q, Q};
use crate::sieve::{build_prime_set, factorize};

/// Default number of base symbols the residue may be reduced to.
pub const DEFAULT_MAX_BASE: usize = 2;
/// Default per-symbol degree allowed in the residue.
pub const DEFAULT_MAX_DEGREE: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("prime limit {limit} is too small for the {form} form (need at least {min})")]
    Limit {
        form: EquationForm,
        limit: u64,
        min: u64,
    },
    #[error("invalid solver option: {0}")]
    Options(String),
    #[error("capability exceeded: {reason}; offending constraint: {constraint}")]
    Capability { reason: String, constraint: String },
}

/// Which pair produced a constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintOrigin {
    pub form: EquationForm,
    /// Primes `p <= q` for the shifted form, `a <= b` in `PRIMES - 1` otherwise.
    pub a: u64,
    pub b: u64,
}

impl ConstraintOrigin {
    pub fn argument(&self) -> u64 {
        match self.form {
            EquationForm::Shifted => self.a + self.b - 2,
            EquationForm::Primesm1 => self.a + self.b,
        }
    }
}

impl fmt::Display for ConstraintOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            EquationForm::Shifted => write!(f, "f({}+{}-2)", self.a, self.b),
            EquationForm::Primesm1 => write!(f, "f({}+{})", self.a, self.b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// The constraint is `poly = 0`.
    pub poly: Poly,
    pub origin: ConstraintOrigin,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0  [from {}]", self.poly, self.origin)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub form: EquationForm,
    pub prime_limit: u64,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    /// Every symbol mentioned by some constraint.
    pub fn syms(&self) -> BTreeSet<Sym> {
        self.constraints
            .iter()
            .flat_map(|c| c.poly.syms())
            .collect()
    }

    /// Constraints that do not vanish identically under `values`, with their
    /// indices.
    pub fn residuals(&self, values: &BTreeMap<Sym, Q>) -> Vec<(usize, Poly)> {
        self.constraints
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let r = c.poly.substitute(values);
                (!r.is_zero()).then_some((i, r))
            })
            .collect()
    }

    pub fn contains(&self, poly: &Poly) -> bool {
        let target = poly.normalized();
        self.constraints
            .iter()
            .any(|c| c.poly.normalized() == target)
    }
}

/// Builds one constraint per admissible pair of primes up to `prime_limit`.
///
/// Pairs whose constraint vanishes identically (every shifted pair with
/// `p = 2`, for instance) are dropped.
pub fn build_system(form: EquationForm, prime_limit: u64) -> Result<ConstraintSystem, SolveError> {
    let min = match form {
        EquationForm::Shifted => 3,
        EquationForm::Primesm1 => 2,
    };
    if prime_limit < min {
        return Err(SolveError::Limit {
            form,
            limit: prime_limit,
            min,
        });
    }
    let primes = build_prime_set(prime_limit)
        .map_err(|e| SolveError::Options(e.to_string()))?
        .primes_up_to(prime_limit);
    let members: Vec<u64> = match form {
        EquationForm::Shifted => primes,
        EquationForm::Primesm1 => primes.iter().map(|p| p - 1).collect(),
    };
    let f = |n: u64| Poly::of_factorization(&factorize(n).expect("n >= 1"));
    let mut constraints = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            let origin = ConstraintOrigin { form, a, b };
            let poly = match form {
                EquationForm::Shifted => f(a + b - 2).sub(&f(a)).sub(&f(b)).add(&f(2)),
                EquationForm::Primesm1 => f(a + b).sub(&f(a)).sub(&f(b)),
            };
            if !poly.is_zero() {
                constraints.push(Constraint { poly, origin });
            }
        }
    }
    Ok(ConstraintSystem {
        form,
        prime_limit,
        constraints,
    })
}

/// Partial assignment explored by the solver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Branch {
    pub assignments: BTreeMap<Sym, Q>,
    pub trace: Vec<String>,
    pub warnings: Vec<String>,
}

impl Branch {
    pub fn new(assignments: BTreeMap<Sym, Q>) -> Self {
        Branch {
            assignments,
            ..Branch::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contradiction {
    pub constraint: usize,
    pub origin: ConstraintOrigin,
    /// What the constraint reduced to, e.g. `-16` for `-4 = 12`.
    pub residual: String,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} reduces to {} = 0", self.origin, self.residual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// This many new symbols were assigned.
    Progressed(usize),
    Stalled,
    Contradiction(Contradiction),
}

/// Runs substitution, zero-annihilation and affine solving to a fixpoint,
/// extending `branch.assignments` in place.
pub fn propagate(system: &ConstraintSystem, branch: &mut Branch) -> Propagation {
    let mut assigned = 0usize;
    loop {
        let residuals = system.residuals(&branch.assignments);
        if let Some((i, r)) = residuals.iter().find(|(_, r)| r.as_constant().is_some()) {
            return Propagation::Contradiction(Contradiction {
                constraint: *i,
                origin: system.constraints[*i].origin,
                residual: r.to_string(),
            });
        }
        // A constraint linear in a single remaining symbol solves directly.
        let single = residuals.iter().find_map(|(i, r)| {
            let syms = r.syms();
            let s = *syms.first()?;
            (syms.len() == 1)
                .then(|| r.solve_linear(s))
                .flatten()
                .map(|v| (*i, s, v))
        });
        if let Some((i, s, v)) = single {
            let v = v.as_constant().expect("single-symbol solution is constant");
            branch.trace.push(format!(
                "{s} = {} (from {})",
                format_q(&v),
                system.constraints[i].origin
            ));
            branch.assignments.insert(s, v);
            assigned += 1;
            continue;
        }
        let mut rows: Vec<(usize, BTreeMap<Sym, Q>, Q)> = Vec::new();
        for (i, r) in &residuals {
            if let Some((lin, c0)) = r.as_affine() {
                rows.push((*i, lin, c0));
            }
        }
        match affine_pins(rows) {
            Err(i) => {
                let residual = system.constraints[i].poly.substitute(&branch.assignments);
                return Propagation::Contradiction(Contradiction {
                    constraint: i,
                    origin: system.constraints[i].origin,
                    residual: residual.to_string(),
                });
            }
            Ok(pins) if pins.is_empty() => break,
            Ok(pins) => {
                for (s, v, src) in pins {
                    branch.trace.push(format!(
                        "{s} = {} (from {})",
                        format_q(&v),
                        system.constraints[src].origin
                    ));
                    branch.assignments.insert(s, v);
                    assigned += 1;
                }
            }
        }
    }
    if assigned > 0 {
        Propagation::Progressed(assigned)
    } else {
        Propagation::Stalled
    }
}

/// Row-reduces affine constraints `sum c_s s + c0 = 0`. Returns every symbol
/// pinned to a single value with the index of the constraint that pinned it,
/// or the index of an inconsistent constraint.
fn affine_pins(rows: Vec<(usize, BTreeMap<Sym, Q>, Q)>) -> Result<Vec<(Sym, Q, usize)>, usize> {
    // Reduced rows keyed by pivot symbol.
    let mut basis: BTreeMap<Sym, (BTreeMap<Sym, Q>, Q, usize)> = BTreeMap::new();
    for (src, mut lin, mut c0) in rows {
        for (pivot, (plin, pc0, _)) in &basis {
            if let Some(k) = lin.get(pivot).cloned() {
                for (s, c) in plin {
                    let e = lin.entry(*s).or_insert_with(Q::zero);
                    *e -= &k * c;
                }
                c0 -= &k * pc0;
                lin.retain(|_, c| !c.is_zero());
            }
        }
        let Some((&pivot, lead)) = lin.iter().next_back() else {
            if !c0.is_zero() {
                return Err(src);
            }
            continue;
        };
        let inv = Q::one() / lead;
        for c in lin.values_mut() {
            *c *= &inv;
        }
        c0 *= &inv;
        for (plin, pc0, _) in basis.values_mut() {
            if let Some(k) = plin.get(&pivot).cloned() {
                for (s, c) in &lin {
                    let e = plin.entry(*s).or_insert_with(Q::zero);
                    *e -= &k * c;
                }
                *pc0 -= &k * &c0;
                plin.retain(|_, c| !c.is_zero());
            }
        }
        basis.insert(pivot, (lin, c0, src));
    }
    Ok(basis
        .into_iter()
        .filter(|(_, (lin, _, _))| lin.len() == 1)
        .map(|(s, (_, c0, src))| (s, -c0, src))
        .collect())
}

/// Solver limits for [`eliminate_and_branch`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_base: usize,
    pub max_degree: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_base: DEFAULT_MAX_BASE,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// A verified solution: rational values for some symbols, the rest of the
/// system's symbols left free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    pub assignments: BTreeMap<Sym, Q>,
    pub free: BTreeSet<Sym>,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
}

impl SolutionFamily {
    pub fn f2(&self) -> Option<&Q> {
        self.assignments.get(&Sym::new(2, 1))
    }

    pub fn value(&self, s: Sym) -> Option<&Q> {
        self.assignments.get(&s)
    }

    /// Symbols with a definite value.
    pub fn determined(&self) -> BTreeSet<Sym> {
        self.assignments.keys().copied().collect()
    }

    /// Substitutes into every constraint of `system`; returns the index of
    /// the first one that does not vanish.
    pub fn verify(&self, system: &ConstraintSystem) -> Result<(), usize> {
        match system.residuals(&self.assignments).first() {
            Some((i, _)) => Err(*i),
            None => Ok(()),
        }
    }
}

/// JSON shape of a family.
#[derive(Serialize, Deserialize)]
struct FamilyJson {
    f2: Option<String>,
    assignments: Vec<(Sym, String)>,
    free: Vec<Sym>,
    #[serde(default)]
    warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    provenance: Vec<String>,
}

impl Serialize for SolutionFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FamilyJson {
            f2: self.f2().map(format_q),
            assignments: self
                .assignments
                .iter()
                .map(|(k, v)| (*k, format_q(v)))
                .collect(),
            free: self.free.iter().copied().collect(),
            warnings: self.warnings.clone(),
            provenance: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SolutionFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FamilyJson::deserialize(d)?;
        let mut assignments = BTreeMap::new();
        for (k, v) in raw.assignments {
            assignments.insert(k, parse_q(&v).map_err(serde::de::Error::custom)?);
        }
        if let Some(f2) = raw.f2 {
            let f2 = parse_q(&f2).map_err(serde::de::Error::custom)?;
            if assignments.get(&Sym::new(2, 1)).is_some_and(|v| *v != f2) {
                return Err(serde::de::Error::custom(
                    "f2 disagrees with the 2^1 assignment",
                ));
            }
            assignments.insert(Sym::new(2, 1), f2);
        }
        Ok(SolutionFamily {
            assignments,
            free: raw.free.into_iter().collect(),
            provenance: raw.provenance,
            warnings: raw.warnings,
        })
    }
}

/// All verified families of a system, sorted by `f(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub form: EquationForm,
    pub prime_limit: u64,
    pub families: Vec<SolutionFamily>,
    /// Every warning raised on any branch, including pruned ones.
    pub warnings: Vec<String>,
    /// Branches dropped by contradiction.
    pub pruned: usize,
}

/// Solves `system` completely over the rationals, up to the stated limits.
pub fn eliminate_and_branch(
    system: &ConstraintSystem,
    opts: SolveOptions,
) -> Result<Classification, SolveError> {
    if opts.max_base < 1 {
        return Err(SolveError::Options("max_base must be at least 1".into()));
    }
    if opts.max_degree < 1 {
        return Err(SolveError::Options("max_degree must be at least 1".into()));
    }
    let mut explorer = Explorer {
        system,
        opts,
        all_syms: system.syms(),
        families: Vec::new(),
        warnings: Vec::new(),
        pruned: 0,
    };
    explorer.explore(Branch::default(), 0)?;
    let Explorer {
        mut families,
        mut warnings,
        pruned,
        ..
    } = explorer;
    families.sort_by(family_order);
    families.dedup_by(|a, b| a.assignments == b.assignments && a.free == b.free);
    warnings.dedup();
    Ok(Classification {
        form: system.form,
        prime_limit: system.prime_limit,
        families,
        warnings,
        pruned,
    })
}

fn family_order(a: &SolutionFamily, b: &SolutionFamily) -> std::cmp::Ordering {
    // Families with f(2) free sort after all determined ones.
    match (a.f2(), b.f2()) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    }
    .then_with(|| a.assignments.cmp(&b.assignments))
    .then_with(|| a.free.cmp(&b.free))
}

/// `build_system` followed by `eliminate_and_branch` with default limits.
pub fn classify(form: EquationForm, prime_limit: u64) -> Result<Classification, SolveError> {
    classify_with(form, prime_limit, SolveOptions::default())
}

pub fn classify_with(
    form: EquationForm,
    prime_limit: u64,
    opts: SolveOptions,
) -> Result<Classification, SolveError> {
    let system = build_system(form, prime_limit)?;
    eliminate_and_branch(&system, opts)
}

struct Explorer<'a> {
    system: &'a ConstraintSystem,
    opts: SolveOptions,
    all_syms: BTreeSet<Sym>,
    families: Vec<SolutionFamily>,
    warnings: Vec<String>,
    pruned: usize,
}

impl Explorer<'_> {
    fn explore(&mut self, mut branch: Branch, depth: usize) -> Result<(), SolveError> {
        match propagate(self.system, &mut branch) {
            Propagation::Contradiction(c) => {
                self.pruned += 1;
                branch.trace.push(format!("contradiction: {c}"));
                return Ok(());
            }
            Propagation::Progressed(_) | Propagation::Stalled => {}
        }
        let residual = self.system.residuals(&branch.assignments);
        if residual.is_empty() {
            self.accept(branch);
            return Ok(());
        }
        if depth > self.all_syms.len() {
            return Err(self.capability("branching did not terminate", &residual[0].1));
        }

        let polys: Vec<Poly> = residual.iter().map(|(_, p)| p.clone()).collect();
        let residue = triangular_eliminate(&polys);
        if residue
            .iter()
            .any(|p| p.as_constant().is_some_and(|c| !c.is_zero()))
        {
            self.pruned += 1;
            return Ok(());
        }
        if residue.is_empty() {
            return Err(self.capability(
                "system is underdetermined: eliminated symbols depend on symbols no constraint pins",
                &residual[0].1,
            ));
        }

        let mut syms: Vec<Sym> = residue
            .iter()
            .flat_map(Poly::syms)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        syms.sort_by_key(Sym::value);
        let base: Vec<Sym> = syms.into_iter().take(self.opts.max_base).collect();
        let in_base: Vec<&Poly> = residue
            .iter()
            .filter(|p| p.syms().iter().all(|s| base.contains(s)))
            .collect();
        if in_base.is_empty() {
            return Err(self.capability(
                &format!(
                    "residue does not reduce to {} base symbol(s)",
                    self.opts.max_base
                ),
                &residue[0],
            ));
        }
        // Higher-degree consequences are skipped; every branch is verified
        // against the full system anyway.
        let core: Vec<Poly> = in_base
            .iter()
            .filter(|p| p.max_var_degree() <= self.opts.max_degree)
            .map(|p| (*p).clone())
            .collect();
        if core.is_empty() {
            return Err(self.capability(
                &format!("residue degree exceeds max_degree {}", self.opts.max_degree),
                in_base[0],
            ));
        }

        for point in self.base_points(&core, &base, &mut branch)? {
            let mut child = branch.clone();
            for (s, v) in point {
                child.trace.push(format!("branch {s} = {}", format_q(&v)));
                child.assignments.insert(s, v);
            }
            self.explore(child, depth + 1)?;
        }
        Ok(())
    }

    /// Rational points of the core residue, possibly leaving the second base
    /// symbol open when the first one does not pin it.
    fn base_points(
        &mut self,
        core: &[Poly],
        base: &[Sym],
        branch: &mut Branch,
    ) -> Result<Vec<Vec<(Sym, Q)>>, SolveError> {
        let (x, y) = match base {
            [x] => (*x, None),
            [x, y, ..] => (*x, Some(*y)),
            [] => unreachable!("core is nonempty"),
        };
        let Some(y) = y else {
            let g = gcd_all(core.iter().filter_map(|p| p.to_upoly(x)));
            let roots = self.roots(&g, x, branch);
            return Ok(roots.into_iter().map(|r| vec![(x, r)]).collect());
        };
        let (x, y, g) = match eliminant(core, x, y) {
            Some(g) => (x, y, g),
            None => match eliminant(core, y, x) {
                Some(g) => (y, x, g),
                None => return Err(self.capability(
                    "no nonzero eliminant: the residue defines a curve, not finitely many points",
                    &core[0],
                )),
            },
        };
        let mut points = Vec::new();
        for r in self.roots(&g, x, branch) {
            let mut at = BTreeMap::new();
            at.insert(x, r.clone());
            let in_y = core.iter().filter_map(|p| {
                let s = p.substitute(&at);
                (!s.is_zero()).then(|| s.to_upoly(y)).flatten()
            });
            let gy = gcd_all(in_y);
            if gy.is_zero() {
                points.push(vec![(x, r)]);
                continue;
            }
            for s in self.roots(&gy, y, branch) {
                points.push(vec![(x, r.clone()), (y, s)]);
            }
        }
        Ok(points)
    }

    fn roots(&mut self, g: &UPoly, var: Sym, branch: &mut Branch) -> Vec<Q> {
        if g.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let (roots, rest) = g.rational_roots();
        if rest.degree().unwrap_or(0) > 0 {
            let msg = format!(
                "eliminant in {var} (x = {var}) has factor {rest} with no rational roots; \
                 its irrational branches are not explored"
            );
            branch.warnings.push(msg.clone());
            self.warnings.push(msg);
        }
        roots
    }

    fn accept(&mut self, branch: Branch) {
        let family = SolutionFamily {
            free: self
                .all_syms
                .iter()
                .filter(|s| !branch.assignments.contains_key(s))
                .copied()
                .collect(),
            assignments: branch.assignments,
            provenance: branch.trace,
            warnings: branch.warnings,
        };
        // Verification against the original system, not the eliminated one.
        if family.verify(self.system).is_ok() {
            self.families.push(family);
        } else {
            self.pruned += 1;
        }
    }

    fn capability(&self, reason: &str, poly: &Poly) -> SolveError {
        let origin = self
            .system
            .constraints
            .iter()
            .find(|c| c.poly == *poly)
            .map(|c| format!(" [from {}]", c.origin))
            .unwrap_or_default();
        SolveError::Capability {
            reason: reason.into(),
            constraint: format!("{poly} = 0{origin}"),
        }
    }
}

fn gcd_all(polys: impl Iterator<Item = UPoly>) -> UPoly {
    polys.fold(UPoly::zero(), |acc, p| acc.gcd(&p))
}

/// Gcd of every univariate consequence in `x` of the core: polynomials that
/// already lack `y`, and pairwise resultants in `y` of the rest.
fn eliminant(core: &[Poly], x: Sym, y: Sym) -> Option<UPoly> {
    let mut elims = Vec::new();
    let mut with_y = Vec::new();
    for p in core {
        if p.syms().contains(&y) {
            with_y.push(p.to_bivariate(x, y)?);
        } else if let Some(u) = p.to_upoly(x) {
            if !u.is_zero() {
                elims.push(u);
            }
        }
    }
    for i in 0..with_y.len() {
        for j in i + 1..with_y.len() {
            let r = resultant_y(&with_y[i], &with_y[j]);
            if !r.is_zero() {
                elims.push(r);
            }
        }
    }
    let g = gcd_all(elims.into_iter());
    (!g.is_zero()).then_some(g)
}

/// Solves, largest argument first, every symbol that occurs linearly with a
/// constant coefficient in some constraint, substituting the solution into
/// the others. Returns the nonzero constraints that remain.
fn triangular_eliminate(polys: &[Poly]) -> Vec<Poly> {
    let mut pool: Vec<Option<Poly>> = polys.iter().cloned().map(Some).collect();
    let mut targets: Vec<Sym> = polys
        .iter()
        .flat_map(Poly::syms)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    targets.sort_by_key(|s| std::cmp::Reverse(s.value()));
    for target in targets {
        let best = pool
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let p = p.as_ref()?;
                let rhs = p.solve_linear(target)?;
                let max_other = rhs.syms().iter().map(Sym::value).max().unwrap_or(0);
                Some(((max_other, rhs.total_degree(), rhs.terms().len(), i), rhs))
            })
            .min_by(|a, b| a.0.cmp(&b.0));
        let Some(((_, _, _, idx), rhs)) = best else {
            continue;
        };
        pool[idx] = None;
        for p in pool.iter_mut().flatten() {
            *p = p.substitute_poly(target, &rhs);
        }
    }
    pool.into_iter()
        .flatten()
        .filter(|p| !p.is_zero())
        .collect()
}

/// Status of `f(n)` within a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForcedValue {
    Value(Q),
    /// Depends on a free symbol with a nonzero cofactor.
    Free,
    /// Involves a symbol that never appears in the system.
    Undetermined,
}

impl fmt::Display for ForcedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForcedValue::Value(v) => f.write_str(&format_q(v)),
            ForcedValue::Free => f.write_str("free"),
            ForcedValue::Undetermined => f.write_str("undetermined"),
        }
    }
}

impl Serialize for ForcedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ForcedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "free" => Ok(ForcedValue::Free),
            "undetermined" => Ok(ForcedValue::Undetermined),
            other => rational::parse_q(other)
                .map(ForcedValue::Value)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// `f(n)` for `1 <= n <= up_to` as far as the family determines it.
pub fn forced_values(family: &SolutionFamily, up_to: u64) -> Vec<(u64, ForcedValue)> {
    (1..=up_to)
        .map(|n| {
            let fact = factorize(n).expect("n >= 1");
            let syms: Vec<Sym> = fact
                .factors()
                .iter()
                .map(|&(p, e)| Sym::new(p, e))
                .collect();
            let status = if syms
                .iter()
                .any(|s| family.value(*s).is_some_and(Zero::is_zero))
            {
                ForcedValue::Value(Q::zero())
            } else if syms
                .iter()
                .any(|s| family.value(*s).is_none() && !family.free.contains(s))
            {
                ForcedValue::Undetermined
            } else if syms.iter().any(|s| family.free.contains(s)) {
                ForcedValue::Free
            } else {
                ForcedValue::Value(syms.iter().map(|s| family.assignments[s].clone()).product())
            };
            (n, status)
        })
        .collect()
}

//! Truncated Novikov-ring scalars with exact rational exponents.
//!
//! A scalar is a finite sum `Σ aᵢ T^{λᵢ}` with complex `aᵢ`, exact rational
//! `λᵢ ∈ [0, Λ)` and an explicit truncation level `Λ`; all arithmetic is
//! performed modulo `T^Λ`. The truncation level is part of the value and must
//! match across binary operations — there is no implicit promotion, because
//! silently mixing precisions is the classic failure mode of truncated-series
//! code.
//!
//! Also home to the discrete exponent monoid (finitely generated submonoid of
//! the nonnegative rationals) and the shifted-monoid admissibility filter used
//! to police which exponents the higher-order contributions may occupy.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// Coefficients with magnitude below this threshold are pruned after every
/// operation; all zero tests are threshold tests against it.
pub const DEFAULT_PRUNE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NovikovError {
    #[error("cutoff mismatch: {lhs} vs {rhs}")]
    CutoffMismatch { lhs: Rat, rhs: Rat },
    #[error("non-unit scalar: valuation {valuation} (need valuation 0 with leading coefficient above {tol:e})")]
    NonUnit { valuation: Rat, tol: f64 },
    #[error("exp of a scalar with a constant term (valuation 0)")]
    ExpOfUnit,
    #[error("negative exponent {0} produced by a shift")]
    NegativeExponent(Rat),
    #[error("monoid generators must be strictly positive, got {0}")]
    NonPositiveGenerator(Rat),
    #[error("invalid cutoff {0}: must be positive")]
    InvalidCutoff(Rat),
}

/// Discrete additive submonoid of `ℚ≥0` with finitely many positive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMonoid {
    generators: Vec<Rat>,
}

impl ExponentMonoid {
    pub fn new(generators: Vec<Rat>) -> Result<Self, NovikovError> {
        for g in &generators {
            if !g.is_positive() {
                return Err(NovikovError::NonPositiveGenerator(*g));
            }
        }
        Ok(ExponentMonoid { generators })
    }

    pub fn generators(&self) -> &[Rat] {
        &self.generators
    }

    /// All monoid elements in `[0, bound)`, ascending and deduplicated.
    ///
    /// Dijkstra-style frontier walk: pop the smallest reached value, extend by
    /// every generator. Generators are strictly positive, so this terminates.
    pub fn elements(&self, bound: Rat) -> Vec<Rat> {
        assert!(bound.is_positive(), "enumeration bound must be positive");
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = std::collections::BTreeSet::new();
        frontier.insert(Rat::ZERO);
        while let Some(x) = frontier.iter().next().copied() {
            frontier.remove(&x);
            if x >= bound || !seen.insert(x) {
                continue;
            }
            for g in &self.generators {
                let y = x + *g;
                if y < bound && !seen.contains(&y) {
                    frontier.insert(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Membership test for a single rational.
    pub fn contains(&self, x: Rat) -> bool {
        if x.is_negative() {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        self.elements(x + Rat::ONE).contains(&x)
    }
}

/// Filter accepting scalars whose every exponent lies in `s + G` for each
/// shift `s`.
#[derive(Debug, Clone)]
pub struct AdmissibilityFilter {
    pub monoid: ExponentMonoid,
    pub shifts: Vec<Rat>,
}

impl AdmissibilityFilter {
    pub fn new(monoid: ExponentMonoid, shifts: Vec<Rat>) -> Self {
        AdmissibilityFilter { monoid, shifts }
    }

    pub fn accepts_exponent(&self, lambda: Rat) -> bool {
        self.shifts
            .iter()
            .all(|s| self.monoid.contains(lambda - *s))
    }

    pub fn accepts(&self, x: &NovikovScalar) -> bool {
        x.terms()
            .keys()
            .all(|lambda| self.accepts_exponent(*lambda))
    }
}

/// Truncated Novikov scalar: ordered exponent → coefficient map plus cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovScalar {
    terms: BTreeMap<Rat, Complex64>,
    cutoff: Rat,
}

impl NovikovScalar {
    pub fn zero(cutoff: Rat) -> Self {
        NovikovScalar {
            terms: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn one(cutoff: Rat) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), Rat::ZERO, cutoff)
    }

    pub fn constant(c: Complex64, cutoff: Rat) -> Self {
        Self::monomial(c, Rat::ZERO, cutoff)
    }

    /// Single term `c·T^λ` (dropped if `λ ≥ Λ` or `|c|` below prune).
    pub fn monomial(c: Complex64, lambda: Rat, cutoff: Rat) -> Self {
        let mut s = Self::zero(cutoff);
        if lambda < cutoff && c.norm() >= DEFAULT_PRUNE {
            assert!(
                !lambda.is_negative(),
                "Novikov exponents must be nonnegative, got {lambda}"
            );
            s.terms.insert(lambda, c);
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Rat, Complex64)>>(terms: I, cutoff: Rat) -> Self {
        let mut s = Self::zero(cutoff);
        for (lambda, c) in terms {
            s.add_term(lambda, c);
        }
        s.prune();
        s
    }

    fn add_term(&mut self, lambda: Rat, c: Complex64) {
        assert!(
            !lambda.is_negative(),
            "Novikov exponents must be nonnegative, got {lambda}"
        );
        if lambda >= self.cutoff {
            return;
        }
        *self.terms.entry(lambda).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= DEFAULT_PRUNE);
    }

    pub fn cutoff(&self) -> Rat {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Rat, Complex64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest stored exponent, or the cutoff for the zero element. Keeping
    /// the zero case finite keeps valuations totally ordered within a run.
    pub fn valuation(&self) -> Rat {
        self.terms.keys().next().copied().unwrap_or(self.cutoff)
    }

    /// Coefficient at an exact exponent (zero if absent).
    pub fn coeff(&self, lambda: Rat) -> Complex64 {
        self.terms
            .get(&lambda)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn leading_coeff(&self) -> Complex64 {
        self.terms
            .values()
            .next()
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_unit(&self) -> bool {
        self.valuation().is_zero() && self.leading_coeff().norm() > DEFAULT_PRUNE
    }

    fn check_cutoff(&self, rhs: &Self) -> Result<(), NovikovError> {
        if self.cutoff != rhs.cutoff {
            return Err(NovikovError::CutoffMismatch {
                lhs: self.cutoff,
                rhs: rhs.cutoff,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, NovikovError> {
        self.check_cutoff(rhs)?;
        let mut out = self.clone();
        for (lambda, c) in &rhs.terms {
            out.add_term(*lambda, *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, NovikovError> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, NovikovError> {
        self.check_cutoff(rhs)?;
        let mut out = Self::zero(self.cutoff);
        for (la, ca) in &self.terms {
            // Terms are sorted; once la+lb reaches the cutoff, later lb only grow.
            for (lb, cb) in &rhs.terms {
                let lambda = *la + *lb;
                if lambda >= self.cutoff {
                    break;
                }
                out.add_term(lambda, ca * cb);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out.prune();
        out
    }

    /// Multiplicative inverse of a unit, modulo `T^Λ`.
    ///
    /// Writes `u = c₀(1 + v)` with `val(v) > 0` and sums the geometric series
    /// `c₀⁻¹ Σ (-v)^k`; the sum is finite because `k·val(v)` passes the cutoff.
    pub fn inv(&self) -> Result<Self, NovikovError> {
        if !self.is_unit() {
            return Err(NovikovError::NonUnit {
                valuation: self.valuation(),
                tol: DEFAULT_PRUNE,
            });
        }
        let c0 = self.coeff(Rat::ZERO);
        let mut v = self.clone();
        v.terms.remove(&Rat::ZERO);
        let v = v.scale(Complex64::new(1.0, 0.0) / c0);
        let mut out = Self::one(self.cutoff);
        let mut power = Self::one(self.cutoff);
        let neg_v = v.neg();
        while !power.is_zero() {
            power = power.checked_mul(&neg_v)?;
            if power.is_zero() {
                break;
            }
            out = out.checked_add(&power)?;
        }
        Ok(out.scale(Complex64::new(1.0, 0.0) / c0))
    }

    /// `Σ_k x^k / k!` modulo `T^Λ`; requires positive valuation (or zero input)
    /// so that the sum terminates.
    pub fn exp(&self) -> Result<Self, NovikovError> {
        if self.is_zero() {
            return Ok(Self::one(self.cutoff));
        }
        if self.valuation().is_zero() {
            return Err(NovikovError::ExpOfUnit);
        }
        let mut out = Self::one(self.cutoff);
        let mut term = Self::one(self.cutoff);
        let mut k = 1.0;
        loop {
            term = term.checked_mul(self)?.scale(Complex64::new(1.0 / k, 0.0));
            if term.is_zero() {
                break;
            }
            out = out.checked_add(&term)?;
            k += 1.0;
        }
        Ok(out)
    }

    /// Multiply by `T^delta` (delta may be negative); exponents must stay
    /// nonnegative. The cutoff shifts with the terms.
    pub fn shift(&self, delta: Rat) -> Result<Self, NovikovError> {
        let mut out = Self::zero(self.cutoff + delta);
        for (lambda, c) in &self.terms {
            let l = *lambda + delta;
            if l.is_negative() {
                return Err(NovikovError::NegativeExponent(l));
            }
            out.terms.insert(l, *c);
        }
        Ok(out)
    }

    /// Re-truncate to a smaller cutoff, or extend the cutoff of a scalar whose
    /// absent high-order terms are taken to be zero. Explicit by design.
    pub fn with_cutoff(&self, cutoff: Rat) -> Self {
        let mut out = Self::zero(cutoff);
        for (lambda, c) in &self.terms {
            if *lambda < cutoff {
                out.terms.insert(*lambda, *c);
            }
        }
        out
    }

    /// Largest coefficient magnitude (0 for the zero scalar).
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn to_records(&self) -> ScalarRecord {
        ScalarRecord {
            terms: self
                .terms
                .iter()
                .map(|(lambda, c)| TermRecord {
                    exp: *lambda,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
            cutoff: self.cutoff,
        }
    }

    pub fn from_records(rec: &ScalarRecord) -> Self {
        Self::from_terms(
            rec.terms
                .iter()
                .map(|t| (t.exp, Complex64::new(t.re, t.im))),
            rec.cutoff,
        )
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "O(T^{})", self.cutoff);
        }
        let mut first = true;
        for (lambda, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if lambda.is_zero() {
                write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            } else {
                write!(f, "({:.6}{:+.6}i)T^{}", c.re, c.im, lambda)?;
            }
        }
        write!(f, " + O(T^{})", self.cutoff)
    }
}

/// Wire form of a scalar: term records plus the cutoff.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermRecord {
    pub exp: Rat,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScalarRecord {
    pub terms: Vec<TermRecord>,
    pub cutoff: Rat,
}

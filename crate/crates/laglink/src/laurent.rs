//! Sparse Laurent polynomials in `(x₁, x₂, y₁, y₂)` over Novikov scalars.
//!
//! The four variables are the exponentiated degree-one coordinates on the
//! product torus; the variable count is fixed at 4. Monomial keys are exact
//! integer 4-vectors ordered lexicographically, so iteration, serialization
//! and reports are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::novikov::{NovikovError, NovikovScalar, ScalarRecord};
use crate::rat::Rat;

/// Variable index into the `(x₁, x₂, y₁, y₂)` frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X1 = 0,
    X2 = 1,
    Y1 = 2,
    Y2 = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X1, Var::X2, Var::Y1, Var::Y2];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Partner under the `x↔y` symmetry.
    pub fn swapped(self) -> Var {
        match self {
            Var::X1 => Var::Y1,
            Var::X2 => Var::Y2,
            Var::Y1 => Var::X1,
            Var::Y2 => Var::X2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
        };
        write!(f, "{s}")
    }
}

/// Exponent 4-vector of a Laurent monomial; negative powers allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub [i32; 4]);

impl Monomial {
    pub const UNIT: Monomial = Monomial([0, 0, 0, 0]);

    pub fn var(v: Var, power: i32) -> Monomial {
        let mut e = [0i32; 4];
        e[v.index()] = power;
        Monomial(e)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut e = self.0;
        for (lhs, r) in e.iter_mut().zip(rhs.0) {
            *lhs += r;
        }
        Monomial(e)
    }

    pub fn power(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    /// Exchange `x₁↔y₁`, `x₂↔y₂`.
    pub fn swap_xy(&self) -> Monomial {
        let [a, b, c, d] = self.0;
        Monomial([c, d, a, b])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == [0, 0, 0, 0] {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let p = self.power(v);
            if p != 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if p == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{p}")?;
                }
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial; coefficients share the polynomial's cutoff and
/// zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, NovikovScalar>,
    cutoff: Rat,
}

impl LaurentPoly {
    pub fn zero(cutoff: Rat) -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn monomial(m: Monomial, coeff: NovikovScalar) -> Self {
        let mut p = Self::zero(coeff.cutoff());
        p.add_term(m, coeff);
        p
    }

    pub fn cutoff(&self) -> Rat {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, NovikovScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> NovikovScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| NovikovScalar::zero(self.cutoff))
    }

    /// Accumulate `coeff·m`; drops the entry if the sum prunes to zero.
    pub fn add_term(&mut self, m: Monomial, coeff: NovikovScalar) {
        assert_eq!(
            coeff.cutoff(),
            self.cutoff,
            "coefficient cutoff must match the polynomial cutoff"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(&coeff).expect("same cutoff");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
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
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, NovikovError> {
        self.check_cutoff(rhs)?;
        let mut out = Self::zero(self.cutoff);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.checked_mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_term(*m, c.scale(k));
        }
        out
    }

    /// Multiply every coefficient by a scalar of the same cutoff.
    pub fn scale_scalar(&self, k: &NovikovScalar) -> Result<Self, NovikovError> {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_term(*m, c.checked_mul(k)?);
        }
        Ok(out)
    }

    /// Multiply every coefficient by `T^delta` (cutoff shifts along).
    pub fn shift(&self, delta: Rat) -> Result<Self, NovikovError> {
        let mut out = Self::zero(self.cutoff + delta);
        for (m, c) in &self.terms {
            let s = c.shift(delta)?;
            if !s.is_zero() {
                out.terms.insert(*m, s);
            }
        }
        Ok(out)
    }

    /// Explicit re-truncation (down) or zero-extension (up) of the cutoff.
    pub fn with_cutoff(&self, cutoff: Rat) -> Self {
        let mut out = Self::zero(cutoff);
        for (m, c) in &self.terms {
            let s = c.with_cutoff(cutoff);
            if !s.is_zero() {
                out.terms.insert(*m, s);
            }
        }
        out
    }

    /// Formal partial derivative in one variable: `c·v^n ↦ (n·c)·v^{n-1}`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            let n = m.power(v);
            if n == 0 {
                continue;
            }
            let mut e = m.0;
            e[v.index()] -= 1;
            out.add_term(Monomial(e), c.scale(Complex64::new(n as f64, 0.0)));
        }
        out
    }

    /// Exchange the `x` and `y` variable pairs in every monomial.
    pub fn swap_xy(&self) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add_term(m.swap_xy(), c.clone());
        }
        out
    }

    /// Structural invariance under the `x↔y` swap (exact term-map equality).
    pub fn is_swap_symmetric(&self) -> bool {
        *self == self.swap_xy()
    }

    /// Substitution homomorphism at a point with unit (valuation-0)
    /// coordinates; negative powers go through the inverse of each coordinate,
    /// computed once and reused.
    pub fn eval(&self, point: &[NovikovScalar; 4]) -> Result<NovikovScalar, NovikovError> {
        for c in point {
            if c.cutoff() != self.cutoff {
                return Err(NovikovError::CutoffMismatch {
                    lhs: self.cutoff,
                    rhs: c.cutoff(),
                });
            }
            if !c.is_unit() {
                return Err(NovikovError::NonUnit {
                    valuation: c.valuation(),
                    tol: crate::novikov::DEFAULT_PRUNE,
                });
            }
        }
        let mut cache = PowerCache::new(point);
        let mut acc = NovikovScalar::zero(self.cutoff);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let p = m.power(v);
                if p != 0 {
                    term = term.checked_mul(cache.power(v, p)?)?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    pub fn to_records(&self) -> Vec<PolyTermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTermRecord {
                exponents: m.0,
                coefficient: c.to_records(),
            })
            .collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(T^{})", self.cutoff);
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{c}]·{m}")?;
        }
        Ok(())
    }
}

/// Wire form of a polynomial term.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyTermRecord {
    pub exponents: [i32; 4],
    pub coefficient: ScalarRecord,
}

/// Per-coordinate powers, with inverses computed once per coordinate.
struct PowerCache<'a> {
    point: &'a [NovikovScalar; 4],
    inverses: [Option<NovikovScalar>; 4],
    memo: BTreeMap<(usize, i32), NovikovScalar>,
}

impl<'a> PowerCache<'a> {
    fn new(point: &'a [NovikovScalar; 4]) -> Self {
        PowerCache {
            point,
            inverses: [None, None, None, None],
            memo: BTreeMap::new(),
        }
    }

    fn power(&mut self, v: Var, p: i32) -> Result<&NovikovScalar, NovikovError> {
        let key = (v.index(), p);
        if !self.memo.contains_key(&key) {
            let base = if p >= 0 {
                self.point[v.index()].clone()
            } else {
                if self.inverses[v.index()].is_none() {
                    self.inverses[v.index()] = Some(self.point[v.index()].inv()?);
                }
                self.inverses[v.index()].clone().unwrap()
            };
            let mut acc = NovikovScalar::one(base.cutoff());
            for _ in 0..p.unsigned_abs() {
                acc = acc.checked_mul(&base)?;
            }
            self.memo.insert(key, acc);
        }
        Ok(self.memo.get(&key).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn unit_coeff(cut: Rat) -> NovikovScalar {
        NovikovScalar::one(cut)
    }

    fn poly_var(v: Var, p: i32, cut: Rat) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(v, p), unit_coeff(cut))
    }

    #[test]
    fn mul_inverse_pair_collapses() {
        let cut = rat(4, 1);
        let x1 = poly_var(Var::X1, 1, cut);
        let x1_inv = poly_var(Var::X1, -1, cut);
        let prod = x1.checked_mul(&x1_inv).unwrap();
        assert_eq!(prod.terms().len(), 1);
        assert_eq!(prod.coeff(&Monomial::UNIT), NovikovScalar::one(cut));
    }

    #[test]
    fn mul_difference_of_squares() {
        let cut = rat(4, 1);
        let x2 = poly_var(Var::X2, 1, cut);
        let y2 = poly_var(Var::Y2, 1, cut);
        let sum = x2.checked_add(&y2).unwrap();
        let diff = x2.checked_add(&y2.neg()).unwrap();
        let prod = sum.checked_mul(&diff).unwrap();
        assert_eq!(prod.terms().len(), 2);
        assert_eq!(
            prod.coeff(&Monomial::var(Var::X2, 2)),
            NovikovScalar::one(cut)
        );
        assert_eq!(
            prod.coeff(&Monomial::var(Var::Y2, 2)),
            NovikovScalar::one(cut).neg()
        );
    }

    #[test]
    fn mul_adds_t_exponents() {
        let cut = rat(10, 1);
        let a = LaurentPoly::monomial(
            Monomial::var(Var::X2, 1),
            NovikovScalar::monomial(c(1.0), rat(2, 1), cut),
        );
        let b = LaurentPoly::monomial(
            Monomial::var(Var::X1, 1),
            NovikovScalar::monomial(c(1.0), rat(5, 1), cut),
        );
        let prod = a.checked_mul(&b).unwrap();
        let m = Monomial([1, 1, 0, 0]);
        assert_eq!(prod.coeff(&m).valuation(), rat(7, 1));
    }

    #[test]
    fn partial_power_rule() {
        let cut = rat(4, 1);
        let f = LaurentPoly::monomial(
            Monomial::var(Var::X2, -1),
            NovikovScalar::monomial(c(1.0), rat(2, 1), cut),
        );
        let df = f.partial(Var::X2);
        let m = Monomial::var(Var::X2, -2);
        assert_eq!(df.terms().len(), 1);
        assert_eq!(df.coeff(&m).coeff(rat(2, 1)), c(-1.0));

        let constant = LaurentPoly::monomial(Monomial::UNIT, unit_coeff(cut));
        assert!(constant.partial(Var::X1).is_zero());
    }

    #[test]
    fn eval_examples() {
        let cut = rat(6, 1);
        let ones = [
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
        ];

        // x2 + x2^{-1} at all-ones -> 2
        let f = poly_var(Var::X2, 1, cut)
            .checked_add(&poly_var(Var::X2, -1, cut))
            .unwrap();
        let v = f.eval(&ones).unwrap();
        assert!((v.coeff(Rat::ZERO) - c(2.0)).norm() < 1e-12);

        // x1 x2 - y1 y2 at x=y -> 0
        let x1x2 = LaurentPoly::monomial(Monomial([1, 1, 0, 0]), unit_coeff(cut));
        let y1y2 = LaurentPoly::monomial(Monomial([0, 0, 1, 1]), unit_coeff(cut));
        let g = x1x2.checked_add(&y1y2.neg()).unwrap();
        let two = NovikovScalar::from_terms([(Rat::ZERO, c(1.3)), (Rat::ONE, c(0.7))], cut);
        let pt = [two.clone(), two.clone(), two.clone(), two.clone()];
        assert!(g.eval(&pt).unwrap().is_zero());

        // T^2(-x2^{-2} + 1) at x2 = 1 + T^2 -> 2T^4 + O(T^6)
        let t2 = NovikovScalar::monomial(c(1.0), rat(2, 1), cut);
        let f = LaurentPoly::monomial(Monomial::var(Var::X2, -2), t2.neg())
            .checked_add(&LaurentPoly::monomial(Monomial::UNIT, t2))
            .unwrap();
        let x2 = NovikovScalar::from_terms([(Rat::ZERO, c(1.0)), (rat(2, 1), c(1.0))], cut);
        let pt = [
            NovikovScalar::one(cut),
            x2,
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
        ];
        let v = f.eval(&pt).unwrap();
        assert_eq!(v.valuation(), rat(4, 1));
        assert!((v.coeff(rat(4, 1)) - c(2.0)).norm() < 1e-12);
        assert_eq!(v.terms().len(), 1); // the T^6 tail is cut off
    }

    #[test]
    fn eval_rejects_non_unit_coordinate() {
        let cut = rat(4, 1);
        let f = poly_var(Var::X1, -1, cut);
        let t = NovikovScalar::monomial(c(1.0), Rat::ONE, cut);
        let pt = [
            t,
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
            NovikovScalar::one(cut),
        ];
        assert!(matches!(f.eval(&pt), Err(NovikovError::NonUnit { .. })));
    }

    #[test]
    fn swap_examples() {
        let cut = rat(4, 1);
        let sym = poly_var(Var::X1, 1, cut)
            .checked_add(&poly_var(Var::Y1, 1, cut))
            .unwrap();
        assert_eq!(sym.swap_xy(), sym);
        assert!(sym.is_swap_symmetric());

        let f = LaurentPoly::monomial(Monomial([2, 0, 0, 1]), unit_coeff(cut)); // x1^2 y2
        let g = f.swap_xy();
        assert_eq!(g.coeff(&Monomial([0, 1, 2, 0])), unit_coeff(cut)); // y1^2 x2
        assert_eq!(f.swap_xy().swap_xy(), f);
        assert!(!f.is_swap_symmetric());
    }

    fn arb_poly(cut: Rat) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(
            (
                proptest::array::uniform4(-2i32..3),
                (0i128..4, 1i128..3),
                -2.0f64..2.0,
            ),
            0..4,
        )
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(cut);
            for (exps, (n, d), re) in terms {
                p.add_term(
                    Monomial(exps),
                    NovikovScalar::monomial(Complex64::new(re, 0.1), Rat::new(n, d).unwrap(), cut),
                );
            }
            p
        })
    }

    fn arb_unit_point(cut: Rat) -> impl Strategy<Value = [NovikovScalar; 4]> {
        proptest::array::uniform4((
            0.5f64..2.0,
            -1.0f64..1.0,
            (1i128..4, 1i128..3),
            -1.0f64..1.0,
        ))
        .prop_map(move |coords| {
            coords.map(|(re, im, (n, d), hi)| {
                NovikovScalar::from_terms(
                    [
                        (Rat::ZERO, Complex64::new(re, im)),
                        (Rat::new(n, d).unwrap(), Complex64::new(hi, 0.0)),
                    ],
                    cut,
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_rule(f in arb_poly(rat(4,1)), g in arb_poly(rat(4,1))) {
            for v in Var::ALL {
                let lhs = f.checked_mul(&g).unwrap().partial(v);
                let rhs = f.partial(v).checked_mul(&g).unwrap()
                    .checked_add(&f.checked_mul(&g.partial(v)).unwrap()).unwrap();
                let diff = lhs.checked_add(&rhs.neg()).unwrap();
                let max = diff.terms().values().map(|c| c.max_coeff_norm()).fold(0.0, f64::max);
                prop_assert!(max < 1e-9);
            }
        }

        #[test]
        fn eval_is_multiplicative(f in arb_poly(rat(4,1)), g in arb_poly(rat(4,1)), pt in arb_unit_point(rat(4,1))) {
            let lhs = f.checked_mul(&g).unwrap().eval(&pt).unwrap();
            let rhs = f.eval(&pt).unwrap().checked_mul(&g.eval(&pt).unwrap()).unwrap();
            prop_assert!(lhs.checked_sub(&rhs).unwrap().max_coeff_norm() < 1e-8);
        }

        #[test]
        fn partial_commutes_with_swap(f in arb_poly(rat(4,1))) {
            for v in Var::ALL {
                let lhs = f.swap_xy().partial(v);
                let rhs = f.partial(v.swapped()).swap_xy();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

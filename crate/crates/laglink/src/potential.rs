//! Assembly of the bulk-deformed superpotential over the Novikov ring.
//!
//! The torus link is parametrized by three positive rationals: `B` and `C`
//! (large-sphere areas; the two link circles bound the area-`C` cylinder) and
//! `a` (small-sphere area). Non-displaceability requires `0 < a < B - C`,
//! equivalently `B - a - C > 0`, which is also what makes the orbifold bulk
//! scale `T^{B-a-C}` available.
//!
//! The potential splits into
//! - the smooth-disc part (eight Maslov-2 disc families),
//! - the annulus correction `± T^B (x₁y₁)^{-1}(x₂+y₂)` produced by the
//!   orbifold bulk with `b_orb²/2 = T^{B-a-C}`,
//! - an unknown higher-order tail whose coefficient exponents must lie in
//!   `(a+G) ∩ (B+G)` for the exponent monoid `G = <B-a-C, C>`.
//!
//! `safe_cutoff` returns the T-order below which the known terms are provably
//! the whole potential; everything at or above it is handled as admissible
//! tail, never claimed exactly.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial};
use crate::novikov::{AdmissibilityFilter, ExponentMonoid, NovikovError, NovikovScalar};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PotentialError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: Rat },
    #[error("hypothesis 0 < a < B - C fails (equivalently B - a - C > 0): B={b}, C={c}, a={a}, B-a-C={gap}")]
    HypothesisViolated { b: Rat, c: Rat, a: Rat, gap: Rat },
    #[error("cutoff {cutoff} is below the safe exactness cutoff {safe}")]
    CutoffBelowSafe { cutoff: Rat, safe: Rat },
    #[error("cutoff {0} must be positive")]
    InvalidCutoff(Rat),
    #[error("bulk parameter b1 must have positive valuation, got {0}")]
    UnitBulkParameter(Rat),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

/// Annulus contribution sign; the lifting argument is symmetric in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum AnnulusSign {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl AnnulusSign {
    pub fn factor(self) -> f64 {
        match self {
            AnnulusSign::Plus => 1.0,
            AnnulusSign::Minus => -1.0,
        }
    }
}

/// Area parameters of the link configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub b: Rat,
    pub c: Rat,
    pub a: Rat,
    #[serde(default)]
    pub sign_annulus: AnnulusSign,
}

impl ModelParams {
    pub fn new(b: Rat, c: Rat, a: Rat, sign_annulus: AnnulusSign) -> Result<Self, PotentialError> {
        let p = ModelParams {
            b,
            c,
            a,
            sign_annulus,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        for (name, value) in [("B", self.b), ("C", self.c), ("a", self.a)] {
            if !value.is_positive() {
                return Err(PotentialError::NonPositive { name, value });
            }
        }
        if self.gap() <= Rat::ZERO {
            return Err(PotentialError::HypothesisViolated {
                b: self.b,
                c: self.c,
                a: self.a,
                gap: self.gap(),
            });
        }
        Ok(())
    }

    /// `B - a - C`, the valuation of the orbifold bulk square.
    pub fn gap(&self) -> Rat {
        self.b - self.a - self.c
    }

    /// The exponent monoid `G = <B-a-C, C>` carrying all corrections.
    pub fn monoid(&self) -> ExponentMonoid {
        ExponentMonoid::new(vec![self.gap(), self.c]).expect("validated params")
    }

    /// Filter for tail coefficients: exponents in `(a+G) ∩ (B+G)`.
    pub fn tail_filter(&self) -> AdmissibilityFilter {
        AdmissibilityFilter::new(self.monoid(), vec![self.a, self.b])
    }
}

/// Orbifold and divisor bulk parameters. Only the square of the orbifold
/// parameter ever enters a computed term, so the square is what is stored;
/// in the default normalization it is pinned to `T^{B-a-C}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkParams {
    pub b1: NovikovScalar,
    pub b_orb_squared_half: NovikovScalar,
}

impl BulkParams {
    /// Default bulk: `b1 = 0`, `b_orb²/2 = T^{B-a-C}`.
    pub fn standard(params: &ModelParams, cutoff: Rat) -> Self {
        BulkParams {
            b1: NovikovScalar::zero(cutoff),
            b_orb_squared_half: NovikovScalar::monomial(
                Complex64::new(1.0, 0.0),
                params.gap(),
                cutoff,
            ),
        }
    }

    pub fn with_b1(params: &ModelParams, b1: NovikovScalar) -> Result<Self, PotentialError> {
        if !b1.is_zero() && b1.valuation() <= Rat::ZERO {
            return Err(PotentialError::UnitBulkParameter(b1.valuation()));
        }
        let cutoff = b1.cutoff();
        let mut bulk = Self::standard(params, cutoff);
        bulk.b1 = b1;
        Ok(bulk)
    }
}

/// One disc-class lattice element over the basis
/// `(β₁,₁, β₁,₂, β₂,₁, β₂,₂, δ₁, δ₂)` with its derived area, boundary
/// monomial, and intersection number with the small-sphere divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscClass {
    pub coords: [i64; 6],
    pub area: Rat,
    pub boundary_monomial: Monomial,
    pub ds1_intersection: u32,
}

impl DiscClass {
    pub fn new(coords: [i64; 6], boundary_monomial: Monomial, params: &ModelParams) -> Self {
        let ds1 = (coords[0].max(0) + coords[2].max(0)) as u32;
        DiscClass {
            coords,
            area: class_area(&coords, params),
            boundary_monomial,
            ds1_intersection: ds1,
        }
    }
}

/// Area vector pairing `(B, a, B, a, C, 0)`.
pub fn class_area(coords: &[i64; 6], params: &ModelParams) -> Rat {
    let weights = [params.b, params.a, params.b, params.a, params.c, Rat::ZERO];
    coords
        .iter()
        .zip(weights)
        .map(|(k, w)| w.scale(*k as i128))
        .fold(Rat::ZERO, |acc, x| acc + x)
}

/// The eight smooth Maslov-2 disc classes, in deterministic order.
///
/// Dictionary (anchor ray direction ↔ class ↔ term):
/// from the first anchor, rays `(-1,0)`, `(0,-1)`, `(1,0)`, `(0,1)` give
/// `T^B x₁`, `T^a x₂⁻¹`, `T^{B+C} x₁⁻¹`, `T^a x₂`; from the second anchor the
/// mirrored rays give the `y`-terms. The divisor intersection is 1 exactly
/// for the `T^B` and `T^{B+C}` classes.
pub fn standard_disc_classes(params: &ModelParams) -> Vec<DiscClass> {
    let entries: [([i64; 6], [i32; 4]); 8] = [
        ([1, 0, 0, 0, 0, 0], [1, 0, 0, 0]),  // β11 -> T^B x1
        ([0, 1, 0, 0, 0, 0], [0, -1, 0, 0]), // β12 -> T^a x2^{-1}
        ([0, 0, 1, 0, 1, 0], [-1, 0, 0, 0]), // β21+δ1 -> T^{B+C} x1^{-1}
        ([0, 0, 0, 1, 0, 1], [0, 1, 0, 0]),  // β22+δ2 -> T^a x2
        ([0, 0, 1, 0, 0, 0], [0, 0, 1, 0]),  // β21 -> T^B y1
        ([0, 0, 0, 1, 0, 0], [0, 0, 0, -1]), // β22 -> T^a y2^{-1}
        ([1, 0, 0, 0, 1, 0], [0, 0, -1, 0]), // β11+δ1 -> T^{B+C} y1^{-1}
        ([0, 1, 0, 0, 0, 1], [0, 0, 0, 1]),  // β12+δ2 -> T^a y2
    ];
    entries
        .into_iter()
        .map(|(coords, exps)| DiscClass::new(coords, Monomial(exps), params))
        .collect()
}

/// Smooth-disc part of the potential:
/// `T^a(x₂⁻¹+y₂⁻¹+x₂+y₂) + T^B(x₁+y₁) + T^{B+C}(x₁⁻¹+y₁⁻¹)`.
pub fn build_w_smooth(params: &ModelParams, cutoff: Rat) -> Result<LaurentPoly, PotentialError> {
    if !cutoff.is_positive() {
        return Err(PotentialError::InvalidCutoff(cutoff));
    }
    params.validate()?;
    let mut w = LaurentPoly::zero(cutoff);
    for class in standard_disc_classes(params) {
        w.add_term(
            class.boundary_monomial,
            NovikovScalar::monomial(Complex64::new(1.0, 0.0), class.area, cutoff),
        );
    }
    Ok(w)
}

/// Deform the smooth part by the divisor bulk parameter: each term picks up
/// `exp(b1)^(divisor intersection)` of its source class. Classes with
/// intersection 0 are bit-identical before and after.
pub fn apply_smooth_bulk(
    w: &LaurentPoly,
    b1: &NovikovScalar,
    registry: &[DiscClass],
) -> Result<LaurentPoly, PotentialError> {
    if !b1.is_zero() && b1.valuation() <= Rat::ZERO {
        return Err(PotentialError::UnitBulkParameter(b1.valuation()));
    }
    let exp_b1 = b1.with_cutoff(w.cutoff()).exp()?;
    let mut out = w.clone();
    for class in registry {
        if class.ds1_intersection == 0 {
            continue;
        }
        let coeff = out.coeff(&class.boundary_monomial);
        if coeff.is_zero() {
            continue;
        }
        let mut deformed = coeff.clone();
        for _ in 0..class.ds1_intersection {
            deformed = deformed.checked_mul(&exp_b1)?;
        }
        out.add_term(class.boundary_monomial, coeff.neg());
        out.add_term(class.boundary_monomial, deformed);
    }
    Ok(out)
}

/// Lowest-order annulus contribution:
/// `sign · (b_orb²/2) · T^{a+C} (x₁y₁)⁻¹ (x₂+y₂)`;
/// with the standard bulk this is `± T^B (x₁y₁)⁻¹ (x₂+y₂)`.
pub fn annulus_term(
    params: &ModelParams,
    bulk: &BulkParams,
    cutoff: Rat,
) -> Result<LaurentPoly, PotentialError> {
    params.validate()?;
    let scale = bulk
        .b_orb_squared_half
        .with_cutoff(cutoff)
        .shift(params.a + params.c)?
        .with_cutoff(cutoff)
        .scale(Complex64::new(params.sign_annulus.factor(), 0.0));
    let mut out = LaurentPoly::zero(cutoff);
    out.add_term(Monomial([-1, 1, -1, 0]), scale.clone()); // (x1 y1)^{-1} x2
    out.add_term(Monomial([-1, 0, -1, 1]), scale); // (x1 y1)^{-1} y2
    Ok(out)
}

/// Smallest T-valuation over all contribution families that are not computed
/// exactly.
///
/// A genus-`g` family over base class `β` with `η₁ ≥ 1` cylinder wraps
/// carries valuation `(g+1)(B-a-C) + area(β) + η₁·C` (the orbifold factor
/// `b_orb^{2g+2}/(2g+2)!` contributes `(g+1)(B-a-C)`; the vertical wrap count
/// has area 0 and never enters). Excluded from the minimum: the computed
/// annulus family (`g=0, η₁=1`, small-area base, single vertical wrap) and
/// the nonexistent families (`η₁=1`, small-area base, vertical wrap ≥ 2).
/// Valuations grow in every index, so small bounds exhaust the minimum.
pub fn safe_cutoff(params: &ModelParams) -> Result<Rat, PotentialError> {
    params.validate()?;
    let gap = params.gap();
    let mut best: Option<Rat> = None;
    for g in 0..=3i128 {
        for eta1 in 1..=4i128 {
            for eta2 in 1..=2i128 {
                for base_area in [params.a, params.b] {
                    let small_base = base_area == params.a;
                    let computed_annulus = g == 0 && eta1 == 1 && small_base && eta2 == 1;
                    let nonexistent = eta1 == 1 && small_base && eta2 >= 2;
                    if computed_annulus || nonexistent {
                        continue;
                    }
                    let val = gap.scale(g + 1) + base_area + params.c.scale(eta1);
                    best = Some(match best {
                        Some(b) if b <= val => b,
                        _ => val,
                    });
                }
            }
        }
    }
    Ok(best.expect("nonempty enumeration"))
}

/// Tail monomial support bounds: wrap exponents up to 3 each, at most 8
/// mirror-monomial pairs. The vertical wrap has area zero, so no finite
/// valuation bound can cap it; a fixed sampling bound keeps runs
/// deterministic while still exercising fully general admissible tails.
const TAIL_MAX_WRAP: i32 = 3;
const TAIL_MAX_MONOMIALS: usize = 8;

/// Deterministic random admissible tail: a swap-symmetric polynomial whose
/// coefficient exponents all lie in `(a+G) ∩ (B+G)` at or above the safe
/// cutoff. May be empty.
pub fn sample_admissible_tail(
    params: &ModelParams,
    cutoff: Rat,
    seed: u64,
) -> Result<LaurentPoly, PotentialError> {
    params.validate()?;
    let safe = safe_cutoff(params)?;
    if cutoff < safe {
        return Err(PotentialError::CutoffBelowSafe { cutoff, safe });
    }
    let filter = params.tail_filter();
    let admissible: Vec<Rat> = params
        .monoid()
        .elements(cutoff)
        .into_iter()
        .map(|g| params.a + g)
        .filter(|lambda| *lambda >= safe && *lambda < cutoff && filter.accepts_exponent(*lambda))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tail = LaurentPoly::zero(cutoff);
    if admissible.is_empty() {
        return Ok(tail);
    }
    let n_monomials = rng.gen_range(0..=TAIL_MAX_MONOMIALS);
    for _ in 0..n_monomials {
        let eta1 = rng.gen_range(1..=TAIL_MAX_WRAP);
        let eta2 = rng.gen_range(1..=TAIL_MAX_WRAP);
        // Base factor: x1, x2^{-1}, y1 or y2^{-1}.
        let base = match rng.gen_range(0..4) {
            0 => Monomial([1, 0, 0, 0]),
            1 => Monomial([0, -1, 0, 0]),
            2 => Monomial([0, 0, 1, 0]),
            _ => Monomial([0, 0, 0, -1]),
        };
        let shape = Monomial([-eta1, eta2, -eta1, eta2]).mul(&base);
        let lambda = admissible[rng.gen_range(0..admissible.len())];
        let coeff = NovikovScalar::monomial(
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            lambda,
            cutoff,
        );
        // Insert the monomial together with its mirror so the tail stays
        // swap-symmetric term by term.
        tail.add_term(shape, coeff.clone());
        if shape.swap_xy() != shape {
            tail.add_term(shape.swap_xy(), coeff);
        }
    }
    Ok(tail)
}

/// Full potential: bulk-deformed smooth part + annulus term + tail,
/// truncated at `cutoff`.
pub fn assemble(
    params: &ModelParams,
    bulk: &BulkParams,
    tail: &LaurentPoly,
    cutoff: Rat,
) -> Result<LaurentPoly, PotentialError> {
    params.validate()?;
    let safe = safe_cutoff(params)?;
    if cutoff < safe {
        return Err(PotentialError::CutoffBelowSafe { cutoff, safe });
    }
    let smooth = build_w_smooth(params, cutoff)?;
    let registry = standard_disc_classes(params);
    let deformed = apply_smooth_bulk(&smooth, &bulk.b1.with_cutoff(cutoff), &registry)?;
    let annulus = annulus_term(params, bulk, cutoff)?;
    let w = deformed
        .checked_add(&annulus)?
        .checked_add(&tail.with_cutoff(cutoff))?;
    Ok(w)
}

//! Critical points of the symmetric potential: leading-order roots,
//! order-by-order lifting along the exponent monoid, and the
//! non-displaceability verdict.
//!
//! On the symmetric locus `y₁=x₁, y₂=x₂` the four critical-point equations
//! collapse to two. After dividing out the unit normalizers `T^a` and `T^B`,
//! the reduced system with empty tail reads
//!
//! ```text
//! E1 = (-x₂⁻² + 1) + T^{B-a} x₁⁻²
//! E2 = e^{b₁} + e^{b₁} T^C (-x₁⁻²) ∓ 2 x₁⁻³ x₂
//! ```
//!
//! whose leading (T⁰) part is `x₂² = 1`, `x₁³ = ±2x₂` — six simple roots.
//! Every correction exponent lies in the monoid `G = <B-a-C, C>`: the lifter
//! walks the elements of `G` below the certification cutoff in increasing
//! order, reads off the residual coefficients `c₁, c₂` at `T^g`, and cancels
//! them by a 2×2 solve against the order-zero Jacobian in `(δx₂, δb₁)`,
//! holding `x₁` fixed. The Jacobian is triangular with entries `±2` and `1`
//! at all six roots, so the scheme is well posed; the solve is still written
//! as a general 2×2 system and the singular case is reported defensively.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::novikov::{NovikovError, NovikovScalar, ScalarRecord, DEFAULT_PRUNE};
use crate::potential::{
    annulus_term, build_w_smooth, standard_disc_classes, BulkParams, ModelParams, PotentialError,
};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CriticalError {
    #[error("potential is not symmetric under the x/y swap")]
    AsymmetricPotential,
    #[error("coordinate is not a unit (valuation {0})")]
    NonUnitCoordinate(Rat),
    #[error("leading Jacobian is singular at step T^{step} (|det| = {det:.3e})")]
    SingularJacobian { step: Rat, det: f64 },
    #[error("residual has valuation {found} below the current step T^{step}")]
    ResidualBelowStep { step: Rat, found: Rat },
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

/// The two reduced equations (variables `x₁, x₂` only; the `y` slots of every
/// monomial are zero after folding) together with the divided-out unit
/// normalizers `(T^a, T^B)` and the bulk value they were built at.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub e1: LaurentPoly,
    pub e2: LaurentPoly,
    pub normalizers: (Rat, Rat),
    pub b1: NovikovScalar,
}

/// Substitute `y₁ := x₁, y₂ := x₂` by folding the `y` exponents onto `x`.
fn fold_symmetric(poly: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(poly.cutoff());
    for (m, c) in poly.terms() {
        let [a, b, yc, yd] = m.0;
        out.add_term(Monomial([a + yc, b + yd, 0, 0]), c.clone());
    }
    out
}

/// Reduce a swap-symmetric potential to the two normalized equations:
/// substitute the symmetric point into `∂_{x₂}W` and `∂_{x₁}W` and divide by
/// `T^a` resp. `T^B`. The output cutoffs drop by the normalizers.
pub fn reduce_symmetric(
    w: &LaurentPoly,
    params: &ModelParams,
    b1: &NovikovScalar,
) -> Result<ReducedSystem, CriticalError> {
    if !w.is_swap_symmetric() {
        return Err(CriticalError::AsymmetricPotential);
    }
    params.validate()?;
    let e1 = fold_symmetric(&w.partial(Var::X2)).shift(-params.a)?;
    let e2 = fold_symmetric(&w.partial(Var::X1)).shift(-params.b)?;
    Ok(ReducedSystem {
        e1,
        e2,
        normalizers: (params.a, params.b),
        b1: b1.clone(),
    })
}

/// The six leading-order roots `(x₁⁰, x₂⁰)` of `x₂² = 1`, `x₁³ = ±2x₂`,
/// ordered by `x₂` and then by the argument of `x₁`. Each root is verified to
/// satisfy both equations to 1e-10 before being returned.
pub fn solve_leading(params: &ModelParams) -> Vec<(Complex64, Complex64)> {
    let sign = params.sign_annulus.factor();
    let mut roots = Vec::with_capacity(6);
    for x2 in [-1.0f64, 1.0] {
        let target = 2.0 * sign * x2; // x1^3
        let radius = target.abs().powf(1.0 / 3.0);
        let base_arg = if target >= 0.0 {
            0.0
        } else {
            std::f64::consts::PI
        };
        let mut cube_roots: Vec<Complex64> = (0..3)
            .map(|k| {
                Complex64::from_polar(
                    radius,
                    (base_arg + 2.0 * std::f64::consts::PI * k as f64) / 3.0,
                )
            })
            .map(|z| {
                // Fold arguments into (-pi, pi] for a stable sort order.
                let arg = z.arg();
                Complex64::from_polar(radius, arg)
            })
            .collect();
        cube_roots.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
        for x1 in cube_roots {
            let x2c = Complex64::new(x2, 0.0);
            let r1 = (-(x2c.powi(-2)) + 1.0).norm();
            let r2 = (Complex64::new(1.0, 0.0) + sign * (-2.0) * x1.powi(-3) * x2c).norm();
            debug_assert!(r1 < 1e-10 && r2 < 1e-10);
            roots.push((x1, x2c));
        }
    }
    roots
}

/// A lifted critical point: unit coordinate series, the co-solved divisor
/// bulk parameter, and how far the residuals were certified.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSolution {
    pub x1: NovikovScalar,
    pub x2: NovikovScalar,
    pub b1: NovikovScalar,
    pub residual_valuation: Rat,
    pub lifted_to: Rat,
    /// Which reduced equation attained the minimal residual valuation.
    pub worst_equation: &'static str,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolutionRecord {
    pub x1: ScalarRecord,
    pub x2: ScalarRecord,
    pub b1: ScalarRecord,
    pub residual_valuation: Rat,
    pub lifted_to: Rat,
}

impl CriticalSolution {
    pub fn to_record(&self) -> SolutionRecord {
        SolutionRecord {
            x1: self.x1.to_records(),
            x2: self.x2.to_records(),
            b1: self.b1.to_records(),
            residual_valuation: self.residual_valuation,
            lifted_to: self.lifted_to,
        }
    }
}

/// Structured reduced system used by the lifter: `E1` is independent of the
/// bulk parameter, `E2 = e^{b₁}·P + Q`. Building the parts separately keeps
/// the per-step update cheap and keeps the `e^{b₁}` factor exact.
struct LiftSystem {
    e1: LaurentPoly,
    p_poly: LaurentPoly,
    q_poly: LaurentPoly,
}

impl LiftSystem {
    /// Assemble the normalized parts at working precision `cutoff + B`, then
    /// truncate everything to `cutoff`: terms of the potential up to
    /// `cutoff + B` still matter for the divided equations modulo `T^cutoff`.
    fn build(params: &ModelParams, tail: &LaurentPoly, cutoff: Rat) -> Result<Self, CriticalError> {
        let work = cutoff + params.b;
        let smooth = build_w_smooth(params, work)?;
        let registry = standard_disc_classes(params);
        let mut group0 = LaurentPoly::zero(work); // divisor intersection 0
        let mut group1 = LaurentPoly::zero(work); // divisor intersection >= 1
        for class in &registry {
            let coeff = smooth.coeff(&class.boundary_monomial);
            if class.ds1_intersection == 0 {
                group0.add_term(class.boundary_monomial, coeff);
            } else {
                group1.add_term(class.boundary_monomial, coeff);
            }
        }
        let bulk = BulkParams::standard(params, work);
        let ann = annulus_term(params, &bulk, work)?;
        let fixed = group0
            .checked_add(&ann)?
            .checked_add(&tail.with_cutoff(work))?;

        let e1 = fold_symmetric(&fixed.partial(Var::X2))
            .shift(-params.a)?
            .with_cutoff(cutoff);
        let p_poly = fold_symmetric(&group1.partial(Var::X1))
            .shift(-params.b)?
            .with_cutoff(cutoff);
        let q_poly = fold_symmetric(&fixed.partial(Var::X1))
            .shift(-params.b)?
            .with_cutoff(cutoff);
        Ok(LiftSystem { e1, p_poly, q_poly })
    }

    fn eval_pair(
        &self,
        x1: &NovikovScalar,
        x2: &NovikovScalar,
        exp_b1: &NovikovScalar,
    ) -> Result<(NovikovScalar, NovikovScalar), CriticalError> {
        let one = NovikovScalar::one(x1.cutoff());
        let point = [x1.clone(), x2.clone(), one.clone(), one];
        let e1 = self.e1.eval(&point)?;
        let e2 = exp_b1
            .checked_mul(&self.p_poly.eval(&point)?)?
            .checked_add(&self.q_poly.eval(&point)?)?;
        Ok((e1, e2))
    }

    /// Order-zero value of `∂f/∂x₂` and friends at the leading root.
    fn leading_value(poly: &LaurentPoly, x1: Complex64, x2: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in poly.terms() {
            let c0 = c.coeff(Rat::ZERO);
            if c0.norm() == 0.0 {
                continue;
            }
            acc += c0 * x1.powi(m.0[0]) * x2.powi(m.0[1]);
        }
        acc
    }
}

/// Lift one leading root to a critical point modulo `T^cutoff`, co-solving
/// for the divisor bulk parameter. `x₁` is held fixed throughout.
pub fn lift(
    start: (Complex64, Complex64),
    params: &ModelParams,
    tail: &LaurentPoly,
    cutoff: Rat,
) -> Result<CriticalSolution, CriticalError> {
    params.validate()?;
    let (x1_0, x2_0) = start;
    if !cutoff.is_positive() {
        // Degenerate request: nothing to solve modulo T^0, but the starting
        // coefficients still need one unit of formal precision to be stored.
        let keep = Rat::ONE;
        return Ok(CriticalSolution {
            x1: NovikovScalar::constant(x1_0, keep),
            x2: NovikovScalar::constant(x2_0, keep),
            b1: NovikovScalar::zero(keep),
            residual_valuation: Rat::ZERO,
            lifted_to: cutoff,
            worst_equation: "none (empty step list)",
        });
    }
    let system = LiftSystem::build(params, tail, cutoff)?;

    let x1 = NovikovScalar::constant(x1_0, cutoff);
    let mut x2 = NovikovScalar::constant(x2_0, cutoff);
    let mut b1 = NovikovScalar::zero(cutoff);
    let mut exp_b1 = NovikovScalar::one(cutoff);

    // Order-zero Jacobian in (dx2, db1); constant along the lift.
    let j11 = LiftSystem::leading_value(&system.e1.partial(Var::X2), x1_0, x2_0);
    let j12 = Complex64::new(0.0, 0.0);
    let j21 = LiftSystem::leading_value(&system.q_poly.partial(Var::X2), x1_0, x2_0);
    let j22 = LiftSystem::leading_value(&system.p_poly, x1_0, x2_0);
    let det = j11 * j22 - j12 * j21;

    let steps: Vec<Rat> = params
        .monoid()
        .elements(cutoff)
        .into_iter()
        .filter(|g| g.is_positive())
        .collect();

    for &g in &steps {
        let (e1_val, e2_val) = system.eval_pair(&x1, &x2, &exp_b1)?;
        for r in [&e1_val, &e2_val] {
            if r.valuation() < g {
                return Err(CriticalError::ResidualBelowStep {
                    step: g,
                    found: r.valuation(),
                });
            }
        }
        let c1 = e1_val.coeff(g);
        let c2 = e2_val.coeff(g);
        if c1.norm() < DEFAULT_PRUNE && c2.norm() < DEFAULT_PRUNE {
            continue;
        }
        if det.norm() < 1e-9 {
            return Err(CriticalError::SingularJacobian {
                step: g,
                det: det.norm(),
            });
        }
        let dx2 = (j22 * (-c1) - j12 * (-c2)) / det;
        let db1 = (j11 * (-c2) - j21 * (-c1)) / det;
        x2 = x2.checked_add(&NovikovScalar::monomial(dx2, g, cutoff))?;
        if db1.norm() >= DEFAULT_PRUNE {
            let delta = NovikovScalar::monomial(db1, g, cutoff);
            b1 = b1.checked_add(&delta)?;
            exp_b1 = exp_b1.checked_mul(&delta.exp()?)?;
        }
    }

    let (e1_val, e2_val) = system.eval_pair(&x1, &x2, &exp_b1)?;
    let (residual_valuation, worst_equation) = if e1_val.valuation() <= e2_val.valuation() {
        (e1_val.valuation(), "E1 (x2-direction)")
    } else {
        (e2_val.valuation(), "E2 (x1-direction)")
    };
    Ok(CriticalSolution {
        x1,
        x2,
        b1,
        residual_valuation,
        lifted_to: cutoff,
        worst_equation,
    })
}

/// Independent check: evaluate all four partials of a fully assembled
/// potential at `(x₁, x₂, y₁=x₁, y₂=x₂)`, divide out the normalizers, and
/// return the minimum residual valuation.
pub fn verify_critical(
    w: &LaurentPoly,
    params: &ModelParams,
    sol: &CriticalSolution,
) -> Result<Rat, CriticalError> {
    let cut = w.cutoff();
    let x1 = sol.x1.with_cutoff(cut);
    let x2 = sol.x2.with_cutoff(cut);
    if !x1.is_unit() || !x2.is_unit() {
        return Err(CriticalError::NonUnitCoordinate(
            if x1.is_unit() { x2 } else { x1 }.valuation(),
        ));
    }
    let point = [x1.clone(), x2.clone(), x1, x2];
    let mut min_val: Option<Rat> = None;
    for (var, normalizer) in [
        (Var::X1, params.b),
        (Var::Y1, params.b),
        (Var::X2, params.a),
        (Var::Y2, params.a),
    ] {
        let residual = w.partial(var).eval(&point)?.shift(-normalizer)?;
        let v = residual.valuation();
        min_val = Some(match min_val {
            Some(m) if m <= v => m,
            _ => v,
        });
    }
    Ok(min_val.expect("four partials"))
}

/// Non-displaceability verdict over a batch of lifted solutions.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Verdict {
    pub certified: bool,
    pub distinct_count: usize,
    pub level: Rat,
    pub solutions_total: usize,
    pub diagnostic: Option<String>,
}

/// Certificate iff at least one solution has unit coordinates and residual
/// valuation at or beyond the requested level. Distinctness is measured on
/// leading coefficients with threshold 1e-6.
pub fn verdict(solutions: &[CriticalSolution], level: Rat) -> Verdict {
    let good: Vec<&CriticalSolution> = solutions
        .iter()
        .filter(|s| s.x1.is_unit() && s.x2.is_unit() && s.residual_valuation >= level)
        .collect();

    let mut distinct: Vec<(Complex64, Complex64)> = Vec::new();
    for s in &good {
        let lead = (s.x1.leading_coeff(), s.x2.leading_coeff());
        let is_new = distinct
            .iter()
            .all(|(a, b)| (lead.0 - a).norm() + (lead.1 - b).norm() > 1e-6);
        if is_new {
            distinct.push(lead);
        }
    }

    let certified = !good.is_empty();
    let diagnostic = if certified {
        None
    } else if solutions.is_empty() {
        Some("no solutions supplied".to_string())
    } else {
        let worst = solutions
            .iter()
            .min_by(|a, b| a.residual_valuation.cmp(&b.residual_valuation))
            .expect("nonempty");
        Some(format!(
            "worst solution stalls at residual valuation {} in {} (level {})",
            worst.residual_valuation, worst.worst_equation, level
        ))
    };
    Verdict {
        certified,
        distinct_count: distinct.len(),
        level,
        solutions_total: solutions.len(),
        diagnostic,
    }
}

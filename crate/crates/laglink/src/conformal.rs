//! Annulus conformal invariants: harmonic measures, the Green's function and
//! its boundary periods, the slit-mapping radius and slit length, and the
//! period inequality that obstructs higher-degree boundary behavior.
//!
//! Geometry: the annulus `A = {r₁ < |z| < 1}` with a marked interior point
//! `a` and a target circle radius `r₀ ∈ (r₁, 1)`. The Green's function
//! `G(z,a)` vanishes on both boundary circles and has a `-log|z-a|` pole.
//!
//! The implementation uses the doubly-infinite image-charge series
//!
//! ```text
//! G(z,a) = Σ_n [ log|z - q^{2n}/ā| - log|z - a q^{2n}| + log|a| ]
//!          + (log|a| / log q) · log|z|,          q = r₁,
//! ```
//!
//! truncated once an image pair contributes less than a tenth of the
//! requested tolerance. The partial sums vanish identically on the unit
//! circle; the `log|z|` correction kills the residual constant on the inner
//! circle. Correctness is checked through the boundary-vanishing and period
//! invariants rather than against a closed form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConformalError {
    #[error("invalid annulus data: need r1 in (0,1), r1 < |a| < 1 and r1 < r0 < 1 (r1={r1}, |a|={a_abs}, r0={r0})")]
    InvalidConfig { r1: f64, a_abs: f64, r0: f64 },
    #[error("point with |z| = {0} outside the closed annulus")]
    OutsideAnnulus(f64),
    #[error("evaluation at the pole z = a")]
    AtPole,
    #[error("inner radius {0} too close to 1 for the image series (need r1 <= 0.95)")]
    RadiusTooLarge(f64),
    #[error("series failed to reach tolerance {tol:e} within {max_pairs} image pairs")]
    SeriesDiverged { tol: f64, max_pairs: usize },
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
}

/// Annulus with inner radius `r1` (outer radius 1), marked point `a`, and
/// target slit radius `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusConfig {
    pub r1: f64,
    pub a_re: f64,
    pub a_im: f64,
    pub r0: f64,
}

impl AnnulusConfig {
    pub fn new(r1: f64, a: Complex64, r0: f64) -> Result<Self, ConformalError> {
        let a_abs = a.norm();
        let ok = r1 > 0.0 && r1 < 1.0 && a_abs > r1 && a_abs < 1.0 && r0 > r1 && r0 < 1.0;
        if !ok {
            return Err(ConformalError::InvalidConfig { r1, a_abs, r0 });
        }
        Ok(AnnulusConfig {
            r1,
            a_re: a.re,
            a_im: a.im,
            r0,
        })
    }

    pub fn a_point(&self) -> Complex64 {
        Complex64::new(self.a_re, self.a_im)
    }
}

/// Boundary circles of the annulus: inner `|z| = r1`, outer `|z| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Inner,
    Outer,
}

/// Harmonic measures `(w0, w1)` at `z`: `w0 = log|z| / log(r1)` is 1 on the
/// inner circle and 0 on the outer one, and `w1 = 1 - w0`.
pub fn harmonic_measures(cfg: &AnnulusConfig, z: Complex64) -> Result<(f64, f64), ConformalError> {
    let r = z.norm();
    let eps = 1e-12;
    if r < cfg.r1 - eps || r > 1.0 + eps {
        return Err(ConformalError::OutsideAnnulus(r));
    }
    let w0 = r.max(cfg.r1).min(1.0).ln() / cfg.r1.ln();
    Ok((w0, 1.0 - w0))
}

/// Outer-boundary period of the Green's function, analytically:
/// `β = 2π·w1(a) ∈ (0, 2π)`.
pub fn beta_from_point(cfg: &AnnulusConfig) -> f64 {
    let (_, w1) = harmonic_measures(cfg, cfg.a_point()).expect("a lies in the annulus");
    2.0 * PI * w1
}

/// Radius of the circle carrying the image slit: `c = (2π-β)·log(r1)/(2π)`,
/// radius `e^c`; always `log(r1) < c < 0`.
pub fn slit_radius(cfg: &AnnulusConfig) -> (f64, f64) {
    let beta = beta_from_point(cfg);
    let c = (2.0 * PI - beta) * cfg.r1.ln() / (2.0 * PI);
    debug_assert!(cfg.r1.ln() < c && c < 0.0);
    (c, c.exp())
}

const MAX_IMAGE_PAIRS: usize = 4000;

fn check_series_domain(cfg: &AnnulusConfig) -> Result<(), ConformalError> {
    if cfg.r1 > 0.95 {
        return Err(ConformalError::RadiusTooLarge(cfg.r1));
    }
    Ok(())
}

/// Green's function of the annulus at `(z, a)` by the image-charge series.
/// Also defined (as the harmonic continuation) slightly outside the closed
/// annulus, which the normal-derivative stencils rely on.
pub fn greens_eval(cfg: &AnnulusConfig, z: Complex64, tol: f64) -> Result<f64, ConformalError> {
    check_series_domain(cfg)?;
    let a = cfg.a_point();
    if (z - a).norm() < 1e-14 {
        return Err(ConformalError::AtPole);
    }
    let q = cfg.r1;
    let abs_a = a.norm();
    let log_abs_a = abs_a.ln();
    let a_conj_inv = 1.0 / a.conj();

    // n = 0 term plus the log|z| correction.
    let mut sum = (z - a_conj_inv).norm().ln() - (z - a).norm().ln() + log_abs_a;
    sum += log_abs_a / q.ln() * z.norm().ln();

    // Image pairs at q^{2n} shrink to the origin and carry no constant;
    // pairs at q^{-2n} recede to infinity and each leaves the constant
    // 2·log|a| behind, so written this way both tails decay to zero and the
    // pair-size stopping rule is sound. The distributed constants still sum
    // to (2N+1)·log|a|, which is exactly what cancels the partial sums on
    // the unit circle.
    let mut q2n_pos = 1.0f64; // q^{2n}
    let mut q2n_neg = 1.0f64; // q^{-2n}
    for n in 1..=MAX_IMAGE_PAIRS {
        q2n_pos *= q * q;
        q2n_neg /= q * q;
        let pair_pos = (z - a_conj_inv * q2n_pos).norm().ln() - (z - a * q2n_pos).norm().ln();
        let pair_neg = (z - a_conj_inv * q2n_neg).norm().ln() - (z - a * q2n_neg).norm().ln()
            + 2.0 * log_abs_a;
        sum += pair_pos + pair_neg;
        if pair_pos.abs() + pair_neg.abs() < tol / 10.0 && n >= 2 {
            return Ok(sum);
        }
    }
    Err(ConformalError::SeriesDiverged {
        tol,
        max_pairs: MAX_IMAGE_PAIRS,
    })
}

/// Radial derivative of the Green's function by a central stencil of width
/// `2h` with `h = 1e-5·(1-r1)`, using the harmonic continuation across the
/// boundary circles.
fn radial_derivative(cfg: &AnnulusConfig, z: Complex64, tol: f64) -> Result<f64, ConformalError> {
    let h = 1e-5 * (1.0 - cfg.r1);
    let dir = z / z.norm();
    let g_plus = greens_eval(cfg, z + dir * h, tol)?;
    let g_minus = greens_eval(cfg, z - dir * h, tol)?;
    Ok((g_plus - g_minus) / (2.0 * h))
}

const QUADRATURE_POINTS: usize = 1024;

/// Boundary period `-∫ ∂G/∂n ds` over one boundary circle (outward normal),
/// by the trapezoidal rule. Equals `2π·w1(a)` on the outer circle and
/// `2π·w0(a)` on the inner one. The periodic trapezoid error decays like
/// `exp(-n·log(1/|a|))`, so 1024 nodes keep the outer-boundary period inside
/// 1e-6 up to `|a| < 0.98`.
pub fn greens_period(
    cfg: &AnnulusConfig,
    boundary: Boundary,
    tol: f64,
) -> Result<f64, ConformalError> {
    check_series_domain(cfg)?;
    let (radius, normal_sign) = match boundary {
        Boundary::Outer => (1.0, 1.0),
        Boundary::Inner => (cfg.r1, -1.0),
    };
    let n = QUADRATURE_POINTS;
    let mut acc = 0.0;
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        let z = Complex64::from_polar(radius, theta);
        let dg_dr = radial_derivative(cfg, z, tol)?;
        acc += -normal_sign * dg_dr;
    }
    // ds = radius · dθ on the circle.
    Ok(acc * 2.0 * PI * radius / n as f64)
}

/// Obstruction margin `4π - (β + 2π·log(r0)/log(r_ratio))` for the period a
/// degree-(q+1) boundary trace would need; positivity certifies that no such
/// map exists. Requires `0 < r_ratio < r0 < 1` and `0 < β < 2π`.
pub fn nonexistence_margin(r_ratio: f64, r0: f64, beta: f64) -> Result<f64, ConformalError> {
    if !(r_ratio > 0.0 && r_ratio < r0 && r0 < 1.0) {
        return Err(ConformalError::Precondition("need 0 < r_ratio < r0 < 1"));
    }
    if !(beta > 0.0 && beta < 2.0 * PI) {
        return Err(ConformalError::Precondition("need 0 < beta < 2*pi"));
    }
    Ok(4.0 * PI - (beta + r0.ln() * 2.0 * PI / r_ratio.ln()))
}

/// Angular length of the image slit: the boundary trace of the slit mapping
/// on the inner circle has argument `H(θ)` with
/// `dH/dθ = r·∂(-G + c·w0)/∂r`; the slit subtends `max H - min H`. The total
/// increment over the full circle vanishes (degree 0 on the inner boundary),
/// which is asserted as a sanity bound.
pub fn slit_length(cfg: &AnnulusConfig, tol: f64) -> Result<f64, ConformalError> {
    check_series_domain(cfg)?;
    let (c, _) = slit_radius(cfg);
    let n = 1024usize;
    let r = cfg.r1;
    let dtheta = 2.0 * PI / n as f64;

    // dH/dθ at the inner-circle sample points.
    let mut dh: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let theta = dtheta * k as f64;
        let z = Complex64::from_polar(r, theta);
        let dg_dr = radial_derivative(cfg, z, tol)?;
        // ∂w0/∂r = 1/(r·log r1).
        dh.push(r * (-dg_dr + c / (r * r.ln())));
    }

    // Cumulative trapezoid for H(θ); track its range.
    let mut h = 0.0f64;
    let mut h_min = 0.0f64;
    let mut h_max = 0.0f64;
    for k in 0..n {
        let next = dh[(k + 1) % n];
        h += 0.5 * (dh[k] + next) * dtheta;
        h_min = h_min.min(h);
        h_max = h_max.max(h);
    }
    // Period on the inner boundary is zero; h has returned to its start.
    if h.abs() > 1e-3 {
        return Err(ConformalError::Precondition(
            "inner-boundary period failed to close",
        ));
    }
    Ok(h_max - h_min)
}

/// One row of the invariant check table emitted by the command-line tool.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConformalChecks {
    pub r1: f64,
    pub a_abs: f64,
    pub r0: f64,
    pub beta: f64,
    pub c: f64,
    pub slit_circle_radius: f64,
    pub radius_matches_a_abs: f64,
    pub period_outer: f64,
    pub period_agreement: f64,
    pub margin: f64,
}

/// Assemble the full check table at tolerance `tol`.
pub fn check_table(cfg: &AnnulusConfig, tol: f64) -> Result<ConformalChecks, ConformalError> {
    let beta = beta_from_point(cfg);
    let (c, radius) = slit_radius(cfg);
    let period_outer = greens_period(cfg, Boundary::Outer, tol)?;
    let margin = nonexistence_margin(cfg.r1, cfg.r0, beta)?;
    Ok(ConformalChecks {
        r1: cfg.r1,
        a_abs: cfg.a_point().norm(),
        r0: cfg.r0,
        beta,
        c,
        slit_circle_radius: radius,
        radius_matches_a_abs: (radius - cfg.a_point().norm()).abs(),
        period_outer,
        period_agreement: (period_outer - beta).abs(),
        margin,
    })
}

//! Index and dimension calculators for the double-cover correspondence.
//!
//! All calculators are total integer functions. Negative values are returned
//! as-is: a negative "dimension" stands for the dimension of the moduli space
//! minus the dimension of its generic automorphism group, and clamping would
//! destroy the additivity identities checked below.

/// Marked-point and cover data for one moduli calculation.
///
/// `k` counts boundary marked points beyond the output point, `l` interior
/// marked points; `orbifold_flags[j]` is true when the `j`-th interior point
/// carries the order-2 isotropy (local multiplicity 2 instead of 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    pub k: u32,
    pub l: u32,
    pub orbifold_flags: Vec<bool>,
    pub chi_s: i64,
    pub mu: i64,
    pub crit_count: u32,
}

impl CoverData {
    pub fn orbifold_count(&self) -> u32 {
        self.orbifold_flags.iter().filter(|&&f| f).count() as u32
    }

    pub fn smooth_count(&self) -> u32 {
        self.orbifold_flags.iter().filter(|&&f| !f).count() as u32
    }
}

/// Euler characteristic of a double branched cover with interior critical
/// points: `χ(Σ) = 2χ(S) − #crit`.
pub fn riemann_hurwitz(chi_s: i64, crit_count: u32) -> i64 {
    2 * chi_s - crit_count as i64
}

/// Dimension of the domain moduli: `(k+1) + 2l − 3`.
pub fn vdim_domain(k: u32, l: u32) -> i64 {
    (k as i64 + 1) + 2 * l as i64 - 3
}

/// Virtual dimension of the map moduli with fixed domain:
/// `2(2 − #orbifold points) + μ`.
pub fn vdim_map(orbifold_count: u32, mu: i64) -> i64 {
    2 * (2 - orbifold_count as i64) + mu
}

/// Total virtual dimension: `4 + (k+1) + 2·#smooth points + μ − 3`.
pub fn vdim_total(k: u32, smooth_count: u32, mu: i64) -> i64 {
    4 + (k as i64 + 1) + 2 * smooth_count as i64 + mu - 3
}

/// Cohomological degree of the output class: `2 − μ`.
pub fn coh_degree(mu: i64) -> i64 {
    2 - mu
}

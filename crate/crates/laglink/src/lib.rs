//! Desk-scale engine for non-displaceability certificates of two-component
//! Lagrangian links in `S²×S²` via critical points of a bulk-deformed
//! superpotential.
//!
//! The pipeline, bottom to top:
//!
//! - [`rat`] / [`novikov`]: exact rational exponents, truncated Novikov-ring
//!   scalars, the exponent monoid `G = <B-a-C, C>` and its admissibility
//!   filter;
//! - [`laurent`]: sparse Laurent polynomials in `(x₁, x₂, y₁, y₂)` over
//!   Novikov scalars, with partials, evaluation and the `x↔y` swap;
//! - [`tropical`]: enumeration of Maslov-2 broken tropical curves anchored at
//!   two planar points, with homology classes and areas;
//! - [`potential`]: assembly of the smooth, bulk-deformed and annulus-corrected
//!   superpotential, the safe exactness cutoff, and admissible random tails;
//! - [`critical`]: leading-order roots, order-by-order lifting along the
//!   exponent monoid (co-solving the divisor bulk parameter), and the
//!   non-displaceability verdict;
//! - [`dims`]: index and dimension calculators for the double-cover
//!   correspondence;
//! - [`conformal`]: numerical annulus invariants (harmonic measures, Green's
//!   function periods, slit radius/length, non-existence margin);
//! - [`pipeline`] / [`svg`]: run configuration, deterministic reports and SVG
//!   rendering of tropical curves.

#![allow(clippy::result_large_err)]

pub mod conformal;
pub mod critical;
pub mod dims;
pub mod laurent;
pub mod novikov;
pub mod pipeline;
pub mod potential;
pub mod rat;
pub mod svg;
pub mod tropical;

pub use novikov::{AdmissibilityFilter, ExponentMonoid, NovikovScalar};
pub use rat::Rat;

//! Computational stochastic geometry on the unit sphere.
//!
//! The crate builds convex hulls of points sampled from densities on
//! `∂B_n` (2 ≤ n ≤ 10), evaluates facet functionals of the form
//! `Σ_F dist(o,F)^a · vol_{n-1}(F)^b`, and compares Monte Carlo estimates
//! of their expectations against closed-form asymptotic constants.
//!
//! Module map:
//! - [`geometry`]: hulls, facets, and the facet functionals themselves.
//! - [`sampling`]: densities on the sphere, rejection sampling, spherical
//!   integrals, and reproducible random streams.
//! - [`theory`]: closed-form constants (simplex moments, asymptotic
//!   prefactors, deficit constants) and cap geometry.
//! - [`oracles`]: independent ground truth — the exact circle-spacing
//!   integral, brute-force moments, and identity checks.
//! - [`harness`]: replicated experiments, rate fitting and reports.

pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod oracles;
pub mod quad;
pub mod sampling;
pub mod special;
pub mod theory;

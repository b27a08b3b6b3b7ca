//! Densities on the sphere, reproducible random streams, and Monte Carlo
//! spherical integrals.

mod density;
pub mod rng;

pub use density::{
    marginal_integral, sphere_integral, uniform_on_sphere, weighted_cap_measure, Density,
    DensityError, DensityFamily, SphereIntegralEstimate,
};
pub use rng::{stream, Purpose};

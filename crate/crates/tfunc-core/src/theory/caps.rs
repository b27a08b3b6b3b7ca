//! Sphere measures, ball volumes, and spherical cap geometry.
//!
//! A cap is parametrized by the hyperplane offset h ∈ [0, 1] (height
//! z = 1 - h, radius r = √(1-h²)). Areas use closed forms in dimensions
//! 2 and 3 and adaptive quadrature of `ω_{n-1} ∫ sin^{n-2}` elsewhere;
//! the inverse is a bisection. The two sandwich checks bound the cap
//! radius by powers of the (weighted) cap area.

use rand_chacha::ChaCha8Rng;

use crate::geometry::UnitVector;
use crate::quad;
use crate::sampling::{weighted_cap_measure, Density, DensityError, SphereIntegralEstimate};
use crate::special::ln_gamma;

use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum TheoryError {
    #[error("argument out of range: {what}")]
    OutOfRange { what: String },
    #[error(transparent)]
    Quadrature(#[from] quad::QuadError),
    #[error(transparent)]
    Density(#[from] DensityError),
}

/// μ(∂B_k) = 2 π^{k/2} / Γ(k/2), the surface measure of the unit sphere
/// in R^k (so k = 1 gives 2, the counting measure of {±1}).
pub fn sphere_measure(k: usize) -> f64 {
    assert!(k >= 1);
    let kf = k as f64;
    (2.0f64.ln() + 0.5 * kf * PI.ln() - ln_gamma(0.5 * kf)).exp()
}

/// vol_k(B_k) = π^{k/2} / Γ(k/2 + 1).
pub fn ball_volume(k: usize) -> f64 {
    assert!(k >= 1);
    let kf = k as f64;
    (0.5 * kf * PI.ln() - ln_gamma(0.5 * kf + 1.0)).exp()
}

/// Unweighted surface area of the cap {x ∈ ∂B_n : ⟨x,u⟩ ≥ h}, h ∈ [0, 1]:
/// `ω_{n-1} ∫_h^1 (1-t²)^{(n-3)/2} dt`, evaluated as `∫_0^{arccos h}
/// sin^{n-2}φ dφ` to keep the n = 2 endpoint integrable.
pub fn cap_surface_area(n: usize, h: f64) -> Result<f64, TheoryError> {
    if !(0.0..=1.0).contains(&h) {
        return Err(TheoryError::OutOfRange {
            what: format!("cap offset h = {h} outside [0, 1]"),
        });
    }
    match n {
        2 => Ok(2.0 * h.acos()),
        3 => Ok(2.0 * PI * (1.0 - h)),
        _ => {
            let omega = sphere_measure(n - 1);
            let q = quad::integrate(
                |phi: f64| phi.sin().powi(n as i32 - 2),
                0.0,
                h.acos(),
                quad::DEFAULT_REL_TOL,
            )?;
            Ok(omega * q.value)
        }
    }
}

/// Inverse of [`cap_surface_area`] in h, by bisection to 1e-12.
pub fn cap_h_from_area(n: usize, s: f64) -> Result<f64, TheoryError> {
    let s_max = cap_surface_area(n, 0.0)?;
    if !(0.0..=s_max).contains(&s) {
        return Err(TheoryError::OutOfRange {
            what: format!("cap area {s} outside [0, {s_max}]"),
        });
    }
    let mut lo = 0.0f64; // S(0) = s_max ≥ s
    let mut hi = 1.0f64; // S(1) = 0 ≤ s
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if cap_surface_area(n, mid)? >= s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The three-term radius bracket for a cap of area `s_area`.
#[derive(Clone, Copy, Debug)]
pub struct RadiusSandwich {
    pub lower: f64,
    pub r_exact: f64,
    pub upper: f64,
    /// g = (S / vol_{n-1}(B_{n-1}))^{1/(n-1)}, the small parameter.
    pub g: f64,
}

/// Bracket the exact cap radius by
/// `g - g³/(2(n+1)) ∓ c_abs (n-1) g⁵` and report all three values.
pub fn radius_sandwich_check(
    n: usize,
    s_area: f64,
    c_abs: f64,
) -> Result<RadiusSandwich, TheoryError> {
    if c_abs <= 0.0 {
        return Err(TheoryError::OutOfRange {
            what: format!("c_abs = {c_abs} must be positive"),
        });
    }
    let g = (s_area / ball_volume(n - 1)).powf(1.0 / (n as f64 - 1.0));
    if !(0.0..=0.5).contains(&g) {
        return Err(TheoryError::OutOfRange {
            what: format!("g = {g} outside [0, 0.5]"),
        });
    }
    let h = cap_h_from_area(n, s_area)?;
    let r_exact = (1.0 - h * h).max(0.0).sqrt();
    let mid = g - g.powi(3) / (2.0 * (n as f64 + 1.0));
    let slack = c_abs * (n as f64 - 1.0) * g.powi(5);
    Ok(RadiusSandwich {
        lower: mid - slack,
        r_exact,
        upper: mid + slack,
        g,
    })
}

/// The cap-height bracket from the weighted cap measure.
#[derive(Clone, Copy, Debug)]
pub struct ZSandwich {
    pub lower: f64,
    pub z: f64,
    pub upper: f64,
    pub cap_measure: SphereIntegralEstimate,
}

/// Bracket the cap height z by powers of the weighted cap measure
/// `s = ∫_{cap(u,z)} f dμ`:
///
/// `(1+δ)^{-2(n+1)/(n-1)} s^{2/(n-1)} / (2 (f(u) vol(B_{n-1}))^{2/(n-1)})
///  ≤ z ≤ (1+δ)^{2n/(n-1)} (same)`.
///
/// The caller supplies δ > 0; the bracket tightens to equality structure
/// as δ → 0 for the uniform density. Expects z ≤ 0.2 (the regime where
/// the bracket is meaningful).
pub fn z_sandwich_check(
    n: usize,
    density: &Density,
    u: &UnitVector,
    z: f64,
    delta: f64,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ZSandwich, TheoryError> {
    assert!((0.0..=0.2).contains(&z), "z = {z} outside [0, 0.2]");
    assert!(delta > 0.0, "delta must be positive");
    let s = weighted_cap_measure(density, u, z, n_samples, rng)?;
    let nf = n as f64;
    let exp2 = 2.0 / (nf - 1.0);
    // x(u), the sphere point with outer normal u, is u itself.
    let denom = 2.0 * (density.eval(u) * ball_volume(n - 1)).powf(exp2);
    let core = s.value.powf(exp2) / denom;
    Ok(ZSandwich {
        lower: (1.0 + delta).powf(-2.0 * (nf + 1.0) / (nf - 1.0)) * core,
        z,
        upper: (1.0 + delta).powf(2.0 * nf / (nf - 1.0)) * core,
        cap_measure: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{stream, Purpose};

    #[test]
    fn measures_match_known_values() {
        assert!((sphere_measure(3) - 4.0 * PI).abs() < 1e-12);
        assert!((sphere_measure(2) - 2.0 * PI).abs() < 1e-12);
        assert!((sphere_measure(1) - 2.0).abs() < 1e-13);
        assert!((ball_volume(2) - PI).abs() < 1e-13);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((ball_volume(1) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn cap_areas_closed_forms() {
        assert!((cap_surface_area(3, 0.0).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((cap_surface_area(3, 0.9).unwrap() - 0.2 * PI).abs() < 1e-12);
        assert!((cap_surface_area(2, 0.0).unwrap() - PI).abs() < 1e-12);
        assert_eq!(cap_surface_area(3, 1.0).unwrap(), 0.0);
        assert!(cap_surface_area(3, 1.5).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form_in_3d() {
        // Force the generic path via n = 4..6 consistency: the hemisphere
        // area must be half the sphere measure.
        for n in 4..=6 {
            let hemi = cap_surface_area(n, 0.0).unwrap();
            assert!(
                (hemi - sphere_measure(n) / 2.0).abs() < 1e-10,
                "n = {n}"
            );
        }
    }

    #[test]
    fn cap_inverse_roundtrip() {
        for n in [2, 3, 5, 8] {
            for h in [0.0, 0.05, 0.3, 0.77, 0.999] {
                let s = cap_surface_area(n, h).unwrap();
                let h_back = cap_h_from_area(n, s).unwrap();
                assert!((h_back - h).abs() < 1e-10, "n = {n}, h = {h}");
            }
        }
    }

    #[test]
    fn radius_sandwich_small_cap_example() {
        // n = 3, z = 0.02: S = 2πz, g = √(2z) = 0.2.
        let s = 2.0 * PI * 0.02;
        let rs = radius_sandwich_check(3, s, 2.0).unwrap();
        assert!((rs.g - 0.2).abs() < 1e-12);
        let r_closed = (2.0f64 * 0.02 - 0.02f64 * 0.02).sqrt();
        assert!((rs.r_exact - r_closed).abs() < 1e-9);
        assert!(rs.lower <= rs.r_exact && rs.r_exact <= rs.upper);
        let mid = rs.g - rs.g.powi(3) / 8.0;
        let residual = (rs.r_exact - mid).abs() / (2.0 * rs.g.powi(5));
        assert!(residual < 2.0, "residual ratio {residual}");
    }

    #[test]
    fn radius_sandwich_taylor_order() {
        // For n = 3, r(g) = g - g³/8 - g⁵/128 + …, so the mid-term match
        // is O(g⁵).
        for g in [0.05f64, 0.1, 0.2] {
            let s = g * g * ball_volume(2);
            let rs = radius_sandwich_check(3, s, 2.0).unwrap();
            let mid = g - g.powi(3) / 8.0;
            assert!((rs.r_exact - mid).abs() < 0.02 * g.powi(5) + 1e-9);
        }
    }

    #[test]
    fn radius_sandwich_domain() {
        assert!(radius_sandwich_check(3, 0.3 * ball_volume(2), 2.0).is_err()); // g > 0.5
        let tiny = radius_sandwich_check(3, 1e-12, 2.0).unwrap();
        assert!(tiny.lower.abs() < 1e-5 && tiny.upper < 1e-5 && tiny.r_exact < 1e-5);
    }

    #[test]
    fn z_sandwich_uniform_equality_structure() {
        let d = Density::uniform(3).unwrap();
        let u = UnitVector::axis(3, 2);
        let mut rng = stream(3, Purpose::CapMeasure, 0, 0);
        for delta in [0.1, 0.01, 0.001] {
            let zs = z_sandwich_check(3, &d, &u, 0.08, delta, 1000, &mut rng).unwrap();
            assert!(zs.lower <= zs.z && zs.z <= zs.upper, "δ = {delta}");
            assert!(((1.0 + delta).powi(4) * zs.lower / zs.z - 1.0).abs() < 1e-10);
            assert!((zs.upper / zs.z / (1.0 + delta).powi(3) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn z_sandwich_zero_height() {
        let d = Density::uniform(3).unwrap();
        let u = UnitVector::axis(3, 0);
        let mut rng = stream(4, Purpose::CapMeasure, 0, 0);
        let zs = z_sandwich_check(3, &d, &u, 0.0, 0.1, 1000, &mut rng).unwrap();
        assert_eq!(zs.lower, 0.0);
        assert_eq!(zs.upper, 0.0);
        assert_eq!(zs.z, 0.0);
    }

    #[test]
    fn z_sandwich_tilted_density_mc() {
        let u = UnitVector::axis(3, 2);
        let d = Density::linear_tilt(0.3, u.clone()).unwrap();
        let mut rng = stream(5, Purpose::CapMeasure, 0, 0);
        let zs = z_sandwich_check(3, &d, &u, 0.05, 0.1, 400_000, &mut rng).unwrap();
        assert!(zs.lower <= zs.z && zs.z <= zs.upper);
    }
}

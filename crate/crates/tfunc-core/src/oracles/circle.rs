//! Exact expectations for hulls of uniform points on the circle.
//!
//! For N i.i.d. uniform points on ∂B₂, each hull edge subtends an angle
//! 2πt whose spacing t has the Beta(1, N-1) marginal, and the edges are
//! exchangeable. So
//!
//! `E[T_{a,b}] = N ∫₀¹ d(t)^a (2 sin πt)^b (N-1)(1-t)^{N-2} dt`
//!
//! with d(t) = |cos πt|: the perpendicular foot from the center onto a
//! chord is the chord midpoint, which lies on the chord for every
//! subtended angle, so the minimum over the edge and the hyperplane
//! distance coincide. The signed variant weighs each edge by
//! sign(cos πt), negative exactly when the edge subtends more than a half
//! turn (the origin is then outside the hull, beyond that edge).

use std::f64::consts::PI;

use super::{OracleError, OracleResult};
use crate::quad;

/// Exact E[T_{a,b}] (or its signed variant) for the hull of N uniform
/// circle points, by adaptive quadrature of the spacing integral.
pub fn circle_expected_t(
    n_points: usize,
    a: f64,
    b: f64,
    signed: bool,
) -> Result<OracleResult, OracleError> {
    assert!(n_points >= 3, "need N ≥ 3 on the circle");
    assert!(a >= 0.0 && b >= 0.0);
    let nf = n_points as f64;

    let pow0 = |x: f64, e: f64| if e == 0.0 { 1.0 } else { x.powf(e) };
    let integrand = |t: f64| {
        let c = (PI * t).cos();
        let dist = pow0(c.abs(), a);
        let edge = pow0(2.0 * (PI * t).sin(), b);
        let spacing = (nf - 1.0) * (1.0 - t).powf(nf - 2.0);
        let sign = if signed { c.signum() } else { 1.0 };
        sign * dist * edge * spacing
    };

    // Kink of |cos| at 1/2; extra cuts resolve the spacing density's
    // concentration near 0 for large N.
    let mut cuts = vec![0.5];
    let mut x = 1.0 / nf;
    while x < 0.5 {
        cuts.push(x);
        x *= 4.0;
    }
    let q = quad::integrate_segmented(integrand, 0.0, 1.0, &cuts, 1e-10)?;

    Ok(OracleResult {
        value: nf * q.value,
        uncertainty: nf * q.error,
        method: "circle-spacing-quadrature".into(),
    })
}

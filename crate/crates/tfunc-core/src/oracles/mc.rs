//! Brute-force Monte Carlo oracles: simplex volume moments, the spherical
//! Blaschke–Petkantschin identity at n = 3, and the scaled-sphere moment
//! identity.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use super::{OracleError, OracleResult};
use crate::linalg;
use crate::quad;
use crate::sampling::uniform_on_sphere;
use crate::theory::{simplex_moment, sphere_measure};

/// Mean of 𝒱^m over `n_samples` random simplices spanned by n uniform
/// points on `∂B_{n-1}`, with its standard error.
pub fn mc_simplex_moment(
    n: usize,
    m: f64,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> OracleResult {
    assert!((2..=8).contains(&n), "supported range is n in 2..=8");
    assert!(m >= 0.0);
    assert!(n_samples >= 10_000);
    let pow0 = |x: f64, e: f64| if e == 0.0 { 1.0 } else { x.powf(e) };

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n_samples {
        points.clear();
        for _ in 0..n {
            points.push(uniform_on_sphere(n - 1, rng).coords().to_vec());
        }
        let refs: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
        let vol = linalg::simplex_volume(&refs).unwrap_or(0.0);
        let v = pow0(vol, m);
        sum += v;
        sum_sq += v * v;
    }
    let k = n_samples as f64;
    let mean = sum / k;
    let var = (sum_sq - k * mean * mean) / (k - 1.0);
    OracleResult {
        value: mean,
        uncertainty: (var.max(0.0) / k).sqrt(),
        method: "mc-simplex-volume".into(),
    }
}

/// Both sides of the spherical Blaschke–Petkantschin identity at n = 3
/// with test function g ≡ 1.
#[derive(Clone, Debug)]
pub struct BpCheck {
    /// (4π)³, the direct triple sphere integral.
    pub lhs: f64,
    /// The hyperplane-side value with the inner circle integrals reduced
    /// in closed form; equals the lhs analytically.
    pub analytic_rhs: f64,
    /// Raw Monte Carlo over all five variables (u, h, x₁, x₂, x₃).
    pub mc_rhs: OracleResult,
}

/// Check `∫∫∫ dμ³ = 2 ∫_{S²} ∫₀¹ ∫∫∫_{circle³} vol₂ (1-h²)^{-3/2}`.
///
/// The analytic route reduces the inner triple integral over the radius-ρ
/// circle to `(2πρ)³ ρ² E[𝒱_{3,2}]` and integrates `ρ² = 1-h²` in h; the
/// Monte Carlo route samples everything.
pub fn bp_identity_check(
    n: usize,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<BpCheck, OracleError> {
    if n != 3 {
        return Err(OracleError::Unsupported {
            what: format!("Blaschke–Petkantschin check runs at n = 3 only, got {n}"),
        });
    }
    let mu = sphere_measure(3);
    let lhs = mu.powi(3);

    // Analytic reduction: 2 · μ(∂B₃) · (2π)³ · E[𝒱_{3,2}] · ∫₀¹ (1-h²) dh.
    let rho2_integral = quad::integrate(|h: f64| 1.0 - h * h, 0.0, 1.0, 1e-12)?;
    let analytic_rhs =
        2.0 * mu * TAU.powi(3) * simplex_moment(3, 1.0) * rho2_integral.value;

    // Raw MC. With uniform u, uniform h and uniform points on the circle,
    // the density factors cancel to a constant: each sample contributes
    // 2 · 4π · (2π)³ · vol₂(x₁,x₂,x₃).
    let weight = 2.0 * mu * TAU.powi(3);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n_samples {
        let u = uniform_on_sphere(3, rng);
        let h: f64 = rng.random();
        let rho = (1.0 - h * h).sqrt();
        let (e1, e2) = orthonormal_complement(u.coords());
        let mut pts = [[0.0f64; 3]; 3];
        for pt in &mut pts {
            let theta: f64 = TAU * rng.random::<f64>();
            let (s, c) = theta.sin_cos();
            for k in 0..3 {
                pt[k] = rho * (c * e1[k] + s * e2[k]) + h * u.coords()[k];
            }
        }
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        let vol = linalg::simplex_volume(&refs).unwrap_or(0.0);
        let v = weight * vol;
        sum += v;
        sum_sq += v * v;
    }
    let k = n_samples as f64;
    let mean = sum / k;
    let var = (sum_sq - k * mean * mean) / (k - 1.0);
    Ok(BpCheck {
        lhs,
        analytic_rhs,
        mc_rhs: OracleResult {
            value: mean,
            uncertainty: (var.max(0.0) / k).sqrt(),
            method: "mc-blaschke-petkantschin".into(),
        },
    })
}

/// Two unit vectors spanning the plane orthogonal to `u` in R³.
fn orthonormal_complement(u: &[f64]) -> ([f64; 3], [f64; 3]) {
    let pick = if u[0].abs() <= u[1].abs() && u[0].abs() <= u[2].abs() {
        [1.0, 0.0, 0.0]
    } else if u[1].abs() <= u[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let d = linalg::dot(&pick, u);
    let mut e1 = [0.0f64; 3];
    for k in 0..3 {
        e1[k] = pick[k] - d * u[k];
    }
    let len = linalg::norm(&e1);
    for x in &mut e1 {
        *x /= len;
    }
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    (e1, e2)
}

/// The scaled-sphere moment identity: the m-th volume moment integral
/// over `(∂B_n ∩ H)^n` with weight `(1-h²)^{-n/2}` equals
/// `(1-h²)^{(n²+n(m-3)-m)/2} μ(∂B_{n-1})^n E[𝒱^m]`.
///
/// Returns (closed form, Monte Carlo over the radius-√(1-h²) sphere).
pub fn scaled_sphere_moment_identity(
    n: usize,
    m: f64,
    h: f64,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> (f64, OracleResult) {
    assert!((0.0..1.0).contains(&h), "h must lie in [0, 1)");
    assert!((3..=8).contains(&n));
    let nf = n as f64;
    let rho2 = 1.0 - h * h;
    let omega = sphere_measure(n - 1);

    let exponent = (nf * nf + nf * (m - 3.0) - m) / 2.0;
    let exact = rho2.powf(exponent) * omega.powf(nf) * simplex_moment(n, m);

    // MC over the scaled sphere: measure (ω ρ^{n-2})^n, volumes of scaled
    // simplices, and the analytic (1-h²)^{-n/2} weight.
    let rho = rho2.sqrt();
    let pow0 = |x: f64, e: f64| if e == 0.0 { 1.0 } else { x.powf(e) };
    let scale = (omega * rho.powi(n as i32 - 2)).powf(nf) * rho2.powf(-nf / 2.0);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n_samples {
        points.clear();
        for _ in 0..n {
            let y = uniform_on_sphere(n - 1, rng);
            points.push(y.coords().iter().map(|c| rho * c).collect());
        }
        let refs: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
        let vol = linalg::simplex_volume(&refs).unwrap_or(0.0);
        let v = scale * pow0(vol, m);
        sum += v;
        sum_sq += v * v;
    }
    let k = n_samples as f64;
    let mean = sum / k;
    let var = (sum_sq - k * mean * mean) / (k - 1.0);
    (
        exact,
        OracleResult {
            value: mean,
            uncertainty: (var.max(0.0) / k).sqrt(),
            method: "mc-scaled-sphere".into(),
        },
    )
}

//! Closed-form constants for the asymptotics of expected facet
//! functionals, plus spherical cap geometry.
//!
//! For the hull of N density-f points on `∂B_n`, the expectation of
//! `T_{a,b}` behaves like
//!
//! `leading_coeff(n,b) · N^{-(b-1)} · (c1(n,b,f) - c2(n,a,b,f) · N^{-2/(n-1)})`
//!
//! with gamma-function constants and spherical integrals of powers of f.
//! Everything that can be a closed form is one (all gammas in log space);
//! the density integrals fall back to Monte Carlo with propagated
//! standard errors for non-uniform densities.

mod caps;

pub use caps::{
    ball_volume, cap_h_from_area, cap_surface_area, radius_sandwich_check, sphere_measure,
    z_sandwich_check, RadiusSandwich, TheoryError, ZSandwich,
};

use rand_chacha::ChaCha8Rng;

use crate::sampling::{sphere_integral, Density, DensityError};
use crate::special::{ln_factorial, ln_gamma};

/// A value with an attached 1σ uncertainty (zero for closed forms).
#[derive(Clone, Copy, Debug)]
pub struct Uncertain {
    pub value: f64,
    pub std_error: f64,
}

impl Uncertain {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
        }
    }
}

/// E[𝒱_{n,n-1}^m]: the m-th moment of the volume of the simplex spanned
/// by n i.i.d. uniform points on `∂B_{n-1}`, as a product of gamma
/// factors evaluated in log space.
pub fn simplex_moment(n: usize, m: f64) -> f64 {
    assert!(n >= 2, "simplex moment needs n ≥ 2");
    assert!(m >= 0.0, "moment order must be nonnegative");
    if m == 0.0 {
        return 1.0;
    }
    let nf = n as f64;
    let mut log = -m * ln_factorial(n - 1);
    log += ln_gamma(0.5 * nf * (nf + m - 3.0) + 1.0);
    log -= ln_gamma(0.5 * nf * (nf - 3.0) + 0.5 * m * (nf - 1.0) + 1.0);
    log += nf * (ln_gamma(0.5 * (nf - 1.0)) - ln_gamma(0.5 * (nf - 1.0 + m)));
    for i in 1..n {
        log += ln_gamma(0.5 * (i as f64 + m)) - ln_gamma(0.5 * i as f64);
    }
    log.exp()
}

/// `c1(n,b,f) = Γ(n+b-1) ∫ f^{1-b} dμ`.
pub fn c1(
    n: usize,
    b: f64,
    density: &Density,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Uncertain, DensityError> {
    let gamma = ln_gamma(n as f64 + b - 1.0).exp();
    let integral = sphere_integral(density, 1.0 - b, n_samples, rng)?;
    Ok(Uncertain {
        value: gamma * integral.value,
        std_error: gamma * integral.std_error,
    })
}

/// `c2(n,a,b,f) = ½(a + (n-1)(n+b-2)/(n+1)) Γ(n+b-1+2/(n-1))
///  ∫ f^{1-b-2/(n-1)} dμ / vol(B_{n-1})^{2/(n-1)}`.
pub fn c2(
    n: usize,
    a: f64,
    b: f64,
    density: &Density,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Uncertain, DensityError> {
    let nf = n as f64;
    let exp2 = 2.0 / (nf - 1.0);
    let prefactor = 0.5 * (a + (nf - 1.0) * (nf + b - 2.0) / (nf + 1.0));
    let gamma = ln_gamma(nf + b - 1.0 + exp2).exp();
    let vol_pow = ball_volume(n - 1).powf(exp2);
    let integral = sphere_integral(density, 1.0 - b - exp2, n_samples, rng)?;
    let scale = prefactor * gamma / vol_pow;
    Ok(Uncertain {
        value: scale * integral.value,
        std_error: scale * integral.std_error,
    })
}

/// `(n-1)^{n-1} E[𝒱^{b+1}] / (n · vol(B_{n-1})^{b-1})`.
pub fn leading_coeff(n: usize, b: f64) -> f64 {
    let nf = n as f64;
    let log = (nf - 1.0) * (nf - 1.0).ln() + simplex_moment(n, b + 1.0).ln()
        - nf.ln()
        - (b - 1.0) * ball_volume(n - 1).ln();
    log.exp()
}

/// The assembled constants for one (n, a, b, density).
#[derive(Clone, Copy, Debug)]
pub struct TheoryConstants {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub c1: Uncertain,
    pub c2: Uncertain,
    pub leading_coeff: f64,
}

impl TheoryConstants {
    /// One-term prediction `leading_coeff · c1 · N^{-(b-1)}`.
    pub fn one_term(&self, n_points: f64) -> f64 {
        self.leading_coeff * n_points.powf(-(self.b - 1.0)) * self.c1.value
    }

    /// Two-term prediction
    /// `leading_coeff · N^{-(b-1)} (c1 - c2 N^{-2/(n-1)})`.
    pub fn predicted(&self, n_points: f64) -> f64 {
        let q = n_points.powf(-2.0 / (self.n as f64 - 1.0));
        self.leading_coeff * n_points.powf(-(self.b - 1.0)) * (self.c1.value - self.c2.value * q)
    }

    /// 1σ uncertainty of [`Self::predicted`] from the density integrals.
    pub fn predicted_std_error(&self, n_points: f64) -> f64 {
        let q = n_points.powf(-2.0 / (self.n as f64 - 1.0));
        self.leading_coeff
            * n_points.powf(-(self.b - 1.0))
            * (self.c1.std_error.powi(2) + (q * self.c2.std_error).powi(2)).sqrt()
    }
}

/// Build [`TheoryConstants`] and evaluate the two-term prediction at N.
pub fn expected_t_asymptotic(
    n: usize,
    n_points: usize,
    a: f64,
    b: f64,
    density: &Density,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(TheoryConstants, f64), DensityError> {
    let constants = TheoryConstants {
        n,
        a,
        b,
        c1: c1(n, b, density, n_samples, rng)?,
        c2: c2(n, a, b, density, n_samples, rng)?,
        leading_coeff: leading_coeff(n, b),
    };
    let value = constants.predicted(n_points as f64);
    Ok((constants, value))
}

/// The limiting deficit constant
/// `lim N^{2/(n-1)} E[μ(∂B_n) - S_p] =
///  ½(1-p+(n-1)²/(n+1)) · ∫f^{-2/(n-1)}dμ / vol(B_{n-1})^{2/(n-1)}
///  · Γ(n+2/(n-1)) / (n-1)!`.
pub fn lp_deficit_constant(
    n: usize,
    p: f64,
    density: &Density,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Uncertain, DensityError> {
    let nf = n as f64;
    let exp2 = 2.0 / (nf - 1.0);
    let prefactor = 0.5 * (1.0 - p + (nf - 1.0) * (nf - 1.0) / (nf + 1.0));
    let gamma_ratio = (ln_gamma(nf + exp2) - ln_factorial(n - 1)).exp();
    let vol_pow = ball_volume(n - 1).powf(exp2);
    let integral = sphere_integral(density, -exp2, n_samples, rng)?;
    let scale = prefactor * gamma_ratio / vol_pow;
    Ok(Uncertain {
        value: scale * integral.value,
        std_error: scale * integral.std_error,
    })
}

/// `lp_deficit_constant(f) - lp_deficit_constant(uniform)`; nonnegative
/// up to quadrature error (the uniform density is the minimizer).
pub fn holder_gap(
    n: usize,
    p: f64,
    density: &Density,
    n_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Uncertain, DensityError> {
    let tilted = lp_deficit_constant(n, p, density, n_samples, rng)?;
    let uniform = Density::uniform(n)?;
    let base = lp_deficit_constant(n, p, &uniform, n_samples, rng)?;
    Ok(Uncertain {
        value: tilted.value - base.value,
        std_error: (tilted.std_error.powi(2) + base.std_error.powi(2)).sqrt(),
    })
}

/// The explicit high-dimensional envelope of the uniform deficit constant.
#[derive(Clone, Copy, Debug)]
pub struct BestApproxBound {
    /// ½ (n - p) μ(∂B_n).
    pub main_term: f64,
    /// The exact uniform deficit constant for this (n, p).
    pub exact_constant: f64,
    /// C solving `exact = main · (1 + C ln n / n)`.
    pub implied_c: f64,
}

/// Compare the exact uniform deficit constant against its Stirling
/// envelope `½(n-p) μ(∂B_n) (1 + O(ln n / n))` and report the implied
/// constant.
pub fn best_approx_upper(n: usize, p: f64) -> Result<BestApproxBound, DensityError> {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let nf = n as f64;
    let main_term = 0.5 * (nf - p) * sphere_measure(n);
    let uniform = Density::uniform(n)?;
    // The uniform integral short-circuits; the rng is never used.
    let mut rng = crate::sampling::stream(0, crate::sampling::Purpose::Generic, 0, 0);
    let exact = lp_deficit_constant(n, p, &uniform, 1000, &mut rng)?;
    let implied_c = (exact.value / main_term - 1.0) * nf / nf.ln();
    Ok(BestApproxBound {
        main_term,
        exact_constant: exact.value,
        implied_c,
    })
}

//! Exact orientation predicate over the rationals.
//!
//! f64 inputs convert losslessly to binary rationals, so the sign returned
//! here is exact for the coordinates as stored. Used only when the
//! floating point predicate lands inside its tolerance band, which for
//! points sampled from continuous densities is a measure-zero event.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Sign of det[v₁ - q, …, vₙ - q] for n points `simplex` and query `q`,
/// all in R^n. Zero means q lies exactly on the affine hull.
pub fn orientation_sign(simplex: &[&[f64]], q: &[f64]) -> i8 {
    let n = q.len();
    debug_assert_eq!(simplex.len(), n);

    // Exact rational rows v_i - q.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for v in simplex {
        debug_assert_eq!(v.len(), n);
        let row: Vec<BigRational> = v
            .iter()
            .zip(q)
            .map(|(&a, &b)| {
                BigRational::from_float(a).expect("finite coordinate")
                    - BigRational::from_float(b).expect("finite coordinate")
            })
            .collect();
        rows.push(row);
    }

    // Clear denominators (all powers of two) to get an integer matrix with
    // the same determinant sign.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let mut denom_lcm = BigInt::from(1);
        for x in &row {
            let d = x.denom();
            // Denominators are powers of two; lcm of two powers of two is
            // their max, but a general lcm stays cheap at this size.
            denom_lcm = lcm(&denom_lcm, d);
        }
        m.push(
            row.into_iter()
                .map(|x| x.numer() * (&denom_lcm / x.denom()))
                .collect(),
        );
    }

    bareiss_sign(&mut m)
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let g = gcd(a.abs(), b.abs());
    (a * b).abs() / g
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Sign of the determinant of an integer matrix via fraction-free
/// (Bareiss) elimination.
fn bareiss_sign(m: &mut [Vec<BigInt>]) -> i8 {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        // Pivot search.
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return 0;
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        if k == n - 1 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let last = &m[n - 1][n - 1];
    if last.is_zero() {
        0
    } else if last.is_positive() {
        sign
    } else {
        -sign
    }
}

//! Small dense linear algebra for dimensions up to ~10.
//!
//! Matrices are row-major slices. Everything here is O(n³) with tiny n,
//! called inside hull construction and facet measurement loops, so the
//! routines avoid allocation where practical.

/// Dot product.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Determinant by LU with partial pivoting; destroys `m` (row-major n×n).
pub fn det_in_place(m: &mut [f64], n: usize) -> f64 {
    debug_assert_eq!(m.len(), n * n);
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        for r in col + 1..n {
            let v = m[r * n + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for r in col + 1..n {
            let factor = m[r * n + col] / d;
            if factor != 0.0 {
                for c in col + 1..n {
                    m[r * n + c] -= factor * m[col * n + c];
                }
            }
        }
    }
    det
}

/// Hadamard bound scale: product of row norms. Zero rows contribute 0.
pub fn hadamard_scale(m: &[f64], n: usize) -> f64 {
    (0..n).map(|r| norm(&m[r * n..(r + 1) * n])).product()
}

/// Solve `m · x = rhs` in place (x left in `rhs`). Returns false when a
/// pivot vanishes within `pivot_tol` of the column scale.
pub fn solve_in_place(m: &mut [f64], rhs: &mut [f64], n: usize, pivot_tol: f64) -> bool {
    debug_assert_eq!(m.len(), n * n);
    debug_assert_eq!(rhs.len(), n);
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        let mut scale = best;
        for r in col + 1..n {
            let v = m[r * n + col].abs();
            scale = scale.max(v);
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best <= pivot_tol * scale.max(1.0) || best == 0.0 {
            return false;
        }
        if piv != col {
            for c in 0..n {
                m.swap(col * n + c, piv * n + c);
            }
            rhs.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let factor = m[r * n + col] / d;
            if factor != 0.0 {
                for c in col + 1..n {
                    m[r * n + c] -= factor * m[col * n + c];
                }
                rhs[r] -= factor * rhs[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut x = rhs[col];
        for c in col + 1..n {
            x -= m[col * n + c] * rhs[c];
        }
        rhs[col] = x / m[col * n + col];
    }
    true
}

/// Determinant of a symmetric positive definite matrix via Cholesky;
/// `None` when a pivot falls below the relative degeneracy threshold
/// (rank-deficient Gram up to rounding).
pub fn spd_det(g: &mut [f64], k: usize) -> Option<f64> {
    debug_assert_eq!(g.len(), k * k);
    let diag_scale = (0..k)
        .map(|j| g[j * k + j].abs())
        .fold(0.0f64, f64::max);
    let pivot_floor = 1e-13 * diag_scale;
    let mut det = 1.0;
    for j in 0..k {
        let mut d = g[j * k + j];
        for c in 0..j {
            d -= g[j * k + c] * g[j * k + c];
        }
        if d <= pivot_floor {
            return None;
        }
        let l = d.sqrt();
        det *= d;
        g[j * k + j] = l;
        for r in j + 1..k {
            let mut v = g[r * k + j];
            for c in 0..j {
                v -= g[r * k + c] * g[j * k + c];
            }
            g[r * k + j] = v / l;
        }
    }
    Some(det)
}

/// k-dimensional volume of the simplex spanned by `k + 1` vertices in R^d,
/// via the Gram determinant of edge vectors: √det G / k!.
///
/// `None` when the vertices are affinely dependent (Gram not positive
/// definite).
pub fn simplex_volume(vertices: &[&[f64]]) -> Option<f64> {
    let k = vertices.len().checked_sub(1)?;
    if k == 0 {
        return Some(1.0);
    }
    let dim = vertices[0].len();
    let base = vertices[0];
    let mut edges: Vec<f64> = Vec::with_capacity(k * dim);
    for v in &vertices[1..] {
        for (x, b) in v.iter().zip(base) {
            edges.push(x - b);
        }
    }
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let g = dot(&edges[i * dim..(i + 1) * dim], &edges[j * dim..(j + 1) * dim]);
            gram[i * k + j] = g;
            gram[j * k + i] = g;
        }
    }
    let det = spd_det(&mut gram, k)?;
    let mut factorial = 1.0;
    for i in 2..=k {
        factorial *= i as f64;
    }
    Some(det.sqrt() / factorial)
}

/// Unit normal of the hyperplane spanned by `n - 1` edge rows in R^n,
/// computed as the generalized cross product (cofactor expansion), plus
/// the raw (pre-normalization) cross product norm.
///
/// Returns `None` when the edges are rank deficient. The raw norm equals
/// (n-1)! times the simplex volume of the edges, so rank deficiency shows
/// up as a vanishing norm; callers use it to size tolerance bands.
pub fn hyperplane_normal(edges: &[f64], n: usize) -> Option<(Vec<f64>, f64)> {
    debug_assert_eq!(edges.len(), (n - 1) * n);
    let k = n - 1;
    let mut minor = vec![0.0; k * k];
    let mut normal = vec![0.0; n];
    for drop_col in 0..n {
        for r in 0..k {
            let mut w = 0;
            for c in 0..n {
                if c != drop_col {
                    minor[r * k + w] = edges[r * n + c];
                    w += 1;
                }
            }
        }
        let d = det_in_place(&mut minor, k);
        normal[drop_col] = if drop_col % 2 == 0 { d } else { -d };
    }
    let len = norm(&normal);
    if len <= 0.0 || !len.is_finite() {
        return None;
    }
    for x in &mut normal {
        *x /= len;
    }
    Some((normal, len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_known_matrix() {
        let mut m = vec![2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        // det = 2(6-1) - 1(2-0) = 8
        assert!((det_in_place(&mut m, 3) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn solve_roundtrip() {
        let m = vec![4.0, 1.0, 2.0, 1.0, 5.0, 3.0, 2.0, 3.0, 6.0];
        let x_true = [1.0, -2.0, 0.5];
        let mut rhs = [0.0; 3];
        for r in 0..3 {
            rhs[r] = (0..3).map(|c| m[r * 3 + c] * x_true[c]).sum();
        }
        let mut work = m.clone();
        assert!(solve_in_place(&mut work, &mut rhs, 3, 1e-14));
        for (got, want) in rhs.iter().zip(&x_true) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_solve_reports_failure() {
        let mut m = vec![1.0, 2.0, 2.0, 4.0];
        let mut rhs = [1.0, 2.0];
        assert!(!solve_in_place(&mut m, &mut rhs, 2, 1e-12));
    }

    #[test]
    fn triangle_area_from_gram() {
        // Right triangle with legs 3 and 4.
        let a = [0.0, 0.0, 0.0];
        let b = [3.0, 0.0, 0.0];
        let c = [0.0, 4.0, 0.0];
        let vol = simplex_volume(&[&a, &b, &c]).unwrap();
        assert!((vol - 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_simplex_is_none() {
        let a = [0.0, 0.0];
        let b = [1.0, 1.0];
        let c = [2.0, 2.0];
        assert!(simplex_volume(&[&a, &b, &c]).is_none());
    }

    #[test]
    fn normal_is_orthogonal_to_edges() {
        let edges = vec![1.0, 0.0, 0.5, 0.0, 1.0, -0.25];
        let (u, raw) = hyperplane_normal(&edges, 3).unwrap();
        assert!((norm(&u) - 1.0).abs() < 1e-14);
        assert!(dot(&u, &edges[0..3]).abs() < 1e-14);
        assert!(dot(&u, &edges[3..6]).abs() < 1e-14);
        assert!(raw > 0.0);
    }

    #[test]
    fn cross_product_norm_matches_volume() {
        // ‖cofactor normal before normalization‖ = (n-1)! · simplex volume.
        let v0 = [0.1, -0.3, 0.9];
        let v1 = [0.8, 0.2, -0.1];
        let v2 = [-0.4, 0.7, 0.3];
        let edges = vec![
            v1[0] - v0[0],
            v1[1] - v0[1],
            v1[2] - v0[2],
            v2[0] - v0[0],
            v2[1] - v0[1],
            v2[2] - v0[2],
        ];
        let vol = simplex_volume(&[&v0, &v1, &v2]).unwrap();
        // Recompute raw cross product length.
        let mut minor = [0.0f64; 4];
        let mut raw = [0.0f64; 3];
        for drop_col in 0..3 {
            let mut w = 0;
            for c in 0..3 {
                if c != drop_col {
                    minor[w] = edges[c];
                    minor[2 + w] = edges[3 + c];
                    w += 1;
                }
            }
            let d = minor[0] * minor[3] - minor[1] * minor[2];
            raw[drop_col] = if drop_col % 2 == 0 { d } else { -d };
        }
        let len = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
        assert!((len - 2.0 * vol).abs() < 1e-12);
    }
}

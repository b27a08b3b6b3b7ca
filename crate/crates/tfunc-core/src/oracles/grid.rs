//! Barycentric grid search for the minimum norm over a simplex.
//!
//! Evaluates ‖Σ λᵢvᵢ‖ on the lattice λ ∈ {c/grid : Σc = grid}. Every
//! lattice point is feasible, so the result upper-bounds the true minimum
//! and converges to it at rate O(diam/grid) — a one-sided check against
//! the active-set projection.

use super::OracleResult;
use crate::linalg;

/// Minimum of ‖x‖ over the barycentric grid of the simplex.
pub fn min_norm_oracle(vertices: &[&[f64]], grid_per_axis: usize) -> OracleResult {
    let k = vertices.len();
    assert!((1..=6).contains(&k), "grid oracle supports up to 6 vertices");
    assert!(grid_per_axis >= 50, "grid must be at least 50 per axis");
    let dim = vertices[0].len();

    let mut diam = 0.0f64;
    for i in 0..k {
        for j in i + 1..k {
            let d2: f64 = vertices[i]
                .iter()
                .zip(vertices[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            diam = diam.max(d2.sqrt());
        }
    }

    let mut best = f64::INFINITY;
    let mut partial = vec![0.0f64; dim];
    descend(
        vertices,
        grid_per_axis,
        grid_per_axis,
        0,
        &mut partial,
        &mut best,
    );

    OracleResult {
        value: best,
        uncertainty: 2.0 * diam / grid_per_axis as f64,
        method: "barycentric-grid".into(),
    }
}

fn descend(
    vertices: &[&[f64]],
    grid: usize,
    remaining: usize,
    index: usize,
    partial: &mut [f64],
    best: &mut f64,
) {
    let dim = partial.len();
    if index == vertices.len() - 1 {
        // Last barycentric weight is forced.
        let w = remaining as f64 / grid as f64;
        let mut norm_sq = 0.0;
        for d in 0..dim {
            let x = partial[d] + w * vertices[index][d];
            norm_sq += x * x;
        }
        let norm = norm_sq.sqrt();
        if norm < *best {
            *best = norm;
        }
        return;
    }
    for c in 0..=remaining {
        let w = c as f64 / grid as f64;
        for d in 0..dim {
            partial[d] += w * vertices[index][d];
        }
        descend(vertices, grid, remaining - c, index + 1, partial, best);
        for d in 0..dim {
            partial[d] -= w * vertices[index][d];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::min_norm_distance;

    #[test]
    fn diagonal_segment() {
        let a = [1.0, 0.0];
        let b = [0.0, 1.0];
        let r = min_norm_oracle(&[&a, &b], 1000);
        // The optimum sits exactly on the even grid.
        assert!((r.value - 2.0_f64.sqrt() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn off_sphere_segment() {
        let a = [1.0, 1.0];
        let b = [2.0, 1.0];
        let r = min_norm_oracle(&[&a, &b], 200);
        assert!((r.value - 2.0_f64.sqrt()).abs() < 1e-12, "optimum at a vertex");
    }

    #[test]
    fn standard_triangle() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let e3 = [0.0, 0.0, 1.0];
        let r = min_norm_oracle(&[&e1, &e2, &e3], 60);
        let exact = 1.0 / 3.0_f64.sqrt();
        assert!(r.value >= exact - 1e-12, "grid is an upper bound");
        assert!(r.value - exact <= r.uncertainty);
    }

    #[test]
    fn agrees_with_active_set_projection() {
        let a = [0.9, 0.1, -0.3];
        let b = [-0.2, 0.8, 0.4];
        let c = [0.3, -0.5, 0.7];
        let exact = min_norm_distance(&[&a, &b, &c]);
        let r = min_norm_oracle(&[&a, &b, &c], 400);
        assert!(r.value >= exact - 1e-12);
        assert!(r.value - exact <= r.uncertainty, "{} vs {exact}", r.value);
    }
}

//! Per-facet measurements: hyperplane, volume, and the exact minimum
//! distance from the origin to a simplex.
//!
//! The minimum distance enumerates every nonempty subset of the vertex
//! set, projects the origin onto the subset's affine hull through the
//! equality-constrained normal equations, and keeps projections whose
//! barycentric coordinates are nonnegative. The nearest point of a simplex
//! lies in the relative interior of exactly one face, so the minimum over
//! accepted subsets is exact; singletons are always accepted, which keeps
//! the result well defined even for sliver inputs.

use super::GeometryError;
use crate::linalg;

/// Hyperplane data plus measurements for one simplicial facet.
#[derive(Clone, Debug)]
pub struct FacetGeometry {
    /// Unit normal pointing away from the `interior_point` side.
    pub outward_normal: Vec<f64>,
    /// Signed distance of the affine hull from the origin; positive when
    /// the origin and the interior point are on the same side.
    pub offset: f64,
    /// (n-1)-dimensional volume: √(det G) / (n-1)! over edge vectors.
    pub volume: f64,
    /// min ‖x‖ over the closed simplex.
    pub min_dist: f64,
}

/// Measure the facet spanned by `n` affinely independent points in R^n.
pub fn facet_geometry(
    vertices: &[&[f64]],
    interior_point: &[f64],
) -> Result<FacetGeometry, GeometryError> {
    let n = interior_point.len();
    if vertices.len() != n {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            got: vertices.len(),
        });
    }
    for v in vertices {
        if v.len() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }

    let volume = linalg::simplex_volume(vertices).ok_or(GeometryError::DegenerateFacet)?;

    // Edge matrix rows v_i - v_0, i = 1..n-1.
    let base = vertices[0];
    let mut edges = Vec::with_capacity((n - 1) * n);
    for v in &vertices[1..] {
        for (x, b) in v.iter().zip(base) {
            edges.push(x - b);
        }
    }
    let (mut normal, _) =
        linalg::hyperplane_normal(&edges, n).ok_or(GeometryError::DegenerateFacet)?;
    let mut offset = linalg::dot(base, &normal);
    // Outward means the interior point sits strictly on the h-negative side.
    if linalg::dot(interior_point, &normal) > offset {
        for x in &mut normal {
            *x = -*x;
        }
        offset = -offset;
    }

    let min_dist = min_norm_distance(vertices);

    Ok(FacetGeometry {
        outward_normal: normal,
        offset,
        volume,
        min_dist,
    })
}

/// Exact minimum of ‖x‖ over the convex hull of `vertices` (a simplex
/// with up to ~10 vertices; 2^k - 1 subset subproblems).
pub fn min_norm_distance(vertices: &[&[f64]]) -> f64 {
    let k = vertices.len();
    debug_assert!(k >= 1 && k <= 16);
    let dim = vertices[0].len();

    // Full Gram matrix of the vertices themselves (not edges).
    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let g = linalg::dot(vertices[i], vertices[j]);
            gram[i * k + j] = g;
            gram[j * k + i] = g;
        }
    }
    let _ = dim;

    let mut best = f64::INFINITY;
    let mut members = Vec::with_capacity(k);
    let mut kkt = Vec::new();
    let mut rhs = Vec::new();

    for mask in 1u32..(1 << k) {
        members.clear();
        for i in 0..k {
            if mask & (1 << i) != 0 {
                members.push(i);
            }
        }
        let s = members.len();
        if s == 1 {
            let d2 = gram[members[0] * k + members[0]];
            if d2 < best {
                best = d2;
            }
            continue;
        }
        // Equality-constrained projection onto the affine hull:
        //   [ 2G_S  1 ] [λ]   [0]
        //   [ 1ᵀ    0 ] [ν] = [1]
        // with squared distance λᵀ G_S λ = -ν/2.
        let m = s + 1;
        kkt.clear();
        kkt.resize(m * m, 0.0);
        for (r, &i) in members.iter().enumerate() {
            for (c, &j) in members.iter().enumerate() {
                kkt[r * m + c] = 2.0 * gram[i * k + j];
            }
            kkt[r * m + s] = 1.0;
            kkt[s * m + r] = 1.0;
        }
        rhs.clear();
        rhs.resize(m, 0.0);
        rhs[s] = 1.0;
        if !linalg::solve_in_place(&mut kkt, &mut rhs, m, 1e-13) {
            continue; // Nearly-degenerate face; its boundary faces cover it.
        }
        if rhs[..s].iter().any(|&l| l < -1e-12) {
            continue; // Projection falls outside the face.
        }
        let d2 = (-rhs[s] / 2.0).max(0.0);
        if d2 < best {
            best = d2;
        }
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_simplex_facet_in_r3() {
        // Facet (e1, e2, e3): volume √3/2, |offset| = min_dist = 1/√3.
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let e3 = [0.0, 0.0, 1.0];
        let interior = [0.0, 0.0, 0.0];
        let g = facet_geometry(&[&e1, &e2, &e3], &interior).unwrap();
        assert!((g.volume - 3.0_f64.sqrt() / 2.0).abs() < 1e-14);
        assert!((g.offset.abs() - 1.0 / 3.0_f64.sqrt()).abs() < 1e-14);
        assert!((g.min_dist - 1.0 / 3.0_f64.sqrt()).abs() < 1e-14);
        // Origin and the interior point coincide here, so offset > 0.
        assert!(g.offset > 0.0);
    }

    #[test]
    fn off_sphere_segment_nearest_vertex() {
        // Segment (1,1)-(2,1): projection of the origin onto the line
        // falls outside the segment, nearest point is the vertex (1,1).
        let a = [1.0, 1.0];
        let b = [2.0, 1.0];
        let g = facet_geometry(&[&a, &b], &[1.5, 2.0]).unwrap();
        assert!((g.min_dist - 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((g.volume - 1.0).abs() < 1e-14);
        assert!((g.offset.abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_segment_interior_projection() {
        let a = [1.0, 0.0];
        let b = [0.0, 1.0];
        let g = facet_geometry(&[&a, &b], &[0.0, 0.0]).unwrap();
        let half_sqrt2 = 2.0_f64.sqrt() / 2.0;
        assert!((g.min_dist - half_sqrt2).abs() < 1e-14);
        assert!((g.offset - half_sqrt2).abs() < 1e-14);
    }

    #[test]
    fn degenerate_facet_rejected() {
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 0.0];
        let c = [2.0, 0.0, 0.0];
        assert!(matches!(
            facet_geometry(&[&a, &b, &c], &[0.0, 1.0, 0.0]),
            Err(GeometryError::DegenerateFacet)
        ));
    }

    #[test]
    fn min_dist_through_origin_line() {
        // Antipodal pair: affine hull passes through the origin and the
        // origin is the midpoint, so the distance is zero.
        let a = [1.0, 0.0];
        let b = [-1.0, 0.0];
        assert!(min_norm_distance(&[&a, &b]) < 1e-12);
    }

    #[test]
    fn min_dist_matches_quadratic_hand_solution() {
        // Segment from (2,1) to (-1,2): ‖(2-3t, 1+t)‖² = 5 - 10t + 10t²,
        // minimized at t = 1/2 with distance √2.5.
        let a = [2.0, 1.0];
        let b = [-1.0, 2.0];
        let d = min_norm_distance(&[&a, &b]);
        assert!((d - 2.5_f64.sqrt()).abs() < 1e-12);
    }
}

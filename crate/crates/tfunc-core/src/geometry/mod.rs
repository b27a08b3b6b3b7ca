//! Convex hulls of sphere points and their facet functionals.
//!
//! The central object is [`SimplicialPolytope`]: the convex hull of N
//! points on `∂B_n`, stored as vertices plus simplicial facets, each facet
//! carrying its outward unit normal, signed hyperplane offset, (n-1)-volume
//! and exact minimum distance to the origin. Hulls are built by
//! [`convex_hull`]; the functionals `T_{a,b}`, its signed variant, the
//! `L_p` surface area and the cone-decomposition volume all consume the
//! finished polytope.

mod exact;
mod facet;
mod hull;

pub use facet::{facet_geometry, min_norm_distance, FacetGeometry};
pub use hull::convex_hull;

use crate::linalg;
use serde_json::json;

/// Offsets with |h| at or below this are treated as "origin on the facet
/// hyperplane": not contained, zero sign in the signed functional.
pub const ORIGIN_OFFSET_TOL: f64 = 1e-12;

/// Vertices must satisfy ⟨v, u⟩ = h to this tolerance on every facet.
pub const FACET_PLANE_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension {0} outside supported range 2..=10")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("need at least {needed} points for a hull in dimension {dim}, got {got}")]
    TooFewPoints {
        needed: usize,
        got: usize,
        dim: usize,
    },
    #[error("degenerate input: all points within {tol:e} of a common hyperplane")]
    DegenerateInput { tol: f64 },
    #[error("degenerate facet: Gram determinant not positive")]
    DegenerateFacet,
    #[error("cannot normalize a zero or non-finite vector")]
    NotNormalizable,
    #[error("invalid T-functional parameters a = {a}, b = {b} (both must be ≥ 0)")]
    InvalidParams { a: f64, b: f64 },
    #[error("hull construction invariant violated: {0}")]
    HullCorrupted(String),
}

/// A point on the unit sphere `∂B_n`. The constructor normalizes, so the
/// invariant `|‖coords‖ - 1| ≤ 1e-12` holds for every value of this type.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    pub fn new(mut coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::DimensionOutOfRange(coords.len()));
        }
        let len = linalg::norm(&coords);
        if !len.is_finite() || len <= 0.0 {
            return Err(GeometryError::NotNormalizable);
        }
        for x in &mut coords {
            *x /= len;
        }
        Ok(Self { coords })
    }

    /// The k-th standard basis vector in dimension `dim`.
    pub fn axis(dim: usize, k: usize) -> Self {
        assert!(dim >= 2 && k < dim);
        let mut coords = vec![0.0; dim];
        coords[k] = 1.0;
        Self { coords }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn dot(&self, other: &UnitVector) -> f64 {
        linalg::dot(&self.coords, &other.coords)
    }
}

/// Which distance enters `dist(o, F)^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// min ‖x‖ over the closed facet (the definition).
    MinOverFace,
    /// |h|, the distance from the origin to the facet's affine hull.
    AffineHyperplane,
}

/// Parameters of the facet functional `Σ_F dist(o,F)^a vol(F)^b`.
#[derive(Clone, Copy, Debug)]
pub struct TParams {
    a: f64,
    b: f64,
    distance_mode: DistanceMode,
}

impl TParams {
    pub fn new(a: f64, b: f64, distance_mode: DistanceMode) -> Result<Self, GeometryError> {
        if !(a >= 0.0 && b >= 0.0) {
            return Err(GeometryError::InvalidParams { a, b });
        }
        Ok(Self {
            a,
            b,
            distance_mode,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn distance_mode(&self) -> DistanceMode {
        self.distance_mode
    }
}

/// One simplicial facet of a hull: n vertex indices, outward unit normal
/// u, signed offset h (positive when the origin lies on the inner side),
/// (n-1)-volume, and the exact minimum of ‖x‖ over the facet.
#[derive(Clone, Debug)]
pub struct Facet {
    pub vertex_indices: Vec<usize>,
    pub outward_normal: UnitVector,
    pub offset: f64,
    pub volume: f64,
    pub min_dist: f64,
}

/// Convex hull of points on `∂B_n` with simplicial facets.
#[derive(Clone, Debug)]
pub struct SimplicialPolytope {
    pub dim: usize,
    pub vertices: Vec<UnitVector>,
    pub facets: Vec<Facet>,
    pub contains_origin: bool,
}

impl SimplicialPolytope {
    /// Number of distinct vertices that appear in some facet (the extreme
    /// points actually realized by the hull).
    pub fn hull_vertex_count(&self) -> usize {
        let mut seen = vec![false; self.vertices.len()];
        for f in &self.facets {
            for &i in &f.vertex_indices {
                seen[i] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Centroid of the vertices realized by the hull; strictly interior.
    pub fn interior_point(&self) -> Vec<f64> {
        let mut seen = vec![false; self.vertices.len()];
        for f in &self.facets {
            for &i in &f.vertex_indices {
                seen[i] = true;
            }
        }
        let mut c = vec![0.0; self.dim];
        let mut count = 0.0;
        for (i, used) in seen.iter().enumerate() {
            if *used {
                for (acc, x) in c.iter_mut().zip(self.vertices[i].coords()) {
                    *acc += x;
                }
                count += 1.0;
            }
        }
        for x in &mut c {
            *x /= count;
        }
        c
    }

    /// Structural checks: closed ridge graph (every (n-2)-face shared by
    /// exactly two facets), vertices on their facet hyperplanes, facetwise
    /// `min_dist ≥ |offset|`, and in dimension 3 the Euler relation
    /// `#facets = 2V - 4`.
    pub fn validate(&self) -> Result<(), String> {
        use std::collections::HashMap;
        let n = self.dim;
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            if f.vertex_indices.len() != n {
                return Err(format!("facet {fi} has {} vertices", f.vertex_indices.len()));
            }
            let mut sorted = f.vertex_indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(format!("facet {fi} has repeated vertices"));
            }
            for skip in 0..n {
                let ridge: Vec<usize> = f
                    .vertex_indices
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let mut key = ridge;
                key.sort_unstable();
                *ridges.entry(key).or_insert(0) += 1;
            }
            for &vi in &f.vertex_indices {
                let r = linalg::dot(self.vertices[vi].coords(), f.outward_normal.coords())
                    - f.offset;
                if r.abs() > FACET_PLANE_TOL {
                    return Err(format!(
                        "facet {fi}: vertex {vi} off the hyperplane by {r:e}"
                    ));
                }
            }
            if f.min_dist < f.offset.abs() - 1e-9 {
                return Err(format!(
                    "facet {fi}: min_dist {} < |offset| {}",
                    f.min_dist,
                    f.offset.abs()
                ));
            }
            if f.min_dist > 1.0 + 1e-9 {
                return Err(format!("facet {fi}: min_dist {} > 1", f.min_dist));
            }
            if !(f.volume >= 0.0) {
                return Err(format!("facet {fi}: negative volume"));
            }
        }
        for (key, count) in &ridges {
            if *count != 2 {
                return Err(format!("ridge {key:?} shared by {count} facets"));
            }
        }
        if n == 3 {
            let v = self.hull_vertex_count();
            if self.facets.len() != 2 * v - 4 {
                return Err(format!(
                    "Euler violation: {} facets, {} vertices",
                    self.facets.len(),
                    v
                ));
            }
        }
        if self.contains_origin {
            for (fi, f) in self.facets.iter().enumerate() {
                if f.offset <= ORIGIN_OFFSET_TOL {
                    return Err(format!(
                        "contains_origin set but facet {fi} has offset {}",
                        f.offset
                    ));
                }
            }
        }
        Ok(())
    }

    /// Debug dump: `{dim, vertices: [[...]], facets: [{idx, h, vol, dmin}]}`.
    pub fn to_debug_json(&self) -> serde_json::Value {
        json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            "facets": self.facets.iter().map(|f| json!({
                "idx": f.vertex_indices,
                "h": f.offset,
                "vol": f.volume,
                "dmin": f.min_dist,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `x^e` with the convention `x^0 = 1` for every x, including 0.
#[inline]
fn pow0(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

#[inline]
fn facet_distance(f: &Facet, mode: DistanceMode) -> f64 {
    match mode {
        DistanceMode::MinOverFace => f.min_dist,
        DistanceMode::AffineHyperplane => f.offset.abs(),
    }
}

/// `T_{a,b} = Σ_F dist(o,F)^a vol_{n-1}(F)^b`, with `0^0 = 1` so that
/// `T_{0,0}` counts facets.
pub fn t_functional(p: &SimplicialPolytope, params: &TParams) -> f64 {
    p.facets
        .iter()
        .map(|f| pow0(facet_distance(f, params.distance_mode), params.a) * pow0(f.volume, params.b))
        .sum()
}

/// Like [`t_functional`], but each facet enters with sign +1 when the
/// origin is on the polytope side of its hyperplane, -1 when it is
/// beyond, and 0 when it lies on the hyperplane itself.
///
/// With `a = b = 1` in [`DistanceMode::AffineHyperplane`] the result
/// divided by n is the hull volume for every position of the origin.
pub fn signed_t_functional(p: &SimplicialPolytope, params: &TParams) -> f64 {
    p.facets
        .iter()
        .map(|f| {
            let sign = if f.offset > ORIGIN_OFFSET_TOL {
                1.0
            } else if f.offset < -ORIGIN_OFFSET_TOL {
                -1.0
            } else {
                0.0
            };
            sign * pow0(facet_distance(f, params.distance_mode), params.a)
                * pow0(f.volume, params.b)
        })
        .sum()
}

/// `S_p = Σ_F dist(o,F)^{1-p} vol_{n-1}(F)`, with `dist` the minimum over
/// the facet. Any real p is accepted; p ≤ 1 keeps the exponent ≥ 0.
pub fn lp_surface_area(p: &SimplicialPolytope, p_exponent: f64) -> f64 {
    lp_surface_area_mode(p, p_exponent, DistanceMode::MinOverFace)
}

/// [`lp_surface_area`] with an explicit choice of facet distance.
pub fn lp_surface_area_mode(
    p: &SimplicialPolytope,
    p_exponent: f64,
    mode: DistanceMode,
) -> f64 {
    p.facets
        .iter()
        .map(|f| pow0(facet_distance(f, mode), 1.0 - p_exponent) * f.volume)
        .sum()
}

/// Hull volume by signed cone decomposition against the vertex centroid.
/// Independent of the T-functional route through the origin.
pub fn polytope_volume(p: &SimplicialPolytope) -> f64 {
    let c = p.interior_point();
    let vol: f64 = p
        .facets
        .iter()
        .map(|f| (f.offset - linalg::dot(&c, f.outward_normal.coords())) * f.volume)
        .sum::<f64>()
        / p.dim as f64;
    vol.max(0.0)
}

/// True iff every facet offset exceeds the origin tolerance.
pub fn contains_origin(p: &SimplicialPolytope) -> bool {
    p.facets.iter().all(|f| f.offset > ORIGIN_OFFSET_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplicialPolytope {
        let pts = vec![
            UnitVector::new(vec![1.0, 0.0]).unwrap(),
            UnitVector::new(vec![0.0, 1.0]).unwrap(),
            UnitVector::new(vec![-1.0, 0.0]).unwrap(),
            UnitVector::new(vec![0.0, -1.0]).unwrap(),
        ];
        convex_hull(&pts, 2).unwrap()
    }

    #[test]
    fn unit_vector_normalizes() {
        let v = UnitVector::new(vec![3.0, 4.0]).unwrap();
        assert!((linalg::norm(v.coords()) - 1.0).abs() <= 1e-12);
        assert!((v.coords()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn unit_vector_rejects_zero_and_short() {
        assert!(UnitVector::new(vec![0.0, 0.0]).is_err());
        assert!(UnitVector::new(vec![1.0]).is_err());
        assert!(UnitVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn square_perimeter_and_count() {
        let sq = square();
        assert_eq!(sq.facets.len(), 4);
        let t01 = t_functional(&sq, &TParams::new(0.0, 1.0, DistanceMode::MinOverFace).unwrap());
        assert!((t01 - 4.0 * 2.0_f64.sqrt()).abs() < 1e-12);
        let t00 = t_functional(&sq, &TParams::new(0.0, 0.0, DistanceMode::MinOverFace).unwrap());
        assert!((t00 - 4.0).abs() < 1e-15);
    }

    #[test]
    fn square_cone_volume_both_modes() {
        let sq = square();
        for mode in [DistanceMode::MinOverFace, DistanceMode::AffineHyperplane] {
            let t11 = t_functional(&sq, &TParams::new(1.0, 1.0, mode).unwrap());
            assert!((t11 - 4.0).abs() < 1e-12, "mode {mode:?}");
            assert!((t11 / 2.0 - 2.0).abs() < 1e-12);
        }
        assert!((polytope_volume(&sq) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn square_lp_surface_areas() {
        let sq = square();
        let s1 = lp_surface_area(&sq, 1.0);
        assert!((s1 - 4.0 * 2.0_f64.sqrt()).abs() < 1e-12);
        let s0 = lp_surface_area(&sq, 0.0);
        assert!((s0 - 4.0).abs() < 1e-12);
        let sm1 = lp_surface_area(&sq, -1.0);
        assert!((sm1 - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn square_contains_origin_and_signed_matches() {
        let sq = square();
        assert!(sq.contains_origin);
        assert!(contains_origin(&sq));
        let params = TParams::new(1.0, 1.0, DistanceMode::AffineHyperplane).unwrap();
        assert_eq!(
            t_functional(&sq, &params),
            signed_t_functional(&sq, &params)
        );
    }

    #[test]
    fn t_params_rejects_negatives() {
        assert!(TParams::new(-0.5, 1.0, DistanceMode::MinOverFace).is_err());
        assert!(TParams::new(0.0, -1.0, DistanceMode::MinOverFace).is_err());
    }

    #[test]
    fn debug_dump_shape() {
        let sq = square();
        let v = sq.to_debug_json();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
        let f0 = &v["facets"][0];
        assert!(f0["h"].is_number() && f0["vol"].is_number() && f0["dmin"].is_number());
    }
}

//! Incremental beneath-beyond convex hull in dimensions 2..=10.
//!
//! Facets are simplices stored flat (vertex indices, unit normal, offset,
//! ridge-adjacent neighbors). Each remaining point is tested against every
//! live facet; the visible region is removed and replaced by a fan of new
//! facets over the horizon ridges.
//!
//! The orientation predicate runs in floating point with a per-facet
//! tolerance band sized from the facet's cross-product norm (slivers get
//! wider bands), and falls back to exact rational arithmetic inside the
//! band. Points exactly on a facet hyperplane count as not visible, so
//! duplicated points are dropped. Inputs are expected in general position;
//! that holds almost surely for points sampled from a continuous density
//! on the sphere.

use std::collections::HashMap;

use super::{exact, facet_geometry, Facet, GeometryError, SimplicialPolytope, UnitVector};
use crate::linalg;

/// Base width of the floating-point orientation tolerance band.
const PREDICATE_TOL: f64 = 1e-10;

/// Points all within this distance of a common hyperplane are degenerate.
const RESIDUAL_TOL: f64 = 1e-9;

struct FacetStore {
    n: usize,
    verts: Vec<usize>,
    normals: Vec<f64>,
    offsets: Vec<f64>,
    /// Half-width of the exact-arithmetic fallback band for this facet.
    bands: Vec<f64>,
    /// True when the stored normal is the negation of the raw cofactor
    /// cross product of the stored vertex order.
    flipped: Vec<bool>,
    /// neighbors[f*n + k] = facet across the ridge omitting verts[f*n + k].
    neighbors: Vec<usize>,
    alive: Vec<bool>,
    free: Vec<usize>,
    live_count: usize,
}

impl FacetStore {
    fn new(n: usize) -> Self {
        Self {
            n,
            verts: Vec::new(),
            normals: Vec::new(),
            offsets: Vec::new(),
            bands: Vec::new(),
            flipped: Vec::new(),
            neighbors: Vec::new(),
            alive: Vec::new(),
            free: Vec::new(),
            live_count: 0,
        }
    }

    fn capacity(&self) -> usize {
        self.alive.len()
    }

    fn vertices_of(&self, slot: usize) -> &[usize] {
        &self.verts[slot * self.n..(slot + 1) * self.n]
    }

    fn kill(&mut self, slot: usize) {
        debug_assert!(self.alive[slot]);
        self.alive[slot] = false;
        self.free.push(slot);
        self.live_count -= 1;
    }

    /// Create a facet through the given vertices, oriented so the interior
    /// point lies strictly on the inner (h-negative) side.
    fn alloc(
        &mut self,
        facet_verts: &[usize],
        coords: &[&[f64]],
        interior: &[f64],
    ) -> Result<usize, GeometryError> {
        let n = self.n;
        debug_assert_eq!(facet_verts.len(), n);
        let base = coords[facet_verts[0]];
        let mut edges = vec![0.0; (n - 1) * n];
        for (r, &v) in facet_verts[1..].iter().enumerate() {
            for c in 0..n {
                edges[r * n + c] = coords[v][c] - base[c];
            }
        }
        let (mut normal, raw_norm) =
            linalg::hyperplane_normal(&edges, n).ok_or(GeometryError::DegenerateFacet)?;
        let mut offset = linalg::dot(base, &normal);
        let band = predicate_band(n, raw_norm);

        // Orient outward: the interior must satisfy ⟨interior, u⟩ < h.
        let side = linalg::dot(interior, &normal);
        let mut flip = false;
        let margin = offset - side;
        if margin.abs() <= band {
            // Too close to call in floats; the raw-order exact sign of the
            // interior settles it (+1 means the raw normal already points
            // away from the interior).
            let simplex: Vec<&[f64]> = facet_verts.iter().map(|&v| coords[v]).collect();
            match exact::orientation_sign(&simplex, interior) {
                1 => {}
                -1 => flip = true,
                _ => return Err(GeometryError::DegenerateFacet),
            }
        } else if margin < 0.0 {
            flip = true;
        }
        if flip {
            for x in &mut normal {
                *x = -*x;
            }
            offset = -offset;
        }

        let slot = match self.free.pop() {
            Some(s) => s,
            None => {
                let s = self.capacity();
                self.verts.resize((s + 1) * n, 0);
                self.normals.resize((s + 1) * n, 0.0);
                self.offsets.resize(s + 1, 0.0);
                self.bands.resize(s + 1, 0.0);
                self.flipped.resize(s + 1, false);
                self.neighbors.resize((s + 1) * n, usize::MAX);
                self.alive.resize(s + 1, false);
                s
            }
        };
        self.verts[slot * n..(slot + 1) * n].copy_from_slice(facet_verts);
        self.normals[slot * n..(slot + 1) * n].copy_from_slice(&normal);
        self.offsets[slot] = offset;
        self.bands[slot] = band;
        self.flipped[slot] = flip;
        self.neighbors[slot * n..(slot + 1) * n].fill(usize::MAX);
        self.alive[slot] = true;
        self.live_count += 1;
        Ok(slot)
    }

    /// Is `p` strictly beyond this facet's hyperplane?
    fn is_visible(&self, slot: usize, p: &[f64], coords: &[&[f64]]) -> bool {
        let n = self.n;
        let s = linalg::dot(&self.normals[slot * n..(slot + 1) * n], p) - self.offsets[slot];
        let band = self.bands[slot];
        if s > band {
            return true;
        }
        if s < -band {
            return false;
        }
        // Near-tie: decide exactly. The raw-order sign convention gives
        // "outside" as -1 for an unflipped normal, +1 for a flipped one.
        let simplex: Vec<&[f64]> = self.vertices_of(slot).iter().map(|&v| coords[v]).collect();
        let sign = exact::orientation_sign(&simplex, p);
        if self.flipped[slot] {
            sign == 1
        } else {
            sign == -1
        }
    }
}

/// Tolerance band half-width for a facet whose raw cross-product norm is
/// `raw_norm`: the base band plus a bound on the error of the normalized
/// cofactor normal (slivers amplify floating point error by 1/raw_norm).
fn predicate_band(n: usize, raw_norm: f64) -> f64 {
    let nf = n as f64;
    let cofactor_err = 4.0 * nf.sqrt() * 2f64.powi(n as i32) * nf.powi(3) * f64::EPSILON;
    PREDICATE_TOL + 2.0 * cofactor_err / raw_norm
}

/// Greedy affinely-independent seed: point 0 plus, at each stage, the
/// point with the largest residual against the current affine basis.
fn initial_simplex(coords: &[&[f64]], n: usize) -> Result<Vec<usize>, GeometryError> {
    let base = coords[0];
    let mut chosen = vec![0usize];
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut resid = vec![0.0; n];
    for _ in 0..n {
        let mut best_idx = usize::MAX;
        let mut best_norm = RESIDUAL_TOL;
        let mut best_resid = vec![0.0; n];
        for (i, point) in coords.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            for (r, (a, b)) in resid.iter_mut().zip(point.iter().zip(base)) {
                *r = a - b;
            }
            for q in &basis {
                let c = linalg::dot(q, &resid);
                for (r, qq) in resid.iter_mut().zip(q) {
                    *r -= c * qq;
                }
            }
            let len = linalg::norm(&resid);
            if len > best_norm {
                best_norm = len;
                best_idx = i;
                best_resid.copy_from_slice(&resid);
            }
        }
        if best_idx == usize::MAX {
            return Err(GeometryError::DegenerateInput { tol: RESIDUAL_TOL });
        }
        for x in &mut best_resid {
            *x /= best_norm;
        }
        basis.push(best_resid);
        chosen.push(best_idx);
    }
    Ok(chosen)
}

/// Convex hull of `points` on `∂B_n`, with simplicial facets, outward
/// normals, exact facet distances and the origin-containment flag.
pub fn convex_hull(points: &[UnitVector], n: usize) -> Result<SimplicialPolytope, GeometryError> {
    if !(2..=10).contains(&n) {
        return Err(GeometryError::DimensionOutOfRange(n));
    }
    if points.len() < n + 1 {
        return Err(GeometryError::TooFewPoints {
            needed: n + 1,
            got: points.len(),
            dim: n,
        });
    }
    for p in points {
        if p.dim() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }
    let coords: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();

    let init = initial_simplex(&coords, n)?;
    let mut interior = vec![0.0; n];
    for &i in &init {
        for (a, x) in interior.iter_mut().zip(coords[i]) {
            *a += x;
        }
    }
    for a in &mut interior {
        *a /= (n + 1) as f64;
    }

    let mut store = FacetStore::new(n);
    let mut slots = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let facet_verts: Vec<usize> = init
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, &v)| v)
            .collect();
        slots.push(store.alloc(&facet_verts, &coords, &interior)?);
    }
    // In the initial simplex, the facet omitting vertex j meets the facet
    // omitting vertex k across the ridge omitting both.
    for j in 0..=n {
        let mut pos = 0;
        for k in 0..=n {
            if k == j {
                continue;
            }
            store.neighbors[slots[j] * n + pos] = slots[k];
            pos += 1;
        }
    }

    let mut in_init = vec![false; points.len()];
    for &i in &init {
        in_init[i] = true;
    }

    let mut visible: Vec<usize> = Vec::new();
    let mut visible_mark: Vec<bool> = Vec::new();
    // (ridge vertices, supporting hidden facet, slot of the dead facet in
    // the hidden facet's neighbor list)
    let mut horizon: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    let mut ridge_map: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();

    for (p_idx, p) in coords.iter().enumerate() {
        if in_init[p_idx] {
            continue;
        }

        visible.clear();
        visible_mark.resize(store.capacity(), false);
        for slot in 0..store.capacity() {
            if store.alive[slot] && store.is_visible(slot, p, &coords) {
                visible.push(slot);
                visible_mark[slot] = true;
            }
        }
        if visible.is_empty() {
            continue; // Duplicate or on-facet point; never a new vertex.
        }

        horizon.clear();
        for &f in &visible {
            for k in 0..n {
                let g = store.neighbors[f * n + k];
                if !visible_mark[g] {
                    let ridge: Vec<usize> = store
                        .vertices_of(f)
                        .iter()
                        .enumerate()
                        .filter(|(pos, _)| *pos != k)
                        .map(|(_, &v)| v)
                        .collect();
                    let g_pos = (0..n)
                        .find(|&kk| store.neighbors[g * n + kk] == f)
                        .ok_or_else(|| {
                            GeometryError::HullCorrupted("asymmetric ridge adjacency".into())
                        })?;
                    horizon.push((ridge, g, g_pos));
                }
            }
        }

        for &f in &visible {
            store.kill(f);
            visible_mark[f] = false;
        }

        ridge_map.clear();
        for (ridge, g, g_pos) in horizon.drain(..) {
            let mut facet_verts = ridge;
            facet_verts.push(p_idx);
            let slot = store.alloc(&facet_verts, &coords, &interior)?;
            // Across the old ridge (opposite the apex, which sits last).
            store.neighbors[slot * n + (n - 1)] = g;
            store.neighbors[g * n + g_pos] = slot;
            // Ridges shared with sibling fan facets: omit one ridge vertex.
            for r in 0..n - 1 {
                let mut key: Vec<usize> = store
                    .vertices_of(slot)
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| *pos != r)
                    .map(|(_, &v)| v)
                    .collect();
                key.sort_unstable();
                match ridge_map.remove(&key) {
                    Some((s2, r2)) => {
                        store.neighbors[slot * n + r] = s2;
                        store.neighbors[s2 * n + r2] = slot;
                    }
                    None => {
                        ridge_map.insert(key, (slot, r));
                    }
                }
            }
        }
        if !ridge_map.is_empty() {
            return Err(GeometryError::HullCorrupted(
                "horizon fan left unmatched ridges".into(),
            ));
        }
        visible_mark.resize(store.capacity(), false);
    }

    // Final facet measurements against the centroid of the hull vertices.
    let mut used = vec![false; points.len()];
    for slot in 0..store.capacity() {
        if store.alive[slot] {
            for &v in store.vertices_of(slot) {
                used[v] = true;
            }
        }
    }
    let mut centroid = vec![0.0; n];
    let mut count = 0.0;
    for (i, &u) in used.iter().enumerate() {
        if u {
            for (a, x) in centroid.iter_mut().zip(coords[i]) {
                *a += x;
            }
            count += 1.0;
        }
    }
    for a in &mut centroid {
        *a /= count;
    }

    let mut facets = Vec::with_capacity(store.live_count);
    for slot in 0..store.capacity() {
        if !store.alive[slot] {
            continue;
        }
        let idx = store.vertices_of(slot).to_vec();
        let vert_coords: Vec<&[f64]> = idx.iter().map(|&v| coords[v]).collect();
        let fg = facet_geometry(&vert_coords, &centroid)?;
        facets.push(Facet {
            vertex_indices: idx,
            outward_normal: UnitVector::new(fg.outward_normal)?,
            offset: fg.offset,
            volume: fg.volume,
            min_dist: fg.min_dist,
        });
    }

    let contains_origin = facets.iter().all(|f| f.offset > super::ORIGIN_OFFSET_TOL);
    Ok(SimplicialPolytope {
        dim: n,
        vertices: points.to_vec(),
        facets,
        contains_origin,
    })
}

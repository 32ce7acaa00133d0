//! Vertex cones of lattice polytopes.
//!
//! The cone of `P` at a vertex `v` is `ℝ≥0·(P - v)`. It is cut out by the
//! facets of `P` through `v`, whose primitive inward normals generate the
//! rays of the dual cone. The primitive edge directions at `v` generate the
//! cone itself. Both are kept in lexicographic order, with the apex moved to
//! the origin.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::small;
use crate::polytope::{cross, dot, for_each_combination, primitive_vec, LatticePoint, LatticePolytope, PointSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCone {
    pub apex: LatticePoint,
    /// Primitive ray generators of the cone.
    pub edge_generators: Vec<LatticePoint>,
    /// Primitive ray generators of the dual cone.
    pub dual_generators: Vec<Vec<i64>>,
}

impl VertexCone {
    /// The pointed full-dimensional cone cut out by `⟨u, x⟩ ≥ 0` for the given
    /// normals, which must be primitive and irredundant.
    pub fn from_dual_generators(apex: LatticePoint, mut duals: Vec<Vec<i64>>) -> Result<Self> {
        let n = apex.dim();
        if duals.iter().any(|u| u.len() != n) {
            return Err(Error::Shape("dual generator of wrong rank".into()));
        }
        if small::rank(&duals) != n {
            return Err(Error::Argument("cone is not pointed".into()));
        }
        duals.sort();
        duals.dedup();
        let mut rays = Vec::new();
        for_each_combination(duals.len(), n - 1, |idx| {
            let rows: Vec<Vec<i64>> = idx.iter().map(|&i| duals[i].clone()).collect();
            let Some(mut r) = primitive_vec(cross(&rows, n)?) else {
                return Ok(());
            };
            let signs: Vec<i32> = duals.iter().map(|u| dot(u, &r).signum() as i32).collect();
            if signs.iter().all(|&s| s <= 0) {
                r.iter_mut().for_each(|x| *x = -*x);
            } else if signs.iter().any(|&s| s < 0) {
                return Ok(());
            }
            rays.push(LatticePoint::new(r));
            Ok(())
        })?;
        rays.sort();
        rays.dedup();
        Ok(VertexCone {
            apex,
            edge_generators: rays,
            dual_generators: duals,
        })
    }

    /// The cone generated by the given rays, taken as the vertex cone of
    /// `Conv{0, rays}` at the origin.
    pub fn from_rays(rays: &[LatticePoint]) -> Result<Self> {
        let n = rays.first().map(LatticePoint::dim).ok_or_else(|| Error::Argument("no rays".into()))?;
        let mut pts = vec![LatticePoint::origin(n)];
        pts.extend(rays.iter().cloned());
        let q = LatticePolytope::convex_hull(&pts)?;
        vertex_cone(&q, &LatticePoint::origin(n))
    }

    pub fn dim(&self) -> usize {
        self.apex.dim()
    }

    /// Membership of a direction (apex at the origin).
    pub fn contains(&self, x: &[i64]) -> bool {
        self.dual_generators.iter().all(|u| dot(u, x) >= 0)
    }

    pub fn contains_in_interior(&self, x: &[i64]) -> bool {
        self.dual_generators.iter().all(|u| dot(u, x) >= 1)
    }

    /// `Σ u_j`, which is strictly positive on every nonzero cone element.
    fn dual_sum(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.dim()];
        for u in &self.dual_generators {
            for (a, b) in w.iter_mut().zip(u) {
                *a += b;
            }
        }
        w
    }
}

/// The cone of `p` at the vertex `v`.
pub fn vertex_cone(p: &LatticePolytope, v: &LatticePoint) -> Result<VertexCone> {
    if p.vertex_index(v).is_none() {
        return Err(Error::Argument(format!("{v} is not a vertex")));
    }
    let duals = p.facets_through(v).into_iter().map(|f| f.normal.clone()).collect();
    VertexCone::from_dual_generators(v.clone(), duals)
}

/// `Q = Conv{0, m_1, …, m_t}` over the edge generators.
pub fn cone_base_polytope(c: &VertexCone) -> Result<LatticePolytope> {
    let mut pts = vec![LatticePoint::origin(c.dim())];
    pts.extend(c.edge_generators.iter().cloned());
    LatticePolytope::convex_hull(&pts)
}

/// Lattice points `x` of the cone (apex at the origin) with `⟨u_j, x⟩ ≤ h`
/// for every dual generator, and the subset with every pairing at least 1.
///
/// The scan runs over the parallelepiped `0 ≤ ⟨b_i, x⟩ ≤ h` of the `n`
/// independent dual generators `B` with the largest `|det B|`. Writing
/// `x = V·z` with `B·V` lower triangular turns each coordinate of `z` into an
/// interval given the previous ones.
pub fn truncated_cone_points(c: &VertexCone, height_bound: i64) -> Result<(PointSet, PointSet)> {
    if height_bound < 1 {
        return Err(Error::Argument(format!("height bound {height_bound} must be positive")));
    }
    let n = c.dim();
    let duals = &c.dual_generators;
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for_each_combination(duals.len(), n, |idx| {
        let rows: Vec<&Vec<i64>> = idx.iter().map(|&i| &duals[i]).collect();
        let d = small::det(&rows)?.abs();
        if !d.is_zero() && best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, idx.to_vec()));
        }
        Ok(())
    })?;
    let (_, idx) = best.ok_or_else(|| Error::Shape("cone is not pointed".into()))?;
    let b: Vec<Vec<i64>> = idx.iter().map(|&i| duals[i].clone()).collect();
    let (h, v) = small::hnf(&b)?;

    let bound = i128::from(height_bound);
    let mut all = PointSet::new();
    let mut interior = PointSet::new();
    let mut z = vec![0i128; n];
    let mut hi = vec![0i128; n];
    // Interval of z[i] given z[..i], from 0 ≤ Σ_{k≤i} h[i][k]·z[k] ≤ bound.
    let range = |i: usize, z: &[i128]| -> (i128, i128) {
        let partial: i128 = (0..i).map(|k| h[i][k] as i128 * z[k]).sum();
        let d = h[i][i] as i128;
        let lo = (-partial).div_euclid(d) + i128::from((-partial).rem_euclid(d) != 0);
        (lo, (bound - partial).div_euclid(d))
    };
    let mut i = 0;
    (z[0], hi[0]) = range(0, &z);
    loop {
        if z[i] > hi[i] {
            if i == 0 {
                return Ok((all, interior));
            }
            i -= 1;
            z[i] += 1;
            continue;
        }
        if i + 1 < n {
            i += 1;
            (z[i], hi[i]) = range(i, &z);
            continue;
        }
        let mut coords = vec![0i64; n];
        for (r, out) in v.iter().zip(coords.iter_mut()) {
            let x: i128 = r.iter().zip(&z).map(|(&a, &b)| a as i128 * b).sum();
            *out = i64::try_from(x).map_err(|_| Error::Overflow("cone truncation"))?;
        }
        let pairings: Vec<i128> = duals.iter().map(|u| dot(u, &coords)).collect();
        if pairings.iter().all(|p| (0..=bound).contains(p)) {
            let p = LatticePoint::new(coords);
            if pairings.iter().all(|&p| p >= 1) {
                interior.insert(p.clone());
            }
            all.insert(p);
        }
        z[i] += 1;
    }
}

/// Definitional Gorenstein test on a truncation: looks for a lattice point
/// `m0` of the interior such that every interior point `x` of the truncation
/// has `x - m0` in the cone. Returns `m0` relative to the apex.
///
/// Such an `m0` must minimize `⟨Σ u_j, ·⟩` over the interior, so only the
/// unique minimizer is tried.
pub fn definitional_gorenstein_point(c: &VertexCone, height_bound: i64) -> Result<Option<LatticePoint>> {
    let (_, interior) = truncated_cone_points(c, height_bound)?;
    let w = c.dual_sum();
    let mut best: Option<(i128, &LatticePoint)> = None;
    let mut tie = false;
    for x in interior.iter() {
        let val = dot(&w, x);
        match best {
            Some((b, _)) if val > b => {}
            Some((b, _)) if val == b => tie = true,
            _ => {
                best = Some((val, x));
                tie = false;
            }
        }
    }
    let Some((_, m0)) = best else { return Ok(None) };
    if tie {
        return Ok(None);
    }
    let ok = interior.iter().all(|x| c.contains(&(x - m0)));
    Ok(ok.then(|| m0.clone()))
}

/// Height bound for the definitional test: twice the largest pairing of a
/// claimed `m0` (relative to the apex), or `2·max_j ⟨u_j, s⟩` with `s` the sum
/// of the edge generators when nothing is claimed.
///
/// The second bound is enough to refute every candidate in a non-Gorenstein
/// cone: for each `j` some lattice point `y` of the cone has `⟨u_j, y⟩ = 1`
/// and all pairings at most `⟨u_k, s⟩` (an edge generator or a point of a
/// fundamental parallelepiped), and adding the generators on facet `j` makes
/// it interior while keeping `⟨u_j, ·⟩ = 1`.
pub fn default_height_bound(c: &VertexCone, claimed: Option<&LatticePoint>) -> i64 {
    match claimed {
        Some(m0) => {
            let max = c.dual_generators.iter().map(|u| dot(u, m0)).max().unwrap_or(1);
            (2 * max).max(1) as i64
        }
        None => {
            let mut s = vec![0i64; c.dim()];
            for m in &c.edge_generators {
                for (a, b) in s.iter_mut().zip(m.iter()) {
                    *a += b;
                }
            }
            let max = c.dual_generators.iter().map(|u| dot(u, &s)).max().unwrap_or(1);
            (2 * max).max(1) as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|c| LatticePoint::new(c.to_vec())).collect()
    }

    fn hull(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&pts(v)).unwrap()
    }

    #[test]
    fn square_corner_is_self_dual() {
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let c = vertex_cone(&sq, &LatticePoint::from([1, 1])).unwrap();
        assert_eq!(c.edge_generators, pts(&[&[-1, 0], &[0, -1]]));
        assert_eq!(c.dual_generators, vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn counterexample_cone() {
        let p = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[2, 2, 5]]);
        let c = vertex_cone(&p, &LatticePoint::origin(3)).unwrap();
        assert_eq!(c.edge_generators, pts(&[&[0, 1, 0], &[1, 0, 0], &[2, 2, 5]]));
        assert_eq!(c.dual_generators, vec![vec![0, 0, 1], vec![0, 5, -2], vec![5, 0, -2]]);
    }

    #[test]
    fn triangle_cone_duals() {
        let tri = hull(&[&[0, 0], &[1, 0], &[3, 4]]);
        let c = vertex_cone(&tri, &LatticePoint::origin(2)).unwrap();
        assert_eq!(c.dual_generators, vec![vec![0, 1], vec![4, -3]]);
    }

    #[test]
    fn non_vertex_rejected() {
        let tri = hull(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(vertex_cone(&tri, &LatticePoint::from([1, 0])).is_err());
    }

    #[test]
    fn non_simple_vertex() {
        let pyr = hull(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        let c = vertex_cone(&pyr, &LatticePoint::from([1, 1, 1])).unwrap();
        assert_eq!(c.dual_generators.len(), 4);
        assert_eq!(c.edge_generators, pts(&[&[-1, -1, -1], &[-1, 1, -1], &[1, -1, -1], &[1, 1, -1]]));
        for m in &c.edge_generators {
            let zeros = c.dual_generators.iter().filter(|u| dot(u, m) == 0).count();
            assert_eq!(zeros, 2);
        }
    }

    #[test]
    fn base_polytopes() {
        let basic = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let q = cone_base_polytope(&vertex_cone(&basic, &LatticePoint::origin(3)).unwrap()).unwrap();
        assert_eq!(q, basic);
        let d3 = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let q = cone_base_polytope(&vertex_cone(&d3, &LatticePoint::origin(3)).unwrap()).unwrap();
        assert_eq!(q, d3);
        let big = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[2, 2, 4]]);
        let q = cone_base_polytope(&vertex_cone(&big, &LatticePoint::origin(3)).unwrap()).unwrap();
        assert_eq!(q, d3);
    }

    #[test]
    fn orthant_truncation() {
        let c = VertexCone::from_rays(&pts(&[&[1, 0], &[0, 1]])).unwrap();
        let (all, int) = truncated_cone_points(&c, 1).unwrap();
        assert_eq!(all.to_vec(), pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
        assert_eq!(int.to_vec(), pts(&[&[1, 1]]));
        assert!(truncated_cone_points(&c, 0).is_err());
    }

    #[test]
    fn skew_cone_truncation() {
        // Cone over (1,0),(1,2): duals (0,1) and (2,-1).
        let c = VertexCone::from_rays(&pts(&[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(c.dual_generators, vec![vec![0, 1], vec![2, -1]]);
        let (all, int) = truncated_cone_points(&c, 2).unwrap();
        assert_eq!(all.to_vec(), pts(&[&[0, 0], &[1, 0], &[1, 1], &[1, 2], &[2, 2]]));
        assert_eq!(int.to_vec(), pts(&[&[1, 1], &[2, 2]]));
        assert_eq!(definitional_gorenstein_point(&c, 2).unwrap(), Some(LatticePoint::from([1, 1])));
    }

    #[test]
    fn counterexample_truncation() {
        let p = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[2, 2, 5]]);
        let c = vertex_cone(&p, &LatticePoint::origin(3)).unwrap();
        let (_, int) = truncated_cone_points(&c, 1).unwrap();
        assert!(int.is_empty());
        let h = default_height_bound(&c, None);
        assert_eq!(h, 10);
        assert_eq!(definitional_gorenstein_point(&c, h).unwrap(), None);
    }

    #[test]
    fn d3_definitional() {
        let d3 = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let c = vertex_cone(&d3, &LatticePoint::origin(3)).unwrap();
        let m0 = LatticePoint::from([1, 1, 1]);
        let h = default_height_bound(&c, Some(&m0));
        assert_eq!(h, 2);
        assert_eq!(definitional_gorenstein_point(&c, h).unwrap(), Some(m0));
    }

    #[test]
    fn skewed_cone_needs_a_tall_truncation() {
        let p = hull(&[&[-1, 0, 2], &[0, 0, -1], &[1, -2, 1], &[2, 1, 0]]);
        let mut refuted = 0;
        for v in p.vertices() {
            let c = vertex_cone(&p, v).unwrap();
            let h = default_height_bound(&c, None);
            let gorenstein = crate::gorenstein::gorenstein_at_vertex(&p, v).unwrap().is_gorenstein();
            assert_eq!(definitional_gorenstein_point(&c, h).unwrap().is_some(), gorenstein);
            if !gorenstein && definitional_gorenstein_point(&c, 9).unwrap().is_some() {
                refuted += 1;
            }
        }
        // Some vertex looks Gorenstein when truncated at height 9.
        assert!(refuted > 0);
    }
}

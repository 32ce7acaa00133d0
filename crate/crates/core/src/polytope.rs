//! Full-dimensional lattice polytopes.
//!
//! A [`LatticePolytope`] keeps its vertices in lexicographic order together
//! with its irredundant facet description, computed once at construction.
//! Facets are stored in inward form: `⟨normal, x⟩ + offset ≥ 0` on the
//! polytope, with a primitive normal.
//!
//! Coordinates are `i64`. Pairings are evaluated in `i128`, which cannot
//! overflow under the [`COORD_LIMIT`], [`MAX_DIM`] and [`MAX_DILATION`]
//! bounds enforced here; facet normals come from the checked determinant
//! path in [`crate::linalg::small`].

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Deref, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::small;

/// Largest accepted absolute value of a vertex coordinate.
pub const COORD_LIMIT: i64 = 1 << 32;
/// Largest supported ambient rank.
pub const MAX_DIM: usize = 12;
/// Largest dilation factor accepted by the lattice-point scans.
pub const MAX_DILATION: i64 = 1 << 16;

/// A point of `ℤ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    /// The `i`-th standard basis vector of `ℤ^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn scale(&self, k: i64) -> LatticePoint {
        LatticePoint(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Greatest common divisor of the coordinates (0 for the origin).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, &x| gcd(g, x))
    }

    /// Divides out the content, so the result is primitive.
    pub fn primitive(&self) -> LatticePoint {
        let g = self.content();
        if g <= 1 {
            return self.clone();
        }
        LatticePoint(self.0.iter().map(|x| x / g).collect())
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;

    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;

    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub(crate) fn dot(u: &[i64], x: &[i64]) -> i128 {
    u.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
}

/// A set of lattice points in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(BTreeSet<LatticePoint>);

impl PointSet {
    pub fn new() -> Self {
        PointSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.0.contains(p)
    }

    pub fn insert(&mut self, p: LatticePoint) -> bool {
        self.0.insert(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<LatticePoint> {
        self.0.iter().cloned().collect()
    }
}

impl FromIterator<LatticePoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        PointSet(iter.into_iter().collect())
    }
}

impl IntoIterator for PointSet {
    type Item = LatticePoint;
    type IntoIter = std::collections::btree_set::IntoIter<LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// A facet inequality `⟨normal, x⟩ + offset ≥ 0` with primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `⟨normal, x⟩ + offset`, the lattice distance of `x` from the facet
    /// hyperplane (positive inside).
    pub fn eval(&self, x: &[i64]) -> i128 {
        dot(&self.normal, x) + self.offset as i128
    }

    /// The same pairing against the facet of `k·P`.
    pub fn eval_dilated(&self, x: &[i64], k: i64) -> i128 {
        dot(&self.normal, x) + self.offset as i128 * k as i128
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.eval(x) == 0
    }
}

/// A pyramid decomposition `P = Conv{F, v}`: indices into the facet and
/// vertex lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pyramid {
    pub facet: usize,
    pub apex: usize,
}

/// A full-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

/// The generalized cross product of `n-1` vectors in `ℤ^n`: the vector of
/// signed maximal minors, orthogonal to every row. It is zero exactly when
/// the rows are linearly dependent.
pub(crate) fn cross(rows: &[Vec<i64>], n: usize) -> Result<Vec<i64>> {
    debug_assert_eq!(rows.len() + 1, n);
    match n {
        1 => Ok(vec![1]),
        2 => Ok(vec![rows[0][1], -rows[0][0]]),
        3 => {
            let (a, b) = (&rows[0], &rows[1]);
            let c = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
                (x as i128 * y as i128 - z as i128 * w as i128)
                    .try_into()
                    .map_err(|_| Error::Overflow("cross product"))
            };
            Ok(vec![
                c(a[1], b[2], a[2], b[1])?,
                c(a[2], b[0], a[0], b[2])?,
                c(a[0], b[1], a[1], b[0])?,
            ])
        }
        _ => {
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let d = small::det_i64(&minor)?;
                out.push(if j % 2 == 0 { d } else { -d });
            }
            Ok(out)
        }
    }
}

/// Divides a vector by the gcd of its entries; `None` for the zero vector.
pub(crate) fn primitive_vec(v: Vec<i64>) -> Option<Vec<i64>> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    (g != 0).then(|| v.into_iter().map(|x| x / g).collect())
}

/// The primitive normal of the hyperplane through `points`, or `None` if the
/// points are affinely dependent.
fn hyperplane_normal(points: &[&LatticePoint]) -> Result<Option<Vec<i64>>> {
    let n = points[0].dim();
    debug_assert_eq!(points.len(), n);
    let base = points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Ok(primitive_vec(cross(&diffs, n)?))
}

/// The facet through `on` if every point of `all` lies weakly on one side.
fn supporting_facet<'a>(
    on: &[&LatticePoint],
    all: impl Iterator<Item = &'a LatticePoint> + Clone,
) -> Result<Option<Facet>> {
    let Some(normal) = hyperplane_normal(on)? else {
        return Ok(None);
    };
    let offset = -dot(&normal, on[0]);
    let offset: i64 = offset.try_into().map_err(|_| Error::Overflow("facet offset"))?;
    let mut facet = Facet { normal, offset };
    let (mut pos, mut neg) = (false, false);
    for p in all {
        match facet.eval(p).signum() {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
        if pos && neg {
            return Ok(None);
        }
    }
    if neg {
        facet.normal.iter_mut().for_each(|x| *x = -*x);
        facet.offset = -facet.offset;
    }
    Ok(Some(facet))
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if k > n {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx)?;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(());
            }
        }
        if idx[i] == i + n - k {
            return Ok(());
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl LatticePolytope {
    /// Convex hull of a finite point set spanning the ambient space.
    pub fn convex_hull(points: &[LatticePoint]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Argument("empty point set".into()));
        };
        let n = first.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::Argument(format!("unsupported ambient rank {n}")));
        }
        for p in points {
            if p.dim() != n {
                return Err(Error::Shape(format!(
                    "point {p} has rank {}, expected {n}",
                    p.dim()
                )));
            }
            if p.iter().any(|x| x.unsigned_abs() > COORD_LIMIT as u64) {
                return Err(Error::Overflow("vertex coordinate"));
            }
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();

        let mut base: Vec<&LatticePoint> = vec![&pts[0]];
        let mut diffs: Vec<Vec<i64>> = Vec::new();
        for p in &pts[1..] {
            if base.len() == n + 1 {
                break;
            }
            diffs.push((p - &pts[0]).into_coords());
            if small::rank(&diffs) == diffs.len() {
                base.push(p);
            } else {
                diffs.pop();
            }
        }
        if base.len() < n + 1 {
            let actual = small::rank(
                &pts.iter()
                    .map(|p| (p - &pts[0]).into_coords())
                    .collect::<Vec<_>>(),
            );
            return Err(Error::Dimension { expected: n, actual });
        }

        let mut poly = Self::simplex(&base)?;
        for p in &pts {
            poly = poly.extend(p)?;
        }
        Ok(poly)
    }

    fn simplex(points: &[&LatticePoint]) -> Result<Self> {
        let n = points[0].dim();
        let mut facets = BTreeSet::new();
        for skip in 0..=n {
            let on: Vec<&LatticePoint> = points
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, p)| *p)
                .collect();
            let facet = supporting_facet(&on, points.iter().copied())?
                .expect("affinely independent points span a facet");
            facets.insert(facet);
        }
        let mut vertices: Vec<LatticePoint> = points.iter().map(|&p| p.clone()).collect();
        vertices.sort();
        Ok(LatticePolytope {
            dim: n,
            vertices,
            facets: facets.into_iter().collect(),
        })
    }

    /// `Conv(P ∪ {x})`, updating the facet description incrementally.
    pub fn extend(&self, x: &LatticePoint) -> Result<Self> {
        if x.dim() != self.dim {
            return Err(Error::Shape(format!("point {x} in rank {}", self.dim)));
        }
        if x.iter().any(|c| c.unsigned_abs() > COORD_LIMIT as u64) {
            return Err(Error::Overflow("vertex coordinate"));
        }
        let visible: Vec<&Facet> = self.facets.iter().filter(|f| f.eval(x) < 0).collect();
        if visible.is_empty() {
            return Ok(self.clone());
        }
        let n = self.dim;
        let mut facets: BTreeSet<Facet> = self
            .facets
            .iter()
            .filter(|f| f.eval(x) >= 0)
            .cloned()
            .collect();

        // New facets pass through x and a ridge of the visible region.
        let horizon: Vec<&LatticePoint> = self
            .vertices
            .iter()
            .filter(|v| visible.iter().any(|f| f.contains(v)))
            .collect();
        let all = || self.vertices.iter().chain(std::iter::once(x));
        for_each_combination(horizon.len(), n - 1, |idx| {
            let mut on: Vec<&LatticePoint> = Vec::with_capacity(n);
            on.push(x);
            on.extend(idx.iter().map(|&i| horizon[i]));
            if let Some(f) = supporting_facet(&on, all())? {
                facets.insert(f);
            }
            Ok(())
        })?;

        let facets: Vec<Facet> = facets.into_iter().collect();
        let mut vertices: Vec<LatticePoint> = all()
            .filter(|v| {
                let normals: Vec<&[i64]> = facets
                    .iter()
                    .filter(|f| f.contains(v))
                    .map(|f| f.normal.as_slice())
                    .collect();
                normals.len() >= n && small::rank(&normals) == n
            })
            .cloned()
            .collect();
        vertices.sort();
        Ok(LatticePolytope {
            dim: n,
            vertices,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Irredundant facet inequalities in lexicographic order.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_index(&self, v: &LatticePoint) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Facets passing through the given point.
    pub fn facets_through(&self, x: &[i64]) -> Vec<&Facet> {
        self.facets.iter().filter(|f| f.contains(x)).collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.eval(x) >= 0)
    }

    pub fn contains_in_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.eval(x) > 0)
    }

    /// Membership in `k·P`, or in its interior when `strict`.
    pub fn dilation_contains(&self, x: &[i64], k: i64, strict: bool) -> bool {
        let bound = i128::from(strict);
        self.facets.iter().all(|f| f.eval_dilated(x, k) >= bound)
    }

    /// `k·P = {k·x : x ∈ P}`.
    pub fn dilate(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::Argument(format!("dilation factor {k} must be positive")));
        }
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let mut c = Vec::with_capacity(self.dim);
            for &x in v.iter() {
                let y = x.checked_mul(k).ok_or(Error::Overflow("dilation"))?;
                if y.unsigned_abs() > COORD_LIMIT as u64 {
                    return Err(Error::Overflow("dilation"));
                }
                c.push(y);
            }
            vertices.push(LatticePoint(c));
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let offset = f.offset.checked_mul(k).ok_or(Error::Overflow("dilation"))?;
            facets.push(Facet {
                normal: f.normal.clone(),
                offset,
            });
        }
        Ok(LatticePolytope {
            dim: self.dim,
            vertices,
            facets,
        })
    }

    /// Image under `x ↦ U·x + t` for a unimodular `U` given by rows.
    pub fn transform(&self, u: &[Vec<i64>], t: &[i64]) -> Result<Self> {
        let n = self.dim;
        if u.len() != n || u.iter().any(|r| r.len() != n) || t.len() != n {
            return Err(Error::Shape("transform does not match ambient rank".into()));
        }
        if small::det_i64(u)?.abs() != 1 {
            return Err(Error::Argument("transform is not unimodular".into()));
        }
        let mut image = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let mut c = Vec::with_capacity(n);
            for (row, &ti) in u.iter().zip(t) {
                let y = dot(row, v) + ti as i128;
                c.push(i64::try_from(y).map_err(|_| Error::Overflow("transform"))?);
            }
            image.push(LatticePoint(c));
        }
        Self::convex_hull(&image)
    }

    pub fn translate(&self, t: &[i64]) -> Result<Self> {
        let id: Vec<Vec<i64>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| i64::from(i == j)).collect())
            .collect();
        self.transform(&id, t)
    }

    fn bounding_box(&self, k: i64) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for i in 0..self.dim {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo.iter().map(|x| x * k).collect(), hi.iter().map(|x| x * k).collect())
    }

    /// Facets of the projections of `P` onto its coordinate prefixes of
    /// length `1..n`, used to prune the scan. Only worth building when the
    /// bounding box is much larger than the polytope, as for skewed images.
    fn prefix_projections(&self) -> Vec<Vec<Facet>> {
        let n = self.dim;
        let (lo, hi) = self.bounding_box(1);
        let prefix_box: f64 = (0..n - 1).map(|i| (hi[i] - lo[i] + 1) as f64).product();
        if prefix_box <= 4096.0 {
            return vec![Vec::new(); n - 1];
        }
        (1..n)
            .map(|m| {
                let pts: Vec<LatticePoint> = self
                    .vertices
                    .iter()
                    .map(|v| LatticePoint(v[..m].to_vec()))
                    .collect();
                Self::convex_hull(&pts).map(|q| q.facets).unwrap_or_default()
            })
            .collect()
    }

    /// Visits the lattice points of `k·P` (or of its interior) in
    /// lexicographic order; `visit` returns `false` to stop early.
    fn scan_dilation(&self, k: i64, strict: bool, mut visit: impl FnMut(&[i64]) -> bool) {
        assert!(
            (0..=MAX_DILATION).contains(&k),
            "dilation factor {k} outside supported range"
        );
        let n = self.dim;
        let (lo, hi) = self.bounding_box(k);
        let need = i128::from(strict);
        let last = n - 1;
        let mut levels = self.prefix_projections();
        levels.push(self.facets.clone());

        // Admissible range of coordinate `j` given `x[..j]`. The interior of a
        // projection is the projection of the interior, so `need` applies at
        // every level.
        let range = |j: usize, x: &[i64]| -> (i128, i128) {
            let mut tlo = lo[j] as i128;
            let mut thi = hi[j] as i128;
            for f in &levels[j] {
                let b: i128 = dot(&f.normal[..j], &x[..j]) + f.offset as i128 * k as i128;
                let a = f.normal[j] as i128;
                if a == 0 {
                    if b < need {
                        return (1, 0);
                    }
                } else if a > 0 {
                    tlo = tlo.max((need - b).div_euclid(a) + i128::from((need - b).rem_euclid(a) != 0));
                } else {
                    thi = thi.min((b - need).div_euclid(-a));
                }
                if tlo > thi {
                    return (1, 0);
                }
            }
            (tlo, thi)
        };

        let mut x = lo.clone();
        let mut ranges = vec![(0i128, 0i128); n];
        let mut cur = vec![0i128; n];
        let mut j = 0;
        ranges[0] = range(0, &x);
        cur[0] = ranges[0].0;
        loop {
            if cur[j] > ranges[j].1 {
                if j == 0 {
                    return;
                }
                j -= 1;
                cur[j] += 1;
                continue;
            }
            x[j] = cur[j] as i64;
            if j == last {
                if !visit(&x) {
                    return;
                }
                cur[j] += 1;
            } else {
                j += 1;
                ranges[j] = range(j, &x);
                cur[j] = ranges[j].0;
            }
        }
    }

    /// Lattice points of `k·P`.
    pub fn dilation_points(&self, k: i64) -> PointSet {
        let mut out = PointSet::new();
        self.scan_dilation(k, false, |x| {
            out.insert(LatticePoint(x.to_vec()));
            true
        });
        out
    }

    /// Interior lattice points of `k·P`.
    pub fn dilation_interior_points(&self, k: i64) -> PointSet {
        let mut out = PointSet::new();
        self.scan_dilation(k, true, |x| {
            out.insert(LatticePoint(x.to_vec()));
            true
        });
        out
    }

    /// `|k·P ∩ M|`, or the interior count when `strict`. Stops counting once
    /// `limit` is exceeded, returning `limit + 1`.
    pub fn count_dilation_points(&self, k: i64, strict: bool, limit: Option<usize>) -> usize {
        let mut count = 0usize;
        self.scan_dilation(k, strict, |_| {
            count += 1;
            limit.is_none_or(|l| count <= l)
        });
        count
    }

    pub fn lattice_points(&self) -> PointSet {
        self.dilation_points(1)
    }

    pub fn interior_lattice_points(&self) -> PointSet {
        self.dilation_interior_points(1)
    }

    /// `|Int(k·P) ∩ M|`
    pub fn interior_count(&self, k: i64) -> usize {
        self.count_dilation_points(k, true, None)
    }

    pub fn lattice_point_count(&self) -> usize {
        self.count_dilation_points(1, false, None)
    }

    /// Whether every lattice point of `(k+1)·P` is a sum of a lattice point
    /// of `k·P` and one of `P`.
    pub fn layer_equality(&self, k: i64) -> Result<bool> {
        if k < 1 {
            return Err(Error::Argument(format!("layer index {k} must be positive")));
        }
        let base = self.lattice_points().to_vec();
        let mut ok = true;
        let mut diff = vec![0i64; self.dim];
        self.scan_dilation(k + 1, false, |t| {
            let hit = base.iter().any(|p| {
                for i in 0..diff.len() {
                    diff[i] = t[i] - p[i];
                }
                self.dilation_contains(&diff, k, false)
            });
            ok = hit;
            hit
        });
        Ok(ok)
    }

    /// Default number of layers checked by [`Self::is_normal`]: `max(1, n-2)`.
    /// Layer equality holds for every `k ≥ n-1` on any lattice polytope.
    pub fn default_normality_bound(&self) -> i64 {
        (self.dim as i64 - 2).max(1)
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_up_to(self.default_normality_bound())
    }

    /// Layer equality for all `k` in `1..=bound`.
    pub fn is_normal_up_to(&self, bound: i64) -> bool {
        (1..=bound).all(|k| self.layer_equality(k).expect("positive layer index"))
    }

    /// All pyramid decompositions, ordered by facet index.
    pub fn pyramids(&self) -> Vec<Pyramid> {
        self.facets
            .iter()
            .enumerate()
            .filter_map(|(fi, f)| {
                let mut off = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !f.contains(v));
                let (apex, _) = off.next()?;
                off.next().is_none().then_some(Pyramid { facet: fi, apex })
            })
            .collect()
    }

    /// The first `(facet, apex)` pair exhibiting `P` as a pyramid.
    pub fn is_pyramid(&self) -> Option<Pyramid> {
        self.pyramids().into_iter().next()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// `|det|` of the edge matrix at the first vertex, for simplices.
    pub fn normalized_volume_of_simplex(&self) -> Result<i64> {
        if !self.is_simplex() {
            return Err(Error::Argument("polytope is not a simplex".into()));
        }
        let edges: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| (v - &self.vertices[0]).into_coords())
            .collect();
        Ok(small::det_i64(&edges)?.abs())
    }

    pub fn is_basic_simplex(&self) -> bool {
        self.is_simplex() && (self.normalized_volume_of_simplex() == Ok(1))
    }

    /// `|k·P ∩ M|` for `k = 0..=kmax`.
    pub fn ehrhart_counts(&self, kmax: i64) -> Result<Vec<u64>> {
        if kmax < self.dim as i64 {
            return Err(Error::Argument(format!(
                "need at least {} dilations, got {kmax}",
                self.dim
            )));
        }
        Ok((0..=kmax)
            .map(|k| self.count_dilation_points(k, false, None) as u64)
            .collect())
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "Conv{{{}}}", parts.join(", "))
    }
}

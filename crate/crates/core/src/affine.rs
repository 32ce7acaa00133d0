//! Coordinates on the saturated affine lattice spanned by a point set.
//!
//! A face of a lattice polytope, or any degenerate point set, spans an
//! affine subspace `A` of rank `r < n`. The lattice `(A - p₀) ∩ ℤ^n` is a
//! direct summand of `ℤ^n`, so there is a unimodular change of basis in which
//! it becomes the last `r` coordinates. [`AffineLattice`] stores that basis
//! and maps points back and forth.

use crate::error::{Error, Result};
use crate::linalg::small;
use crate::polytope::{dot, LatticePoint, LatticePolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    origin: LatticePoint,
    rank: usize,
    /// Columns form a basis of `ℤ^n` whose last `rank` columns span the
    /// direction lattice.
    basis: Vec<Vec<i64>>,
    /// Inverse of `basis`.
    inverse: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl AffineLattice {
    /// The affine lattice spanned by `points` (which must be nonempty and
    /// share one ambient rank).
    pub fn spanned_by(points: &[LatticePoint]) -> Result<Self> {
        let Some(origin) = points.first() else {
            return Err(Error::Argument("empty point set".into()));
        };
        let n = origin.dim();
        if points.iter().any(|p| p.dim() != n) {
            return Err(Error::Shape("points of mixed rank".into()));
        }
        let diffs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| (p - origin).into_coords())
            .filter(|d| d.iter().any(|&x| x != 0))
            .collect();
        let rank = small::rank(&diffs);
        let basis = if rank == 0 || rank == n {
            identity(n)
        } else {
            // Annihilator of the differences: kernel columns of D·U = H.
            let (_, u) = small::hnf(&diffs)?;
            let annihilator: Vec<Vec<i64>> = (rank..n)
                .map(|j| u.iter().map(|row| row[j]).collect())
                .collect();
            // The direction lattice is the integer kernel of the annihilator;
            // the transform's leading columns complete it to a basis.
            let (_, u2) = small::hnf(&annihilator)?;
            u2
        };
        let inverse = {
            let (h, u) = small::hnf(&basis)?;
            debug_assert_eq!(h, identity(n));
            u
        };
        Ok(AffineLattice {
            origin: origin.clone(),
            rank,
            basis,
            inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_rank(&self) -> usize {
        self.origin.dim()
    }

    pub fn origin(&self) -> &LatticePoint {
        &self.origin
    }

    fn full_coords(&self, x: &[i64]) -> Result<Vec<i64>> {
        let d: Vec<i64> = x.iter().zip(self.origin.iter()).map(|(a, b)| a - b).collect();
        self.inverse
            .iter()
            .map(|row| i64::try_from(dot(row, &d)).map_err(|_| Error::Overflow("projection")))
            .collect()
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        let n = self.ambient_rank();
        Ok(self.full_coords(x)?[..n - self.rank].iter().all(|&c| c == 0))
    }

    /// Coordinates of `x` in the affine lattice; an error if `x` lies off it.
    pub fn project(&self, x: &LatticePoint) -> Result<LatticePoint> {
        let n = self.ambient_rank();
        let c = self.full_coords(x)?;
        if c[..n - self.rank].iter().any(|&v| v != 0) {
            return Err(Error::Argument(format!("{x} is not on the affine lattice")));
        }
        Ok(LatticePoint::new(c[n - self.rank..].to_vec()))
    }

    /// Inverse of [`Self::project`].
    pub fn lift(&self, y: &LatticePoint) -> Result<LatticePoint> {
        let n = self.ambient_rank();
        if y.dim() != self.rank {
            return Err(Error::Shape(format!("expected {} coordinates", self.rank)));
        }
        let mut full = vec![0i64; n - self.rank];
        full.extend_from_slice(y);
        self.basis
            .iter()
            .zip(self.origin.iter())
            .map(|(row, &o)| {
                i64::try_from(dot(row, &full) + o as i128).map_err(|_| Error::Overflow("lift"))
            })
            .collect::<Result<Vec<i64>>>()
            .map(LatticePoint::new)
    }

    /// The convex hull of `points` as a full-dimensional polytope in this
    /// lattice's coordinates. `None` when the points span a single point.
    pub fn relative_hull(&self, points: &[LatticePoint]) -> Result<Option<LatticePolytope>> {
        if self.rank == 0 {
            return Ok(None);
        }
        let projected = points
            .iter()
            .map(|p| self.project(p))
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::convex_hull(&projected).map(Some)
    }
}

/// The vertices of `conv(points)` for a point set of any affine rank, in
/// lexicographic order.
pub fn hull_vertices_any(points: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let lattice = AffineLattice::spanned_by(points)?;
    match lattice.relative_hull(points)? {
        None => Ok(vec![points[0].clone()]),
        Some(hull) if lattice.rank() == lattice.ambient_rank() => Ok(hull.vertices().to_vec()),
        Some(hull) => {
            let mut out = hull
                .vertices()
                .iter()
                .map(|v| lattice.lift(v))
                .collect::<Result<Vec<_>>>()?;
            out.sort();
            Ok(out)
        }
    }
}

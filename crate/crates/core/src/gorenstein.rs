//! Gorenstein vertices, reflexivity and the Gorenstein index.
//!
//! A vertex `v` with dual generators `u_1, …, u_s` is Gorenstein when the
//! system `⟨u_j, x⟩ = 1` has an integer solution; then `m0 = v + x`. It is
//! nonsingular when additionally `s = n` and the `u_j` form a basis of the
//! dual lattice.
//!
//! Reflexivity uses the stored inward form: `P` is reflexive when it has a
//! unique interior lattice point `m` and `⟨u, m⟩ + c = 1` on every facet,
//! i.e. every facet is at lattice distance one from `m`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cones::vertex_cone;
use crate::error::{Error, Result};
use crate::linalg::{self, small, IntMatrix};
use crate::polytope::{LatticePoint, LatticePolytope};

/// An integer system `A·x = b` recorded as proof that no solution exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfeasibleSystem {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl InfeasibleSystem {
    /// Re-solves the system; `true` when it is still infeasible.
    pub fn recheck(&self) -> Result<bool> {
        let a = IntMatrix::from_rows(&self.matrix)?;
        let b: Vec<BigInt> = self.rhs.iter().map(|&x| BigInt::from(x)).collect();
        Ok(linalg::solve_integer(&a, &b)?.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GorensteinCertificate {
    Gorenstein { m0: LatticePoint },
    Nonsingular { m0: LatticePoint },
    NotGorenstein { witness: InfeasibleSystem },
}

impl GorensteinCertificate {
    pub fn is_gorenstein(&self) -> bool {
        !matches!(self, GorensteinCertificate::NotGorenstein { .. })
    }

    pub fn is_nonsingular(&self) -> bool {
        matches!(self, GorensteinCertificate::Nonsingular { .. })
    }

    /// The point `m0` in absolute coordinates.
    pub fn m0(&self) -> Option<&LatticePoint> {
        match self {
            GorensteinCertificate::Gorenstein { m0 } | GorensteinCertificate::Nonsingular { m0 } => Some(m0),
            GorensteinCertificate::NotGorenstein { .. } => None,
        }
    }
}

pub fn gorenstein_at_vertex(p: &LatticePolytope, v: &LatticePoint) -> Result<GorensteinCertificate> {
    let cone = vertex_cone(p, v)?;
    let duals = cone.dual_generators;
    let ones = vec![BigInt::from(1); duals.len()];
    let a = IntMatrix::from_rows(&duals)?;
    let Some(solution) = linalg::solve_integer(&a, &ones)? else {
        return Ok(GorensteinCertificate::NotGorenstein {
            witness: InfeasibleSystem {
                rhs: vec![1; duals.len()],
                matrix: duals,
            },
        });
    };
    let x = solution.canonical();
    let m0 = v
        .iter()
        .zip(&x)
        .map(|(&vi, xi)| {
            (xi + vi)
                .to_i64()
                .ok_or(Error::Overflow("Gorenstein point"))
        })
        .collect::<Result<Vec<i64>>>()?;
    let m0 = LatticePoint::new(m0);
    let nonsingular = duals.len() == p.dim() && small::det(&duals)?.magnitude() == &1u32.into();
    Ok(if nonsingular {
        GorensteinCertificate::Nonsingular { m0 }
    } else {
        GorensteinCertificate::Gorenstein { m0 }
    })
}

/// Certificates for every vertex, in vertex order.
pub fn vertex_certificates(p: &LatticePolytope) -> Result<Vec<GorensteinCertificate>> {
    p.vertices().iter().map(|v| gorenstein_at_vertex(p, v)).collect()
}

pub fn is_gorenstein(p: &LatticePolytope) -> bool {
    p.vertices().iter().all(|v| {
        gorenstein_at_vertex(p, v)
            .expect("vertex cones of a valid polytope are well formed")
            .is_gorenstein()
    })
}

/// The unique interior lattice point of `k·P`, if there is exactly one.
fn unique_interior_point(p: &LatticePolytope, k: i64) -> Option<LatticePoint> {
    if p.count_dilation_points(k, true, Some(1)) != 1 {
        return None;
    }
    p.dilation_interior_points(k).into_iter().next()
}

/// Whether `k·P` has a unique interior point at distance one from every facet.
fn dilation_is_reflexive(p: &LatticePolytope, k: i64) -> bool {
    unique_interior_point(p, k).is_some_and(|m| p.facets().iter().all(|f| f.eval_dilated(&m, k) == 1))
}

pub fn is_reflexive(p: &LatticePolytope) -> bool {
    dilation_is_reflexive(p, 1)
}

/// The smallest `r` with `Int(r·P) ∩ M` nonempty, provided `r·P` is a
/// reflexive translate; `None` otherwise. `Int((n+1)·P)` always contains a
/// lattice point, so `r ≤ n + 1`.
pub fn gorenstein_index(p: &LatticePolytope) -> Option<u32> {
    let top = p.dim() as i64 + 1;
    let r = (1..=top).find(|&r| p.count_dilation_points(r, true, Some(0)) > 0)?;
    dilation_is_reflexive(p, r).then_some(r as u32)
}

/// `|Int((n-1)·P) ∩ M| = 1`.
pub fn del_pezzo_check(p: &LatticePolytope) -> Result<bool> {
    let n = p.dim();
    if n < 3 {
        return Err(Error::Argument(format!("needs rank at least 3, got {n}")));
    }
    Ok(p.count_dilation_points(n as i64 - 1, true, Some(1)) == 1)
}

/// `g = |Int((n-1)·P) ∩ M|` when `Int((n-2)·P) ∩ M = ∅` and
/// `|P ∩ M| ≥ n + g + 1`; `None` otherwise, and for `n < 3`.
pub fn prop11_hypothesis(p: &LatticePolytope) -> Option<usize> {
    let n = p.dim();
    if n < 3 {
        return None;
    }
    if p.count_dilation_points(n as i64 - 2, true, Some(0)) > 0 {
        return None;
    }
    let g = p.interior_count(n as i64 - 1);
    (p.lattice_point_count() > n + g).then_some(g)
}

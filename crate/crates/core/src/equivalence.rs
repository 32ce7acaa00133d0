//! Affine unimodular equivalence and canonical forms.
//!
//! Vertices are row vectors, and an affine unimodular map acts as
//! `x ↦ x·W + t` with `W ∈ GL_n(ℤ)`.
//!
//! **Normal form.** Fix a base vertex `v₀` and an ordered tuple of `n`
//! vertices whose differences `B` (as rows) are linearly independent. There
//! is exactly one unimodular `U` with `B·U = H` in Hermite form, so the image
//! of the vertex set under `x ↦ (x - v₀)·U` depends only on the choice of
//! `(v₀, tuple)`. Equivalent polytopes have the same collection of images, so
//! the smallest key `(H, sorted remaining images)` is an invariant, and two
//! polytopes with the same key are equivalent because the key lists an
//! image of each. The search enumerates tuples depth first; the first `j`
//! rows of `H` depend only on the first `j` tuple entries, which allows
//! pruning any branch whose prefix already exceeds the best key.
//!
//! **Equivalence.** [`is_equivalent`] does not use the normal form. It maps
//! an affine basis of `p` onto every ordered tuple of vertices of `q`, solves
//! for the linear part, and checks integrality, unimodularity and that the
//! vertex sets correspond.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::write_points;
use crate::linalg::{self, small, IntMatrix};
use crate::polytope::{dot, LatticePoint, LatticePolytope};

/// A canonical vertex matrix together with a digest of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalForm {
    pub dim: usize,
    /// The origin, then the Hermite rows, then the remaining vertex images in
    /// lexicographic order.
    pub vertices: Vec<Vec<i64>>,
    /// Hex SHA-256 of the text serialization of `vertices`.
    pub hash: String,
}

impl NormalForm {
    fn new(dim: usize, vertices: Vec<Vec<i64>>) -> Self {
        let mut hasher = Sha256::new();
        for row in &vertices {
            let words: Vec<String> = row.iter().map(i64::to_string).collect();
            hasher.update(words.join(" ").as_bytes());
            hasher.update(b"\n");
        }
        let hash = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        NormalForm { dim, vertices, hash }
    }

    /// The first 16 hex digits of the hash, used for file names.
    pub fn short_hash(&self) -> &str {
        &self.hash[..16]
    }

    /// The polytope with the canonical vertices.
    pub fn polytope(&self) -> Result<LatticePolytope> {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|r| LatticePoint::new(r.clone())).collect();
        LatticePolytope::convex_hull(&pts)
    }

    /// Text serialization with a `# normal-form` header line.
    pub fn to_text(&self) -> String {
        let pts: Vec<LatticePoint> = self.vertices.iter().map(|r| LatticePoint::new(r.clone())).collect();
        write_points(self.dim, &pts, &[&format!("normal-form {}", self.hash)])
    }
}

struct Search<'a> {
    n: usize,
    /// Vertex differences from the current base vertex.
    diffs: Vec<Vec<i64>>,
    base: usize,
    chosen: Vec<usize>,
    best_h: Option<Vec<Vec<i64>>>,
    best_rest: Vec<Vec<i64>>,
    verts: &'a [LatticePoint],
}

impl Search<'_> {
    fn prefix_hnf(&self) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let rows: Vec<Vec<i64>> = self.chosen.iter().map(|&i| self.diffs[i].clone()).collect();
        small::hnf(&rows)
    }

    fn descend(&mut self) -> Result<()> {
        let depth = self.chosen.len();
        if depth == self.n {
            return self.leaf();
        }
        for i in 0..self.verts.len() {
            if i == self.base || self.chosen.contains(&i) {
                continue;
            }
            self.chosen.push(i);
            let (h, _) = self.prefix_hnf()?;
            let row = &h[depth];
            let independent = row[depth] != 0;
            let keep = independent
                && match &self.best_h {
                    None => true,
                    Some(best) => h.iter().cmp(best[..=depth].iter()) != Ordering::Greater,
                };
            if keep {
                self.descend()?;
            }
            self.chosen.pop();
        }
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let (h, u) = self.prefix_hnf()?;
        let mut rest: Vec<Vec<i64>> = Vec::with_capacity(self.verts.len() - self.n - 1);
        for (i, d) in self.diffs.iter().enumerate() {
            if i == self.base || self.chosen.contains(&i) {
                continue;
            }
            let img = (0..self.n)
                .map(|c| {
                    let col: Vec<i64> = u.iter().map(|r| r[c]).collect();
                    i64::try_from(dot(d, &col)).map_err(|_| Error::Overflow("normal form"))
                })
                .collect::<Result<Vec<i64>>>()?;
            rest.push(img);
        }
        rest.sort();
        let better = match &self.best_h {
            None => true,
            Some(bh) => (&h, &rest) < (bh, &self.best_rest),
        };
        if better {
            self.best_h = Some(h);
            self.best_rest = rest;
        }
        Ok(())
    }
}

/// The canonical form of `p` under affine unimodular maps.
pub fn normal_form(p: &LatticePolytope) -> Result<NormalForm> {
    let n = p.dim();
    let verts = p.vertices();
    let mut search = Search {
        n,
        diffs: Vec::new(),
        base: 0,
        chosen: Vec::with_capacity(n),
        best_h: None,
        best_rest: Vec::new(),
        verts,
    };
    for base in 0..verts.len() {
        search.base = base;
        search.diffs = verts.iter().map(|v| (v - &verts[base]).into_coords()).collect();
        search.descend()?;
    }
    let h = search.best_h.expect("a full-dimensional polytope has an affine basis");
    let mut rows = vec![vec![0; n]];
    rows.extend(h);
    rows.extend(search.best_rest);
    Ok(NormalForm::new(n, rows))
}

/// Whether some affine unimodular map sends the vertices of `p` onto those
/// of `q`, decided by exhaustive search.
pub fn is_equivalent(p: &LatticePolytope, q: &LatticePolytope) -> bool {
    find_equivalence(p, q).expect("coordinates are bounded").is_some()
}

/// An affine unimodular map `x ↦ x·W + t` carrying `p` onto `q`, as `(W, t)`
/// with `W` given by rows.
pub fn find_equivalence(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<(Vec<Vec<i64>>, Vec<i64>)>> {
    let n = p.dim();
    if q.dim() != n || p.vertex_count() != q.vertex_count() {
        return Ok(None);
    }
    let pv = p.vertices();
    let qv = q.vertices();
    // An affine basis of p: vertex 0 plus greedily chosen independent ones.
    let mut basis = vec![0usize];
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 1..pv.len() {
        rows.push((&pv[i] - &pv[0]).into_coords());
        if small::rank(&rows) == rows.len() {
            basis.push(i);
            if rows.len() == n {
                break;
            }
        } else {
            rows.pop();
        }
    }
    let bp = IntMatrix::from_rows(&rows)?;
    let det_p = small::det(&rows)?.magnitude().clone();

    let mut tuple = Vec::with_capacity(n + 1);
    let mut found = None;
    match_tuples(qv, n, &mut tuple, &mut |t: &[usize]| {
        let q_rows: Vec<Vec<i64>> = t[1..].iter().map(|&j| (&qv[j] - &qv[t[0]]).into_coords()).collect();
        if small::det(&q_rows)?.magnitude() != &det_p {
            return Ok(false);
        }
        // Solve Bp·W = Bq column by column.
        let mut w = vec![vec![0i64; n]; n];
        for c in 0..n {
            let rhs: Vec<BigInt> = q_rows.iter().map(|r| BigInt::from(r[c])).collect();
            let Some(sol) = linalg::solve_integer(&bp, &rhs)? else {
                return Ok(false);
            };
            for (r, x) in sol.particular.iter().enumerate() {
                w[r][c] = x.to_i64().ok_or(Error::Overflow("equivalence map"))?;
            }
        }
        if !small::det(&w)?.magnitude().is_one() {
            return Ok(false);
        }
        let t0: Vec<i64> = qv[t[0]].coords().to_vec();
        let mut image = Vec::with_capacity(pv.len());
        for v in pv {
            let d = (v - &pv[0]).into_coords();
            let img = (0..n)
                .map(|c| {
                    let col: Vec<i64> = w.iter().map(|r| r[c]).collect();
                    i64::try_from(dot(&d, &col) + t0[c] as i128).map_err(|_| Error::Overflow("equivalence map"))
                })
                .collect::<Result<Vec<i64>>>()?;
            image.push(LatticePoint::new(img));
        }
        image.sort();
        if image.as_slice() == qv {
            let shift: Vec<i64> = (0..n)
                .map(|c| t0[c] - pv[0].iter().zip(&w).map(|(&x, r)| x * r[c]).sum::<i64>())
                .collect();
            found = Some((w, shift));
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// Calls `f` on ordered tuples of distinct indices of length `n + 1` until
/// it returns `true`.
fn match_tuples(
    qv: &[LatticePoint],
    n: usize,
    tuple: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    if tuple.len() == n + 1 {
        return f(tuple);
    }
    for j in 0..qv.len() {
        if tuple.contains(&j) {
            continue;
        }
        tuple.push(j);
        let done = match_tuples(qv, n, tuple, f)?;
        tuple.pop();
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `D_n = Conv{0, e1, e2, e1+e2+2e3, e4, …, en}`.
pub fn make_dn(n: usize) -> Result<LatticePolytope> {
    if n < 3 {
        return Err(Error::Argument(format!("D_n needs n ≥ 3, got {n}")));
    }
    let mut pts = vec![
        LatticePoint::origin(n),
        LatticePoint::unit(n, 0),
        LatticePoint::unit(n, 1),
    ];
    let mut apex = vec![0; n];
    apex[0] = 1;
    apex[1] = 1;
    apex[2] = 2;
    pts.push(LatticePoint::new(apex));
    pts.extend((3..n).map(|i| LatticePoint::unit(n, i)));
    LatticePolytope::convex_hull(&pts)
}

pub fn is_dn(p: &LatticePolytope) -> bool {
    p.dim() >= 3 && p.is_simplex() && is_equivalent(p, &make_dn(p.dim()).expect("n ≥ 3"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hull(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&v.iter().map(|c| LatticePoint::new(c.to_vec())).collect::<Vec<_>>()).unwrap()
    }

    fn d3() -> LatticePolytope {
        hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])
    }

    #[test]
    fn translation_invariance() {
        let a = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let b = hull(&[&[5, 7], &[6, 7], &[5, 8], &[6, 8]]);
        assert_eq!(normal_form(&a).unwrap(), normal_form(&b).unwrap());
        assert!(is_equivalent(&a, &b));
    }

    #[test]
    fn d3_image_has_same_form() {
        let u = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let q = d3().transform(&u, &[3, -2, 1]).unwrap();
        assert_eq!(normal_form(&d3()).unwrap(), normal_form(&q).unwrap());
        assert!(is_equivalent(&d3(), &q));
        let (w, t) = find_equivalence(&d3(), &q).unwrap().unwrap();
        for v in d3().vertices() {
            let img: Vec<i64> = (0..3).map(|c| (0..3).map(|r| v[r] * w[r][c]).sum::<i64>() + t[c]).collect();
            assert!(q.vertex_index(&LatticePoint::new(img)).is_some());
        }
    }

    #[test]
    fn square_and_triangle_differ() {
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_ne!(normal_form(&sq).unwrap(), normal_form(&tri).unwrap());
        assert!(!is_equivalent(&sq, &tri));
    }

    #[test]
    fn equivalence_examples() {
        assert!(is_equivalent(&d3(), &d3()));
        let bad = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[2, 2, 5]]);
        assert!(!is_equivalent(&d3(), &bad));
        // Five lattice points against nine: not equivalent.
        let diamond = hull(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let square = hull(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        assert_eq!(diamond.lattice_point_count(), 5);
        assert_eq!(square.lattice_point_count(), 9);
        assert!(!is_equivalent(&diamond, &square));
        assert_ne!(normal_form(&diamond).unwrap(), normal_form(&square).unwrap());
    }

    #[test]
    fn form_agrees_with_matcher_on_equal_volumes() {
        // Both have normalized volume 3.
        let a = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        let b = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 2, 3]]);
        assert_eq!(is_equivalent(&a, &b), normal_form(&a).unwrap() == normal_form(&b).unwrap());
    }

    #[test]
    fn normal_form_text() {
        let nf = normal_form(&d3()).unwrap();
        let text = nf.to_text();
        assert!(text.starts_with("# normal-form "));
        let back = crate::format::parse_polytope(&text).unwrap();
        assert!(is_equivalent(&back, &d3()));
        assert_eq!(nf.polytope().unwrap(), back);
        assert_eq!(nf.short_hash().len(), 16);
    }

    #[test]
    fn dn_family() {
        assert_eq!(make_dn(3).unwrap(), d3());
        let d4 = make_dn(4).unwrap();
        assert!(d4.vertex_index(&LatticePoint::from([1, 1, 2, 0])).is_some());
        assert!(d4.vertex_index(&LatticePoint::from([0, 0, 0, 1])).is_some());
        assert!(make_dn(2).is_err());
        assert!(is_dn(&d4));
        let u = vec![vec![1, 0, 0], vec![2, 1, 0], vec![-1, 3, 1]];
        assert!(is_dn(&d3().transform(&u, &[1, 1, 1]).unwrap()));
        assert!(!is_dn(&hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])));
    }
}

use std::collections::BTreeSet;

use latfano::cones::{default_height_bound, definitional_gorenstein_point, vertex_cone};
use latfano::equivalence::{is_equivalent, normal_form};
use latfano::gorenstein::{gorenstein_at_vertex, gorenstein_index, is_gorenstein, is_reflexive};
use latfano::linalg::{det, hnf, inverse_unimodular, is_unimodular, small, snf, solve_integer, IntMatrix};
use latfano::unimodular::{random_shift, random_unimodular};
use latfano::{LatticePoint, LatticePolytope};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, b: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (rows, cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-b..=b, c), r))
}

fn polytope(dims: std::ops::RangeInclusive<usize>, b: i64) -> impl Strategy<Value = LatticePolytope> {
    dims.prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-b..=b, n), n + 1..=n + 4))
        .prop_filter_map("full-dimensional", |pts| {
            let pts: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
            LatticePolytope::convex_hull(&pts).ok()
        })
}

fn image(p: &LatticePolytope, seed: u64) -> (Vec<Vec<i64>>, Vec<i64>, LatticePolytope) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unimodular(p.dim(), &mut rng);
    let t = random_shift(p.dim(), 4, &mut rng);
    let q = p.transform(&u, &t).unwrap();
    (u, t, q)
}

fn apply(u: &[Vec<i64>], t: &[i64], x: &[i64]) -> LatticePoint {
    LatticePoint::new(u.iter().zip(t).map(|(r, ti)| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() + ti).collect())
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// gcd of all `r × r` minors.
fn determinantal_divisor(rows: &[Vec<i64>], r: usize) -> BigInt {
    let cols = rows[0].len();
    let mut g = BigInt::zero();
    let row_sets: Vec<Vec<usize>> = subsets(rows.len(), r);
    for rs in &row_sets {
        for cs in subsets(cols, r) {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
            g = num_integer::Integer::gcd(&g, &small::det(&minor).unwrap());
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Barycentric membership: `x` lies in `P` iff it lies in some simplex on
/// `n + 1` of its vertices.
fn in_hull_by_combination(p: &LatticePolytope, x: &[i64]) -> bool {
    let n = p.dim();
    let verts = p.vertices();
    subsets(verts.len(), n + 1).into_iter().any(|s| {
        // Solve Σ λ_i v_i = x, Σ λ_i = 1 by rational elimination.
        let mut a: Vec<Vec<BigRational>> = (0..=n)
            .map(|row| {
                let mut r: Vec<BigRational> = s
                    .iter()
                    .map(|&i| BigRational::from_integer(BigInt::from(if row < n { verts[i][row] } else { 1 })))
                    .collect();
                r.push(BigRational::from_integer(BigInt::from(if row < n { x[row] } else { 1 })));
                r
            })
            .collect();
        let m = n + 1;
        for col in 0..m {
            let Some(piv) = (col..m).find(|&r| !a[r][col].is_zero()) else { return false };
            a.swap(col, piv);
            let pv = a[col][col].clone();
            for e in a[col].iter_mut() {
                *e = &*e / &pv;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..=m {
                        let d = &f * &a[col][c];
                        a[r][c] -= d;
                    }
                }
            }
        }
        a.iter().all(|row| !row[m].is_negative())
    })
}

fn sumset(p: &LatticePolytope, k: usize) -> BTreeSet<LatticePoint> {
    let base = p.lattice_points().to_vec();
    let mut cur: BTreeSet<LatticePoint> = base.iter().cloned().collect();
    for _ in 1..k {
        cur = cur.iter().flat_map(|a| base.iter().map(move |b| a + b)).collect();
    }
    cur
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_is_echelon_and_reduced(rows in matrix(1..=4, 1..=4, 9)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let r = hnf(&a);
        prop_assert!(is_unimodular(&r.u).unwrap());
        prop_assert_eq!(a.mul(&r.u).unwrap(), r.h.clone());
        prop_assert_eq!(r.rank(), small::rank(&rows));
        let mut last = None;
        for (j, &p) in r.pivot_rows.iter().enumerate() {
            prop_assert!(last.is_none_or(|l| p > l));
            last = Some(p);
            prop_assert!(r.h[(p, j)].is_positive());
            for i in 0..p {
                prop_assert!(r.h[(i, j)].is_zero());
            }
            for l in 0..j {
                prop_assert!(!r.h[(p, l)].is_negative() && r.h[(p, l)] < r.h[(p, j)]);
            }
        }
        for j in r.rank()..a.cols() {
            prop_assert!(r.h.col(j).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn snf_is_diagonal_with_divisibility(rows in matrix(1..=4, 1..=4, 9)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let r = snf(&a);
        prop_assert!(is_unimodular(&r.u).unwrap() && is_unimodular(&r.v).unwrap());
        prop_assert_eq!(r.u.mul(&a).unwrap().mul(&r.v).unwrap(), r.s.clone());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert!(i == j || r.s[(i, j)].is_zero());
            }
        }
        let d = r.invariant_factors();
        prop_assert_eq!(d.len(), small::rank(&rows));
        prop_assert!(d.iter().all(Signed::is_positive));
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if a.is_square() {
            let prod: BigInt = (0..a.rows()).map(|i| r.s[(i, i)].clone()).product();
            prop_assert_eq!(det(&a).unwrap().abs(), prod);
        }
    }

    #[test]
    fn det_is_invariant_up_to_sign(rows in matrix(1..=5, 1..=1, 0), seed in any::<u64>(), entries in prop::collection::vec(-7i64..=7, 25)) {
        let n = rows.len();
        let a: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let u = random_unimodular(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let am = IntMatrix::from_rows(&a).unwrap();
        let um = IntMatrix::from_rows(&u).unwrap();
        let d = det(&am).unwrap();
        prop_assert_eq!(det(&am.mul(&um).unwrap()).unwrap().abs(), d.abs());
        prop_assert_eq!(det(&um.mul(&am).unwrap()).unwrap().abs(), d.abs());
        prop_assert_eq!(small::det(&a).unwrap(), d);
        let inv = inverse_unimodular(&um).unwrap();
        prop_assert_eq!(um.mul(&inv).unwrap(), IntMatrix::identity(n));
    }

    #[test]
    fn solve_agrees_with_search(rows in matrix(1..=2, 1..=3, 4), rhs in prop::collection::vec(-5i64..=5, 2)) {
        const B: i64 = 10;
        let r = rows.len();
        let c = rows[0].len();
        let b = &rhs[..r];
        let a = IntMatrix::from_rows(&rows).unwrap();
        let found = (0..c).map(|_| -B..=B).fold(vec![vec![]], |acc: Vec<Vec<i64>>, range| {
            acc.into_iter().flat_map(|p| range.clone().map(move |x| { let mut q = p.clone(); q.push(x); q })).collect()
        })
        .into_iter()
        .any(|x| rows.iter().zip(b).all(|(row, bi)| row.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == *bi));
        match solve_integer(&a, &big(b)).unwrap() {
            Some(sol) => {
                prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), big(b));
                prop_assert_eq!(a.mul_vec(&sol.canonical()).unwrap(), big(b));
                prop_assert_eq!(sol.kernel.len(), c - small::rank(&rows));
                for k in &sol.kernel {
                    prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
                }
            }
            None => {
                prop_assert!(!found);
                // Solvable iff ranks agree and the determinantal divisors of A
                // and [A | b] coincide.
                let rank = small::rank(&rows);
                let aug: Vec<Vec<i64>> = rows.iter().zip(b).map(|(row, &bi)| { let mut x = row.clone(); x.push(bi); x }).collect();
                if rank == small::rank(&aug) && rank == r {
                    prop_assert_ne!(determinantal_divisor(&rows, r), determinantal_divisor(&aug, r));
                }
            }
        }
        if found {
            prop_assert!(solve_integer(&a, &big(b)).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dilation_composes(p in polytope(2..=3, 2), a in 1i64..=3, b in 1i64..=3) {
        prop_assert_eq!(p.dilate(a).unwrap().dilate(b).unwrap(), p.dilate(a * b).unwrap());
        let pk = p.dilate(a).unwrap();
        prop_assert_eq!(pk.lattice_point_count(), p.count_dilation_points(a, false, None));
        prop_assert_eq!(pk.interior_count(1), p.interior_count(a));
    }

    #[test]
    fn facets_agree_with_convex_combinations(p in polytope(2..=3, 2)) {
        let n = p.dim();
        let range = -3i64..=3;
        let mut pts: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..n {
            pts = pts.into_iter().flat_map(|x| range.clone().map(move |c| { let mut y = x.clone(); y.push(c); y })).collect();
        }
        for x in pts.iter().step_by(3) {
            prop_assert_eq!(p.contains(x), in_hull_by_combination(&p, x), "point {:?}", x);
        }
        prop_assert_eq!(&LatticePolytope::convex_hull(p.vertices()).unwrap(), &p);
        let lattice: Vec<LatticePoint> = p.lattice_points().to_vec();
        prop_assert_eq!(&LatticePolytope::convex_hull(&lattice).unwrap(), &p);
    }

    #[test]
    fn sumsets_and_normality(p in polytope(2..=3, 2)) {
        let n = p.dim();
        let mut all_equal = true;
        for k in 2..=n {
            let layer: BTreeSet<LatticePoint> = p.dilation_points(k as i64).to_vec().into_iter().collect();
            let sums = sumset(&p, k);
            prop_assert!(sums.is_subset(&layer));
            all_equal &= sums == layer;
        }
        prop_assert_eq!(all_equal, p.is_normal());
        for k in [n as i64 - 1, n as i64] {
            if k >= 1 {
                prop_assert!(p.layer_equality(k).unwrap());
            }
        }
    }

    #[test]
    fn predicates_are_unimodular_invariants(p in polytope(2..=3, 2), seed in any::<u64>()) {
        let (_, _, q) = image(&p, seed);
        prop_assert_eq!(p.vertex_count(), q.vertex_count());
        prop_assert_eq!(p.lattice_point_count(), q.lattice_point_count());
        for k in 1..=p.dim() as i64 {
            prop_assert_eq!(p.interior_count(k), q.interior_count(k));
        }
        prop_assert_eq!(is_gorenstein(&p), is_gorenstein(&q));
        prop_assert_eq!(is_reflexive(&p), is_reflexive(&q));
        prop_assert_eq!(gorenstein_index(&p), gorenstein_index(&q));
        prop_assert_eq!(p.is_normal(), q.is_normal());
        prop_assert_eq!(p.is_pyramid().is_some(), q.is_pyramid().is_some());
        prop_assert_eq!(p.is_simplex(), q.is_simplex());
        prop_assert_eq!(p.is_basic_simplex(), q.is_basic_simplex());
        prop_assert_eq!(normal_form(&p).unwrap(), normal_form(&q).unwrap());
        prop_assert!(is_equivalent(&p, &q));
    }

    #[test]
    fn vertex_cones_transform_covariantly(p in polytope(2..=3, 2), seed in any::<u64>()) {
        let (u, t, q) = image(&p, seed);
        let inv = inverse_unimodular(&IntMatrix::from_rows(&u).unwrap()).unwrap().to_i64_rows().unwrap();
        let zero = vec![0; p.dim()];
        for v in p.vertices() {
            let c = vertex_cone(&p, v).unwrap();
            let d = vertex_cone(&q, &apply(&u, &t, v)).unwrap();
            let mapped: BTreeSet<LatticePoint> = c.edge_generators.iter().map(|m| apply(&u, &zero, m)).collect();
            prop_assert_eq!(mapped, d.edge_generators.iter().cloned().collect::<BTreeSet<_>>());
            // Dual vectors map by the inverse transpose: u ↦ u·U⁻¹.
            let duals: BTreeSet<Vec<i64>> = c
                .dual_generators
                .iter()
                .map(|w| (0..w.len()).map(|j| w.iter().enumerate().map(|(i, x)| x * inv[i][j]).sum()).collect())
                .collect();
            prop_assert_eq!(duals, d.dual_generators.iter().cloned().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn cone_duality_and_primitivity(p in polytope(2..=3, 2)) {
        for v in p.vertices() {
            let c = vertex_cone(&p, v).unwrap();
            let through = p.facets_through(v);
            prop_assert_eq!(c.dual_generators.len(), through.len());
            for m in &c.edge_generators {
                prop_assert_eq!(m.content(), 1);
                let w = p
                    .vertices()
                    .iter()
                    .find(|w| *w != v && {
                        let d = *w - v;
                        d.primitive() == *m
                    })
                    .expect("edge ends in a vertex");
                let zero: BTreeSet<Vec<i64>> = c
                    .dual_generators
                    .iter()
                    .filter(|u| u.iter().zip(m.iter()).map(|(a, b)| a * b).sum::<i64>() == 0)
                    .cloned()
                    .collect();
                let containing: BTreeSet<Vec<i64>> =
                    p.facets().iter().filter(|f| f.eval(v) == 0 && f.eval(w) == 0).map(|f| f.normal.clone()).collect();
                prop_assert_eq!(zero, containing);
            }
            for u in &c.dual_generators {
                prop_assert_eq!(u.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)), 1);
                for m in &c.edge_generators {
                    prop_assert!(u.iter().zip(m.iter()).map(|(a, b)| a * b).sum::<i64>() >= 0);
                }
            }
        }
    }

    #[test]
    fn algebraic_and_definitional_tests_agree(p in polytope(2..=3, 2)) {
        for v in p.vertices() {
            let cert = gorenstein_at_vertex(&p, v).unwrap();
            let c = vertex_cone(&p, v).unwrap();
            let claimed = cert.m0().map(|m| m - v);
            let h = default_height_bound(&c, claimed.as_ref());
            let oracle = definitional_gorenstein_point(&c, h).unwrap();
            prop_assert_eq!(oracle.is_some(), cert.is_gorenstein());
            if let (Some(o), Some(m)) = (oracle, claimed) {
                prop_assert_eq!(o, m);
            }
            prop_assert!(!cert.is_nonsingular() || cert.is_gorenstein());
        }
        if is_reflexive(&p) {
            prop_assert!(is_gorenstein(&p) && p.interior_count(1) == 1);
            prop_assert_eq!(gorenstein_index(&p), Some(1));
        }
    }

    #[test]
    fn normal_form_separates(p in polytope(2..=2, 2), q in polytope(2..=2, 2)) {
        prop_assert_eq!(normal_form(&p).unwrap() == normal_form(&q).unwrap(), is_equivalent(&p, &q));
    }
}

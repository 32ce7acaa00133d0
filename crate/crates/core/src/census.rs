//! Exhaustive enumeration of small lattice polytopes up to equivalence.
//!
//! [`enumerate`] finds every full-dimensional lattice polytope that fits in
//! a translate of the box `[lo, hi]^n` and matches an interior-count profile,
//! one per affine unimodular class.
//!
//! The search grows point configurations. A state is the vertex set of
//! `conv(S)` for some point set `S`, of any affine rank, normalized under
//! translation and the symmetries of the cube. Its children are the hulls
//! `conv(S ∪ {x})` for every lattice point `x` keeping the bounding box
//! within the side length. Every polytope `P` in the box is reached by
//! adding its vertices one at a time, and each intermediate hull lies inside
//! `P`. Interior counts only grow under inclusion, so any state violating an
//! upper bound `|Int(kP)| ≤ c` of the profile is discarded with its subtree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dashmap::DashSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::AffineLattice;
use crate::equivalence::{make_dn, normal_form, NormalForm};
use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, LatticePolytope};

/// Largest box side length accepted by [`enumerate`].
pub const MAX_SIDE: i64 = 100;

/// Prescribed interior counts `|Int(k·P) ∩ M| = count`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorProfile(pub Vec<(i64, usize)>);

impl InteriorProfile {
    pub fn matches(&self, p: &LatticePolytope) -> bool {
        self.0
            .iter()
            .all(|&(k, c)| p.count_dilation_points(k, true, Some(c)) == c)
    }

    /// The upper bounds of the profile, which are inherited by subpolytopes.
    fn admits_subpolytope(&self, p: &LatticePolytope) -> bool {
        self.0
            .iter()
            .all(|&(k, c)| p.count_dilation_points(k, true, Some(c)) <= c)
    }
}

impl FromStr for InteriorProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::Argument(format!("interior profile `{s}`: {m}"));
        let mut out: Vec<(i64, usize)> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, c) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `k:count`, found `{part}`")))?;
            let k: i64 = k.trim().parse().map_err(|e| bad(format!("bad dilation `{k}`: {e}")))?;
            let c: usize = c.trim().parse().map_err(|e| bad(format!("bad count `{c}`: {e}")))?;
            if !(1..=16).contains(&k) {
                return Err(bad(format!("dilation {k} out of range 1..=16")));
            }
            if out.iter().any(|&(j, _)| j == k) {
                return Err(bad(format!("dilation {k} listed twice")));
            }
            out.push((k, c));
        }
        out.sort();
        Ok(InteriorProfile(out))
    }
}

impl fmt::Display for InteriorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSpec {
    pub dim: usize,
    /// Every axis ranges over `lo..=hi`.
    pub lo: i64,
    pub hi: i64,
    pub profile: InteriorProfile,
    pub max_vertices: Option<usize>,
}

impl CensusSpec {
    pub fn new(dim: usize, lo: i64, hi: i64, profile: &str) -> Result<Self> {
        let spec = CensusSpec {
            dim,
            lo,
            hi,
            profile: profile.parse()?,
            max_vertices: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_max_vertices(mut self, max: usize) -> Self {
        self.max_vertices = Some(max);
        self
    }

    pub fn side(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=6).contains(&self.dim) {
            return Err(Error::Argument(format!("census dimension {} out of range 1..=6", self.dim)));
        }
        if self.hi < self.lo {
            return Err(Error::Argument(format!("empty box {}:{}", self.lo, self.hi)));
        }
        if self.side() > MAX_SIDE {
            return Err(Error::Argument(format!("box side {} exceeds {MAX_SIDE}", self.side())));
        }
        Ok(())
    }
}

/// Parses `lo:hi`.
pub fn parse_box(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Argument(format!("box `{s}`: expected `lo:hi`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

/// A normalized vertex set: rows flattened, coordinates in `0..=side`.
type Key = Box<[u8]>;

/// A signed permutation of coordinates.
struct Symmetry {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

fn cube_symmetries(n: usize) -> Vec<Symmetry> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for perm in perms(n) {
        for mask in 0..(1u32 << n) {
            let flip = (0..n).map(|i| mask >> i & 1 == 1).collect();
            out.push(Symmetry {
                perm: perm.clone(),
                flip,
            });
        }
    }
    out
}

struct Grower<'a> {
    n: usize,
    side: i64,
    spec: &'a CensusSpec,
    symmetries: Vec<Symmetry>,
}

enum Hull {
    Full(LatticePolytope),
    Degenerate(Vec<LatticePoint>),
}

impl Hull {
    fn vertices(&self) -> &[LatticePoint] {
        match self {
            Hull::Full(p) => p.vertices(),
            Hull::Degenerate(v) => v,
        }
    }
}

impl Grower<'_> {
    fn normalize(&self, verts: &[LatticePoint]) -> Key {
        let n = self.n;
        let mut best: Option<Vec<u8>> = None;
        let mut rows: Vec<Vec<i64>> = vec![vec![0; n]; verts.len()];
        for g in &self.symmetries {
            for (row, v) in rows.iter_mut().zip(verts) {
                for i in 0..n {
                    let x = v[g.perm[i]];
                    row[i] = if g.flip[i] { -x } else { x };
                }
            }
            for i in 0..n {
                let m = rows.iter().map(|r| r[i]).min().unwrap_or(0);
                rows.iter_mut().for_each(|r| r[i] -= m);
            }
            rows.sort_unstable();
            let flat: Vec<u8> = rows.iter().flatten().map(|&x| x as u8).collect();
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
        best.expect("the symmetry group is nonempty").into_boxed_slice()
    }

    fn decode(&self, key: &Key) -> Vec<LatticePoint> {
        key.chunks(self.n)
            .map(|c| LatticePoint::new(c.iter().map(|&x| i64::from(x)).collect()))
            .collect()
    }

    fn hull(&self, points: &[LatticePoint]) -> Result<Hull> {
        let lattice = AffineLattice::spanned_by(points)?;
        if lattice.rank() == self.n {
            return Ok(Hull::Full(LatticePolytope::convex_hull(points)?));
        }
        Ok(Hull::Degenerate(crate::affine::hull_vertices_any(points)?))
    }

    fn admissible(&self, h: &Hull) -> bool {
        match h {
            Hull::Full(p) => self.spec.profile.admits_subpolytope(p),
            Hull::Degenerate(_) => true,
        }
    }

    /// Children of a state, as normalized keys with their hulls.
    fn children(&self, key: &Key) -> Result<Vec<(Key, Hull)>> {
        let n = self.n;
        let verts = self.decode(key);
        let parent = self.hull(&verts)?;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &verts {
            for i in 0..n {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let wlo: Vec<i64> = (0..n).map(|i| hi[i] - self.side).collect();
        let whi: Vec<i64> = (0..n).map(|i| lo[i] + self.side).collect();
        let mut out = Vec::new();
        let mut x = wlo.clone();
        loop {
            let point = LatticePoint::new(x.clone());
            let child = match &parent {
                Hull::Full(p) if p.contains(&point) => None,
                Hull::Full(p) => Some(Hull::Full(p.extend(&point)?)),
                Hull::Degenerate(v) if v.contains(&point) => None,
                Hull::Degenerate(v) => {
                    let mut pts = v.clone();
                    pts.push(point);
                    let h = self.hull(&pts)?;
                    (h.vertices() != v.as_slice()).then_some(h)
                }
            };
            if let Some(h) = child {
                if self.admissible(&h) {
                    out.push((self.normalize(h.vertices()), h));
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if x[i] < whi[i] {
                    x[i] += 1;
                    for j in i + 1..n {
                        x[j] = wlo[j];
                    }
                    break;
                }
            }
        }
    }
}

/// Statistics of one enumeration run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusStats {
    /// Distinct normalized point configurations visited.
    pub states: usize,
    /// Full-dimensional states matching the profile and vertex bound.
    pub candidates: usize,
}

/// One polytope per affine unimodular class, ordered by normal form.
pub fn enumerate(spec: &CensusSpec) -> Result<Vec<LatticePolytope>> {
    Ok(enumerate_with_stats(spec)?.0)
}

pub fn enumerate_with_stats(spec: &CensusSpec) -> Result<(Vec<LatticePolytope>, CensusStats)> {
    spec.validate()?;
    let n = spec.dim;
    let grower = Grower {
        n,
        side: spec.side(),
        spec,
        symmetries: cube_symmetries(n),
    };
    let visited: DashSet<Key> = DashSet::new();
    let start = grower.normalize(&[LatticePoint::origin(n)]);
    visited.insert(start.clone());
    let mut frontier = vec![start];
    let mut candidates: Vec<(Key, LatticePolytope)> = Vec::new();
    while !frontier.is_empty() {
        let expanded: Vec<Result<Vec<(Key, Hull)>>> = frontier
            .par_iter()
            .map(|key| {
                let kids = grower.children(key)?;
                Ok(kids.into_iter().filter(|(k, _)| visited.insert(k.clone())).collect())
            })
            .collect();
        let mut next = Vec::new();
        for batch in expanded {
            for (key, hull) in batch? {
                if let Hull::Full(p) = &hull {
                    let fits = spec.max_vertices.is_none_or(|m| p.vertex_count() <= m);
                    if fits && spec.profile.matches(p) {
                        candidates.push((key.clone(), p.clone()));
                    }
                }
                next.push(key);
            }
        }
        frontier = next;
    }
    let stats = CensusStats {
        states: visited.len(),
        candidates: candidates.len(),
    };

    let forms: Vec<Result<NormalForm>> = candidates.par_iter().map(|(_, p)| normal_form(p)).collect();
    let mut classes: BTreeMap<NormalForm, Key> = BTreeMap::new();
    for ((key, _), form) in candidates.into_iter().zip(forms) {
        let entry = classes.entry(form?).or_insert_with(|| key.clone());
        if key < *entry {
            *entry = key;
        }
    }
    let shift = vec![spec.lo; n];
    let out = classes
        .into_values()
        .map(|key| LatticePolytope::convex_hull(&grower.decode(&key))?.translate(&shift))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, stats))
}

/// Named polytope families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dn,
    BasicSimplex,
    DilatedSimplex,
    CrossPolytope,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dn" => Ok(Family::Dn),
            "basic" | "basic_simplex" | "basic-simplex" => Ok(Family::BasicSimplex),
            "dilated-simplex" | "dilated_simplex" => Ok(Family::DilatedSimplex),
            "cross" | "cross_polytope" | "cross-polytope" => Ok(Family::CrossPolytope),
            _ => Err(Error::Argument(format!("unknown family `{s}`"))),
        }
    }
}

/// A member of a named family in rank `n ≤ 8`; `k` is the dilation factor
/// for [`Family::DilatedSimplex`] and ignored otherwise.
pub fn family_generator(kind: Family, n: usize, k: i64) -> Result<LatticePolytope> {
    if !(1..=8).contains(&n) {
        return Err(Error::Argument(format!("family rank {n} out of range 1..=8")));
    }
    let simplex = |k: i64| -> Result<LatticePolytope> {
        let mut v = vec![LatticePoint::origin(n)];
        v.extend((0..n).map(|i| LatticePoint::unit(n, i).scale(k)));
        LatticePolytope::convex_hull(&v)
    };
    match kind {
        Family::Dn => make_dn(n),
        Family::BasicSimplex => simplex(1),
        Family::DilatedSimplex if k < 1 => Err(Error::Argument(format!("dilation {k} must be positive"))),
        Family::DilatedSimplex => simplex(k),
        Family::CrossPolytope => {
            let v: Vec<LatticePoint> = (0..n)
                .flat_map(|i| [LatticePoint::unit(n, i), LatticePoint::unit(n, i).scale(-1)])
                .collect();
            LatticePolytope::convex_hull(&v)
        }
    }
}

/// `Conv(P × {0}, e_{n+1})`.
pub fn lattice_pyramid(p: &LatticePolytope) -> Result<LatticePolytope> {
    let n = p.dim();
    let mut v: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .map(|x| {
            let mut c = x.coords().to_vec();
            c.push(0);
            LatticePoint::new(c)
        })
        .collect();
    v.push(LatticePoint::unit(n + 1, n));
    LatticePolytope::convex_hull(&v)
}

/// `P × Q`.
pub fn product(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    let mut v = Vec::with_capacity(p.vertex_count() * q.vertex_count());
    for a in p.vertices() {
        for b in q.vertices() {
            let mut c = a.coords().to_vec();
            c.extend_from_slice(b);
            v.push(LatticePoint::new(c));
        }
    }
    LatticePolytope::convex_hull(&v)
}

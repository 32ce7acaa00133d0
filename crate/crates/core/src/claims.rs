//! Falsifiable checks of the Gorenstein and normality statements.
//!
//! Each [`ClaimId`] pairs a hypothesis with a conclusion. [`check_claim`]
//! evaluates one polytope: the claim is not applicable when the hypothesis
//! fails, and holds or fails according to the conclusion otherwise.
//! [`verify_claim`] runs a claim over a corpus and collects every
//! counterexample in normal form.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::AffineLattice;
use crate::cones::{cone_base_polytope, vertex_cone};
use crate::equivalence::{is_dn, normal_form, NormalForm};
use crate::error::{Error, Result};
use crate::gorenstein::{is_gorenstein, prop11_hypothesis};
use crate::polytope::{LatticePoint, LatticePolytope, Pyramid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClaimId {
    /// Polygons with one interior lattice point are Gorenstein.
    Thm01,
    /// 3-polytopes with `|Int(2P)| = 1` are Gorenstein.
    Thm02_3d,
    /// `n ≥ 4` and `|Int((n-1)P)| = 1` imply Gorenstein.
    Thm02Nd,
    /// `Int(rP) = ∅` for some `1 ≤ r ≤ n-1` gives the layer equality for `k ≥ n-r`.
    Lemma1,
    /// A simplex with `n+1` lattice points and `Int((n-1)P) = ∅` is basic.
    Lemma2,
    /// `Int(nP) = ∅` implies a basic simplex.
    Lemma3,
    /// `Int((n-2)P) = ∅` and `|P∩M| ≥ n + g + 1` with `g = |Int((n-1)P)|` imply normal.
    Prop11,
    /// Pyramids with `n+1` lattice points and `|Int((n-1)P)| = 1` are `D_n`.
    Prop31,
    /// A pyramid over a Gorenstein facet with no extra lattice points and
    /// `|Int((n-1)P)| = 1` is Gorenstein.
    Lemma32,
    /// 3-pyramids with no extra lattice points and `|Int(2P)| = 1` are Gorenstein.
    Cor33,
    /// For `n ≥ 4` and `|Int((n-1)P)| = 1`, every vertex cone base polytope is
    /// a pyramid. False in general; see the tests for counterexamples.
    Lemma41,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Thm01,
        ClaimId::Thm02_3d,
        ClaimId::Thm02Nd,
        ClaimId::Lemma1,
        ClaimId::Lemma2,
        ClaimId::Lemma3,
        ClaimId::Prop11,
        ClaimId::Prop31,
        ClaimId::Lemma32,
        ClaimId::Cor33,
        ClaimId::Lemma41,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Thm01 => "thm01",
            ClaimId::Thm02_3d => "thm02_3d",
            ClaimId::Thm02Nd => "thm02_nd",
            ClaimId::Lemma1 => "lemma1",
            ClaimId::Lemma2 => "lemma2",
            ClaimId::Lemma3 => "lemma3",
            ClaimId::Prop11 => "prop11",
            ClaimId::Prop31 => "prop31",
            ClaimId::Lemma32 => "lemma32",
            ClaimId::Cor33 => "cor33",
            ClaimId::Lemma41 => "lemma41",
        }
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    NotApplicable,
    Holds,
    Fails,
}

impl Outcome {
    fn from_conclusion(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

fn has_unique_interior(p: &LatticePolytope, k: i64) -> bool {
    p.count_dilation_points(k, true, Some(1)) == 1
}

fn interior_empty(p: &LatticePolytope, k: i64) -> bool {
    p.count_dilation_points(k, true, Some(0)) == 0
}

/// Whether the only lattice point of `P` off the pyramid's base facet is
/// the apex.
fn base_holds_all_but_apex(p: &LatticePolytope, pyr: Pyramid) -> bool {
    let facet = &p.facets()[pyr.facet];
    p.lattice_points().iter().filter(|x| !facet.contains(x)).count() == 1
}

/// Gorenstein property of the base facet of a pyramid, measured in the
/// lattice of its own affine span.
pub fn base_facet_is_gorenstein(p: &LatticePolytope, pyr: Pyramid) -> Result<bool> {
    let facet = &p.facets()[pyr.facet];
    let verts: Vec<LatticePoint> = p.vertices().iter().filter(|v| facet.contains(v)).cloned().collect();
    let lattice = AffineLattice::spanned_by(&verts)?;
    let base = lattice
        .relative_hull(&verts)?
        .ok_or_else(|| Error::Argument("degenerate facet".into()))?;
    Ok(is_gorenstein(&base))
}

/// Evaluates one claim on one polytope.
pub fn check_claim(claim: ClaimId, p: &LatticePolytope) -> Result<Outcome> {
    let n = p.dim();
    let ni = n as i64;
    let na = Outcome::NotApplicable;
    Ok(match claim {
        ClaimId::Thm01 => {
            if n != 2 || !has_unique_interior(p, 1) {
                return Ok(na);
            }
            Outcome::from_conclusion(is_gorenstein(p))
        }
        ClaimId::Thm02_3d => {
            if n != 3 || !has_unique_interior(p, 2) {
                return Ok(na);
            }
            Outcome::from_conclusion(is_gorenstein(p))
        }
        ClaimId::Thm02Nd => {
            if n < 4 || !has_unique_interior(p, ni - 1) {
                return Ok(na);
            }
            Outcome::from_conclusion(is_gorenstein(p))
        }
        ClaimId::Lemma1 => {
            // Int(rP) = ∅ propagates downward, so the largest such r decides.
            let Some(r) = (1..ni).rev().find(|&r| interior_empty(p, r)) else {
                return Ok(na);
            };
            let mut ok = true;
            for k in ni - r..=ni {
                ok &= p.layer_equality(k)?;
            }
            Outcome::from_conclusion(ok)
        }
        ClaimId::Lemma2 => {
            if !p.is_simplex() || p.lattice_point_count() != n + 1 || (n >= 2 && !interior_empty(p, ni - 1)) {
                return Ok(na);
            }
            Outcome::from_conclusion(p.is_basic_simplex())
        }
        ClaimId::Lemma3 => {
            if !interior_empty(p, ni) {
                return Ok(na);
            }
            Outcome::from_conclusion(p.is_basic_simplex())
        }
        ClaimId::Prop11 => {
            if prop11_hypothesis(p).is_none() {
                return Ok(na);
            }
            Outcome::from_conclusion(p.is_normal_up_to(ni - 1))
        }
        ClaimId::Prop31 => {
            if n < 3
                || p.is_pyramid().is_none()
                || p.lattice_point_count() != n + 1
                || !has_unique_interior(p, ni - 1)
            {
                return Ok(na);
            }
            Outcome::from_conclusion(is_dn(p))
        }
        ClaimId::Lemma32 => {
            if n < 3 || !has_unique_interior(p, ni - 1) {
                return Ok(na);
            }
            let mut applies = false;
            for pyr in p.pyramids() {
                if base_holds_all_but_apex(p, pyr) && base_facet_is_gorenstein(p, pyr)? {
                    applies = true;
                    break;
                }
            }
            if !applies {
                return Ok(na);
            }
            Outcome::from_conclusion(is_gorenstein(p))
        }
        ClaimId::Cor33 => {
            if n != 3 || !has_unique_interior(p, 2) {
                return Ok(na);
            }
            if !p.pyramids().into_iter().any(|pyr| base_holds_all_but_apex(p, pyr)) {
                return Ok(na);
            }
            Outcome::from_conclusion(is_gorenstein(p))
        }
        ClaimId::Lemma41 => {
            if n < 4 || !has_unique_interior(p, ni - 1) {
                return Ok(na);
            }
            let mut ok = true;
            for v in p.vertices() {
                ok &= cone_base_polytope(&vertex_cone(p, v)?)?.is_pyramid().is_some();
            }
            Outcome::from_conclusion(ok)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub claim: String,
    pub corpus_size: usize,
    /// Corpus members satisfying the hypothesis.
    pub applicable: usize,
    /// Corpus members for which the claim holds, vacuously or not.
    pub passes: usize,
    /// Counterexamples in normal form.
    pub failures: Vec<NormalForm>,
    pub elapsed_ms: u128,
}

impl VerificationResult {
    pub fn is_success(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs a claim over a corpus.
pub fn verify_claim(claim: ClaimId, corpus: &[LatticePolytope]) -> Result<VerificationResult> {
    let start = Instant::now();
    let outcomes = corpus
        .par_iter()
        .map(|p| check_claim(claim, p))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = corpus
        .iter()
        .zip(&outcomes)
        .filter(|(_, o)| **o == Outcome::Fails)
        .map(|(p, _)| normal_form(p))
        .collect::<Result<Vec<_>>>()?;
    failures.sort();
    failures.dedup();
    let fail_count = outcomes.iter().filter(|o| **o == Outcome::Fails).count();
    Ok(VerificationResult {
        claim: claim.to_string(),
        corpus_size: corpus.len(),
        applicable: outcomes.iter().filter(|o| **o != Outcome::NotApplicable).count(),
        passes: corpus.len() - fail_count,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::make_dn;

    fn hull(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::convex_hull(&v.iter().map(|c| LatticePoint::new(c.to_vec())).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
        }
        assert_eq!("thm99".parse::<ClaimId>().unwrap_err(), Error::UnknownClaim("thm99".into()));
    }

    #[test]
    fn thm01_on_hexagon() {
        let hexagon = hull(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]);
        assert_eq!(check_claim(ClaimId::Thm01, &hexagon).unwrap(), Outcome::Holds);
        let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(check_claim(ClaimId::Thm01, &tri).unwrap(), Outcome::NotApplicable);
    }

    #[test]
    fn dn_claims() {
        let d3 = make_dn(3).unwrap();
        assert_eq!(check_claim(ClaimId::Thm02_3d, &d3).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Prop31, &d3).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Cor33, &d3).unwrap(), Outcome::Holds);
        let d4 = make_dn(4).unwrap();
        assert_eq!(check_claim(ClaimId::Thm02Nd, &d4).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Prop31, &d4).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Lemma41, &d4).unwrap(), Outcome::Holds);
    }

    #[test]
    fn counterexample_is_outside_every_hypothesis() {
        // |Int(P)| = 1 forces |Int(2P)| > 1, so no Gorenstein claim applies.
        let p = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[2, 2, 5]]);
        assert!(p.interior_count(2) > 1);
        for c in [ClaimId::Thm02_3d, ClaimId::Cor33, ClaimId::Lemma32, ClaimId::Prop31] {
            assert_eq!(check_claim(c, &p).unwrap(), Outcome::NotApplicable);
        }
    }

    #[test]
    fn lemmas_on_simplices() {
        let basic = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(check_claim(ClaimId::Lemma2, &basic).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Lemma3, &basic).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Lemma1, &basic).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Prop11, &basic).unwrap(), Outcome::Holds);
        let d3 = make_dn(3).unwrap();
        assert_eq!(check_claim(ClaimId::Lemma2, &d3).unwrap(), Outcome::NotApplicable);
        assert_eq!(check_claim(ClaimId::Lemma1, &d3).unwrap(), Outcome::Holds);
    }

    #[test]
    fn pyramid_base_lattice() {
        // Pyramid over the reflexive hexagon at height one.
        let p = hull(&[&[1, 0, 0], &[0, 1, 0], &[-1, 1, 0], &[-1, 0, 0], &[0, -1, 0], &[1, -1, 0], &[0, 0, 1]]);
        let pyr = p.is_pyramid().unwrap();
        assert_eq!(p.vertices()[pyr.apex], LatticePoint::from([0, 0, 1]));
        assert!(base_facet_is_gorenstein(&p, pyr).unwrap());
        assert!(base_holds_all_but_apex(&p, pyr));
        assert_eq!(p.lattice_point_count(), 8);
        assert_eq!(check_claim(ClaimId::Cor33, &p).unwrap(), Outcome::Holds);
        assert_eq!(check_claim(ClaimId::Lemma32, &p).unwrap(), Outcome::Holds);
    }

    #[test]
    fn cone_bases_that_are_not_pyramids() {
        let origin = LatticePoint::origin(4);
        // |Int(3P)| = 1 with a singular vertex at 0 whose base polytope is P
        // itself, a simplicial polytope with 9 facets and no apex.
        let p = hull(&[&[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 1], &[1, 1, 1, 0]]);
        assert_eq!((1..=4).map(|k| p.interior_count(k)).collect::<Vec<_>>(), vec![0, 0, 1, 6]);
        let q = cone_base_polytope(&vertex_cone(&p, &origin).unwrap()).unwrap();
        assert_eq!(q, p);
        assert_eq!(q.facets().len(), 9);
        assert!(q.is_pyramid().is_none());
        assert!(is_gorenstein(&p));
        assert_eq!(check_claim(ClaimId::Lemma41, &p).unwrap(), Outcome::Fails);
        assert_eq!(check_claim(ClaimId::Thm02Nd, &p).unwrap(), Outcome::Holds);

        // Pyramid over a bipyramid: the base polytope at e4 is a pyramid,
        // but its apex is not the origin.
        let p = hull(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 1, 1]]);
        assert_eq!(p.interior_count(3), 1);
        let q = cone_base_polytope(&vertex_cone(&p, &LatticePoint::from([0, 0, 0, 1])).unwrap()).unwrap();
        let apexes: Vec<_> = q.pyramids().iter().map(|pyr| q.vertices()[pyr.apex].clone()).collect();
        assert_eq!(apexes, vec![LatticePoint::from([1, 0, 0, -1])]);
        assert!(!apexes.contains(&origin));
    }

    #[test]
    fn verification_counts() {
        let corpus = vec![make_dn(3).unwrap(), hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])];
        let r = verify_claim(ClaimId::Thm02_3d, &corpus).unwrap();
        assert_eq!((r.corpus_size, r.applicable, r.passes), (2, 1, 2));
        assert!(r.is_success());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["claim"], "thm02_3d");
    }
}

//! The combined analysis of one polytope.

use serde::Serialize;

use crate::error::Result;
use crate::equivalence::is_dn;
use crate::gorenstein::{gorenstein_index, vertex_certificates, GorensteinCertificate};
use crate::polytope::{Facet, LatticePoint, LatticePolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: LatticePoint,
    pub certificate: GorensteinCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PyramidReport {
    pub facet: Facet,
    pub apex: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub dimension: usize,
    pub vertices: Vec<LatticePoint>,
    pub vertex_count: usize,
    pub lattice_point_count: usize,
    /// `|Int(k·P) ∩ M|` for `k = 1..=n`.
    pub interior_counts: Vec<usize>,
    pub interior_points: Vec<LatticePoint>,
    pub vertex_certificates: Vec<VertexReport>,
    pub is_gorenstein: bool,
    pub gorenstein_index: Option<u32>,
    pub is_normal: bool,
    /// Number of layers `k = 1..` checked for `is_normal`.
    pub normality_layers: i64,
    pub is_pyramid: Option<PyramidReport>,
    pub is_simplex: bool,
    pub is_basic: bool,
    pub is_dn: bool,
}

/// Runs every predicate on `p`. Normality is checked on `layers` layers, or
/// the default bound when `None`.
pub fn analyze(p: &LatticePolytope, layers: Option<i64>) -> Result<AnalysisReport> {
    let n = p.dim();
    let certificates = vertex_certificates(p)?;
    let is_gorenstein = certificates.iter().all(GorensteinCertificate::is_gorenstein);
    let normality_layers = layers.unwrap_or_else(|| p.default_normality_bound());
    Ok(AnalysisReport {
        dimension: n,
        vertices: p.vertices().to_vec(),
        vertex_count: p.vertex_count(),
        lattice_point_count: p.lattice_point_count(),
        interior_counts: (1..=n as i64).map(|k| p.interior_count(k)).collect(),
        interior_points: p.interior_lattice_points().to_vec(),
        vertex_certificates: p
            .vertices()
            .iter()
            .cloned()
            .zip(certificates)
            .map(|(vertex, certificate)| VertexReport { vertex, certificate })
            .collect(),
        is_gorenstein,
        gorenstein_index: gorenstein_index(p),
        is_normal: p.is_normal_up_to(normality_layers),
        normality_layers,
        is_pyramid: p.is_pyramid().map(|pyr| PyramidReport {
            facet: p.facets()[pyr.facet].clone(),
            apex: p.vertices()[pyr.apex].clone(),
        }),
        is_simplex: p.is_simplex(),
        is_basic: p.is_basic_simplex(),
        is_dn: is_dn(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_polytope;

    #[test]
    fn counterexample_report() {
        let p = parse_polytope("dim 3\n0 0 0\n1 0 0\n0 1 0\n2 2 5\n").unwrap();
        let r = analyze(&p, None).unwrap();
        assert_eq!(r.interior_points, vec![LatticePoint::from([1, 1, 2])]);
        assert!(!r.is_gorenstein);
        assert!(!r.vertex_certificates[0].certificate.is_gorenstein());
        assert_eq!(r.vertex_certificates[0].vertex, LatticePoint::origin(3));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["vertex_certificates"][0]["certificate"]["status"], "not_gorenstein");
        assert_eq!(json["interior_counts"][0], 1);
    }

    #[test]
    fn d3_report() {
        let p = parse_polytope("dim 3\n0 0 0\n1 0 0\n0 1 0\n1 1 2\n").unwrap();
        let r = analyze(&p, None).unwrap();
        assert!(r.is_gorenstein);
        assert!(!r.is_normal);
        assert_eq!(r.gorenstein_index, Some(2));
        assert!(r.is_dn && r.is_simplex && !r.is_basic);
        assert_eq!(r.interior_counts, vec![0, 1, 4]);
    }

    #[test]
    fn cube_report() {
        let p = parse_polytope("dim 3\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n1 1 1\n").unwrap();
        let r = analyze(&p, None).unwrap();
        assert!(r.is_gorenstein);
        assert!(r.is_normal);
        assert!(r.vertex_certificates.iter().all(|v| v.certificate.is_nonsingular()));
        assert_eq!(r.gorenstein_index, Some(2));
        assert!(r.is_pyramid.is_none());
    }
}

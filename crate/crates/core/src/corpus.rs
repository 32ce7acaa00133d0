//! Built-in test corpora and census directories.
//!
//! The exhaustive corpora come from [`enumerate`]; higher-dimensional
//! instances, where exhaustive search is out of reach, are assembled from
//! families: `D_n`, lattice pyramids over lower-dimensional classes, products
//! of dilated triangles, and random unimodular images of all of these.

use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{enumerate, family_generator, lattice_pyramid, product, CensusSpec, Family};
use crate::claims::ClaimId;
use crate::equivalence::{make_dn, normal_form};
use crate::error::{Error, Result};
use crate::format::{read_polytope, write_points};
use crate::polytope::LatticePolytope;
use crate::report::{analyze, AnalysisReport};
use crate::unimodular::{random_shift, random_unimodular};

fn cached(cell: &'static OnceLock<Vec<LatticePolytope>>, build: impl FnOnce() -> Result<Vec<LatticePolytope>>) -> Result<Vec<LatticePolytope>> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = build()?;
    Ok(cell.get_or_init(|| v).clone())
}

fn census(dim: usize, lo: i64, hi: i64, profile: &str) -> Result<Vec<LatticePolytope>> {
    enumerate(&CensusSpec::new(dim, lo, hi, profile)?)
}

/// Drops later members equivalent to earlier ones.
fn dedup_classes(items: Vec<LatticePolytope>) -> Result<Vec<LatticePolytope>> {
    let forms = items.par_iter().map(normal_form).collect::<Result<Vec<_>>>()?;
    let mut seen = std::collections::BTreeSet::new();
    Ok(items
        .into_iter()
        .zip(forms)
        .filter(|(_, f)| seen.insert(f.clone()))
        .map(|(p, _)| p)
        .collect())
}

/// Polygons with one interior lattice point in `[-3,3]^2`.
pub fn polygons_one_interior() -> Result<Vec<LatticePolytope>> {
    static CELL: OnceLock<Vec<LatticePolytope>> = OnceLock::new();
    cached(&CELL, || census(2, -3, 3, "1:1"))
}

/// Hollow polygons in `[0,3]^2`.
pub fn polygons_hollow() -> Result<Vec<LatticePolytope>> {
    static CELL: OnceLock<Vec<LatticePolytope>> = OnceLock::new();
    cached(&CELL, || census(2, 0, 3, "1:0"))
}

/// 3-polytopes with `|Int(2P)| = 1` in `[0,2]^3` and `[-1,2]^3`.
pub fn del_pezzo_3d() -> Result<Vec<LatticePolytope>> {
    static CELL: OnceLock<Vec<LatticePolytope>> = OnceLock::new();
    cached(&CELL, || {
        let mut all = census(3, 0, 2, "1:0,2:1")?;
        all.extend(census(3, -1, 2, "1:0,2:1")?);
        dedup_classes(all)
    })
}

/// Hollow 3-polytopes in `[0,2]^3`.
pub fn hollow_3d() -> Result<Vec<LatticePolytope>> {
    static CELL: OnceLock<Vec<LatticePolytope>> = OnceLock::new();
    cached(&CELL, || census(3, 0, 2, "1:0"))
}

/// Polytopes of rank 4 and 5 with `|Int((n-1)P)| = 1`: `D_4`, `D_5`, the 0/1
/// census in rank 4, lattice pyramids over the 3- and 4-dimensional classes,
/// `Δ₂ × Δ₂` and its pyramid, and seeded random unimodular images.
pub fn del_pezzo_higher() -> Result<Vec<LatticePolytope>> {
    static CELL: OnceLock<Vec<LatticePolytope>> = OnceLock::new();
    cached(&CELL, || {
        let mut base = vec![make_dn(4)?, make_dn(5)?];
        let cube_classes = census(4, 0, 1, "2:0,3:1")?;
        base.extend(cube_classes.iter().cloned());
        for p in del_pezzo_3d()? {
            let pyr = lattice_pyramid(&p)?;
            base.push(lattice_pyramid(&pyr)?);
            base.push(pyr);
        }
        for p in &cube_classes {
            base.push(lattice_pyramid(p)?);
        }
        let tri = family_generator(Family::BasicSimplex, 2, 1)?;
        let prod = product(&tri, &tri)?;
        base.push(lattice_pyramid(&prod)?);
        base.push(prod);

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = base.clone();
        for p in &base {
            let u = random_unimodular(p.dim(), &mut rng);
            let t = random_shift(p.dim(), 5, &mut rng);
            out.push(p.transform(&u, &t)?);
        }
        Ok(out)
    })
}

/// Basic, dilated and `D_n` simplices in ranks 1 to 6.
fn simplices() -> Result<Vec<LatticePolytope>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for k in 1..=3 {
            out.push(family_generator(Family::DilatedSimplex, n, k)?);
        }
        if n >= 3 {
            out.push(make_dn(n)?);
        }
    }
    Ok(out)
}

fn pyramids_only(v: Vec<LatticePolytope>) -> Vec<LatticePolytope> {
    v.into_iter().filter(|p| p.is_pyramid().is_some()).collect()
}

/// The corpus used for `verify --auto`.
pub fn auto_corpus(claim: ClaimId) -> Result<Vec<LatticePolytope>> {
    let mut out = Vec::new();
    match claim {
        ClaimId::Thm01 => out.extend(polygons_one_interior()?),
        ClaimId::Thm02_3d => out.extend(del_pezzo_3d()?),
        ClaimId::Thm02Nd | ClaimId::Lemma41 => out.extend(del_pezzo_higher()?),
        ClaimId::Lemma1 | ClaimId::Lemma2 | ClaimId::Lemma3 => {
            out.extend(polygons_hollow()?);
            out.extend(polygons_one_interior()?);
            out.extend(hollow_3d()?);
            out.extend(del_pezzo_3d()?);
            out.extend(simplices()?);
        }
        ClaimId::Prop11 => {
            out.extend(hollow_3d()?);
            out.extend(del_pezzo_3d()?);
            out.extend(del_pezzo_higher()?);
        }
        ClaimId::Prop31 | ClaimId::Lemma32 => {
            out.extend(pyramids_only(hollow_3d()?));
            out.extend(pyramids_only(del_pezzo_3d()?));
            out.extend(pyramids_only(del_pezzo_higher()?));
        }
        ClaimId::Cor33 => {
            out.extend(pyramids_only(hollow_3d()?));
            out.extend(pyramids_only(del_pezzo_3d()?));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub file: String,
    pub normal_form_hash: String,
    pub report: AnalysisReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusIndex {
    pub spec: CensusSpec,
    pub class_count: usize,
    pub classes: Vec<CensusEntry>,
}

/// Writes one text file per class, named by normal-form hash, and a
/// `census.json` index.
pub fn write_census_dir(dir: &Path, spec: &CensusSpec, classes: &[LatticePolytope]) -> Result<CensusIndex> {
    fs::create_dir_all(dir)?;
    let entries = classes
        .par_iter()
        .map(|p| -> Result<CensusEntry> {
            let nf = normal_form(p)?;
            let file = format!("{}.txt", nf.short_hash());
            let header = format!("normal-form {}", nf.hash);
            fs::write(dir.join(&file), write_points(p.dim(), p.vertices(), &[&header]))?;
            Ok(CensusEntry {
                file,
                normal_form_hash: nf.hash,
                report: analyze(p, None)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let index = CensusIndex {
        spec: spec.clone(),
        class_count: entries.len(),
        classes: entries,
    };
    let json = serde_json::to_string_pretty(&index).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join("census.json"), json + "\n")?;
    Ok(index)
}

/// Reads every `*.txt` polytope file of a directory, in file-name order.
pub fn read_corpus_dir(dir: &Path) -> Result<Vec<LatticePolytope>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "txt"));
    paths.sort();
    paths.iter().map(read_polytope).collect()
}

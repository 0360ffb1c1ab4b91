//! Maximal nerves and the isomorphism `N(K_s(n, k)) ≅ C_s(n, k)`.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::tuples::{build_cs, build_ks, TupleComplex, TupleVertex};
use super::{SimplicialComplex, VertexLabel};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::SVector;
use crate::subset::Bits;

/// The maximal nerve: one vertex per facet (in facet order), with a set of
/// facets a face when they share a vertex.
pub fn nerve(complex: &SimplicialComplex) -> SimplicialComplex {
    let mut stars: Vec<Vec<u32>> = vec![Vec::new(); complex.vertex_count()];
    for (i, f) in complex.facets().iter().enumerate() {
        for &v in f {
            stars[v as usize].push(i as u32);
        }
    }
    let labels = complex
        .facets()
        .iter()
        .map(|f| VertexLabel::Facet(f.clone()))
        .collect();
    SimplicialComplex::new(labels, stars).expect("facet indices are in range")
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionEntry {
    pub cs_vertex: Vec<Vec<usize>>,
    /// Index of the image facet in the sorted facet list of `K_s`.
    pub ks_facet: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NerveIsoReport {
    pub schema: u32,
    pub pass: bool,
    pub cs_vertices: usize,
    pub ks_facets: usize,
    pub bijection: Vec<BijectionEntry>,
    /// A face (as tuples of `C_s`) on which the map fails, when it does.
    pub counterexample: Option<Vec<Vec<Vec<usize>>>>,
}

/// `F(A)`: ids of all `K_s` vertices `X` with `X_j ⊆ A_j`.
fn facet_of(ks: &TupleComplex, a: &TupleVertex, kvec: &[usize]) -> Vec<u32> {
    let mut ids: Vec<u32> = a
        .parts
        .iter()
        .zip(kvec)
        .map(|(part, &k)| {
            Bits(part.mask())
                .combinations(k)
                .map(|c| c.iter().fold(0u64, |m, &b| m | 1 << b))
                .collect::<Vec<u64>>()
        })
        .multi_cartesian_product()
        .filter_map(|masks| {
            let parts = masks
                .iter()
                .map(|&m| {
                    crate::subset::KSubset::from_mask(a.parts[0].ground(), m).expect("in range")
                })
                .collect();
            ks.id_of(&TupleVertex::new(parts))
        })
        .collect();
    ids.sort_unstable();
    ids
}

/// Maps every vertex `A` of `C_s` to `F(A)` and checks that this is a
/// bijection onto the facets of `K_s` carrying the faces of `C_s` exactly onto
/// the faces of `N(K_s)`.
pub fn nerve_iso_check(kvec: &[usize], s: &SVector, budget: &Budget) -> Result<NerveIsoReport> {
    if kvec.contains(&0) {
        return Err(Error::input("nerve check needs every k_j >= 1"));
    }
    let ks = build_ks(kvec, s, budget)?;
    let cs = build_cs(kvec, s, budget)?;
    let facet_index: HashMap<&Vec<u32>, usize> = ks
        .complex
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();

    let label = |v: &TupleVertex| v.parts.iter().map(|p| p.to_vec()).collect::<Vec<_>>();
    let mut report = NerveIsoReport {
        schema: 1,
        pass: true,
        cs_vertices: cs.vertices.len(),
        ks_facets: ks.complex.facets().len(),
        bijection: Vec::new(),
        counterexample: None,
    };
    let fail = |mut report: NerveIsoReport, face: Vec<Vec<Vec<usize>>>| {
        report.pass = false;
        report.counterexample = Some(face);
        report
    };

    let mut image = Vec::with_capacity(cs.vertices.len());
    let mut hit = vec![false; report.ks_facets];
    for a in &cs.vertices {
        let f = facet_of(&ks, a, kvec);
        match facet_index.get(&f) {
            Some(&i) if !hit[i] => {
                hit[i] = true;
                image.push(i as u32);
                report.bijection.push(BijectionEntry {
                    cs_vertex: label(a),
                    ks_facet: i,
                });
            }
            _ => return Ok(fail(report, vec![label(a)])),
        }
    }
    if let Some(missed) = hit.iter().position(|&h| !h) {
        let face = ks.complex.facets()[missed]
            .iter()
            .map(|&v| label(&ks.vertices[v as usize]))
            .collect();
        return Ok(fail(report, face));
    }

    let nerve_facets = nerve(&ks.complex).facets().to_vec();
    let mut mapped: Vec<Vec<u32>> = cs
        .complex
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<u32> = f.iter().map(|&v| image[v as usize]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    mapped.sort();
    if mapped != nerve_facets {
        let bad = mapped
            .iter()
            .zip(&cs.complex.facets().to_vec())
            .find(|(g, _)| nerve_facets.binary_search(g).is_err())
            .map(|(_, f)| f.clone())
            .unwrap_or_else(|| cs.complex.facets().first().cloned().unwrap_or_default());
        let face = bad
            .iter()
            .map(|&v| label(&cs.vertices[v as usize]))
            .collect();
        return Ok(fail(report, face));
    }
    Ok(report)
}

//! Finite abstract simplicial complexes stored by their facets, and the
//! constructions built on them.
//!
//! - [`zp`]: the join `E_{n-1}(Z_p)` with its free `Z_p` action.
//! - [`tuples`]: box complexes `C(G)`, `K_s(n, k)`, `C_s(n, k)` and the
//!   subcomplexes `C^I` with their retraction.
//! - [`nerve`]: maximal nerves and the `N(K_s) ≅ C_s` check.

mod bitset;
pub mod nerve;
pub mod tuples;
pub mod zp;

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

pub use bitset::VSet;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Opaque vertex labels carried alongside the integer ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexLabel {
    Id(usize),
    /// A vertex `(sign, position)` of `E_{n-1}(Z_p)`.
    Zp {
        sign: u32,
        pos: usize,
    },
    /// An ordered tuple of subsets of `[n]`.
    Tuple(Vec<Vec<usize>>),
    /// A facet of another complex, as vertex ids of that complex.
    Facet(Vec<u32>),
}

/// A complex given by its inclusion-maximal faces. Facets are sorted vertex id
/// lists and the facet list itself is sorted, so equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<VertexLabel>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// The complex generated by `faces` (any faces, not necessarily maximal).
    pub fn new(labels: Vec<VertexLabel>, faces: Vec<Vec<u32>>) -> Result<Self> {
        let nv = labels.len() as u32;
        if let Some(bad) = faces.iter().flatten().find(|&&v| v >= nv) {
            return Err(Error::input(format!("vertex id {bad} >= {nv}")));
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximal_faces(faces),
        })
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// No nonempty faces.
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Top dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        self.facets.iter().any(|g| is_sorted_subset(&f, g))
    }

    /// All nonempty faces grouped by dimension, each group sorted.
    pub fn faces_by_dim(&self, budget: &Budget) -> Result<Vec<Vec<Vec<u32>>>> {
        let top = self.dimension();
        if top < 0 {
            return Ok(Vec::new());
        }
        let top = top as usize;
        let mut by_dim: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); top + 1];
        for f in &self.facets {
            by_dim[f.len() - 1].insert(f.clone());
        }
        let mut total = 0usize;
        for d in (0..=top).rev() {
            let current: Vec<Vec<u32>> = by_dim[d].iter().cloned().collect();
            total += current.len();
            budget.check_faces(total, "face enumeration")?;
            if d == 0 {
                continue;
            }
            let (lower, _) = by_dim.split_at_mut(d);
            let below = &mut lower[d - 1];
            for f in &current {
                for skip in 0..f.len() {
                    let mut g = Vec::with_capacity(f.len() - 1);
                    g.extend_from_slice(&f[..skip]);
                    g.extend_from_slice(&f[skip + 1..]);
                    below.insert(g);
                }
            }
        }
        Ok(by_dim
            .into_iter()
            .map(|set| {
                let mut v: Vec<Vec<u32>> = set.into_iter().collect();
                v.sort();
                v
            })
            .collect())
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn f_vector(&self, budget: &Budget) -> Result<Vec<usize>> {
        Ok(self.faces_by_dim(budget)?.iter().map(Vec::len).collect())
    }

    /// Subcomplex induced on the vertices with `keep[v]`, relabeled compactly in
    /// id order. Returns the complex and the old id of every new vertex.
    pub fn induced(&self, keep: &[bool]) -> (SimplicialComplex, Vec<u32>) {
        let mut new_id = vec![u32::MAX; self.labels.len()];
        let mut old_ids = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                new_id[v] = old_ids.len() as u32;
                old_ids.push(v as u32);
            }
        }
        let faces = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .filter(|&&v| keep[v as usize])
                    .map(|&v| new_id[v as usize])
                    .collect::<Vec<u32>>()
            })
            .filter(|f| !f.is_empty())
            .collect();
        let labels = old_ids
            .iter()
            .map(|&v| self.labels[v as usize].clone())
            .collect();
        let complex = SimplicialComplex {
            labels,
            facets: maximal_faces(faces),
        };
        (complex, old_ids)
    }

    /// Removes dominated vertices until none is left (a strong collapse).
    ///
    /// A vertex `v` is dominated when some other vertex lies in every facet
    /// containing `v`; deleting it preserves the homotopy type. The result is
    /// the induced subcomplex on the surviving vertices, with their old ids.
    pub fn strong_collapse(&self) -> (SimplicialComplex, Vec<u32>) {
        let nv = self.labels.len();
        let mut facets: Vec<VSet> = self.facets.iter().map(|f| VSet::from_ids(nv, f)).collect();
        let mut alive = vec![false; nv];
        for f in &self.facets {
            for &v in f {
                alive[v as usize] = true;
            }
        }
        loop {
            let mut changed = false;
            for v in 0..nv {
                if !alive[v] {
                    continue;
                }
                let mut common: Option<VSet> = None;
                for f in facets.iter().filter(|f| f.contains(v)) {
                    match &mut common {
                        None => common = Some(f.clone()),
                        Some(c) => c.intersect_with(f),
                    }
                }
                let Some(mut common) = common else { continue };
                common.remove(v);
                if common.is_empty() {
                    continue;
                }
                alive[v] = false;
                changed = true;
                for f in facets.iter_mut() {
                    f.remove(v);
                }
                facets = maximal_sets(facets);
            }
            if !changed {
                break;
            }
        }
        self.induced(&alive)
    }

    /// Writes the text facet-list format: a header `n_vertices dimension`, one
    /// facet per line, then the label table as a single JSON line.
    pub fn write_facet_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.labels.len(), self.dimension())?;
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        writeln!(out, "{}", serde_json::to_string(&self.labels)?)?;
        Ok(())
    }

    pub fn read_facet_list<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::input("facet list: missing header"))??;
        let mut parts = header.split_whitespace();
        let nv: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::input("facet list: bad vertex count"))?;
        let mut facets = Vec::new();
        let mut labels = None;
        let mut rest = String::new();
        for line in lines {
            let line = line?;
            let trimmed = line.trim();
            if labels.is_none() && rest.is_empty() && !trimmed.starts_with('[') {
                if trimmed.is_empty() {
                    continue;
                }
                let facet = trimmed
                    .split_whitespace()
                    .map(|t| t.parse::<u32>())
                    .collect::<std::result::Result<Vec<u32>, _>>()
                    .map_err(|e| Error::input(format!("facet list: {e}")))?;
                facets.push(facet);
            } else {
                rest.push_str(&line);
                rest.push('\n');
                labels = Some(());
            }
        }
        let labels: Vec<VertexLabel> = if rest.trim().is_empty() {
            (0..nv).map(VertexLabel::Id).collect()
        } else {
            serde_json::from_str(&rest)?
        };
        if labels.len() != nv {
            return Err(Error::input(format!(
                "facet list: {} labels for {nv} vertices",
                labels.len()
            )));
        }
        SimplicialComplex::new(labels, facets)
    }

    /// Whether the vertex permutation `perm` maps faces to faces.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        let facets: BTreeSet<&Vec<u32>> = self.facets.iter().collect();
        self.facets.iter().all(|f| {
            let mut g: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
            g.sort_unstable();
            facets.contains(&g)
        })
    }

    /// A nonempty face fixed (setwise) by `perm`, if one exists.
    pub fn fixed_face(&self, perm: &[u32], budget: &Budget) -> Result<Option<Vec<u32>>> {
        for faces in self.faces_by_dim(budget)? {
            for f in faces {
                let mut g: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
                g.sort_unstable();
                if g == f {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }
}

fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Inclusion-maximal members of `faces`, each sorted, deduplicated, and listed
/// in sorted order. Empty faces are dropped.
pub fn maximal_faces(faces: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let nv = faces
        .iter()
        .flatten()
        .map(|&v| v as usize + 1)
        .max()
        .unwrap_or(0);
    let sets = faces.iter().map(|f| VSet::from_ids(nv, f)).collect();
    let mut out: Vec<Vec<u32>> = maximal_sets(sets).iter().map(VSet::to_ids).collect();
    out.sort();
    out
}

/// Inclusion-maximal nonempty sets, deduplicated.
pub fn maximal_sets(mut sets: Vec<VSet>) -> Vec<VSet> {
    sets.retain(|s| !s.is_empty());
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<VSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<VertexLabel> {
        (0..n).map(VertexLabel::Id).collect()
    }

    #[test]
    fn maximal_faces_examples() {
        // boundary of a triangle
        let tri = SimplicialComplex::new(ids(3), vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0]])
            .unwrap();
        assert_eq!(tri.facets(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        // single simplex
        let simplex = SimplicialComplex::new(ids(3), vec![vec![2, 0, 1], vec![0, 1]]).unwrap();
        assert_eq!(simplex.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn faces_of_triangle() {
        let simplex = SimplicialComplex::new(ids(3), vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            simplex.f_vector(&Budget::unlimited()).unwrap(),
            vec![3, 3, 1]
        );
        assert!(simplex.contains_face(&[2, 0]));
        let tight = Budget {
            max_faces: 5,
            ..Budget::unlimited()
        };
        assert!(simplex.faces_by_dim(&tight).is_err());
    }

    #[test]
    fn strong_collapse_of_simplex_and_circle() {
        let simplex = SimplicialComplex::new(ids(4), vec![vec![0, 1, 2, 3]]).unwrap();
        let (core, _) = simplex.strong_collapse();
        assert_eq!(core.vertex_count(), 1);
        // a 4-cycle has no dominated vertex
        let c4 =
            SimplicialComplex::new(ids(4), vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
                .unwrap();
        let (core, _) = c4.strong_collapse();
        assert_eq!(core, c4);
        // cone over a 4-cycle collapses to a point
        let cone = SimplicialComplex::new(
            ids(5),
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![0, 3, 4]],
        )
        .unwrap();
        assert_eq!(cone.strong_collapse().0.vertex_count(), 1);
    }

    #[test]
    fn facet_list_round_trip() {
        let c = SimplicialComplex::new(
            vec![
                VertexLabel::Zp { sign: 0, pos: 1 },
                VertexLabel::Tuple(vec![vec![1], vec![2, 3]]),
                VertexLabel::Id(7),
            ],
            vec![vec![0, 1], vec![2]],
        )
        .unwrap();
        let mut buf = Vec::new();
        c.write_facet_list(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("3 1\n0 1\n2\n["));
        let back = SimplicialComplex::read_facet_list(&buf[..]).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn facet_list_without_labels() {
        let back = SimplicialComplex::read_facet_list("3 1\n0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(back.facets().len(), 2);
        assert!(SimplicialComplex::read_facet_list("2 0\n0 5\n".as_bytes()).is_err());
    }
}

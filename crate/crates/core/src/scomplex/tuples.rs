//! Complexes on ordered `r`-tuples of subsets of `[n]`.
//!
//! For a tuple family the face condition "every mixed selection
//! `(A_1^{i_1}, ..., A_r^{i_r})` is s-disjoint" only depends on the coordinate
//! unions `U_j = ∪_i A_j^i`: a set of tuples is a face of `K_s(n, k)` exactly
//! when `(U_1, ..., U_r)` is s-disjoint. The facets of `K_s` are therefore the
//! maximal sets `F(U) = {X : X_j ⊆ U_j, |X_j| = k_j}` over s-disjoint `U`,
//! which is how [`build_ks`] computes them. [`build_box_complex`] instead
//! searches faces directly with the hypergraph's edge predicate, and the two
//! are compared in tests.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use super::{SimplicialComplex, VertexLabel};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphSpec, SVector};
use crate::subset::{Bits, KSubset};

/// An ordered tuple `(A_1, ..., A_r)` of subsets of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleVertex {
    pub parts: Vec<KSubset>,
}

impl TupleVertex {
    pub fn new(parts: Vec<KSubset>) -> Self {
        TupleVertex { parts }
    }

    fn from_masks(n: usize, masks: &[u64]) -> Self {
        TupleVertex {
            parts: masks
                .iter()
                .map(|&m| KSubset::from_mask(n, m).expect("mask within ground set"))
                .collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.parts.iter().map(KSubset::mask).collect()
    }

    /// Number of parts containing element `x`.
    pub fn multiplicity(&self, x: usize) -> usize {
        self.parts.iter().filter(|a| a.contains(x)).count()
    }

    /// Every `x` lies in at most `s(x)` parts.
    pub fn is_s_disjoint(&self, s: &SVector) -> bool {
        (1..=s.n()).all(|x| self.multiplicity(x) <= s.get(x) as usize)
    }

    /// Every `x` lies in exactly `s(x)` parts.
    pub fn has_exact_multiplicities(&self, s: &SVector) -> bool {
        (1..=s.n()).all(|x| self.multiplicity(x) == s.get(x) as usize)
    }

    /// The `Z_r` generator: `(a_1, ..., a_r) ↦ (a_2, ..., a_r, a_1)`.
    pub fn shifted(&self) -> TupleVertex {
        let mut parts = self.parts.clone();
        parts.rotate_left(1);
        TupleVertex { parts }
    }

    pub fn label(&self) -> VertexLabel {
        VertexLabel::Tuple(self.parts.iter().map(KSubset::to_vec).collect())
    }
}

/// A complex whose vertices are tuples, with the tuple of every vertex id.
#[derive(Clone, Debug)]
pub struct TupleComplex {
    pub complex: SimplicialComplex,
    pub vertices: Vec<TupleVertex>,
    index: HashMap<TupleVertex, u32>,
}

impl TupleComplex {
    fn new(vertices: Vec<TupleVertex>, faces: Vec<Vec<u32>>) -> Result<Self> {
        let labels = vertices.iter().map(TupleVertex::label).collect();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        Ok(TupleComplex {
            complex: SimplicialComplex::new(labels, faces)?,
            vertices,
            index,
        })
    }

    pub fn id_of(&self, v: &TupleVertex) -> Option<u32> {
        self.index.get(v).copied()
    }

    /// Vertex permutation induced by the cyclic shift of coordinates.
    pub fn shift_permutation(&self) -> Option<Vec<u32>> {
        self.vertices
            .iter()
            .map(|v| self.id_of(&v.shifted()))
            .collect()
    }

    /// Induced subcomplex on the tuples satisfying `keep`.
    pub fn induced_by(&self, keep: impl Fn(&TupleVertex) -> bool) -> TupleComplex {
        let flags: Vec<bool> = self.vertices.iter().map(keep).collect();
        let (complex, old) = self.complex.induced(&flags);
        let vertices: Vec<TupleVertex> = old
            .iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect();
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        TupleComplex {
            complex,
            vertices,
            index,
        }
    }
}

/// Whether every mixed selection of `tuples` passes `pred`.
pub fn mixed_selections_ok(tuples: &[&TupleVertex], pred: impl Fn(&[KSubset]) -> bool) -> bool {
    let Some(first) = tuples.first() else {
        return true;
    };
    let r = first.r();
    (0..r)
        .map(|_| 0..tuples.len())
        .multi_cartesian_product()
        .all(|choice| {
            let members: Vec<KSubset> = choice
                .iter()
                .enumerate()
                .map(|(j, &i)| tuples[i].parts[j])
                .collect();
            pred(&members)
        })
}

fn check_shape(kvec: &[usize], s: &SVector) -> Result<()> {
    if kvec.len() != s.r() as usize {
        return Err(Error::input(format!(
            "k-vector has {} entries, r = {}",
            kvec.len(),
            s.r()
        )));
    }
    if let Some(&k) = kvec.iter().find(|&&k| k > s.n()) {
        return Err(Error::input(format!("k = {k} exceeds n = {}", s.n())));
    }
    Ok(())
}

/// Tuples `(X_1, ..., X_r)` with `|X_j| = k_j`, visited in lexicographic order,
/// pruned to those whose running multiplicities stay within `caps`.
fn for_each_sized_tuple(n: usize, kvec: &[usize], caps: &[u32], f: &mut dyn FnMut(&[u64])) {
    let choices: Vec<Vec<u64>> = kvec
        .iter()
        .map(|&k| KSubset::all(n, k).map(|a| a.mask()).collect())
        .collect();
    let mut counts = vec![0u32; n];
    let mut chosen = Vec::with_capacity(kvec.len());
    fn rec(
        choices: &[Vec<u64>],
        caps: &[u32],
        counts: &mut [u32],
        chosen: &mut Vec<u64>,
        f: &mut dyn FnMut(&[u64]),
    ) {
        let j = chosen.len();
        if j == choices.len() {
            f(chosen);
            return;
        }
        for &m in &choices[j] {
            if Bits(m).any(|b| counts[b] + 1 > caps[b]) {
                continue;
            }
            Bits(m).for_each(|b| counts[b] += 1);
            chosen.push(m);
            rec(choices, caps, counts, chosen, f);
            chosen.pop();
            Bits(m).for_each(|b| counts[b] -= 1);
        }
    }
    rec(&choices, caps, &mut counts, &mut chosen, f);
}

/// Assignments of every `x` to exactly `s(x)` of the `r` coordinates, as the
/// resulting coordinate masks.
fn for_each_exact_tuple(s: &SVector, f: &mut dyn FnMut(&[u64])) {
    let r = s.r() as usize;
    let position_sets: Vec<Vec<u64>> = (1..=s.n())
        .map(|x| {
            (0..r)
                .combinations(s.get(x) as usize)
                .map(|c| c.iter().fold(0u64, |m, &j| m | 1 << j))
                .collect()
        })
        .collect();
    let mut parts = vec![0u64; r];
    fn rec(x: usize, sets: &[Vec<u64>], parts: &mut [u64], f: &mut dyn FnMut(&[u64])) {
        if x == sets.len() {
            f(parts);
            return;
        }
        for &pos in &sets[x] {
            for j in Bits(pos) {
                parts[j] |= 1 << x;
            }
            rec(x + 1, sets, parts, f);
            for j in Bits(pos) {
                parts[j] &= !(1 << x);
            }
        }
    }
    rec(0, &position_sets, &mut parts, f);
}

/// `K_s(n, k)`: s-disjoint tuples with `|X_j| = k_j`.
pub fn build_ks(kvec: &[usize], s: &SVector, budget: &Budget) -> Result<TupleComplex> {
    check_shape(kvec, s)?;
    let n = s.n();
    let mut vertices = Vec::new();
    let mut overflow = false;
    for_each_sized_tuple(n, kvec, s.values(), &mut |t| {
        if vertices.len() < budget.max_vertices {
            vertices.push(TupleVertex::from_masks(n, t));
        } else {
            overflow = true;
        }
    });
    if overflow {
        return Err(Error::budget(format!(
            "K_s: more than {} vertices",
            budget.max_vertices
        )));
    }
    let ids: HashMap<Vec<u64>, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.masks(), i as u32))
        .collect();
    let mut faces: HashSet<Vec<u32>> = HashSet::new();
    for_each_exact_tuple(s, &mut |union| {
        if union
            .iter()
            .zip(kvec)
            .any(|(u, &k)| (u.count_ones() as usize) < k)
        {
            return;
        }
        let per_coord: Vec<Vec<u64>> = union
            .iter()
            .zip(kvec)
            .map(|(&u, &k)| {
                Bits(u)
                    .combinations(k)
                    .map(|c| c.iter().fold(0u64, |m, &b| m | 1 << b))
                    .collect()
            })
            .collect();
        let mut face: Vec<u32> = per_coord
            .iter()
            .map(|c| c.iter().copied())
            .multi_cartesian_product()
            .map(|t| ids[&t])
            .collect();
        face.sort_unstable();
        faces.insert(face);
    });
    TupleComplex::new(vertices, faces.into_iter().collect())
}

/// `C_s(n, k)`: tuples with `|A_j| >= k_j` in which every `x` lies in exactly
/// `s(x)` parts; a set of tuples is a face when `|∩_i A_j^i| >= k_j` for all `j`.
pub fn build_cs(kvec: &[usize], s: &SVector, budget: &Budget) -> Result<TupleComplex> {
    check_shape(kvec, s)?;
    let n = s.n();
    let mut vertices = Vec::new();
    for_each_exact_tuple(s, &mut |parts| {
        if parts
            .iter()
            .zip(kvec)
            .all(|(p, &k)| p.count_ones() as usize >= k)
        {
            vertices.push(TupleVertex::from_masks(n, parts));
        }
    });
    budget.check_vertices(vertices.len(), "C_s")?;
    vertices.sort();
    let masks: Vec<Vec<u64>> = vertices.iter().map(TupleVertex::masks).collect();
    let mut faces: HashSet<Vec<u32>> = HashSet::new();
    // A face lies in the star {A : X_j ⊆ A_j} of any X chosen inside its
    // coordinate intersections; such X are s-disjoint.
    for_each_sized_tuple(n, kvec, s.values(), &mut |x| {
        let star: Vec<u32> = masks
            .iter()
            .enumerate()
            .filter(|(_, a)| a.iter().zip(x).all(|(ai, xi)| xi & !ai == 0))
            .map(|(i, _)| i as u32)
            .collect();
        if !star.is_empty() {
            faces.insert(star);
        }
    });
    TupleComplex::new(vertices, faces.into_iter().collect())
}

/// The box complex `C(G)` of a Kneser-type hypergraph: ordered tuples
/// `(a_1, ..., a_r)` whose members form an edge, with a set of tuples a face
/// when every mixed selection is an edge.
///
/// Faces are found by depth-first extension with the edge predicate itself.
pub fn build_box_complex(spec: &HypergraphSpec, budget: &Budget) -> Result<TupleComplex> {
    let r = spec.r() as usize;
    let hv = spec.enumerate_vertices();
    let mut vertices = Vec::new();
    for choice in (0..r).map(|_| 0..hv.len()).multi_cartesian_product() {
        let members: Vec<KSubset> = choice.iter().map(|&i| hv[i]).collect();
        if spec.is_edge(&members) {
            vertices.push(TupleVertex::new(members));
            budget.check_vertices(vertices.len(), "box complex")?;
        }
    }

    let mut leaves: Vec<Vec<u32>> = Vec::new();
    let mut face: Vec<u32> = Vec::new();
    let mut visited = 0usize;
    fn extend(
        spec: &HypergraphSpec,
        vertices: &[TupleVertex],
        face: &mut Vec<u32>,
        start: usize,
        leaves: &mut Vec<Vec<u32>>,
        visited: &mut usize,
        budget: &Budget,
    ) -> Result<()> {
        *visited += 1;
        budget.check_faces(*visited, "box complex")?;
        let mut extended = false;
        for v in start..vertices.len() {
            if adds_to_face(spec, vertices, face, v) {
                extended = true;
                face.push(v as u32);
                extend(spec, vertices, face, v + 1, leaves, visited, budget)?;
                face.pop();
            }
        }
        if !extended && !face.is_empty() {
            leaves.push(face.clone());
        }
        Ok(())
    }
    extend(
        spec,
        &vertices,
        &mut face,
        0,
        &mut leaves,
        &mut visited,
        budget,
    )?;
    TupleComplex::new(vertices, leaves)
}

/// Whether `face ∪ {v}` is a face: checks the mixed selections using `v`.
fn adds_to_face(spec: &HypergraphSpec, vertices: &[TupleVertex], face: &[u32], v: usize) -> bool {
    let r = spec.r() as usize;
    let pool: Vec<usize> = face.iter().map(|&i| i as usize).chain([v]).collect();
    (0..r)
        .map(|_| 0..pool.len())
        .multi_cartesian_product()
        .filter(|c| c.contains(&(pool.len() - 1)))
        .all(|c| {
            let members: Vec<KSubset> = c
                .iter()
                .enumerate()
                .map(|(j, &i)| vertices[pool[i]].parts[j])
                .collect();
            spec.is_edge(&members)
        })
}

/// A vertex of `C_s(n, k, ..., k)` (`r = s.r()` copies of `k`), or `None` when
/// `Σ s(i) < rk`.
///
/// With `M = {i : s(i) = r}`: if `|M| >= k`, every part starts as `M` and the
/// remaining elements fill the lowest parts; otherwise the first part is the
/// `k` indices of largest `s` (ties by index), those are decremented and the
/// other `r - 1` parts come from the same construction one level down.
pub fn construct_cs_vertex(s: &SVector, k: usize) -> Option<TupleVertex> {
    let n = s.n();
    construct_parts(s.values(), s.r(), k).map(|masks| TupleVertex::from_masks(n, &masks))
}

fn construct_parts(s: &[u32], r: u32, k: usize) -> Option<Vec<u64>> {
    let total: usize = s.iter().map(|&v| v as usize).sum();
    if total < r as usize * k {
        return None;
    }
    if r == 0 {
        return Some(Vec::new());
    }
    let saturated = s
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == r)
        .fold(0u64, |m, (i, _)| m | 1 << i);
    if saturated.count_ones() as usize >= k {
        let mut parts = vec![saturated; r as usize];
        for (i, &v) in s.iter().enumerate() {
            if v < r {
                for part in parts.iter_mut().take(v as usize) {
                    *part |= 1 << i;
                }
            }
        }
        return Some(parts);
    }
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(s[i]), i));
    let top: Vec<usize> = order[..k].to_vec();
    let mut reduced = s.to_vec();
    for &i in &top {
        reduced[i] -= 1;
    }
    let mut rest = construct_parts(&reduced, r - 1, k)?;
    let first = top.iter().fold(0u64, |m, &i| m | 1 << i);
    rest.insert(0, first);
    Some(rest)
}

fn check_ci_set(i_set: &KSubset, s: &SVector) -> Result<()> {
    if i_set.ground() != s.n() {
        return Err(Error::input("I and s live on different ground sets"));
    }
    if let Some(x) = i_set.elements().find(|&x| s.get(x) == 0) {
        return Err(Error::input(format!("{x} ∈ I is outside Supp(s)")));
    }
    Ok(())
}

/// `C^I`: the subcomplex induced on tuples with `I ⊆ A_1`.
pub fn restrict_ci(cs: &TupleComplex, i_set: &KSubset, s: &SVector) -> Result<TupleComplex> {
    check_ci_set(i_set, s)?;
    Ok(cs.induced_by(|v| i_set.is_subset(&v.parts[0])))
}

/// The subcomplex of `C^I` on tuples with `A_1 = I`.
pub fn ci_base(cs: &TupleComplex, i_set: &KSubset) -> TupleComplex {
    cs.induced_by(|v| v.parts[0] == *i_set)
}

/// `s'` with `s'(x) = s(x) - 1` on `I`, as a vector for `r - 1` coordinates.
pub fn decremented(s: &SVector, i_set: &KSubset) -> Result<SVector> {
    let values = (1..=s.n())
        .map(|x| s.get(x) - u32::from(i_set.contains(x)))
        .collect();
    SVector::new(values, s.r() - 1)
}

/// Retraction of `C^I` onto its `A_1 = I` part: every `x ∈ A_1 \ I` moves to
/// the lowest-index part among `A_2, ..., A_r` not already holding it.
///
/// Needs `|I| >= k`, `I ⊆ Supp(s)` and every `x` with `s(x) = r` inside `I`
/// (otherwise such an `x` has nowhere to go).
pub fn retract_ci(v: &TupleVertex, i_set: &KSubset, s: &SVector, k: usize) -> Result<TupleVertex> {
    check_ci_set(i_set, s)?;
    if i_set.len() < k {
        return Err(Error::input(format!("|I| = {} < k = {k}", i_set.len())));
    }
    if let Some(x) = s.saturated().into_iter().find(|&x| !i_set.contains(x)) {
        return Err(Error::input(format!("s({x}) = r but {x} ∉ I")));
    }
    if !i_set.is_subset(&v.parts[0]) {
        return Err(Error::input("vertex is not in C^I"));
    }
    let n = s.n();
    let mut masks = v.masks();
    let moving = masks[0] & !i_set.mask();
    for b in Bits(moving) {
        let target = (1..masks.len())
            .find(|&j| masks[j] >> b & 1 == 0)
            .ok_or_else(|| Error::input(format!("no free part for {}", b + 1)))?;
        masks[target] |= 1 << b;
    }
    masks[0] = i_set.mask();
    Ok(TupleVertex::from_masks(n, &masks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Partition;

    fn sv(v: &[u32], r: u32) -> SVector {
        SVector::new(v.to_vec(), r).unwrap()
    }

    fn sub(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn tv(n: usize, parts: &[&[usize]]) -> TupleVertex {
        TupleVertex::new(parts.iter().map(|p| sub(n, p)).collect())
    }

    fn b() -> Budget {
        Budget::unlimited()
    }

    /// Oracle: every subset of vertices checked against the face definition.
    fn brute_facets(
        vertices: &[TupleVertex],
        is_face: impl Fn(&[&TupleVertex]) -> bool,
    ) -> Vec<Vec<u32>> {
        assert!(vertices.len() <= 16);
        let mut faces = Vec::new();
        for mask in 1u32..(1 << vertices.len()) {
            let chosen: Vec<&TupleVertex> = Bits(mask as u64).map(|i| &vertices[i]).collect();
            if is_face(&chosen) {
                faces.push(Bits(mask as u64).map(|i| i as u32).collect());
            }
        }
        super::super::maximal_faces(faces)
    }

    #[test]
    fn ks_two_points() {
        let ks = build_ks(&[1, 1], &sv(&[1, 1], 2), &b()).unwrap();
        assert_eq!(
            ks.vertices,
            vec![tv(2, &[&[1], &[2]]), tv(2, &[&[2], &[1]])]
        );
        assert_eq!(ks.complex.facets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn ks_matches_mixed_selection_oracle() {
        for (kvec, s) in [
            (vec![1, 1], sv(&[1, 1, 1], 2)),
            (vec![1, 1], sv(&[2, 1, 1], 2)),
            (vec![1, 2], sv(&[1, 1, 1], 2)),
            (vec![1, 1, 1], sv(&[1, 2, 1], 3)),
        ] {
            let ks = build_ks(&kvec, &s, &b()).unwrap();
            let oracle = brute_facets(&ks.vertices, |vs| {
                mixed_selections_ok(vs, |m| TupleVertex::new(m.to_vec()).is_s_disjoint(&s))
            });
            assert_eq!(ks.complex.facets(), &oracle[..], "kvec={kvec:?} s={s:?}");
        }
        let ks = build_ks(&[1, 1], &sv(&[1, 1, 1], 2), &b()).unwrap();
        assert_eq!(ks.vertices.len(), 6);
    }

    #[test]
    fn ks_saturated_is_simplex() {
        let ks = build_ks(&[1, 1], &sv(&[2, 2, 2], 2), &b()).unwrap();
        assert_eq!(ks.vertices.len(), 9);
        assert_eq!(ks.complex.facets().len(), 1);
        assert_eq!(ks.complex.facets()[0].len(), 9);
    }

    #[test]
    fn cs_matches_intersection_oracle() {
        for (kvec, s) in [
            (vec![1, 1], sv(&[1, 1, 1], 2)),
            (vec![1, 1], sv(&[2, 1, 1], 2)),
            (vec![1, 2], sv(&[1, 1, 1, 1], 2)),
            (vec![1, 1, 1], sv(&[1, 2, 1], 3)),
        ] {
            let cs = build_cs(&kvec, &s, &b()).unwrap();
            let oracle = brute_facets(&cs.vertices, |vs| {
                (0..kvec.len()).all(|j| {
                    let inter = vs.iter().fold(u64::MAX, |m, v| m & v.parts[j].mask());
                    inter.count_ones() as usize >= kvec[j]
                })
            });
            assert_eq!(cs.complex.facets(), &oracle[..], "kvec={kvec:?} s={s:?}");
            assert!(cs.vertices.iter().all(|v| v.has_exact_multiplicities(&s)));
        }
    }

    #[test]
    fn cs_examples() {
        let cs = build_cs(&[1, 1], &sv(&[1, 1, 1], 2), &b()).unwrap();
        assert_eq!(cs.vertices.len(), 6);
        assert!(cs
            .vertices
            .iter()
            .all(|v| v.parts.iter().all(|p| !p.is_empty())));
        let empty = build_cs(&[2, 2], &sv(&[1, 1, 1], 2), &b()).unwrap();
        assert!(empty.complex.is_empty());
        let zero_k = build_cs(&[0, 0], &sv(&[1, 1], 2), &b()).unwrap();
        assert_eq!(zero_k.vertices.len(), 4);
        assert_eq!(zero_k.complex.facets(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn box_complex_examples() {
        let spec = HypergraphSpec::partition(Partition::singletons(4).unwrap(), 2, 2).unwrap();
        let c = build_box_complex(&spec, &b()).unwrap();
        assert_eq!(c.vertices.len(), 6);

        // single edge {1},{2}: the mixed selection ({1},{1}) is not an edge
        let spec = HypergraphSpec::general_s(sv(&[1, 1], 2), 1).unwrap();
        let c = build_box_complex(&spec, &b()).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.complex.facets(), &[vec![0], vec![1]]);

        // no edges at all
        let spec = HypergraphSpec::general_s(sv(&[1, 1], 3), 1).unwrap();
        let c = build_box_complex(&spec, &b()).unwrap();
        assert!(c.complex.is_empty());
    }

    #[test]
    fn box_complex_equals_ks() {
        for (s, k) in [
            (sv(&[1, 1, 1, 1], 2), 1),
            (sv(&[1, 1, 1, 1, 1], 2), 2),
            (sv(&[2, 1, 1], 2), 1),
            (sv(&[1, 1, 1, 1], 3), 1),
            (sv(&[2, 2, 1], 3), 1),
        ] {
            let spec = HypergraphSpec::general_s(s.clone(), k).unwrap();
            let boxc = build_box_complex(&spec, &b()).unwrap();
            let ks = build_ks(&vec![k; s.r() as usize], &s, &b()).unwrap();
            // same vertex sets; compare facets through labels
            let relabel = |tc: &TupleComplex| {
                let mut f: Vec<Vec<TupleVertex>> = tc
                    .complex
                    .facets()
                    .iter()
                    .map(|f| {
                        let mut t: Vec<TupleVertex> =
                            f.iter().map(|&v| tc.vertices[v as usize].clone()).collect();
                        t.sort();
                        t
                    })
                    .collect();
                f.sort();
                f
            };
            assert_eq!(relabel(&boxc), relabel(&ks), "s={s:?} k={k}");
        }
    }

    #[test]
    fn box_shift_is_free_automorphism() {
        let spec = HypergraphSpec::partition(Partition::singletons(5).unwrap(), 2, 2).unwrap();
        let c = build_box_complex(&spec, &b()).unwrap();
        let perm = c.shift_permutation().unwrap();
        assert!(c.complex.is_automorphism(&perm));
        assert_eq!(c.complex.fixed_face(&perm, &b()).unwrap(), None);
    }

    #[test]
    fn construct_examples() {
        assert_eq!(
            construct_cs_vertex(&sv(&[2, 2], 2), 2),
            Some(tv(2, &[&[1, 2], &[1, 2]]))
        );
        assert_eq!(
            construct_cs_vertex(&sv(&[1, 1, 1], 2), 1),
            Some(tv(3, &[&[1], &[2, 3]]))
        );
        assert_eq!(construct_cs_vertex(&sv(&[1, 1, 1], 2), 2), None);
        // saturated branch still places the unsaturated elements
        let v = construct_cs_vertex(&sv(&[2, 2, 1], 2), 2).unwrap();
        assert!(v.has_exact_multiplicities(&sv(&[2, 2, 1], 2)));
    }

    #[test]
    fn construct_iff_sum_condition() {
        for r in 1..=3u32 {
            for n in 1..=4usize {
                for s in (0..n).map(|_| 0..=r).multi_cartesian_product() {
                    let s = SVector::new(s, r).unwrap();
                    for k in 1..=n {
                        let v = construct_cs_vertex(&s, k);
                        assert_eq!(v.is_some(), s.n_bar() >= r as usize * k);
                        if let Some(v) = v {
                            assert!(v.has_exact_multiplicities(&s));
                            assert!(v.parts.iter().all(|p| p.len() >= k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn retraction_example() {
        let s = sv(&[1, 1, 1], 2);
        let i = sub(3, &[1]);
        let v = tv(3, &[&[1, 2], &[3]]);
        assert_eq!(retract_ci(&v, &i, &s, 1).unwrap(), tv(3, &[&[1], &[2, 3]]));
        let fixed = tv(3, &[&[1], &[2, 3]]);
        assert_eq!(retract_ci(&fixed, &i, &s, 1).unwrap(), fixed);
        assert!(retract_ci(&v, &sub(3, &[]), &s, 1).is_err());
        let s0 = sv(&[0, 1, 1], 2);
        assert!(retract_ci(&v, &i, &s0, 1).is_err());
    }

    #[test]
    fn ci_restriction_contains_retraction_edges() {
        let s = sv(&[1, 2, 1, 1], 3);
        let cs = build_cs(&[1, 1, 1], &s, &b()).unwrap();
        let i = sub(4, &[2]);
        let ci = restrict_ci(&cs, &i, &s).unwrap();
        assert!(ci.vertices.iter().all(|v| v.parts[0].contains(2)));
        for v in &ci.vertices {
            let w = retract_ci(v, &i, &s, 1).unwrap();
            assert!(w.has_exact_multiplicities(&s));
            let (a, bb) = (ci.id_of(v).unwrap(), ci.id_of(&w).unwrap());
            assert!(ci.complex.contains_face(&[a, bb]));
        }
    }
}

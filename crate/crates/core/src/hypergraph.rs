//! Ground-set combinatorics and the three Kneser-type hypergraph families.
//!
//! - `KG^r_s(n,k)`: vertices are the k-subsets of `[n]`, edges the multisets of
//!   `r` vertices with s-wise empty intersection (every element lies in at most
//!   `s - 1` members).
//! - `KG^r_S(n,k)`: the same with a per-element multiplicity bound `S = (s_1..s_n)`.
//! - `KG^r(n,k,P)`: vertices are the k-subsets meeting every block of a
//!   partition `P` at most once, edges are `r`-sets of pairwise disjoint vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{KSubset, MAX_GROUND};

/// Multiplicity bounds `S = (s_1, ..., s_n)` with `0 <= s_i <= r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SVector {
    values: Vec<u32>,
    r: u32,
}

impl SVector {
    pub fn new(values: Vec<u32>, r: u32) -> Result<Self> {
        if values.len() > MAX_GROUND {
            return Err(Error::input(format!("n = {} > {MAX_GROUND}", values.len())));
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v > r) {
            return Err(Error::input(format!("s_{} = {v} exceeds r = {r}", i + 1)));
        }
        Ok(SVector { values, r })
    }

    pub fn constant(n: usize, value: u32, r: u32) -> Result<Self> {
        SVector::new(vec![value; n], r)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `s_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// `n̄ = s_1 + ... + s_n`.
    pub fn n_bar(&self) -> usize {
        self.values.iter().map(|&v| v as usize).sum()
    }

    /// `M = {i : s_i = r}`.
    pub fn saturated(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.get(i) == self.r).collect()
    }

    /// `Supp(s) = {i : s_i > 0}`.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.get(i) > 0).collect()
    }

    pub fn is_constant(&self) -> Option<u32> {
        let first = *self.values.first()?;
        self.values.iter().all(|&v| v == first).then_some(first)
    }
}

/// A partition of `[n]` into nonempty blocks, canonically ordered by block minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::input(format!("n = {n} > {MAX_GROUND}")));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::input("partition has an empty block"));
        }
        blocks.sort();
        let mut block_of = vec![usize::MAX; n];
        for (bi, b) in blocks.iter().enumerate() {
            for &e in b {
                if e == 0 || e > n {
                    return Err(Error::input(format!("block element {e} outside [1..{n}]")));
                }
                if block_of[e - 1] != usize::MAX {
                    return Err(Error::input(format!("element {e} in two blocks")));
                }
                block_of[e - 1] = bi;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::input(format!("element {} not covered", e + 1)));
        }
        Ok(Partition {
            n,
            blocks,
            block_of,
        })
    }

    pub fn singletons(n: usize) -> Result<Self> {
        Partition::new(n, (1..=n).map(|i| vec![i]).collect())
    }

    /// Consecutive blocks of the given sizes: `{1..b_1}, {b_1+1..b_1+b_2}, ...`.
    pub fn from_shape(shape: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(shape.len());
        let mut next = 1;
        for &size in shape {
            blocks.push((next..next + size).collect());
            next += size;
        }
        Partition::new(next - 1, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// 0-based index of the block holding 1-based element `e`.
    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e - 1]
    }

    pub fn block_masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &e| m | 1 << (e - 1)))
            .collect()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `|A ∩ P_j| <= 1` for every block.
    pub fn is_admissible(&self, set: &KSubset) -> bool {
        let mut seen = 0u64;
        for e in set.elements() {
            let b = 1u64 << self.block_of(e);
            if seen & b != 0 {
                return false;
            }
            seen |= b;
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Sarkaria's `KG^r_s`: encoded as the constant vector `s - 1`.
    UniformS {
        s: u32,
        r: u32,
    },
    GeneralS(SVector),
    PartitionP {
        partition: Partition,
        r: u32,
    },
}

/// A hypergraph instance `(variant, n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypergraphSpec {
    variant: Variant,
    n: usize,
    k: usize,
    caps: Vec<u32>,
}

impl HypergraphSpec {
    pub fn uniform_s(n: usize, k: usize, r: u32, s: u32) -> Result<Self> {
        if !(2..=r).contains(&s) {
            return Err(Error::input(format!(
                "need 2 <= s <= r, got s = {s}, r = {r}"
            )));
        }
        if n < r as usize * k {
            return Err(Error::input(format!(
                "need n >= rk, got n = {n}, rk = {}",
                r as usize * k
            )));
        }
        Self::build(Variant::UniformS { s, r }, n, k, vec![s - 1; n])
    }

    /// `KG^r_S(n,k)`; `n` is the length of `S`. `n >= rk` is not required here
    /// (only `n̄ >= rk` matters for the bounds).
    pub fn general_s(s: SVector, k: usize) -> Result<Self> {
        let n = s.n();
        let caps = s.values().to_vec();
        Self::build(Variant::GeneralS(s), n, k, caps)
    }

    pub fn partition(partition: Partition, k: usize, r: u32) -> Result<Self> {
        let n = partition.n();
        if n < r as usize * k {
            return Err(Error::input(format!(
                "need n >= rk, got n = {n}, rk = {}",
                r as usize * k
            )));
        }
        Self::build(Variant::PartitionP { partition, r }, n, k, vec![1; n])
    }

    fn build(variant: Variant, n: usize, k: usize, caps: Vec<u32>) -> Result<Self> {
        let spec = HypergraphSpec {
            variant,
            n,
            k,
            caps,
        };
        if spec.r() < 2 {
            return Err(Error::input("r must be at least 2"));
        }
        if k == 0 || k > n {
            return Err(Error::input(format!(
                "need 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        if n > MAX_GROUND {
            return Err(Error::input(format!("n = {n} > {MAX_GROUND}")));
        }
        Ok(spec)
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> u32 {
        match &self.variant {
            Variant::UniformS { r, .. } | Variant::PartitionP { r, .. } => *r,
            Variant::GeneralS(s) => s.r(),
        }
    }

    /// Per-element multiplicity cap of an edge (1 for the partition family).
    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// Whether edges are `r`-sets (distinct members) rather than multisets.
    pub fn distinct_members(&self) -> bool {
        matches!(self.variant, Variant::PartitionP { .. })
    }

    pub fn partition_blocks(&self) -> Option<&Partition> {
        match &self.variant {
            Variant::PartitionP { partition, .. } => Some(partition),
            _ => None,
        }
    }

    /// The multiplicity vector of the S-families (`s - 1` constant for uniform s).
    pub fn s_vector(&self) -> Option<SVector> {
        match &self.variant {
            Variant::UniformS { s, r } => SVector::constant(self.n, s - 1, *r).ok(),
            Variant::GeneralS(s) => Some(s.clone()),
            Variant::PartitionP { .. } => None,
        }
    }

    /// Edges are exactly the `r`-families of pairwise disjoint vertices.
    pub fn is_disjointness_family(&self) -> bool {
        self.caps.iter().all(|&c| c == 1)
    }

    pub fn is_vertex(&self, a: &KSubset) -> bool {
        if a.ground() != self.n || a.len() != self.k {
            return false;
        }
        match &self.variant {
            Variant::PartitionP { partition, .. } => partition.is_admissible(a),
            _ => true,
        }
    }

    /// Admissible k-subsets in lexicographic order.
    pub fn enumerate_vertices(&self) -> Vec<KSubset> {
        KSubset::all(self.n, self.k)
            .filter(|a| self.is_vertex(a))
            .collect()
    }

    /// Edge test for a family of `r` members (order irrelevant). Non-vertices
    /// yield `false`.
    pub fn is_edge(&self, members: &[KSubset]) -> bool {
        if members.len() != self.r() as usize || !members.iter().all(|m| self.is_vertex(m)) {
            return false;
        }
        if self.distinct_members() {
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    if a == b || !a.is_disjoint(b) {
                        return false;
                    }
                }
            }
            true
        } else {
            within_caps(members, &self.caps)
        }
    }

    /// Some vertex repeated `r` times is an edge: at least `k` indices have
    /// `s_i = r`. Always false for the partition family.
    pub fn has_loop_edge(&self) -> bool {
        if self.distinct_members() {
            return false;
        }
        let r = self.r();
        self.caps.iter().filter(|&&c| c >= r).count() >= self.k
    }

    /// Enumerates edges in canonical form, failing once more than `cap` exist.
    pub fn collect_edges(&self, cap: usize) -> Result<Vec<Edge>> {
        let vertices = self.enumerate_vertices();
        let mut out = Vec::new();
        let mut overflow = false;
        let mut chosen = Vec::with_capacity(self.r() as usize);
        let mut counts = vec![0u32; self.n];
        self.edge_dfs(&vertices, 0, &mut chosen, &mut counts, &mut |members| {
            if out.len() == cap {
                overflow = true;
                return false;
            }
            out.push(Edge {
                members: members.iter().map(|&i| vertices[i]).collect(),
            });
            true
        });
        if overflow {
            return Err(Error::budget(format!("more than {cap} edges")));
        }
        Ok(out)
    }

    fn edge_dfs(
        &self,
        vertices: &[KSubset],
        start: usize,
        chosen: &mut Vec<usize>,
        counts: &mut [u32],
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == self.r() as usize {
            return emit(chosen);
        }
        let step = usize::from(self.distinct_members());
        for idx in start..vertices.len() {
            let v = vertices[idx];
            if v.elements().any(|e| counts[e - 1] + 1 > self.caps[e - 1]) {
                continue;
            }
            v.elements().for_each(|e| counts[e - 1] += 1);
            chosen.push(idx);
            let go_on = self.edge_dfs(vertices, idx + step, chosen, counts, emit);
            chosen.pop();
            v.elements().for_each(|e| counts[e - 1] -= 1);
            if !go_on {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for HypergraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Variant::UniformS { s, r } => {
                write!(f, "uniform_s:r={r}:s={s}:n={}:k={}", self.n, self.k)
            }
            Variant::GeneralS(sv) => {
                let s: Vec<String> = sv.values().iter().map(u32::to_string).collect();
                write!(f, "general_s:r={}:k={}:s={}", sv.r(), self.k, s.join("."))
            }
            Variant::PartitionP { partition, r } => {
                let shape: Vec<String> = partition
                    .blocks()
                    .iter()
                    .map(|b| b.len().to_string())
                    .collect();
                write!(
                    f,
                    "partition:r={r}:k={}:n={}:shape={}",
                    self.k,
                    self.n,
                    shape.join("+")
                )
            }
        }
    }
}

fn within_caps(members: &[KSubset], caps: &[u32]) -> bool {
    let mut counts = vec![0u32; caps.len()];
    for m in members {
        for e in m.elements() {
            counts[e - 1] += 1;
            if counts[e - 1] > caps[e - 1] {
                return false;
            }
        }
    }
    true
}

/// Whether every element `i` lies in at most `s_i` members of `tuple`.
pub fn is_s_disjoint(tuple: &[KSubset], s: &SVector) -> Result<bool> {
    if tuple.len() != s.r() as usize {
        return Err(Error::input(format!(
            "tuple has {} members, r = {}",
            tuple.len(),
            s.r()
        )));
    }
    if let Some(bad) = tuple.iter().find(|a| a.ground() != s.n()) {
        return Err(Error::input(format!(
            "subset over [{}] does not match S over [{}]",
            bad.ground(),
            s.n()
        )));
    }
    Ok(within_caps(tuple, s.values()))
}

/// A hyperedge in canonical form: members sorted, repetitions kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub members: Vec<KSubset>,
}

impl Edge {
    pub fn new(mut members: Vec<KSubset>) -> Self {
        members.sort();
        Edge { members }
    }
}

/// The reduction `KG^r(n̄, k, P) -> KG^r_S(n, k)`.
#[derive(Clone, Debug)]
pub struct SExpansion {
    pub n_bar: usize,
    pub partition: Partition,
    /// `image[x - 1]` is `f(x)` for `x` in `[n̄]`.
    pub image: Vec<usize>,
}

impl SExpansion {
    /// `f(x)` for 1-based `x`.
    pub fn map_element(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    /// Image of a subset of `[n̄]` as the list of `f`-values (with repeats).
    pub fn map_subset(&self, a: &KSubset) -> Vec<usize> {
        a.elements().map(|x| self.map_element(x)).collect()
    }
}

/// Splits `[n̄]` into consecutive runs `P_i` of length `s_i` and maps `P_i` to `i`.
pub fn expand_s_to_partition(s: &SVector) -> Result<SExpansion> {
    let n_bar = s.n_bar();
    if n_bar == 0 {
        return Err(Error::input("all s_i are zero"));
    }
    let mut image = Vec::with_capacity(n_bar);
    for i in 1..=s.n() {
        image.extend(std::iter::repeat_n(i, s.get(i) as usize));
    }
    let shape: Vec<usize> = s
        .values()
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| v as usize)
        .collect();
    let partition = Partition::from_shape(&shape)?;
    Ok(SExpansion {
        n_bar,
        partition,
        image,
    })
}

/// On-disk instance description, shared by every CLI command.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InstanceFile {
    pub variant: VariantName,
    pub n: usize,
    pub k: usize,
    pub r: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<SValues>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum VariantName {
    UniformS,
    GeneralS,
    Partition,
}

/// `s` may be written as a bare integer or a list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SValues {
    One(u32),
    Many(Vec<u32>),
}

impl InstanceFile {
    pub fn to_spec(&self) -> Result<HypergraphSpec> {
        match self.variant {
            VariantName::UniformS => {
                let s = match &self.s {
                    Some(SValues::One(s)) => *s,
                    Some(SValues::Many(v)) if v.len() == 1 => v[0],
                    _ => return Err(Error::input("uniform_s needs a single value \"s\"")),
                };
                HypergraphSpec::uniform_s(self.n, self.k, self.r, s)
            }
            VariantName::GeneralS => {
                let values = match &self.s {
                    Some(SValues::Many(v)) => v.clone(),
                    Some(SValues::One(s)) => vec![*s; self.n],
                    None => return Err(Error::input("general_s needs \"s\"")),
                };
                if values.len() != self.n {
                    return Err(Error::input(format!(
                        "s has {} entries, n = {}",
                        values.len(),
                        self.n
                    )));
                }
                HypergraphSpec::general_s(SVector::new(values, self.r)?, self.k)
            }
            VariantName::Partition => {
                let partition = match &self.blocks {
                    Some(b) => Partition::new(self.n, b.clone())?,
                    None => Partition::singletons(self.n)?,
                };
                HypergraphSpec::partition(partition, self.k, self.r)
            }
        }
    }

    pub fn from_spec(spec: &HypergraphSpec) -> Self {
        let (variant, s, blocks) = match spec.variant() {
            Variant::UniformS { s, .. } => (VariantName::UniformS, Some(SValues::One(*s)), None),
            Variant::GeneralS(sv) => (
                VariantName::GeneralS,
                Some(SValues::Many(sv.values().to_vec())),
                None,
            ),
            Variant::PartitionP { partition, .. } => (
                VariantName::Partition,
                None,
                Some(partition.blocks().to_vec()),
            ),
        };
        InstanceFile {
            variant,
            n: spec.n(),
            k: spec.k(),
            r: spec.r(),
            s,
            blocks,
        }
    }
}

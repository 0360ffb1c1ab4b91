//! Proper colorings of Kneser-type hypergraphs.
//!
//! Two explicit constructions give upper bounds: Erdős' block coloring of
//! `KG^r_S(n,k)` and the standard window coloring of `KG^r(n,k,P)`. The
//! closed-form lower bound `⌈(n - r(k-1)) / (r-1)⌉` is compared against the
//! exact solver in [`exact`].

mod exact;
mod family;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use exact::{chromatic_number_exact, Chromatic, ExactResult};
pub use family::EdgeFinder;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, HypergraphSpec, SVector, Variant};
use crate::subset::KSubset;

/// A total map from the vertices of a spec to colors `1..=t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    t: usize,
    colors: BTreeMap<KSubset, usize>,
}

impl Coloring {
    pub fn new(t: usize, colors: BTreeMap<KSubset, usize>) -> Result<Self> {
        if t == 0 && !colors.is_empty() {
            return Err(Error::input("t = 0 with a nonempty vertex set"));
        }
        if let Some((v, &c)) = colors.iter().find(|(_, &c)| c == 0 || c > t) {
            return Err(Error::input(format!(
                "vertex {v} has color {c} outside 1..={t}"
            )));
        }
        Ok(Coloring { t, colors })
    }

    pub fn from_fn(spec: &HypergraphSpec, t: usize, f: impl Fn(&KSubset) -> usize) -> Result<Self> {
        let colors = spec
            .enumerate_vertices()
            .into_iter()
            .map(|v| (v, f(&v)))
            .collect();
        Coloring::new(t, colors)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn color(&self, v: &KSubset) -> Option<usize> {
        self.colors.get(v).copied()
    }

    pub fn colors(&self) -> &BTreeMap<KSubset, usize> {
        &self.colors
    }

    /// Number of colors actually used.
    pub fn used(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Vertices grouped by color, each class in lexicographic order.
    pub fn classes(&self) -> Vec<Vec<KSubset>> {
        let mut classes = vec![Vec::new(); self.t];
        for (v, &c) in &self.colors {
            classes[c - 1].push(*v);
        }
        classes
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            schema: Some(1),
            t: self.t,
            classes: self
                .classes()
                .into_iter()
                .map(|c| c.iter().map(KSubset::to_vec).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &ColoringFile, n: usize) -> Result<Self> {
        if file.classes.len() > file.t {
            return Err(Error::input(format!(
                "{} classes for t = {}",
                file.classes.len(),
                file.t
            )));
        }
        let mut colors = BTreeMap::new();
        for (ci, class) in file.classes.iter().enumerate() {
            for v in class {
                let v = KSubset::new(n, v)?;
                if colors.insert(v, ci + 1).is_some() {
                    return Err(Error::input(format!("vertex {v} colored twice")));
                }
            }
        }
        Coloring::new(file.t, colors)
    }
}

/// Coloring file: `{"t": int, "classes": [[vertex-as-int-list, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColoringFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub t: usize,
    pub classes: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Properness {
    Proper,
    Monochromatic(Edge),
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper)
    }
}

/// Checks that no edge is monochromatic, searching each color class for an
/// `r`-family that forms an edge.
pub fn is_proper(spec: &HypergraphSpec, coloring: &Coloring) -> Result<Properness> {
    let vertices = spec.enumerate_vertices();
    if let Some(v) = vertices.iter().find(|v| coloring.color(v).is_none()) {
        return Err(Error::input(format!("coloring misses vertex {v}")));
    }
    if let Some(v) = coloring.colors().keys().find(|v| !spec.is_vertex(v)) {
        return Err(Error::input(format!("{v} is not a vertex of {spec}")));
    }
    let finder = EdgeFinder::new(spec);
    for class in coloring.classes() {
        let masks: Vec<u64> = class.iter().map(KSubset::mask).collect();
        if let Some(idx) = finder.find(&masks) {
            return Ok(Properness::Monochromatic(Edge::new(
                idx.into_iter().map(|i| class[i]).collect(),
            )));
        }
    }
    Ok(Properness::Proper)
}

/// Block sizes `t_1, ..., t_l` of Erdős' construction, in the order of the
/// ascending sort of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSchedule {
    pub t_blocks: Vec<usize>,
    /// Original labels listed in ascending-`s` order (stable on ties).
    pub order: Vec<usize>,
}

impl BlockSchedule {
    pub fn colors(&self) -> usize {
        self.t_blocks.len()
    }

    /// Blocks as sets of original labels.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.t_blocks.len());
        let mut at = 0;
        for &t in &self.t_blocks {
            let mut b = self.order[at..at + t].to_vec();
            b.sort_unstable();
            out.push(b);
            at += t;
        }
        out
    }
}

/// Erdős' coloring of `KG^r_S(n,k)` for `s_i < r`.
///
/// With `S` sorted ascending, `t_1` is maximal with `s_1 + ... + s_{t_1} < rk`
/// and every later block is maximal with multiplicity sum `< r`. A vertex
/// inside the first block gets color 1, otherwise the smallest `i >= 2` whose
/// block it meets.
pub fn erdos_greedy_coloring(s: &SVector, k: usize) -> Result<(BlockSchedule, Coloring)> {
    let r = s.r() as usize;
    if let Some(i) = (1..=s.n()).find(|&i| s.get(i) as usize >= r) {
        return Err(Error::Unsupported(format!(
            "block coloring needs every s_i < r, s_{i} = {}",
            s.get(i)
        )));
    }
    if s.n_bar() < r * k {
        return Err(Error::input(format!("n̄ = {} < rk = {}", s.n_bar(), r * k)));
    }
    let mut order: Vec<usize> = (1..=s.n()).collect();
    order.sort_by_key(|&i| (s.get(i), i));

    let mut t_blocks = Vec::new();
    let mut at = 0;
    let mut limit = r * k;
    while at < order.len() {
        let mut sum = 0;
        let mut len = 0;
        while at + len < order.len() && sum + (s.get(order[at + len]) as usize) < limit {
            sum += s.get(order[at + len]) as usize;
            len += 1;
        }
        debug_assert!(len > 0, "each s_i < r keeps blocks nonempty");
        t_blocks.push(len);
        at += len;
        limit = r;
    }
    let schedule = BlockSchedule { t_blocks, order };

    let n = s.n();
    let mut block_of = vec![0usize; n];
    for (bi, block) in schedule.blocks().iter().enumerate() {
        for &e in block {
            block_of[e - 1] = bi;
        }
    }
    let spec = HypergraphSpec::general_s(s.clone(), k)?;
    let coloring = Coloring::from_fn(&spec, schedule.colors(), |a| {
        a.elements()
            .map(|e| block_of[e - 1])
            .filter(|&b| b > 0)
            .min()
            .map_or(1, |b| b + 1)
    })?;
    Ok((schedule, coloring))
}

/// The window coloring `c(A) = min(⌈min A / (r-1)⌉, t)` with
/// `t = ⌈(n - r(k-1)) / (r-1)⌉`.
///
/// Accepts the partition family and any S-family whose edges are pairwise
/// disjoint families (all `s_i = 1`).
pub fn standard_kneser_coloring(spec: &HypergraphSpec) -> Result<Coloring> {
    if !spec.is_disjointness_family() {
        return Err(Error::Unsupported(
            "window coloring needs pairwise-disjoint edges".into(),
        ));
    }
    let (n, k, r) = (spec.n(), spec.k(), spec.r() as usize);
    if n < r * k {
        return Err(Error::input(format!("n = {n} < rk = {}", r * k)));
    }
    let t = (n - r * (k - 1)).div_ceil(r - 1);
    Coloring::from_fn(spec, t, |a| {
        let m = a.min().expect("k >= 1");
        m.div_ceil(r - 1).min(t)
    })
}

/// Colors used by Erdős' construction when all `s_i = s`:
/// `1 + ⌈(ns - rk + 1) / (P s)⌉` with `P = ⌊(r-1)/s⌋`.
pub fn ziegler_color_count(n: usize, k: usize, r: usize, s: usize) -> Result<usize> {
    if s >= r {
        return Err(Error::input(format!("need s < r, got s = {s}, r = {r}")));
    }
    if s == 0 {
        return Err(Error::input("need s >= 1"));
    }
    if n * s < r * k {
        return Err(Error::input(format!(
            "need ns >= rk, got {} < {}",
            n * s,
            r * k
        )));
    }
    let p = (r - 1) / s;
    Ok(1 + (n * s - r * k + 1).div_ceil(p * s))
}

/// `⌈(n - r(k-1)) / (r-1)⌉` (with `n̄` in place of `n` for the S-families),
/// under the hypotheses it is proved for.
pub fn formula_lower_bound(spec: &HypergraphSpec) -> Result<usize> {
    let (k, r) = (spec.k(), spec.r() as usize);
    let ground = match spec.variant() {
        Variant::PartitionP { partition, .. } => {
            if partition.max_block() > r {
                return Err(Error::BoundNotAsserted(format!(
                    "block of size {} > r = {r}",
                    partition.max_block()
                )));
            }
            spec.n()
        }
        _ => spec.s_vector().expect("S-family").n_bar(),
    };
    if ground < r * k {
        return Err(Error::BoundNotAsserted(format!(
            "ground size {ground} < rk = {}",
            r * k
        )));
    }
    Ok((ground - r * (k - 1)).div_ceil(r - 1))
}

/// The applicable explicit coloring: the window coloring for disjointness
/// families, otherwise Erdős' block coloring when every `s_i < r`.
pub fn explicit_coloring(spec: &HypergraphSpec) -> Option<Coloring> {
    if spec.is_disjointness_family() && spec.n() >= spec.r() as usize * spec.k() {
        return standard_kneser_coloring(spec).ok();
    }
    let s = spec.s_vector()?;
    erdos_greedy_coloring(&s, spec.k()).ok().map(|(_, c)| c)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    OptimalColoring(ColoringFile),
    LoopEdge(Edge),
}

/// Lower formula, explicit upper bound and exact value for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct ChromaticReport {
    pub schema: u32,
    pub instance: String,
    pub formula_lower: Option<usize>,
    pub greedy_upper: Option<usize>,
    pub exact: Chromatic,
    pub consistent: bool,
    pub witness: Option<Witness>,
}

impl ChromaticReport {
    pub fn build(spec: &HypergraphSpec, budget: &Budget) -> Result<Self> {
        let formula_lower = formula_lower_bound(spec).ok();
        let greedy = explicit_coloring(spec);
        let greedy_upper = greedy.as_ref().map(Coloring::used);
        let result = chromatic_number_exact(spec, budget).map_err(|e| match e {
            Error::Budget { what, lower, upper } => Error::Budget {
                what,
                lower,
                upper: match (upper, greedy_upper) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                },
            },
            other => other,
        })?;
        let consistent = match result.chi {
            Chromatic::Finite(x) => {
                formula_lower.is_none_or(|l| l <= x) && greedy_upper.is_none_or(|u| x <= u)
            }
            Chromatic::Infinite => greedy_upper.is_none(),
        };
        let witness = match (&result.chi, &result.coloring) {
            (_, Some(c)) => Some(Witness::OptimalColoring(c.to_file())),
            (Chromatic::Infinite, _) => spec
                .enumerate_vertices()
                .into_iter()
                .map(|v| Edge::new(vec![v; spec.r() as usize]))
                .find(|e| spec.is_edge(&e.members))
                .map(Witness::LoopEdge),
            _ => None,
        };
        Ok(ChromaticReport {
            schema: 1,
            instance: spec.to_string(),
            formula_lower,
            greedy_upper,
            exact: result.chi,
            consistent,
            witness,
        })
    }
}

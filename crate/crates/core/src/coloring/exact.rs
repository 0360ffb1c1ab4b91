//! Exact chromatic number by iterative deepening over the color count.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Coloring, EdgeFinder};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypergraph::HypergraphSpec;
use crate::subset::KSubset;

/// A chromatic number; loop edges make it infinite by convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chromatic {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Chromatic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chromatic::Finite(x) => write!(f, "{x}"),
            Chromatic::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Chromatic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Chromatic::Finite(x) => serializer.serialize_u64(*x as u64),
            Chromatic::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub chi: Chromatic,
    /// An optimal coloring (absent for the infinite case).
    pub coloring: Option<Coloring>,
    /// Search nodes visited across all color counts.
    pub nodes: u64,
}

/// Least `t` admitting a proper `t`-coloring.
///
/// Tries `t = 1, 2, ...` in turn. Each attempt backtracks over the vertices in
/// lexicographic order, rejecting a color as soon as the vertex would complete
/// an edge inside that color class. Colors are introduced in order (a vertex
/// may open color `c` only when `1..c-1` are in use), which also pins the first
/// vertex to color 1. Every attempt below the answer is a full refutation, so
/// the result does not lean on any closed-form bound.
pub fn chromatic_number_exact(spec: &HypergraphSpec, budget: &Budget) -> Result<ExactResult> {
    if spec.has_loop_edge() {
        return Ok(ExactResult {
            chi: Chromatic::Infinite,
            coloring: None,
            nodes: 0,
        });
    }
    let vertices = spec.enumerate_vertices();
    budget.check_vertices(vertices.len(), "chromatic solver")?;
    if vertices.is_empty() {
        return Ok(ExactResult {
            chi: Chromatic::Finite(0),
            coloring: Some(Coloring::new(0, BTreeMap::new())?),
            nodes: 0,
        });
    }
    let mut search = Search {
        finder: EdgeFinder::new(spec),
        masks: vertices.iter().map(KSubset::mask).collect(),
        assignment: vec![0; vertices.len()],
        classes: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    // Without loop edges, all-distinct colors are proper.
    for t in 1..=vertices.len() {
        search.classes = vec![Vec::new(); t];
        if search.color_from(0, 0, t) {
            let colors = vertices
                .iter()
                .zip(&search.assignment)
                .map(|(v, &c)| (*v, c + 1))
                .collect();
            return Ok(ExactResult {
                chi: Chromatic::Finite(t),
                coloring: Some(Coloring::new(t, colors)?),
                nodes: search.nodes,
            });
        }
        if search.aborted {
            return Err(Error::Budget {
                what: format!(
                    "chromatic solver stopped after {} nodes while testing t = {t}",
                    search.nodes
                ),
                lower: Some(t),
                upper: Some(vertices.len()),
            });
        }
    }
    unreachable!("a coloring with |V| colors exists without loop edges")
}

struct Search<'a> {
    finder: EdgeFinder,
    masks: Vec<u64>,
    assignment: Vec<usize>,
    /// Vertex masks currently in each color class.
    classes: Vec<Vec<u64>>,
    nodes: u64,
    budget: &'a Budget,
    aborted: bool,
}

impl Search<'_> {
    /// Colors vertices `idx..` given that colors `0..used` are open.
    fn color_from(&mut self, idx: usize, used: usize, t: usize) -> bool {
        if idx == self.masks.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes >= self.budget.max_nodes || (self.nodes & 0xfff == 0 && self.budget.expired())
        {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        let v = self.masks[idx];
        let top = (used + 1).min(t);
        for c in 0..top {
            self.classes[c].push(v);
            let ok = !self.finder.completes_edge(v, &self.classes[c]);
            if ok {
                self.assignment[idx] = c;
                if self.color_from(idx + 1, used.max(c + 1), t) {
                    return true;
                }
            }
            self.classes[c].pop();
            if self.aborted {
                return false;
            }
        }
        false
    }
}

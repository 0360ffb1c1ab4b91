//! Search for a hyperedge inside a set of vertices without materializing edges.

use crate::hypergraph::HypergraphSpec;
use crate::subset::Bits;

/// Finds `r`-member edges among a pool of vertex masks.
///
/// Two strategies: when every cap is at most one the members of an edge are
/// pairwise disjoint, so a single "used" mask suffices; otherwise per-element
/// counters are compared against the caps and members may repeat.
#[derive(Clone, Debug)]
pub struct EdgeFinder {
    r: usize,
    caps: Vec<u32>,
    /// Elements with cap zero; no edge member may touch them.
    blocked: u64,
    disjoint_only: bool,
    distinct: bool,
}

impl EdgeFinder {
    pub fn new(spec: &HypergraphSpec) -> Self {
        let caps = spec.caps().to_vec();
        let blocked = caps
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        EdgeFinder {
            r: spec.r() as usize,
            disjoint_only: caps.iter().all(|&c| c <= 1),
            distinct: spec.distinct_members(),
            caps,
            blocked,
        }
    }

    /// Indices (into `pool`) of an edge whose members all come from `pool`.
    pub fn find(&self, pool: &[u64]) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.r);
        if self.disjoint_only {
            self.disjoint_dfs(pool, 0, self.blocked, &mut chosen)
                .then_some(chosen)
        } else {
            let mut counts = vec![0u32; self.caps.len()];
            self.counting_dfs(pool, 0, &mut counts, &mut chosen)
                .then_some(chosen)
        }
    }

    /// Whether `v` together with members of `pool` (which may include `v`
    /// itself) forms an edge containing `v`.
    pub fn completes_edge(&self, v: u64, pool: &[u64]) -> bool {
        if self.disjoint_only {
            if v & self.blocked != 0 {
                return false;
            }
            let candidates: Vec<u64> = pool.iter().copied().filter(|&m| m & v == 0).collect();
            let mut chosen = Vec::with_capacity(self.r);
            chosen.push(usize::MAX);
            self.disjoint_dfs(&candidates, 0, self.blocked | v, &mut chosen)
        } else {
            let mut counts = vec![0u32; self.caps.len()];
            if !self.add(v, &mut counts) {
                return false;
            }
            let mut chosen = vec![usize::MAX];
            self.counting_dfs(pool, 0, &mut counts, &mut chosen)
        }
    }

    fn disjoint_dfs(&self, pool: &[u64], start: usize, used: u64, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == self.r {
            return true;
        }
        let need = self.r - chosen.len();
        for idx in start..pool.len() {
            if pool.len() - idx < need {
                break;
            }
            let m = pool[idx];
            if m & used != 0 {
                continue;
            }
            chosen.push(idx);
            if self.disjoint_dfs(pool, idx + 1, used | m, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn counting_dfs(
        &self,
        pool: &[u64],
        start: usize,
        counts: &mut [u32],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == self.r {
            return true;
        }
        let step = usize::from(self.distinct);
        for idx in start..pool.len() {
            let m = pool[idx];
            if !self.add(m, counts) {
                continue;
            }
            chosen.push(idx);
            if self.counting_dfs(pool, idx + step, counts, chosen) {
                return true;
            }
            chosen.pop();
            self.remove(m, counts);
        }
        false
    }

    fn add(&self, m: u64, counts: &mut [u32]) -> bool {
        if Bits(m).any(|b| counts[b] + 1 > self.caps[b]) {
            return false;
        }
        Bits(m).for_each(|b| counts[b] += 1);
        true
    }

    fn remove(&self, m: u64, counts: &mut [u32]) {
        Bits(m).for_each(|b| counts[b] -= 1);
    }
}

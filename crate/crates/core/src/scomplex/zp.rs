//! The `n`-fold join `E_{n-1}(Z_p)` of the discrete space `Z_p`.
//!
//! Vertices are pairs `(i, j)` with `i ∈ Z_p`, `j ∈ [n]`; a face is a set of
//! pairs with pairwise distinct second coordinates. `Z_p` is written
//! additively: the generator acts by `i ↦ i + 1 mod p`.

use serde::Serialize;

use super::{SimplicialComplex, VertexLabel};
use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A face of `E_{n-1}(Z_p)`: pairs `(sign, position)` sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZpFace {
    p: u32,
    pairs: Vec<(u32, usize)>,
}

impl ZpFace {
    pub fn new(p: u32, mut pairs: Vec<(u32, usize)>) -> Result<Self> {
        pairs.sort_by_key(|&(_, j)| j);
        if pairs.windows(2).any(|w| w[0].1 == w[1].1) {
            return Err(Error::input("two pairs share a position"));
        }
        if let Some(&(i, _)) = pairs.iter().find(|&&(i, _)| i >= p) {
            return Err(Error::input(format!("sign {i} outside Z_{p}")));
        }
        if pairs.iter().any(|&(_, j)| j == 0) {
            return Err(Error::input("positions are 1-based"));
        }
        Ok(ZpFace { p, pairs })
    }

    /// Decodes a face from per-position codes: `0` = absent, `i + 1` = sign `i`.
    pub fn from_codes(p: u32, codes: &[u32]) -> Self {
        let pairs = codes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (c - 1, j + 1))
            .collect();
        ZpFace { p, pairs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn pairs(&self) -> &[(u32, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `π_2` as a position mask (bit `j - 1`).
    pub fn positions(&self) -> u64 {
        self.pairs.iter().fold(0, |m, &(_, j)| m | 1 << (j - 1))
    }

    /// `A^i = {j : (i, j) ∈ A}` as a position mask.
    pub fn sign_class(&self, i: u32) -> u64 {
        self.pairs
            .iter()
            .filter(|&&(s, _)| s == i)
            .fold(0, |m, &(_, j)| m | 1 << (j - 1))
    }

    /// Sign at position `j`, if present.
    pub fn sign_at(&self, j: usize) -> Option<u32> {
        self.pairs.iter().find(|&&(_, q)| q == j).map(|&(i, _)| i)
    }

    /// Sub-face on the positions in `mask`.
    pub fn restrict(&self, mask: u64) -> ZpFace {
        ZpFace {
            p: self.p,
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|&(_, j)| mask >> (j - 1) & 1 == 1)
                .collect(),
        }
    }

    pub fn is_subface(&self, other: &ZpFace) -> bool {
        self.pairs.iter().all(|&(i, j)| other.sign_at(j) == Some(i))
    }

    /// Vertex ids in [`build_e`] numbering.
    pub fn vertex_ids(&self) -> Vec<u32> {
        self.pairs
            .iter()
            .map(|&(i, j)| vertex_id(self.p, i, j))
            .collect()
    }

    /// Every nonempty face of `E_{n-1}(Z_p)`, ordered by their codes.
    pub fn all(n: usize, p: u32) -> impl Iterator<Item = ZpFace> {
        let total = (p as u64 + 1).pow(n as u32);
        (1..total).map(move |mut code| {
            let mut codes = vec![0u32; n];
            for c in codes.iter_mut() {
                *c = (code % (p as u64 + 1)) as u32;
                code /= p as u64 + 1;
            }
            ZpFace::from_codes(p, &codes)
        })
    }
}

/// `ω · A`: shift every sign by `ω`.
pub fn zp_act(omega: u32, face: &ZpFace) -> ZpFace {
    ZpFace {
        p: face.p,
        pairs: face
            .pairs
            .iter()
            .map(|&(i, j)| ((i + omega) % face.p, j))
            .collect(),
    }
}

/// Vertex `(i, j)` gets id `(j - 1) p + i`.
pub fn vertex_id(p: u32, i: u32, j: usize) -> u32 {
    (j as u32 - 1) * p + i
}

/// Builds `E_{n-1}(Z_p)`; its facets are the `p^n` faces using every position.
pub fn build_e(n: usize, p: u32) -> Result<SimplicialComplex> {
    if !is_prime(p) {
        return Err(Error::input(format!("p = {p} is not prime")));
    }
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let labels = (1..=n)
        .flat_map(|j| (0..p).map(move |i| VertexLabel::Zp { sign: i, pos: j }))
        .collect();
    let count = (p as usize).pow(n as u32);
    let mut facets = Vec::with_capacity(count);
    for mut code in 0..count {
        let mut f = Vec::with_capacity(n);
        for j in 1..=n {
            f.push(vertex_id(p, (code % p as usize) as u32, j));
            code /= p as usize;
        }
        facets.push(f);
    }
    SimplicialComplex::new(labels, facets)
}

/// The vertex permutation of `ω` on `E_{n-1}(Z_p)`.
pub fn zp_vertex_action(n: usize, p: u32, omega: u32) -> Vec<u32> {
    (1..=n)
        .flat_map(|j| (0..p).map(move |i| vertex_id(p, (i + omega) % p, j)))
        .collect()
}

//! Face enumeration on vertex bitmasks and elementary collapses, for
//! complexes on at most 128 vertices.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scomplex::SimplicialComplex;

pub const MAX_MASK_VERTICES: usize = 128;

/// Nonempty faces of dimension at most `max_dim`, grouped by dimension and
/// sorted by mask value.
pub fn face_masks(
    complex: &SimplicialComplex,
    max_dim: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u128>>> {
    let nv = complex.vertex_count();
    assert!(nv <= MAX_MASK_VERTICES);
    let top = complex.dimension();
    if top < 0 {
        return Ok(Vec::new());
    }
    let dims = (top as usize).min(max_dim) + 1;
    let words = complex.facets().len().div_ceil(64);
    let mut incidence = vec![vec![0u64; words]; nv];
    for (i, f) in complex.facets().iter().enumerate() {
        for &v in f {
            incidence[v as usize][i / 64] |= 1 << (i % 64);
        }
    }
    let mut walk = Walk {
        incidence,
        by_dim: vec![Vec::new(); dims],
        total: 0,
        budget,
    };
    walk.extend(&vec![u64::MAX; words], 0, 0, 0)?;
    let mut by_dim = walk.by_dim;
    for faces in &mut by_dim {
        faces.sort_unstable();
    }
    Ok(by_dim)
}

struct Walk<'a> {
    incidence: Vec<Vec<u64>>,
    by_dim: Vec<Vec<u128>>,
    total: usize,
    budget: &'a Budget,
}

impl Walk<'_> {
    fn extend(&mut self, live: &[u64], face: u128, size: usize, start: usize) -> Result<()> {
        if size == self.by_dim.len() {
            return Ok(());
        }
        let mut next = vec![0u64; live.len()];
        for v in start..self.incidence.len() {
            let mut any = false;
            for (n, (a, b)) in next.iter_mut().zip(live.iter().zip(&self.incidence[v])) {
                *n = a & b;
                any |= *n != 0;
            }
            if !any {
                continue;
            }
            let g = face | 1 << v;
            self.by_dim[size].push(g);
            self.total += 1;
            if self.total > self.budget.max_faces {
                return Err(Error::budget(format!(
                    "face enumeration: more than {} faces",
                    self.budget.max_faces
                )));
            }
            if self.total & 0xffff == 0 && self.budget.expired() {
                return Err(Error::budget("face enumeration: deadline hit"));
            }
            let snapshot = next.clone();
            self.extend(&snapshot, g, size + 1, v + 1)?;
        }
        Ok(())
    }
}

fn position(faces: &[u128], f: u128) -> usize {
    faces.binary_search(&f).expect("boundary face present")
}

/// Removes free pairs `(σ, τ)`, where `τ` is the only face covering `σ`, until
/// none is left. Each such removal is a homotopy equivalence and leaves the
/// Euler characteristic unchanged. Faces of the top listed dimension have no
/// cofaces, so a truncated list collapses as the skeleton it describes.
pub fn collapse(by_dim: &mut [Vec<u128>]) {
    let dims = by_dim.len();
    if dims < 2 {
        return;
    }
    let mut alive: Vec<Vec<bool>> = by_dim.iter().map(|f| vec![true; f.len()]).collect();
    let mut cofaces: Vec<Vec<u32>> = by_dim.iter().map(|f| vec![0; f.len()]).collect();
    for d in 1..dims {
        let (low, high) = by_dim.split_at(d);
        for &t in &high[0] {
            for b in bits(t) {
                cofaces[d - 1][position(&low[d - 1], t & !(1 << b))] += 1;
            }
        }
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for d in 0..dims - 1 {
        for (i, &c) in cofaces[d].iter().enumerate() {
            if c == 1 {
                queue.push((d, i));
            }
        }
    }
    queue.reverse();
    while let Some((d, i)) = queue.pop() {
        if !alive[d][i] || cofaces[d][i] != 1 {
            continue;
        }
        let s = by_dim[d][i];
        let Some(j) = (0..MAX_MASK_VERTICES)
            .filter(|&v| s >> v & 1 == 0)
            .filter_map(|v| by_dim[d + 1].binary_search(&(s | 1 << v)).ok())
            .find(|&j| alive[d + 1][j])
        else {
            continue;
        };
        let t = by_dim[d + 1][j];
        alive[d][i] = false;
        alive[d + 1][j] = false;
        for b in bits(t) {
            let r = t & !(1 << b);
            if r == s {
                continue;
            }
            let k = position(&by_dim[d], r);
            cofaces[d][k] -= 1;
            if cofaces[d][k] == 1 && alive[d][k] {
                queue.push((d, k));
            }
        }
        if d > 0 {
            for b in bits(s) {
                let k = position(&by_dim[d - 1], s & !(1 << b));
                cofaces[d - 1][k] -= 1;
                if cofaces[d - 1][k] == 1 && alive[d - 1][k] {
                    queue.push((d - 1, k));
                }
            }
        }
    }
    for (faces, keep) in by_dim.iter_mut().zip(&alive) {
        let mut it = keep.iter();
        faces.retain(|_| *it.next().expect("same length"));
    }
}

pub fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

pub fn to_ids(m: u128) -> Vec<u32> {
    bits(m).map(|b| b as u32).collect()
}

//! Reduced integer homology of simplicial complexes, homological
//! connectivity, and the connectivity lower bound on chromatic numbers.

mod collapse;
mod snf;

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

pub use snf::{smith_normal_form, smith_normal_form_sparse, Snf, SparseVec};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scomplex::zp::is_prime;
use crate::scomplex::SimplicialComplex;

/// Faces per dimension with the boundary matrices between them.
///
/// `boundary[d]` maps `d`-chains to `(d-1)`-chains and is stored by columns:
/// entry `c` is the sparse boundary of the `c`-th `d`-face. `boundary[0]` is
/// the augmentation `C_0 → Z`, which makes the homology reduced.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub faces_by_dim: Vec<Vec<Vec<u32>>>,
    pub boundary: Vec<Vec<SparseVec>>,
}

impl ChainComplexData {
    pub fn new(complex: &SimplicialComplex, budget: &Budget) -> Result<Self> {
        Self::from_faces(complex.faces_by_dim(budget)?, budget)
    }

    /// From sorted face lists closed under taking nonempty subfaces.
    pub fn from_faces(faces_by_dim: Vec<Vec<Vec<u32>>>, budget: &Budget) -> Result<Self> {
        let mut boundary = Vec::with_capacity(faces_by_dim.len());
        if let Some(vertices) = faces_by_dim.first() {
            boundary.push(vec![vec![(0, 1)]; vertices.len()]);
        }
        for d in 1..faces_by_dim.len() {
            let index: HashMap<&[u32], u32> = faces_by_dim[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i as u32))
                .collect();
            let columns = faces_by_dim[d]
                .iter()
                .map(|face| {
                    let mut col: SparseVec = (0..face.len())
                        .map(|skip| {
                            let mut sub = face.clone();
                            sub.remove(skip);
                            (index[sub.as_slice()], if skip % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundary.push(columns);
            if budget.expired() {
                return Err(Error::budget(format!(
                    "boundary matrices: deadline hit at dimension {d}"
                )));
            }
        }
        Ok(ChainComplexData {
            faces_by_dim,
            boundary,
        })
    }

    /// Number of rows of `boundary[d]`.
    fn rows(&self, d: usize) -> usize {
        if d == 0 {
            1
        } else {
            self.faces_by_dim[d - 1].len()
        }
    }

    /// Whether `∂_{d-1} ∘ ∂_d = 0` for every `d` (augmentation included).
    pub fn boundary_squared_vanishes(&self) -> bool {
        self.boundary.windows(2).all(|w| {
            let (low, high) = (&w[0], &w[1]);
            high.iter().all(|col| {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(mid, a) in col {
                    for &(row, b) in &low[mid as usize] {
                        *acc.entry(row).or_default() += a * b;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    /// `Σ (-1)^d f_d`.
    pub fn euler(&self) -> i64 {
        self.faces_by_dim
            .iter()
            .enumerate()
            .map(|(d, f)| {
                if d % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }
}

/// Homological connectivity: the largest `c` with vanishing reduced integer
/// homology in degrees `0..=c`. `Infinite` when all of it vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
    Finite(i64),
    Infinite,
}

impl Connectivity {
    pub fn at_least(self, c: i64) -> bool {
        match self {
            Connectivity::Finite(x) => x >= c,
            Connectivity::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Connectivity::Finite(x) => Some(x),
            Connectivity::Infinite => None,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(x) => write!(f, "{x}"),
            Connectivity::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(x) => serializer.serialize_i64(*x),
            Connectivity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Reduced Betti numbers and torsion, indexed by degree from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub schema: u32,
    pub empty: bool,
    #[serde(rename = "betti")]
    pub reduced_betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<u64>>,
    pub euler: i64,
    pub hconn: Connectivity,
}

impl HomologyProfile {
    fn empty_complex() -> Self {
        HomologyProfile {
            schema: 1,
            empty: true,
            reduced_betti: Vec::new(),
            torsion: Vec::new(),
            euler: 0,
            hconn: Connectivity::Finite(-2),
        }
    }

    /// Same Betti numbers and torsion (Euler characteristic follows).
    pub fn same_homology(&self, other: &HomologyProfile) -> bool {
        fn trimmed<T: Clone + PartialEq>(v: &[T], zero: &T) -> Vec<T> {
            let end = v.iter().rposition(|x| x != zero).map_or(0, |i| i + 1);
            v[..end].to_vec()
        }
        self.empty == other.empty
            && trimmed(&self.reduced_betti, &0) == trimmed(&other.reduced_betti, &0)
            && trimmed(&self.torsion, &Vec::new()) == trimmed(&other.torsion, &Vec::new())
    }

    /// `1 + Σ (-1)^d β̃_d`, which must equal `euler` for nonempty complexes.
    pub fn euler_from_betti(&self) -> i64 {
        if self.empty {
            return 0;
        }
        1 + self
            .reduced_betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
    }
}

/// Reduced Betti numbers and torsion in degrees `0..f.len()`, where degree
/// `d` uses `∂_d` and `∂_{d+1}` (absent above the listed faces).
fn homology_groups(
    chain: &ChainComplexData,
    budget: &Budget,
) -> Result<(Vec<usize>, Vec<Vec<u64>>)> {
    assert!(
        chain.boundary_squared_vanishes(),
        "boundary of boundary is nonzero"
    );
    let f = chain.f_vector();
    let mut snfs = Vec::with_capacity(chain.boundary.len());
    for (d, m) in chain.boundary.iter().enumerate() {
        if budget.expired() {
            return Err(Error::budget(format!(
                "homology: deadline hit at dimension {d}"
            )));
        }
        snfs.push(smith_normal_form_sparse(m, chain.rows(d)));
    }
    let mut reduced_betti = Vec::with_capacity(f.len());
    let mut torsion = Vec::with_capacity(f.len());
    for d in 0..f.len() {
        let rank_in = snfs.get(d + 1).map_or(0, |s| s.rank);
        reduced_betti.push(f[d] - snfs[d].rank - rank_in);
        let t = match snfs.get(d + 1) {
            Some(s) => s
                .torsion()
                .iter()
                .map(|x| {
                    x.to_u64()
                        .ok_or_else(|| Error::Unsupported(format!("torsion coefficient {x}")))
                })
                .collect::<Result<Vec<u64>>>()?,
            None => Vec::new(),
        };
        torsion.push(t);
    }
    Ok((reduced_betti, torsion))
}

fn profile(reduced_betti: Vec<usize>, torsion: Vec<Vec<u64>>, euler: i64) -> HomologyProfile {
    let hconn =
        match (0..reduced_betti.len()).find(|&d| reduced_betti[d] > 0 || !torsion[d].is_empty()) {
            Some(d) => Connectivity::Finite(d as i64 - 1),
            None => Connectivity::Infinite,
        };
    let profile = HomologyProfile {
        schema: 1,
        empty: false,
        reduced_betti,
        torsion,
        euler,
        hconn,
    };
    assert_eq!(
        profile.euler,
        profile.euler_from_betti(),
        "Euler characteristic mismatch"
    );
    profile
}

/// Reduced integer homology straight from the boundary matrices of every face.
pub fn betti_numbers(complex: &SimplicialComplex, budget: &Budget) -> Result<HomologyProfile> {
    if complex.is_empty() {
        return Ok(HomologyProfile::empty_complex());
    }
    let chain = ChainComplexData::new(complex, budget)?;
    let (betti, torsion) = homology_groups(&chain, budget)?;
    Ok(profile(betti, torsion, chain.euler()))
}

fn alternating(counts: impl Iterator<Item = usize>) -> i64 {
    counts
        .enumerate()
        .map(|(d, n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Faces of dimension at most `max_dim` of the strong-collapse core, further
/// reduced by elementary collapses. Returns the chain data and the Euler
/// characteristic of the listed skeleton, or `None` when the core is too
/// large for bitmask faces.
fn reduced_chain(
    complex: &SimplicialComplex,
    max_dim: usize,
    budget: &Budget,
) -> Result<Option<(ChainComplexData, i64)>> {
    let (core, _) = complex.strong_collapse();
    if core.vertex_count() > collapse::MAX_MASK_VERTICES {
        return Ok(None);
    }
    let mut masks = collapse::face_masks(&core, max_dim, budget)?;
    let euler = alternating(masks.iter().map(Vec::len));
    collapse::collapse(&mut masks);
    let faces = masks
        .into_iter()
        .map(|dim| {
            let mut v: Vec<Vec<u32>> = dim.into_iter().map(collapse::to_ids).collect();
            v.sort();
            v
        })
        .collect();
    let chain = ChainComplexData::from_faces(faces, budget)?;
    assert_eq!(
        chain.euler(),
        euler,
        "collapse changed the Euler characteristic"
    );
    Ok(Some((chain, euler)))
}

/// Reduced homology, computed on the strong-collapse core after elementary
/// collapses (both preserve the homotopy type). `euler` is that of `complex`.
pub fn reduced_homology(complex: &SimplicialComplex, budget: &Budget) -> Result<HomologyProfile> {
    if complex.is_empty() {
        return Ok(HomologyProfile::empty_complex());
    }
    match reduced_chain(complex, usize::MAX, budget)? {
        Some((chain, euler)) => {
            let (betti, torsion) = homology_groups(&chain, budget)?;
            Ok(profile(betti, torsion, euler))
        }
        None => betti_numbers(&complex.strong_collapse().0, budget),
    }
}

pub fn homological_connectivity(
    complex: &SimplicialComplex,
    budget: &Budget,
) -> Result<Connectivity> {
    Ok(reduced_homology(complex, budget)?.hconn)
}

/// Reduced homology in degrees `0..=degree` only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowHomology {
    pub empty: bool,
    pub degree: usize,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl LowHomology {
    /// Whether the homology vanishes in every computed degree.
    pub fn vanishes(&self) -> bool {
        !self.empty && self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Reduced homology through `degree`, which only needs faces of dimension
/// up to `degree + 1`.
pub fn homology_through(
    complex: &SimplicialComplex,
    degree: usize,
    budget: &Budget,
) -> Result<LowHomology> {
    if complex.is_empty() {
        return Ok(LowHomology {
            empty: true,
            degree,
            betti: Vec::new(),
            torsion: Vec::new(),
        });
    }
    let (mut betti, mut torsion) = match reduced_chain(complex, degree + 1, budget)? {
        Some((chain, _)) => homology_groups(&chain, budget)?,
        None => {
            let p = betti_numbers(&complex.strong_collapse().0, budget)?;
            (p.reduced_betti, p.torsion)
        }
    };
    betti.resize(degree + 2, 0);
    torsion.resize(degree + 2, Vec::new());
    betti.truncate(degree + 1);
    torsion.truncate(degree + 1);
    Ok(LowHomology {
        empty: false,
        degree,
        betti,
        torsion,
    })
}

/// Whether the reduced homology vanishes through degree `c` (`c = -1`: the
/// complex is nonempty; `c <= -2`: always).
pub fn homologically_connected(
    complex: &SimplicialComplex,
    c: i64,
    budget: &Budget,
) -> Result<bool> {
    match c {
        i64::MIN..=-2 => Ok(true),
        -1 => Ok(!complex.is_empty()),
        _ => Ok(homology_through(complex, c as usize, budget)?.vanishes()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AflBound {
    pub value: u64,
    /// Whether `r` is prime, as the bound requires.
    pub prime_hypothesis: bool,
}

/// `⌈(c + r + 1) / (r - 1)⌉` for a `c`-connected box complex of an
/// `r`-uniform hypergraph; `0` for `c <= -2`.
pub fn afl_lower_bound(c: i64, r: u32) -> Result<AflBound> {
    if r < 2 {
        return Err(Error::input(format!("r = {r} must be at least 2")));
    }
    let value = if c <= -2 {
        0
    } else {
        ((c + r as i64 + 1) as u64).div_ceil(r as u64 - 1)
    };
    Ok(AflBound {
        value,
        prime_hypothesis: is_prime(r),
    })
}

//! Subsets of a small ground set `[n] = {1, ..., n}` stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// A subset of `[n]`. Bit `i - 1` of the mask holds element `i`.
///
/// Ordering is lexicographic on the ascending element sequence, so
/// `{1,2} < {1,3} < {2,3}` and a proper prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    mask: u64,
    n: u8,
}

impl KSubset {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::input(format!("ground set {n} > {MAX_GROUND}")));
        }
        if n < MAX_GROUND && mask >> n != 0 {
            return Err(Error::input(format!("mask {mask:#b} outside [1..{n}]")));
        }
        Ok(KSubset { mask, n: n as u8 })
    }

    /// Builds a subset from 1-based elements; order and duplicates are rejected
    /// only if an element falls outside `[1..n]`.
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::input(format!("element {e} outside [1..{n}]")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::input(format!("element {e} repeated")));
            }
            mask |= bit;
        }
        KSubset::from_mask(n, mask)
    }

    pub fn empty(n: usize) -> Self {
        KSubset {
            mask: 0,
            n: n as u8,
        }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        (1..=64).contains(&element) && self.mask >> (element - 1) & 1 == 1
    }

    pub fn is_subset(&self, other: &KSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.mask & other.mask == 0
    }

    pub fn min(&self) -> Option<usize> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() as usize + 1)
    }

    /// Ascending elements.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        Bits(self.mask).map(|b| b + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = KSubset> {
        (1..=n)
            .combinations(k)
            .map(move |c| KSubset::new(n, &c).expect("combination within ground set"))
    }
}

/// Iterator over set bit positions (0-based, ascending).
#[derive(Clone)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Lexicographic comparison of the ascending element lists encoded by two masks.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = a ^ b;
    let q = d.trailing_zeros();
    let above = if q >= 63 { 0 } else { !((1u64 << (q + 1)) - 1) };
    if a >> q & 1 == 1 {
        // a continues with q; b continues with something larger or stops.
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self.mask, other.mask).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements().join(","))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

/// Deserializes from an element list; the ground set is taken as the largest
/// element, so callers that know `n` should rebuild with [`KSubset::new`].
impl<'de> Deserialize<'de> for KSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(deserializer)?;
        let n = elems.iter().copied().max().unwrap_or(0);
        KSubset::new(n, &elems).map_err(serde::de::Error::custom)
    }
}

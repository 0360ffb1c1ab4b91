//! A checkable `Z_p`-Tucker certificate built from a coloring of
//! `KG^p(n, k, P)`.
//!
//! Every nonempty face `A` of `E_{n-1}(Z_p)` gets a label
//! `λ(A) = (λ_1, λ_2) ∈ Z_p × [m]`, with `α = p(k-1)` and `m = α + t`. Let `B`
//! be the largest admissible subface of `A`. If `|B| <= α` the label is
//! `(P(B), |B|)`; otherwise the smallest `k`-subset `F` inside some `B^i` is
//! located and the label is `(i, c(F) + α)`. [`verify_tucker_conditions`]
//! checks equivariance, both Tucker conditions and the resulting inequality
//! `α + (m - α)(p - 1) >= n` exhaustively.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphSpec, InstanceFile, Partition};
use crate::scomplex::zp::{is_prime, zp_act, ZpFace};
use crate::subset::{Bits, KSubset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuckerParams {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub partition: Partition,
    pub t: usize,
    pub alpha: usize,
    pub m: usize,
}

impl TuckerParams {
    pub fn new(p: u32, partition: Partition, k: usize, t: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("p = {p} is not prime")));
        }
        if partition.max_block() > p as usize {
            return Err(Error::input(format!(
                "block of size {} exceeds p = {p}",
                partition.max_block()
            )));
        }
        if k == 0 {
            return Err(Error::input("k must be at least 1"));
        }
        let alpha = p as usize * (k - 1);
        Ok(TuckerParams {
            p,
            n: partition.n(),
            k,
            partition,
            t,
            alpha,
            m: alpha + t,
        })
    }

    /// The hypergraph `KG^p(n, k, P)` the coloring is meant for.
    pub fn spec(&self) -> Result<HypergraphSpec> {
        HypergraphSpec::partition(self.partition.clone(), self.k, self.p)
    }
}

/// The fixed total order on subsets of `[n]` (as masks): by size, then
/// colexicographically, which for equal sizes is numeric order of the masks.
pub fn subset_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then(a.cmp(&b))
}

/// The order-maximal admissible subface of `a`: for every sign `i` and block
/// `P_j` that `A^i` meets, keep its largest position.
pub fn max_admissible_subset(a: &ZpFace, partition: &Partition) -> ZpFace {
    let mut keep = 0u64;
    for i in 0..a.p() {
        let class = a.sign_class(i);
        for block in partition.block_masks() {
            let cell = class & block;
            if cell != 0 {
                keep |= 1 << (63 - cell.leading_zeros());
            }
        }
    }
    a.restrict(keep)
}

/// Whether every `B^i` meets each block at most once.
pub fn is_admissible_face(b: &ZpFace, partition: &Partition) -> bool {
    (0..b.p()).all(|i| {
        let class = b.sign_class(i);
        partition
            .block_masks()
            .iter()
            .all(|m| (class & m).count_ones() <= 1)
    })
}

fn inverse_mod(h: u32, p: u32) -> u32 {
    (1..p)
        .find(|&x| h * x % p == 1)
        .expect("p prime and h not divisible by p")
}

/// `P(B)`: on the first block meeting `B`, with `B'` the pairs over that
/// block in position order and `h = |B'|`, returns `i_1` when `h = p` and
/// `h'(i_1 + ... + i_h) mod p` otherwise, `h h' ≡ 1 (mod p)`.
pub fn p_invariant(b: &ZpFace, partition: &Partition, p: u32) -> u32 {
    let positions = b.positions();
    let block = partition
        .block_masks()
        .into_iter()
        .find(|m| m & positions != 0)
        .expect("nonempty face");
    let signs: Vec<u32> = b
        .pairs()
        .iter()
        .filter(|&&(_, j)| block >> (j - 1) & 1 == 1)
        .map(|&(i, _)| i)
        .collect();
    let h = signs.len() as u32;
    if h == p {
        signs[0]
    } else {
        inverse_mod(h % p, p) * (signs.iter().sum::<u32>() % p) % p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaValue {
    pub l1: u32,
    pub l2: usize,
}

impl fmt::Display for LambdaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

/// `λ(A)`; fails when the coloring misses a needed vertex.
pub fn lambda_map(a: &ZpFace, params: &TuckerParams, coloring: &Coloring) -> Result<LambdaValue> {
    let b = max_admissible_subset(a, &params.partition);
    if b.len() <= params.alpha {
        return Ok(LambdaValue {
            l1: p_invariant(&b, &params.partition, params.p),
            l2: b.len(),
        });
    }
    let (sign, f) = (0..params.p)
        .filter_map(|i| {
            let class = b.sign_class(i);
            (class.count_ones() as usize >= params.k)
                .then(|| (i, Bits(class).take(params.k).fold(0u64, |m, x| m | 1 << x)))
        })
        .min_by(|x, y| subset_cmp(x.1, y.1))
        .expect("|B| > p(k-1) leaves some B^i with k elements");
    let f = KSubset::from_mask(params.n, f)?;
    let c = coloring
        .color(&f)
        .ok_or_else(|| Error::input(format!("coloring has no color for {f}")))?;
    Ok(LambdaValue {
        l1: sign,
        l2: c + params.alpha,
    })
}

/// A failed check: the faces involved (as `(sign, position)` pairs) and
/// their labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub faces: Vec<Vec<(u32, usize)>>,
    pub lambdas: Vec<LambdaValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(Violation),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Check::Pass => None,
            Check::Fail(v) => Some(v),
        }
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Check::Pass => serializer.serialize_str("pass"),
            Check::Fail(v) => v.serialize(serializer),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TuckerReport {
    pub schema: u32,
    pub instance: InstanceFile,
    pub p: u32,
    pub t: usize,
    pub alpha: usize,
    pub m: usize,
    pub faces: usize,
    pub equivariance: Check,
    pub cond1: Check,
    pub cond2: Check,
    pub inequality: Inequality,
    pub pass: bool,
}

/// Faces are indexed by their code `Σ_j (sign_j + 1)(p + 1)^(j-1)`.
fn code_of(face: &ZpFace) -> usize {
    let base = face.p() as usize + 1;
    face.pairs()
        .iter()
        .map(|&(i, j)| (i as usize + 1) * base.pow(j as u32 - 1))
        .sum()
}

struct Labels<'a> {
    n: usize,
    p: u32,
    lambda: Vec<LambdaValue>,
    faces: Vec<ZpFace>,
    budget: &'a Budget,
}

impl Labels<'_> {
    fn at(&self, face: &ZpFace) -> LambdaValue {
        self.lambda[code_of(face) - 1]
    }

    fn violation(&self, faces: &[&ZpFace], omega: Option<u32>) -> Check {
        Check::Fail(Violation {
            faces: faces.iter().map(|f| f.pairs().to_vec()).collect(),
            lambdas: faces.iter().map(|f| self.at(f)).collect(),
            omega,
        })
    }

    /// Proper nonempty subfaces of `face`.
    fn proper_subfaces(face: &ZpFace) -> impl Iterator<Item = ZpFace> + '_ {
        let positions: Vec<u64> = Bits(face.positions()).map(|b| 1u64 << b).collect();
        let full = (1u64 << positions.len()) - 1;
        (1..full).map(move |sel| {
            let mask = Bits(sel).fold(0u64, |m, b| m | positions[b]);
            face.restrict(mask)
        })
    }

    /// Proper superfaces of `face`.
    fn proper_superfaces<'f>(&self, face: &'f ZpFace) -> impl Iterator<Item = ZpFace> + 'f {
        let free: Vec<usize> = (1..=self.n)
            .filter(|&j| face.sign_at(j).is_none())
            .collect();
        let base = self.p as u64 + 1;
        let total = base.pow(free.len() as u32);
        let p = self.p;
        (1..total).map(move |mut code| {
            let mut pairs = face.pairs().to_vec();
            for &j in &free {
                let digit = (code % base) as u32;
                code /= base;
                if digit > 0 {
                    pairs.push((digit - 1, j));
                }
            }
            ZpFace::new(p, pairs).expect("distinct positions")
        })
    }

    fn equivariance(&self) -> Check {
        for a in &self.faces {
            let la = self.at(a);
            for omega in 1..self.p {
                let shifted = zp_act(omega, a);
                let ls = self.at(&shifted);
                if ls
                    != (LambdaValue {
                        l1: (la.l1 + omega) % self.p,
                        l2: la.l2,
                    })
                {
                    return self.violation(&[a, &shifted], Some(omega));
                }
            }
        }
        Check::Pass
    }

    /// `A_1 ⊆ A_2` and `λ_2(A_1) = λ_2(A_2) <= α` force `λ_1(A_1) = λ_1(A_2)`.
    fn condition_one(&self, alpha: usize) -> Result<Check> {
        for (idx, big) in self.faces.iter().enumerate() {
            if idx & 0x3ff == 0 && self.budget.expired() {
                return Err(Error::budget(format!(
                    "condition 1: deadline hit after {idx} faces"
                )));
            }
            let lb = self.at(big);
            if lb.l2 > alpha {
                continue;
            }
            for small in Self::proper_subfaces(big) {
                let ls = self.at(&small);
                if ls.l2 == lb.l2 && ls.l1 != lb.l1 {
                    return Ok(self.violation(&[&small, big], None));
                }
            }
        }
        Ok(Check::Pass)
    }

    /// No chain `A_1 ⊆ ... ⊆ A_p` with equal `λ_2 > α` has pairwise distinct
    /// `λ_1`. Chains are grown through proper superfaces with the same `λ_2`
    /// and an unused `λ_1`.
    fn condition_two(&self, alpha: usize) -> Result<Check> {
        let mut chain: Vec<ZpFace> = Vec::new();
        for (idx, a) in self.faces.iter().enumerate() {
            if idx & 0x3ff == 0 && self.budget.expired() {
                return Err(Error::budget(format!(
                    "condition 2: deadline hit after {idx} faces"
                )));
            }
            let la = self.at(a);
            if la.l2 <= alpha {
                continue;
            }
            chain.clear();
            chain.push(a.clone());
            if self.grow(&mut chain, la.l2, 1u64 << la.l1) {
                let refs: Vec<&ZpFace> = chain.iter().collect();
                return Ok(self.violation(&refs, None));
            }
        }
        Ok(Check::Pass)
    }

    fn grow(&self, chain: &mut Vec<ZpFace>, l2: usize, used: u64) -> bool {
        if chain.len() == self.p as usize {
            return true;
        }
        let last = chain.last().expect("nonempty chain").clone();
        if last.len() == self.n {
            return false;
        }
        for sup in self.proper_superfaces(&last) {
            let l = self.at(&sup);
            if l.l2 != l2 || used >> l.l1 & 1 == 1 {
                continue;
            }
            chain.push(sup);
            if self.grow(chain, l2, used | 1 << l.l1) {
                return true;
            }
            chain.pop();
        }
        false
    }
}

/// Labels every nonempty face of `E_{n-1}(Z_p)` and checks equivariance,
/// both Tucker conditions and `α + (m - α)(p - 1) >= n`.
pub fn verify_tucker_conditions(
    params: &TuckerParams,
    coloring: &Coloring,
    budget: &Budget,
) -> Result<TuckerReport> {
    if params.n > 20 {
        return Err(Error::input(format!(
            "n = {} is too large to enumerate",
            params.n
        )));
    }
    let total = (params.p as u128 + 1).pow(params.n as u32) - 1;
    if total > budget.max_faces as u128 {
        return Err(Error::budget(format!(
            "E_{}(Z_{}): {total} faces > cap {}",
            params.n - 1,
            params.p,
            budget.max_faces
        )));
    }
    let faces: Vec<ZpFace> = ZpFace::all(params.n, params.p).collect();
    let lambda = faces
        .iter()
        .map(|f| lambda_map(f, params, coloring))
        .collect::<Result<Vec<_>>>()?;
    let labels = Labels {
        n: params.n,
        p: params.p,
        lambda,
        faces,
        budget,
    };
    let equivariance = labels.equivariance();
    let cond1 = labels.condition_one(params.alpha)?;
    let cond2 = labels.condition_two(params.alpha)?;
    let lhs = params.alpha + (params.m - params.alpha) * (params.p as usize - 1);
    let inequality = Inequality {
        lhs,
        rhs: params.n,
        holds: lhs >= params.n,
    };
    let pass = equivariance.passed() && cond1.passed() && cond2.passed() && inequality.holds;
    Ok(TuckerReport {
        schema: 1,
        instance: InstanceFile::from_spec(&params.spec()?),
        p: params.p,
        t: params.t,
        alpha: params.alpha,
        m: params.m,
        faces: labels.faces.len(),
        equivariance,
        cond1,
        cond2,
        inequality,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_proper, standard_kneser_coloring};
    use proptest::prelude::*;

    fn face(p: u32, pairs: &[(u32, usize)]) -> ZpFace {
        ZpFace::new(p, pairs.to_vec()).unwrap()
    }

    /// Oracle: argmax over every admissible subface under [`subset_cmp`].
    fn brute_max_admissible(a: &ZpFace, partition: &Partition) -> ZpFace {
        let positions: Vec<u64> = Bits(a.positions()).map(|b| 1u64 << b).collect();
        (1u64..1 << positions.len())
            .map(|sel| a.restrict(Bits(sel).fold(0, |m, b| m | positions[b])))
            .filter(|b| is_admissible_face(b, partition))
            .max_by(|x, y| subset_cmp(x.positions(), y.positions()))
            .unwrap()
    }

    fn shapes(n: usize, cap: usize) -> Vec<Vec<usize>> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=max.min(left)).rev() {
                cur.push(part);
                rec(left - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, cap, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn cellwise_max_matches_brute_force() {
        for p in [2u32, 3] {
            for n in 1..=4 {
                for shape in shapes(n, p as usize) {
                    let partition = Partition::from_shape(&shape).unwrap();
                    for a in ZpFace::all(n, p) {
                        assert_eq!(
                            max_admissible_subset(&a, &partition),
                            brute_max_admissible(&a, &partition),
                            "p={p} shape={shape:?} a={a:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn max_admissible_examples() {
        let blocks = Partition::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let a = face(2, &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(
            max_admissible_subset(&a, &blocks),
            face(2, &[(0, 2), (1, 3)])
        );
        let singles = Partition::singletons(4).unwrap();
        assert_eq!(max_admissible_subset(&a, &singles), a);
    }

    #[test]
    fn p_invariant_examples() {
        let singles = Partition::singletons(3).unwrap();
        assert_eq!(p_invariant(&face(3, &[(2, 2)]), &singles, 3), 2);
        let block = Partition::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(p_invariant(&face(3, &[(1, 1), (2, 2)]), &block, 3), 0);
        let pair = Partition::new(2, vec![vec![1, 2]]).unwrap();
        assert_eq!(p_invariant(&face(2, &[(0, 1), (1, 2)]), &pair, 2), 0);
    }

    /// Multiplicative definition over the `p`-th roots of unity, encoded as
    /// exponents: `(ζ^{i_1} ... ζ^{i_h})^{h'}`.
    fn p_invariant_roots(signs: &[u32], p: u32) -> u32 {
        let h = signs.len() as u32;
        if h == p {
            return signs[0];
        }
        let hp = (1..p).find(|&x| h * x % p == 1).unwrap();
        let product = signs.iter().fold(0u32, |e, &i| (e + i) % p);
        (0..hp).fold(0u32, |e, _| (e + product) % p)
    }

    #[test]
    fn p_invariant_matches_roots_of_unity() {
        let p = 3;
        let block = Partition::new(3, vec![vec![1, 2, 3]]).unwrap();
        for a in ZpFace::all(3, p) {
            let b = max_admissible_subset(&a, &block);
            let signs: Vec<u32> = b.pairs().iter().map(|&(i, _)| i).collect();
            assert_eq!(p_invariant(&b, &block, p), p_invariant_roots(&signs, p));
        }
    }

    fn standard(p: u32, shape: &[usize], k: usize) -> (TuckerParams, Coloring) {
        let partition = Partition::from_shape(shape).unwrap();
        let spec = HypergraphSpec::partition(partition.clone(), k, p).unwrap();
        let coloring = standard_kneser_coloring(&spec).unwrap();
        assert!(is_proper(&spec, &coloring).unwrap().is_proper());
        (
            TuckerParams::new(p, partition, k, coloring.t()).unwrap(),
            coloring,
        )
    }

    #[test]
    fn lambda_examples() {
        let (params, coloring) = standard(2, &[1, 1, 1, 1], 2);
        let a = face(2, &[(0, 1)]);
        assert_eq!(
            lambda_map(&a, &params, &coloring).unwrap(),
            LambdaValue { l1: 0, l2: 1 }
        );
        let a = face(2, &[(0, 1), (0, 2), (1, 3)]);
        let c12 = coloring.color(&KSubset::new(4, &[1, 2]).unwrap()).unwrap();
        let l = lambda_map(&a, &params, &coloring).unwrap();
        assert_eq!(l, LambdaValue { l1: 0, l2: c12 + 2 });
        let shifted = lambda_map(&zp_act(1, &a), &params, &coloring).unwrap();
        assert_eq!(shifted, LambdaValue { l1: 1, l2: l.l2 });
    }

    #[test]
    fn certificates_for_standard_colorings() {
        let b = Budget::unlimited();
        let (params, coloring) = standard(2, &[1, 1, 1, 1], 2);
        let report = verify_tucker_conditions(&params, &coloring, &b).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.faces, 80);
        assert_eq!(
            report.inequality,
            Inequality {
                lhs: 4,
                rhs: 4,
                holds: true
            }
        );

        let (params, coloring) = standard(3, &[1, 1, 1, 1, 1], 1);
        let report = verify_tucker_conditions(&params, &coloring, &b).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.faces, 1023);
        assert_eq!(
            report.inequality,
            Inequality {
                lhs: 6,
                rhs: 5,
                holds: true
            }
        );

        let (params, coloring) = standard(2, &[2, 1, 1], 2);
        assert!(
            verify_tucker_conditions(&params, &coloring, &b)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn improper_coloring_breaks_condition_two() {
        let partition = Partition::singletons(4).unwrap();
        let spec = HypergraphSpec::partition(partition.clone(), 2, 2).unwrap();
        let constant = Coloring::from_fn(&spec, 1, |_| 1).unwrap();
        assert!(!is_proper(&spec, &constant).unwrap().is_proper());
        let params = TuckerParams::new(2, partition, 2, 1).unwrap();
        let report = verify_tucker_conditions(&params, &constant, &Budget::unlimited()).unwrap();
        assert!(!report.pass);
        let v = report.cond2.violation().expect("condition 2 must fail");
        assert_eq!(v.faces.len(), 2);
        assert_ne!(v.lambdas[0].l1, v.lambdas[1].l1);
        assert!(report.equivariance.passed());
    }

    #[test]
    fn report_json_shape() {
        let (params, coloring) = standard(2, &[1, 1, 1, 1], 2);
        let report = verify_tucker_conditions(&params, &coloring, &Budget::unlimited()).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["cond1"], "pass");
        assert_eq!(
            v["inequality"],
            serde_json::json!({"lhs": 4, "rhs": 4, "holds": true})
        );
        assert_eq!(v["alpha"], 2);
        assert_eq!(v["m"], 4);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(TuckerParams::new(4, Partition::singletons(4).unwrap(), 1, 2).is_err());
        assert!(TuckerParams::new(2, Partition::from_shape(&[3, 1]).unwrap(), 1, 2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        /// Comparable faces with equal `|B|` share the block, the count `h`
        /// and the invariant.
        #[test]
        fn monotone_b(p in prop::sample::select(vec![2u32, 3]), codes in prop::collection::vec(0u32..4, 4), extra in prop::collection::vec(0u32..4, 4)) {
            let n = 4;
            let codes: Vec<u32> = codes.iter().map(|c| c % (p + 1)).collect();
            let small = ZpFace::from_codes(p, &codes);
            let big_codes: Vec<u32> = codes.iter().zip(&extra).map(|(&c, &e)| if c > 0 { c } else { e % (p + 1) }).collect();
            let big = ZpFace::from_codes(p, &big_codes);
            prop_assume!(!small.is_empty());
            for shape in shapes(n, p as usize) {
                let partition = Partition::from_shape(&shape).unwrap();
                let b1 = max_admissible_subset(&small, &partition);
                let b2 = max_admissible_subset(&big, &partition);
                prop_assert!(b1.len() <= b2.len());
                if b1.len() == b2.len() {
                    prop_assert_eq!(p_invariant(&b1, &partition, p), p_invariant(&b2, &partition, p));
                }
            }
        }

        #[test]
        fn lambda_is_equivariant(codes in prop::collection::vec(0u32..4, 5), omega in 1u32..3) {
            let (params, coloring) = standard(3, &[1, 1, 1, 1, 1], 1);
            let a = ZpFace::from_codes(3, &codes);
            prop_assume!(!a.is_empty());
            let l = lambda_map(&a, &params, &coloring).unwrap();
            let ls = lambda_map(&zp_act(omega, &a), &params, &coloring).unwrap();
            prop_assert_eq!(ls, LambdaValue { l1: (l.l1 + omega) % 3, l2: l.l2 });
            prop_assert_eq!(l.l2 <= params.alpha, max_admissible_subset(&a, &params.partition).len() <= params.alpha);
        }
    }
}

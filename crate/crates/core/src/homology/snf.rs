//! Smith normal form over the integers.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on `BigInt`
//! if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed};

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank` (all positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    pub factors: Vec<BigInt>,
}

impl Snf {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

trait SnfInt: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> {}
impl SnfInt for i64 {}
impl SnfInt for BigInt {}

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec = Vec<(u32, i64)>;

/// Smith normal form of a dense row-major matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Snf {
    let width = m.first().map_or(0, Vec::len);
    let rows: Vec<SparseVec> = m
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j as u32, v))
                .collect()
        })
        .collect();
    smith_normal_form_sparse(&rows, width)
}

/// Smith normal form of a sparse matrix given by rows of length `width`.
///
/// Entries equal to `±1` are pivoted out first (each contributes an invariant
/// factor 1); what remains is diagonalized densely with pivots of minimal
/// absolute value, scanning rows then columns, so the result is deterministic.
pub fn smith_normal_form_sparse(rows: &[SparseVec], width: usize) -> Snf {
    let dense_big = |m: Vec<Vec<i64>>| -> Vec<BigInt> {
        let big = m
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        diagonalize::<BigInt>(big)
            .and_then(normalize)
            .expect("big integer arithmetic cannot overflow")
    };
    let factors = match eliminate_units(rows, width) {
        Some((units, rest)) => {
            let tail = match diagonalize::<i64>(rest.clone()).and_then(normalize) {
                Some(d) => d.into_iter().map(BigInt::from).collect(),
                None => dense_big(rest),
            };
            let mut f = vec![BigInt::one(); units];
            f.extend(tail);
            f
        }
        None => dense_big(to_dense(rows, width)),
    };
    Snf {
        rank: factors.len(),
        factors,
    }
}

fn to_dense(rows: &[SparseVec], width: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|row| {
            let mut d = vec![0; width];
            for &(j, v) in row {
                d[j as usize] = v;
            }
            d
        })
        .collect()
}

/// `a - q b` on sparse rows; `None` on overflow.
fn axpy(a: &SparseVec, q: i64, b: &SparseVec) -> Option<SparseVec> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else {
            let prod = q.checked_mul(b[j].1)?;
            let v = if ca == cb {
                i += 1;
                a[i - 1].1.checked_sub(prod)?
            } else {
                prod.checked_neg()?
            };
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        }
    }
    Some(out)
}

/// Pivots out unit entries. Returns how many were removed and the remaining
/// nonzero rows as a dense matrix over the surviving columns.
fn eliminate_units(rows: &[SparseVec], width: usize) -> Option<(usize, Vec<Vec<i64>>)> {
    let mut rows: Vec<SparseVec> = rows.to_vec();
    let mut alive = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); width];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            col_rows[j as usize].push(i as u32);
        }
    }
    let mut units = 0;
    loop {
        let mut progress = false;
        for i in 0..rows.len() {
            if !alive[i] {
                continue;
            }
            let Some(&(j, v)) = rows[i]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| (col_rows[e.0 as usize].len(), e.0))
            else {
                continue;
            };
            let others = std::mem::take(&mut col_rows[j as usize]);
            for r in others {
                let r = r as usize;
                if r == i || !alive[r] {
                    continue;
                }
                let Ok(pos) = rows[r].binary_search_by_key(&j, |e| e.0) else {
                    continue;
                };
                let q = rows[r][pos].1 * v;
                let updated = axpy(&rows[r], q, &rows[i])?;
                for &(c, _) in &updated {
                    if rows[r].binary_search_by_key(&c, |e| e.0).is_err() {
                        col_rows[c as usize].push(r as u32);
                    }
                }
                rows[r] = updated;
            }
            alive[i] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest: Vec<&SparseVec> = rows
        .iter()
        .zip(&alive)
        .filter(|(r, &a)| a && !r.is_empty())
        .map(|(r, _)| r)
        .collect();
    let mut cols: Vec<u32> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let dense = rest
        .iter()
        .map(|r| {
            let mut d = vec![0; cols.len()];
            for &(c, v) in r.iter() {
                d[cols.binary_search(&c).expect("collected above")] = v;
            }
            d
        })
        .collect();
    Some((units, dense))
}

/// Nonzero diagonal entries (absolute values) after diagonalizing; `None` on
/// overflow.
fn diagonalize<T: SnfInt>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].clone() / a[t][t].clone();
                if !q.is_zero() {
                    let (top, rest) = a.split_at_mut(i);
                    let pivot_row = &top[t];
                    let row = &mut rest[0];
                    for j in t..cols {
                        if !pivot_row[j].is_zero() {
                            row[j] = row[j].checked_sub(&q.checked_mul(&pivot_row[j])?)?;
                        }
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].clone() / a[t][t].clone();
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            row[j] = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                        }
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // a smaller remainder sits in row t or column t: make it the pivot
            let mut best: Option<(T, bool, usize)> = None;
            for i in t + 1..rows {
                let v = a[i][t].abs();
                if !v.is_zero() && best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, true, i));
                }
            }
            for j in t + 1..cols {
                let v = a[t][j].abs();
                if !v.is_zero() && best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, false, j));
                }
            }
            match best {
                Some((_, true, i)) => a.swap(t, i),
                Some((_, false, j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Some(diag)
}

fn min_entry<T: SnfInt>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let v = v.abs();
            if v.is_one() {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|b| v < b.0) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Replaces the diagonal by gcd/lcm pairs until each entry divides the next.
fn normalize<T: SnfInt>(mut d: Vec<T>) -> Option<Vec<T>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if (d[j].clone() % d[i].clone()).is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = (d[i].clone() / g.clone()).checked_mul(&d[j])?;
            d[i] = g;
            d[j] = l;
        }
    }
    Some(d)
}

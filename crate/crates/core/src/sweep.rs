//! Batch checks of the closed-form chromatic numbers over small families.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::coloring::{chromatic_number_exact, explicit_coloring, formula_lower_bound, Chromatic};
use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphSpec, Partition, SVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Partition family, `r ∈ {2,3}`, `k ∈ {1,2}`, `rk <= n <= rk+3`, all
    /// block shapes with parts at most `r`.
    Partition,
    /// `S ≡ 2`, `r = 3`, `k ∈ {1,2}`, `2n >= 3k`, `n <= 5`.
    Doubled,
    /// `kr - 1` ones followed by entries `r - 1`, `r ∈ {2,3}`, `k ∈ {1,2}`,
    /// `kr <= n <= kr + 2`.
    OnesThenTop,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Partition => "partition",
            Family::Doubled => "doubled",
            Family::OnesThenTop => "ones-then-top",
        })
    }
}

/// Integer partitions of `n` into parts at most `max`, parts non-increasing,
/// in reverse lexicographic order.
pub fn block_shapes(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

pub fn instances(family: Family) -> Result<Vec<HypergraphSpec>> {
    let mut out = Vec::new();
    match family {
        Family::Partition => {
            for r in 2..=3u32 {
                for k in 1..=2usize {
                    let rk = r as usize * k;
                    for n in rk..=rk + 3 {
                        for shape in block_shapes(n, r as usize) {
                            out.push(HypergraphSpec::partition(
                                Partition::from_shape(&shape)?,
                                k,
                                r,
                            )?);
                        }
                    }
                }
            }
        }
        Family::Doubled => {
            for k in 1..=2usize {
                for n in 1..=5usize {
                    if 2 * n >= 3 * k && k <= n {
                        out.push(HypergraphSpec::general_s(SVector::constant(n, 2, 3)?, k)?);
                    }
                }
            }
        }
        Family::OnesThenTop => {
            for r in 2..=3u32 {
                for k in 1..=2usize {
                    let kr = k * r as usize;
                    for n in kr..=kr + 2 {
                        let values = (0..n).map(|i| if i + 1 < kr { 1 } else { r - 1 }).collect();
                        out.push(HypergraphSpec::general_s(SVector::new(values, r)?, k)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The value the family's statement predicts, `None` when its hypotheses fail.
pub fn claimed(family: Family, spec: &HypergraphSpec) -> Option<usize> {
    match family {
        Family::Partition | Family::Doubled => formula_lower_bound(spec).ok(),
        Family::OnesThenTop => {
            let rk = spec.r() as usize * spec.k();
            (spec.n() + 2).checked_sub(rk)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub instance: String,
    pub lower: Option<usize>,
    pub exact: Chromatic,
    pub upper: Option<usize>,
    /// `None` when the hypotheses of the statement do not hold.
    pub theorem_ok: Option<bool>,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "instance,lower,exact,upper,theorem_ok";

    pub fn csv_line(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or(String::new(), T::to_string)
        }
        let exact = match self.exact {
            Chromatic::Finite(x) => x.to_string(),
            Chromatic::Infinite => "inf".into(),
        };
        format!(
            "{},{},{},{},{}",
            self.instance,
            opt(&self.lower),
            exact,
            opt(&self.upper),
            opt(&self.theorem_ok)
        )
    }

    /// Fails only when the statement applies and disagrees.
    pub fn ok(&self) -> bool {
        self.theorem_ok != Some(false)
    }
}

pub fn run_row(family: Family, spec: &HypergraphSpec, budget: &Budget) -> Result<SweepRow> {
    let exact = chromatic_number_exact(spec, budget)?.chi;
    let expected = claimed(family, spec);
    Ok(SweepRow {
        instance: spec.to_string(),
        lower: formula_lower_bound(spec).ok(),
        exact,
        upper: explicit_coloring(spec).map(|c| c.used()),
        theorem_ok: expected.map(|e| exact == Chromatic::Finite(e)),
    })
}

/// Runs every instance of `family` on a pool of `workers` threads; rows come
/// back in instance order.
pub fn run_sweep(family: Family, workers: usize, budget: &Budget) -> Result<Vec<SweepRow>> {
    let specs = instances(family)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Unsupported(format!("worker pool: {e}")))?;
    pool.install(|| {
        specs
            .par_iter()
            .map(|s| run_row(family, s, budget))
            .collect()
    })
}

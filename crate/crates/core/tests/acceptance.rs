//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use kneser_lab::coloring::{chromatic_number_exact, standard_kneser_coloring, Chromatic, Coloring};
use kneser_lab::homology::{
    afl_lower_bound, homological_connectivity, homologically_connected, reduced_homology,
    ChainComplexData, Connectivity,
};
use kneser_lab::hypergraph::{HypergraphSpec, Partition, SVector};
use kneser_lab::scomplex::nerve::nerve_iso_check;
use kneser_lab::scomplex::tuples::{build_box_complex, build_cs, build_ks, construct_cs_vertex};
use kneser_lab::scomplex::zp::{build_e, zp_vertex_action};
use kneser_lab::scomplex::SimplicialComplex;
use kneser_lab::sweep::{block_shapes, instances, run_sweep, Family};
use kneser_lab::tucker::{verify_tucker_conditions, TuckerParams};
use kneser_lab::{Budget, Error, KSubset};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn kneser_formula(n: usize, k: usize, r: usize) -> usize {
    ceil_div(n - r * (k - 1), r - 1)
}

/// Checks a coloring against every edge, listed directly from the definition:
/// `r`-multisets of vertices (distinct members for the partition family) whose
/// element multiplicities respect the caps.
fn brute_proper(spec: &HypergraphSpec, c: &Coloring) -> bool {
    let vs = spec.enumerate_vertices();
    let r = spec.r() as usize;
    let caps = spec.caps();
    let distinct = spec.partition_blocks().is_some();
    let is_edge = |members: &[&KSubset]| {
        let mut count = vec![0u32; spec.n()];
        for m in members {
            for e in m.elements() {
                count[e - 1] += 1;
            }
        }
        count.iter().zip(caps).all(|(c, cap)| c <= cap)
    };
    let monochromatic =
        |members: &[&KSubset]| members.iter().all(|m| c.color(m) == c.color(members[0]));
    if distinct {
        vs.iter()
            .combinations(r)
            .all(|e| !is_edge(&e) || !monochromatic(&e))
    } else {
        vs.iter()
            .combinations_with_replacement(r)
            .all(|e| !is_edge(&e) || !monochromatic(&e))
    }
}

fn exact_matches(spec: &HypergraphSpec, expected: usize, limit: Duration) -> Result<(), String> {
    let start = Instant::now();
    let res =
        chromatic_number_exact(spec, &Budget::default()).map_err(|e| format!("{spec}: {e}"))?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{spec}: {took:?} > {limit:?}"));
    }
    if res.chi != Chromatic::Finite(expected) {
        return Err(format!("{spec}: exact {} != {expected}", res.chi));
    }
    let c = res
        .coloring
        .ok_or_else(|| format!("{spec}: no witness coloring"))?;
    if c.used() != expected || !brute_proper(spec, &c) {
        return Err(format!(
            "{spec}: witness coloring is not a proper {expected}-coloring"
        ));
    }
    Ok(())
}

fn kneser_graphs() -> Outcome {
    for n in 4..=6 {
        let spec = HypergraphSpec::partition(Partition::singletons(n).unwrap(), 2, 2).unwrap();
        exact_matches(&spec, n - 2, Duration::from_secs(10))?;
    }
    Ok("chi(K(n,2)) = n-2 for n = 4,5,6".into())
}

fn erdos_hypergraphs() -> Outcome {
    for n in 6..=8 {
        let spec = HypergraphSpec::uniform_s(n, 2, 3, 2).unwrap();
        exact_matches(&spec, ceil_div(n - 3, 2), Duration::from_secs(60))?;
    }
    Ok("chi(KG^3_2(n,2)) = ceil((n-3)/2) for n = 6,7,8".into())
}

fn sweep_family(
    family: Family,
    expected: impl Fn(&HypergraphSpec) -> usize,
    limit: Duration,
) -> Outcome {
    let start = Instant::now();
    let rows = run_sweep(family, 1, &Budget::default()).map_err(|e| e.to_string())?;
    let specs = instances(family).unwrap();
    for (spec, row) in specs.iter().zip(&rows) {
        let want = expected(spec);
        if row.exact != Chromatic::Finite(want) || row.theorem_ok != Some(true) {
            return Err(format!("{}: exact {} != {want}", row.instance, row.exact));
        }
    }
    if start.elapsed() > limit {
        return Err(format!("sweep took {:?}", start.elapsed()));
    }
    Ok(format!(
        "{} instances, zero failures, {:?}",
        rows.len(),
        start.elapsed()
    ))
}

fn partition_sweep() -> Outcome {
    let mut count = 0;
    for r in 2..=3usize {
        for k in 1..=2 {
            for n in r * k..=r * k + 3 {
                count += block_shapes(n, r).len();
            }
        }
    }
    let listed = instances(Family::Partition).unwrap();
    if listed.len() != count {
        return Err(format!("{} instances listed, {count} shapes", listed.len()));
    }
    sweep_family(
        Family::Partition,
        |s| kneser_formula(s.n(), s.k(), s.r() as usize),
        Duration::from_secs(30 * 60),
    )
}

fn doubled_sweep() -> Outcome {
    sweep_family(
        Family::Doubled,
        |s| ceil_div(2 * s.n() - 3 * (s.k() - 1), 2),
        Duration::from_secs(600),
    )
}

fn ones_then_top_sweep() -> Outcome {
    sweep_family(
        Family::OnesThenTop,
        |s| s.n() + 2 - s.r() as usize * s.k(),
        Duration::from_secs(600),
    )
}

/// Every s-vector with `r <= 3`, `n <= 4` and entries in `0..=r`, with each `k`.
fn small_s_instances() -> Vec<(SVector, usize)> {
    let mut out = Vec::new();
    for r in 2..=3u32 {
        for n in 1..=4usize {
            for s in (0..n).map(|_| 0..=r).multi_cartesian_product() {
                let sv = SVector::new(s, r).unwrap();
                for k in 1..=n {
                    out.push((sv.clone(), k));
                }
            }
        }
    }
    out
}

fn emptiness() -> Outcome {
    let mut checked = 0;
    for (s, k) in small_s_instances() {
        let r = s.r() as usize;
        let sum: usize = s.values().iter().map(|&x| x as usize).sum();
        let oracle = sum >= r * k;
        let kvec = vec![k; r];
        let cs = build_cs(&kvec, &s, &Budget::default()).map_err(|e| e.to_string())?;
        let built = !cs.complex.is_empty();
        let constructed = construct_cs_vertex(&s, k).is_some();
        if built != oracle || constructed != oracle {
            return Err(format!(
                "s = {:?}, k = {k}: sum test {oracle}, C_s nonempty {built}, construction {constructed}",
                s.values()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, zero discrepancies"))
}

fn nerve_lemma() -> Outcome {
    let budget = Budget::default();
    let (mut checked, mut skipped) = (0, 0);
    for (s, k) in small_s_instances() {
        let kvec = vec![k; s.r() as usize];
        let iso = nerve_iso_check(&kvec, &s, &budget).map_err(|e| e.to_string())?;
        if !iso.pass {
            return Err(format!(
                "s = {:?}, k = {k}: {:?}",
                s.values(),
                iso.counterexample
            ));
        }
        let ks = build_ks(&kvec, &s, &budget).unwrap();
        let cs = build_cs(&kvec, &s, &budget).unwrap();
        match (
            reduced_homology(&ks.complex, &budget),
            reduced_homology(&cs.complex, &budget),
        ) {
            (Ok(a), Ok(b)) => {
                if !a.same_homology(&b) {
                    return Err(format!(
                        "s = {:?}, k = {k}: betti {:?} vs {:?}",
                        s.values(),
                        a.reduced_betti,
                        b.reduced_betti
                    ));
                }
                checked += 1;
            }
            (Err(Error::Budget { .. }), _) | (_, Err(Error::Budget { .. })) => skipped += 1,
            (Err(e), _) | (_, Err(e)) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "nerve isomorphism on all instances; Betti equal on {checked}, {skipped} out of the face budget"
    ))
}

fn connectivity() -> Outcome {
    let budget = Budget {
        max_faces: 8_000_000,
        ..Budget::default()
    };
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    for (s, k) in small_s_instances() {
        let r = s.r() as usize;
        let sum: usize = s.values().iter().map(|&x| x as usize).sum();
        let c = sum as i64 - (r * k) as i64 - 1;
        let start = Instant::now();
        let cs = build_cs(&vec![k; r], &s, &budget).map_err(|e| e.to_string())?;
        let ok = homologically_connected(&cs.complex, c, &budget)
            .map_err(|e| format!("s = {:?}: {e}", s.values()))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        if !ok {
            return Err(format!(
                "s = {:?}, k = {k}: homology below degree {c} is nonzero",
                s.values()
            ));
        }
        if took > Duration::from_secs(60) {
            return Err(format!("s = {:?}, k = {k}: {took:?}", s.values()));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, slowest {slowest:?}"))
}

fn tucker() -> Outcome {
    let mut cases = Vec::new();
    for n in 4..=6 {
        for shape in block_shapes(n, 2) {
            cases.push((2u32, shape, 2usize));
        }
    }
    for n in 4..=5 {
        for shape in block_shapes(n, 3) {
            cases.push((3, shape, 1));
        }
    }
    for (p, shape, k) in &cases {
        let partition = Partition::from_shape(shape).unwrap();
        let spec = HypergraphSpec::partition(partition.clone(), *k, *p).unwrap();
        let coloring = standard_kneser_coloring(&spec).unwrap();
        let t = coloring.t();
        let params = TuckerParams::new(*p, partition, *k, t).unwrap();
        let start = Instant::now();
        let report = verify_tucker_conditions(&params, &coloring, &Budget::default())
            .map_err(|e| e.to_string())?;
        let alpha = *p as usize * (k - 1);
        let lhs = alpha + t * (*p as usize - 1);
        let faces = (*p as usize + 1).pow(shape.iter().sum::<usize>() as u32) - 1;
        if !report.pass || report.faces != faces || report.inequality.lhs != lhs || lhs < spec.n() {
            return Err(format!("{spec}: certificate rejected"));
        }
        if start.elapsed() > Duration::from_secs(300) {
            return Err(format!("{spec}: {:?}", start.elapsed()));
        }
    }

    let partition = Partition::singletons(4).unwrap();
    let spec = HypergraphSpec::partition(partition.clone(), 2, 2).unwrap();
    let constant = Coloring::from_fn(&spec, 1, |_| 1).unwrap();
    let params = TuckerParams::new(2, partition, 2, 1).unwrap();
    let report = verify_tucker_conditions(&params, &constant, &Budget::default())
        .map_err(|e| e.to_string())?;
    let witness = report
        .cond2
        .violation()
        .ok_or("constant coloring passed condition 2")?;
    if report.pass || witness.faces.len() != 2 {
        return Err("negative control not rejected with a condition-2 pair".into());
    }
    Ok(format!(
        "{} certificates; constant coloring rejected by condition 2",
        cases.len()
    ))
}

fn afl_pipeline() -> Outcome {
    let spec = HypergraphSpec::general_s(SVector::constant(5, 1, 2).unwrap(), 2).unwrap();
    let budget = Budget::default();
    let boxc = build_box_complex(&spec, &budget).map_err(|e| e.to_string())?;
    let conn = homological_connectivity(&boxc.complex, &budget).map_err(|e| e.to_string())?;
    let bound = afl_lower_bound(0, 2).unwrap().value;
    let chi = chromatic_number_exact(&spec, &budget).unwrap().chi;
    if conn != Connectivity::Finite(0) || bound != 3 || chi != Chromatic::Finite(3) {
        return Err(format!("hconn {conn}, bound {bound}, chi {chi}"));
    }
    Ok("box complex of the Petersen graph is 0-connected, not 1; bound 3 = chi".into())
}

fn structure_ok(
    name: &str,
    c: &SimplicialComplex,
    perm: Option<Vec<u32>>,
    free: bool,
) -> Result<(), String> {
    let budget = Budget::default();
    let chain = ChainComplexData::new(c, &budget).map_err(|e| e.to_string())?;
    if !chain.boundary_squared_vanishes() {
        return Err(format!("{name}: boundary of boundary is nonzero"));
    }
    let h = reduced_homology(c, &budget).map_err(|e| e.to_string())?;
    if !c.is_empty() && (h.euler != chain.euler() || h.euler_from_betti() != h.euler) {
        return Err(format!("{name}: Euler characteristic mismatch"));
    }
    if let Some(perm) = perm {
        if !c.is_automorphism(&perm) {
            return Err(format!("{name}: action is not simplicial"));
        }
        if free
            && c.fixed_face(&perm, &budget)
                .map_err(|e| e.to_string())?
                .is_some()
        {
            return Err(format!("{name}: action fixes a face"));
        }
    }
    Ok(())
}

fn structure() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        for n in 1..=6usize {
            let e = build_e(n, p).unwrap();
            let faces: usize = e.f_vector(&Budget::default()).unwrap().iter().sum();
            if faces != (p as usize + 1).pow(n as u32) - 1 {
                return Err(format!("E_{}(Z_{p}) has {faces} faces", n - 1));
            }
            for omega in 1..p {
                structure_ok(
                    &format!("E_{}(Z_{p})", n - 1),
                    &e,
                    Some(zp_vertex_action(n, p, omega)),
                    true,
                )?;
            }
            checked += 1;
        }
    }
    let specs = [
        HypergraphSpec::partition(Partition::singletons(5).unwrap(), 2, 2).unwrap(),
        HypergraphSpec::partition(Partition::from_shape(&[2, 1, 1, 1]).unwrap(), 1, 2).unwrap(),
        HypergraphSpec::partition(Partition::singletons(3).unwrap(), 1, 3).unwrap(),
        HypergraphSpec::uniform_s(3, 1, 3, 2).unwrap(),
        HypergraphSpec::general_s(SVector::new(vec![1, 2, 1], 3).unwrap(), 1).unwrap(),
    ];
    for spec in &specs {
        let b = build_box_complex(spec, &Budget::default()).unwrap();
        let free = !spec.has_loop_edge();
        structure_ok(
            &format!("box {spec}"),
            &b.complex,
            b.shift_permutation(),
            free,
        )?;
        checked += 1;
    }
    for (s, k) in small_s_instances()
        .into_iter()
        .filter(|(s, _)| s.n() <= 2 || (s.n() == 3 && s.r() == 2))
    {
        let kvec = vec![k; s.r() as usize];
        for tc in [
            build_ks(&kvec, &s, &Budget::default()).unwrap(),
            build_cs(&kvec, &s, &Budget::default()).unwrap(),
        ] {
            structure_ok(
                &format!("s = {:?}, k = {k}", s.values()),
                &tc.complex,
                tc.shift_permutation(),
                false,
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("kneser graphs", kneser_graphs),
        ("erdos hypergraphs", erdos_hypergraphs),
        ("partition sweep", partition_sweep),
        ("s = 2 divides r - 1", doubled_sweep),
        ("ones then r - 1", ones_then_top_sweep),
        ("empty complexes", emptiness),
        ("nerve isomorphism", nerve_lemma),
        ("connectivity of C_s", connectivity),
        ("tucker certificates", tucker),
        ("afl pipeline", afl_pipeline),
        ("structural invariants", structure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS {:>2} {name}: {detail} [{:.1?}]",
                i + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name}: {detail} [{:.1?}]",
                    i + 1,
                    start.elapsed()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use wittcalc::conjecture::{
    check_instance, equivalence_scan, range_top, ConjectureInstance, Verdict,
};
use wittcalc::dyadic::{alt_decompose, alt_recompose, binom_parity, d_positions, Parity};
use wittcalc::kernel::{
    check_kernel_pattern, corollary_3_6_bound, fitzgerald_check, kernel_dim_classifier,
    lemma_5_5_scan, optimality_witness, FitzgeraldRegime, FitzgeraldRequirement, KernelScenario,
};
use wittcalc::steenrod::theorem_4_8_rederive;
use wittcalc::tower::{
    karpenko_admissible_i1, s_of_dim, vishik_height_bound_filter, visit_patterns, PatternFilters,
    SplittingPattern,
};

use common::{golden_path, run_json, GOLDEN_CASES};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })?;
    Ok(elapsed)
}

fn lucas_oracle() -> Outcome {
    const X_MAX: u64 = 2000;
    let start = Instant::now();
    let mismatches: Vec<(u64, u64)> = (0..=X_MAX)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut c = BigUint::from(1u32);
            let mut bad = Vec::new();
            for y in 0..=x {
                let exact = Parity::from(c.bit(0));
                if binom_parity(x, y) != exact {
                    bad.push((x, y));
                }
                c = c * BigUint::from(x - y) / BigUint::from(y + 1);
            }
            bad.into_iter()
        })
        .collect();
    let pairs = (X_MAX + 1) * (X_MAX + 2) / 2;
    ensure(mismatches.is_empty(), || {
        format!("{} mismatches, first {:?}", mismatches.len(), mismatches[0])
    })?;
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{pairs} pairs, 0 mismatches in {t:.2?}"))
}

fn scan_equivalence_1_2() -> Outcome {
    let start = Instant::now();
    let rep = equivalence_scan(4096, 8);
    let t = within(start, Duration::from_secs(30))?;
    let bad: Vec<_> = rep
        .mismatches
        .iter()
        .filter(|m| m.cond1 != m.cond2)
        .collect();
    ensure(bad.is_empty() && rep.count_1_2() == 0, || {
        format!("{} (1)/(2) mismatches", bad.len())
    })?;
    let vacuous_off = rep
        .vacuity
        .iter()
        .filter(|c| c.always_true != (c.k + 1 >= 1u64 << c.s))
        .count();
    ensure(vacuous_off == 0, || {
        format!("{vacuous_off} cells disagree with the vacuity threshold")
    })?;
    Ok(format!(
        "{} triples, 0 (1)/(2) mismatches, vacuity exactly k >= 2^s - 1; {t:.2?}",
        rep.triples
    ))
}

fn scan_boundary_audit() -> Outcome {
    let rep = equivalence_scan(4096, 8);
    let mut count = 0usize;
    for m in &rep.mismatches {
        if m.cond1 == m.cond3 {
            continue;
        }
        count += 1;
        let (d, k, s) = (m.d, m.k, m.s);
        ensure(s >= 1 && 2 * k >= 1u64 << s, || {
            format!("mismatch below half at {:?}", (d, k, s))
        })?;
        let modulus = 1u64 << s;
        ensure(((d + k) / 2) % modulus == modulus - 1, || {
            format!("wrong residue at {:?}", (d, k, s))
        })?;
        ensure(k as i64 >= range_top(k, s), || {
            format!("k < m at {:?}", (d, k, s))
        })?;
        ensure(m.boundary_shape, || {
            format!("scan did not flag shape at {:?}", (d, k, s))
        })?;
    }
    ensure(
        rep.mismatches.iter().any(|m| (m.d, m.k, m.s) == (12, 2, 2)),
        || "(12, 2, 2) missing".into(),
    )?;
    ensure(count == rep.count_1_3(), || "count disagreement".into())?;
    let below_half = rep
        .mismatches
        .iter()
        .filter(|m| 2 * m.k < 1u64 << m.s)
        .count();
    ensure(below_half == 0, || {
        format!("{below_half} mismatches with k < 2^(s-1)")
    })?;
    Ok(format!("{count} (1)/(3) mismatches, all boundary-shaped; (12, 2, 2) present; none with k < 2^(s-1)"))
}

fn alt_decomposition() -> Outcome {
    const N_MAX: u64 = 65536;
    const MAX_EXP: u32 = 17;
    let start = Instant::now();
    let mut found: Vec<Vec<Vec<u32>>> = vec![Vec::new(); N_MAX as usize + 1];
    for mask in 1u32..(1 << (MAX_EXP + 1)) {
        let exps: Vec<u32> = (0..=MAX_EXP).rev().filter(|e| mask >> e & 1 == 1).collect();
        let t = exps.len();
        if t >= 2 && exps[t - 2] - exps[t - 1] < 2 {
            continue;
        }
        let value: i64 = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| if i % 2 == 0 { 1i64 << e } else { -(1i64 << e) })
            .sum();
        if (1..=N_MAX as i64).contains(&value) {
            found[value as usize].push(exps);
        }
    }
    for n in 1..=N_MAX {
        let decomp = alt_decompose(n);
        let hits = &found[n as usize];
        ensure(hits.len() == 1, || {
            format!("n = {n} has {} decompositions", hits.len())
        })?;
        ensure(hits[0] == decomp.exponents(), || {
            format!("n = {n}: {:?} vs {:?}", hits[0], decomp.exponents())
        })?;
        ensure(alt_recompose(decomp.exponents()) == Ok(n), || {
            format!("round trip fails at {n}")
        })?;
        let pos = d_positions(&decomp).positions;
        ensure(pos[0] == 0, || format!("D_1 = {} at n = {n}", pos[0]))?;
        ensure(pos.iter().all(|&p| p < n), || {
            format!("D_c out of range at n = {n}")
        })?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!(
        "n <= {N_MAX}: unique, round-trips, D_1 = 0, D_c >= 0; {t:.2?}"
    ))
}

fn karpenko_sets() -> Outcome {
    for d in 0..=512u64 {
        let oracle: Vec<u64> = (1..=d / 2)
            .filter(|&v| {
                let mut p = 1u64;
                while p < v {
                    p *= 2;
                }
                (d - v) % p == 0
            })
            .collect();
        ensure(karpenko_admissible_i1(d) == oracle, || {
            format!("d = {d} differs")
        })?;
    }
    let spots: [(u64, &[u64]); 4] = [(2, &[1]), (5, &[1]), (7, &[1, 3]), (8, &[1, 2, 4])];
    for (d, want) in spots {
        ensure(karpenko_admissible_i1(d) == want, || {
            format!("spot value d = {d}")
        })?;
    }
    Ok("d <= 512 match the definition; spot values 2, 5, 7, 8 match".into())
}

#[derive(Default)]
struct KernelTally {
    patterns: AtomicU64,
    border: AtomicU64,
    strict: AtomicU64,
    window_only_unfiltered: AtomicU64,
}

fn kernel_pattern_checks(s: u32, dims: &[u64], tally: &KernelTally) -> Result<(), String> {
    let pat = SplittingPattern::new(dims.to_vec()).map_err(|e| e.to_string())?;
    if !check_kernel_pattern(s, &pat)
        .map_err(|e| e.to_string())?
        .passes
    {
        return Ok(());
    }
    tally.patterns.fetch_add(1, Ordering::Relaxed);
    let sc = KernelScenario::new(s, pat.clone()).map_err(|e| e.to_string())?;
    kernel_dim_classifier(&sc).map_err(|e| format!("dichotomy: {e}"))?;

    let hb = corollary_3_6_bound(&sc);
    let minimal = (1..pat.height()).all(|r| pat.witt_index(r) == 1u64 << (s + 1));
    ensure(
        hb.attained == minimal && hb.indices_minimal == minimal,
        || format!("bound equality fails for s = {s}, {pat}"),
    )?;

    let vishik = vishik_height_bound_filter(&pat).map_err(|e| e.to_string())?;
    let n = pat.degree();
    let dim_p_hi = (1u64 << (s + 1)).min(pat.d0());
    for dim_p in ((1u64 << s) + 1).max(2)..=dim_p_hi {
        debug_assert_eq!(s_of_dim(dim_p), Ok(s));
        let rep = fitzgerald_check(dim_p, &pat).map_err(|e| e.to_string())?;
        let case = || format!("dim p = {dim_p}, s = {s}, {pat}");
        match rep.regime {
            FitzgeraldRegime::Strict => {
                tally.strict.fetch_add(1, Ordering::Relaxed);
                ensure(pat.height() == 1 && rep.holds, || {
                    format!("strict regime with h >= 2: {}", case())
                })?;
            }
            FitzgeraldRegime::Border => {
                tally.border.fetch_add(1, Ordering::Relaxed);
                let forced = pat.height() == 2
                    && pat.d0() == (1u64 << n) + (1u64 << (s + 2))
                    && dim_p == 1u64 << (s + 1);
                ensure(forced, || format!("border shape fails: {}", case()))?;
                ensure(
                    rep.failed
                        .iter()
                        .all(|f| *f == FitzgeraldRequirement::DegreeWindow),
                    || format!("border requirement fails: {}", case()),
                )?;
                if !rep.failed.is_empty() {
                    ensure(!vishik, || {
                        format!("degree window fails under the height bound: {}", case())
                    })?;
                    tally.window_only_unfiltered.fetch_add(1, Ordering::Relaxed);
                }
            }
            FitzgeraldRegime::Below => {}
        }
    }
    Ok(())
}

fn kernel_arithmetic() -> Outcome {
    let start = Instant::now();
    let tally = KernelTally::default();
    let work: Vec<(u32, u64)> = (0..=3u32)
        .flat_map(|s| (2..=128u64).step_by(2).map(move |d0| (s, d0)))
        .collect();
    let errors: Vec<String> = work
        .par_iter()
        .filter_map(|&(s, d0)| {
            let filters = PatternFilters {
                pfister_divisibility: Some(s + 1),
                ..PatternFilters::default()
            };
            let mut first_error = None;
            visit_patterns(d0, &filters, |dims| {
                if first_error.is_none() {
                    if let Err(e) = kernel_pattern_checks(s, dims, &tally) {
                        first_error = Some(e);
                    }
                }
            });
            first_error
        })
        .collect();
    ensure(errors.is_empty(), || {
        format!("{} counterexamples, first: {}", errors.len(), errors[0])
    })?;
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} kernel patterns, {} strict and {} border cases, 0 counterexamples ({} border cases outside the degree window are excluded by the height bound); {t:.2?}",
        tally.patterns.load(Ordering::Relaxed),
        tally.strict.load(Ordering::Relaxed),
        tally.border.load(Ordering::Relaxed),
        tally.window_only_unfiltered.load(Ordering::Relaxed),
    ))
}

fn kernel_pruning_is_exact() -> Result<(), String> {
    for s in 0..=3u32 {
        for d0 in (2..=36u64).step_by(2) {
            let mut all = BTreeSet::new();
            visit_patterns(d0, &PatternFilters::default(), |dims| {
                let pat = SplittingPattern::new(dims.to_vec()).unwrap();
                if check_kernel_pattern(s, &pat).unwrap().passes {
                    all.insert(dims.to_vec());
                }
            });
            let filters = PatternFilters {
                pfister_divisibility: Some(s + 1),
                ..PatternFilters::default()
            };
            let mut pruned = BTreeSet::new();
            visit_patterns(d0, &filters, |dims| {
                let pat = SplittingPattern::new(dims.to_vec()).unwrap();
                if check_kernel_pattern(s, &pat).unwrap().passes {
                    pruned.insert(dims.to_vec());
                }
            });
            ensure(all == pruned, || {
                format!("pruned enumeration loses patterns at s = {s}, d0 = {d0}")
            })?;
        }
    }
    Ok(())
}

fn forced_dimension_ladder() -> Outcome {
    let mut cells = 0;
    for s in 0..=5u32 {
        for k in 0..1u64 << s {
            let rep = lemma_5_5_scan(s, k, 4096).map_err(|e| e.to_string())?;
            let ladder: Vec<u64> = (s + 1..=13)
                .map(|n| (1u64 << n) - k)
                .filter(|&d| d > 1u64 << s && d <= 4096)
                .collect();
            ensure(rep.dims == ladder, || {
                format!("s = {s}, k = {k}: {:?} vs {:?}", rep.dims, ladder)
            })?;
            ensure(rep.matches, || {
                format!("s = {s}, k = {k}: scan reports a deviation")
            })?;
            cells += 1;
        }
    }
    Ok(format!(
        "{cells} (s, k) cells equal the 2^N - k ladder up to 4096"
    ))
}

fn steenrod_range_replay() -> Outcome {
    let rep = theorem_4_8_rederive(8);
    ensure(rep.failures.is_empty(), || {
        format!(
            "{} coverage failures: {:?}",
            rep.failures.len(),
            rep.failures[0]
        )
    })?;
    let (mut case1, mut case2) = (0u64, 0u64);
    for s in 0..=8u32 {
        let dims = (1u64 << s) + 1..=1u64 << (s + 1);
        let ks = 1u64 << s;
        case1 += dims.clone().count() as u64 * (0..ks).filter(|k| 2 * k < ks).count() as u64;
        case2 += dims.filter(|&p| p + 2 >= 1u64 << (s + 1)).count() as u64 * ks;
    }
    ensure(rep.checked_case1 == case1, || {
        format!("case 1 checked {} of {case1}", rep.checked_case1)
    })?;
    ensure(rep.checked_case2 == case2, || {
        format!("case 2 checked {} of {case2}", rep.checked_case2)
    })?;
    ensure(
        rep.boundary_needed
            .iter()
            .all(|&(s, p, _)| p + 2 == 1u64 << (s + 1)),
        || "not-split boundary used away from 2^(s+1) - 2".into(),
    )?;
    Ok(format!(
        "case 1: {case1} cells, case 2: {case2} cells, 0 failures; boundary needed in {} cells",
        rep.boundary_needed.len()
    ))
}

fn optimality_witnesses() -> Outcome {
    let mut count = 0;
    for s in 0..=5u32 {
        for a in 1..=4u64 {
            for k in 0..1u64 << s {
                for l_sub in 0..=k / 2 {
                    let w = optimality_witness(s, a, k, l_sub).map_err(|e| e.to_string())?;
                    let inst = ConjectureInstance::new(w.dim_p, w.dim_q, w.witt_index)
                        .map_err(|e| e.to_string())?;
                    let verdict = check_instance(&inst).map_err(|e| e.to_string())?.verdict;
                    let case = || format!("(s, a, k, l) = ({s}, {a}, {k}, {l_sub})");
                    ensure(
                        verdict == Verdict::Conforms && w.verdict == Verdict::Conforms,
                        || format!("{} violates", case()),
                    )?;
                    ensure((k as i64 - w.eps) % 2 == 0, || {
                        format!("{} has k and eps of different parity", case())
                    })?;
                    ensure(inst.k() == k, || {
                        format!("{} has the wrong anisotropic part", case())
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} witnesses conform with k = eps (mod 2)"))
}

fn cli_determinism() -> Outcome {
    let mut compared = 0;
    for (stem, args) in GOLDEN_CASES {
        let golden = std::fs::read(golden_path(stem)).map_err(|e| format!("{stem}: {e}"))?;
        for jobs in [None, Some(1), Some(2), Some(8)] {
            for _ in 0..2 {
                let (bytes, _) = run_json(args, jobs);
                ensure(bytes == golden, || {
                    format!("{stem} differs with --jobs {jobs:?}")
                })?;
                compared += 1;
            }
        }
        let out = Command::new(env!("CARGO_BIN_EXE_wittcalc"))
            .args(*args)
            .args(["--format", "json", "--jobs", "3"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.stdout == golden, || {
            format!("{stem}: binary output differs")
        })?;
        compared += 1;
    }
    let full = ["scan-equivalence", "--d-max", "4096", "--s-max", "8"];
    let (one, code) = run_json(&full, Some(1));
    let (many, _) = run_json(&full, Some(8));
    ensure(code == 0, || format!("full scan exited {code}"))?;
    ensure(one == many, || {
        "full scan differs between --jobs 1 and --jobs 8".into()
    })?;
    Ok(format!(
        "{} golden files, {compared} byte-identical runs; full scan identical across --jobs",
        GOLDEN_CASES.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("lucas oracle", lucas_oracle),
        ("conditions (1) and (2) agree", scan_equivalence_1_2),
        ("condition (3) boundary audit", scan_boundary_audit),
        ("alternating decomposition", alt_decomposition),
        ("karpenko sets", karpenko_sets),
        ("kernel arithmetic", || {
            kernel_pruning_is_exact().and_then(|()| kernel_arithmetic())
        }),
        ("forced-dimension ladder", forced_dimension_ladder),
        ("steenrod range replay", steenrod_range_replay),
        ("optimality witnesses", optimality_witnesses),
        ("cli determinism", cli_determinism),
    ];
    let mut failures = BTreeMap::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                println!("[FAIL] {:>2} {name}: {detail}", i + 1);
                failures.insert(i + 1, detail);
            }
        }
    }
    if !failures.is_empty() {
        println!("{} of {} criteria failed", failures.len(), criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

use serde_json::json;
use wittcalc::conjecture::{
    check_instance, condition1, condition2, condition3, coverage_classifier, equivalence_scan,
    range_top, ConjectureInstance, Verdict,
};
use wittcalc::dyadic::{
    alt_decompose, alt_recompose, binom_parity, d_positions, lambda_set, support, AltDecomp,
};
use wittcalc::kernel::{
    check_kernel_pattern, corollary_3_6_bound, fitzgerald_check, kernel_dim_classifier,
    lemma_5_5_scan, optimality_witness, refined_conjecture_check, IndexRoute, KernelClass,
    KernelScenario, RefinedCheck,
};
use wittcalc::steenrod::{
    corollary_4_7_evenness, rational_j_range, steenrod_coeff_parity, theorem_4_8_rederive,
    SteenrodQuery,
};
use wittcalc::tower::{
    enumerate_patterns, hoffmann_anisotropy_forced, karpenko_admissible_i1, s_of_dim,
    PatternFilters, SplittingPattern,
};

use crate::args::*;
use crate::error::CliError;
use crate::report::Report;

type Outcome = Result<Report, CliError>;

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Check(a) => check(a),
        Command::Conditions(a) => conditions(a),
        Command::ScanEquivalence(a) => scan_equivalence(a),
        Command::Karpenko(a) => karpenko(a),
        Command::Enumerate(a) => enumerate(a),
        Command::KernelCheck(a) => kernel_check(a),
        Command::KernelClassify(a) => kernel_classify(a),
        Command::Bound36(a) => bound_3_6(a),
        Command::Fitzgerald(a) => fitzgerald(a),
        Command::RefinedCheck(a) => refined_check(a),
        Command::Ladder(a) => ladder(a),
        Command::Witness(a) => witness(a),
        Command::AltDecomp(a) => alt_decomp(a),
        Command::DPositions(a) => positions(a),
        Command::Lambda(a) => lambda(a),
        Command::BinomParity(a) => binom(a),
        Command::Steenrod(a) => steenrod(a),
        Command::JRange(a) => j_range(a),
        Command::Rederive48(a) => rederive(a),
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Conforms => "conforms",
        Verdict::Violates => "violates",
    }
}

fn pass_str(passes: bool) -> &'static str {
    if passes {
        "pass"
    } else {
        "fail"
    }
}

fn pattern_str(pat: &SplittingPattern) -> String {
    pat.to_string()
}

fn condition_rows(d: u64, k: u64, s: u32) -> Result<Vec<serde_json::Value>, CliError> {
    let c1 = condition1(d, k, s)?;
    let c2 = condition2(d, k, s)?;
    let c3 = condition3(d, k, s)?;
    let w1 = c1
        .witness
        .map(|w| format!("d = {} * {} + ({})", w.a, 1u64 << (s + 1), w.eps))
        .unwrap_or_default();
    let w2 = c2
        .witness
        .map(|w| format!("(d+k)/2 = {} * {} + {}", w.a, 1u64 << s, w.mu))
        .unwrap_or_default();
    let w3 = if c3.failing.is_empty() {
        format!("every C((d+k)/2, l) even for k < l <= {}", c3.m)
    } else {
        format!("odd at l = {}", join(&c3.failing))
    };
    Ok(vec![
        json!({"condition": 1, "holds": c1.holds, "detail": w1}),
        json!({"condition": 2, "holds": c2.holds, "detail": w2}),
        json!({"condition": 3, "holds": c3.holds, "detail": w3}),
    ])
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn check(a: &CheckArgs) -> Outcome {
    let inst = ConjectureInstance::new(a.dim_p, a.dim_q, a.witt)?;
    let res = check_instance(&inst)?;
    let coverage = coverage_classifier(&inst, a.pfister_neighbour);
    let hoffmann = hoffmann_anisotropy_forced(a.dim_p, a.dim_q)?;
    let mut report = Report::new("check", verdict_str(res.verdict))
        .input("dim_p", a.dim_p)
        .input("dim_q", a.dim_q)
        .input("witt_index", a.witt)
        .input("pfister_neighbour", a.pfister_neighbour)
        .witness("s", inst.s())
        .witness("k", inst.k())
        .witness("m", res.report.m())
        .witness("a", res.report.cond1.witness.map(|w| w.a))
        .witness("eps", res.report.cond1.witness.map(|w| w.eps))
        .witness("coverage", coverage.tag())
        .witness("anisotropy_forced", hoffmann)
        .items(condition_rows(a.dim_q, inst.k(), inst.s())?)
        .fail_if(res.verdict == Verdict::Violates);
    if res.verdict == Verdict::Violates {
        report = report.violation(format!(
            "dim q = {} is not within k = {} of a multiple of {}",
            a.dim_q,
            inst.k(),
            1u64 << (inst.s() + 1)
        ));
    }
    Ok(report)
}

fn conditions(a: &ConditionArgs) -> Outcome {
    let rows = condition_rows(a.d, a.k, a.s)?;
    let holds: Vec<bool> = rows
        .iter()
        .map(|r| r["holds"].as_bool().unwrap_or(false))
        .collect();
    let agree = holds.iter().all(|&h| h == holds[0]);
    Ok(
        Report::new("conditions", if agree { "agree" } else { "disagree" })
            .input("d", a.d)
            .input("k", a.k)
            .input("s", a.s)
            .witness("m", range_top(a.k, a.s))
            .witness("cond1", holds[0])
            .witness("cond2", holds[1])
            .witness("cond3", holds[2])
            .items(rows),
    )
}

fn scan_equivalence(a: &ScanArgs) -> Outcome {
    let rep = equivalence_scan(a.d_max, a.s_max);
    let always: Vec<_> = rep.always_true_cells().map(|c| json!([c.s, c.k])).collect();
    let mut report = Report::new("scan-equivalence", "ok")
        .input("d_max", a.d_max)
        .input("s_max", a.s_max)
        .witness("triples", rep.triples)
        .witness("mismatches_1_2", rep.count_1_2())
        .witness("mismatches_1_3", rep.count_1_3())
        .witness("all_boundary_shaped", rep.all_boundary_shaped())
        .witness("always_true_cells", always)
        .items(rep.mismatches.iter());
    for m in rep.mismatches.iter().filter(|m| !m.boundary_shape) {
        report = report.violation(format!(
            "unexpected mismatch at (d, k, s) = ({}, {}, {})",
            m.d, m.k, m.s
        ));
    }
    Ok(report)
}

fn karpenko(a: &DimArgs) -> Outcome {
    let values = karpenko_admissible_i1(a.d);
    let rows: Vec<_> = values
        .iter()
        .map(|&v| json!({"i1": v, "dim_after": a.d - 2 * v}))
        .collect();
    Ok(Report::new("karpenko", "ok")
        .input("d", a.d)
        .witness("count", values.len())
        .items(rows))
}

fn enumerate(a: &EnumerateArgs) -> Outcome {
    if a.d < 2 {
        return Err(wittcalc::Error::TooSmall {
            what: "starting dimension",
            value: a.d,
            min: 2,
        }
        .into());
    }
    let filters = PatternFilters {
        vishik_height_bound: a.vishik,
        pfister_divisibility: a.pfister_divisibility,
    };
    let patterns = enumerate_patterns(a.d, &filters);
    let rows: Vec<_> = patterns
        .iter()
        .map(|p| {
            json!({
                "pattern": pattern_str(p),
                "height": p.height(),
                "degree": p.degree(),
                "higher_witt": p.higher_witt(),
            })
        })
        .collect();
    Ok(Report::new("enumerate", "ok")
        .input("d", a.d)
        .input("vishik", a.vishik)
        .input("pfister_divisibility", a.pfister_divisibility)
        .witness("count", patterns.len())
        .items(rows))
}

fn kernel_check(a: &KernelArgs) -> Outcome {
    let v = check_kernel_pattern(a.s, &a.pattern)?;
    let mut report = Report::new("kernel-check", pass_str(v.passes))
        .input("s", a.s)
        .input("pattern", pattern_str(&a.pattern))
        .witness("degree", a.pattern.degree())
        .witness("higher_witt", a.pattern.higher_witt())
        .witness("modulus", 1u64 << a.s)
        .fail_if(!v.passes);
    for violation in &v.violations {
        report = report.violation(violation.to_string());
    }
    Ok(report.items(v.violations.iter()))
}

fn scenario(a: &KernelArgs) -> Result<KernelScenario, CliError> {
    Ok(KernelScenario::new(a.s, a.pattern.clone())?)
}

fn kernel_classify(a: &KernelArgs) -> Outcome {
    let sc = scenario(a)?;
    let class = kernel_dim_classifier(&sc)?;
    let report = Report::new("kernel-classify", "ok")
        .input("s", a.s)
        .input("pattern", pattern_str(&a.pattern))
        .witness("degree", sc.degree());
    Ok(match class {
        KernelClass::MinimalDegree { m } => {
            report.witness("branch", "minimal_degree").witness("m", m)
        }
        KernelClass::HighDegree { quotient } => report
            .witness("branch", "high_degree")
            .witness("quotient", quotient),
    })
}

fn bound_3_6(a: &KernelArgs) -> Outcome {
    let sc = scenario(a)?;
    let hb = corollary_3_6_bound(&sc);
    let consistent = hb.attained == hb.indices_minimal;
    let mut report = Report::new("bound-3-6", pass_str(consistent))
        .input("s", a.s)
        .input("pattern", pattern_str(&a.pattern))
        .witness("height", a.pattern.height())
        .witness("bound", hb.bound)
        .witness("attained", hb.attained)
        .witness("indices_minimal", hb.indices_minimal)
        .fail_if(!consistent);
    if !consistent {
        report = report.violation("bound attainment and minimal indices disagree");
    }
    Ok(report)
}

fn fitzgerald(a: &FitzgeraldArgs) -> Outcome {
    let rep = fitzgerald_check(a.dim_p, &a.pattern)?;
    let mut report = Report::new("fitzgerald", pass_str(rep.holds))
        .input("dim_p", a.dim_p)
        .input("pattern", pattern_str(&a.pattern))
        .witness("s", rep.s)
        .witness("degree", rep.degree)
        .witness("threshold", rep.threshold)
        .witness("regime", rep.regime)
        .fail_if(!rep.holds);
    for req in &rep.failed {
        report = report.violation(
            serde_json::to_value(req)?
                .as_str()
                .unwrap_or_default()
                .to_string(),
        );
    }
    Ok(report)
}

fn refined_check(a: &RefinedArgs) -> Outcome {
    let rc = RefinedCheck::new(a.s, a.k, a.pattern.clone())?;
    let rep = refined_conjecture_check(&rc);
    let mut report = Report::new("refined-check", pass_str(rep.passes))
        .input("s", a.s)
        .input("k", a.k)
        .input("pattern", pattern_str(&a.pattern))
        .witness("l", rep.l)
        .fail_if(!rep.passes);
    for step in rep.steps.iter().filter(|st| !st.passes) {
        report = report.violation(format!(
            "step r = {}: i_{} = {} has no admissible route",
            step.r,
            step.r + 1,
            step.next_index
        ));
    }
    let rows: Vec<_> = rep
        .steps
        .iter()
        .map(|st| {
            let (route, b) = match st.route {
                Some(IndexRoute::Small) => ("small", None),
                Some(IndexRoute::Multiple { b }) => ("multiple", Some(b)),
                Some(IndexRoute::Exceptional) => ("exceptional", None),
                None => ("none", None),
            };
            json!({
                "r": st.r,
                "dim": st.dim,
                "a": st.a,
                "eps": st.eps,
                "next_index": st.next_index,
                "route": route,
                "b": b,
                "passes": st.passes,
            })
        })
        .collect();
    Ok(report.items(rows))
}

fn ladder(a: &LadderArgs) -> Outcome {
    let rep = lemma_5_5_scan(a.s, a.k, a.d_max)?;
    let mut report = Report::new("lemma-5-5", pass_str(rep.matches))
        .input("s", a.s)
        .input("k", a.k)
        .input("d_max", a.d_max)
        .witness("dims", &rep.dims)
        .witness("ladder", &rep.ladder)
        .fail_if(!rep.matches);
    if !rep.matches {
        report = report.violation("attainable dimensions differ from the ladder");
    }
    Ok(report)
}

fn witness(a: &WitnessArgs) -> Outcome {
    let w = optimality_witness(a.s, a.a, a.k, a.l_sub)?;
    let inst = ConjectureInstance::new(w.dim_p, w.dim_q, w.witt_index)?;
    let mut report = Report::new("witness", verdict_str(w.verdict))
        .input("s", a.s)
        .input("a", a.a)
        .input("k", a.k)
        .input("l_sub", a.l_sub)
        .witness("eps", w.eps)
        .witness("dim_q", w.dim_q)
        .witness("dim_p", w.dim_p)
        .witness("witt_index", w.witt_index)
        .witness("pfister_dim", w.pfister_dim)
        .witness("sigma_dim", w.sigma_dim)
        .witness("tau_dim", w.tau_dim)
        .witness("variables", w.variables)
        .witness("anisotropic_dim", w.anisotropic_dim)
        .witness("coverage", coverage_classifier(&inst, false).tag())
        .fail_if(w.verdict == Verdict::Violates);
    if w.verdict == Verdict::Violates {
        report = report.violation("witness invariants violate the conjecture");
    }
    Ok(report)
}

fn decomp_from(a: &AltArgs) -> Result<AltDecomp, CliError> {
    match (&a.n, &a.exponents) {
        (Some(n), _) => Ok(alt_decompose(*n)),
        (None, Some(exps)) => Ok(AltDecomp::new(exps.0.clone())?),
        (None, None) => Err(CliError::Usage(
            "one of --n or --exponents is required".into(),
        )),
    }
}

fn alt_decomp(a: &AltArgs) -> Outcome {
    let decomp = decomp_from(a)?;
    let value = alt_recompose(decomp.exponents())?;
    let terms: Vec<_> = decomp
        .exponents()
        .iter()
        .enumerate()
        .map(|(i, &r)| json!({"i": i + 1, "r": r, "sign": if i % 2 == 0 { "+" } else { "-" }}))
        .collect();
    Ok(Report::new("alt-decomp", "ok")
        .input("n", a.n)
        .input("exponents", &a.exponents)
        .witness("value", value)
        .witness("exponents", decomp.exponents())
        .witness("length", decomp.len())
        .items(terms))
}

fn positions(a: &AltArgs) -> Outcome {
    let decomp = decomp_from(a)?;
    let n = alt_recompose(decomp.exponents())?;
    let mp = d_positions(&decomp);
    let rows: Vec<_> = mp
        .positions
        .iter()
        .enumerate()
        .map(|(c, &p)| json!({"c": c + 1, "r": decomp.exponents()[c], "position": p}))
        .collect();
    Ok(Report::new("d-positions", "ok")
        .input("n", a.n)
        .input("exponents", &a.exponents)
        .witness("value", n)
        .witness("exponents", decomp.exponents())
        .items(rows))
}

fn lambda(a: &LambdaArgs) -> Outcome {
    const LIMIT: u64 = 1 << 20;
    if a.n > LIMIT {
        return Err(CliError::Usage(format!(
            "--n {} exceeds the listing limit {LIMIT}",
            a.n
        )));
    }
    let set = lambda_set(a.n);
    Ok(Report::new("lambda", "ok")
        .input("n", a.n)
        .witness("size", set.len())
        .items(set.iter().map(|&i| json!({"i": i}))))
}

fn binom(a: &BinomArgs) -> Outcome {
    let parity = binom_parity(a.x, a.y);
    Ok(Report::new("binom-parity", parity.to_string())
        .input("x", a.x)
        .input("y", a.y)
        .witness("support_x", support(a.x))
        .witness("support_y", support(a.y))
        .witness("subset", a.y & !a.x == 0))
}

fn steenrod(a: &SteenrodArgs) -> Outcome {
    let q = SteenrodQuery::new(a.dim_q, a.r, a.j)?;
    let parity = steenrod_coeff_parity(&q);
    let n = a.dim_q - a.r - 1;
    let target = i128::from(a.r) - i128::from(a.j);
    Ok(Report::new("steenrod", parity.to_string())
        .input("dim_q", a.dim_q)
        .input("r", a.r)
        .input("j", a.j)
        .witness("binomial", format!("C({n}, {})", a.j))
        .witness(
            "target",
            if target >= 0 {
                json!(format!("l_{target}"))
            } else {
                json!(null)
            },
        ))
}

fn j_range(a: &JRangeArgs) -> Outcome {
    let range = rational_j_range(a.dim_q, a.dim_p, a.witt, !a.not_split)?;
    let rep = corollary_4_7_evenness(a.dim_q, a.dim_p, a.witt, !a.not_split)?;
    debug_assert_eq!(range, rep.j_range);
    let mut report = Report::new("j-range", pass_str(rep.all_even))
        .input("dim_q", a.dim_q)
        .input("dim_p", a.dim_p)
        .input("witt_index", a.witt)
        .input("not_split", a.not_split)
        .witness("s", s_of_dim(a.dim_p)?)
        .witness("k", rep.k)
        .witness("r", rep.r)
        .witness("top", rep.top)
        .witness("j_lo", range.lo)
        .witness("j_hi", range.hi)
        .witness("l_lo", rep.l_range.lo)
        .witness("l_hi", rep.l_range.hi)
        .fail_if(!rep.all_even);
    for e in rep.entries.iter().filter(|e| e.parity.is_odd()) {
        report = report.violation(format!("C({}, {}) is odd at j = {}", rep.top, e.l, e.j));
    }
    Ok(report.items(rep.entries.iter()))
}

fn rederive(a: &RederiveArgs) -> Outcome {
    let rep = theorem_4_8_rederive(a.s_max);
    let passes = rep.failures.is_empty();
    let coverage: Vec<_> = rep
        .split_coverage_from
        .iter()
        .map(|&(s, d)| json!({"s": s, "dim_p": d}))
        .collect();
    let mut report = Report::new("rederive-4-8", pass_str(passes))
        .input("s_max", a.s_max)
        .witness("checked_small_k", rep.checked_case1)
        .witness("checked_large_p", rep.checked_case2)
        .witness("boundary_needed", rep.boundary_needed.len())
        .witness("split_coverage_from", coverage)
        .fail_if(!passes);
    for f in &rep.failures {
        report = report.violation(format!(
            "s = {}, dim p = {}, k = {}: range reaches {} < m = {}",
            f.s, f.dim_p, f.k, f.delivered_top, f.m
        ));
    }
    Ok(report.items(rep.failures.iter()))
}

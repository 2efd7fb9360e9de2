//! Which library operations each subcommand exposes. Every public
//! operation appears under exactly one subcommand.

pub const REGISTRY: &[(&str, &[&str])] = &[
    (
        "check",
        &[
            "check_instance",
            "coverage_classifier",
            "s_of_dim",
            "hoffmann_anisotropy_forced",
        ],
    ),
    ("conditions", &["condition1", "condition2", "condition3"]),
    ("scan-equivalence", &["equivalence_scan"]),
    (
        "karpenko",
        &["karpenko_admissible_i1", "is_karpenko_admissible"],
    ),
    (
        "enumerate",
        &[
            "enumerate_patterns",
            "vishik_height_bound_filter",
            "pfister_divisibility_filter",
        ],
    ),
    ("kernel-check", &["check_kernel_pattern"]),
    ("kernel-classify", &["kernel_dim_classifier"]),
    ("bound-3-6", &["corollary_3_6_bound"]),
    ("fitzgerald", &["fitzgerald_check"]),
    ("refined-check", &["refined_conjecture_check"]),
    ("lemma-5-5", &["lemma_5_5_scan"]),
    ("witness", &["optimality_witness"]),
    ("alt-decomp", &["alt_decompose", "alt_recompose"]),
    ("d-positions", &["d_positions"]),
    ("lambda", &["lambda_set"]),
    ("binom-parity", &["binom_parity", "support"]),
    ("steenrod", &["steenrod_coeff_parity"]),
    ("j-range", &["rational_j_range", "corollary_4_7_evenness"]),
    ("rederive-4-8", &["theorem_4_8_rederive"]),
];

/// The subcommand exposing `operation`, if any.
pub fn subcommand_for(operation: &str) -> Option<&'static str> {
    REGISTRY
        .iter()
        .find(|(_, ops)| ops.contains(&operation))
        .map(|(cmd, _)| *cmd)
}

use std::path::PathBuf;

use clap::Parser;
use wittcalc_cli::{run_to_bytes, Cli};

/// Worked examples pinned as golden JSON reports: file stem and arguments.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "check_4_8_4",
        &["check", "--dim-p", "4", "--dim-q", "8", "--witt", "4"],
    ),
    (
        "check_5_12_5",
        &["check", "--dim-p", "5", "--dim-q", "12", "--witt", "5"],
    ),
    (
        "check_3_2_0",
        &["check", "--dim-p", "3", "--dim-q", "2", "--witt", "0"],
    ),
    (
        "conditions_12_2_2",
        &["conditions", "--d", "12", "--k", "2", "--s", "2"],
    ),
    (
        "scan_equivalence_64_4",
        &["scan-equivalence", "--d-max", "64", "--s-max", "4"],
    ),
    ("karpenko_8", &["karpenko", "--d", "8"]),
    ("enumerate_4", &["enumerate", "--d", "4"]),
    (
        "enumerate_16_pfister_2",
        &["enumerate", "--d", "16", "--pfister-divisibility", "2"],
    ),
    (
        "kernel_check_1_10_4_0",
        &["kernel-check", "--s", "1", "--pattern", "10,4,0"],
    ),
    (
        "kernel_check_1_12_4_0",
        &["kernel-check", "--s", "1", "--pattern", "12,4,0"],
    ),
    (
        "kernel_classify_1_12_4_0",
        &["kernel-classify", "--s", "1", "--pattern", "12,4,0"],
    ),
    (
        "kernel_classify_1_16_8_0",
        &["kernel-classify", "--s", "1", "--pattern", "16,8,0"],
    ),
    (
        "bound_3_6_1_20_4_0",
        &["bound-3-6", "--s", "1", "--pattern", "20,4,0"],
    ),
    (
        "fitzgerald_4_12_4_0",
        &["fitzgerald", "--dim-p", "4", "--pattern", "12,4,0"],
    ),
    (
        "refined_check_1_1_9_3_1",
        &[
            "refined-check",
            "--s",
            "1",
            "--k",
            "1",
            "--pattern",
            "9,3,1",
        ],
    ),
    (
        "refined_check_1_0_12_4_0",
        &[
            "refined-check",
            "--s",
            "1",
            "--k",
            "0",
            "--pattern",
            "12,4,0",
        ],
    ),
    (
        "lemma_5_5_2_2_40",
        &["lemma-5-5", "--s", "2", "--k", "2", "--d-max", "40"],
    ),
    (
        "witness_2_1_3_1",
        &[
            "witness", "--s", "2", "--a", "1", "--k", "3", "--l-sub", "1",
        ],
    ),
    ("alt_decomp_5", &["alt-decomp", "--n", "5"]),
    (
        "d_positions_3_2_0",
        &["d-positions", "--exponents", "3,2,0"],
    ),
    ("lambda_5", &["lambda", "--n", "5"]),
    (
        "binom_parity_7_3",
        &["binom-parity", "--x", "7", "--y", "3"],
    ),
    (
        "steenrod_8_0_7",
        &["steenrod", "--dim-q", "8", "--r", "0", "--j", "7"],
    ),
    (
        "j_range_12_5_5",
        &[
            "j-range",
            "--dim-q",
            "12",
            "--dim-p",
            "5",
            "--witt",
            "5",
            "--not-split",
        ],
    ),
    ("rederive_4_8_3", &["rederive-4-8", "--s-max", "3"]),
];

pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(format!("{stem}.json"))
}

/// Runs in-process with JSON output and an optional `--jobs`.
pub fn run_json(args: &[&str], jobs: Option<u16>) -> (Vec<u8>, i32) {
    let mut argv: Vec<String> = vec!["wittcalc".into()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.extend(["--format".into(), "json".into()]);
    if let Some(n) = jobs {
        argv.extend(["--jobs".into(), n.to_string()]);
    }
    let cli = Cli::try_parse_from(&argv).expect("golden arguments parse");
    run_to_bytes(&cli).expect("golden command runs")
}

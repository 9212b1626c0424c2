//! CLI behavior: output formats, determinism, exit codes, and the JSON
//! schema contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ktree() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ktree"))
}

fn run(args: &[&str]) -> Output {
    ktree().args(args).output().expect("spawn ktree")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ktree-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_empty_tree_edge_list() {
    let out = stdout_of(&["generate", "--k", "2", "--n", "0", "--seed", "1"]);
    assert_eq!(out, "# ktree k=2 n=0 seed=1\n1 2\n");
}

#[test]
fn generate_cliques_json_parses() {
    let out = stdout_of(&[
        "generate",
        "--k",
        "3",
        "--n",
        "4",
        "--seed",
        "9",
        "--format",
        "cliques-json",
    ]);
    let cliques: Vec<Vec<u32>> = serde_json::from_str(out.trim()).expect("valid JSON");
    assert_eq!(cliques.len(), 4 * 3 + 1);
    assert_eq!(cliques[0], vec![1, 2, 3]);
    assert!(cliques.iter().all(|c| c.len() == 3));
}

#[test]
fn generate_is_deterministic_and_seed_sensitive() {
    let a = stdout_of(&["generate", "--k", "2", "--n", "50", "--seed", "5"]);
    let b = stdout_of(&["generate", "--k", "2", "--n", "50", "--seed", "5"]);
    let c = stdout_of(&["generate", "--k", "2", "--n", "50", "--seed", "6"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.starts_with("# ktree k=2 n=50 seed=5\n"));
    assert_eq!(a.lines().count(), 1 + 50 * 2 + 1);
}

#[test]
fn stats_csv_is_byte_identical_across_thread_counts() {
    let base = [
        "stats", "--k", "2", "--n", "60", "--trials", "40", "--seed", "77", "--degrees",
        "--pairs", "3",
    ];
    let one = stdout_of(&[&base[..], &["--threads", "1"]].concat());
    let four = stdout_of(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    assert!(one.starts_with("k,n,d,j,mean,var,stderr,trials,seed\n"));
}

#[test]
fn stats_histograms_and_json_files() {
    let hist = tmp_path("hist.csv");
    let json = tmp_path("stats.json");
    let out = run(&[
        "stats",
        "--k",
        "2",
        "--n",
        "30",
        "--trials",
        "25",
        "--seed",
        "3",
        "--degrees",
        "--pairs",
        "2",
        "--histograms",
        hist.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let hist_text = std::fs::read_to_string(&hist).unwrap();
    assert!(hist_text.starts_with("k,n,stat,value,count\n"));
    for stat in ["height", "width", "root_degree", "degree", "pair_distance"] {
        assert!(hist_text.contains(&format!(",{stat},")), "missing {stat}");
    }
    let json_text = std::fs::read_to_string(&json).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert_eq!(value["k"], 2);
    std::fs::remove_file(hist).ok();
    std::fs::remove_file(json).ok();
}

#[test]
fn stats_json_validates_against_the_published_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas/summary_stats.schema.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("valid schema");

    let json = tmp_path("schema-check.json");
    let out = run(&[
        "stats",
        "--k",
        "3",
        "--n",
        "40",
        "--trials",
        "30",
        "--seed",
        "11",
        "--degrees",
        "--pairs",
        "2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let instance: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");

    // Without the optional sections the document must still validate.
    let json2 = tmp_path("schema-check2.json");
    let out = run(&[
        "stats", "--k", "2", "--n", "10", "--trials", "5", "--seed", "1", "--json",
        json2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let instance: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json2).unwrap()).unwrap();
    assert!(validator.is_valid(&instance));
    std::fs::remove_file(json).ok();
    std::fs::remove_file(json2).ok();
}

#[test]
fn exact_rational_and_decimal_styles() {
    let rational = stdout_of(&["exact", "--k", "2", "--n-max", "2", "--d-max", "2"]);
    assert!(rational.starts_with("k,n,d,j,expectation\n"));
    assert!(rational.contains("2,2,1,1,5/3\n"));
    let decimal = stdout_of(&[
        "exact", "--k", "2", "--n-max", "2", "--d-max", "2", "--style", "decimal",
    ]);
    assert!(decimal.contains("2,2,1,1,1.6666666666666667\n"));
}

#[test]
fn exact_float_backend_with_checkpoints() {
    let out = stdout_of(&[
        "exact",
        "--k",
        "2",
        "--n-max",
        "1000",
        "--d-max",
        "3",
        "--backend",
        "float",
        "--checkpoints",
        "10,1000",
    ]);
    assert!(out.starts_with("k,n,d,j,expectation\n"));
    assert!(out.contains("\n2,10,1,1,"));
    assert!(out.contains("\n2,1000,1,1,"));
}

#[test]
fn asym_spectral_table_and_estimates() {
    let spectral = stdout_of(&["asym", "--k", "2", "--w", "0.5,1.0"]);
    assert!(spectral.starts_with("k,w,lambda1,lambda1p,lambda1pp\n"));
    assert_eq!(spectral.lines().count(), 3);

    let est = stdout_of(&["asym", "--k", "2", "--n", "1e6", "--d", "4", "--j", "1"]);
    assert!(est.starts_with("k,n,d,j,fixed_d,llt,rho,large_d,limit_evaluated\n"));
}

#[test]
fn alpha_plus_matches_the_reference_table_rendering() {
    let out = stdout_of(&["alpha-plus", "--k", "2,5,20"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,alpha_plus,v");
    assert!(lines[1].starts_with("2,1.085480,"));
    assert!(lines[2].starts_with("5,0.358501,"));
    assert!(lines[3].starts_with("20,0.077875,"));
}

#[test]
fn limit_series_csv() {
    let out = stdout_of(&["limit", "--k", "3", "--d", "1", "--j", "2", "--order", "3"]);
    assert!(out.starts_with("k,d,j,m,c_m(numerator),c_m(denominator),moment\n"));
    assert!(out.contains("3,1,2,1,-1,1,"));
    assert!(out.contains("3,1,2,2,8,3,"));
}

#[test]
fn compare_small_case_against_the_enumeration_value() {
    let out = stdout_of(&[
        "compare", "--k", "2", "--n", "2", "--d", "1", "--j", "1", "--trials", "100000",
        "--seed", "7",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    let fields: Vec<&str> = lines[1].split(',').collect();
    let exact: f64 = fields[4].parse().unwrap();
    let mc_mean: f64 = fields[7].parse().unwrap();
    let mc_stderr: f64 = fields[8].parse().unwrap();
    assert!((exact - 5.0 / 3.0).abs() < 1e-12);
    assert!(
        (mc_mean - exact).abs() <= 3.0 * mc_stderr,
        "mc {mc_mean} vs exact {exact} (stderr {mc_stderr})"
    );
}

#[test]
fn compare_is_deterministic_for_a_seed() {
    let args = [
        "compare", "--k", "2", "--n", "50", "--d", "1,2", "--j", "1,2", "--trials", "200",
        "--seed", "13",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a, b);
}

#[test]
fn plot_profile_overlay_columns() {
    let out = stdout_of(&["plot-profile", "--k", "2", "--n", "500"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "# d exact_profile llt_gaussian");
    for line in lines {
        assert_eq!(line.split_whitespace().count(), 3, "line {line:?}");
    }
}

#[test]
fn plot_profile_empty_table_errors_and_writes_nothing() {
    let out_file = tmp_path("plot-empty.txt");
    let out = run(&[
        "plot-profile",
        "--k",
        "2",
        "--n",
        "0",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_file.exists(), "file must not be written on error");
}

#[test]
fn error_records_and_exit_codes() {
    // Configuration error.
    let out = run(&["generate", "--k", "0", "--n", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let record: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(record["kind"], "config");
    assert_eq!(record["exit"], 2);

    // Resource guard.
    let out = run(&[
        "stats",
        "--k",
        "2",
        "--n",
        "1000",
        "--trials",
        "1000",
        "--seed",
        "1",
        "--max-trials-work",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let record: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(record["kind"], "guard");

    // Mode confusion in asym.
    let out = run(&["asym", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // Bad w is a config error.
    let out = run(&["asym", "--k", "2", "--w", "-1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_env_var_is_honored() {
    let with_flag = stdout_of(&["generate", "--k", "2", "--n", "20", "--seed", "321"]);
    let out = ktree()
        .args(["generate", "--k", "2", "--n", "20"])
        .env("KTREE_SEED", "321")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), with_flag);
}

//! End-to-end tests of the `agreeable` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_agreeable"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn solve_brute_on_fixture() {
    let input = fixture("additive_balanced.json");
    let out = run(&["solve", "--algo", "brute", "--input", input.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,algorithm,set,size,optimum,ratio,queries,wall_ms,seed"
    );
    let row = lines.next().unwrap();
    assert!(row.contains(",brute,1 4,2,2,1,"), "row: {row}");
}

#[test]
fn solve_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("row.csv");
    let input = fixture("additive_balanced.json");
    let out = run(&[
        "solve",
        "--algo",
        "additive-greedy",
        "--input",
        input.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(csv_path).unwrap();
    assert!(written.starts_with("instance,algorithm,set,size"));
    assert_eq!(written.lines().count(), 2);
}

#[test]
fn solve_ordinal_both_algorithms() {
    let input = fixture("ordinal_opposite.json");
    let det = run(&["solve", "--algo", "ordinal-det", "--input", input.to_str().unwrap()]);
    assert!(det.status.success());
    assert!(stdout(&det).contains(",ordinal-det,1 3 5,3,"), "out: {}", stdout(&det));

    let rand = run(&[
        "solve",
        "--algo",
        "ordinal-rand",
        "--input",
        input.to_str().unwrap(),
        "--seed",
        "11",
    ]);
    assert!(rand.status.success());
    // seed column is populated for randomized runs
    assert!(stdout(&rand).lines().nth(1).unwrap().ends_with(",11"));
}

#[test]
fn solve_oracle_reports_queries_and_ratio() {
    let input = fixture("oracle_planted.json");
    let out = run(&["solve", "--algo", "oracle-cover", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], "1 2 3 4");
    assert_eq!(fields[3], "4");
    assert_eq!(fields[4], "1"); // known optimum |T*|
    assert_eq!(fields[5], "4"); // ratio
    let queries: u64 = fields[6].parse().unwrap();
    assert!(queries <= 56);
}

#[test]
fn solve_rejects_kind_mismatch() {
    let input = fixture("ordinal_opposite.json");
    let out = run(&["solve", "--algo", "additive-dp", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("kind"));
}

#[test]
fn check_exit_codes_follow_verdict() {
    let input = fixture("additive_balanced.json");
    let good = run(&["check", "--input", input.to_str().unwrap(), "--set", "1 4"]);
    assert_eq!(good.status.code(), Some(0));
    let bad = run(&["check", "--input", input.to_str().unwrap(), "--set", "1 2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("NOT agreeable"));
}

#[test]
fn check_necessary_reports_deficits() {
    let input = fixture("ordinal_opposite.json");
    let good = run(&[
        "check",
        "--input",
        input.to_str().unwrap(),
        "--set",
        "1 3 5",
        "--necessary",
    ]);
    assert_eq!(good.status.code(), Some(0));

    let bad = run(&[
        "check",
        "--input",
        input.to_str().unwrap(),
        "--set",
        "2 4",
        "--necessary",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("k=1"), "out: {}", stdout(&bad));

    let wrong_kind = run(&[
        "check",
        "--input",
        fixture("additive_balanced.json").to_str().unwrap(),
        "--set",
        "1",
        "--necessary",
    ]);
    assert_eq!(wrong_kind.status.code(), Some(2));
}

#[test]
fn gen_random_additive_is_deterministic() {
    let a = run(&[
        "gen", "random-additive", "--items", "5", "--agents", "2", "--max-u", "9", "--seed", "3",
    ]);
    let b = run(&[
        "gen", "random-additive", "--items", "5", "--agents", "2", "--max-u", "9", "--seed", "3",
    ]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("\"kind\": \"additive\""));
}

#[test]
fn gen_planted_handles_empty_planted_set() {
    let out = run(&["gen", "planted", "--items", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"kind\": \"oracle-planted\""));
    assert!(text.contains("\"t_star\": []"));
}

#[test]
fn gen_from_sources_produces_parseable_instances() {
    let dir = tempfile::tempdir().unwrap();
    for (sub, file) in [
        ("from-partition", "partition.txt"),
        ("from-3sat", "formula.cnf"),
        ("from-setcover", "setcover.txt"),
    ] {
        let out_path = dir.path().join(format!("{sub}.json"));
        let out = run(&[
            "gen",
            sub,
            "--input",
            fixture(file).to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{sub} failed: {}", stderr(&out));
        let text = std::fs::read_to_string(&out_path).unwrap();
        let parsed = agreeable_cli::formats::parse_instance(&text).unwrap();
        assert_eq!(parsed.instance.kind(), "additive");
    }
}

#[test]
fn gen_from_partition_rejects_odd_multiset() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("odd.txt");
    std::fs::write(&src, "1\n2\n3\n").unwrap();
    let out = run(&["gen", "from-partition", "--input", src.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd"));
}

#[test]
fn bench_matrix_row_counts_and_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let csv_path = dir.path().join("results.csv");
    let config = format!(
        r#"{{"instances": ["{}", "{}"], "algorithms": ["brute", "additive-dp", "additive-greedy"], "out": "{}"}}"#,
        fixture("additive_balanced.json").display(),
        fixture("additive_tiny.json").display(),
        csv_path.display(),
    );
    std::fs::write(&config_path, config).unwrap();
    let out = run(&["bench", "--config", config_path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let table = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    // brute <= dp == brute <= greedy per instance
    for chunk in rows.chunks(3) {
        let size = |row: &str| row.split(',').nth(3).unwrap().parse::<u32>().unwrap();
        let brute = size(chunk[0]);
        let dp = size(chunk[1]);
        let greedy = size(chunk[2]);
        assert_eq!(brute, dp);
        assert!(brute <= greedy);
    }
}

#[test]
fn bench_rejects_kind_mismatch_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let config = format!(
        r#"{{"instances": ["{}"], "algorithms": ["oracle-cover"]}}"#,
        fixture("ordinal_opposite.json").display(),
    );
    std::fs::write(&config_path, config).unwrap();
    let out = run(&["bench", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("oracle-cover"));
}

#[test]
fn bench_rejects_unknown_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let config = format!(
        r#"{{"instances": ["{}"], "algorithms": ["hillclimb"]}}"#,
        fixture("additive_balanced.json").display(),
    );
    std::fs::write(&config_path, config).unwrap();
    let out = run(&["bench", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("hillclimb"));
}

#[test]
fn bench_self_test_trips_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let config = format!(
        r#"{{"instances": ["{}"], "algorithms": ["brute"]}}"#,
        fixture("additive_balanced.json").display(),
    );
    std::fs::write(&config_path, config).unwrap();
    let out = bin()
        .args(["bench", "--config", config_path.to_str().unwrap()])
        .env("AGREEABLE_BENCH_SELF_TEST", "fail")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("audit"));
    // the synthetic row is present in the table
    assert!(stdout(&out).contains("audit-self-test"));
}

#[test]
fn env_caps_are_honored() {
    let input = fixture("additive_balanced.json");
    let out = bin()
        .args(["solve", "--algo", "brute", "--input", input.to_str().unwrap()])
        .env("AGREEABLE_BRUTE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"), "stderr: {}", stderr(&out));
}

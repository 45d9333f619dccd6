//! Behavior of the `msdecomp` binary: exit codes, formats, and the
//! documented examples of each subcommand.

use std::process::{Command, Output};

const M16: &str = "0,1,2,2,3,3,3,3,5,5,5,5,6,7,9,9";

fn msdecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msdecomp"))
        .args(args)
        .env_remove("MSDECOMP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout is json")
}

#[test]
fn decompose_reducible_exits_zero_with_verified_pair() {
    let out = msdecomp(&["decompose", "--elements", "0,1,2,3,4,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = json_of(&out);
    assert_eq!(json["result"]["outcome"], "found");
    assert_eq!(json["result"]["verified"], true);
    let a: msdecomp_core::Multiset = json["result"]["factor"].as_str().unwrap().parse().unwrap();
    let b: msdecomp_core::Multiset = json["result"]["cofactor"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    let m: msdecomp_core::Multiset = "0,1,2,3,4,5".parse().unwrap();
    assert_eq!(a.minkowski_sum(&b).unwrap(), m);
}

#[test]
fn decompose_prime_cardinality_exits_one() {
    let out = msdecomp(&["decompose", "--elements", "0,1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("prime cardinality"));
}

#[test]
fn decompose_pinned_cardinality_finds_the_worked_pair() {
    let out = msdecomp(&[
        "decompose",
        "--elements",
        M16,
        "--cardinality",
        "4",
        "--max-iter",
        "100",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = json_of(&out);
    assert_eq!(json["result"]["divisor"], 4);
    let mut pair = vec![
        json["result"]["factor"].as_str().unwrap().to_string(),
        json["result"]["cofactor"].as_str().unwrap().to_string(),
    ];
    pair.sort();
    assert_eq!(pair, vec!["0,1,3,3".to_string(), "0,2,2,6".to_string()]);
}

#[test]
fn decompose_malformed_input_exits_two() {
    let out = msdecomp(&["decompose", "--elements", "0,1,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("invalid element `x`"));
}

#[test]
fn decompose_reads_single_instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.txt");
    std::fs::write(&path, "# a comment line\n\n0,1,1,2\n").unwrap();
    let out = msdecomp(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let many = dir.path().join("many.txt");
    std::fs::write(&many, "0,1\n0,2\n").unwrap();
    let out = msdecomp(&["decompose", "--input", many.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("2 multisets"));
}

#[test]
fn decompose_exhaustive_proves_irreducibility() {
    let out = msdecomp(&["decompose", "--elements", "0,1,2,7", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("exhaustive enumeration"));

    // Beyond the cap the enumeration is refused, which is an input error.
    let big: Vec<String> = (0..18u64).map(|v| v.to_string()).collect();
    let out = msdecomp(&["decompose", "--elements", &big.join(","), "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("limit"));
}

#[test]
fn decompose_seed_comes_from_the_environment_by_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_msdecomp"))
        .args(["decompose", "--elements", "0,1,1,2", "--json"])
        .env("MSDECOMP_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 7);
}

#[test]
fn score_reports_the_worked_examples() {
    for (candidate, expected_score, quotient) in [
        ("0,2,2,6", 16u64, Some("0,1,3,3")),
        ("0,1,2,6", 6, None),
        ("0,2,2,5", 11, None),
    ] {
        let out = msdecomp(&[
            "score",
            "--elements",
            M16,
            "--candidate",
            candidate,
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0), "candidate {candidate}");
        let json = json_of(&out);
        assert_eq!(json["score"], expected_score, "candidate {candidate}");
        match quotient {
            Some(q) => assert_eq!(json["quotient"], q),
            None => assert!(json.get("quotient").is_none()),
        }
    }
}

#[test]
fn score_names_the_violated_precondition() {
    let out = msdecomp(&["score", "--elements", M16, "--candidate", "0,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("does not divide"));

    let out = msdecomp(&["score", "--elements", M16, "--candidate", "1,2,3,5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("contain the element 0"));

    let out = msdecomp(&["score", "--elements", M16, "--candidate", "0,1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("not contained"));
}

#[test]
fn factor_splits_and_labels() {
    let out = msdecomp(&["factor", "--poly", "x^2+2x+1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("(1 + x)(1 + x)\n"), "got: {text}");

    let out = msdecomp(&["factor", "--poly", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("constant 7 is prime"));

    let out = msdecomp(&["factor", "--poly", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("unit"));

    let out = msdecomp(&["factor", "--poly", "x"]);
    assert_eq!(out.status.code(), Some(1));

    let out = msdecomp(&[
        "factor",
        "--poly",
        "1+x+x^2+x^3+x^4+x^5",
        "--complete",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = json_of(&out);
    let factors = json["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    for f in factors {
        assert_eq!(f["provably_irreducible"], true);
    }
}

#[test]
fn factor_rejects_negative_coefficients_with_position() {
    let out = msdecomp(&["factor", "--poly", "1 - x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("byte 2"), "got: {err}");
    assert!(err.contains("not in N[x]"), "got: {err}");
}

#[test]
fn gen_writes_the_documented_format_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("instances.txt");
    let sidecar = dir.path().join("factors.txt");
    let args = [
        "gen",
        "--structure",
        "5,5",
        "--range",
        "10000",
        "--count",
        "5",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
        "--factors-out",
        sidecar.to_str().unwrap(),
    ];
    let out = msdecomp(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "# structure=5,5 range=10000 seed=1 rng=chacha8"
    );
    let instances: Vec<msdecomp_core::Multiset> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(instances.len(), 5);
    for m in &instances {
        assert_eq!(m.cardinality(), 25);
    }
    // Ground truth multiplies back to each instance.
    let sidecar_text = std::fs::read_to_string(&sidecar).unwrap();
    for (line, instance) in sidecar_text.lines().skip(1).zip(&instances) {
        let mut product = msdecomp_core::Multiset::identity();
        for part in line.split(" | ") {
            let f: msdecomp_core::Multiset = part.parse().unwrap();
            product = product.minkowski_sum(&f).unwrap();
        }
        assert_eq!(&product, instance);
    }

    // Bit-for-bit reproducible.
    let again = dir.path().join("again.txt");
    let mut args2 = args;
    args2[10] = again.to_str().unwrap();
    assert_eq!(msdecomp(&args2[..11]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&again).unwrap(), text);
}

#[test]
fn gen_cardinality_is_the_structure_product() {
    let out = msdecomp(&[
        "gen",
        "--structure",
        "2,2,2",
        "--range",
        "5",
        "--count",
        "1",
        "--seed",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let instance: msdecomp_core::Multiset = text.lines().nth(1).unwrap().parse().unwrap();
    assert_eq!(instance.cardinality(), 8);
}

#[test]
fn gen_flags_trivial_structures() {
    let out = msdecomp(&[
        "gen",
        "--structure",
        "3",
        "--range",
        "5",
        "--count",
        "1",
        "--seed",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr_of(&out).contains("trivial structure"));
    assert!(stdout_of(&out).lines().count() == 2);
}

#[test]
fn bench_expands_power_shorthand() {
    let out = msdecomp(&[
        "bench",
        "--structure",
        "2^10",
        "--range",
        "5",
        "--count",
        "2",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1024,2^10,"), "row: {row}");
}

#[test]
fn bench_json_carries_both_iteration_averages() {
    let out = msdecomp(&[
        "bench",
        "--structure",
        "3,3",
        "--range",
        "5",
        "--count",
        "10",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = json_of(&out);
    let row = &json.as_array().unwrap()[0];
    assert_eq!(row["size"], 9);
    assert_eq!(row["range"], 5);
    assert!(row["iterations_avg"].is_number());
    assert!(row["iterations_avg_success"].is_number());
    assert_eq!(row["failures"], 0);
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn locres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locres")).args(args).env_remove("RESIDUE_THREADS").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = locres(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (code(&out), v)
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn duality_check_on_the_square_of_the_maximal_ideal() {
    let (c, v) = json(&["duality-check", "--vars", "z,w", "--ideal", "z^2, z*w, w^2", "--degree", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["monomials"], 15);
    assert_eq!(v["agree"], 15);
    assert_eq!(v["route"], "colon");
}

#[test]
fn residue_of_zw_is_one() {
    let (c, v) = json(&["residue", "--vars", "z,w", "--ideal", "z^2, w^2", "--germ", "z*w"]);
    assert_eq!(c, 0);
    assert_eq!(v["exact"], "1");
    let q = &v["quadrature"];
    assert!((q["value"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-4);
    assert!(q["value"]["im"].as_f64().unwrap().abs() < 1e-4);
    assert_eq!(q["tolerance"], 1e-4);
    assert_eq!(q["calibration"]["sign"], -1);
    assert!(q["calibration"]["constant"]["re"].is_number());
}

#[test]
fn non_member_exits_one() {
    let out = locres(&["member", "--vars", "z,w", "--ideal", "z^2, z*w, w^2", "--germ", "z"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("does not lie in"));
}

#[test]
fn member_reports_cofactors() {
    let (c, v) = json(&["member", "--vars", "z,w", "--ideal", "z^2, w^2", "--germ", "z^3 + 2*w^2"]);
    assert_eq!(c, 0);
    assert_eq!(v["cofactors"], serde_json::json!(["z", "2"]));
}

#[test]
fn local_membership_ignores_other_zeros() {
    let file = corpus("ci_cusps.txt");
    let global = locres(&["member", "--ideal-file", &file, "--germ", "z^2"]);
    let local = locres(&["member", "--ideal-file", &file, "--germ", "z^2", "--local"]);
    assert_eq!((code(&global), code(&local)), (1, 0));
}

#[test]
fn syntax_errors_exit_two_with_position() {
    let out = locres(&["gb", "--vars", "z,w", "--ideal", "z^2, w^"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--ideal:1:8"), "{err}");
    let (c, v) = json(&["residue", "--vars", "z,w", "--ideal", "z^2, w^2", "--germ", "z*"]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["location"]["column"], 3);
}

#[test]
fn file_errors_report_the_file_line() {
    let dir = std::env::temp_dir().join(format!("locres-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "# vars: z, w\nz^2\nw^2 +* z\n").unwrap();
    let out = locres(&["gb", "--ideal-file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt:3:6"));
}

#[test]
fn preconditions_name_the_variable() {
    let out = locres(&["pairing", "--vars", "z,w", "--ideal", "z^2, z*w"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no power of w"));
    let out = locres(&["residue", "--vars", "z,w", "--ideal", "z^2", "--germ", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bad_thread_count_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_locres"))
        .args(["gb", "--vars", "z", "--ideal", "z"])
        .env("RESIDUE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn resolution_of_the_maximal_ideal_squared() {
    let (c, v) = json(&["resolve", "--ideal-file", &corpus("m_squared.txt")]);
    assert_eq!(c, 0);
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 2]));
    assert_eq!(v["cohen_macaulay"], true);
    assert_eq!(v["minimal"], true);
}

#[test]
fn koszul_complex_in_three_variables() {
    let (c, v) = json(&["koszul", "--ideal-file", &corpus("coordinates3.txt"), "--random", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["maps"][0][0], serde_json::json!(["z1", "z2", "z3"]));
}

#[test]
fn pairing_table_is_exact() {
    let (c, v) = json(&["pairing", "--ideal-file", &corpus("ci_z2_w3.txt")]);
    assert_eq!(c, 0);
    assert_eq!(v["multiplicity"], 6);
    assert_eq!(v["table"]["z*w^2"], "1");
    assert_eq!(v["pairing_rank"], 6);
}

#[test]
fn every_corpus_ideal_passes_the_duality_check() {
    for name in ["ci_z2_w2.txt", "ci_z2_w3.txt", "ci_linear.txt", "ci_cusps.txt", "m_squared.txt", "gaussian.txt"] {
        let (c, v) = json(&["duality-check", "--ideal-file", &corpus(name), "--random", "12", "--seed", "5"]);
        assert_eq!(c, 0, "{name}");
        assert_eq!(v["agree"], v["checked"], "{name}");
    }
}

#[test]
fn bm_verify_on_the_circle() {
    let (c, v) = json(&["bm-verify", "--vars", "z", "--ideal", "z^2 + z^3", "--degree", "3", "--second-radius", "0.5"]);
    assert_eq!(c, 0);
    assert!(v["max_error"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
}

#[test]
fn vp_check_reports_the_constant() {
    let (c, v) = json(&["vp-check", "--ideal-file", &corpus("ci_linear.txt"), "--germ", "w^2 + z - w"]);
    assert_eq!(c, 0);
    assert_eq!(v["constant"], "-1/2");
    assert_eq!(v["witness"]["holds"], true);
    let (c, _) = json(&["vp-check", "--ideal-file", &corpus("ci_linear.txt"), "--germ", "z"]);
    assert_eq!(c, 1);
}

#[test]
fn gb_lex_and_positive_dimension() {
    let (c, v) = json(&["gb", "--vars", "x,y", "--ideal", "x - y^2, x*y", "--order", "lex"]);
    assert_eq!(c, 0);
    assert_eq!(v["zero_dimensional"], true);
    assert_eq!(v["quotient_dim"], 3);
    let (c, v) = json(&["gb", "--vars", "z,w", "--ideal", "z*w"]);
    assert_eq!(c, 0);
    assert_eq!(v["zero_dimensional"], false);
}

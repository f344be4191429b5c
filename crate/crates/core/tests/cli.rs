use std::path::{Path, PathBuf};

use fwcone::dualcone::{dual_membership, CERT_PSD_TOL};
use fwcone::symcore::frobenius_inner;
use fwcone::symcore::io::read_matrix;
use serde_json::Value;
use tempfile::TempDir;

const DATA: &[&str] = &[
    "M.json",
    "A.json",
    "Qprime.json",
    "s27.json",
    "qM.json",
    "pna3_1.9.json",
    "pna3_2.json",
    "identity5.json",
    "diag12.json",
];

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for f in DATA {
        std::fs::copy(src.join(f), dir.path().join(f)).unwrap();
    }
    dir
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/run_report.schema.json");
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

struct Run {
    code: i32,
    report: Option<Value>,
    stderr: String,
}

fn run(dir: &Path, args: &[&str]) -> Run {
    let mut argv = vec!["fwcone".to_string()];
    for a in args {
        argv.push(if a.ends_with(".json") { dir.join(a).display().to_string() } else { a.to_string() });
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fwcone::cli::run(argv, &mut out, &mut err);
    let stdout = String::from_utf8(out).unwrap();
    let report = if stdout.trim().is_empty() { None } else { Some(serde_json::from_str(&stdout).unwrap()) };
    if let Some(r) = &report {
        let s = schema();
        if let Err(errors) = s.validate(r) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("report fails schema: {msgs:?}\n{stdout}");
        }
        assert_eq!(r["exit_code"].as_i64(), Some(code as i64));
    }
    Run { code, report, stderr: String::from_utf8(err).unwrap() }
}

fn verdict(r: &Run) -> &str {
    r.report.as_ref().unwrap()["verdict"].as_str().unwrap()
}

fn artifact(r: &Run, suffix: &str) -> PathBuf {
    let list = r.report.as_ref().unwrap()["artifacts"].as_array().unwrap();
    let p = list.iter().filter_map(|v| v.as_str()).find(|p| p.ends_with(suffix)).expect("artifact listed");
    PathBuf::from(p)
}

#[test]
fn identity_is_width_one() {
    let dir = workspace();
    let r = run(dir.path(), &["check-fw", "identity5.json", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdict(&r), "member");
    let d: Value =
        serde_json::from_str(&std::fs::read_to_string(artifact(&r, "decomposition.k1.json")).unwrap()).unwrap();
    assert_eq!(d["blocks"].as_array().unwrap().len(), 5);
}

#[test]
fn m_is_rejected_at_width_four_with_a_checkable_certificate() {
    let dir = workspace();
    let r = run(dir.path(), &["check-fw", "M.json", "4"]);
    assert_eq!(r.code, 1);
    assert_eq!(verdict(&r), "non_member");

    // re-check the emitted certificate from the file alone
    let cert: Value =
        serde_json::from_str(&std::fs::read_to_string(artifact(&r, "certificate.k4.json")).unwrap()).unwrap();
    let b = fwcone::symcore::io::matrix_from_value(&cert["B"]).unwrap().to_f64();
    let m = read_matrix(&dir.path().join("M.json")).unwrap().to_f64();
    assert!(dual_membership(&b, 4, CERT_PSD_TOL).unwrap().is_member);
    let value = frobenius_inner(&b, &m).unwrap();
    assert!(value < -1e-8 * b.frobenius_norm() * m.frobenius_norm());
}

#[test]
fn certify_finds_separator_for_m() {
    let dir = workspace();
    let r = run(dir.path(), &["certify", "M.json", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(verdict(&r), "found");
    assert!(r.report.unwrap()["values"]["certificate_value"].as_f64().unwrap() < 0.0);
}

#[test]
fn certify_reports_none_for_identity() {
    let dir = workspace();
    let r = run(dir.path(), &["certify", "identity5.json", "2"]);
    assert_eq!(r.code, 1);
    assert_eq!(verdict(&r), "none");
}

#[test]
fn a_lies_in_the_width_four_dual_only() {
    let dir = workspace();
    let r = run(dir.path(), &["check-dual", "A.json", "4"]);
    assert_eq!((r.code, verdict(&r)), (0, "member"));
    let r = run(dir.path(), &["check-dual", "A.json", "5"]);
    assert_eq!((r.code, verdict(&r)), (1, "non_member"));
}

#[test]
fn quadratic_of_m_is_not_a_sum_of_width_four_squares() {
    let dir = workspace();
    let r = run(dir.path(), &["soks", "qM.json", "4"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report.unwrap()["values"]["gram_source"], "unique");
}

#[test]
fn multiplied_quadratic_with_supplied_gram_is_accepted() {
    let dir = workspace();
    let r = run(dir.path(), &["soks", "qM.json", "4", "-r", "1", "--gram", "Qprime.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let values = &r.report.as_ref().unwrap()["values"];
    assert_eq!(values["gram_conditional"], true);
    assert_eq!(values["supports"], 27);
}

#[test]
fn supports_flag_restricts_check_fw() {
    let dir = workspace();
    let r = run(dir.path(), &["check-fw", "Qprime.json", "4", "--supports", "s27.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report.unwrap()["values"]["blocks"], 27);
}

#[test]
fn pna_threshold_and_verdicts() {
    let dir = workspace();
    let r = run(dir.path(), &["pna", "4", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report.unwrap()["values"]["threshold"], "3/2");

    let r = run(dir.path(), &["pna", "3", "2", "2"]);
    assert_eq!((r.code, verdict(&r)), (0, "member"));
    let r = run(dir.path(), &["pna", "3", "2", "19/10"]);
    assert_eq!((r.code, verdict(&r)), (1, "non_member"));
}

#[test]
fn pna_files_agree_with_the_pna_command() {
    let dir = workspace();
    assert_eq!(run(dir.path(), &["soks", "pna3_2.json", "2"]).code, 0);
    assert_eq!(run(dir.path(), &["soks", "pna3_1.9.json", "2"]).code, 1);
}

#[test]
fn eig_lists_spectrum() {
    let dir = workspace();
    let r = run(dir.path(), &["eig", "diag12.json"]);
    assert_eq!((r.code, verdict(&r)), (0, "psd"));
    let ev: Vec<f64> = serde_json::from_value(r.report.unwrap()["values"]["eigenvalues"].clone()).unwrap();
    assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
}

#[test]
fn starved_solver_is_inconclusive() {
    let dir = workspace();
    // singular tridiagonal psd: a member by chordality, so no certificate exists,
    // and three iterations do not finish the decomposition
    std::fs::write(dir.path().join("tri.json"), r#"{"n": 3, "rows": [[1, 1, 0], [1, 2, 1], [0, 1, 1]]}"#).unwrap();
    let r = run(dir.path(), &["check-fw", "tri.json", "2", "--max-iter", "3"]);
    assert_eq!((r.code, verdict(&r)), (2, "inconclusive"));
    let r = run(dir.path(), &["check-fw", "tri.json", "2"]);
    assert_eq!((r.code, verdict(&r)), (0, "member"));
}

#[test]
fn malformed_inputs_exit_64() {
    let dir = workspace();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    std::fs::write(dir.path().join("asym.json"), r#"{"n": 2, "rows": [[1, 2], [3, 1]]}"#).unwrap();
    std::fs::write(dir.path().join("short.json"), r#"{"n": 3, "rows": [[1, 0], [0, 1]]}"#).unwrap();
    for args in [
        vec!["check-fw", "bad.json", "2"],
        vec!["check-fw", "asym.json", "1"],
        vec!["check-dual", "short.json", "2"],
        vec!["check-fw", "missing.json", "2"],
        vec!["check-fw", "identity5.json", "0"],
        vec!["check-fw", "identity5.json", "6"],
        vec!["pna", "3", "4"],
        vec!["frobnicate"],
    ] {
        let r = run(dir.path(), &args);
        assert_eq!(r.code, 64, "{args:?}");
        assert!(r.report.is_none());
    }
}

#[test]
fn wrong_gram_exits_65() {
    let dir = workspace();
    let r = run(dir.path(), &["soks", "qM.json", "4", "--gram", "identity5.json"]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("fwcone:"));
}

#[test]
fn global_options_are_echoed() {
    let dir = workspace();
    let r = run(dir.path(), &["--threads", "2", "--seed", "7", "eig", "identity5.json"]);
    let rep = r.report.unwrap();
    assert_eq!((rep["threads"].as_u64(), rep["seed"].as_u64()), (Some(2), Some(7)));
}

#[test]
fn exact_dual_check_reads_rationals() {
    let dir = workspace();
    std::fs::write(dir.path().join("half.json"), r#"{"n": 2, "rows": [["1/2", "1/2"], ["1/2", "1/2"]]}"#).unwrap();
    let r = run(dir.path(), &["check-dual", "half.json", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report.unwrap()["values"]["exact"], true);
}

use std::path::PathBuf;
use std::process::{Command, Output};

use homdend_cli::format::{Structure, StructureFile};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn homdend(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homdend"))
        .args(args)
        .env_remove("HOMDEND_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn zero_structure_betti_table_is_the_cochain_dimension() {
    let file = path("zero-dend-2.json");
    let o = homdend(&[
        "--json",
        "cohomology",
        &file,
        "--flavor",
        "dend",
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = 2usize;
    for (n, row) in (1..=3usize).zip(v["degrees"].as_array().unwrap()) {
        let expected = n * d.pow(n as u32 + 1);
        assert_eq!(row["betti"], expected);
        assert_eq!(row["cochains"], expected);
        assert_eq!(row["representatives"].as_array().unwrap().len(), expected);
    }
}

#[test]
fn rota_baxter_file_checks_and_splits() {
    let file = path("rota-baxter-2.json");
    let o = homdend(&["check", &file]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rota-baxter operator: valid"));

    let o = homdend(&["from-rota-baxter", &file]);
    assert_eq!(o.status.code(), Some(0));
    let out = StructureFile::parse(&stdout(&o)).unwrap().load().unwrap();
    let Structure::Dend(a) = &out.structure else {
        panic!("expected hom-dend")
    };
    assert!(a.validate().is_valid());
    let prec = a.left().nonzero();
    assert_eq!(prec.len(), 1);
    assert_eq!(prec[0].0, [0, 0, 1]);
    assert!(prec[0].1.is_one());
    assert!(a.right().is_zero());
}

#[test]
fn failing_rota_baxter_exits_with_validation_code() {
    let o = homdend(&["check", &path("bad-rota-baxter-2.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rota-baxter at (e1, e1)"));
    let o = homdend(&["from-rota-baxter", &path("bad-rota-baxter-2.json")]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "validation");
    assert_eq!(
        err["error"]["violations"][0]["basis"],
        serde_json::json!([1, 1])
    );
}

#[test]
fn out_of_range_index_names_the_entry() {
    let o = homdend(&["check", &path("out-of-range.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["schema"], 1);
    assert_eq!(err["error"]["kind"], "parse");
    assert_eq!(err["error"]["context"], "prec[2]");
}

#[test]
fn trivial_deformation_is_valid_to_requested_order() {
    let o = homdend(&["deform", "check", &path("zero-dend-2.json"), "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid to order 3"));
}

#[test]
fn deformation_commands_on_a_nilpotent_structure() {
    let file = path("nil-dend-2.json");
    let o = homdend(&["--json", "deform", "classify", &file]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_cocycle"], true);
    let o = homdend(&["--json", "deform", "trivialize", &file]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["verdict"],
        if v["class"].is_null() {
            "trivial"
        } else {
            "nontrivial"
        }
    );
    let o = homdend(&["deform", "extend", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 2"));
}

#[test]
fn degree_cap_is_read_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_homdend"))
        .args(["cohomology", &path("zero-dend-2.json"), "--max-degree", "3"])
        .env("HOMDEND_DEGREE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("degree cap 2"));
}

#[test]
fn dualize_twice_is_the_identity() {
    let file = path("nil-dend-2.json");
    let once = homdend(&["dualize", &file]);
    assert_eq!(once.status.code(), Some(0));
    let tmp = std::env::temp_dir().join(format!("homdend-dual-{}.json", std::process::id()));
    std::fs::write(&tmp, &once.stdout).unwrap();
    let twice = homdend(&["dualize", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    let original = StructureFile::parse(&std::fs::read_to_string(&file).unwrap())
        .unwrap()
        .load()
        .unwrap();
    let back = StructureFile::parse(&stdout(&twice))
        .unwrap()
        .load()
        .unwrap();
    assert_eq!(back, original);
}

#[test]
fn output_flag_writes_the_same_report() {
    let tmp = std::env::temp_dir().join(format!("homdend-report-{}.json", std::process::id()));
    let o = homdend(&[
        "--json",
        "--output",
        tmp.to_str().unwrap(),
        "selftest",
        "--suite",
        "delta-squared",
        "--cases",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read(&tmp).unwrap();
    std::fs::remove_file(&tmp).ok();
    assert_eq!(written, o.stdout);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = homdend(&["selftest", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

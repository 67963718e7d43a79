use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use ut4k_cli::ThetaSpec;

const CUBIC: &str = "poly:-1,-1,0,1;interval:1,2";

fn ut4k(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ut4k")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json_of(args: &[&str]) -> (i32, String) {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let o = ut4k(&a);
    (code(&o), String::from_utf8(o.stdout).unwrap())
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, text: &str) -> Value {
    let doc: Value = serde_json::from_str(text).expect("valid JSON");
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{text}");
    doc
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["invariant", "--theta", CUBIC], 0),
        (&["classify", "--theta", CUBIC, "--eta", "elt:7,-4,-3"], 0),
        (&["classify", "--theta", CUBIC, "--eta", "elt:0,2,1"], 1),
        (&["classify", "--theta", "quad:(1+1*sqrt(2))/3", "--eta", "quad:(1+2*sqrt(2))/3"], 1),
        (&["classify", "--theta", "quad:(0+1*sqrt(2))", "--eta", "quad:(0+1*sqrt(3))"], 1),
        (&["equivalents", "--theta", CUBIC, "--bound", "50"], 4),
        (&["equivalents", "--theta", "quad:(0+1*sqrt(2))"], 0),
        (&["kgroups", "--preset", "ut4"], 0),
        (&["kgroups", "--preset", "heisenberg-step3"], 0),
        (&["invariant", "--theta", "poly:1,2"], 2),
        (&["invariant", "--theta", "nonsense"], 2),
        (&["invariant", "--theta", "poly:-2,0,1;interval:3,4"], 2),
        (&["invariant", "--theta", "elt:1,2"], 2),
        (&["kgroups"], 2),
        (&["invariant", "--theta", "poly:-4,0,1;interval:1,3"], 3),
        (&["invariant", "--theta", "quad:(1+1*sqrt(9))/2"], 3),
        (&["classify", "--theta", CUBIC, "--eta", "elt:3"], 3),
    ];
    for (args, expected) in cases {
        let o = ut4k(args);
        assert_eq!(code(&o), *expected, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn classify_certificate_in_json() {
    let (c, text) = json_of(&["classify", "--theta", CUBIC, "--eta", "elt:7,-4,-3"]);
    assert_eq!(c, 0);
    let doc: Value = serde_json::from_str(&text).unwrap();
    let res = &doc["outputs"]["result"];
    assert_eq!(res["verdict"], "isomorphic");
    assert_eq!(res["case"], "cubic");
    let m = res["certificate"]["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m[0], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn outputs_validate_against_schema() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["invariant", "--theta", CUBIC, "--approx"],
        &["invariant", "--theta", "quad:(1+1*sqrt(2))/3"],
        &["classify", "--theta", CUBIC, "--eta", "elt:0,-1,0"],
        &["classify", "--theta", "quad:(1+1*sqrt(2))/3", "--eta", "quad:(1+2*sqrt(2))/3"],
        &["equivalents", "--theta", CUBIC, "--bound", "100"],
        &["equivalents", "--theta", "poly:-1,1,0,0,1;interval:0,1"],
        &["kgroups", "--preset", "ut4"],
        &["kgroups", "--preset", "heisenberg-step3"],
    ];
    for args in runs {
        let (_, text) = json_of(args);
        let doc = assert_valid(&v, &text);
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn verify_passes_and_validates() {
    let (c, text) = json_of(&["verify"]);
    assert_eq!(c, 0);
    let doc = assert_valid(&validator(), &text);
    assert_eq!(doc["outputs"]["all_pass"], true);
    assert!(doc["warnings"][0].as_str().unwrap().contains("Z^6"));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["equivalents", "--theta", CUBIC, "--bound", "200"][..],
        &["invariant", "--theta", "quad:(1+1*sqrt(2))/3"][..],
        &["kgroups", "--preset", "ut4"][..],
    ] {
        let (_, a) = json_of(args);
        let (_, b) = json_of(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = ut4k(&["kgroups", "--preset", "ut4", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let human = String::from_utf8(o.stdout).unwrap();
    assert!(human.contains("K0 = coker(id - M0) ⊕ ker(id - M1) = Z^10"));
    assert!(human.contains("elapsed:"));
    let doc = assert_valid(&validator(), &std::fs::read_to_string(&path).unwrap());
    assert_eq!(doc["outputs"]["k0"]["rank"], 10);
}

#[test]
fn kgroups_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let torus = dir.path().join("alpha.json");
    std::fs::write(&torus, r#"[["1","0","0","0"],["-1","1","0","0"],["0","0","1","1"],["0","0","0","1"]]"#).unwrap();
    let (c, text) = json_of(&["kgroups", "--matrix", torus.to_str().unwrap()]);
    assert_eq!(c, 0);
    let doc = assert_valid(&validator(), &text);
    assert_eq!(doc["outputs"]["k0"]["rank"], 10);
    assert_eq!(doc["outputs"]["k1"]["rank"], 10);

    let pair = dir.path().join("pair.json");
    std::fs::write(&pair, r#"{"k0": [[1,0],[0,1]], "k1": [[1,2],[0,1]]}"#).unwrap();
    let (c, text) = json_of(&["kgroups", "--matrix", pair.to_str().unwrap()]);
    assert_eq!(c, 0);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["outputs"]["k1"]["torsion"], serde_json::json!(["2"]));

    let singular = dir.path().join("singular.json");
    std::fs::write(&singular, "[[2,0],[0,1]]").unwrap();
    assert_eq!(code(&ut4k(&["kgroups", "--matrix", singular.to_str().unwrap()])), 2);
    assert_eq!(code(&ut4k(&["kgroups", "--matrix", "/nonexistent/m.json"])), 2);
}

#[test]
fn approx_is_labelled() {
    let o = ut4k(&["invariant", "--theta", CUBIC, "--approx"]);
    let human = String::from_utf8(o.stdout).unwrap();
    assert!(human.contains("θ ≈ 1.32471795724"));
    assert!(human.contains("not authoritative"));
    let (_, plain) = json_of(&["invariant", "--theta", CUBIC]);
    assert!(!plain.contains("approx"));
}

proptest! {
    #[test]
    fn quad_spec_round_trips(x in -50i64..50, y in 1i64..50, neg in any::<bool>(), z in 1i64..50, r in 2i64..60) {
        let y = if neg { -y } else { y };
        let text = format!("quad:({x}{}{}*sqrt({r}))/{z}", if y < 0 { '-' } else { '+' }, y.abs());
        if let Ok(spec) = ThetaSpec::parse(&text) {
            let again = ThetaSpec::parse(&spec.to_string()).unwrap();
            prop_assert_eq!(&again, &spec);
            prop_assert_eq!(again.to_string(), spec.to_string());
        }
    }

    #[test]
    fn elt_spec_round_trips(c in prop::collection::vec((-1000i64..1000, 1i64..30), 1..5)) {
        let text = format!("elt:{}", c.iter().map(|(n, d)| format!("{n}/{d}")).collect::<Vec<_>>().join(","));
        let spec = ThetaSpec::parse(&text).unwrap();
        prop_assert_eq!(ThetaSpec::parse(&spec.to_string()).unwrap(), spec);
    }
}

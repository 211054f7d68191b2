use std::io::Write;
use std::process::Command;

use kempf::json::{
    CharacterJson, DestabilizerJson, FiltrationJson, HiggsJson, RootSystemJson, SectionsJson, SeparabilityJson,
    StrataJson,
};
use serde_json::{json, Value};

fn kempf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kempf")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out) = kempf(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).expect("valid JSON")
}

#[test]
fn documented_examples() {
    assert_eq!(ok_json(&["bound", "tensor", "--n1", "2", "--n2", "2", "--p", "3"]), json!({ "ok": true }));
    assert_eq!(ok_json(&["bound", "tensor", "--n1", "3", "--n2", "3", "--p", "3"]), json!({ "ok": false }));
    assert_eq!(
        ok_json(&["instab", "semistable", "--type", "A1", "--state", "[[1,1]],[[-1,1]]"]),
        json!({ "semistable": true })
    );
    let v = ok_json(&["sep", "index", "--type", "A1", "--char", "adj"]);
    assert_eq!((&v["psi"], &v["p_t"], &v["height"]), (&json!(2), &json!(2), &json!([2, 1])));
}

#[test]
fn outputs_decode_into_domain_types() {
    let v = ok_json(&["root", "show", "--type", "B3", "--basis", "root"]);
    assert_eq!(serde_json::from_value::<RootSystemJson>(v).unwrap().decode().unwrap().label(), "B3");

    let v = ok_json(&["char", "build", "--type", "A2", "--char", "sym(2, std)"]);
    let c = serde_json::from_value::<CharacterJson>(v.clone()).unwrap().decode().unwrap();
    assert_eq!(c.dim(), 6);
    // feeding a character back in as JSON reproduces it
    let again = ok_json(&["char", "build", "--char", &v.to_string()]);
    assert_eq!(again, v);

    let v = ok_json(&["instab", "optimal", "--type", "A2", "--state", "[[1,1],[0,1]],[[-1,1],[1,1]]", "--certificate"]);
    assert_eq!(v["verified"], json!(true));
    assert_eq!(v["certificate"]["q_value"], json!([1, 6]));
    serde_json::from_value::<DestabilizerJson>(v).unwrap().decode().unwrap();

    let v = ok_json(&["instab", "strata", "--type", "A1", "--char", "std", "--state", "[[-1,1]]"]);
    let (b, stratum) = serde_json::from_value::<StrataJson>(v).unwrap().decode().unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(stratum.unwrap().coords()[0], kempf_core::rational::qi(1));

    let v = ok_json(&["instab", "filtration", "--type", "A2", "--char", "std", "--lambda", "[[1,1],[0,1]]"]);
    let levels: Vec<Value> = v["levels"].as_array().unwrap().iter().map(|l| l["level"].clone()).collect();
    assert_eq!(levels, [json!([2, 3]), json!([-1, 3])]);
    serde_json::from_value::<FiltrationJson>(v).unwrap().decode().unwrap();

    let v = ok_json(&["sep", "index", "--type", "A2", "--char", "std"]);
    serde_json::from_value::<SeparabilityJson>(v).unwrap().decode().unwrap();
}

#[test]
fn higgs_payloads_inline_and_from_file() {
    let nilpotent = r#"{"dim_v":2,"dim_u":1,"theta":[[[[0,1],[1,1]],[[0,1],[0,1]]]]}"#;
    assert_eq!(ok_json(&["higgs", "check", "--higgs", nilpotent]), json!({ "integrable": true }));
    let v = ok_json(&["higgs", "sections", "--higgs", nilpotent]);
    let sections = serde_json::from_value::<SectionsJson>(v).unwrap().decode().unwrap();
    assert_eq!(sections.len(), 1);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(nilpotent.as_bytes()).unwrap();
    let at = format!("@{}", file.path().display());
    let dual = ok_json(&["higgs", "dual", "--higgs", &at]);
    let h = serde_json::from_value::<HiggsJson>(dual).unwrap().decode().unwrap();
    assert_eq!(h.components()[0][(1, 0)], kempf_core::rational::qi(-1));
    let t = ok_json(&["higgs", "tensor", "--higgs", &at, "--other", nilpotent]);
    assert_eq!(t["dim_v"], json!(4));

    let pair = r#"{"dim_v":2,"dim_u":2,"theta":[[[[1,1],[0,1]],[[0,1],[0,1]]],[[[0,1],[1,1]],[[0,1],[0,1]]]]}"#;
    assert_eq!(ok_json(&["higgs", "check", "--higgs", pair]), json!({ "integrable": false }));
}

#[test]
fn error_objects_and_exit_codes() {
    let (code, out) = kempf(&["instab", "semistable", "--type", "A2", "--state", "[[1,1]]"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], json!("dimension_mismatch"));

    let (code, out) = kempf(&["instab", "strata", "--type", "A2", "--char", "adj", "--guard", "10"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], json!("guard_exceeded"));

    let (code, out) = kempf(&["sep", "index", "--type", "A1", "--char", "weights[[1/2]]"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], json!("non_integral_weight"));

    let (code, out) = kempf(&["char", "build", "--type", "A2", "--char", "ext(2 std)"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], json!("parse_error"));

    let (code, _) = kempf(&["sep", "index", "--type", "A1", "--char", "adj", "--convention", "literal"]);
    assert_eq!(code, 3);

    assert_eq!(kempf(&["instab"]).0, 2);
    assert_eq!(kempf(&["sep", "index", "--char", "std"]).0, 2);
    assert_eq!(kempf(&["root", "show", "--type", "A2", "--format", "yaml"]).0, 2);
}

#[test]
fn selftest_passes() {
    let v = ok_json(&["selftest", "--cases", "20"]);
    assert_eq!(v["failed"], json!(0));
}

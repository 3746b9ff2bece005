use std::process::Command;

use legdef::cli::run_args;
use legdef::contact::ContactTransform;
use legdef::exactalg::parse_poly_in;
use legdef::series::{substitute, TruncSeries};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let o = run_args(std::iter::once("legdef").chain(args.iter().copied()));
    (o.code, o.stdout, o.stderr)
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["newton", "--equation", "y^3 - x^10"]).0, 0);
    let (code, _, err) = run(&["classify", "--equation", "y^^2"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["error"], "parse");
    assert_eq!(run(&["deform-basis", "--equation", "y^2 - x^3"]).0, 3);
    assert_eq!(run(&["semiuniversal", "--equation", "y^2 - x^2*y"]).0, 3);
    assert_eq!(
        run(&["contact-act", "--equation", "y^3 - x^7", "--transform", r#"{"kind":"scaling","lambda":"0","mu":"1"}"#])
            .0,
        3
    );
    assert_eq!(run(&["generic"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["paper-examples", "--id", "no-such-id"]).0, 2);
    assert_eq!(run(&["--format", "singular", "classify", "--equation", "y^2 - x^3"]).0, 3);
}

#[test]
fn json_envelope_is_sorted_and_deterministic() {
    let args = ["semigroup", "--conormal", "--equation", "y^3 - x^10"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["semigroups"][0]["generators"], serde_json::json!([3, 7]));
    assert_eq!(v["semigroups"][0]["conductor"], 12);
}

#[test]
fn rationals_are_strings() {
    let v = json(&["conormal", "--equation", "y^3 - x^10"]);
    assert_eq!(v["branches"][0]["p"], "10/3*t^7");
    assert!(v["positions"][0]["slope"].is_null() || v["positions"][0]["slope"].is_string());
}

#[test]
fn contact_act_round_trip() {
    let t = r#"{"kind":"vertical","alpha":"p","beta":"p^2/2","gamma":"0"}"#;
    let v = json(&["contact-act", "--equation", "y^3 - x^7", "--transform", t]);
    assert_eq!(v["image"][0]["x"], "t^3 + 7/3*t^4");
    assert_eq!(v["image"][0]["y"], "t^7 + 49/18*t^8");
    assert_eq!(v["equisingularity"]["preserved"], true);
    // the echoed transform parses back to the same map
    let echoed = v["transform"].to_string();
    assert_eq!(ContactTransform::parse(&echoed).unwrap(), ContactTransform::parse(t).unwrap());
    let w = json(&["contact-act", "--equation", "y^3 - x^7", "--transform", &echoed]);
    assert_eq!(v, w);
    // the image equation vanishes on the image branch
    let f = parse_poly_in(v["image_equation"].as_str().unwrap(), &["x", "y"]).unwrap();
    let x = TruncSeries::parse("t^3 + 7/3*t^4", "t", None).unwrap();
    let y = TruncSeries::parse("t^7 + 49/18*t^8", "t", None).unwrap();
    assert!(substitute(&f, &[("x", &x), ("y", &y)]).unwrap().is_zero_known());
    let b = json(&["semigroup", "--branches", r#"[{"x":"t^3 + 7/3*t^4","y":"t^7 + 49/18*t^8"}]"#]);
    assert_eq!(b["semigroups"][0]["char_exponents"], serde_json::json!([3, 7]));
}

#[test]
fn semiuniversal_reparses() {
    let v = json(&["semiuniversal", "--equation", "(y^3+x^7)*(y^3+x^10)"]);
    assert_eq!(v["dimension"], 3);
    let g = parse_poly_in(v["G"].as_str().unwrap(), &["x", "y", "s1", "s2", "s3"]).unwrap();
    assert_eq!(g.num_terms(), 7);
    let (code, s, _) = run(&["--format", "singular", "semiuniversal", "--equation", "(y^3+x^7)*(y^3+x^10)"]);
    assert_eq!(code, 0);
    assert!(s.starts_with("ring r=0,(x,y,s1,s2,s3),ds;"));
}

#[test]
fn deform_basis_kinds() {
    let mu = json(&["deform-basis", "--equation", "(y^3+x^7)*(y^3+x^10)"]);
    let arrow = json(&["deform-basis", "--equation", "(y^3+x^7)*(y^3+x^10)", "--kind", "arrow"]);
    assert_eq!(mu["dimension"], 3);
    assert_eq!(arrow["dimension"], 7);
    assert_eq!(arrow["conditions"], serde_json::json!(["3*i + 7*j >= 42", "3*i + 10*j >= 51"]));
}

#[test]
fn equisingular_comparison() {
    let v = json(&["equisingular", "--equation", "y^3 - x^7", "--other-branches", r#"[{"x":"t^3","y":"t^7 + t^8"}]"#]);
    assert_eq!(v["equisingular"], true);
    let w = json(&["equisingular", "--equation", "y^3 - x^7", "--other-equation", "y^3 - x^8"]);
    assert_eq!(w["equisingular"], false);
}

#[test]
fn generic_with_tangent_normalization() {
    let v = json(&["generic", "--equation", "(y - x)^3 - x^10", "--normalize-tangent"]);
    assert_eq!(v["generic"], true);
    let w = json(&["generic", "--equation", "y^3 - x^5"]);
    assert_eq!(w["generic"], false);
}

#[test]
fn relative_conormal_singular() {
    let (code, s, _) =
        run(&["--format", "singular", "conormal", "--equation", "z^2+y^3+s*x^4", "--space", "x,y,z", "--params", "s"]);
    assert_eq!(code, 0);
    assert!(s.contains("ideal J="));
}

#[test]
fn examples_all_pass() {
    let v = json(&["paper-examples"]);
    assert_eq!(v["all_pass"], true);
    let ids = json(&["paper-examples", "--list"]);
    assert_eq!(ids["items"].as_array().unwrap().len(), 9);
}

#[test]
fn binary_and_environment() {
    let exe = env!("CARGO_BIN_EXE_legdef");
    let out = Command::new(exe).args(["newton", "--equation", "y^2 - x^5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["faces"][0]["d"], 10);
    let out = Command::new(exe)
        .args(["conormal", "--equation", "y^2 - x^5"])
        .env("LEGDEF_TRUNCATION", "ten")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe).args(["deform-basis", "--equation", "y^2-x^3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

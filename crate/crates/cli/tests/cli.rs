use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

use qmilnor::batch::run_batch;
use qmilnor::GwElement;

fn qmilnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmilnor")).args(args).env_remove("QMILNOR_ASCII").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qmilnor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses the JSON report and checks it against `schema_name`.
fn json_report(o: &Output, schema_name: &str) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}\n{v:#}");
    v
}

fn gw(v: &Value) -> GwElement {
    GwElement::from_json(v).unwrap()
}

fn odp() -> Value {
    json!({"polynomial": "x^2 - y^2", "vars": "x,y"})
}

#[test]
fn milnor_of_the_cusp() {
    let o = qmilnor(&["milnor", "--vars", "x,y", "x^2 - y^3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("μ^q = ⟨1⟩ + ⟨−1⟩"), "{text}");
    assert!(text.contains("rank: 2"), "{text}");
    let v = json_report(&qmilnor(&["--json", "milnor", "--vars", "x,y", "x^2 - y^3"]), "milnor-report.schema.json");
    assert!(gw(&v["form"]).is_equal(&GwElement::from_ints(&[1, -1], &[])).unwrap());
    assert_eq!(v["milnor_number"], json!(2));
}

#[test]
fn conductor_reports() {
    let v = json_report(
        &qmilnor(&["--json", "conductor", "--vars", "x,y", "--weights", "3,2", "--degree", "6", "x^2 - y^3"]),
        "conductor-report.schema.json",
    );
    // ⟨36⟩ = ⟨1⟩, so the right side is −μ^q
    assert!(gw(&v["rhs"]).is_equal(&GwElement::from_ints(&[], &[1, -1])).unwrap());
    assert_eq!(v["verdicts"], json!({"gw": "skipped", "rank": true}));
    assert_eq!(v["rank"], json!({"lhs": -2, "rhs": -2}));

    let v =
        json_report(&qmilnor(&["--json", "conductor", "--vars", "x,y", "x^2 - y^2"]), "conductor-report.schema.json");
    assert!(gw(&v["rhs"]).is_equal(&GwElement::from_ints(&[], &[-1])).unwrap());
    assert_eq!(v["verdicts"], json!({"gw": true, "rank": true}));

    let text = stdout(&qmilnor(&["conductor", "--vars", "x,y,z", "x^2 + y^2 - z^2"]));
    assert!(text.contains("verdicts: GW pass, rank pass"), "{text}");
    let text = stdout(&qmilnor(&["conductor", "--vars", "x,y,z", "x^2 + y^2 + z^2"]));
    assert!(text.contains("verdicts: GW skipped, rank pass"), "{text}");
}

#[test]
fn monodromy_of_quadratic_singularities() {
    let text = stdout(&qmilnor(&["monodromy", "--dimension", "2", "--quadratic"]));
    assert!(text.contains("variation: zero map"), "{text}");
    for n in 1..=6 {
        let v = json_report(
            &qmilnor(&["--json", "monodromy", "--dimension", &n.to_string(), "--quadratic"]),
            "monodromy-report.schema.json",
        );
        if n % 2 == 0 {
            assert_eq!(v["variation"]["kind"], json!("zero"));
        } else {
            assert_eq!(v["variation"]["scalar"], json!(-1));
        }
    }
    let v = json_report(
        &qmilnor(&["--json", "monodromy", "--dimension", "2", "--degree", "3"]),
        "monodromy-report.schema.json",
    );
    assert_eq!(v["scalar"], json!("-1/3"));
    let v = json_report(&qmilnor(&["--json", "monodromy", "--kummer"]), "monodromy-report.schema.json");
    assert_eq!(v["square_is_zero"], json!(true));
    assert_eq!(qmilnor(&["monodromy", "--dimension", "2"]).status.code(), Some(2));
}

#[test]
fn euler_and_gw_reports() {
    let v = json_report(&qmilnor(&["--json", "euler", "--degree", "3", "--ambient", "2"]), "euler-report.schema.json");
    assert_eq!(v["euler"], json!(0));
    let v = json_report(&qmilnor(&["--json", "euler", "--degree", "2", "--ambient", "3"]), "euler-report.schema.json");
    assert_eq!(gw(&v["chi_split_quadric"]).rank(), 4);

    let v = json_report(&qmilnor(&["--json", "gw", "<36> - <1> - <-36>", "--equal", "-<-1>"]), "gw-report.schema.json");
    assert_eq!(v["equal"], json!(true));
    let v =
        json_report(&qmilnor(&["--json", "gw", "--field", "Q(t)", "<3*t^2>", "--specialize"]), "gw-report.schema.json");
    assert_eq!(gw(&v["specialization"]), GwElement::int(3));
    let v = json_report(&qmilnor(&["--json", "gw", "--transfer", "t - 5", "<t>"]), "gw-report.schema.json");
    assert_eq!(gw(&v["transfer"]), GwElement::int(5));
}

#[test]
fn batch_sums_in_input_order() {
    let cases = [
        (json!([]), GwElement::from_ints(&[], &[])),
        (json!([odp()]), GwElement::from_ints(&[], &[-1])),
        (json!([odp(), odp()]), GwElement::from_ints(&[], &[-1, -1])),
    ];
    for (input, expected) in cases {
        let o = with_stdin(&["--json", "batch", "-"], &input.to_string());
        assert!(o.status.success());
        let v = json_report(&o, "batch-report.schema.json");
        assert!(gw(&v["sum"]).is_equal(&expected).unwrap(), "{v}");
    }

    // a mix whose per-point costs differ, against the sequential library path
    let mut points = Vec::new();
    for k in 0..12 {
        points.push(match k % 3 {
            0 => json!({"polynomial": format!("x^2 - {}*y^2", k + 1), "vars": ["x", "y"]}),
            1 => json!({"polynomial": "x^3 + y^3 + z^3", "vars": "x,y,z", "residue_field": "t^2 - 3"}),
            _ => json!({"polynomial": "x^2 - y^5", "vars": "x,y", "weights": [5, 2], "degree": 10}),
        });
    }
    let input = Value::Array(points);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(input.to_string().as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let v = json_report(&qmilnor(&["--json", "batch", path]), "batch-report.schema.json");
    let sequential = run_batch(&input).unwrap().to_json();
    assert_eq!(v, sequential);
    let indices: Vec<u64> = v["points"].as_array().unwrap().iter().map(|p| p["index"].as_u64().unwrap()).collect();
    assert_eq!(indices, (0..12).collect::<Vec<_>>());
}

#[test]
fn batch_errors_carry_the_index() {
    let bad_key = json!([odp(), {"polynomial": "x^2", "vars": "x", "colour": 1}]);
    let o = with_stdin(&["--json", "batch", "-"], &bad_key.to_string());
    assert_eq!(o.status.code(), Some(2));
    let v = json_report(&o, "error.schema.json");
    assert_eq!(v["error"]["index"], json!(1));

    let degenerate = json!([odp(), odp(), {"polynomial": "x^2", "vars": "x,y"}]);
    let o = with_stdin(&["--json", "batch", "-"], &degenerate.to_string());
    assert_eq!(o.status.code(), Some(1));
    let v = json_report(&o, "error.schema.json");
    assert_eq!(
        v["error"],
        json!({
            "kind": "not-isolated",
            "index": 2,
            "message": "batch entry 2: singularity is not isolated: the Jacobian quotient is infinite-dimensional",
        })
    );

    assert_eq!(with_stdin(&["batch", "-"], "{not json").status.code(), Some(2));
    assert_eq!(qmilnor(&["batch", "/nonexistent/points.json"]).status.code(), Some(2));
}

#[test]
fn exit_codes_and_error_objects() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["--json", "milnor", "--vars", "x,y", "x^2 +* y"], 2, "syntax"),
        (&["--json", "milnor", "--vars", "x", "x^2 + y^2"], 2, "unknown-variable"),
        (&["--json", "milnor", "--vars", "x,y", "x*y^2"], 1, "not-isolated"),
        (&["--json", "gw", "--field", "Q(t)", "<t>", "--equal", "<1>"], 1, "unsupported"),
        (&["--json", "gw", "--field", "Fp:9", "<1>"], 2, "invalid-prime"),
        (
            &["--json", "conductor", "--vars", "x,y", "--weights", "2,2", "--degree", "6", "x^3 - y^3"],
            1,
            "inadmissible-weights",
        ),
        (&["--json", "euler", "--degree", "1", "--ambient", "2"], 2, "invalid-input"),
        (&["--json", "milnor", "x^2"], 2, "usage"),
        (&["--json", "frobnicate"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let o = qmilnor(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stdout(&o));
        let v = json_report(&o, "error.schema.json");
        assert_eq!(v["error"]["kind"], json!(kind), "{args:?}");
    }
    let o = qmilnor(&["milnor", "--vars", "x", "x^2 + y"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unknown variable `y`") && err.contains("        ^"), "{err}");
    assert_eq!(qmilnor(&["--help"]).status.code(), Some(0));
}

#[test]
fn ascii_mode_is_plain_ascii() {
    let runs: &[&[&str]] = &[
        &["milnor", "--vars", "x,y", "x^2 - y^3"],
        &["conductor", "--vars", "x,y,z", "x^3 + y^3 + z^3"],
        &["monodromy", "--dimension", "2", "--quadratic"],
        &["monodromy", "--dimension", "3", "--degree", "2"],
        &["euler", "--degree", "2", "--ambient", "4"],
    ];
    for args in runs {
        let o = Command::new(env!("CARGO_BIN_EXE_qmilnor")).args(*args).env("QMILNOR_ASCII", "1").output().unwrap();
        let text = stdout(&o);
        assert!(text.is_ascii(), "{args:?}: {text}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_qmilnor"))
        .args(["milnor", "--vars", "x,y", "x^2 - y^3"])
        .env("QMILNOR_ASCII", "1")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("mu^q = <1> + <-1>"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let runs: &[&[&str]] = &[
        &["--json", "milnor", "--vars", "x,y,z", "x^3 + y^3 + z^3"],
        &["--json", "conductor", "--vars", "x,y", "--weights", "5,2", "--degree", "10", "x^2 - y^5"],
        &["conductor", "--vars", "x,y,z", "x^2 - y^2 + z^2"],
        &["--json", "monodromy", "--dimension", "5", "--quadratic"],
        &["--json", "euler", "--degree", "4", "--ambient", "3"],
    ];
    for args in runs {
        let a = qmilnor(args);
        let b = qmilnor(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let input =
        json!([odp(), {"polynomial": "x^3 - y^3", "vars": "x,y", "residue_field": "t^3 - 2"}, odp()]).to_string();
    let a = with_stdin(&["--json", "batch", "-"], &input);
    let b = with_stdin(&["--json", "batch", "-"], &input);
    assert_eq!(a.stdout, b.stdout);
}

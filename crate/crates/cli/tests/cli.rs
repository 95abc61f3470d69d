use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirac-bands"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (String, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

/// Checks the subset of JSON Schema used by the shipped schema: `type`,
/// `enum`, `required`, `properties`, `items`.
fn check_schema(value: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: bad type in schema")),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: expected {types:?}, got {value}"));
        }
    }
    if let Some(Value::Array(options)) = schema.get("enum") {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Value::Object(obj) = value {
        if let Some(Value::Array(req)) = schema.get("required") {
            for key in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing {key}"));
                }
            }
        }
        if let Some(Value::Object(props)) = schema.get("properties") {
            for (k, sub) in props {
                if let Some(v) = obj.get(k) {
                    check_schema(v, sub, &format!("{path}.{k}"))?;
                }
            }
        }
    }
    if let (Value::Array(items), Some(sub)) = (value, schema.get("items")) {
        for (i, v) in items.iter().enumerate() {
            check_schema(v, sub, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn schema_checker_rejects_bad_documents() {
    let s = schema();
    let bad: Value = serde_json::json!({"params": {}, "data": [], "meta": {"version": "0"}});
    assert!(check_schema(&bad, &s, "$").is_err());
    let wrong_enum: Value = serde_json::json!({
        "params": {"mass": 2, "lambda": 1, "gamma": 1.7, "half_period": 1, "alpha": -0.3},
        "data": [],
        "meta": {"version": "0", "command": "plot"}
    });
    assert!(check_schema(&wrong_enum, &s, "$").is_err());
}

#[test]
fn every_json_artifact_matches_schema() {
    let s = schema();
    for args in [
        vec!["potential", "--format", "json", "--samples", "11"],
        vec!["lyapunov", "--format", "json", "--samples", "21"],
        vec!["bands", "--emin", "-7", "--verify"],
        vec!["dispersion", "--format", "json", "--samples", "9"],
        vec!["verify"],
    ] {
        let doc: Value = serde_json::from_str(&stdout(&args)).unwrap();
        check_schema(&doc, &s, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn potential_profile() {
    let (header, rows) = csv_rows(&stdout(&["potential", "--samples", "601"]));
    assert_eq!(header, "x,s1");
    assert_eq!(rows.len(), 601);
    let xs: Vec<f64> = rows.iter().map(|r| f(&r[0])).collect();
    // three periods of length 2
    assert!(xs[600] - xs[0] >= 6.0 - 1e-12);
    for r in &rows {
        let x = f(&r[0]);
        if (x / 2.0).fract().abs() < 1e-12 {
            assert_eq!(f(&r[1]), -2.0, "minimum at lattice point {x}");
        }
        assert!(f(&r[1]) >= -2.0);
    }
    // S₁(a⁻) and S₁(−a⁺) agree exactly
    let edge = rows.iter().find(|r| f(&r[0]) == 1.0).unwrap();
    let mirror = rows.iter().find(|r| f(&r[0]) == -1.0).unwrap();
    assert_eq!(edge[1], mirror[1]);
}

#[test]
fn lyapunov_trace_reproduces_figure_data() {
    let text = stdout(&["lyapunov", "--emin", "-7", "--emax", "7", "--samples", "1401"]);
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, "e,d,regime");
    assert_eq!(rows.len(), 1401);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[1], rows[1400 - i][1], "D even at row {i}");
        let e = f(&r[0]);
        let expected = if e.abs() < 2.0 {
            "evanescent"
        } else if e.abs() > 2.0 {
            "propagating"
        } else {
            "threshold"
        };
        assert_eq!(r[2], expected, "E = {e}");
    }
}

/// The reference lattice has nine crossings of |D| = 2 in [0, 7], not eight;
/// the ninth gap is [6.3519, 6.3654].
#[test]
fn lyapunov_crossings_on_zero_to_seven() {
    let (_, rows) = csv_rows(&stdout(&["lyapunov", "--samples", "70001"]));
    let crossings = rows
        .windows(2)
        .filter(|w| (f(&w[0][1]).abs() < 2.0) != (f(&w[1][1]).abs() < 2.0))
        .count();
    assert_eq!(crossings, 9);
}

#[test]
fn lyapunov_marks_threshold_limit() {
    let doc: Value = serde_json::from_str(&stdout(&[
        "lyapunov",
        "--emin",
        "1",
        "--emax",
        "3",
        "--samples",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    let rows = doc["data"].as_array().unwrap();
    assert_eq!(rows[1]["regime"], "threshold");
    assert_eq!(rows[1]["limit"], true);
    assert_eq!(rows[0]["limit"], true); // E = λ = 1
    assert_eq!(rows[2]["limit"], false);
}

#[test]
fn band_table_regression_and_mirror() {
    let doc: Value = serde_json::from_str(&stdout(&["bands", "--emin", "-7", "--emax", "7", "--verify"])).unwrap();
    let edges: Vec<f64> = doc["data"]["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let pos: Vec<f64> = edges.iter().copied().filter(|e| *e > 0.0).collect();
    let neg: Vec<f64> = edges.iter().copied().filter(|e| *e < 0.0).collect();
    let expected = [0.738, 1.381, 2.164, 3.274, 3.335, 4.802, 4.827, 6.352];
    for (got, want) in pos.iter().zip(expected) {
        assert!((got - want).abs() < 2e-3, "{got} vs {want}");
    }
    assert_eq!(neg.len(), pos.len());
    for (n, p) in neg.iter().rev().zip(&pos) {
        assert_eq!(-n, *p);
    }
    let v = &doc["data"]["verification"];
    assert_eq!(v["passed"], true);
    for e in v["edges"].as_array().unwrap() {
        assert!(e["residual"].as_f64().unwrap() < 1e-6);
    }
    assert!((doc["params"]["gamma"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-11);
}

#[test]
fn bands_as_csv() {
    let (header, rows) = csv_rows(&stdout(&["bands", "--format", "csv", "--emax", "3"]));
    assert_eq!(header, "e_lo,e_hi,kind");
    let kinds: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(kinds, ["forbidden", "allowed", "forbidden", "allowed"]);
}

#[test]
fn dispersion_lowest_band() {
    let (header, rows) = csv_rows(&stdout(&["dispersion", "--samples", "101"]));
    assert_eq!(header, "k,e");
    assert_eq!(rows.len(), 101);
    let k: Vec<f64> = rows.iter().map(|r| f(&r[0])).collect();
    let e: Vec<f64> = rows.iter().map(|r| f(&r[1])).collect();
    assert_eq!(k[0], 0.0);
    assert!((k[100] - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert!(k.windows(2).all(|w| w[1] > w[0]));
    assert!((e[0] - 0.738).abs() < 2e-3 && (e[100] - 1.381).abs() < 2e-3);
}

#[test]
fn dispersion_with_gamma_parameter() {
    let doc: Value = serde_json::from_str(&stdout(&["dispersion", "--gamma", "1", "--format", "json"])).unwrap();
    assert!((doc["params"]["lambda"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-11);
    assert!((doc["data"]["e_lo"].as_f64().unwrap() - 1.58317).abs() < 1e-4);
}

#[test]
fn artifacts_are_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, ext) in [
        ("potential", "csv"),
        ("lyapunov", "csv"),
        ("bands", "json"),
        ("dispersion", "csv"),
    ] {
        let a = dir.path().join(format!("{cmd}-a.{ext}"));
        let b = dir.path().join(format!("{cmd}-b.{ext}"));
        for p in [&a, &b] {
            let out = run(&[cmd, "--out", p.to_str().unwrap()]);
            assert!(out.status.success());
            assert!(out.stdout.is_empty());
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{cmd} differs between runs");
        assert!(!x.contains(&b'\r'));
    }
}

#[test]
fn tabulated_potential_goes_through_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s1.csv");
    // the soliton itself, sampled finely over one cell
    let (g, m, lambda) = (3f64.sqrt(), 2.0, 1.0);
    let mut text = String::from("x,s\n");
    for i in 0..=4000 {
        let x = -1.0 + i as f64 / 2000.0;
        text.push_str(&format!("{x},{}\n", -2.0 * g * g / (m + lambda * (2.0 * g * x).cosh())));
    }
    std::fs::write(&path, text).unwrap();
    let args = ["lyapunov", "--emin", "2.5", "--emax", "5.5", "--samples", "4"];
    let (_, closed) = csv_rows(&stdout(&args));
    let mut with_file = args.to_vec();
    with_file.extend(["--potential-file", path.to_str().unwrap()]);
    let (header, numeric) = csv_rows(&stdout(&with_file));
    assert_eq!(header, "e,d,regime");
    for (a, b) in closed.iter().zip(&numeric) {
        assert!((f(&a[1]) - f(&b[1])).abs() < 1e-5, "{a:?} vs {b:?}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["verify"]), 0);
    assert_eq!(code(&["verify", "--alpha-scale", "1.1"]), 3);
    assert_eq!(code(&["verify", "--alpha-scale", "0.9"]), 3);
    assert_eq!(code(&["bands", "--lambda", "3"]), 1);
    assert_eq!(code(&["bands", "--lambda", "1", "--gamma", "1"]), 1);
    assert_eq!(code(&["lyapunov", "--emin", "3", "--emax", "1"]), 1);
    assert_eq!(code(&["potential", "--samples", "1"]), 1);
    assert_eq!(code(&["dispersion", "--band-index", "99"]), 1);
    assert_eq!(code(&["bands", "--tol", "0"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["lyapunov", "--potential-file", "/nonexistent/file.csv"]), 2);
    assert_eq!(code(&["potential", "--out", "/nonexistent/dir/out.csv"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn failed_verification_still_writes_report() {
    let out = run(&["verify", "--alpha-scale", "1.1"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["data"]["passed"], false);
    let regression = doc["data"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "band_edge_regression")
        .unwrap();
    assert_eq!(regression["status"], "fail");
    assert!((doc["params"]["alpha_scale"].as_f64().unwrap() - 1.1).abs() < 1e-12);
}

#[test]
fn malformed_potential_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "x,s\n0,1\n1,oops\n").unwrap();
    let out = run(&["lyapunov", "--potential-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.csv") && err.contains("row 3"), "{err}");
}

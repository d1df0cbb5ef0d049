//! Checks command output against the JSON schemas in `schema/v1`.
//!
//! The validator covers the keywords those schemas use: `type`, `enum`,
//! `const`, `required`, `properties`, `additionalProperties: false`,
//! `items`, `minItems`/`maxItems`, `minimum`/`maximum`/`exclusiveMinimum`,
//! `pattern`, `oneOf` and `$ref` (local or `file#/pointer`).

use std::path::PathBuf;
use std::process::Command;

use regex::Regex;
use serde_json::Value;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/v1")
}

fn load(file: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(file)).unwrap_or_else(|e| panic!("{file}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{file}: {e}"))
}

fn resolve(file: &str, reference: &str) -> (String, Value) {
    let (target, pointer) = reference.split_once('#').unwrap_or((reference, ""));
    let file = if target.is_empty() { file.to_string() } else { target.to_string() };
    let root = load(&file);
    let node = root.pointer(pointer).unwrap_or_else(|| panic!("{file}: no {pointer}")).clone();
    (file, node)
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        other => panic!("unsupported type {other}"),
    }
}

fn validate(file: &str, schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    let err = |msg: String| Err(format!("{path}: {msg}"));
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let (f, s) = resolve(file, r);
        return validate(&f, &s, v, path);
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        if !type_matches(ty, v) {
            return err(format!("expected {ty}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return err(format!("{v} not in {options:?}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            return err(format!("{v} != {c}"));
        }
    }
    if let Some(n) = v.as_f64() {
        if schema.get("minimum").and_then(Value::as_f64).is_some_and(|m| n < m)
            || schema.get("maximum").and_then(Value::as_f64).is_some_and(|m| n > m)
            || schema.get("exclusiveMinimum").and_then(Value::as_f64).is_some_and(|m| n <= m)
        {
            return err(format!("{n} out of range"));
        }
    }
    if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).expect("valid pattern").is_match(s) {
            return err(format!("{s:?} does not match {p}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return err(format!("missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, child) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(file, s, child, &format!("{path}/{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return err(format!("unexpected property {k}"));
                }
                None => {}
            }
        }
    }
    if let Some(items) = v.as_array() {
        if schema.get("minItems").and_then(Value::as_u64).is_some_and(|m| (items.len() as u64) < m)
            || schema.get("maxItems").and_then(Value::as_u64).is_some_and(|m| (items.len() as u64) > m)
        {
            return err(format!("{} items", items.len()));
        }
        if let Some(s) = schema.get("items") {
            for (k, item) in items.iter().enumerate() {
                validate(file, s, item, &format!("{path}/{k}"))?;
            }
        }
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let matching = options.iter().filter(|s| validate(file, s, v, path).is_ok()).count();
        if matching != 1 {
            return err(format!("{matching} oneOf branches match"));
        }
    }
    Ok(())
}

fn check(file: &str, v: &Value) {
    if let Err(e) = validate(file, &load(file), v, "") {
        panic!("{file}: {e}\n{v:#}");
    }
}

fn output(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_spincurve")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn schemas_parse() {
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        let schema = load(&name);
        assert!(schema["$id"].as_str().unwrap().ends_with(&name), "{name}");
    }
}

#[test]
fn validator_rejects_bad_documents() {
    let schema = load("bouquet.schema.json");
    let bad = [
        serde_json::json!({ "z1": "b", "spheres": [] }),
        serde_json::json!({ "z1": "1" }),
        serde_json::json!({ "z1": "1", "spheres": [-1] }),
        serde_json::json!({ "z1": "1", "spheres": [], "extra": 0 }),
    ];
    for v in bad {
        assert!(validate("bouquet.schema.json", &schema, &v, "").is_err(), "{v}");
    }
}

#[test]
fn outputs_match_schemas() {
    check("bouquet.schema.json", &output(&["bouquet", "--z1", "-ac", "--cap", "8"]));
    check("itinerary.schema.json", &output(&["itinerary", "--point", "0,1,0"]));
    check("itinerary.schema.json", &output(&["itinerary", "--seed", "5", "--steps", "1000"]));
    check("scan.schema.json", &output(&["scan-bacb", "--grid", "5", "--format", "json"]));
    check("enumerate.schema.json", &output(&["enumerate", "--mu0", "2", "--mu1", "1", "--schedule"]));
    check("enumerate.schema.json", &output(&["enumerate", "--mu0", "1", "--mu1", "1", "--equivalence", "1-1"]));
    check("enumerate.schema.json", &output(&["enumerate", "--point", "1/9,4/9,5/9;2/9,4/9,7/9"]));
    check("monodromy.schema.json", &output(&["monodromy", "--c0", "9pi^4", "--c2", "10pi^2"]));
    check("verify-lemmas.schema.json", &output(&["verify-lemmas", "--max-len", "2"]));
    check("classify.schema.json", &output(&["classify", "--spin", "1,0,0,0,1,0,0,0"]));
    check("chopadv.schema.json", &output(&["chopadv", "--rep", "2341:+-++:1"]));
    check("normal-form.schema.json", &output(&["normal-form", "--x32", "0.1"]));
    check("normal-form.schema.json", &output(&["normal-form", "--x32", "0.1", "--no-curve"]));
}

#[test]
fn profile_schema_accepts_profile_inputs() {
    let doc = serde_json::json!({
        "kappa": [
            { "kind": "constant", "value": 1.0 },
            { "kind": "trig", "c0": 2.0, "cos": [0.5], "sin": [] },
            { "kind": "pieces", "pieces": [{ "start": 0.0, "end": 1.0, "coeffs": [1.0, 0.5] }] }
        ],
        "interval": [0.0, 1.0]
    });
    check("profile.schema.json", &doc);
    let bad = serde_json::json!({ "kappa": [{ "kind": "constant" }, 1, 2] });
    assert!(validate("profile.schema.json", &load("profile.schema.json"), &bad, "").is_err());
}

#[test]
fn scan_report_matches_regions_schema() {
    let dir = std::env::temp_dir().join(format!("spincurve-schema-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_spincurve"))
        .args(["scan-bacb", "--grid", "5", "--report", path.to_str().unwrap()])
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (file, schema) = resolve("scan.schema.json", "#/$defs/regions");
    validate(&file, &schema, &report, "").unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
}

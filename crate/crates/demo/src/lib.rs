//! Browser bindings: every export takes and returns JSON text.

use std::collections::BTreeMap;

use lipcert::conditions::{check_b, greedy_equinorm_subset, synthesize_b_cover};
use lipcert::fixtures::{Fixture, FixtureSpec};
use lipcert::metric::validate_metric;
use lipcert::FunctionFamily;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Value, String>) -> String {
    let value = result.unwrap_or_else(|e| json!({ "error": e }));
    serde_json::to_string_pretty(&value).expect("JSON values serialize")
}

/// Checks a distance matrix such as `[[0,1],[1,0]]` against the metric axioms.
#[wasm_bindgen(js_name = validateMetric)]
pub fn validate_metric_json(matrix: &str) -> String {
    respond(metric_report(matrix))
}

/// Builds a named example from `key=value` pairs separated by spaces and verifies its claims.
#[wasm_bindgen(js_name = runFixture)]
pub fn run_fixture(name: &str, params: &str) -> String {
    respond(fixture_report(name, params))
}

/// Family document of a named example, ready to paste into [`synthesize_b`].
#[wasm_bindgen(js_name = fixtureFamily)]
pub fn fixture_family(name: &str, params: &str) -> String {
    respond(build_fixture(name, params).and_then(|f| {
        let family = f.family().map_err(|e| e.to_string())?;
        serde_json::to_value(family).map_err(|e| e.to_string())
    }))
}

/// Synthesizes a cover meeting (B) for `A − A` at `eps` and re-checks it.
#[wasm_bindgen(js_name = synthesizeB)]
pub fn synthesize_b(family: &str, eps: f64) -> String {
    respond(b_report(family, eps))
}

fn metric_report(matrix: &str) -> Result<Value, String> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(matrix).map_err(|e| format!("not a matrix of numbers: {e}"))?;
    Ok(match validate_metric(&rows) {
        Ok(space) => json!({
            "valid": true,
            "points": space.len(),
            "diameter": space.diameter(),
            "min_gap": space.min_gap(),
        }),
        Err(e) => json!({ "valid": false, "reason": e.to_string() }),
    })
}

fn build_fixture(name: &str, params: &str) -> Result<Fixture, String> {
    let mut map = BTreeMap::new();
    for token in params.split_whitespace() {
        let (k, v) = token.split_once('=').ok_or_else(|| format!("`{token}` is not key=value"))?;
        map.insert(k.to_string(), v.to_string());
    }
    let spec = FixtureSpec::parse(name, &map).map_err(|e| e.to_string())?;
    spec.build().map_err(|e| e.to_string())
}

fn fixture_report(name: &str, params: &str) -> Result<Value, String> {
    let report = build_fixture(name, params)?.verify().map_err(|e| e.to_string())?;
    serde_json::to_value(report).map_err(|e| e.to_string())
}

fn b_report(family: &str, eps: f64) -> Result<Value, String> {
    let family: FunctionFamily = serde_json::from_str(family).map_err(|e| format!("malformed family: {e}"))?;
    let diff = family.difference_family();
    let subset = greedy_equinorm_subset(&diff, eps / 16.0);
    let synthesis = synthesize_b_cover(&family, eps, &subset, None).map_err(|e| e.to_string())?;
    let report = check_b(&diff, &synthesis.cover, eps).map_err(|e| e.to_string())?;
    Ok(json!({ "subset": subset, "cover": synthesis.cover, "report": report }))
}

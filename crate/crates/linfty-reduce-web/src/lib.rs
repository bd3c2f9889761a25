//! Browser bindings: the `check`, `reduce` and `transfer` commands on the
//! shipped fixtures, returning the same JSON reports as the CLI.

use linfty_reduce::fixture::Fixture;
use linfty_reduce::pipeline::{self, Direction, Pipeline};
use linfty_reduce::report::error_json;
use linfty_reduce::suites::Suite;
use linfty_reduce::Error;
use wasm_bindgen::prelude::*;

const FIXTURES: [(&str, &str); 7] = [
    ("translation", include_str!("../../../fixtures/translation.json")),
    ("translation-perturbed", include_str!("../../../fixtures/translation-perturbed.json")),
    ("affine", include_str!("../../../fixtures/affine.json")),
    ("affine-perturbed", include_str!("../../../fixtures/affine-perturbed.json")),
    ("so3", include_str!("../../../fixtures/so3.json")),
    ("so3-perturbed", include_str!("../../../fixtures/so3-perturbed.json")),
    ("corrupted", include_str!("../../../fixtures/corrupted.json")),
];

/// Names of the bundled fixtures, as a JSON array.
#[wasm_bindgen]
pub fn fixture_names() -> String {
    serde_json::to_string(&FIXTURES.iter().map(|(n, _)| *n).collect::<Vec<_>>()).expect("names serialize")
}

/// The bundled fixture's JSON text.
#[wasm_bindgen]
pub fn fixture_text(name: &str) -> Result<String, JsError> {
    Ok(bundled(name)?.to_string())
}

fn bundled(name: &str) -> Result<&'static str, Error> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Argument(format!("no fixture {name:?}")))
}

fn load(text: &str, nh: Option<usize>) -> Result<Fixture, Error> {
    Fixture::parse(text)?.with_truncation(nh, None, None)
}

pub fn check_json(text: &str, suite: &str) -> String {
    let suite = match Suite::ALL.iter().find(|s| s.name() == suite) {
        Some(s) => *s,
        None => return error_json(&Error::Argument(format!("unknown suite {suite:?}"))),
    };
    match load(text, None).and_then(|fx| pipeline::check_report(&fx, suite)) {
        Ok(r) => r.json(),
        Err(e) => error_json(&e),
    }
}

pub fn reduce_json(text: &str, pipeline: &str, nh: Option<usize>) -> String {
    let p = match pipeline {
        "linfty" => Pipeline::Linfty,
        "hpl" => Pipeline::Hpl,
        "both" => Pipeline::Both,
        other => return error_json(&Error::Argument(format!("unknown pipeline {other:?}"))),
    };
    match load(text, nh).and_then(|fx| pipeline::reduce_report(&fx, p)) {
        Ok(r) => r.json(),
        Err(e) => error_json(&e),
    }
}

pub fn transfer_json(text: &str, direction: &str, order: usize) -> String {
    let d = match direction {
        "P" => Direction::P,
        "I" => Direction::I,
        other => return error_json(&Error::Argument(format!("unknown direction {other:?}"))),
    };
    match load(text, None).and_then(|fx| pipeline::transfer_report(&fx, d, order)) {
        Ok(r) => r.json(),
        Err(e) => error_json(&e),
    }
}

/// Runs a suite (`signs`, `retract`, `linfty`, `kks`, `hpl`) on fixture JSON.
#[wasm_bindgen]
pub fn check(fixture_json: &str, suite: &str) -> String {
    check_json(fixture_json, suite)
}

/// Reduces fixture JSON with `linfty`, `hpl` or `both`; `nh = 0` keeps the fixture's truncation.
#[wasm_bindgen]
pub fn reduce(fixture_json: &str, pipeline: &str, nh: usize) -> String {
    reduce_json(fixture_json, pipeline, (nh > 0).then_some(nh))
}

/// Evaluates `P_k` or `I_k` on the fixture's probe words.
#[wasm_bindgen]
pub fn transfer(fixture_json: &str, direction: &str, order: usize) -> String {
    transfer_json(fixture_json, direction, order)
}

//! Browser bindings. Every export takes and returns strings; results are
//! JSON objects with `"ok": true` or `"ok": false, "error": ...`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use ternary_cli::commands::{self, EngineChoice};
use ternary_cli::format::{self, Document};
use ternary_core::Variant;

fn error(msg: impl ToString) -> Value {
    json!({"ok": false, "error": msg.to_string()})
}

/// Verifies a structure file. An empty `variant` means the file's own, or
/// total.
pub fn verify_json(text: &str, variant: &str) -> Value {
    let doc = match format::read(text) {
        Ok(d) => d,
        Err(e) => return error(e),
    };
    let variant = match variant {
        "" => None,
        v => match v.parse::<Variant>() {
            Ok(v) => Some(v),
            Err(e) => return error(e),
        },
    };
    let variant = variant.unwrap_or(match &doc.structure {
        format::Structure::Trimodule(t) => t.variant,
        format::Structure::MatchedPair(m) => m.variant,
        format::Structure::Bialgebra(b) => b.variant,
        _ => Variant::Total,
    });
    match commands::verify(&doc.structure, variant, EngineChoice::Fast) {
        Ok((code, report)) => json!({
            "ok": true,
            "kind": doc.structure.kind(),
            "variant": variant.name(),
            "verdict": code == commands::EXIT_PASS,
            "report": report,
        }),
        Err(e) => error(e.0),
    }
}

pub fn dualize_json(text: &str) -> Value {
    let doc = match format::read(text) {
        Ok(d) => d,
        Err(e) => return error(e),
    };
    match commands::dual_of(doc.structure) {
        Ok(s) => {
            let comment = doc.comment.map(|c| format!("dual of: {c}"));
            json!({"ok": true, "file": format::write(&Document { structure: s, comment })})
        }
        Err(e) => error(e.0),
    }
}

pub fn example_json(name: &str) -> Value {
    match commands::example(name) {
        Some(doc) => json!({"ok": true, "file": format::write(&doc)}),
        None => error(format!("unknown example {name:?}")),
    }
}

#[wasm_bindgen]
pub fn verify(text: &str, variant: &str) -> String {
    verify_json(text, variant).to_string()
}

#[wasm_bindgen]
pub fn dualize(text: &str) -> String {
    dualize_json(text).to_string()
}

#[wasm_bindgen]
pub fn example(name: &str) -> String {
    example_json(name).to_string()
}

/// Names of the built-in examples, one per line.
#[wasm_bindgen]
pub fn example_names() -> String {
    let mut names: Vec<String> = commands::EXAMPLES.iter().map(|(n, _)| n.to_string()).collect();
    names.extend((2..=7).map(|i| format!("a{i}")));
    names.join("\n")
}

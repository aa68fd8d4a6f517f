//! Browser bindings: analyze an L-order, list its Scott opens, or build its
//! directed completion, all from a JSON document in the CLI input format.
//!
//! Each operation returns a JSON string `{"status", "text", "dot"}` where
//! `status` follows the CLI exit codes.

#![allow(clippy::result_large_err)]

use fvdom_core::commands::run_command;
use fvdom_core::fixtures::BUNDLED_JSON;
use fvdom_core::workspace::Workspace;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Runs one command on the document `input` (the bundled fixtures if blank).
pub fn run(command: &str, input: &str, name: &str) -> String {
    let ws = if input.trim().is_empty() {
        Ok(Workspace::bundled())
    } else {
        Workspace::from_str("input", input)
    };
    let out = ws.and_then(|ws| run_command(&ws, command, &[name.trim().to_string()]));
    let value = match out {
        Ok(r) => json!({"status": r.status.exit_code(), "text": r.text, "dot": r.dot}),
        Err(e) => json!({"status": 2, "text": format!("error: {e}\n"), "dot": null}),
    };
    value.to_string()
}

#[wasm_bindgen]
pub fn bundled_fixtures() -> String {
    BUNDLED_JSON.to_string()
}

#[wasm_bindgen]
pub fn analyze(input: &str, name: &str) -> String {
    run("analyze", input, name)
}

#[wasm_bindgen]
pub fn scott(input: &str, name: &str) -> String {
    run("scott", input, name)
}

#[wasm_bindgen]
pub fn complete(input: &str, name: &str) -> String {
    run("complete", input, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn operations_on_the_bundled_document() {
        let r = parse(&analyze(&bundled_fixtures(), "X6"));
        assert_eq!(r["status"], 0);
        assert!(r["text"].as_str().unwrap().contains("continuous=yes"));
        let r = parse(&scott("", "L4"));
        assert!(r["text"].as_str().unwrap().starts_with("σ(L4): 9 opens"));
        assert!(r["dot"].as_str().unwrap().starts_with("digraph"));
        let r = parse(&complete("", "X6"));
        assert!(r["text"].as_str().unwrap().contains("isomorphic to (L4, e_L4)"));
    }

    #[test]
    fn errors_are_reported_not_thrown() {
        let r = parse(&analyze("{ nope", "X6"));
        assert_eq!(r["status"], 2);
        assert!(r["text"].as_str().unwrap().starts_with("error: "));
        let r = parse(&analyze("", "Missing"));
        assert_eq!(r["status"], 2);
    }
}

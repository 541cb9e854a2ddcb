//! The checked-in fuzz seeds, run through both parsers.

use std::path::PathBuf;

use grid_catalan::Shape;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn json_seeds() {
    let mut accepted = Vec::new();
    for (name, text) in seeds("shape_json") {
        if let Ok(shape) = Shape::from_json(&text) {
            assert_eq!(Shape::from_json(&shape.to_json().to_string()).unwrap(), shape, "{name}");
            accepted.push(name);
        }
    }
    assert_eq!(accepted, ["cells_ell", "cells_rect23", "extra_boundary", "rect11", "rect23", "vertices"]);
}

#[test]
fn spec_seeds() {
    let accepted: Vec<String> = seeds("shape_spec")
        .into_iter()
        .filter(|(_, text)| Shape::from_spec(text).is_ok())
        .map(|(name, _)| name)
        .collect();
    assert_eq!(accepted, ["rect23", "rect34_upper", "spaces", "zero"]);
}

//! Fuzz target for the JSON shape parser.
//!
//! Run with: cargo +nightly fuzz run shape_json

#![no_main]

use grid_catalan::Shape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(shape) = Shape::from_json(s) {
            let again = Shape::from_json(&shape.to_json().to_string()).expect("emitted JSON parses");
            assert_eq!(again, shape);
        }
    }
});

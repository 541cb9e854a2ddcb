//! Fuzz target for the `rect:KxM` shorthand.
//!
//! Run with: cargo +nightly fuzz run shape_spec

#![no_main]

use grid_catalan::Shape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = Shape::from_spec(s);
    }
});

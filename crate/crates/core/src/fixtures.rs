//! Bundled example objects.
//!
//! [`BUNDLED_JSON`] is the input document loaded by default; the typed
//! constructors below build the same objects directly, without the parser.

use std::sync::Arc;

use crate::frame::{build_frame, validate_frame, Frame, FrameBuilder, FrameDescription};
use crate::lorder::{validate_lorder, Carrier, LOrderedSet};

pub const BUNDLED_JSON: &str = include_str!("../fixtures/bundled.json");

fn describe(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> FrameDescription {
    FrameDescription {
        name: name.into(),
        elements: elements.iter().map(|s| s.to_string()).collect(),
        relation: covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    }
}

/// `chain(n)` named `C{n}`.
pub fn chain(n: usize) -> Arc<Frame> {
    Arc::new(build_frame(&format!("C{n}"), &FrameBuilder::Chain(n)).expect("chains are frames"))
}

/// `L4 = {0, a, b, 1}` with `a ∥ b`.
pub fn diamond() -> Arc<Frame> {
    Arc::new(validate_frame(&diamond_description()).expect("L4 is a frame"))
}

pub fn diamond_description() -> FrameDescription {
    describe("L4", &["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// `L5 = {0, a, b, c, 1}` with `a ∥ b`, `a, b < c < 1`.
pub fn five_element() -> Arc<Frame> {
    Arc::new(validate_frame(&five_element_description()).expect("L5 is a frame"))
}

pub fn five_element_description() -> FrameDescription {
    describe(
        "L5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1")],
    )
}

/// `M3`: three atoms under `1`; not distributive.
pub fn m3_description() -> FrameDescription {
    describe(
        "M3",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// `N5`: `0 < a < c < 1`, `0 < b < 1`; not distributive.
pub fn n5_description() -> FrameDescription {
    describe(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

/// `X = {x, y}` over `L4` with `e(x,y) = 1`, `e(y,x) = 0`.
pub fn two_point_example() -> LOrderedSet {
    let f = diamond();
    let c = Carrier::new(vec!["x".into(), "y".into()]).expect("distinct names");
    let (t, b) = (f.top(), f.bottom());
    validate_lorder(f, c, vec![t, t, b, t]).expect("valid L-order")
}

//! Small named shifts used in examples and tests.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::presentation::{Edge, LabeledPresentation};
use crate::shift::SoficShift;
use crate::word::Symbol;

fn build(alphabet: &[&str], vertices: usize, edges: &[(usize, usize, &str)]) -> SoficShift {
    SoficShift::new(LabeledPresentation::from_named(alphabet, vertices, edges).unwrap()).unwrap()
}

/// Binary sequences without two consecutive 1s.
pub fn golden_mean() -> SoficShift {
    build(&["0", "1"], 2, &[(0, 0, "0"), (0, 1, "1"), (1, 0, "0")])
}

/// Binary sequences in which every maximal block of 1s between two 0s has even length.
pub fn even() -> SoficShift {
    build(&["0", "1"], 2, &[(0, 0, "0"), (0, 1, "1"), (1, 0, "1")])
}

/// A non right-resolving presentation of the even shift.
pub fn even_nondeterministic() -> LabeledPresentation {
    LabeledPresentation::from_named(
        &["0", "1"],
        3,
        &[(0, 0, "0"), (0, 1, "1"), (1, 0, "1"), (0, 2, "1"), (2, 0, "1")],
    )
    .unwrap()
}

/// The full shift on `k` symbols named `0`, `1`, ...
pub fn full_shift(k: usize) -> SoficShift {
    let alphabet: Vec<String> = (0..k).map(|i| format!("{i}")).collect();
    let edges = (0..k).map(|i| Edge { from: 0, to: 0, label: i as Symbol }).collect();
    SoficShift::new(LabeledPresentation::new(alphabet, 1, edges).unwrap()).unwrap()
}

/// Three symbols, no symbol repeated twice in a row.
pub fn no_repeat3() -> SoficShift {
    let names = ["a", "b", "c"];
    let mut edges = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            if x != y {
                edges.push((x, y, names[y]));
            }
        }
    }
    build(&names, 3, &edges)
}

/// Full 2-shift on {0,1} next to a full 2-shift on {a,b}, with no passage between them.
pub fn disjoint_full_shifts() -> SoficShift {
    build(
        &["0", "1", "a", "b"],
        2,
        &[(0, 0, "0"), (0, 0, "1"), (1, 1, "a"), (1, 1, "b")],
    )
}

//! Shared fixtures for the benchmarks.

use noncomm_core::{build_graph, build_str, gl2, sl2, Group, NcGraph};

/// Groups the kernels are timed on, smallest first.
pub fn groups() -> Vec<Group> {
    vec![
        build_str("S4").unwrap(),
        sl2(5).unwrap(),
        gl2(4).unwrap(),
        sl2(7).unwrap(),
        gl2(5).unwrap(),
    ]
}

pub fn graph(g: &Group) -> NcGraph {
    build_graph(g).unwrap()
}

//! Fixed inputs shared by the benchmarks.

use lawrence_core::graphs::{cographic_lattice, graphic_lattice};
use lawrence_core::lattice::sum_zero_lattice;
use lawrence_core::{complete_graph, Lattice};

/// Named lattices of increasing size.
pub fn fixtures() -> Vec<(&'static str, Lattice)> {
    vec![
        ("sum_zero_3", sum_zero_lattice(3).unwrap()),
        ("sum_zero_5", sum_zero_lattice(5).unwrap()),
        ("k4_graphic", graphic_lattice(&complete_graph(4)).unwrap()),
        (
            "k4_cographic",
            cographic_lattice(&complete_graph(4)).unwrap(),
        ),
        ("k5_graphic", graphic_lattice(&complete_graph(5)).unwrap()),
    ]
}

/// A degree whose fiber is a few dozen points.
pub fn fiber_degree(l: &Lattice) -> (Vec<i64>, Vec<i64>) {
    (vec![2; l.n()], vec![1; l.n()])
}

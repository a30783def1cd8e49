//! Fixtures shared by the benchmarks.

use eqschub_core::{GrassmannianShape, Partition};

pub fn shape(n: usize, k: usize) -> GrassmannianShape {
    GrassmannianShape::new(n, k).expect("benchmark shapes are valid")
}

pub fn partition(s: &str) -> Partition {
    s.parse().expect("benchmark partitions are valid")
}

//! Criterion benchmarks for the `kronbound` crate live in `benches/`.

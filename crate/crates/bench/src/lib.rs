//! Criterion benchmarks for the hwcoho library; see `benches/`.

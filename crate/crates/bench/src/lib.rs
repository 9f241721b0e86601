//! Criterion benchmarks for the cobordia core crate. See `benches/`.

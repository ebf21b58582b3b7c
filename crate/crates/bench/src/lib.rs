//! Benchmarks for hexfa live in `benches/`.

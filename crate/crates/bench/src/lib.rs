//! Criterion benchmarks for the k3leech crate live in `benches/`.

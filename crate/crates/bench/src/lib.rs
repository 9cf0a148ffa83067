//! Criterion benchmarks for the pentagram crate; see `benches/`.

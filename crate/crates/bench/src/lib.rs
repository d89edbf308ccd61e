//! Criterion benchmarks for `oligosim-core` live under `benches/`.

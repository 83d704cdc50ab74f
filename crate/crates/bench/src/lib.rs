//! Criterion benchmarks for the audit pipeline live under `benches/`.

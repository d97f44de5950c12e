//! Criterion benchmarks for qgr-core live in `benches/`.

//! Criterion benchmarks for `tqd-core`; see `benches/engine.rs`.

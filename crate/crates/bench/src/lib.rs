//! Benchmark harness for the core crate; see `benches/`.

//! Benchmarks for `skindepth-core`; see `benches/kernels.rs`.

//! Criterion benchmarks for `wfilt-core`; see `benches/`.

//! Criterion benchmarks for `monopaths`; see `benches/`.

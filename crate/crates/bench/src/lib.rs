//! Criterion benchmarks for `wkb-core`; see `benches/`.

//! Criterion benchmarks for the unit-distance toolkit live under `benches/`.

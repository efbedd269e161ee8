//! Criterion benchmarks for the sylowkit kernels live in `benches/`.

//! Benchmarks for the enumeration, series and bijection kernels. The
//! benches live in `benches/`; this crate only hosts shared inputs.

/// The partition of the worked example, bijected with `k = 4`, `a = 3`.
pub const LAMBDA0: &str = "13,11,11,11,9,8,6,6,5,4,3,3,2,1";

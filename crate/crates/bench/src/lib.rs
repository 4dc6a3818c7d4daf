//! Shared inputs for the benchmarks.

use minsupp_core::GridFunction;

/// A deterministic dense integer function on `Σ_q^n`.
pub fn dense_function(n: usize, q: u32) -> GridFunction {
    GridFunction::from_fn(n, q, |x| {
        let v = x.iter().enumerate().fold(7i64, |acc, (r, &s)| {
            (acc * 31 + (r as i64 + 3) * s as i64) % 11
        });
        minsupp_core::integer(v - 5)
    })
    .expect("valid shape")
}

//! Functions available to the `construct` subcommand.
//!
//! The construction pipeline samples its target on all of `[0, 1]`,
//! Bernstein nodes at 0 and 1 included. The benchmark catalog's
//! functions are only defined for `x > 0`, but every one of them has a
//! continuous extension with value 0 at the origin (their envelopes
//! vanish), so the wrappers here pin `f(x) = 0` for `x ≤ 0`.

use sinekan::benchfns::{BenchFunction1D, DEFAULT_K_TERMS};

/// Names accepted by `construct --func`, in display order.
pub const NAMES: [&str; 7] = ["const1", "x", "f1", "f2", "f3", "f4", "f5"];

/// Looks up a target function by name. `const1` is the constant 1,
/// `x` the identity, and `f1`..`f5` the benchmark functions extended
/// by 0 at the origin.
pub fn lookup(name: &str) -> Option<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    match name {
        "const1" => Some(Box::new(|_| 1.0)),
        "x" => Some(Box::new(|x| x)),
        "f1" | "f2" | "f3" | "f4" | "f5" => {
            let f = BenchFunction1D::from_name(name, DEFAULT_K_TERMS).ok()?;
            Some(Box::new(move |x| f.eval(x).unwrap_or(0.0)))
        }
        _ => None,
    }
}

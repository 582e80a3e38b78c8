//! Sinusoidal function approximation.
//!
//! This crate fits sums of sines (and baseline models) to functions sampled
//! on grids, and mechanizes a constructive pipeline that turns a continuous
//! function on `[0, 1]` into an explicit sine superposition with a
//! machine-checkable error certificate.
//!
//! The pieces:
//!
//! - [`benchfns`]: a closed catalog of benchmark functions (five 1D, two 2D)
//!   with documented parameterizations.
//! - [`models`]: four model families — SineKAN (one input), two-layer SineKAN,
//!   truncated Fourier series (1D/2D), and a two-layer MLP — each with a flat
//!   parameter vector and an analytic Jacobian.
//! - [`solver`]: a bounded trust-region nonlinear least-squares solver plus a
//!   linear fast path for models that are linear in their parameters.
//! - [`constructive`]: Taylor/Bernstein/amplitude-solve pipeline producing a
//!   [`constructive::SineConstruction`] with per-stage error bounds.
//! - [`metrics`]: relative L² error and a FLOP cost model (fixed weights or
//!   measured on the host).
//! - [`experiments`]: grid builders and benchmark sweeps with deterministic
//!   CSV output.
//!
//! # Example
//!
//! Fit a small SineKAN to a benchmark function and report its error:
//!
//! ```
//! use sinekan::benchfns::BenchFunction1D;
//! use sinekan::experiments::{sample_function_1d, fit_model_on};
//! use sinekan::models::ModelSpec;
//! use sinekan::solver::SolverConfig;
//!
//! let data = sample_function_1d(&BenchFunction1D::f2(), 50).unwrap();
//! let spec: ModelSpec = "sinekan1d:G=4".parse().unwrap();
//! let mut config = SolverConfig::default();
//! config.max_iterations = 200;
//! let outcome = fit_model_on(&spec, &data, &config, 2).unwrap();
//! assert!(outcome.rel_l2 < 1e-3);
//! ```

pub mod benchfns;
pub mod constructive;
pub mod experiments;
pub mod metrics;
pub mod models;
pub mod solver;

#[cfg(doctest)]
mod book {
    //! Compile and run the code blocks in the guide.

    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(getting_started, "../../../book/src/getting-started.md");
    chapter!(models, "../../../book/src/models.md");
    chapter!(solver, "../../../book/src/solver.md");
    chapter!(constructive, "../../../book/src/constructive.md");
    chapter!(benchmarks, "../../../book/src/benchmarks.md");
    chapter!(cost_model, "../../../book/src/cost-model.md");
}

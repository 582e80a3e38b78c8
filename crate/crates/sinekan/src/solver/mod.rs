//! Bounded nonlinear least-squares fitting.
//!
//! The centerpiece is [`fit`], a trust-region solver for problems of the
//! form `minimize ½‖r(p)‖²` with optional box bounds on `p`. Steps are
//! dogleg interpolations between the Cauchy point and the Gauss-Newton
//! point, computed in a space where parameters are scaled by the column
//! norms of the initial Jacobian so that amplitudes and frequencies of
//! wildly different magnitude are treated evenly. Bounds are enforced by
//! projecting each step coordinate strictly inside the box (stopping a
//! 0.995 fraction short of a violated bound), so every iterate stays
//! feasible.
//!
//! [`fit_linear`] is the fast path for models that are linear in their
//! parameters, and [`multi_start_fit`] wraps `fit` with deterministic
//! seeded restarts to mitigate nonconvexity when frequencies are learned.

mod linear;

pub use linear::fit_linear;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors reported by the solver entry points.
#[derive(Debug, Error)]
pub enum SolverError {
    /// Residuals or Jacobian were non-finite at the initial point.
    #[error("residuals or jacobian non-finite at the initial point")]
    NonFiniteAtStart,
    /// A returned vector or matrix had the wrong dimensions.
    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// Bounds arrays are malformed (wrong length or lower > upper).
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    /// The initial point violates the bounds.
    #[error("initial point outside bounds at index {0}")]
    StartOutsideBounds(usize),
    /// Non-finite values mid-run and the trust radius shrank below xtol.
    #[error("trust radius underflow after non-finite evaluations")]
    RadiusUnderflow,
    /// Configuration is invalid (tolerances must be positive, iterations >= 1).
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
    /// Every start of a multi-start run failed.
    #[error("all {0} starts failed; first error: {1}")]
    AllStartsFailed(usize, Box<SolverError>),
}

/// A nonlinear least-squares problem: residual and Jacobian callbacks,
/// an initial point, and optional box bounds.
///
/// The residual convention is `r(p) = prediction(p) - target`, so the
/// objective is `½‖r(p)‖²`. Callbacks must be pure: the solver assumes
/// repeated evaluation at the same point yields identical values.
pub struct LeastSquaresProblem<'a> {
    residuals: Box<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync + 'a>,
    jacobian: Box<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'a>,
    num_residuals: usize,
    p0: Vec<f64>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
    start_points: Option<Box<dyn Fn(u64) -> Vec<f64> + Send + Sync + 'a>>,
}

impl<'a> LeastSquaresProblem<'a> {
    /// Builds a problem from an initial point and the two callbacks.
    ///
    /// `num_residuals` is the length the residual callback must return;
    /// the Jacobian must be `num_residuals × p0.len()`.
    pub fn new(
        p0: Vec<f64>,
        num_residuals: usize,
        residuals: impl Fn(&[f64]) -> DVector<f64> + Send + Sync + 'a,
        jacobian: impl Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'a,
    ) -> Self {
        Self {
            residuals: Box::new(residuals),
            jacobian: Box::new(jacobian),
            num_residuals,
            p0,
            lower: None,
            upper: None,
            start_points: None,
        }
    }

    /// Adds box bounds. Both slices must have one entry per parameter;
    /// use `f64::NEG_INFINITY` / `f64::INFINITY` to leave a side open.
    pub fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.lower = Some(lower);
        self.upper = Some(upper);
        self
    }

    /// Supplies a generator of alternative starting points for
    /// [`multi_start_fit`]; the argument is the seed for that start.
    /// Without one, restarts jitter the initial point deterministically.
    pub fn with_start_points(
        mut self,
        gen: impl Fn(u64) -> Vec<f64> + Send + Sync + 'a,
    ) -> Self {
        self.start_points = Some(Box::new(gen));
        self
    }

    /// Number of parameters.
    pub fn num_params(&self) -> usize {
        self.p0.len()
    }

    /// Number of residuals the callback returns.
    pub fn num_residuals(&self) -> usize {
        self.num_residuals
    }

    /// The initial point.
    pub fn initial_point(&self) -> &[f64] {
        &self.p0
    }

    fn validate(&self, config: &SolverConfig) -> Result<(), SolverError> {
        if config.max_iterations == 0 {
            return Err(SolverError::InvalidConfig(
                "max_iterations must be >= 1".into(),
            ));
        }
        for (name, v) in [
            ("ftol", config.ftol),
            ("xtol", config.xtol),
            ("gtol", config.gtol),
            ("initial_trust_radius", config.initial_trust_radius),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(SolverError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let n = self.p0.len();
        match (&self.lower, &self.upper) {
            (None, None) => {}
            (Some(lo), Some(hi)) => {
                if lo.len() != n || hi.len() != n {
                    return Err(SolverError::InvalidBounds(format!(
                        "bounds length {}/{} for {} parameters",
                        lo.len(),
                        hi.len(),
                        n
                    )));
                }
                for j in 0..n {
                    if !(lo[j] <= hi[j]) {
                        return Err(SolverError::InvalidBounds(format!(
                            "lower[{j}] = {} > upper[{j}] = {}",
                            lo[j], hi[j]
                        )));
                    }
                    if self.p0[j] < lo[j] || self.p0[j] > hi[j] {
                        return Err(SolverError::StartOutsideBounds(j));
                    }
                }
            }
            _ => {
                return Err(SolverError::InvalidBounds(
                    "lower and upper must be given together".into(),
                ))
            }
        }
        Ok(())
    }
}

/// Solver tolerances and budget.
///
/// Defaults follow the fitting protocol used throughout the crate:
/// tight tolerances (`1e-10`) so the iteration budget is normally the
/// binding stop, unit initial trust radius, and a seed that makes every
/// derived quantity (restart points) reproducible.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolverConfig {
    /// Maximum accepted-step iterations. Sweeps set this to
    /// `100 × param_count`.
    pub max_iterations: usize,
    /// Relative cost-decrease tolerance.
    pub ftol: f64,
    /// Relative step-size tolerance.
    pub xtol: f64,
    /// Gradient infinity-norm tolerance (measured in the scaled space).
    pub gtol: f64,
    /// Trust-region radius at the first iteration, in scaled units.
    pub initial_trust_radius: f64,
    /// Seed for deterministic restart generation.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            ftol: 1e-10,
            xtol: 1e-10,
            gtol: 1e-10,
            initial_trust_radius: 1.0,
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// Config with the iteration budget set to `100 × param_count`,
    /// the protocol used by the benchmark sweeps.
    pub fn for_param_count(param_count: usize) -> Self {
        Self {
            max_iterations: 100 * param_count.max(1),
            ..Self::default()
        }
    }
}

/// Why the solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Cost decrease fell below `ftol · cost`.
    Ftol,
    /// Step size fell below `xtol · (xtol + ‖p‖)` in scaled units.
    Xtol,
    /// Scaled gradient infinity norm fell below `gtol`.
    Gtol,
    /// Iteration budget exhausted.
    MaxIter,
}

impl Termination {
    /// Stable lowercase name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Termination::Ftol => "ftol",
            Termination::Xtol => "xtol",
            Termination::Gtol => "gtol",
            Termination::MaxIter => "max_iter",
        }
    }
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Termination {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ftol" => Ok(Termination::Ftol),
            "xtol" => Ok(Termination::Xtol),
            "gtol" => Ok(Termination::Gtol),
            "max_iter" => Ok(Termination::MaxIter),
            other => Err(format!("unknown termination reason `{other}`")),
        }
    }
}

/// Outcome of a fit: parameters, cost, and convergence diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    /// Fitted parameter vector (feasible when bounds were given).
    pub params: Vec<f64>,
    /// Final cost `½‖r‖²`.
    pub final_cost: f64,
    /// `‖r‖` at the start and after every accepted step; non-increasing.
    pub residual_norm_history: Vec<f64>,
    /// Accepted plus rejected iterations consumed.
    pub iterations: usize,
    /// Number of Jacobian evaluations.
    pub jacobian_evals: usize,
    /// Which tolerance (or the budget) stopped the run.
    pub termination: Termination,
}

fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

const MIN_COLUMN_SCALE: f64 = 1e-8;
const ACCEPT_RHO: f64 = 1e-4;
const INTERIOR_FACTOR: f64 = 0.995;
const MAX_TRUST_RADIUS: f64 = 1e8;

/// Dogleg step for the scaled quadratic model, confined to radius `delta`.
/// Returns the step and whether it lies on the trust-region boundary.
fn dogleg(gn: &DVector<f64>, cauchy: &DVector<f64>, delta: f64) -> (DVector<f64>, bool) {
    let gn_norm = gn.norm();
    if gn_norm <= delta {
        return (gn.clone(), false);
    }
    let c_norm = cauchy.norm();
    if c_norm >= delta {
        return (cauchy * (delta / c_norm), true);
    }
    // Walk from the Cauchy point toward the Gauss-Newton point until the
    // sphere of radius delta is crossed: solve ‖c + t(g − c)‖ = delta.
    let d = gn - cauchy;
    let a = d.norm_squared();
    let b = 2.0 * cauchy.dot(&d);
    let c = c_norm * c_norm - delta * delta;
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let t = if a > 0.0 { (-b + disc.sqrt()) / (2.0 * a) } else { 0.0 };
    (cauchy + d * t.clamp(0.0, 1.0), true)
}

/// Minimizes `½‖r(p)‖²` by a scaled dogleg trust-region iteration.
///
/// Parameters are scaled by the column norms of the initial Jacobian
/// (floored at `1e-8`); all radii and step tests live in that scaled
/// space. When bounds are present, steps are clipped to keep iterates
/// strictly inside the box. Non-finite residuals at the initial point
/// are an error; mid-run they reject the step and shrink the radius,
/// failing only if the radius underflows `xtol`.
///
/// Deterministic: identical problems and configs produce bit-identical
/// reports.
///
/// ```
/// use nalgebra::{DMatrix, DVector};
/// use sinekan::solver::{fit, LeastSquaresProblem, SolverConfig};
///
/// // Fit y = a·x to the points (1, 1), (2, 2).
/// let problem = LeastSquaresProblem::new(
///     vec![0.0],
///     2,
///     |p| DVector::from_vec(vec![p[0] - 1.0, 2.0 * p[0] - 2.0]),
///     |_| DMatrix::from_column_slice(2, 1, &[1.0, 2.0]),
/// );
/// let report = fit(&problem, &SolverConfig::default()).unwrap();
/// assert!((report.params[0] - 1.0).abs() < 1e-12);
/// assert!(report.final_cost < 1e-20);
/// ```
pub fn fit(problem: &LeastSquaresProblem, config: &SolverConfig) -> Result<FitReport, SolverError> {
    problem.validate(config)?;
    let n = problem.num_params();
    let m = problem.num_residuals();

    let mut p = problem.p0.clone();
    if !all_finite(&p) {
        return Err(SolverError::NonFiniteAtStart);
    }
    let mut r = (problem.residuals)(&p);
    if r.len() != m {
        return Err(SolverError::Dimension {
            what: "residual length",
            expected: m,
            got: r.len(),
        });
    }
    if !all_finite(r.as_slice()) {
        return Err(SolverError::NonFiniteAtStart);
    }
    let mut jac = (problem.jacobian)(&p);
    let mut jacobian_evals = 1usize;
    if jac.nrows() != m || jac.ncols() != n {
        return Err(SolverError::Dimension {
            what: "jacobian shape (rows*cols)",
            expected: m * n,
            got: jac.nrows() * jac.ncols(),
        });
    }
    if !all_finite(jac.as_slice()) {
        return Err(SolverError::NonFiniteAtStart);
    }

    // Fixed column scaling from the initial Jacobian.
    let scale: Vec<f64> = (0..n)
        .map(|j| jac.column(j).norm().max(MIN_COLUMN_SCALE))
        .collect();

    let mut cost = 0.5 * r.norm_squared();
    let mut history = vec![r.norm()];
    let mut delta = config.initial_trust_radius;
    let mut iterations = 0usize;
    let mut termination = Termination::MaxIter;

    'outer: while iterations < config.max_iterations {
        iterations += 1;

        // Scaled Jacobian and gradient.
        let mut jhat = jac.clone();
        for j in 0..n {
            let mut col = jhat.column_mut(j);
            col *= scale[j];
        }
        let ghat = jhat.tr_mul(&r);
        if ghat.amax() <= config.gtol {
            termination = Termination::Gtol;
            iterations -= 1;
            break;
        }

        // Gauss-Newton point from the normal equations, with a diagonal
        // shift escalated until the factorization succeeds.
        let a = jhat.tr_mul(&jhat);
        let max_diag = (0..n).map(|i| a[(i, i)]).fold(0.0f64, f64::max).max(1e-300);
        let mut shift = 0.0;
        let gn = loop {
            let mut reg = a.clone();
            if shift > 0.0 {
                for i in 0..n {
                    reg[(i, i)] += shift;
                }
            }
            match reg.cholesky() {
                Some(chol) => break -chol.solve(&ghat),
                None => {
                    shift = if shift == 0.0 { max_diag * 1e-10 } else { shift * 10.0 };
                    if !shift.is_finite() || shift > max_diag * 1e10 {
                        // Hopeless curvature; fall back to steepest descent.
                        break -&ghat;
                    }
                }
            }
        };

        // Cauchy point: minimizer of the model along -gradient.
        let jg = &jhat * &ghat;
        let jg_sq = jg.norm_squared();
        let cauchy = if jg_sq > 0.0 {
            -&ghat * (ghat.norm_squared() / jg_sq)
        } else {
            -&ghat
        };

        let (mut shat, _on_boundary) = dogleg(&gn, &cauchy, delta);

        // Map back to parameter space and project into the bounds,
        // coordinate by coordinate, stopping short of a violated bound
        // by the interior factor so iterates stay strictly feasible.
        let mut step: Vec<f64> = (0..n).map(|j| shat[j] * scale[j]).collect();
        if let (Some(lo), Some(hi)) = (&problem.lower, &problem.upper) {
            for j in 0..n {
                let target = p[j] + step[j];
                if target > hi[j] {
                    step[j] = INTERIOR_FACTOR * (hi[j] - p[j]);
                } else if target < lo[j] {
                    step[j] = INTERIOR_FACTOR * (lo[j] - p[j]);
                }
                shat[j] = step[j] / scale[j];
            }
        }

        let step_norm = shat.norm();
        let p_norm_scaled = {
            let mut acc = 0.0;
            for j in 0..n {
                let v = p[j] / scale[j];
                acc += v * v;
            }
            f64::sqrt(acc)
        };
        if step_norm <= config.xtol * (config.xtol + p_norm_scaled) {
            termination = Termination::Xtol;
            iterations -= 1;
            break;
        }

        // Predicted decrease of the quadratic model for the actual step.
        let a_s = &a * &shat;
        let predicted = -(ghat.dot(&shat) + 0.5 * shat.dot(&a_s));

        let p_new: Vec<f64> = (0..n).map(|j| p[j] + step[j]).collect();
        let r_new = (problem.residuals)(&p_new);
        let finite = r_new.len() == m && all_finite(r_new.as_slice());
        let cost_new = if finite { 0.5 * r_new.norm_squared() } else { f64::INFINITY };

        let rho = if predicted > 0.0 && finite {
            (cost - cost_new) / predicted
        } else {
            -1.0
        };

        if rho > ACCEPT_RHO && cost_new < cost {
            // Check the Jacobian at the candidate before committing.
            let jac_new = (problem.jacobian)(&p_new);
            jacobian_evals += 1;
            if jac_new.nrows() != m
                || jac_new.ncols() != n
                || !all_finite(jac_new.as_slice())
            {
                delta = 0.25 * step_norm;
                if delta < config.xtol {
                    return Err(SolverError::RadiusUnderflow);
                }
                continue 'outer;
            }

            let decrease = cost - cost_new;
            p = p_new;
            r = r_new;
            jac = jac_new;
            cost = cost_new;
            history.push(r.norm());

            if rho > 0.75 {
                delta = (2.0 * delta).min(MAX_TRUST_RADIUS);
            } else if rho < 0.25 {
                delta = 0.25 * step_norm;
            }

            if decrease <= config.ftol * cost.max(f64::MIN_POSITIVE) {
                termination = Termination::Ftol;
                break;
            }
        } else {
            delta = 0.25 * step_norm.min(delta);
            if !finite && delta < config.xtol {
                return Err(SolverError::RadiusUnderflow);
            }
            if delta < 1e-300 {
                termination = Termination::Xtol;
                break;
            }
        }
    }

    Ok(FitReport {
        params: p,
        final_cost: cost,
        residual_norm_history: history,
        iterations,
        jacobian_evals,
        termination,
    })
}

/// Deterministic jitter of `p0` used when a problem supplies no start
/// generator: each coordinate moves by `U(-1, 1) · max(1, |p0_j|)`,
/// then is clamped strictly inside any bounds.
fn jitter_start(problem: &LeastSquaresProblem, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<f64> = problem
        .p0
        .iter()
        .map(|&v| v + rng.gen_range(-1.0..1.0) * v.abs().max(1.0))
        .collect();
    if let (Some(lo), Some(hi)) = (&problem.lower, &problem.upper) {
        for j in 0..p.len() {
            let width = hi[j] - lo[j];
            let margin = if width.is_finite() { 1e-3 * width } else { 0.0 };
            p[j] = p[j].clamp(lo[j] + margin, hi[j] - margin).clamp(lo[j], hi[j]);
        }
    }
    p
}

/// Runs [`fit`] from `n_starts` starting points and returns the report
/// with the smallest final cost (ties favor the earlier start).
///
/// Start 0 is the problem's initial point verbatim, so `n_starts = 1`
/// reproduces `fit` exactly. Start `k ≥ 1` asks the problem's start
/// generator for a point at seed `config.seed + k`, falling back to a
/// deterministic jitter of the initial point. Errors are propagated
/// only if every start fails.
pub fn multi_start_fit(
    problem: &LeastSquaresProblem,
    config: &SolverConfig,
    n_starts: usize,
) -> Result<FitReport, SolverError> {
    if n_starts == 0 {
        return Err(SolverError::InvalidConfig("n_starts must be >= 1".into()));
    }
    let mut best: Option<FitReport> = None;
    let mut first_err: Option<SolverError> = None;
    let mut failures = 0usize;

    for k in 0..n_starts {
        let result = if k == 0 {
            fit(problem, config)
        } else {
            let seed = config.seed.wrapping_add(k as u64);
            let start = match &problem.start_points {
                Some(gen) => gen(seed),
                None => jitter_start(problem, seed),
            };
            let shifted = LeastSquaresProblem {
                residuals: Box::new(|p| (problem.residuals)(p)),
                jacobian: Box::new(|p| (problem.jacobian)(p)),
                num_residuals: problem.num_residuals,
                p0: start,
                lower: problem.lower.clone(),
                upper: problem.upper.clone(),
                start_points: None,
            };
            fit(&shifted, config)
        };
        match result {
            Ok(report) => {
                let better = match &best {
                    None => true,
                    Some(b) => report.final_cost < b.final_cost,
                };
                if better {
                    best = Some(report);
                }
            }
            Err(e) => {
                failures += 1;
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }

    match best {
        Some(report) => Ok(report),
        None => Err(SolverError::AllStartsFailed(
            failures,
            Box::new(first_err.expect("no best implies at least one error")),
        )),
    }
}

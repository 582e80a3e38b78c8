//! Grid builders and benchmark sweeps.
//!
//! Two sweep protocols drive the benchmark CLI: [`run_1d_sweep`]
//! measures error as a function of grid size for each (function, model)
//! pair, and [`run_2d_sweep`] measures error as a function of parameter
//! budget on the two-dimensional functions. Both fit every model with
//! the same solver protocol (`100 × param_count` iterations by default,
//! multi-start for nonlinear models, the exact linear path for models
//! that are linear in their parameters) and report relative L² error on
//! the sampled grid.
//!
//! Sweeps are deterministic: each cell derives its seed by hashing the
//! root seed with the cell's identifying fields, so re-running a sweep
//! — or extending it with more functions or models — never changes the
//! seeds of existing cells. Rows serialize to CSV bytes that are
//! identical across reruns.

use crate::benchfns::{BenchFnError, BenchFunction1D, BenchFunction2D};
use crate::metrics::{model_flops, relative_l2, CostModel, MetricsError};
use crate::models::{InputBatch, Model, ModelError, ModelSpec};
use crate::solver::{
    fit_linear, multi_start_fit, FitReport, LeastSquaresProblem, SolverConfig, SolverError,
    Termination,
};
use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use thiserror::Error;

/// Errors from dataset construction, fitting, or CSV handling.
#[derive(Debug, Error)]
pub enum ExperimentError {
    /// Grid sizes must be at least 2.
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    /// A benchmark function refused an input.
    #[error(transparent)]
    Bench(#[from] BenchFnError),
    /// Model construction or evaluation failed.
    #[error(transparent)]
    Model(#[from] ModelError),
    /// The solver failed.
    #[error(transparent)]
    Solver(#[from] SolverError),
    /// Metric computation failed.
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    /// CSV serialization or parsing failed.
    #[error("csv: {0}")]
    Csv(String),
    /// No model realizes the requested parameter budget.
    #[error("no {family} configuration near budget {budget}")]
    BudgetUnrealizable { family: String, budget: usize },
}

/// Uniform 1D grid: `n` points from 0.01 to 1.0 inclusive.
///
/// The first point is exactly 0.01 and the last exactly 1.0; interior
/// points are `0.01 + i·(1 − 0.01)/(n − 1)`.
pub fn make_grid_1d(n: usize) -> Result<Vec<f64>, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::GridTooSmall(n));
    }
    let lo = 0.01;
    let hi = 1.0;
    let step = (hi - lo) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
    grid[n - 1] = hi;
    Ok(grid)
}

/// Full Cartesian mesh of [`make_grid_1d`] with itself: `n²` points,
/// x varying slowest.
pub fn make_grid_2d(n: usize) -> Result<Vec<(f64, f64)>, ExperimentError> {
    let axis = make_grid_1d(n)?;
    let mut points = Vec::with_capacity(n * n);
    for &x in &axis {
        for &y in &axis {
            points.push((x, y));
        }
    }
    Ok(points)
}

/// A function sampled on a grid, ready to fit: inputs, targets, and
/// the provenance needed to rebuild it.
#[derive(Debug, Clone)]
pub struct SampledDataset {
    /// Grid points, one row per sample.
    pub inputs: InputBatch,
    /// Function values at the grid points.
    pub targets: Vec<f64>,
    /// Stable function id (`f1`..`f5`, `gauss2d`, `rosenbrock`).
    pub func: String,
    /// Grid size: total points in 1D, points per axis in 2D.
    pub grid_n: usize,
}

/// Samples a 1D benchmark function on the `n`-point grid.
pub fn sample_function_1d(
    f: &BenchFunction1D,
    n: usize,
) -> Result<SampledDataset, ExperimentError> {
    let grid = make_grid_1d(n)?;
    let mut targets = Vec::with_capacity(n);
    for &x in &grid {
        targets.push(f.eval(x)?);
    }
    Ok(SampledDataset {
        inputs: InputBatch::from_1d(&grid),
        targets,
        func: f.name().to_string(),
        grid_n: n,
    })
}

/// Samples a 2D benchmark function on the `n × n` mesh.
pub fn sample_function_2d(
    f: &BenchFunction2D,
    n: usize,
) -> Result<SampledDataset, ExperimentError> {
    let points = make_grid_2d(n)?;
    let mut data = Vec::with_capacity(points.len() * 2);
    let mut targets = Vec::with_capacity(points.len());
    for &(x, y) in &points {
        data.push(x);
        data.push(y);
        targets.push(f.eval(x, y));
    }
    Ok(SampledDataset {
        inputs: InputBatch::new(2, data)?,
        targets,
        func: f.name().to_string(),
        grid_n: n,
    })
}

/// A fitted model with its error and solver diagnostics.
pub struct FitOutcome {
    /// The model with fitted parameters applied.
    pub model: Box<dyn Model>,
    /// Relative L² error against the dataset targets.
    pub rel_l2: f64,
    /// Solver report (synthesized for the linear fast path).
    pub report: FitReport,
}

/// Fits a model spec to a dataset under the shared protocol and
/// evaluates its relative L² error on the same grid.
///
/// Linear-in-parameters models (Fourier) go through the exact linear
/// solve; everything else runs the trust-region solver with `starts`
/// seeded starting points (start 0 is the model's initialization at
/// `config.seed`, start `k` at `config.seed + k`).
pub fn fit_model_on(
    spec: &ModelSpec,
    data: &SampledDataset,
    config: &SolverConfig,
    starts: usize,
) -> Result<FitOutcome, ExperimentError> {
    let mut model = spec.instantiate(data.inputs.dim())?;

    if model.is_linear() {
        let design = model.jacobian_batch(&data.inputs)?;
        let initial_norm = DVector::from_column_slice(&data.targets).norm();
        let beta = fit_linear(&design, &data.targets)?;
        model.set_params(&beta)?;
        let predictions = model.forward_batch(&data.inputs)?;
        let residual_norm = (&predictions - DVector::from_column_slice(&data.targets)).norm();
        let report = FitReport {
            params: beta,
            final_cost: 0.5 * residual_norm * residual_norm,
            residual_norm_history: vec![initial_norm, residual_norm],
            iterations: 1,
            jacobian_evals: 1,
            termination: Termination::Gtol,
        };
        let rel_l2 = relative_l2(&data.targets, predictions.as_slice())?;
        return Ok(FitOutcome {
            model,
            rel_l2,
            report,
        });
    }

    let p0 = model.init_params(config.seed);
    let base = model.clone_model();
    let base_j = model.clone_model();
    let base_s = model.clone_model();
    let inputs = &data.inputs;
    let targets = DVector::from_column_slice(&data.targets);
    let targets_for_res = targets.clone();
    let problem = LeastSquaresProblem::new(
        p0.as_slice().to_vec(),
        data.targets.len(),
        move |p| {
            let mut m = base.clone_model();
            m.set_params(p).expect("solver preserves parameter count");
            m.forward_batch(inputs).expect("pure forward on a fixed grid") - &targets_for_res
        },
        move |p| {
            let mut m = base_j.clone_model();
            m.set_params(p).expect("solver preserves parameter count");
            m.jacobian_batch(inputs).expect("pure jacobian on a fixed grid")
        },
    )
    .with_start_points(move |seed| base_s.init_params(seed).as_slice().to_vec());

    let report = multi_start_fit(&problem, config, starts.max(1))?;
    model.set_params(&report.params)?;
    let predictions = model.forward_batch(&data.inputs)?;
    let rel_l2 = relative_l2(&data.targets, predictions.as_slice())?;
    Ok(FitOutcome {
        model,
        rel_l2,
        report,
    })
}

/// FNV-1a 64-bit hash of the root seed and a cell's identifying fields.
/// Cells keep their seeds when a sweep gains new functions, models, or
/// grid sizes.
pub fn cell_seed(root: u64, func: &str, model_spec: &str, size: usize) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x1_0000_0100_0000_01b3_u128 as u64;
    let mut h = OFFSET;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    eat(&root.to_le_bytes());
    eat(&[0xff]);
    eat(func.as_bytes());
    eat(&[0xff]);
    eat(model_spec.as_bytes());
    eat(&[0xff]);
    eat(&(size as u64).to_le_bytes());
    h
}

/// Shared sweep protocol: solver template, iteration budget rule, and
/// start counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepProtocol {
    /// Tolerances, initial radius, and the root seed. `max_iterations`
    /// in this template is ignored; each cell gets
    /// `max_iter_per_param × param_count`.
    pub solver: SolverConfig,
    /// Iteration budget per fitted parameter (default 100).
    pub max_iter_per_param: usize,
    /// Starts for nonlinear models (default 5); linear models always
    /// use the exact solve.
    pub starts_nonlinear: usize,
    /// Evaluate error on a 2×-denser grid (2n−1 points per axis,
    /// endpoints aligned) instead of the fitting grid.
    pub holdout: bool,
}

impl Default for SweepProtocol {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            max_iter_per_param: 100,
            starts_nonlinear: 5,
            holdout: false,
        }
    }
}

/// One sweep cell's outcome, in CSV column order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepRow {
    /// Benchmark function id.
    pub func: String,
    /// Canonical model spec string.
    pub model_spec: String,
    /// Grid points (1D) or points per axis (2D).
    pub grid_n: usize,
    /// Model parameter count.
    pub param_count: usize,
    /// Model cost per forward evaluation under the sweep's cost model.
    pub flops: f64,
    /// Relative L² error (NaN when the fit failed).
    pub rel_l2: f64,
    /// Final solver cost `½‖r‖²` (NaN when the fit failed).
    pub final_cost: f64,
    /// Solver iterations used.
    pub iters: usize,
    /// Termination reason, or `error` when the fit failed.
    pub term_reason: String,
    /// The cell's derived seed.
    pub seed: u64,
    /// Number of starts used.
    pub starts: usize,
}

/// A completed sweep: rows in configuration order plus everything
/// needed to reproduce them.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// One row per (function, size, model) cell, in configuration order.
    pub rows: Vec<SweepRow>,
    /// The protocol the sweep ran with (solver template included).
    pub protocol: SweepProtocol,
    /// The cost model used for the flops column.
    pub cost_model: CostModel,
}

struct CellSpec<'a> {
    func: String,
    spec: &'a ModelSpec,
    size: usize,
}

fn run_cell(
    data: Result<SampledDataset, ExperimentError>,
    eval_data: Option<Result<SampledDataset, ExperimentError>>,
    cell: &CellSpec,
    protocol: &SweepProtocol,
    cost_model: &CostModel,
    input_dim: usize,
) -> SweepRow {
    let spec_string = cell.spec.to_string();
    let seed = cell_seed(protocol.solver.seed, &cell.func, &spec_string, cell.size);
    let param_count = cell.spec.param_count(input_dim);
    let flops = model_flops(&cell.spec.shape(input_dim), cost_model);
    let starts = if cell.spec.is_linear() {
        1
    } else {
        protocol.starts_nonlinear
    };
    let config = SolverConfig {
        max_iterations: protocol.max_iter_per_param * param_count.max(1),
        seed,
        ..protocol.solver.clone()
    };

    let outcome = data.and_then(|d| {
        let fitted = fit_model_on(cell.spec, &d, &config, starts)?;
        match eval_data {
            None => Ok(fitted),
            Some(eval) => {
                let eval = eval?;
                let predictions = fitted.model.forward_batch(&eval.inputs)?;
                let rel_l2 = relative_l2(&eval.targets, predictions.as_slice())?;
                Ok(FitOutcome { rel_l2, ..fitted })
            }
        }
    });

    match outcome {
        Ok(fit) => SweepRow {
            func: cell.func.clone(),
            model_spec: spec_string,
            grid_n: cell.size,
            param_count,
            flops,
            rel_l2: fit.rel_l2,
            final_cost: fit.report.final_cost,
            iters: fit.report.iterations,
            term_reason: fit.report.termination.name().to_string(),
            seed,
            starts,
        },
        Err(_) => SweepRow {
            func: cell.func.clone(),
            model_spec: spec_string,
            grid_n: cell.size,
            param_count,
            flops,
            rel_l2: f64::NAN,
            final_cost: f64::NAN,
            iters: 0,
            term_reason: "error".to_string(),
            seed,
            starts,
        },
    }
}

/// Error versus grid size on the 1D benchmark functions.
///
/// Cells are laid out function-major, then grid size, then model, and
/// executed on a work pool; row order follows the configuration, not
/// completion. A failed fit is recorded in its row (`term_reason =
/// "error"`, NaN metrics) and the sweep continues.
pub fn run_1d_sweep(
    funcs: &[BenchFunction1D],
    grid_sizes: &[usize],
    models: &[ModelSpec],
    protocol: &SweepProtocol,
    cost_model: &CostModel,
) -> SweepResult {
    let mut cells = Vec::new();
    for f in funcs {
        for &n in grid_sizes {
            for spec in models {
                cells.push((f.clone(), CellSpec {
                    func: f.name().to_string(),
                    spec,
                    size: n,
                }));
            }
        }
    }
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|(f, cell)| {
            let data = sample_function_1d(f, cell.size);
            let eval = protocol
                .holdout
                .then(|| sample_function_1d(f, 2 * cell.size - 1));
            run_cell(data, eval, cell, protocol, cost_model, 1)
        })
        .collect();
    SweepResult {
        rows,
        protocol: protocol.clone(),
        cost_model: cost_model.clone(),
    }
}

/// Error versus parameter budget on the 2D benchmark functions.
///
/// `models` are the realized specs per budget (see [`realize_budget`]);
/// each is fitted on the `grid_n × grid_n` mesh. Layout is
/// function-major, then model in the given order.
pub fn run_2d_sweep(
    funcs: &[BenchFunction2D],
    models: &[ModelSpec],
    grid_n: usize,
    protocol: &SweepProtocol,
    cost_model: &CostModel,
) -> SweepResult {
    let mut cells = Vec::new();
    for f in funcs {
        for spec in models {
            cells.push((f.clone(), CellSpec {
                func: f.name().to_string(),
                spec,
                size: grid_n,
            }));
        }
    }
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|(f, cell)| {
            let data = sample_function_2d(f, cell.size);
            let eval = protocol
                .holdout
                .then(|| sample_function_2d(f, 2 * cell.size - 1));
            run_cell(data, eval, cell, protocol, cost_model, 2)
        })
        .collect();
    SweepResult {
        rows,
        protocol: protocol.clone(),
        cost_model: cost_model.clone(),
    }
}

/// The 2D model families that parameter budgets are realized for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFamily2d {
    /// Two-layer SineKAN (`sinekan2`).
    SineKan2,
    /// MLP with ReLU activation.
    MlpRelu,
    /// MLP with sine activation.
    MlpSine,
    /// Bivariate Fourier series.
    Fourier2d,
}

impl ModelFamily2d {
    /// All four families in canonical order.
    pub fn all() -> [ModelFamily2d; 4] {
        [
            ModelFamily2d::SineKan2,
            ModelFamily2d::MlpRelu,
            ModelFamily2d::MlpSine,
            ModelFamily2d::Fourier2d,
        ]
    }

    /// Stable name used in CLI flags.
    pub fn name(self) -> &'static str {
        match self {
            ModelFamily2d::SineKan2 => "sinekan2",
            ModelFamily2d::MlpRelu => "mlp:relu",
            ModelFamily2d::MlpSine => "mlp:sine",
            ModelFamily2d::Fourier2d => "fourier2d",
        }
    }
}

impl std::str::FromStr for ModelFamily2d {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sinekan2" => Ok(ModelFamily2d::SineKan2),
            "mlp:relu" | "mlp-relu" => Ok(ModelFamily2d::MlpRelu),
            "mlp:sine" | "mlp-sine" => Ok(ModelFamily2d::MlpSine),
            "fourier2d" => Ok(ModelFamily2d::Fourier2d),
            other => Err(format!(
                "unknown 2d model family `{other}` (expected sinekan2, mlp:relu, mlp:sine, fourier2d)"
            )),
        }
    }
}

/// Picks the family configuration whose parameter count (at input
/// dimension 2, scalar output) lands nearest the budget; ties go to
/// the smaller count.
pub fn realize_budget(
    family: ModelFamily2d,
    budget: usize,
) -> Result<ModelSpec, ExperimentError> {
    let mut best: Option<(usize, ModelSpec)> = None;
    let mut consider = |count: usize, spec: ModelSpec| {
        let dist = count.abs_diff(budget);
        let better = match &best {
            None => true,
            Some((best_count, _)) => {
                let best_dist = best_count.abs_diff(budget);
                dist < best_dist || (dist == best_dist && count < *best_count)
            }
        };
        if better {
            best = Some((count, spec));
        }
    };

    match family {
        ModelFamily2d::SineKan2 => {
            for g in 2..=16usize {
                for h in 2..=64usize {
                    let spec = ModelSpec::SineKan2 { g1: g, hidden: h, g2: g };
                    consider(spec.param_count(2), spec);
                }
            }
        }
        ModelFamily2d::MlpRelu | ModelFamily2d::MlpSine => {
            let activation = if family == ModelFamily2d::MlpRelu {
                crate::models::Activation::Relu
            } else {
                crate::models::Activation::Sine
            };
            for h in 1..=400usize {
                let spec = ModelSpec::Mlp { hidden: h, activation };
                consider(spec.param_count(2), spec);
            }
        }
        ModelFamily2d::Fourier2d => {
            for k in 1..=20usize {
                let spec = ModelSpec::Fourier2d { k };
                consider(spec.param_count(2), spec);
            }
        }
    }

    best.map(|(_, spec)| spec)
        .ok_or_else(|| ExperimentError::BudgetUnrealizable {
            family: family.name().to_string(),
            budget,
        })
}

/// CSV schema version written in the header comment.
pub const CSV_SCHEMA: &str = "func,model_spec,grid_n,param_count,flops,rel_l2,final_cost,iters,term_reason,seed,starts";

/// Writes a sweep as CSV: a `#` comment line carrying the library
/// version, cost model, and full protocol (solver config included),
/// then the header row, then
/// one record per cell. Field quoting follows RFC 4180 (model specs
/// contain commas). Output is byte-identical across reruns of the same
/// configuration.
pub fn write_csv(result: &SweepResult, out: &mut impl Write) -> Result<(), ExperimentError> {
    let meta = format!(
        "# sinekan v{} cost_model={} protocol={}\n",
        env!("CARGO_PKG_VERSION"),
        serde_json::to_string(&result.cost_model).map_err(|e| ExperimentError::Csv(e.to_string()))?,
        serde_json::to_string(&result.protocol).map_err(|e| ExperimentError::Csv(e.to_string()))?,
    );
    out.write_all(meta.as_bytes())
        .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    let mut writer = csv::Writer::from_writer(out);
    writer
        .write_record(CSV_SCHEMA.split(','))
        .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    for row in &result.rows {
        writer
            .write_record(&[
                row.func.clone(),
                row.model_spec.clone(),
                row.grid_n.to_string(),
                row.param_count.to_string(),
                row.flops.to_string(),
                row.rel_l2.to_string(),
                row.final_cost.to_string(),
                row.iters.to_string(),
                row.term_reason.clone(),
                row.seed.to_string(),
                row.starts.to_string(),
            ])
            .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    }
    writer
        .flush()
        .map_err(|e| ExperimentError::Csv(e.to_string()))?;
    Ok(())
}

/// Parses rows back from [`write_csv`] output (the `#` comment line is
/// skipped).
pub fn read_csv(input: &mut impl Read) -> Result<Vec<SweepRow>, ExperimentError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: SweepRow = record.map_err(|e| ExperimentError::Csv(e.to_string()))?;
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchfns::Func1dId;

    #[test]
    fn grid_1d_endpoints_and_spacing() {
        let g = make_grid_1d(2).unwrap();
        assert_eq!(g, vec![0.01, 1.0]);

        let g = make_grid_1d(100).unwrap();
        assert_eq!(g.len(), 100);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[99], 1.0);
        let spacing = g[1] - g[0];
        assert!((spacing - 0.01).abs() < 1e-15);

        for n in [2usize, 3, 7, 100, 101] {
            let g = make_grid_1d(n).unwrap();
            for w in g.windows(2) {
                assert!(w[1] > w[0], "grid must increase strictly");
            }
            assert_eq!(g[0], 0.01);
            assert_eq!(*g.last().unwrap(), 1.0);
        }

        assert!(matches!(
            make_grid_1d(1),
            Err(ExperimentError::GridTooSmall(1))
        ));
    }

    #[test]
    fn grid_2d_is_cartesian_x_outer() {
        let g = make_grid_2d(2).unwrap();
        assert_eq!(
            g,
            vec![(0.01, 0.01), (0.01, 1.0), (1.0, 0.01), (1.0, 1.0)]
        );
        assert_eq!(make_grid_2d(10).unwrap().len(), 100);
    }

    #[test]
    fn sampled_datasets_are_well_formed() {
        let d = sample_function_1d(&BenchFunction1D::f2(), 50).unwrap();
        assert_eq!(d.targets.len(), 50);
        assert_eq!(d.inputs.len(), 50);
        assert_eq!(d.func, "f2");
        assert!(d.targets.iter().all(|t| t.is_finite()));

        let d = sample_function_2d(&BenchFunction2D::gaussian_wells(), 10).unwrap();
        assert_eq!(d.targets.len(), 100);
        assert_eq!(d.inputs.dim(), 2);
        assert_eq!(d.grid_n, 10);
    }

    #[test]
    fn fourier_fits_its_own_span_exactly() {
        use std::f64::consts::TAU;
        let grid = make_grid_1d(100).unwrap();
        let targets: Vec<f64> = grid.iter().map(|&x| (TAU * x).sin()).collect();
        let data = SampledDataset {
            inputs: InputBatch::from_1d(&grid),
            targets,
            func: "sin2pix".to_string(),
            grid_n: 100,
        };
        let spec: ModelSpec = "fourier:K=1".parse().unwrap();
        let outcome = fit_model_on(&spec, &data, &SolverConfig::default(), 1).unwrap();
        assert!(outcome.rel_l2 < 1e-6, "rel_l2 = {}", outcome.rel_l2);
        assert_eq!(outcome.report.jacobian_evals, 1);
    }

    #[test]
    fn nonlinear_fit_improves_on_initialization() {
        let data = sample_function_1d(&BenchFunction1D::f5(), 40).unwrap();
        let spec: ModelSpec = "sinekan1d:G=4".parse().unwrap();
        let config = SolverConfig {
            max_iterations: 150,
            ..SolverConfig::default()
        };
        let outcome = fit_model_on(&spec, &data, &config, 1).unwrap();
        let history = &outcome.report.residual_norm_history;
        assert!(history.last().unwrap() <= history.first().unwrap());
        assert!(outcome.rel_l2 < 1.0);
    }

    #[test]
    fn cell_seed_is_stable_and_field_sensitive() {
        let s = cell_seed(42, "f1", "sinekan1d:G=8", 100);
        assert_eq!(s, cell_seed(42, "f1", "sinekan1d:G=8", 100));
        assert_ne!(s, cell_seed(43, "f1", "sinekan1d:G=8", 100));
        assert_ne!(s, cell_seed(42, "f2", "sinekan1d:G=8", 100));
        assert_ne!(s, cell_seed(42, "f1", "sinekan1d:G=9", 100));
        assert_ne!(s, cell_seed(42, "f1", "sinekan1d:G=8", 101));
        // Concatenation cannot collide across the separator.
        assert_ne!(
            cell_seed(42, "f1x", "m", 1),
            cell_seed(42, "f1", "xm", 1)
        );
    }

    #[test]
    fn sweep_rows_follow_config_order() {
        let funcs = vec![
            BenchFunction1D::f2(),
            BenchFunction1D::new(Func1dId::Func5, 5).unwrap(),
        ];
        let models: Vec<ModelSpec> =
            vec!["fourier:K=2".parse().unwrap(), "fourier:K=4".parse().unwrap()];
        let protocol = SweepProtocol::default();
        let result = run_1d_sweep(&funcs, &[20, 40], &models, &protocol, &CostModel::default());
        assert_eq!(result.rows.len(), 8);
        let expect = [
            ("f2", 20, "fourier:K=2"),
            ("f2", 20, "fourier:K=4"),
            ("f2", 40, "fourier:K=2"),
            ("f2", 40, "fourier:K=4"),
            ("f5", 20, "fourier:K=2"),
            ("f5", 20, "fourier:K=4"),
            ("f5", 40, "fourier:K=2"),
            ("f5", 40, "fourier:K=4"),
        ];
        for (row, (f, n, m)) in result.rows.iter().zip(expect) {
            assert_eq!(row.func, f);
            assert_eq!(row.grid_n, n);
            assert_eq!(row.model_spec, m);
            assert_eq!(row.starts, 1, "linear models use the exact solve");
            assert!(row.rel_l2.is_finite());
        }
    }

    #[test]
    fn fourier_error_non_increasing_in_k() {
        let funcs = vec![BenchFunction1D::f2()];
        let models: Vec<ModelSpec> = [1usize, 2, 4, 8]
            .iter()
            .map(|k| format!("fourier:K={k}").parse().unwrap())
            .collect();
        let protocol = SweepProtocol::default();
        let result = run_1d_sweep(&funcs, &[60], &models, &protocol, &CostModel::default());
        let errs: Vec<f64> = result.rows.iter().map(|r| r.rel_l2).collect();
        for w in errs.windows(2) {
            assert!(
                w[1] <= w[0] * (1.0 + 1e-12),
                "nested spans must not get worse: {errs:?}"
            );
        }
    }

    #[test]
    fn csv_round_trip_and_determinism() {
        let funcs = vec![BenchFunction1D::f2()];
        let models: Vec<ModelSpec> = vec![
            "fourier:K=3".parse().unwrap(),
            "sinekan1d:G=2".parse().unwrap(),
        ];
        let protocol = SweepProtocol {
            max_iter_per_param: 20,
            starts_nonlinear: 2,
            ..SweepProtocol::default()
        };
        let run = || {
            let result =
                run_1d_sweep(&funcs, &[25], &models, &protocol, &CostModel::default());
            let mut bytes = Vec::new();
            write_csv(&result, &mut bytes).unwrap();
            (result, bytes)
        };
        let (result, bytes) = run();
        let (_, bytes2) = run();
        assert_eq!(bytes, bytes2, "reruns must be byte-identical");

        let rows = read_csv(&mut bytes.as_slice()).unwrap();
        assert_eq!(rows, result.rows);
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with("# sinekan v"));
        assert!(text.contains("protocol={\"solver\""), "header embeds the protocol");
        assert!(text.contains(CSV_SCHEMA.split(',').next().unwrap()));
        assert!(!text.contains("sinekan2:"), "no 2d specs in this sweep");
    }

    #[test]
    fn model_spec_with_commas_survives_csv() {
        let result = SweepResult {
            rows: vec![SweepRow {
                func: "gauss2d".into(),
                model_spec: "sinekan2:G1=4,H=8,G2=4".into(),
                grid_n: 100,
                param_count: 113,
                flops: 1234.5,
                rel_l2: 0.25,
                final_cost: 0.125,
                iters: 7,
                term_reason: "max_iter".into(),
                seed: 99,
                starts: 3,
            }],
            protocol: SweepProtocol::default(),
            cost_model: CostModel::default(),
        };
        let mut bytes = Vec::new();
        write_csv(&result, &mut bytes).unwrap();
        let rows = read_csv(&mut bytes.as_slice()).unwrap();
        assert_eq!(rows, result.rows);
        assert_eq!(rows[0].model_spec, "sinekan2:G1=4,H=8,G2=4");
    }

    #[test]
    fn budget_realization_hits_documented_sizes() {
        let spec = realize_budget(ModelFamily2d::MlpRelu, 121).unwrap();
        assert_eq!(spec.param_count(2), 121);
        assert_eq!(spec.to_string(), "mlp:H=30,act=relu");

        let spec = realize_budget(ModelFamily2d::Fourier2d, 121).unwrap();
        assert_eq!(spec.param_count(2), 121);
        assert_eq!(spec.to_string(), "fourier2d:K=5");

        let spec = realize_budget(ModelFamily2d::SineKan2, 121).unwrap();
        let count = spec.param_count(2);
        assert!(count.abs_diff(121) <= 12, "within 10%: got {count}");

        let spec = realize_budget(ModelFamily2d::MlpSine, 50).unwrap();
        assert_eq!(spec.param_count(2), 49);
        assert_eq!(spec.to_string(), "mlp:H=12,act=sine");

        // Realization must be the argmin over each family's size ladder.
        for budget in [50usize, 100, 200, 400, 800] {
            for family in ModelFamily2d::all() {
                let spec = realize_budget(family, budget).unwrap();
                let count = spec.param_count(2);
                let ladder: Vec<usize> = match family {
                    ModelFamily2d::Fourier2d => {
                        (1..=20).map(|k| (2 * k + 1) * (2 * k + 1)).collect()
                    }
                    ModelFamily2d::MlpRelu | ModelFamily2d::MlpSine => {
                        (1..=400).map(|h| 4 * h + 1).collect()
                    }
                    ModelFamily2d::SineKan2 => (2..=16usize)
                        .flat_map(|g| (2..=64usize).map(move |h| 3 * g * h + 2 * g + h + 1))
                        .collect(),
                };
                let best = ladder.iter().map(|c| c.abs_diff(budget)).min().unwrap();
                assert_eq!(
                    count.abs_diff(budget),
                    best,
                    "{family:?} at {budget}: {count}"
                );
            }
        }
    }

    #[test]
    fn two_d_sweep_emits_budget_columns() {
        let funcs = vec![BenchFunction2D::rosenbrock()];
        let models = vec![
            realize_budget(ModelFamily2d::Fourier2d, 25).unwrap(),
            realize_budget(ModelFamily2d::Fourier2d, 49).unwrap(),
        ];
        let protocol = SweepProtocol::default();
        let result = run_2d_sweep(&funcs, &models, 20, &protocol, &CostModel::default());
        assert_eq!(result.rows.len(), 2);
        assert_eq!(result.rows[0].param_count, 25);
        assert_eq!(result.rows[1].param_count, 49);
        assert!(result.rows[1].rel_l2 <= result.rows[0].rel_l2);
        for row in &result.rows {
            assert_eq!(row.grid_n, 20);
            assert!(row.flops > 0.0);
        }
    }

    #[test]
    fn holdout_evaluates_on_denser_grid() {
        let funcs = vec![BenchFunction1D::f2()];
        let models: Vec<ModelSpec> = vec!["fourier:K=4".parse().unwrap()];
        let base = SweepProtocol::default();
        let held = SweepProtocol {
            holdout: true,
            ..SweepProtocol::default()
        };
        let cost = CostModel::default();
        let on_grid = run_1d_sweep(&funcs, &[30], &models, &base, &cost);
        let off_grid = run_1d_sweep(&funcs, &[30], &models, &held, &cost);
        assert!(off_grid.rows[0].rel_l2.is_finite());
        // The denser evaluation grid actually changes the measurement.
        assert_ne!(off_grid.rows[0].rel_l2, on_grid.rows[0].rel_l2);
        assert_eq!(off_grid.rows[0].grid_n, 30, "provenance records the fit grid");
    }
}

//! Relative L² error and the FLOP cost model.
//!
//! Model cost is counted per forward evaluation of a single input point, as
//! a weighted sum of four primitive operations: `add`, `mul`, `relu`, `sin`
//! (cosines count as `sin`). The default weights are `add = mul = 1`,
//! `relu = 1.5`, `sin = 12`, from a numpy-style wall-clock calibration; a
//! torch-style alternative (`relu = 1`, `sin = 3.5`) and a live measurement
//! on the host ([`measure_costs`]) are also available.
//!
//! The exact per-family counting formulas live in [`model_flops`]; they are
//! what the benchmark CSV and plots use for their FLOP axes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::ModelShape;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("relative L2 error is undefined for empty vectors")]
    Empty,
    #[error("relative L2 error is undefined when the reference has zero norm")]
    ZeroNorm,
    #[error(
        "kernel ran too fast to time ({elapsed_ns} ns for {iterations} iterations); \
         increase iterations or batch size"
    )]
    TimerResolution { elapsed_ns: u128, iterations: usize },
}

/// Where a [`CostModel`]'s weights came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CostSource {
    /// The built-in numpy-calibrated weights.
    #[default]
    Defaults,
    /// The built-in torch-calibrated weights.
    Torchlike,
    /// Measured on this host by [`measure_costs`].
    Measured,
}

/// Per-primitive FLOP weights. Serializes to a bare `{add, mul, relu, sin}`
/// object (the source tag is not persisted), which is how it is embedded in
/// benchmark CSV headers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub add: f64,
    pub mul: f64,
    pub relu: f64,
    pub sin: f64,
    #[serde(skip)]
    pub source: CostSource,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { add: 1.0, mul: 1.0, relu: 1.5, sin: 12.0, source: CostSource::Defaults }
    }
}

impl CostModel {
    /// Torch-calibrated alternative: sine is only ~3.5 adds, ReLU ~1.
    pub fn torchlike() -> Self {
        CostModel { add: 1.0, mul: 1.0, relu: 1.0, sin: 3.5, source: CostSource::Torchlike }
    }
}

/// `‖y_true − y_fit‖₂ / ‖y_true‖₂`.
///
/// Scale-invariant: scaling both vectors by the same nonzero factor leaves
/// the result unchanged. Errors if the lengths differ, the vectors are
/// empty, or `y_true` has zero norm (the metric is undefined there).
pub fn relative_l2(y_true: &[f64], y_fit: &[f64]) -> Result<f64, MetricsError> {
    if y_true.len() != y_fit.len() {
        return Err(MetricsError::LengthMismatch { left: y_true.len(), right: y_fit.len() });
    }
    if y_true.is_empty() {
        return Err(MetricsError::Empty);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, f) in y_true.iter().zip(y_fit) {
        let d = t - f;
        num += d * d;
        den += t * t;
    }
    if den == 0.0 {
        return Err(MetricsError::ZeroNorm);
    }
    Ok((num / den).sqrt())
}

/// FLOPs for one forward evaluation of a model, under the given weights.
///
/// Counting conventions, per family (`M` summed terms cost `M` adds when a
/// running accumulator plus bias is used, `M − 1` when it is a bare dot
/// product; each family below states its count explicitly):
///
/// - `SineKan1d { g }`: arguments `ω_k·x + φ_k` cost `G` muls and `G` adds,
///   `G` sines, amplitude products `G` muls, accumulation plus bias `G + 1`
///   adds: total `2G·mul + (2G+1)·add + G·sin`.
/// - `SineKan2 { .. }`: two such layers; a layer from `d_in` inputs to
///   `d_out` outputs with grid `G` costs `G·d_in·(1 + d_out)` muls,
///   `G·d_in + d_out·(G·d_in + 1)` adds, and `G·d_in` sines (the sine table
///   is shared across outputs).
/// - `Mlp { .. }`: dense layers count `H·n + m·H` muls and the same number
///   of adds (dot products of length `n` cost `n − 1` adds, plus one bias
///   add each), and `H` activations, weighted by `relu` for ReLU and `sin`
///   for sine activation.
/// - `Fourier1d { k }`: harmonic arguments `K` muls (plus one for `2πx`),
///   `2K` sine-class evaluations, `2K` coefficient muls, `2K` adds:
///   `(3K+1)·mul + 2K·add + 2K·sin`.
/// - `Fourier2d { k }`: per-axis tables cost `2K + 2` muls and `4K` sines;
///   the `(2K+1)²` products cost `8K² + 4K` muls and `4K² + 4K` adds.
pub fn model_flops(shape: &ModelShape, cost: &CostModel) -> f64 {
    fn sine_layer(d_in: usize, d_out: usize, g: usize, cost: &CostModel) -> f64 {
        let (d_in, d_out, g) = (d_in as f64, d_out as f64, g as f64);
        let args = g * d_in;
        let muls = args * (1.0 + d_out);
        let adds = args + d_out * (args + 1.0);
        muls * cost.mul + adds * cost.add + args * cost.sin
    }
    match *shape {
        ModelShape::SineKan1d { g } => sine_layer(1, 1, g, cost),
        ModelShape::SineKan2 { input_dim, g1, hidden, g2, output_dim } => {
            sine_layer(input_dim, hidden, g1, cost) + sine_layer(hidden, output_dim, g2, cost)
        }
        ModelShape::Mlp { input_dim, hidden, output_dim, activation } => {
            let (n, h, m) = (input_dim as f64, hidden as f64, output_dim as f64);
            let linear = h * n + m * h;
            let act_w = match activation {
                crate::models::Activation::Relu => cost.relu,
                crate::models::Activation::Sine => cost.sin,
            };
            linear * cost.mul + linear * cost.add + h * act_w
        }
        ModelShape::Fourier1d { k } => {
            let k = k as f64;
            (3.0 * k + 1.0) * cost.mul + 2.0 * k * cost.add + 2.0 * k * cost.sin
        }
        ModelShape::Fourier2d { k } => {
            let k = k as f64;
            let table_muls = 2.0 * k + 2.0;
            let product_muls = 8.0 * k * k + 4.0 * k;
            let adds = 4.0 * k * k + 4.0 * k;
            (table_muls + product_muls) * cost.mul + adds * cost.add + 4.0 * k * cost.sin
        }
    }
}

/// A [`measure_costs`] result: the normalized weights plus the raw per-op
/// timings behind them (ns per primitive, in `[add, mul, relu, sin]` order).
#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub model: CostModel,
    pub ns_per_op: [f64; 4],
    pub iterations: usize,
    pub batch_size: usize,
}

/// Estimate relative primitive costs on this host by timing vectorized
/// kernels over `batch_size`-element arrays, `iterations` passes each, and
/// normalizing so `add = 1`.
///
/// Run it on a quiet machine; it is a wall-clock ratio estimate, not a
/// cycle-accurate count. Errors if a kernel completes too fast for the
/// timer to resolve (under a microsecond): raise `iterations` or
/// `batch_size`.
pub fn measure_costs(iterations: usize, batch_size: usize) -> Result<Measurement, MetricsError> {
    use std::hint::black_box;
    use std::time::Instant;

    assert!(iterations >= 1, "iterations must be at least 1");
    assert!(batch_size >= 1, "batch_size must be at least 1");

    // Mixed-sign, mixed-magnitude operands so relu and sin do real work.
    let a: Vec<f64> = (0..batch_size)
        .map(|i| ((i % 17) as f64 - 8.0) * 0.37 + 0.11)
        .collect();
    let b: Vec<f64> = (0..batch_size)
        .map(|i| ((i % 23) as f64 - 11.0) * 0.29 + 0.07)
        .collect();
    let mut out = vec![0.0f64; batch_size];

    let mut time_kernel = |f: &dyn Fn(&[f64], &[f64], &mut [f64])| -> Result<f64, MetricsError> {
        // Warm up caches and branch predictors before the timed passes.
        f(black_box(&a), black_box(&b), black_box(&mut out));
        let start = Instant::now();
        for _ in 0..iterations {
            f(black_box(&a), black_box(&b), black_box(&mut out));
        }
        let elapsed = start.elapsed().as_nanos();
        if elapsed < 1_000 {
            return Err(MetricsError::TimerResolution { elapsed_ns: elapsed, iterations });
        }
        Ok(elapsed as f64 / (iterations as f64 * batch_size as f64))
    };

    let t_add = time_kernel(&|a, b, out| {
        for i in 0..out.len() {
            out[i] = a[i] + b[i];
        }
    })?;
    let t_mul = time_kernel(&|a, b, out| {
        for i in 0..out.len() {
            out[i] = a[i] * b[i];
        }
    })?;
    let t_relu = time_kernel(&|a, _b, out| {
        for i in 0..out.len() {
            out[i] = a[i].max(0.0);
        }
    })?;
    let t_sin = time_kernel(&|a, _b, out| {
        for i in 0..out.len() {
            out[i] = a[i].sin();
        }
    })?;

    Ok(Measurement {
        model: CostModel {
            add: 1.0,
            mul: t_mul / t_add,
            relu: t_relu / t_add,
            sin: t_sin / t_add,
            source: CostSource::Measured,
        },
        ns_per_op: [t_add, t_mul, t_relu, t_sin],
        iterations,
        batch_size,
    })
}

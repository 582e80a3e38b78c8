//! The four model families under test: SineKAN with one input, two-layer
//! SineKAN, truncated Fourier series (1D and 2D), and a two-layer MLP with
//! ReLU or sine activation.
//!
//! Every model exposes the same surface: a flat parameter vector with a
//! documented layout, batched forward evaluation, and an analytic Jacobian
//! with respect to the parameters. That is all the least-squares machinery
//! in [`crate::solver`] needs.
//!
//! Models are value objects: [`Model::set_params`] replaces the parameters,
//! everything else is pure, and clones are independent.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

mod fourier;
mod mlp;
mod sinekan1d;
mod sinekan2;

pub use fourier::{Fourier1D, Fourier2D};
pub use mlp::MlpModel;
pub use sinekan1d::SineKan1D;
pub use sinekan2::SineKan2Layer;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter vector has length {got}, model expects {expected}")]
    ParamLength { expected: usize, got: usize },
    #[error("input has dimension {got}, model expects {expected}")]
    InputDim { expected: usize, got: usize },
    #[error("invalid model shape: {0}")]
    InvalidShape(String),
    #[error("invalid model spec `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },
}

/// MLP activation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Activation {
    Relu,
    Sine,
}

impl Activation {
    pub fn name(&self) -> &'static str {
        match self {
            Activation::Relu => "relu",
            Activation::Sine => "sine",
        }
    }
}

/// A batch of input points, row-major: sample `i` occupies
/// `data[i*dim .. (i+1)*dim]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputBatch {
    dim: usize,
    data: Vec<f64>,
}

impl InputBatch {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self, ModelError> {
        if dim == 0 {
            return Err(ModelError::InvalidShape("input dimension must be at least 1".into()));
        }
        if data.len() % dim != 0 {
            return Err(ModelError::InputDim { expected: dim, got: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// A batch of scalar inputs.
    pub fn from_1d(xs: &[f64]) -> Self {
        Self { dim: 1, data: xs.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Structural description of a model: family plus all size parameters.
/// [`crate::metrics::model_flops`] prices evaluations from this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelShape {
    SineKan1d { g: usize },
    SineKan2 { input_dim: usize, g1: usize, hidden: usize, g2: usize, output_dim: usize },
    Mlp { input_dim: usize, hidden: usize, output_dim: usize, activation: Activation },
    Fourier1d { k: usize },
    Fourier2d { k: usize },
}

impl ModelShape {
    pub fn input_dim(&self) -> usize {
        match *self {
            ModelShape::SineKan1d { .. } | ModelShape::Fourier1d { .. } => 1,
            ModelShape::Fourier2d { .. } => 2,
            ModelShape::SineKan2 { input_dim, .. } => input_dim,
            ModelShape::Mlp { input_dim, .. } => input_dim,
        }
    }

    pub fn output_dim(&self) -> usize {
        match *self {
            ModelShape::SineKan1d { .. } | ModelShape::Fourier1d { .. } | ModelShape::Fourier2d { .. } => 1,
            ModelShape::SineKan2 { output_dim, .. } => output_dim,
            ModelShape::Mlp { output_dim, .. } => output_dim,
        }
    }

    /// Length of the flat parameter vector.
    pub fn param_count(&self) -> usize {
        match *self {
            ModelShape::SineKan1d { g } => 2 * g + 1,
            ModelShape::SineKan2 { input_dim, g1, hidden, g2, output_dim } => {
                hidden * g1 * input_dim + g1 + hidden + output_dim * g2 * hidden + g2 + output_dim
            }
            ModelShape::Mlp { input_dim, hidden, output_dim, .. } => {
                hidden * input_dim + hidden + output_dim * hidden + output_dim
            }
            ModelShape::Fourier1d { k } => 1 + 2 * k,
            ModelShape::Fourier2d { k } => (2 * k + 1) * (2 * k + 1),
        }
    }
}

/// Common surface of all model families.
pub trait Model: Send + Sync {
    /// Family and sizes.
    fn shape(&self) -> ModelShape;

    /// Current parameters as a flat vector. The layout is fixed per family
    /// (documented on each concrete type) and round-trips through
    /// [`Model::set_params`] exactly.
    fn params(&self) -> DVector<f64>;

    /// Replace the parameters. Errors if the length is wrong.
    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError>;

    /// Evaluate the model on a batch. Returns outputs sample-major: the
    /// value for (sample `i`, output `o`) is at index `i*output_dim + o`.
    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError>;

    /// Analytic Jacobian of the batched forward pass with respect to the
    /// parameters: one row per (sample, output) pair in the same sample-major
    /// order as [`Model::forward_batch`], one column per parameter.
    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError>;

    /// Deterministic starting parameters for the given seed. Each family
    /// documents its rule; amplitude-like parameters are drawn uniformly,
    /// SineKAN frequencies start linearly spaced on `(0, 2π]`, Fourier
    /// coefficients start at zero.
    fn init_params(&self, seed: u64) -> DVector<f64>;

    /// Whether the output is linear in the parameters. Linear models are
    /// fitted by a direct least-squares solve instead of the iterative
    /// solver; their Jacobian doubles as the design matrix.
    fn is_linear(&self) -> bool {
        false
    }

    fn clone_model(&self) -> Box<dyn Model>;

    fn input_dim(&self) -> usize {
        self.shape().input_dim()
    }

    fn output_dim(&self) -> usize {
        self.shape().output_dim()
    }

    fn param_count(&self) -> usize {
        self.shape().param_count()
    }

    /// Evaluate a single input point.
    fn forward(&self, x: &[f64]) -> Result<DVector<f64>, ModelError> {
        if x.len() != self.input_dim() {
            return Err(ModelError::InputDim { expected: self.input_dim(), got: x.len() });
        }
        self.forward_batch(&InputBatch { dim: x.len(), data: x.to_vec() })
    }
}

impl Clone for Box<dyn Model> {
    fn clone(&self) -> Self {
        self.clone_model()
    }
}

/// Parsed form of a model config string.
///
/// The canonical string forms, used in CLI arguments and CSV output:
///
/// - `sinekan1d:G=16`
/// - `sinekan2:G1=8,H=16,G2=8`
/// - `mlp:H=32,act=relu` (or `act=sine`)
/// - `fourier:K=12`
/// - `fourier2d:K=5`
///
/// Specs carry only the family's own size knobs; input and output
/// dimensions come from the dataset at instantiation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelSpec {
    SineKan1d { g: usize },
    SineKan2 { g1: usize, hidden: usize, g2: usize },
    Mlp { hidden: usize, activation: Activation },
    Fourier1d { k: usize },
    Fourier2d { k: usize },
}

impl ModelSpec {
    /// The [`ModelShape`] this spec produces for a given input dimension
    /// (output dimension 1, as in all the benchmarks here).
    pub fn shape(&self, input_dim: usize) -> ModelShape {
        match *self {
            ModelSpec::SineKan1d { g } => ModelShape::SineKan1d { g },
            ModelSpec::SineKan2 { g1, hidden, g2 } => {
                ModelShape::SineKan2 { input_dim, g1, hidden, g2, output_dim: 1 }
            }
            ModelSpec::Mlp { hidden, activation } => {
                ModelShape::Mlp { input_dim, hidden, output_dim: 1, activation }
            }
            ModelSpec::Fourier1d { k } => ModelShape::Fourier1d { k },
            ModelSpec::Fourier2d { k } => ModelShape::Fourier2d { k },
        }
    }

    pub fn param_count(&self, input_dim: usize) -> usize {
        self.shape(input_dim).param_count()
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, ModelSpec::Fourier1d { .. } | ModelSpec::Fourier2d { .. })
    }

    /// Build the model with zeroed parameters and output dimension 1.
    /// Errors if the family does not accept the input dimension
    /// (`sinekan1d`/`fourier` are 1D-only, `fourier2d` is 2D-only).
    pub fn instantiate(&self, input_dim: usize) -> Result<Box<dyn Model>, ModelError> {
        match *self {
            ModelSpec::SineKan1d { g } => {
                require_dim("sinekan1d", 1, input_dim)?;
                Ok(Box::new(SineKan1D::new(g)?))
            }
            ModelSpec::SineKan2 { g1, hidden, g2 } => {
                Ok(Box::new(SineKan2Layer::new(input_dim, g1, hidden, g2, 1)?))
            }
            ModelSpec::Mlp { hidden, activation } => {
                Ok(Box::new(MlpModel::new(input_dim, hidden, 1, activation)?))
            }
            ModelSpec::Fourier1d { k } => {
                require_dim("fourier", 1, input_dim)?;
                Ok(Box::new(Fourier1D::new(k)?))
            }
            ModelSpec::Fourier2d { k } => {
                require_dim("fourier2d", 2, input_dim)?;
                Ok(Box::new(Fourier2D::new(k)?))
            }
        }
    }
}

fn require_dim(family: &str, expected: usize, got: usize) -> Result<(), ModelError> {
    if expected != got {
        return Err(ModelError::InvalidShape(format!(
            "{family} models take {expected}-dimensional input, dataset has dimension {got}"
        )));
    }
    Ok(())
}

impl std::fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ModelSpec::SineKan1d { g } => write!(f, "sinekan1d:G={g}"),
            ModelSpec::SineKan2 { g1, hidden, g2 } => {
                write!(f, "sinekan2:G1={g1},H={hidden},G2={g2}")
            }
            ModelSpec::Mlp { hidden, activation } => {
                write!(f, "mlp:H={hidden},act={}", activation.name())
            }
            ModelSpec::Fourier1d { k } => write!(f, "fourier:K={k}"),
            ModelSpec::Fourier2d { k } => write!(f, "fourier2d:K={k}"),
        }
    }
}

impl std::str::FromStr for ModelSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| ModelError::InvalidSpec { spec: s.to_string(), reason: reason.to_string() };
        let (family, rest) = match s.split_once(':') {
            Some((f, r)) => (f, r),
            None => (s, ""),
        };
        let mut keys = std::collections::BTreeMap::new();
        if !rest.is_empty() {
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| bad(&format!("expected key=value, got `{part}`")))?;
                if keys.insert(k.trim(), v.trim()).is_some() {
                    return Err(bad(&format!("duplicate key `{}`", k.trim())));
                }
            }
        }
        fn take_size(
            keys: &mut std::collections::BTreeMap<&str, &str>,
            spec: &str,
            key: &str,
        ) -> Result<usize, ModelError> {
            let bad = |reason: String| ModelError::InvalidSpec { spec: spec.to_string(), reason };
            let v = keys
                .remove(key)
                .ok_or_else(|| bad(format!("missing required key `{key}`")))?;
            let n: usize =
                v.parse().map_err(|_| bad(format!("`{key}={v}` is not a positive integer")))?;
            if n == 0 {
                return Err(bad(format!("`{key}` must be at least 1")));
            }
            Ok(n)
        }
        let spec = match family {
            "sinekan1d" => ModelSpec::SineKan1d { g: take_size(&mut keys, s, "G")? },
            "sinekan2" => {
                // `G=8` is shorthand for G1=G2=8
                if keys.contains_key("G") {
                    let g = take_size(&mut keys, s, "G")?;
                    ModelSpec::SineKan2 { g1: g, hidden: take_size(&mut keys, s, "H")?, g2: g }
                } else {
                    ModelSpec::SineKan2 {
                        g1: take_size(&mut keys, s, "G1")?,
                        hidden: take_size(&mut keys, s, "H")?,
                        g2: take_size(&mut keys, s, "G2")?,
                    }
                }
            }
            "mlp" => {
                let hidden = take_size(&mut keys, s, "H")?;
                let activation = match keys.remove("act") {
                    None | Some("relu") => Activation::Relu,
                    Some("sine") => Activation::Sine,
                    Some(other) => return Err(bad(&format!("unknown activation `{other}`"))),
                };
                ModelSpec::Mlp { hidden, activation }
            }
            "fourier" => ModelSpec::Fourier1d { k: take_size(&mut keys, s, "K")? },
            "fourier2d" => ModelSpec::Fourier2d { k: take_size(&mut keys, s, "K")? },
            other => return Err(bad(&format!("unknown model family `{other}`"))),
        };
        if let Some(extra) = keys.keys().next() {
            return Err(bad(&format!("unexpected key `{extra}` for family `{family}`")));
        }
        Ok(spec)
    }
}

/// Central-difference Jacobian, for validating the analytic ones. `h` is
/// the absolute step per parameter (`1e-6` is a good default for unit-scale
/// parameters).
pub fn finite_difference_jacobian(
    model: &dyn Model,
    xs: &InputBatch,
    h: f64,
) -> Result<DMatrix<f64>, ModelError> {
    let p0 = model.params();
    let n = p0.len();
    let rows = xs.len() * model.output_dim();
    let mut jac = DMatrix::zeros(rows, n);
    let mut work = model.clone_model();
    for j in 0..n {
        let mut p = p0.clone();
        p[j] = p0[j] + h;
        work.set_params(p.as_slice())?;
        let hi = work.forward_batch(xs)?;
        p[j] = p0[j] - h;
        work.set_params(p.as_slice())?;
        let lo = work.forward_batch(xs)?;
        for r in 0..rows {
            jac[(r, j)] = (hi[r] - lo[r]) / (2.0 * h);
        }
    }
    Ok(jac)
}

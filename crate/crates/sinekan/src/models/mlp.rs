//! Two-layer perceptron baseline with ReLU or sine activation.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Activation, InputBatch, Model, ModelError, ModelShape};

/// `z = W₂ · act(W₁ x + β₁) + β₂`.
///
/// Parameter layout (length `H·n + H + m·H + m`):
/// `[W₁ row-major (j,i), β₁, W₂ row-major (o,j), β₂]`.
///
/// Initialization (deterministic per seed): every weight and bias of a layer
/// is drawn uniformly from `(−1/√fan_in, 1/√fan_in)` — `fan_in = n` for the
/// first layer, `H` for the second — in layout order (`W₁`, `β₁`, `W₂`,
/// `β₂`).
///
/// The ReLU derivative at exactly zero is taken as 0 (the usual subgradient
/// choice); the Jacobian is discontinuous where a pre-activation crosses
/// zero, which the trust-region solver tolerates.
#[derive(Debug, Clone)]
pub struct MlpModel {
    input_dim: usize,
    hidden: usize,
    output_dim: usize,
    activation: Activation,
    w1: Vec<f64>, // H×n, index j*n + i
    b1: Vec<f64>, // H
    w2: Vec<f64>, // m×H, index o*H + j
    b2: Vec<f64>, // m
}

impl MlpModel {
    pub fn new(
        input_dim: usize,
        hidden: usize,
        output_dim: usize,
        activation: Activation,
    ) -> Result<Self, ModelError> {
        for (name, v) in [
            ("input dimension", input_dim),
            ("hidden width", hidden),
            ("output dimension", output_dim),
        ] {
            if v == 0 {
                return Err(ModelError::InvalidShape(format!("mlp needs {name} >= 1")));
            }
        }
        Ok(Self {
            input_dim,
            hidden,
            output_dim,
            activation,
            w1: vec![0.0; hidden * input_dim],
            b1: vec![0.0; hidden],
            w2: vec![0.0; output_dim * hidden],
            b2: vec![0.0; output_dim],
        })
    }

    fn act(&self, v: f64) -> f64 {
        match self.activation {
            Activation::Relu => v.max(0.0),
            Activation::Sine => v.sin(),
        }
    }

    fn act_deriv(&self, v: f64) -> f64 {
        match self.activation {
            Activation::Relu => {
                if v > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Sine => v.cos(),
        }
    }

    /// Pre-activations `W₁x + β₁` for one sample.
    fn pre_activations(&self, x: &[f64], pre: &mut [f64]) {
        let n = self.input_dim;
        for j in 0..self.hidden {
            let row = &self.w1[j * n..(j + 1) * n];
            let mut acc = self.b1[j];
            for i in 0..n {
                acc += row[i] * x[i];
            }
            pre[j] = acc;
        }
    }
}

impl Model for MlpModel {
    fn shape(&self) -> ModelShape {
        ModelShape::Mlp {
            input_dim: self.input_dim,
            hidden: self.hidden,
            output_dim: self.output_dim,
            activation: self.activation,
        }
    }

    fn params(&self) -> DVector<f64> {
        let mut p = Vec::with_capacity(self.param_count());
        p.extend_from_slice(&self.w1);
        p.extend_from_slice(&self.b1);
        p.extend_from_slice(&self.w2);
        p.extend_from_slice(&self.b2);
        DVector::from_vec(p)
    }

    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError> {
        let expected = self.param_count();
        if p.len() != expected {
            return Err(ModelError::ParamLength { expected, got: p.len() });
        }
        let (h, n, m) = (self.hidden, self.input_dim, self.output_dim);
        let mut offset = 0;
        self.w1.copy_from_slice(&p[offset..offset + h * n]);
        offset += h * n;
        self.b1.copy_from_slice(&p[offset..offset + h]);
        offset += h;
        self.w2.copy_from_slice(&p[offset..offset + m * h]);
        offset += m * h;
        self.b2.copy_from_slice(&p[offset..offset + m]);
        Ok(())
    }

    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError> {
        if xs.dim() != self.input_dim {
            return Err(ModelError::InputDim { expected: self.input_dim, got: xs.dim() });
        }
        let (h, m) = (self.hidden, self.output_dim);
        let mut pre = vec![0.0; h];
        let mut out = DVector::zeros(xs.len() * m);
        for (s, x) in xs.rows().enumerate() {
            self.pre_activations(x, &mut pre);
            for o in 0..m {
                let row = &self.w2[o * h..(o + 1) * h];
                let mut acc = self.b2[o];
                for j in 0..h {
                    acc += row[j] * self.act(pre[j]);
                }
                out[s * m + o] = acc;
            }
        }
        Ok(out)
    }

    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError> {
        if xs.dim() != self.input_dim {
            return Err(ModelError::InputDim { expected: self.input_dim, got: xs.dim() });
        }
        let (h, n, m) = (self.hidden, self.input_dim, self.output_dim);
        let off_b1 = h * n;
        let off_w2 = off_b1 + h;
        let off_b2 = off_w2 + m * h;
        let mut pre = vec![0.0; h];
        let mut act = vec![0.0; h];
        let mut deriv = vec![0.0; h];
        let mut jac = DMatrix::zeros(xs.len() * m, self.param_count());
        for (s, x) in xs.rows().enumerate() {
            self.pre_activations(x, &mut pre);
            for j in 0..h {
                act[j] = self.act(pre[j]);
                deriv[j] = self.act_deriv(pre[j]);
            }
            for o in 0..m {
                let row = s * m + o;
                let w2_o = &self.w2[o * h..(o + 1) * h];
                for j in 0..h {
                    let gate = w2_o[j] * deriv[j];
                    // ∂z_o/∂W₁[j,i] = W₂[o,j]·act'(pre_j)·x_i
                    for i in 0..n {
                        jac[(row, j * n + i)] = gate * x[i];
                    }
                    jac[(row, off_b1 + j)] = gate;
                    jac[(row, off_w2 + o * h + j)] = act[j];
                }
                jac[(row, off_b2 + o)] = 1.0;
            }
        }
        Ok(jac)
    }

    fn init_params(&self, seed: u64) -> DVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (h, n, m) = (self.hidden, self.input_dim, self.output_dim);
        let bound1 = 1.0 / (n as f64).sqrt();
        let bound2 = 1.0 / (h as f64).sqrt();
        let mut p = DVector::zeros(self.param_count());
        for i in 0..h * n + h {
            p[i] = rng.gen_range(-bound1..bound1);
        }
        let off = h * n + h;
        for i in 0..m * h + m {
            p[off + i] = rng.gen_range(-bound2..bound2);
        }
        p
    }

    fn clone_model(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
}

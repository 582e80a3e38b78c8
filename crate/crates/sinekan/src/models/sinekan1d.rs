//! SineKAN with a single input: a learnable-frequency sine expansion.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{InputBatch, Model, ModelError, ModelShape};

/// `y = Σ_{k=1..G} A_k · sin(ω_k x + φ_k) + b` with fixed phases
/// `φ_k = k/(G+1)`.
///
/// The phases are strictly increasing and all inside `(0, 1)`, so no basis
/// term degenerates to `sin(0) = 0` at zero frequency; they are constants of
/// the architecture, never parameters.
///
/// Parameter layout: `[A_1..A_G, ω_1..ω_G, b]`, length `2G + 1`.
///
/// Initialization (documented rule, deterministic per seed): amplitudes
/// drawn uniformly from `(−1/√G, 1/√G)` in index order, frequencies linearly
/// spaced `ω_k = 2πk/G` (covering `(0, 2π]`), bias zero.
#[derive(Debug, Clone)]
pub struct SineKan1D {
    grid_size: usize,
    amplitudes: DVector<f64>,
    frequencies: DVector<f64>,
    bias: f64,
    phases: DVector<f64>,
}

impl SineKan1D {
    pub fn new(grid_size: usize) -> Result<Self, ModelError> {
        if grid_size == 0 {
            return Err(ModelError::InvalidShape("sinekan1d needs grid size G >= 1".into()));
        }
        let g = grid_size;
        let phases = DVector::from_fn(g, |k, _| (k + 1) as f64 / (g + 1) as f64);
        Ok(Self {
            grid_size: g,
            amplitudes: DVector::zeros(g),
            frequencies: DVector::zeros(g),
            bias: 0.0,
            phases,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// The fixed phase grid `φ_k = k/(G+1)`, `k = 1..G`.
    pub fn phases(&self) -> &DVector<f64> {
        &self.phases
    }

    pub fn amplitudes(&self) -> &DVector<f64> {
        &self.amplitudes
    }

    pub fn frequencies(&self) -> &DVector<f64> {
        &self.frequencies
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }
}

impl Model for SineKan1D {
    fn shape(&self) -> ModelShape {
        ModelShape::SineKan1d { g: self.grid_size }
    }

    fn params(&self) -> DVector<f64> {
        let g = self.grid_size;
        let mut p = DVector::zeros(2 * g + 1);
        p.rows_mut(0, g).copy_from(&self.amplitudes);
        p.rows_mut(g, g).copy_from(&self.frequencies);
        p[2 * g] = self.bias;
        p
    }

    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError> {
        let g = self.grid_size;
        if p.len() != 2 * g + 1 {
            return Err(ModelError::ParamLength { expected: 2 * g + 1, got: p.len() });
        }
        self.amplitudes.as_mut_slice().copy_from_slice(&p[..g]);
        self.frequencies.as_mut_slice().copy_from_slice(&p[g..2 * g]);
        self.bias = p[2 * g];
        Ok(())
    }

    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError> {
        if xs.dim() != 1 {
            return Err(ModelError::InputDim { expected: 1, got: xs.dim() });
        }
        let g = self.grid_size;
        let out = DVector::from_iterator(
            xs.len(),
            xs.as_slice().iter().map(|&x| {
                let mut acc = self.bias;
                for k in 0..g {
                    acc += self.amplitudes[k] * (self.frequencies[k] * x + self.phases[k]).sin();
                }
                acc
            }),
        );
        Ok(out)
    }

    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError> {
        if xs.dim() != 1 {
            return Err(ModelError::InputDim { expected: 1, got: xs.dim() });
        }
        let g = self.grid_size;
        let n = xs.len();
        let mut jac = DMatrix::zeros(n, 2 * g + 1);
        for (i, &x) in xs.as_slice().iter().enumerate() {
            for k in 0..g {
                let arg = self.frequencies[k] * x + self.phases[k];
                let (s, c) = arg.sin_cos();
                jac[(i, k)] = s; // ∂y/∂A_k
                jac[(i, g + k)] = self.amplitudes[k] * x * c; // ∂y/∂ω_k
            }
            jac[(i, 2 * g)] = 1.0; // ∂y/∂b
        }
        Ok(jac)
    }

    fn init_params(&self, seed: u64) -> DVector<f64> {
        let g = self.grid_size;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amp = 1.0 / (g as f64).sqrt();
        let mut p = DVector::zeros(2 * g + 1);
        for k in 0..g {
            p[k] = rng.gen_range(-amp..amp);
        }
        for k in 0..g {
            p[g + k] = 2.0 * std::f64::consts::PI * (k + 1) as f64 / g as f64;
        }
        // bias stays 0
        p
    }

    fn clone_model(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
}

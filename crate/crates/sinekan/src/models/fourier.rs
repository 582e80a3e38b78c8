//! Truncated Fourier series with fixed frequencies, in one and two
//! dimensions. Linear in their coefficients, so they fit by a direct
//! least-squares solve.
//!
//! The domain is treated as the unit interval (base frequency `2π`); inputs
//! live in `[0.01, 1]` in the benchmarks, which is what makes these series
//! struggle on non-periodic targets.

use nalgebra::{DMatrix, DVector};

use super::{InputBatch, Model, ModelError, ModelShape};

const TAU: f64 = std::f64::consts::TAU;

/// `y = a₀ + Σ_{k=1..K} a_k cos(2πkx) + b_k sin(2πkx)`.
///
/// Parameter layout: `[a₀, a₁, b₁, a₂, b₂, …, a_K, b_K]`, length `2K + 1`.
/// Initialization is the zero vector (the fit is a single linear solve, so
/// the start point is irrelevant).
#[derive(Debug, Clone)]
pub struct Fourier1D {
    k_max: usize,
    coeffs: DVector<f64>,
}

impl Fourier1D {
    pub fn new(k_max: usize) -> Result<Self, ModelError> {
        if k_max == 0 {
            return Err(ModelError::InvalidShape("fourier needs K >= 1".into()));
        }
        Ok(Self { k_max, coeffs: DVector::zeros(2 * k_max + 1) })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn basis_row(&self, x: f64, row: &mut [f64]) {
        row[0] = 1.0;
        for k in 1..=self.k_max {
            let (s, c) = (TAU * k as f64 * x).sin_cos();
            row[2 * k - 1] = c;
            row[2 * k] = s;
        }
    }
}

impl Model for Fourier1D {
    fn shape(&self) -> ModelShape {
        ModelShape::Fourier1d { k: self.k_max }
    }

    fn params(&self) -> DVector<f64> {
        self.coeffs.clone()
    }

    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError> {
        if p.len() != self.coeffs.len() {
            return Err(ModelError::ParamLength { expected: self.coeffs.len(), got: p.len() });
        }
        self.coeffs.as_mut_slice().copy_from_slice(p);
        Ok(())
    }

    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError> {
        if xs.dim() != 1 {
            return Err(ModelError::InputDim { expected: 1, got: xs.dim() });
        }
        let mut row = vec![0.0; self.coeffs.len()];
        let out = DVector::from_iterator(
            xs.len(),
            xs.as_slice().iter().map(|&x| {
                self.basis_row(x, &mut row);
                row.iter().zip(self.coeffs.iter()).map(|(b, c)| b * c).sum::<f64>()
            }),
        );
        Ok(out)
    }

    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError> {
        if xs.dim() != 1 {
            return Err(ModelError::InputDim { expected: 1, got: xs.dim() });
        }
        let n = self.coeffs.len();
        let mut jac = DMatrix::zeros(xs.len(), n);
        let mut row = vec![0.0; n];
        for (i, &x) in xs.as_slice().iter().enumerate() {
            self.basis_row(x, &mut row);
            for j in 0..n {
                jac[(i, j)] = row[j];
            }
        }
        Ok(jac)
    }

    fn init_params(&self, _seed: u64) -> DVector<f64> {
        DVector::zeros(self.coeffs.len())
    }

    fn is_linear(&self) -> bool {
        true
    }

    fn clone_model(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
}

/// Full tensor-product real Fourier basis on the unit square:
///
/// ```text
/// y = Σ_{k₁=0..K} Σ_{k₂=0..K}  c^{cc}_{k₁k₂} cos(2πk₁x)cos(2πk₂y)
///                            + c^{cs}_{k₁k₂} cos(2πk₁x)sin(2πk₂y)   (k₂ ≥ 1)
///                            + c^{sc}_{k₁k₂} sin(2πk₁x)cos(2πk₂y)   (k₁ ≥ 1)
///                            + c^{ss}_{k₁k₂} sin(2πk₁x)sin(2πk₂y)   (k₁, k₂ ≥ 1)
/// ```
///
/// Sine factors with a zero harmonic are identically zero and carry no
/// coefficient, leaving `(2K+1)²` parameters — the same span as the complex
/// exponential basis on `[−K, K]²`.
///
/// Parameter layout: cells ordered by `k₁` outer, `k₂` inner; within a cell
/// the surviving coefficients in the order `cc, cs, sc, ss`.
#[derive(Debug, Clone)]
pub struct Fourier2D {
    k_max: usize,
    coeffs: DVector<f64>,
}

impl Fourier2D {
    pub fn new(k_max: usize) -> Result<Self, ModelError> {
        if k_max == 0 {
            return Err(ModelError::InvalidShape("fourier2d needs K >= 1".into()));
        }
        let count = (2 * k_max + 1) * (2 * k_max + 1);
        Ok(Self { k_max, coeffs: DVector::zeros(count) })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn basis_row(&self, x: f64, y: f64, row: &mut [f64]) {
        let k_max = self.k_max;
        // per-axis tables: trig[k] for k = 0..=K
        let mut cx = vec![0.0; k_max + 1];
        let mut sx = vec![0.0; k_max + 1];
        let mut cy = vec![0.0; k_max + 1];
        let mut sy = vec![0.0; k_max + 1];
        for k in 0..=k_max {
            let (sv, cv) = (TAU * k as f64 * x).sin_cos();
            sx[k] = sv;
            cx[k] = cv;
            let (sv, cv) = (TAU * k as f64 * y).sin_cos();
            sy[k] = sv;
            cy[k] = cv;
        }
        let mut idx = 0;
        for k1 in 0..=k_max {
            for k2 in 0..=k_max {
                row[idx] = cx[k1] * cy[k2];
                idx += 1;
                if k2 >= 1 {
                    row[idx] = cx[k1] * sy[k2];
                    idx += 1;
                }
                if k1 >= 1 {
                    row[idx] = sx[k1] * cy[k2];
                    idx += 1;
                }
                if k1 >= 1 && k2 >= 1 {
                    row[idx] = sx[k1] * sy[k2];
                    idx += 1;
                }
            }
        }
        debug_assert_eq!(idx, row.len());
    }
}

impl Model for Fourier2D {
    fn shape(&self) -> ModelShape {
        ModelShape::Fourier2d { k: self.k_max }
    }

    fn params(&self) -> DVector<f64> {
        self.coeffs.clone()
    }

    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError> {
        if p.len() != self.coeffs.len() {
            return Err(ModelError::ParamLength { expected: self.coeffs.len(), got: p.len() });
        }
        self.coeffs.as_mut_slice().copy_from_slice(p);
        Ok(())
    }

    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError> {
        if xs.dim() != 2 {
            return Err(ModelError::InputDim { expected: 2, got: xs.dim() });
        }
        let n = self.coeffs.len();
        let mut row = vec![0.0; n];
        let out = DVector::from_iterator(
            xs.len(),
            xs.rows().map(|p| {
                self.basis_row(p[0], p[1], &mut row);
                row.iter().zip(self.coeffs.iter()).map(|(b, c)| b * c).sum::<f64>()
            }),
        );
        Ok(out)
    }

    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError> {
        if xs.dim() != 2 {
            return Err(ModelError::InputDim { expected: 2, got: xs.dim() });
        }
        let n = self.coeffs.len();
        let mut jac = DMatrix::zeros(xs.len(), n);
        let mut row = vec![0.0; n];
        for (i, p) in xs.rows().enumerate() {
            self.basis_row(p[0], p[1], &mut row);
            for j in 0..n {
                jac[(i, j)] = row[j];
            }
        }
        Ok(jac)
    }

    fn init_params(&self, _seed: u64) -> DVector<f64> {
        DVector::zeros(self.coeffs.len())
    }

    fn is_linear(&self) -> bool {
        true
    }

    fn clone_model(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
}

//! Two-layer SineKAN for multivariate inputs.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{InputBatch, Model, ModelError, ModelShape};

/// Two stacked sine expansions:
///
/// ```text
/// y_j = Σ_{k=1..G1} Σ_{l=1..n} A[j,k,l] · sin(ω_k x_l + φ¹_{k,l}) + b_j
/// z_o = Σ_{q=1..G2} Σ_{j=1..H} B[o,q,j] · sin(ν_q y_j + φ²_{q,j}) + c_o
/// ```
///
/// with fixed phase grids `φ¹_{k,l} = k/(G1+1) + lπ/(n+1)` and
/// `φ²_{q,j} = j/(G2+1) + qπ/(H+1)` (all indices 1-based in the formulas).
/// The grid part of each phase is spaced by the layer's own grid size; the
/// `π`-scaled part staggers repeated inputs/hidden units so no two basis
/// terms coincide.
///
/// Parameter layout (length `H·G1·n + G1 + H + m·G2·H + G2 + m`):
/// `[A row-major (j,k,l), ω_1..ω_G1, b_1..b_H, B row-major (o,q,j),
/// ν_1..ν_G2, c_1..c_m]`.
///
/// Initialization (deterministic per seed): `A` entries uniform
/// `(−1/√G1, 1/√G1)` drawn in layout order, then `B` entries uniform
/// `(−1/√G2, 1/√G2)`; frequencies linearly spaced `ω_k = 2πk/G1`,
/// `ν_q = 2πq/G2`; biases zero.
#[derive(Debug, Clone)]
pub struct SineKan2Layer {
    input_dim: usize,
    g1: usize,
    hidden: usize,
    g2: usize,
    output_dim: usize,
    a: Vec<f64>,          // H×G1×n, index (j*G1 + k)*n + l
    omega: Vec<f64>,      // G1
    b: Vec<f64>,          // H
    bb: Vec<f64>,         // m×G2×H, index (o*G2 + q)*H + j
    nu: Vec<f64>,         // G2
    c: Vec<f64>,          // m
    phi1: Vec<f64>,       // G1×n, index k*n + l
    phi2: Vec<f64>,       // G2×H, index q*H + j
}

impl SineKan2Layer {
    pub fn new(
        input_dim: usize,
        g1: usize,
        hidden: usize,
        g2: usize,
        output_dim: usize,
    ) -> Result<Self, ModelError> {
        for (name, v) in [
            ("input dimension", input_dim),
            ("G1", g1),
            ("hidden width", hidden),
            ("G2", g2),
            ("output dimension", output_dim),
        ] {
            if v == 0 {
                return Err(ModelError::InvalidShape(format!("sinekan2 needs {name} >= 1")));
            }
        }
        let pi = std::f64::consts::PI;
        let mut phi1 = vec![0.0; g1 * input_dim];
        for k in 0..g1 {
            for l in 0..input_dim {
                phi1[k * input_dim + l] =
                    (k + 1) as f64 / (g1 + 1) as f64 + (l + 1) as f64 * pi / (input_dim + 1) as f64;
            }
        }
        let mut phi2 = vec![0.0; g2 * hidden];
        for q in 0..g2 {
            for j in 0..hidden {
                phi2[q * hidden + j] =
                    (j + 1) as f64 / (g2 + 1) as f64 + (q + 1) as f64 * pi / (hidden + 1) as f64;
            }
        }
        Ok(Self {
            input_dim,
            g1,
            hidden,
            g2,
            output_dim,
            a: vec![0.0; hidden * g1 * input_dim],
            omega: vec![0.0; g1],
            b: vec![0.0; hidden],
            bb: vec![0.0; output_dim * g2 * hidden],
            nu: vec![0.0; g2],
            c: vec![0.0; output_dim],
            phi1,
            phi2,
        })
    }

    /// Layer-1 phase grid, `G1 × n` row-major.
    pub fn phases_layer1(&self) -> &[f64] {
        &self.phi1
    }

    /// Layer-2 phase grid, `G2 × H` row-major.
    pub fn phases_layer2(&self) -> &[f64] {
        &self.phi2
    }

    fn section_lengths(&self) -> [usize; 6] {
        [
            self.hidden * self.g1 * self.input_dim,
            self.g1,
            self.hidden,
            self.output_dim * self.g2 * self.hidden,
            self.g2,
            self.output_dim,
        ]
    }

    /// Hidden activations for one sample, plus the layer-1 sine/cosine
    /// tables needed by the Jacobian.
    fn layer1(&self, x: &[f64], s: &mut [f64], c1: &mut [f64], y: &mut [f64]) {
        let (n, g1) = (self.input_dim, self.g1);
        for k in 0..g1 {
            for l in 0..n {
                let idx = k * n + l;
                let (sv, cv) = (self.omega[k] * x[l] + self.phi1[idx]).sin_cos();
                s[idx] = sv;
                c1[idx] = cv;
            }
        }
        for j in 0..self.hidden {
            let mut acc = self.b[j];
            let a_j = &self.a[j * g1 * n..(j + 1) * g1 * n];
            for idx in 0..g1 * n {
                acc += a_j[idx] * s[idx];
            }
            y[j] = acc;
        }
    }
}

impl Model for SineKan2Layer {
    fn shape(&self) -> ModelShape {
        ModelShape::SineKan2 {
            input_dim: self.input_dim,
            g1: self.g1,
            hidden: self.hidden,
            g2: self.g2,
            output_dim: self.output_dim,
        }
    }

    fn params(&self) -> DVector<f64> {
        let mut p = Vec::with_capacity(self.param_count());
        p.extend_from_slice(&self.a);
        p.extend_from_slice(&self.omega);
        p.extend_from_slice(&self.b);
        p.extend_from_slice(&self.bb);
        p.extend_from_slice(&self.nu);
        p.extend_from_slice(&self.c);
        DVector::from_vec(p)
    }

    fn set_params(&mut self, p: &[f64]) -> Result<(), ModelError> {
        let expected = self.param_count();
        if p.len() != expected {
            return Err(ModelError::ParamLength { expected, got: p.len() });
        }
        let mut offset = 0;
        let lens = self.section_lengths();
        let sections: [&mut Vec<f64>; 6] = [
            &mut self.a,
            &mut self.omega,
            &mut self.b,
            &mut self.bb,
            &mut self.nu,
            &mut self.c,
        ];
        for (len, section) in lens.into_iter().zip(sections) {
            section.copy_from_slice(&p[offset..offset + len]);
            offset += len;
        }
        Ok(())
    }

    fn forward_batch(&self, xs: &InputBatch) -> Result<DVector<f64>, ModelError> {
        if xs.dim() != self.input_dim {
            return Err(ModelError::InputDim { expected: self.input_dim, got: xs.dim() });
        }
        let (g1, g2, h, m, n) = (self.g1, self.g2, self.hidden, self.output_dim, self.input_dim);
        let mut s = vec![0.0; g1 * n];
        let mut c1 = vec![0.0; g1 * n];
        let mut y = vec![0.0; h];
        let mut out = DVector::zeros(xs.len() * m);
        for (i, x) in xs.rows().enumerate() {
            self.layer1(x, &mut s, &mut c1, &mut y);
            for o in 0..m {
                let mut acc = self.c[o];
                for q in 0..g2 {
                    let nu_q = self.nu[q];
                    for j in 0..h {
                        acc += self.bb[(o * g2 + q) * h + j]
                            * (nu_q * y[j] + self.phi2[q * h + j]).sin();
                    }
                }
                out[i * m + o] = acc;
            }
        }
        Ok(out)
    }

    fn jacobian_batch(&self, xs: &InputBatch) -> Result<DMatrix<f64>, ModelError> {
        if xs.dim() != self.input_dim {
            return Err(ModelError::InputDim { expected: self.input_dim, got: xs.dim() });
        }
        let (g1, g2, h, m, n) = (self.g1, self.g2, self.hidden, self.output_dim, self.input_dim);
        let lens = self.section_lengths();
        let offsets = {
            let mut o = [0usize; 6];
            for i in 1..6 {
                o[i] = o[i - 1] + lens[i - 1];
            }
            o
        };
        let [off_a, off_w, off_b, off_bb, off_nu, off_c] = offsets;

        let mut s = vec![0.0; g1 * n];
        let mut c1 = vec![0.0; g1 * n];
        let mut y = vec![0.0; h];
        let mut t = vec![0.0; g2 * h];
        let mut c2 = vec![0.0; g2 * h];
        let mut dzdy = vec![0.0; h];
        // W[j,k] = Σ_l A[j,k,l]·x_l·cos(arg1[k,l]): the ∂y_j/∂ω_k table
        let mut w = vec![0.0; h * g1];

        let mut jac = DMatrix::zeros(xs.len() * m, self.param_count());
        for (i, x) in xs.rows().enumerate() {
            self.layer1(x, &mut s, &mut c1, &mut y);
            for q in 0..g2 {
                for j in 0..h {
                    let idx = q * h + j;
                    let (sv, cv) = (self.nu[q] * y[j] + self.phi2[idx]).sin_cos();
                    t[idx] = sv;
                    c2[idx] = cv;
                }
            }
            for j in 0..h {
                let a_j = &self.a[j * g1 * n..(j + 1) * g1 * n];
                for k in 0..g1 {
                    let mut acc = 0.0;
                    for l in 0..n {
                        acc += a_j[k * n + l] * x[l] * c1[k * n + l];
                    }
                    w[j * g1 + k] = acc;
                }
            }
            for o in 0..m {
                let row = i * m + o;
                let b_o = &self.bb[o * g2 * h..(o + 1) * g2 * h];
                for j in 0..h {
                    let mut acc = 0.0;
                    for q in 0..g2 {
                        acc += b_o[q * h + j] * self.nu[q] * c2[q * h + j];
                    }
                    dzdy[j] = acc;
                }
                // layer-1 amplitudes: ∂z_o/∂A[j,k,l] = dzdy[j]·sin(arg1[k,l])
                for j in 0..h {
                    let base = off_a + j * g1 * n;
                    let d = dzdy[j];
                    for idx in 0..g1 * n {
                        jac[(row, base + idx)] = d * s[idx];
                    }
                }
                // layer-1 frequencies: ∂z_o/∂ω_k = Σ_j dzdy[j]·W[j,k]
                for k in 0..g1 {
                    let mut acc = 0.0;
                    for j in 0..h {
                        acc += dzdy[j] * w[j * g1 + k];
                    }
                    jac[(row, off_w + k)] = acc;
                }
                // layer-1 biases: ∂z_o/∂b_j = dzdy[j]
                for j in 0..h {
                    jac[(row, off_b + j)] = dzdy[j];
                }
                // layer-2 amplitudes: ∂z_o/∂B[o,q,j] = sin(arg2[q,j])
                let base = off_bb + o * g2 * h;
                for idx in 0..g2 * h {
                    jac[(row, base + idx)] = t[idx];
                }
                // layer-2 frequencies: ∂z_o/∂ν_q = Σ_j B[o,q,j]·cos(arg2)·y_j
                for q in 0..g2 {
                    let mut acc = 0.0;
                    for j in 0..h {
                        acc += b_o[q * h + j] * c2[q * h + j] * y[j];
                    }
                    jac[(row, off_nu + q)] = acc;
                }
                jac[(row, off_c + o)] = 1.0;
            }
        }
        Ok(jac)
    }

    fn init_params(&self, seed: u64) -> DVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tau = 2.0 * std::f64::consts::PI;
        let mut p = DVector::zeros(self.param_count());
        let amp1 = 1.0 / (self.g1 as f64).sqrt();
        let lens = self.section_lengths();
        let mut offset = 0;
        for i in 0..lens[0] {
            p[offset + i] = rng.gen_range(-amp1..amp1);
        }
        offset += lens[0];
        for k in 0..self.g1 {
            p[offset + k] = tau * (k + 1) as f64 / self.g1 as f64;
        }
        offset += lens[1] + lens[2]; // ω done, b stays zero
        let amp2 = 1.0 / (self.g2 as f64).sqrt();
        for i in 0..lens[3] {
            p[offset + i] = rng.gen_range(-amp2..amp2);
        }
        offset += lens[3];
        for q in 0..self.g2 {
            p[offset + q] = tau * (q + 1) as f64 / self.g2 as f64;
        }
        // c stays zero
        p
    }

    fn clone_model(&self) -> Box<dyn Model> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::testutil;
    use approx::assert_relative_eq;

    #[test]
    fn param_count_example() {
        let m = SineKan2Layer::new(2, 4, 8, 4, 1).unwrap();
        assert_eq!(m.param_count(), 113);
        assert_eq!(m.params().len(), 113);
    }

    #[test]
    fn zero_b_outputs_bias_c() {
        let mut m = SineKan2Layer::new(2, 3, 4, 3, 2).unwrap();
        let mut p = m.init_params(9);
        let count = m.param_count();
        // zero the B block, set c = (2.5, -1.25)
        let off_bb = 4 * 3 * 2 + 3 + 4;
        for i in 0..2 * 3 * 4 {
            p[off_bb + i] = 0.0;
        }
        p[count - 2] = 2.5;
        p[count - 1] = -1.25;
        m.set_params(p.as_slice()).unwrap();
        for x in [[0.1, 0.9], [0.5, 0.5], [1.0, 0.01]] {
            let z = m.forward(&x).unwrap();
            assert_eq!(z[0], 2.5);
            assert_eq!(z[1], -1.25);
        }
    }

    #[test]
    fn tiny_network_hand_value() {
        // n=G1=H=G2=m=1: phases are 1/2 + π/2, so with A=1, ω=0, b=0 the
        // hidden unit is cos(1/2); with B=1, ν=1, c=0 the output is
        // cos(cos(1/2) + 1/2)
        let mut m = SineKan2Layer::new(1, 1, 1, 1, 1).unwrap();
        m.set_params(&[1.0, 0.0, 0.0, 1.0, 1.0, 0.0]).unwrap();
        let z = m.forward(&[0.73]).unwrap();
        assert_relative_eq!(z[0], 0.1920138449974649286722, max_relative = 1e-15);
        // ∂z/∂ν = B·cos(ν·y + φ²)·y
        let xs = InputBatch::from_1d(&[0.73]);
        let jac = m.jacobian_batch(&xs).unwrap();
        assert_relative_eq!(jac[(0, 4)], -0.8612526958983819951588, max_relative = 1e-14);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        testutil::check_jacobian(&|| Box::new(SineKan2Layer::new(2, 3, 4, 2, 1).unwrap()), 8, 1e-5);
        testutil::check_jacobian(&|| Box::new(SineKan2Layer::new(3, 2, 3, 3, 2).unwrap()), 5, 1e-5);
    }

    #[test]
    fn param_roundtrip() {
        testutil::check_param_roundtrip(&|| Box::new(SineKan2Layer::new(2, 4, 8, 4, 1).unwrap()));
    }

    #[test]
    fn init_is_deterministic_and_structured() {
        let m = SineKan2Layer::new(2, 4, 8, 4, 1).unwrap();
        let p = m.init_params(123);
        assert_eq!(m.init_params(123), p);
        let tau = 2.0 * std::f64::consts::PI;
        let off_w = 8 * 4 * 2;
        for k in 0..4 {
            assert_relative_eq!(p[off_w + k], tau * (k + 1) as f64 / 4.0, max_relative = 1e-15);
        }
        // biases zero
        for j in 0..8 {
            assert_eq!(p[off_w + 4 + j], 0.0);
        }
        assert_eq!(p[112], 0.0);
        // amplitudes within (−1/√G, 1/√G)
        for i in 0..off_w {
            assert!(p[i].abs() < 0.5);
        }
    }

    #[test]
    fn phase_grids_match_formulas() {
        let m = SineKan2Layer::new(2, 3, 5, 4, 1).unwrap();
        let pi = std::f64::consts::PI;
        for k in 0..3 {
            for l in 0..2 {
                assert_relative_eq!(
                    m.phases_layer1()[k * 2 + l],
                    (k + 1) as f64 / 4.0 + (l + 1) as f64 * pi / 3.0,
                    max_relative = 1e-15
                );
            }
        }
        for q in 0..4 {
            for j in 0..5 {
                assert_relative_eq!(
                    m.phases_layer2()[q * 5 + j],
                    (j + 1) as f64 / 5.0 + (q + 1) as f64 * pi / 6.0,
                    max_relative = 1e-15
                );
            }
        }
    }

    #[test]
    fn output_rows_are_sample_major() {
        let mut m = SineKan2Layer::new(1, 2, 2, 2, 2).unwrap();
        m.set_params(m.init_params(5).as_slice()).unwrap();
        let xs = InputBatch::from_1d(&[0.2, 0.8]);
        let batch = m.forward_batch(&xs).unwrap();
        let one = m.forward(&[0.2]).unwrap();
        let two = m.forward(&[0.8]).unwrap();
        assert_eq!(batch[0], one[0]);
        assert_eq!(batch[1], one[1]);
        assert_eq!(batch[2], two[0]);
        assert_eq!(batch[3], two[1]);
    }
}

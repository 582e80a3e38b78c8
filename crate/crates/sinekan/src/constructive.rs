//! Constructive sinusoidal approximation with error certificates.
//!
//! This module turns a continuous function on `[0, 1]` into an explicit
//! sum `Σ A_k·sin(ω_k·x + α_k)` with linearly spaced phases, by a fully
//! mechanized three-stage pipeline:
//!
//! 1. approximate `f` by its Bernstein polynomial of degree `N`,
//! 2. convert to monomial coefficients,
//! 3. solve a small linear system that matches those coefficients with
//!    the degree-`N` Taylor expansions of the sines ([`solve_amplitudes`]).
//!
//! Every construction carries an [`ErrorCertificate`] splitting the
//! guaranteed sup-error bound into the Bernstein term, the Taylor tail
//! term, and the linear-solve residual term, plus the condition numbers
//! of the solve. The pipeline is a constructive proof artifact, not a
//! competitive approximation method: certificates are honest upper
//! bounds and can be large at small degree.
//!
//! Degrees are capped at [`MAX_DEGREE`]; beyond that the underlying
//! Vandermonde-like matrix is numerically singular at double precision
//! and the solve refuses with [`ConstructError::IllConditioned`].

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};
use thiserror::Error;

/// Largest supported construction degree at double precision.
pub const MAX_DEGREE: usize = 16;

/// Condition-number gate for the (row-equilibrated) amplitude solve.
pub const CONDITION_GATE: f64 = 1e12;

/// Points in the uniform measurement grid used for certificate terms
/// and sup-error verification.
pub const CERT_GRID_POINTS: usize = 10_001;

/// Number of seeded frequency-jitter retries after an ill-conditioned
/// solve before giving up.
pub const JITTER_RETRIES: usize = 8;

/// Errors from the constructive pipeline.
#[derive(Debug, Error)]
pub enum ConstructError {
    /// Degree outside `1..=MAX_DEGREE` for the pipeline (or the
    /// operation's own documented range).
    #[error("degree {0} outside supported range {1}")]
    UnsupportedDegree(usize, &'static str),
    /// Phase base must lie in `(0, π/2]`.
    #[error("phase base alpha = {0} outside (0, pi/2]")]
    InvalidAlpha(f64),
    /// The amplitude system is too ill-conditioned to solve reliably.
    #[error(
        "amplitude system ill-conditioned: equilibrated condition {cond_equilibrated:.3e} \
         exceeds the {gate:.0e} gate (raw condition {cond_raw:.3e})"
    )]
    IllConditioned {
        cond_raw: f64,
        cond_equilibrated: f64,
        gate: f64,
    },
    /// Frequency list malformed: wrong length, non-finite, or repeated.
    #[error("invalid frequencies: {0}")]
    InvalidFrequencies(String),
    /// Mismatched array lengths.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    /// The sampled function produced a non-finite value.
    #[error("function sample at x = {0} is not finite")]
    NonFiniteSample(f64),
    /// The linear solve failed outright (singular at working precision).
    #[error("amplitude solve failed: matrix singular at working precision")]
    SingularSystem,
}

const FACTORIALS: [f64; 18] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
];

/// `sin(alpha + l·π/2)` evaluated through the quarter-period cycle, so
/// no accuracy is lost to the repeated addition of `π/2`.
fn sin_quarter(alpha: f64, l: usize) -> f64 {
    match l % 4 {
        0 => alpha.sin(),
        1 => alpha.cos(),
        2 => -alpha.sin(),
        _ => -alpha.cos(),
    }
}

/// `x^l` with the `0⁰ = 1` convention.
fn pow_conv(x: f64, l: usize) -> f64 {
    if l == 0 {
        1.0
    } else {
        x.powi(l as i32)
    }
}

/// The degree-`N` Taylor polynomial of `x ↦ sin(ω·x + α)` about 0,
/// with its remainder certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaylorSine {
    /// Polynomial degree `N`.
    pub degree: usize,
    /// Frequency `ω`.
    pub omega: f64,
    /// Phase `α`.
    pub alpha: f64,
    /// Monomial coefficients `c_l = ω^l·sin(α + lπ/2)/l!` for `l = 0..=N`.
    pub coeffs: Vec<f64>,
}

impl TaylorSine {
    /// Builds the expansion. `c_0 = sin(α)` always, including `ω = 0`.
    pub fn new(degree: usize, omega: f64, alpha: f64) -> Self {
        // scale tracks ω^l/l! as a running product, so any degree works
        // without overflowing intermediate powers or factorials.
        let mut scale = 1.0;
        let mut coeffs = Vec::with_capacity(degree + 1);
        for l in 0..=degree {
            if l > 0 {
                scale *= omega / l as f64;
            }
            coeffs.push(scale * sin_quarter(alpha, l));
        }
        Self {
            degree,
            omega,
            alpha,
            coeffs,
        }
    }

    /// Evaluates the polynomial by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The true sine this polynomial approximates.
    pub fn target(&self, x: f64) -> f64 {
        (self.omega * x + self.alpha).sin()
    }
}

/// Evaluates the degree-`N` Taylor polynomial of `sin(ωx + α)` at `x`.
///
/// ```
/// use sinekan::constructive::taylor_sine_eval;
///
/// // With ω = 0 only the constant term survives.
/// let v = taylor_sine_eval(9, 0.0, std::f64::consts::FRAC_PI_3, 0.42);
/// assert!((v - f64::sin(std::f64::consts::FRAC_PI_3)).abs() < 1e-15);
/// ```
pub fn taylor_sine_eval(degree: usize, omega: f64, alpha: f64, x: f64) -> f64 {
    TaylorSine::new(degree, omega, alpha).eval(x)
}

/// The uniform remainder bound `(2π)^{N+1}/(N+1)!` valid for any
/// `ω ∈ [0, 2π]`, `α`, and `x ∈ [0, 1]`.
pub fn remainder_bound(degree: usize) -> f64 {
    // Running product avoids overflowing (2π)^{N+1} for large N.
    let mut bound = 1.0;
    for l in 1..=(degree + 1) {
        bound *= TAU / l as f64;
    }
    bound
}

/// Per-frequency remainder bound `ω^{N+1}/(N+1)!`, the tail actually
/// accumulated in certificates (tighter than [`remainder_bound`] and
/// valid for each term separately since `|d^{N+1}/dx^{N+1} sin(ωx+α)| ≤
/// ω^{N+1}`).
pub fn remainder_bound_at(degree: usize, omega: f64) -> f64 {
    let mut bound = 1.0;
    for l in 1..=(degree + 1) {
        bound *= omega / l as f64;
    }
    bound.abs()
}

/// Evaluates the Bernstein polynomial with the given equally spaced
/// samples `f(l/N)`, `l = 0..=N`, at `x`, by the de Casteljau
/// recurrence (numerically stable for `x ∈ [0, 1]`).
///
/// ```
/// use sinekan::constructive::bernstein_eval;
///
/// // Bernstein reproduces linear functions exactly.
/// let samples: Vec<f64> = (0..=6).map(|l| l as f64 / 6.0).collect();
/// assert!((bernstein_eval(&samples, 0.3) - 0.3).abs() < 1e-15);
/// ```
pub fn bernstein_eval(samples: &[f64], x: f64) -> f64 {
    assert!(!samples.is_empty(), "need at least one sample");
    let mut b = samples.to_vec();
    for round in 1..b.len() {
        for i in 0..(b.len() - round) {
            b[i] = (1.0 - x) * b[i] + x * b[i + 1];
        }
    }
    b[0]
}

/// Monomial coefficients `b_l` of a polynomial `Σ b_l·x^l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialCoeffs {
    /// Coefficients in increasing degree order, length `N + 1`.
    pub coeffs: Vec<f64>,
}

impl PolynomialCoeffs {
    /// Degree `N` (one less than the coefficient count).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates `Σ b_l·x^l` by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Expands the Bernstein polynomial of the given samples into monomial
/// coefficients: `b_l = C(N,l)·Δ^l f(0)` with forward differences `Δ`.
pub fn bernstein_to_monomial(samples: &[f64]) -> PolynomialCoeffs {
    assert!(!samples.is_empty(), "need at least one sample");
    let n = samples.len() - 1;
    // diffs starts as the samples and is overwritten in place with
    // successive forward differences; diffs[0] after l rounds is Δ^l f(0).
    let mut diffs = samples.to_vec();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = 1.0;
    coeffs.push(diffs[0]);
    for l in 1..=n {
        for i in 0..(n + 1 - l) {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
        binom *= (n + 1 - l) as f64 / l as f64;
        coeffs.push(binom * diffs[0]);
    }
    PolynomialCoeffs { coeffs }
}

/// How the construction picks its `N + 1` frequencies in `[0, 2π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FrequencyRule {
    /// `ω_k = max_omega·k/(N+1)` for `k = 0..=N` — includes the zero
    /// frequency, whose column carries the constant component. Default
    /// with `max_omega = 2π`.
    Spread {
        /// Upper end of the frequency range.
        max_omega: f64,
    },
    /// `ω_k = max_omega·(k+1)/(N+1)` — all frequencies nonzero. With no
    /// zero-frequency column, constants are representable only through
    /// cancellation and the solve typically produces huge amplitudes;
    /// provided for comparison.
    ShiftedSpread {
        /// Upper end of the frequency range.
        max_omega: f64,
    },
    /// Caller-chosen frequencies (must be distinct and finite; exactly
    /// `N + 1` of them). No jitter retries are attempted on
    /// ill-conditioning: the caller's frequencies are used as-is.
    Explicit(Vec<f64>),
}

impl Default for FrequencyRule {
    fn default() -> Self {
        FrequencyRule::Spread { max_omega: TAU }
    }
}

impl FrequencyRule {
    /// Produces the `degree + 1` frequencies for this rule.
    pub fn frequencies(&self, degree: usize) -> Result<Vec<f64>, ConstructError> {
        let n = degree + 1;
        let omegas = match self {
            FrequencyRule::Spread { max_omega } => {
                (0..n).map(|k| max_omega * k as f64 / n as f64).collect()
            }
            FrequencyRule::ShiftedSpread { max_omega } => (0..n)
                .map(|k| max_omega * (k + 1) as f64 / n as f64)
                .collect(),
            FrequencyRule::Explicit(list) => list.clone(),
        };
        validate_frequencies(&omegas, n)?;
        Ok(omegas)
    }
}

fn validate_frequencies(omegas: &[f64], expected: usize) -> Result<(), ConstructError> {
    if omegas.len() != expected {
        return Err(ConstructError::InvalidFrequencies(format!(
            "need {expected} frequencies, got {}",
            omegas.len()
        )));
    }
    for &w in omegas {
        if !w.is_finite() {
            return Err(ConstructError::InvalidFrequencies(format!(
                "non-finite frequency {w}"
            )));
        }
    }
    for i in 0..omegas.len() {
        for j in (i + 1)..omegas.len() {
            if omegas[i] == omegas[j] {
                return Err(ConstructError::InvalidFrequencies(format!(
                    "repeated frequency {} at positions {i} and {j}",
                    omegas[i]
                )));
            }
        }
    }
    Ok(())
}

/// Builds the `(N+1)×(N+1)` amplitude-system matrix
/// `M[l][k] = ω_k^l·sin(α_k + lπ/2)` (row `l = 0` uses `ω⁰ = 1`).
pub fn build_lemma4_matrix(omegas: &[f64], alphas: &[f64]) -> DMatrix<f64> {
    assert_eq!(omegas.len(), alphas.len(), "omegas and alphas must pair up");
    let n = omegas.len();
    DMatrix::from_fn(n, n, |l, k| pow_conv(omegas[k], l) * sin_quarter(alphas[k], l))
}

/// Row-equilibrated form of the same system: row `l` divided by `l!`,
/// which is the matrix actually factorized (it maps amplitudes to the
/// Taylor coefficients of the sine sum).
fn build_equilibrated_matrix(omegas: &[f64], alphas: &[f64]) -> DMatrix<f64> {
    let n = omegas.len();
    DMatrix::from_fn(n, n, |l, k| {
        pow_conv(omegas[k], l) * sin_quarter(alphas[k], l) / FACTORIALS[l]
    })
}

fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Result of [`solve_amplitudes`]: the amplitudes plus solve
/// diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeSolve {
    /// Solved amplitudes `A_k`.
    pub amplitudes: Vec<f64>,
    /// Residual of the equilibrated system, `Ã·A − b`; its absolute sum
    /// bounds the polynomial mismatch on `[0, 1]`.
    pub residual: Vec<f64>,
    /// Condition number of the raw matrix `M`.
    pub cond_raw: f64,
    /// Condition number of the equilibrated matrix (the gated one).
    pub cond_equilibrated: f64,
}

impl AmplitudeSolve {
    /// `Σ_l |residual_l|` — the certificate's solve term.
    pub fn solve_term(&self) -> f64 {
        self.residual.iter().map(|r| r.abs()).sum()
    }
}

/// Solves for amplitudes `A_k` so that `Σ_k A_k·T_N(ω_k, α_k, x)`
/// matches the polynomial `Σ b_l·x^l` coefficient by coefficient.
///
/// The solve runs on the row-equilibrated system (row `l` divided by
/// `l!`), whose condition number is gated at [`CONDITION_GATE`]; both
/// raw and equilibrated condition numbers are reported. A
/// column-pivoted QR factorization with two iterative-refinement steps
/// recovers accuracy on moderately conditioned systems. The `1×1` case
/// is the literal division `A₀ = b₀/sin(α₀)`.
pub fn solve_amplitudes(
    coeffs: &PolynomialCoeffs,
    omegas: &[f64],
    alphas: &[f64],
) -> Result<AmplitudeSolve, ConstructError> {
    let n = coeffs.coeffs.len();
    if omegas.len() != n || alphas.len() != n {
        return Err(ConstructError::LengthMismatch(format!(
            "coeffs {n}, omegas {}, alphas {}",
            omegas.len(),
            alphas.len()
        )));
    }
    if n - 1 > MAX_DEGREE {
        return Err(ConstructError::UnsupportedDegree(n - 1, "1..=16"));
    }

    if n == 1 {
        let s = alphas[0].sin();
        if s == 0.0 {
            return Err(ConstructError::SingularSystem);
        }
        return Ok(AmplitudeSolve {
            amplitudes: vec![coeffs.coeffs[0] / s],
            residual: vec![0.0],
            cond_raw: 1.0,
            cond_equilibrated: 1.0,
        });
    }

    let raw = build_lemma4_matrix(omegas, alphas);
    let eq = build_equilibrated_matrix(omegas, alphas);
    let cond_raw = condition_number(&raw);
    let cond_equilibrated = condition_number(&eq);
    if !cond_equilibrated.is_finite() {
        return Err(ConstructError::SingularSystem);
    }
    if cond_equilibrated > CONDITION_GATE {
        return Err(ConstructError::IllConditioned {
            cond_raw,
            cond_equilibrated,
            gate: CONDITION_GATE,
        });
    }

    let rhs = DVector::from_column_slice(&coeffs.coeffs);
    let qr = eq.clone().col_piv_qr();
    let mut x = qr.solve(&rhs).ok_or(ConstructError::SingularSystem)?;
    for _ in 0..2 {
        let r = &rhs - &eq * &x;
        if let Some(dx) = qr.solve(&r) {
            x += dx;
        }
    }
    let residual = (&eq * &x - &rhs).as_slice().to_vec();

    Ok(AmplitudeSolve {
        amplitudes: x.as_slice().to_vec(),
        residual,
        cond_raw,
        cond_equilibrated,
    })
}

/// The certificate accompanying a [`SineConstruction`]: a guaranteed
/// sup-error bound on `[0, 1]` split into its three sources.
///
/// `total = bernstein_term + taylor_term + solve_term` bounds
/// `sup |f(x) − Σ A_k sin(ω_k x + α_k)|`. The Taylor term accumulates
/// per-frequency tails `|A_k|·ω_k^{N+1}/(N+1)!` and dominates at small
/// `N`; the certificate is honest, not tight.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorCertificate {
    /// Grid-sup of `|f − B_N(f)|` over the measurement grid.
    pub bernstein_term: f64,
    /// `Σ_k |A_k|·ω_k^{N+1}/(N+1)!` — Taylor truncation tails.
    pub taylor_term: f64,
    /// `Σ_l |residual_l|` of the equilibrated amplitude solve.
    pub solve_term: f64,
    /// Sum of the three terms.
    pub total: f64,
    /// Condition number of the raw amplitude matrix.
    pub cond_raw: f64,
    /// Condition number of the equilibrated (solved) matrix.
    pub cond_equilibrated: f64,
    /// `Σ_k |A_k|`, reported because amplitude growth is the failure
    /// mode of the construction.
    pub sum_abs_amplitudes: f64,
}

/// An explicit sinusoidal approximation `Σ A_k·sin(ω_k·x + α_k)` on
/// `[0, 1]` with linearly spaced phases and its error certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SineConstruction {
    /// Construction degree `N` (the sum has `N + 1` terms).
    pub degree: usize,
    /// Phase base `α ∈ (0, π/2]`.
    pub alpha: f64,
    /// Phases `α_k = (k+1)·α/(N+2)`, strictly increasing in `(0, π/2)`.
    pub phases: Vec<f64>,
    /// Frequencies `ω_k` chosen by the [`FrequencyRule`].
    pub frequencies: Vec<f64>,
    /// Amplitudes `A_k` from the linear solve.
    pub amplitudes: Vec<f64>,
    /// The sup-error certificate.
    pub certificate: ErrorCertificate,
}

impl SineConstruction {
    /// Evaluates the sum with true sines (not the Taylor truncation).
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.amplitudes.len() {
            acc += self.amplitudes[k] * (self.frequencies[k] * x + self.phases[k]).sin();
        }
        acc
    }
}

/// The uniform measurement grid on `[0, 1]` used for certificates.
pub fn default_grid() -> Vec<f64> {
    (0..CERT_GRID_POINTS)
        .map(|i| i as f64 / (CERT_GRID_POINTS - 1) as f64)
        .collect()
}

/// Phases `(k+1)·α/(N+2)` for `k = 0..=N`: linearly spaced, strictly
/// positive, strictly below `α ≤ π/2`, as the amplitude system
/// requires.
pub fn construction_phases(degree: usize, alpha: f64) -> Vec<f64> {
    (0..=degree)
        .map(|k| (k + 1) as f64 * alpha / (degree + 2) as f64)
        .collect()
}

/// Runs the full pipeline: Bernstein sampling of `f`, monomial
/// conversion, and the amplitude solve, returning the construction
/// with its certificate.
///
/// `alpha` is the phase base in `(0, π/2]`; phases are
/// `(k+1)·α/(N+2)`. If the amplitude system exceeds the condition gate,
/// the frequencies are jittered deterministically (seeded by `seed`) up
/// to [`JITTER_RETRIES`] times before the error is returned — except
/// for [`FrequencyRule::Explicit`], which is used as-is.
///
/// ```
/// use sinekan::constructive::{construct_sine_approx, FrequencyRule};
///
/// let c = construct_sine_approx(|x| x, 6, 1.0, &FrequencyRule::default(), 0).unwrap();
/// let worst = (0..=100)
///     .map(|i| {
///         let x = i as f64 / 100.0;
///         (c.eval(x) - x).abs()
///     })
///     .fold(0.0, f64::max);
/// assert!(worst <= c.certificate.total);
/// ```
pub fn construct_sine_approx(
    f: impl Fn(f64) -> f64,
    degree: usize,
    alpha: f64,
    rule: &FrequencyRule,
    seed: u64,
) -> Result<SineConstruction, ConstructError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(ConstructError::UnsupportedDegree(degree, "1..=16"));
    }
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(ConstructError::InvalidAlpha(alpha));
    }

    // Equally spaced Bernstein samples f(l/N).
    let samples: Vec<f64> = (0..=degree)
        .map(|l| f(l as f64 / degree as f64))
        .collect();
    for (l, &s) in samples.iter().enumerate() {
        if !s.is_finite() {
            return Err(ConstructError::NonFiniteSample(l as f64 / degree as f64));
        }
    }
    let coeffs = bernstein_to_monomial(&samples);
    let phases = construction_phases(degree, alpha);
    let base_omegas = rule.frequencies(degree)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spacing = TAU / (degree + 1) as f64;
    let mut attempt_omegas = base_omegas.clone();
    let mut solve = solve_amplitudes(&coeffs, &attempt_omegas, &phases);
    if matches!(solve, Err(ConstructError::IllConditioned { .. }))
        && !matches!(rule, FrequencyRule::Explicit(_))
    {
        for _ in 0..JITTER_RETRIES {
            attempt_omegas = base_omegas
                .iter()
                .map(|&w| {
                    (w + rng.gen_range(-1.0..1.0) * 0.25 * spacing).clamp(0.0, TAU)
                })
                .collect();
            if validate_frequencies(&attempt_omegas, degree + 1).is_err() {
                continue;
            }
            solve = solve_amplitudes(&coeffs, &attempt_omegas, &phases);
            if !matches!(solve, Err(ConstructError::IllConditioned { .. })) {
                break;
            }
        }
    }
    let solve = solve?;

    // Bernstein term: grid-sup of |f - B_N(f)| on the measurement grid.
    let bernstein_term = default_grid()
        .iter()
        .map(|&x| (f(x) - bernstein_eval(&samples, x)).abs())
        .fold(0.0, f64::max);

    let taylor_term: f64 = solve
        .amplitudes
        .iter()
        .zip(&attempt_omegas)
        .map(|(&a, &w)| a.abs() * remainder_bound_at(degree, w))
        .sum();
    let solve_term = solve.solve_term();
    let sum_abs = solve.amplitudes.iter().map(|a| a.abs()).sum();

    Ok(SineConstruction {
        degree,
        alpha,
        phases,
        frequencies: attempt_omegas,
        amplitudes: solve.amplitudes,
        certificate: ErrorCertificate {
            bernstein_term,
            taylor_term,
            solve_term,
            total: bernstein_term + taylor_term + solve_term,
            cond_raw: solve.cond_raw,
            cond_equilibrated: solve.cond_equilibrated,
            sum_abs_amplitudes: sum_abs,
        },
    })
}

/// Sup-error of a construction against `f` over a grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SupErrorReport {
    /// Largest absolute deviation found.
    pub sup_error: f64,
    /// Grid point where it occurred.
    pub argmax: f64,
}

/// Measures `max |f(x) − construction(x)|` over the given grid points.
pub fn verify_construction(
    construction: &SineConstruction,
    f: impl Fn(f64) -> f64,
    grid: &[f64],
) -> SupErrorReport {
    let mut sup_error = 0.0;
    let mut argmax = f64::NAN;
    for &x in grid {
        let err = (f(x) - construction.eval(x)).abs();
        if err > sup_error || argmax.is_nan() {
            sup_error = err;
            argmax = x;
        }
    }
    SupErrorReport { sup_error, argmax }
}

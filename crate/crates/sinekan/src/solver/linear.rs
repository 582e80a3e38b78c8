use nalgebra::{DMatrix, DVector};

use super::SolverError;

/// Solves the linear least-squares problem `min ‖X·β − y‖₂`.
///
/// Works through the Gram matrix `XᵀX` and its symmetric
/// eigendecomposition, dropping eigenvalues below a relative cutoff, so
/// rank-deficient designs get the minimum-norm solution. The cutoff is
/// `max(nrows, ncols) · ε · λ_max`, which on the singular-value scale is
/// `√(dim · ε) · σ_max` — the right resolution for a squared system,
/// since the Gram matrix itself carries rounding noise of that order.
///
/// ```
/// use nalgebra::DMatrix;
/// use sinekan::solver::fit_linear;
///
/// let x = DMatrix::identity(3, 3);
/// let beta = fit_linear(&x, &[1.0, 2.0, 3.0]).unwrap();
/// assert_eq!(beta, vec![1.0, 2.0, 3.0]);
/// ```
pub fn fit_linear(design: &DMatrix<f64>, targets: &[f64]) -> Result<Vec<f64>, SolverError> {
    let (m, n) = design.shape();
    if targets.len() != m {
        return Err(SolverError::Dimension {
            what: "target length",
            expected: m,
            got: targets.len(),
        });
    }
    if !design.as_slice().iter().all(|v| v.is_finite())
        || !targets.iter().all(|v| v.is_finite())
    {
        return Err(SolverError::NonFiniteAtStart);
    }

    let y = DVector::from_column_slice(targets);
    let gram = design.tr_mul(design);
    let rhs = design.tr_mul(&y);

    let eig = gram.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = m.max(n) as f64 * f64::EPSILON * lambda_max;

    // β = Σ over kept eigenpairs of (vᵀ·rhs / λ)·v.
    let mut beta = DVector::zeros(n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > cutoff {
            let v = eig.eigenvectors.column(i);
            beta += v * (v.dot(&rhs) / lambda);
        }
    }
    Ok(beta.as_slice().to_vec())
}

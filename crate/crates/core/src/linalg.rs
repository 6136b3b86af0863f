//! Thin wrappers over LAPACK (through ndarray-linalg) for the few dense
//! operations the crate needs.

use ndarray::Array2;
use ndarray_linalg::{EigVals, EigValsh, Eigh, UPLO};

use crate::{Error, Result, C64};

/// Eigenvalues of a Hermitian matrix. Real-valued input takes the real
/// symmetric path, which is markedly faster on large grids.
pub(crate) fn eigvalsh(h: &Array2<C64>, descriptor: &str) -> Result<Vec<f64>> {
    let fail = |e: ndarray_linalg::error::LinalgError| Error::NonConvergence {
        descriptor: descriptor.to_string(),
        reason: e.to_string(),
    };
    if h.iter().all(|z| z.im == 0.0) {
        eigvalsh_real(&h.mapv(|z| z.re), descriptor)
    } else {
        Ok(h.eigvalsh(UPLO::Lower).map_err(fail)?.to_vec())
    }
}

pub(crate) fn eigvalsh_real(h: &Array2<f64>, descriptor: &str) -> Result<Vec<f64>> {
    h.eigvalsh(UPLO::Lower)
        .map(|v| v.to_vec())
        .map_err(|e| Error::NonConvergence {
            descriptor: descriptor.to_string(),
            reason: e.to_string(),
        })
}

pub(crate) fn eigvals(h: &Array2<C64>, descriptor: &str) -> Result<Vec<C64>> {
    h.eigvals()
        .map(|v| v.to_vec())
        .map_err(|e| Error::NonConvergence {
            descriptor: descriptor.to_string(),
            reason: e.to_string(),
        })
}

/// `exp(-i h t)` for Hermitian `h`, via its eigendecomposition.
pub fn unitary_exp(h: &Array2<C64>, t: f64) -> Result<Array2<C64>> {
    let (w, v) = h.eigh(UPLO::Lower).map_err(|e| Error::NonConvergence {
        descriptor: format!("{}x{} hermitian", h.nrows(), h.ncols()),
        reason: e.to_string(),
    })?;
    let n = w.len();
    let mut scaled = v.clone();
    for j in 0..n {
        let ph = C64::from_polar(1.0, -w[j] * t);
        for i in 0..n {
            scaled[(i, j)] *= ph;
        }
    }
    let vh = v.t().mapv(|z| z.conj());
    Ok(scaled.dot(&vh))
}

/// Largest absolute entrywise difference.
pub fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    assert_eq!(a.dim(), b.dim(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Spectral norm of a square matrix (largest singular value).
pub fn operator_norm(a: &Array2<C64>) -> f64 {
    use ndarray_linalg::SVD;
    let (_, s, _) = a.svd(false, false).expect("svd of a finite matrix");
    s.iter().cloned().fold(0.0, f64::max)
}

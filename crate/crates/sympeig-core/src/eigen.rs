//! Symmetric eigendecomposition and the positive-semidefinite square root.
//!
//! The eigensolver is a cyclic Jacobi iteration: self-contained,
//! unconditionally stable on symmetric input, and accurate at the dense
//! sizes this crate targets. Everything spectral in the crate funnels
//! through [`sym_eig`], so its determinism (fixed sweep order, stable
//! ascending sort) is what makes every downstream decomposition
//! reproducible.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative off-diagonal mass at which the Jacobi sweep stops.
const JACOBI_EPS: f64 = 1e-15;
/// Sweep cap; cyclic Jacobi converges quadratically, so hitting this
/// indicates non-symmetric or non-finite input slipped through.
const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `M = V·diag(λ)·Vᵀ` of a symmetric matrix.
///
/// Eigenvalues are ascending; ties keep the order in which the original
/// diagonal positions were encountered. Columns of `vectors` are the
/// corresponding orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct SymEigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// `tol` bounds the accepted symmetry residual `‖M − Mᵀ‖_F` relative to
/// `1 + ‖M‖_F`; the iteration itself always runs to machine-level
/// convergence.
pub fn sym_eig(m: &DenseMatrix, tol: f64) -> Result<SymEigDecomposition> {
    m.require_symmetric(tol)?;
    let n = m.rows();
    let scale = 1.0 + m.frobenius_norm();

    // Work on the symmetrized copy so a residual within tolerance cannot
    // bias the rotations.
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let mut v = DenseMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_EPS * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - s * aiq;
                    a[(p, i)] = a[(i, p)];
                    a[(i, q)] = s * aip + c * aiq;
                    a[(q, i)] = a[(i, q)];
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > JACOBI_EPS * scale {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Ascending sort, ties kept stable by original index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .partial_cmp(&a[(j, j)])
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = v.select_columns(&order);

    Ok(SymEigDecomposition {
        eigenvalues,
        vectors,
    })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    s.sqrt()
}

/// Eigenvalues below this relative level are indistinguishable from the
/// Jacobi roundoff of an exact zero; [`spsd_sqrt`] flushes them so that
/// taking the root cannot lift kernel noise to the `√eps` scale.
const KERNEL_FLUSH: f64 = 1e-13;

/// Unique symmetric positive-semidefinite square root of an spsd matrix.
///
/// Eigenvalues in `(−tol·‖A‖_F, 0)` are treated as roundoff and clamped to
/// zero; anything below that band is rejected as [`Error::NotSpsd`]. The
/// result keeps the eigenvectors of `A`, and the numeric kernel is flushed
/// to exact zeros, so `ker A¹ᐟ² = ker A` holds at working tolerance.
pub fn spsd_sqrt(a: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    let eig = sym_eig(a, tol)?;
    let norm = a.frobenius_norm();
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -tol * norm {
            return Err(Error::NotSpsd {
                min_eigenvalue: min,
            });
        }
    }
    let n = a.rows();
    let v = &eig.vectors;
    let roots: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&lam| {
            if lam <= KERNEL_FLUSH * norm {
                0.0
            } else {
                lam.sqrt()
            }
        })
        .collect();
    // R = V·diag(√λ)·Vᵀ, accumulated symmetrically.
    let mut r = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for (k, &root) in roots.iter().enumerate() {
                s += v[(i, k)] * root * v[(j, k)];
            }
            r[(i, j)] = s;
            r[(j, i)] = s;
        }
    }
    Ok(r)
}

/// Number of eigenvalues with `|λ| > tol·scale`.
///
/// Decides kernel dimensions throughout the crate; monotone in `tol`.
pub fn numeric_rank(eigenvalues: &[f64], scale: f64, tol: f64) -> usize {
    eigenvalues.iter().filter(|&&lam| lam.abs() > tol * scale).count()
}

//! The standard symplectic form `J₂ₙ`, symplecticity tests, the symplectic
//! Gram–Schmidt process, and kernel classification for spsd matrices.
//!
//! A subspace is *symplectic* when the restriction of the form to it is
//! nondegenerate, and *isotropic* when the restriction vanishes entirely.
//! Whether an spsd matrix admits a Williamson diagonal form is decided
//! entirely by which of these its kernel is, so [`kernel_report`] is the
//! gatekeeper for the construction in [`crate::williamson`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::eigen::{numeric_rank, sym_eig};
use crate::error::{Error, Result};
use crate::matrix::{vec_dot, vec_norm, DenseMatrix};

/// The standard symplectic form `J₂ₙ = [[0, Iₙ], [−Iₙ, 0]]`.
///
/// Stored by order only; products with `J` are computed by row swaps and
/// sign flips rather than a materialized matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    /// The form of order `n` (acting on `ℝ²ⁿ`).
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(SymplecticForm { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Materializes `J₂ₙ`.
    pub fn matrix(&self) -> DenseMatrix {
        let n = self.n;
        let mut j = DenseMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = 1.0;
            j[(n + i, i)] = -1.0;
        }
        j
    }

    /// `J·x`.
    pub fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(x.len(), 2 * n, "vector length vs form dimension");
        let mut y = vec![0.0; 2 * n];
        for i in 0..n {
            y[i] = x[n + i];
            y[n + i] = -x[i];
        }
        y
    }

    /// `J·M` for a matrix with `2n` rows.
    pub fn apply(&self, m: &DenseMatrix) -> DenseMatrix {
        let n = self.n;
        assert_eq!(m.rows(), 2 * n, "row count vs form dimension");
        let mut out = DenseMatrix::zeros(2 * n, m.cols());
        for i in 0..n {
            for j in 0..m.cols() {
                out[(i, j)] = m[(n + i, j)];
                out[(n + i, j)] = -m[(i, j)];
            }
        }
        out
    }

    /// The symplectic product `xᵀJy`.
    pub fn product(&self, x: &[f64], y: &[f64]) -> f64 {
        vec_dot(x, &self.apply_vec(y))
    }
}

/// Outcome of a symplecticity test: the decision together with the measured
/// residual `‖SᵀJ₂ₙS − J₂ₖ‖_F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticCheck {
    pub symplectic: bool,
    pub residual: f64,
}

/// Tests whether `S ∈ Sp(2k, 2n)`, i.e. `SᵀJ₂ₙS = J₂ₖ`.
///
/// Accepts square (`k = n`) and rectangular (`k < n`) candidates; the
/// residual is compared against `tol·(1 + ‖S‖_F²)`.
pub fn is_symplectic(s: &DenseMatrix, tol: f64) -> Result<SymplecticCheck> {
    if s.rows() % 2 != 0 || s.cols() % 2 != 0 {
        return Err(Error::OddDimensions {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let n = s.rows() / 2;
    let k = s.cols() / 2;
    if k == 0 || k > n {
        return Err(Error::ShapeMismatch {
            rows: s.rows(),
            cols: s.cols(),
            context: "is_symplectic expects 2n×2k with 1 ≤ k ≤ n",
        });
    }
    let jn = SymplecticForm::standard(n)?;
    let jk = SymplecticForm::standard(k)?;
    let gram = s.transpose().matmul(&jn.apply(s));
    let residual = gram.sub(&jk.matrix()).frobenius_norm();
    let norm = s.frobenius_norm();
    Ok(SymplecticCheck {
        symplectic: residual <= tol * (1.0 + norm * norm),
        residual,
    })
}

/// How the kernel of an spsd matrix sits relative to the symplectic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelClassification {
    /// `ker A = {0}`.
    Trivial,
    /// The form restricted to the kernel is nondegenerate; a Williamson
    /// diagonal form exists.
    Symplectic,
    /// The form vanishes on the kernel; no Williamson diagonal form.
    Isotropic,
    /// Degenerate but not identically zero; no Williamson diagonal form.
    MixedDegenerate,
}

impl fmt::Display for KernelClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KernelClassification::Trivial => "Trivial",
            KernelClassification::Symplectic => "Symplectic",
            KernelClassification::Isotropic => "Isotropic",
            KernelClassification::MixedDegenerate => "MixedDegenerate",
        };
        f.write_str(s)
    }
}

/// Kernel of an spsd matrix: orthonormal basis, classification, and (when
/// the kernel is symplectic or trivial) a symplectic basis `W = [W₁ W₂]`.
#[derive(Debug, Clone)]
pub struct KernelReport {
    pub dim: usize,
    /// Orthonormal columns spanning `ker A` (eigenvectors of the near-zero
    /// eigenvalues).
    pub basis: DenseMatrix,
    pub classification: KernelClassification,
    /// Present iff the classification is `Trivial` (empty matrix) or
    /// `Symplectic`; column pairs `(wᵢ, w_{m+i})` are symplectically
    /// normalized.
    pub symplectic_basis: Option<DenseMatrix>,
}

/// Computes and classifies `ker A` for a symmetric spsd matrix of size `2n`.
///
/// Near-zero eigenvalues are those at or below `tol·max(1, λ_max)`, the same
/// relative cutoff [`crate::williamson::williamson`] uses for zero symplectic
/// eigenvalues. Nondegeneracy of the restricted form is decided on the
/// symmetric square of the Gram matrix `basisᵀJ·basis`: smallest eigenvalue
/// above `tol²` means symplectic, largest below `tol²` means isotropic.
pub fn kernel_report(a: &DenseMatrix, tol: f64) -> Result<KernelReport> {
    if a.rows() % 2 != 0 {
        return Err(Error::OddDimensions {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows() / 2;
    let eig = sym_eig(a, tol)?;
    if eig.eigenvalues[0] < -tol * a.frobenius_norm() {
        return Err(Error::NotSpsd {
            min_eigenvalue: eig.eigenvalues[0],
        });
    }
    let lam_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let rank = numeric_rank(&eig.eigenvalues, lam_max.max(1.0), tol);
    let dim = 2 * n - rank;
    let basis = eig.vectors.select_columns(&(0..dim).collect::<Vec<_>>());

    if dim == 0 {
        return Ok(KernelReport {
            dim,
            basis,
            classification: KernelClassification::Trivial,
            symplectic_basis: Some(DenseMatrix::zeros(2 * n, 0)),
        });
    }

    let form = SymplecticForm::standard(n)?;
    let gram = basis.transpose().matmul(&form.apply(&basis));
    let gram_sq = gram.transpose().matmul(&gram);
    let geig = sym_eig(&gram_sq, tol)?;
    let sv_sq_min = geig.eigenvalues[0];
    let sv_sq_max = *geig.eigenvalues.last().unwrap();

    // The Gram matrix has entries in [−1, 1], so eigenvalues of its square
    // are exact only down to ~1e-14; a bare tol² (1e-20) would read that
    // noise as nonsingularity.
    let threshold = (tol * tol).max(1e-14);
    let classification = if sv_sq_max <= threshold {
        KernelClassification::Isotropic
    } else if dim % 2 == 0 && sv_sq_min > threshold {
        KernelClassification::Symplectic
    } else {
        KernelClassification::MixedDegenerate
    };
    let symplectic_basis = match classification {
        KernelClassification::Symplectic => Some(symplectic_gram_schmidt(&basis, tol)?),
        _ => None,
    };
    Ok(KernelReport {
        dim,
        basis,
        classification,
        symplectic_basis,
    })
}

/// Symplectic Gram–Schmidt: turns linearly independent columns spanning a
/// symplectic subspace into `W = [W₁ W₂]` with symplectically normalized
/// pairs `(wᵢ, w_{m+i})`, `span(W) = span(V)`.
///
/// At each step the pair `(i, j)` maximizing `|vᵢᵀJvⱼ|` among the remaining
/// vectors is pivoted out; the pivot `u` is scaled by `1/√|uᵀJv|` and its
/// partner by `sign(uᵀJv)/√|uᵀJv|`, making the product exactly `+1`. The
/// remaining vectors are projected symplectically orthogonal to the pair and
/// re-orthonormalized.
///
/// Fails with [`Error::IsotropicInput`] when no remaining product exceeds
/// `tol` (the subspace is not symplectic) and [`Error::RankDeficientInput`]
/// when the columns are dependent at tolerance `tol`.
pub fn symplectic_gram_schmidt(v: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    if v.rows() % 2 != 0 {
        return Err(Error::OddDimensions {
            rows: v.rows(),
            cols: v.cols(),
        });
    }
    let n = v.rows() / 2;
    let form = SymplecticForm::standard(n)?;
    let cols: Vec<Vec<f64>> = (0..v.cols()).map(|j| v.column(j)).collect();
    let mut work = orthonormalize(cols, tol)?;

    let mut left: Vec<Vec<f64>> = Vec::new();
    let mut right: Vec<Vec<f64>> = Vec::new();
    while !work.is_empty() {
        // Pivot: the largest symplectic product among remaining vectors.
        let mut best = (0usize, 0usize, 0.0f64);
        for i in 0..work.len() {
            for j in (i + 1)..work.len() {
                let p = form.product(&work[i], &work[j]);
                if p.abs() > best.2.abs() {
                    best = (i, j, p);
                }
            }
        }
        let (i, j, pivot) = best;
        if pivot.abs() <= tol {
            return Err(Error::IsotropicInput);
        }
        let gamma = pivot.abs().sqrt();
        let sign = if pivot >= 0.0 { 1.0 } else { -1.0 };
        let u: Vec<f64> = work[i].iter().map(|x| x / gamma).collect();
        let w: Vec<f64> = work[j].iter().map(|x| sign * x / gamma).collect();
        work.remove(j);
        work.remove(i);

        // Make the rest symplectically orthogonal to the new pair:
        // v ← v + (wᵀJv)·u − (uᵀJv)·w zeroes both products.
        for vrem in work.iter_mut() {
            let cu = form.product(&w, vrem);
            let cw = form.product(&u, vrem);
            for ((x, &uu), &ww) in vrem.iter_mut().zip(&u).zip(&w) {
                *x += cu * uu - cw * ww;
            }
        }
        work = orthonormalize(work, tol)?;

        left.push(u);
        right.push(w);
    }

    let m = left.len();
    let mut out = DenseMatrix::zeros(2 * n, 2 * m);
    for (idx, col) in left.iter().enumerate() {
        out.set_column(idx, col);
    }
    for (idx, col) in right.iter().enumerate() {
        out.set_column(m + idx, col);
    }
    Ok(out)
}

/// Modified Gram–Schmidt with reorthogonalization; errors when a column
/// collapses below `tol` relative to the largest column norm.
fn orthonormalize(cols: Vec<Vec<f64>>, tol: f64) -> Result<Vec<Vec<f64>>> {
    let scale = cols.iter().map(|c| vec_norm(c)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cols.len());
    for mut c in cols {
        for _ in 0..2 {
            for b in &basis {
                let coeff = vec_dot(b, &c);
                for (x, &bb) in c.iter_mut().zip(b) {
                    *x -= coeff * bb;
                }
            }
        }
        let norm = vec_norm(&c);
        if norm <= tol * scale.max(1.0) {
            return Err(Error::RankDeficientInput);
        }
        for x in c.iter_mut() {
            *x /= norm;
        }
        basis.push(c);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    fn e(i: usize, dim: usize) -> Vec<f64> {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        v
    }

    #[test]
    fn standard_form_layout() {
        let j = SymplecticForm::standard(1).unwrap().matrix();
        assert_eq!(j.as_slice(), &[0.0, 1.0, -1.0, 0.0]);

        let j2 = SymplecticForm::standard(2).unwrap();
        assert_eq!(j2.apply_vec(&e(2, 4)), e(0, 4)); // J e₃ = e₁
        let mut neg_e2 = vec![0.0; 4];
        neg_e2[2] = -1.0;
        assert_eq!(j2.apply_vec(&e(0, 4)), neg_e2); // J e₁ = −e₃
        assert!(SymplecticForm::standard(0).is_err());
    }

    #[test]
    fn form_squares_to_minus_identity() {
        for n in 1..=5 {
            let j = SymplecticForm::standard(n).unwrap().matrix();
            let jj = j.matmul(&j);
            let minus_i = DenseMatrix::identity(2 * n).scale(-1.0);
            assert_eq!(jj, minus_i);
        }
    }

    #[test]
    fn symplecticity_of_identity_and_j() {
        for n in 1..=4 {
            let id = DenseMatrix::identity(2 * n);
            let check = is_symplectic(&id, DEFAULT_TOL).unwrap();
            assert!(check.symplectic);
            assert_eq!(check.residual, 0.0);

            let j = SymplecticForm::standard(n).unwrap().matrix();
            let check = is_symplectic(&j, DEFAULT_TOL).unwrap();
            assert!(check.symplectic);
            assert_eq!(check.residual, 0.0);
        }
    }

    #[test]
    fn scaling_breaks_symplecticity() {
        // SᵀJS = 2J for S = diag(2,1), so the residual is ‖J‖_F = √2.
        let s = DenseMatrix::diagonal(&[2.0, 1.0]);
        let check = is_symplectic(&s, DEFAULT_TOL).unwrap();
        assert!(!check.symplectic);
        assert!((check.residual - 2.0_f64.sqrt()).abs() <= 1e-15);
    }

    #[test]
    fn odd_dimensions_rejected() {
        let m = DenseMatrix::zeros(3, 3);
        assert!(matches!(
            is_symplectic(&m, DEFAULT_TOL),
            Err(Error::OddDimensions { .. })
        ));
    }

    #[test]
    fn gram_schmidt_canonical_pair() {
        // {e₁, e₃} in ℝ⁴ is already a normalized pair.
        let mut v = DenseMatrix::zeros(4, 2);
        v.set_column(0, &e(0, 4));
        v.set_column(1, &e(2, 4));
        let w = symplectic_gram_schmidt(&v, DEFAULT_TOL).unwrap();
        assert_eq!(w.column(0), e(0, 4));
        assert_eq!(w.column(1), e(2, 4));
    }

    #[test]
    fn gram_schmidt_normalizes_product_to_one() {
        let mut v = DenseMatrix::zeros(4, 2);
        v.set_column(0, &[2.0, 0.0, 0.0, 0.0]);
        v.set_column(1, &e(2, 4));
        let w = symplectic_gram_schmidt(&v, DEFAULT_TOL).unwrap();
        let form = SymplecticForm::standard(2).unwrap();
        let product = form.product(&w.column(0), &w.column(1));
        assert!((product - 1.0).abs() <= 1e-12);
        assert!(is_symplectic(&w, 1e-9).unwrap().symplectic);
        // Span is preserved: both output columns stay in span{e₁, e₃}.
        for j in 0..2 {
            let col = w.column(j);
            assert_eq!(col[1], 0.0);
            assert_eq!(col[3], 0.0);
        }
    }

    #[test]
    fn gram_schmidt_rejects_isotropic_and_dependent_input() {
        let mut v = DenseMatrix::zeros(4, 2);
        v.set_column(0, &e(0, 4));
        v.set_column(1, &e(1, 4));
        assert_eq!(
            symplectic_gram_schmidt(&v, DEFAULT_TOL),
            Err(Error::IsotropicInput)
        );

        let mut v = DenseMatrix::zeros(4, 2);
        v.set_column(0, &e(0, 4));
        v.set_column(1, &[2.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            symplectic_gram_schmidt(&v, DEFAULT_TOL),
            Err(Error::RankDeficientInput)
        );
    }

    #[test]
    fn kernel_of_spd_matrix_is_trivial() {
        let report = kernel_report(&DenseMatrix::identity(4), DEFAULT_TOL).unwrap();
        assert_eq!(report.dim, 0);
        assert_eq!(report.classification, KernelClassification::Trivial);
        let w = report.symplectic_basis.unwrap();
        assert_eq!((w.rows(), w.cols()), (4, 0));
    }

    #[test]
    fn symplectic_kernel_detected() {
        let a = DenseMatrix::diagonal(&[0.0, 3.0, 0.0, 3.0]);
        let report = kernel_report(&a, DEFAULT_TOL).unwrap();
        assert_eq!(report.dim, 2);
        assert_eq!(report.classification, KernelClassification::Symplectic);
        let w = report.symplectic_basis.unwrap();
        assert!(is_symplectic(&w, 1e-9).unwrap().symplectic);
        // Columns of W stay inside ker A.
        assert!(a.matmul(&w).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn isotropic_kernel_detected() {
        // A = diag(Iₙ, 0ₙ): the kernel carries no symplectic structure.
        let a = DenseMatrix::diagonal(&[1.0, 1.0, 0.0, 0.0]);
        let report = kernel_report(&a, DEFAULT_TOL).unwrap();
        assert_eq!(report.dim, 2);
        assert_eq!(report.classification, KernelClassification::Isotropic);
        assert!(report.symplectic_basis.is_none());
    }

    #[test]
    fn mixed_degenerate_kernel_detected() {
        // ker = span{e₁,e₂,e₃}: contains the pair (e₁,e₃) and the isotropic
        // leftover e₂.
        let a = DenseMatrix::diagonal(&[0.0, 0.0, 0.0, 5.0]);
        let report = kernel_report(&a, DEFAULT_TOL).unwrap();
        assert_eq!(report.dim, 3);
        assert_eq!(
            report.classification,
            KernelClassification::MixedDegenerate
        );
        assert!(report.symplectic_basis.is_none());
    }

    #[test]
    fn mixed_degenerate_even_dimension() {
        // n = 3, ker = span{e₁,e₂,e₃,e₄}: (e₁,e₄) is a symplectic pair but
        // e₂ and e₃ have no partners inside the kernel, so the restricted
        // form is degenerate without vanishing.
        let a = DenseMatrix::diagonal(&[0.0, 0.0, 0.0, 0.0, 5.0, 5.0]);
        let report = kernel_report(&a, DEFAULT_TOL).unwrap();
        assert_eq!(report.dim, 4);
        assert_eq!(
            report.classification,
            KernelClassification::MixedDegenerate
        );
    }
}

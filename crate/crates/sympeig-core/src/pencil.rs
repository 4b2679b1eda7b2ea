//! The 4n-dimensional matrix pencil `𝒜 − λ𝒥` built from an spsd matrix.
//!
//! Stacking the eigenpair relations for `(u, v)` into a single vector
//! `[u; v]` turns the symplectic eigenvalue problem into a generalized
//! eigenvalue problem for `𝒜 = diag(A, A)` against `𝒥 = [[0, J₂ₙ], [−J₂ₙ, 0]]`.
//! Every symplectic eigenvalue `d` shows up as pencil eigenvalues `d` and
//! `−d`, each with multiplicity two, which makes the pencil spectrum an
//! independent oracle for the Williamson construction. `𝒥` is symmetric,
//! involutory (`𝒥² = I`), and has eigenvalues `±1` of multiplicity `2n`
//! each; the pencil is positive-semidefinite with definitizing shift 0.

use alloc::vec::Vec;

use num_traits::Float;

use crate::eigen::{spsd_sqrt, sym_eig};
use crate::error::{Error, Result};
use crate::matrix::{vec_norm, DenseMatrix};
use crate::symplectic::SymplecticForm;
use crate::DEFAULT_TOL;

/// The pencil `(𝒜, 𝒥)` of size `4n` attached to a `2n × 2n` spsd matrix.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub n: usize,
    /// The underlying `2n × 2n` matrix.
    pub a: DenseMatrix,
    /// `diag(A, A)`, size `4n`.
    pub cal_a: DenseMatrix,
    /// `[[0, J₂ₙ], [−J₂ₙ, 0]]`, size `4n`; symmetric with `𝒥² = I`.
    pub cal_j: DenseMatrix,
}

/// Eigenvalues of `𝒜 − λ𝒥`, ascending. As a multiset they are symmetric
/// about zero, with `2n` non-positive and `2n` non-negative values.
#[derive(Debug, Clone)]
pub struct PencilSpectrum {
    pub n: usize,
    pub values: Vec<f64>,
}

impl PencilSpectrum {
    /// Bins the values into clusters of equal eigenvalues, using the gap
    /// tolerance `tol·max(1, |λ|_max)`. Returns `(representative, count)`
    /// pairs in ascending order; the representative is the cluster mean.
    pub fn clusters(&self, tol: f64) -> Vec<(f64, usize)> {
        cluster_values(&self.values, tol)
    }

    /// `max |λᵢ + λ_{rev(i)}|`: zero when the multiset is exactly symmetric
    /// about the origin.
    pub fn sign_symmetry_residual(&self) -> f64 {
        let k = self.values.len();
        (0..k)
            .map(|i| (self.values[i] + self.values[k - 1 - i]).abs())
            .fold(0.0, f64::max)
    }
}

/// Clusters a sorted value list with gap tolerance `tol·max(1, |λ|_max)`.
pub fn cluster_values(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let scale = values.iter().fold(1.0_f64, |m, &x| m.max(x.abs()));
    let gap = tol * scale;
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut idx = 0;
    while idx < values.len() {
        let mut end = idx + 1;
        while end < values.len() && values[end] - values[end - 1] <= gap {
            end += 1;
        }
        let count = end - idx;
        let mean = values[idx..end].iter().sum::<f64>() / count as f64;
        out.push((mean, count));
        idx = end;
    }
    out
}

/// Builds the pencil `(𝒜, 𝒥)` for a symmetric spsd matrix of size `2n`.
///
/// Only copying is performed; a negative diagonal entry is rejected
/// immediately, the full spsd check happens in [`pencil_eigenvalues`].
pub fn build_pencil(a: &DenseMatrix) -> Result<Pencil> {
    a.require_symmetric(DEFAULT_TOL)?;
    if a.rows() % 2 != 0 || a.rows() == 0 {
        return Err(Error::OddDimensions {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows() / 2;
    for i in 0..2 * n {
        if a[(i, i)] < 0.0 {
            return Err(Error::NotSpsd {
                min_eigenvalue: a[(i, i)],
            });
        }
    }
    let two_n = 2 * n;
    let mut cal_a = DenseMatrix::zeros(4 * n, 4 * n);
    for i in 0..two_n {
        for j in 0..two_n {
            cal_a[(i, j)] = a[(i, j)];
            cal_a[(two_n + i, two_n + j)] = a[(i, j)];
        }
    }
    let jmat = SymplecticForm::standard(n)?.matrix();
    let mut cal_j = DenseMatrix::zeros(4 * n, 4 * n);
    for i in 0..two_n {
        for j in 0..two_n {
            cal_j[(i, two_n + j)] = jmat[(i, j)];
            cal_j[(two_n + i, j)] = -jmat[(i, j)];
        }
    }
    Ok(Pencil {
        n,
        a: a.clone(),
        cal_a,
        cal_j,
    })
}

/// Eigenvalues of the pencil `𝒜 − λ𝒥`, ascending.
///
/// Because `𝒥⁻¹ = 𝒥`, the pencil eigenvalues coincide with those of the
/// symmetric matrix `𝒜¹ᐟ²·𝒥·𝒜¹ᐟ²` (zeros of a singular `𝒜` included), so
/// one call to the symmetric eigensolver suffices. `𝒜¹ᐟ² = diag(A¹ᐟ², A¹ᐟ²)`
/// reuses the `2n`-sized square root.
pub fn pencil_eigenvalues(pencil: &Pencil, tol: f64) -> Result<PencilSpectrum> {
    let root = spsd_sqrt(&pencil.a, tol)?;
    let two_n = 2 * pencil.n;
    let mut big_root = DenseMatrix::zeros(4 * pencil.n, 4 * pencil.n);
    for i in 0..two_n {
        for j in 0..two_n {
            big_root[(i, j)] = root[(i, j)];
            big_root[(two_n + i, two_n + j)] = root[(i, j)];
        }
    }
    let congruence = big_root.matmul(&pencil.cal_j.matmul(&big_root));
    let eig = sym_eig(&congruence, tol)?;
    Ok(PencilSpectrum {
        n: pencil.n,
        values: eig.eigenvalues,
    })
}

/// Checks the four equivalent stacked reformulations of the eigenpair
/// relations: `𝒜[u;v] = d𝒥[u;v]`, `𝒜[v;u] = −d𝒥[v;u]`,
/// `𝒜[v;−u] = d𝒥[v;−u]`, and `𝒜[−u;v] = −d𝒥[−u;v]`.
///
/// True iff every residual is at most `tol·(1 + ‖A‖_F)`; by construction
/// this accepts exactly when [`crate::williamson::verify_eigenpairs`] does,
/// up to the norm in which the two residuals are accumulated.
pub fn verify_reformulations(
    a: &DenseMatrix,
    u: &[f64],
    v: &[f64],
    d: f64,
    tol: f64,
) -> Result<bool> {
    if !a.is_square() || a.rows() % 2 != 0 || a.rows() == 0 {
        return Err(Error::ShapeMismatch {
            rows: a.rows(),
            cols: a.cols(),
            context: "verify_reformulations expects square 2n×2n A",
        });
    }
    if u.len() != a.rows() || v.len() != a.rows() {
        return Err(Error::ShapeMismatch {
            rows: u.len(),
            cols: v.len(),
            context: "verify_reformulations expects 2n-vectors u, v",
        });
    }
    let n = a.rows() / 2;
    let form = SymplecticForm::standard(n)?;
    let neg = |x: &[f64]| -> Vec<f64> { x.iter().map(|t| -t).collect() };
    let cases: [(Vec<f64>, Vec<f64>, f64); 4] = [
        (u.to_vec(), v.to_vec(), d),
        (v.to_vec(), u.to_vec(), -d),
        (v.to_vec(), neg(u), d),
        (neg(u), v.to_vec(), -d),
    ];
    let bound = tol * (1.0 + a.frobenius_norm());
    for (top, bot, lam) in &cases {
        // 𝒜[t;b] = [At; Ab], 𝒥[t;b] = [Jb; −Jt].
        let a_top = a.matvec(top);
        let a_bot = a.matvec(bot);
        let j_bot = form.apply_vec(bot);
        let j_top = form.apply_vec(top);
        let mut resid_sq = 0.0;
        for i in 0..2 * n {
            let r_top = a_top[i] - lam * j_bot[i];
            let r_bot = a_bot[i] + lam * j_top[i];
            resid_sq += r_top * r_top + r_bot * r_bot;
        }
        if resid_sq.sqrt() > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Explicit eigenvector blocks of `𝒥` for the eigenvalues `+1` and `−1`,
/// built with `X₁ = X₂ = Iₙ` and columns scaled to unit norm. Each returned
/// matrix is `4n × 2n`; together their columns span `ℝ⁴ⁿ`.
pub fn jj_eigenstructure(n: usize) -> Result<(DenseMatrix, DenseMatrix)> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let s = 1.0 / 2.0_f64.sqrt();
    let mut plus = DenseMatrix::zeros(4 * n, 2 * n);
    let mut minus = DenseMatrix::zeros(4 * n, 2 * n);
    for i in 0..n {
        // [X₁, 0; 0, X₂; 0, −X₂; X₁, 0] → 𝒥x = x.
        plus[(i, i)] = s;
        plus[(3 * n + i, i)] = s;
        plus[(n + i, n + i)] = s;
        plus[(2 * n + i, n + i)] = -s;
        // [X₁, 0; 0, X₂; 0, X₂; −X₁, 0] → 𝒥x = −x.
        minus[(i, i)] = s;
        minus[(3 * n + i, i)] = -s;
        minus[(n + i, n + i)] = s;
        minus[(2 * n + i, n + i)] = s;
    }
    Ok((plus, minus))
}

/// `max_j ‖𝒥xⱼ − σxⱼ‖` over the columns of `x`, for checking the claimed
/// eigenvalue `σ` of `𝒥`.
pub fn jj_eigen_residual(cal_j: &DenseMatrix, x: &DenseMatrix, sigma: f64) -> f64 {
    let mut worst = 0.0_f64;
    for jcol in 0..x.cols() {
        let col = x.column(jcol);
        let image = cal_j.matvec(&col);
        let diff: Vec<f64> = image
            .iter()
            .zip(&col)
            .map(|(y, c)| y - sigma * c)
            .collect();
        worst = worst.max(vec_norm(&diff));
    }
    worst
}

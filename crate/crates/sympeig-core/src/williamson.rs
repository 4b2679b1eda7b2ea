//! Williamson's diagonal form for spd and symplectic-kernel spsd matrices.
//!
//! The pipeline: classify `ker A`, form the skew core `K = A¹ᐟ²J₂ₙA¹ᐟ²`,
//! bring `K` to its real Schur block form `QᵀKQ = diag(0, …, [[0,dⱼ],[−dⱼ,0]])`,
//! and assemble the symplectic diagonalizer
//!
//! ```text
//! S = [W₁ S̃₁ W₂ S̃₂],   SᵀAS = diag(D, D),
//! ```
//!
//! where `W = [W₁ W₂]` is a symplectic basis of the kernel and `S̃` comes
//! from scaling the permuted Schur basis by `D̃^{−1/2}`. The dⱼ — zeros
//! included — are the symplectic eigenvalues of `A`. Matrices whose kernel
//! is isotropic or mixed-degenerate have no such form and are rejected.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::eigen::{spsd_sqrt, sym_eig};
use crate::error::{Error, Result};
use crate::matrix::{vec_dot, vec_norm, DenseMatrix};
use crate::symplectic::{is_symplectic, kernel_report, KernelClassification, SymplecticForm};

/// Real Schur form of a skew-symmetric matrix: `QᵀKQ` is block diagonal
/// with zero blocks first, then `[[0, dⱼ], [−dⱼ, 0]]` with `dⱼ` ascending.
#[derive(Debug, Clone)]
pub struct SkewSchurForm {
    /// Orthogonal transformation.
    pub q: DenseMatrix,
    /// One value per 2×2 block: `(0, …, 0, d_{m+1}, …, dₙ)`.
    pub block_values: Vec<f64>,
}

/// Williamson decomposition `SᵀAS = diag(D, D)` of an spsd matrix.
#[derive(Debug, Clone)]
pub struct WilliamsonDecomposition {
    /// Symplectic diagonalizer, columns ordered `[W₁ S̃₁ W₂ S̃₂]`.
    pub s: DenseMatrix,
    /// Symplectic eigenvalues `d₁ ≤ … ≤ dₙ` with `d₁ = … = d_m = 0`.
    pub d: Vec<f64>,
    /// Multiplicity of the zero symplectic eigenvalue (`dim ker A = 2m`).
    /// `m = n` is the fully degenerate case `A = 0`.
    pub m: usize,
    /// `‖SᵀAS − diag(D, D)‖_F`.
    pub residual_diag: f64,
    /// `‖SᵀJS − J‖_F`.
    pub residual_sympl: f64,
}

/// Residuals of the defining relations `Auⱼ = dⱼJvⱼ`, `Avⱼ = −dⱼJuⱼ` for
/// the eigenvector pairs carried by the columns of `S`.
#[derive(Debug, Clone)]
pub struct EigenpairCheck {
    /// Per-pair residual `‖Auⱼ − dⱼJvⱼ‖ + ‖Avⱼ + dⱼJuⱼ‖`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// `max_residual ≤ tol·(1 + ‖A‖_F)`.
    pub pass: bool,
}

/// The skew core `K = A¹ᐟ²·J₂ₙ·A¹ᐟ²`.
///
/// When `ker A` is symplectic, `ker K = ker A¹ᐟ²`, so `K` keeps exactly the
/// rank of `A`; this is what makes the Schur-based construction work.
pub fn skew_core(a: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    if a.rows() % 2 != 0 {
        return Err(Error::OddDimensions {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows() / 2;
    let root = spsd_sqrt(a, tol)?;
    if n == 0 {
        return Ok(root);
    }
    let form = SymplecticForm::standard(n)?;
    let k = root.matmul(&form.apply(&root));
    // (A¹ᐟ²JA¹ᐟ²)ᵀ = −A¹ᐟ²JA¹ᐟ² exactly; strip the roundoff part.
    Ok(skew_part(&k))
}

fn skew_part(k: &DenseMatrix) -> DenseMatrix {
    let n = k.rows();
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = 0.5 * (k[(i, j)] - k[(j, i)]);
            out[(i, j)] = x;
            out[(j, i)] = -x;
        }
    }
    out
}

/// Real Schur form of a skew-symmetric matrix.
///
/// Computed through the crate's one eigensolver: the eigenvalues of the
/// symmetric psd matrix `KᵀK = −K²` are the `dⱼ²` in pairs. Each nonzero
/// block takes a unit eigenvector `q` and its normalized image `−Kq/dⱼ`;
/// eigenvectors already covered by an accepted block project to nothing and
/// are skipped, which resolves eigenspaces of multiplicity above two. Zero
/// blocks take the kernel eigenvectors as they come.
pub fn skew_schur(k: &DenseMatrix, tol: f64) -> Result<SkewSchurForm> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.rows(),
            cols: k.cols(),
        });
    }
    if k.rows() % 2 != 0 {
        return Err(Error::OddDimensions {
            rows: k.rows(),
            cols: k.cols(),
        });
    }
    let residual = k.skew_residual();
    if residual > tol * (1.0 + k.frobenius_norm()) {
        return Err(Error::NotSkewSymmetric { residual });
    }
    let kk = skew_part(k);
    let dim = kk.rows();
    let n = dim / 2;

    let msym = kk.transpose().matmul(&kk);
    let eig = sym_eig(&msym, tol)?;
    let sv: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&mu| mu.max(0.0).sqrt())
        .collect();
    let sv_max = sv.last().copied().unwrap_or(0.0);
    // Singular values obtained through KᵀK carry a √eps·d_max noise floor;
    // the zero cutoff must sit above it or kernel noise counts as rank.
    let cutoff = (tol * sv_max.max(1.0)).max(1e-7 * sv_max);

    let mut zeros = sv.iter().filter(|&&d| d <= cutoff).count();
    // A skew matrix has even rank; absorb a borderline direction if the
    // cutoff split an eigenvalue pair.
    if (dim - zeros) % 2 != 0 {
        zeros += 1;
    }

    let mut accepted: Vec<Vec<f64>> = (0..zeros).map(|j| eig.vectors.column(j)).collect();
    let mut pairs: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    let target = (dim - zeros) / 2;

    for &skip in &[0.5_f64, 1e-8] {
        for idx in zeros..dim {
            if pairs.len() == target {
                break;
            }
            let mut q = eig.vectors.column(idx);
            for _ in 0..2 {
                for b in &accepted {
                    let c = vec_dot(b, &q);
                    for (x, &bb) in q.iter_mut().zip(b) {
                        *x -= c * bb;
                    }
                }
            }
            let norm = vec_norm(&q);
            if norm <= skip {
                continue;
            }
            for x in q.iter_mut() {
                *x /= norm;
            }
            let image = kk.matvec(&q);
            let d = vec_norm(&image);
            let mut p: Vec<f64> = image.iter().map(|x| -x / d).collect();
            // Already orthogonal to everything accepted up to roundoff;
            // one cleanup pass keeps Q orthogonal at machine level.
            for b in &accepted {
                let c = vec_dot(b, &p);
                for (x, &bb) in p.iter_mut().zip(b) {
                    *x -= c * bb;
                }
            }
            let pn = vec_norm(&p);
            for x in p.iter_mut() {
                *x /= pn;
            }
            accepted.push(q.clone());
            accepted.push(p.clone());
            pairs.push((q, p, d));
        }
        if pairs.len() == target {
            break;
        }
    }
    if pairs.len() != target {
        return Err(Error::NoConvergence { sweeps: 0 });
    }
    // Ascending d; the sort is stable so equal values keep the order in
    // which their eigenvectors were encountered.
    pairs.sort_by(|a, b| a.2.partial_cmp(&b.2).expect("finite block values"));

    let mut q = DenseMatrix::zeros(dim, dim);
    for (j, col) in accepted.iter().take(zeros).enumerate() {
        q.set_column(j, col);
    }
    let mut block_values = vec![0.0; zeros / 2];
    for (i, (qv, pv, d)) in pairs.iter().enumerate() {
        q.set_column(zeros + 2 * i, qv);
        q.set_column(zeros + 2 * i + 1, pv);
        block_values.push(*d);
    }
    debug_assert_eq!(block_values.len(), n);
    Ok(SkewSchurForm { q, block_values })
}

/// `diag(D, D)` for `D = diag(d)`.
pub fn doubled_diagonal(d: &[f64]) -> DenseMatrix {
    let n = d.len();
    let mut out = DenseMatrix::zeros(2 * n, 2 * n);
    for (i, &x) in d.iter().enumerate() {
        out[(i, i)] = x;
        out[(n + i, n + i)] = x;
    }
    out
}

/// Williamson's diagonal form of a symmetric spsd matrix whose kernel is
/// symplectic (or trivial).
///
/// Fails with [`Error::IsotropicKernel`] or [`Error::MixedDegenerateKernel`]
/// when the kernel obstructs the form, and with [`Error::NotSpsd`] /
/// [`Error::NotSymmetric`] on invalid input. Zero symplectic eigenvalues are
/// those at or below `tol·max(1, d_max)`, the same cutoff
/// [`crate::symplectic::kernel_report`] uses.
pub fn williamson(a: &DenseMatrix, tol: f64) -> Result<WilliamsonDecomposition> {
    a.require_symmetric(tol)?;
    if a.rows() % 2 != 0 || a.rows() == 0 {
        return Err(Error::OddDimensions {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows() / 2;
    let report = kernel_report(a, tol)?;
    match report.classification {
        KernelClassification::Trivial | KernelClassification::Symplectic => {}
        KernelClassification::Isotropic => return Err(Error::IsotropicKernel),
        KernelClassification::MixedDegenerate => return Err(Error::MixedDegenerateKernel),
    }
    let m = report.dim / 2;
    let w = report
        .symplectic_basis
        .expect("symplectic or trivial kernel carries a symplectic basis");

    let root = spsd_sqrt(a, tol)?;
    let form = SymplecticForm::standard(n)?;
    let core = skew_part(&root.matmul(&form.apply(&root)));
    let schur = skew_schur(&core, tol)?;
    let zero_blocks = schur
        .block_values
        .iter()
        .take_while(|&&d| d == 0.0)
        .count();
    if zero_blocks != m {
        // rank K < rank A signals a kernel that is not cleanly symplectic
        // at this tolerance.
        return Err(Error::MixedDegenerateKernel);
    }

    // T = QP with P = [e₁, e₃, …, e_{2n−1}, e₂, e₄, …, e_{2n}].
    let perm: Vec<usize> = (0..n)
        .map(|j| 2 * j)
        .chain((0..n).map(|j| 2 * j + 1))
        .collect();
    let t = schur.q.select_columns(&perm);

    // The 2n×2(n−m) scaling block carrying ±D̃^{−1/2}.
    let nm = n - m;
    let mut b = DenseMatrix::zeros(2 * n, 2 * nm);
    for i in 0..nm {
        let inv_root = 1.0 / schur.block_values[m + i].sqrt();
        b[(m + i, nm + i)] = -inv_root;
        b[(n + m + i, i)] = inv_root;
    }
    let stilde = form.apply(&root.matmul(&t.matmul(&b)));

    // S = [W₁ S̃₁ W₂ S̃₂].
    let mut s = DenseMatrix::zeros(2 * n, 2 * n);
    for j in 0..m {
        s.set_column(j, &w.column(j));
        s.set_column(n + j, &w.column(m + j));
    }
    for j in 0..nm {
        s.set_column(m + j, &stilde.column(j));
        s.set_column(n + m + j, &stilde.column(nm + j));
    }

    let d = schur.block_values.clone();
    let residual_sympl = is_symplectic(&s, tol)?.residual;
    let residual_diag = s
        .transpose()
        .matmul(&a.matmul(&s))
        .sub(&doubled_diagonal(&d))
        .frobenius_norm();

    Ok(WilliamsonDecomposition {
        s,
        d,
        m,
        residual_diag,
        residual_sympl,
    })
}

/// The symplectic spectrum `d₁ ≤ … ≤ dₙ` of `A` (zeros included).
pub fn symplectic_spectrum(a: &DenseMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(williamson(a, tol)?.d)
}

/// Checks the symplectic eigenpair relations `Auⱼ = dⱼJvⱼ`,
/// `Avⱼ = −dⱼJuⱼ` for `uⱼ = S[:,j]`, `vⱼ = S[:,k+j]` with `k = d.len()`.
pub fn verify_eigenpairs(
    a: &DenseMatrix,
    s: &DenseMatrix,
    d: &[f64],
    tol: f64,
) -> Result<EigenpairCheck> {
    let k = d.len();
    if !a.is_square() || a.rows() % 2 != 0 {
        return Err(Error::ShapeMismatch {
            rows: a.rows(),
            cols: a.cols(),
            context: "verify_eigenpairs expects square 2n×2n A",
        });
    }
    let n = a.rows() / 2;
    if s.rows() != a.rows() || s.cols() != 2 * k || k == 0 || k > n {
        return Err(Error::ShapeMismatch {
            rows: s.rows(),
            cols: s.cols(),
            context: "verify_eigenpairs expects S of shape 2n×2k with k = d.len()",
        });
    }
    let form = SymplecticForm::standard(n)?;
    let mut residuals = Vec::with_capacity(k);
    for j in 0..k {
        let u = s.column(j);
        let v = s.column(k + j);
        let au = a.matvec(&u);
        let av = a.matvec(&v);
        let ju = form.apply_vec(&u);
        let jv = form.apply_vec(&v);
        let r1: f64 = au
            .iter()
            .zip(&jv)
            .map(|(x, y)| (x - d[j] * y) * (x - d[j] * y))
            .sum::<f64>()
            .sqrt();
        let r2: f64 = av
            .iter()
            .zip(&ju)
            .map(|(x, y)| (x + d[j] * y) * (x + d[j] * y))
            .sum::<f64>()
            .sqrt();
        residuals.push(r1 + r2);
    }
    let max_residual = residuals.iter().fold(0.0, |m: f64, &r| m.max(r));
    let pass = max_residual <= tol * (1.0 + a.frobenius_norm());
    Ok(EigenpairCheck {
        residuals,
        max_residual,
        pass,
    })
}

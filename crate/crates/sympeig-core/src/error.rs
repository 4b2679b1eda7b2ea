use core::fmt;

/// Errors reported by the decomposition and verification routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor was handed a NaN or infinite entry.
    NonFinite,
    /// Entry buffer length does not match `rows × cols`.
    BadLength { expected: usize, got: usize },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Operation requires even dimensions (`2n × 2k`).
    OddDimensions { rows: usize, cols: usize },
    /// Symmetry residual `‖M − Mᵀ‖_F` exceeds the tolerance.
    NotSymmetric { residual: f64 },
    /// Skew-symmetry residual `‖K + Kᵀ‖_F` exceeds the tolerance.
    NotSkewSymmetric { residual: f64 },
    /// An eigenvalue falls below `−tol·‖A‖_F`; the matrix is not
    /// positive-semidefinite at the given tolerance.
    NotSpsd { min_eigenvalue: f64 },
    /// The Jacobi iteration did not reach its convergence criterion.
    NoConvergence { sweeps: usize },
    /// Matrix shapes are incompatible for the requested operation.
    ShapeMismatch {
        rows: usize,
        cols: usize,
        context: &'static str,
    },
    /// `n = 0` has no symplectic form.
    ZeroOrder,
    /// Gram–Schmidt hit a step where no remaining vector has a nonzero
    /// symplectic product with the pivot: the spanned subspace is not
    /// symplectic.
    IsotropicInput,
    /// Input columns are linearly dependent at the working tolerance.
    RankDeficientInput,
    /// `ker A` is an isotropic subspace; no Williamson diagonal form exists.
    IsotropicKernel,
    /// `ker A` is neither symplectic nor isotropic; no Williamson diagonal
    /// form exists.
    MixedDegenerateKernel,
    /// Requested `k` outside `1 ≤ k ≤ n`.
    KOutOfRange { k: usize, n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "matrix entries must be finite"),
            Error::BadLength { expected, got } => {
                write!(f, "entry buffer has length {got}, expected {expected}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}×{cols}")
            }
            Error::OddDimensions { rows, cols } => {
                write!(f, "matrix must have even dimensions, got {rows}×{cols}")
            }
            Error::NotSymmetric { residual } => {
                write!(f, "matrix is not symmetric (residual {residual:e})")
            }
            Error::NotSkewSymmetric { residual } => {
                write!(f, "matrix is not skew-symmetric (residual {residual:e})")
            }
            Error::NotSpsd { min_eigenvalue } => write!(
                f,
                "matrix is not positive-semidefinite (eigenvalue {min_eigenvalue:e})"
            ),
            Error::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge within {sweeps} sweeps")
            }
            Error::ShapeMismatch {
                rows,
                cols,
                context,
            } => write!(f, "shape mismatch in {context}: got {rows}×{cols}"),
            Error::ZeroOrder => write!(f, "symplectic form requires n ≥ 1"),
            Error::IsotropicInput => write!(
                f,
                "subspace is not symplectic: all remaining symplectic products vanish"
            ),
            Error::RankDeficientInput => {
                write!(f, "input columns are linearly dependent at tolerance")
            }
            Error::IsotropicKernel => write!(
                f,
                "kernel is an isotropic subspace; no Williamson diagonal form exists"
            ),
            Error::MixedDegenerateKernel => write!(
                f,
                "kernel is neither symplectic nor isotropic; no Williamson diagonal form exists"
            ),
            Error::KOutOfRange { k, n } => {
                write!(f, "k = {k} outside the valid range 1..={n}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

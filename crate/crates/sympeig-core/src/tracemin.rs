//! The trace minimization identity `min tr(XᵀAX) = 2·Σ_{j≤k} dⱼ` over the
//! symplectic Stiefel manifold `Sp(2k, 2n)`, with a randomized verifier.
//!
//! The minimum is attained at the matrix made of the first `k` symplectic
//! eigenvector pairs of `A`. The verifier samples feasible points as column
//! selections of `exp(J₂ₙH)` with random symmetric `H` — a Hamiltonian
//! exponential, hence exactly symplectic up to series truncation — and
//! counts lower-bound violations. Sampling is deterministic: each sample is
//! drawn from an independent ChaCha substream keyed by `(seed, index)`, so
//! results do not depend on evaluation order.

use alloc::vec::Vec;

use num_traits::Float;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::symplectic::SymplecticForm;
use crate::williamson::williamson;
use crate::DEFAULT_TOL;

/// Truncation order of the scaled Taylor series in [`symplectic_exp`].
/// With the argument scaled below 1/8 the series remainder is ~1e-22,
/// far inside the 1e-12 symplecticity budget of the sampler.
const EXP_TAYLOR_ORDER: usize = 12;
const EXP_SCALE_LIMIT: f64 = 0.125;

/// Empirical certificate for the trace minimization theorem at order `k`.
#[derive(Debug, Clone)]
pub struct TraceMinReport {
    pub k: usize,
    /// `2·Σ_{j=1}^k dⱼ`.
    pub bound: f64,
    /// `tr(X★ᵀAX★)` at the eigenvector minimizer `X★`.
    pub minimizer_value: f64,
    /// `tr(XᵀAX)` over the sampled feasible points.
    pub samples: Vec<f64>,
    /// Samples falling below `bound − tol·(1 + |bound|)`.
    pub violations: usize,
    /// Base seed of the sampling run.
    pub seed: u64,
}

/// `2 × (sum of the k smallest symplectic eigenvalues)` — the trace lower
/// bound over `Sp(2k, 2n)`.
pub fn trace_lower_bound(a: &DenseMatrix, k: usize, tol: f64) -> Result<f64> {
    let w = williamson(a, tol)?;
    let n = w.d.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(2.0 * w.d[..k].iter().sum::<f64>())
}

/// `tr(XᵀAX)`.
pub fn trace_value(a: &DenseMatrix, x: &DenseMatrix) -> Result<f64> {
    if !a.is_square() || a.rows() != x.rows() {
        return Err(Error::ShapeMismatch {
            rows: x.rows(),
            cols: x.cols(),
            context: "trace_value expects X with as many rows as the square A",
        });
    }
    let ax = a.matmul(x);
    Ok(x.as_slice().iter().zip(ax.as_slice()).map(|(p, q)| p * q).sum())
}

/// The minimizer `X★ ∈ Sp(2k, 2n)`: the first `k` symplectic eigenvector
/// pairs `[u₁ … u_k v₁ … v_k]` of the Williamson decomposition.
pub fn minimizer(a: &DenseMatrix, k: usize, tol: f64) -> Result<DenseMatrix> {
    let w = williamson(a, tol)?;
    let n = w.d.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let idx: Vec<usize> = (0..k).chain(n..n + k).collect();
    Ok(w.s.select_columns(&idx))
}

/// The embedding `𝒳 = (1/√2)·[[S, SJᵀ], [SJᵀ, S]]` with `J = J₂ₖ`.
///
/// For symplectic `S` it satisfies the pencil constraint
/// `𝒳ᵀ𝒥𝒳 = diag(I₂ₖ, −I₂ₖ)`; for arbitrary `S` it doubles the trace:
/// `tr(𝒳ᵀ𝒜𝒳) = 2·tr(SᵀAS)`.
pub fn embed(s: &DenseMatrix, k: usize) -> Result<DenseMatrix> {
    if s.rows() % 2 != 0 || s.cols() != 2 * k || k == 0 {
        return Err(Error::ShapeMismatch {
            rows: s.rows(),
            cols: s.cols(),
            context: "embed expects S of shape 2n×2k",
        });
    }
    let two_n = s.rows();
    // SJ₂ₖᵀ column-wise: col j ↦ S·col(k+j), col k+j ↦ −S·col(j).
    let mut sjt = DenseMatrix::zeros(two_n, 2 * k);
    for j in 0..k {
        for i in 0..two_n {
            sjt[(i, j)] = s[(i, k + j)];
            sjt[(i, k + j)] = -s[(i, j)];
        }
    }
    let r = 1.0 / 2.0_f64.sqrt();
    let mut x = DenseMatrix::zeros(2 * two_n, 4 * k);
    for i in 0..two_n {
        for j in 0..2 * k {
            x[(i, j)] = r * s[(i, j)];
            x[(i, 2 * k + j)] = r * sjt[(i, j)];
            x[(two_n + i, j)] = r * sjt[(i, j)];
            x[(two_n + i, 2 * k + j)] = r * s[(i, j)];
        }
    }
    Ok(x)
}

/// `exp(J₂ₙ·H)` for symmetric `H`: the exponential of a Hamiltonian matrix,
/// which is symplectic. Scaling-and-squaring with a fixed-order Taylor
/// series.
pub fn symplectic_exp(h: &DenseMatrix) -> Result<DenseMatrix> {
    h.require_symmetric(DEFAULT_TOL)?;
    if h.rows() % 2 != 0 || h.rows() == 0 {
        return Err(Error::OddDimensions {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows() / 2;
    let form = SymplecticForm::standard(n)?;
    let g = form.apply(h);
    let norm = g.frobenius_norm();
    let squarings = if norm <= EXP_SCALE_LIMIT {
        0
    } else {
        (norm / EXP_SCALE_LIMIT).log2().ceil() as u32
    };
    let t = g.scale(0.5_f64.powi(squarings as i32));

    let mut sum = DenseMatrix::identity(2 * n);
    let mut term = DenseMatrix::identity(2 * n);
    for order in 1..=EXP_TAYLOR_ORDER {
        term = term.matmul(&t).scale(1.0 / order as f64);
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    Ok(sum)
}

/// Deterministic random element of `Sp(2k, 2n)`.
///
/// Draws symmetric `H` with entries uniform in `[−1, 1]`, scales it to
/// `‖H‖_F ≤ 1`, forms `exp(J₂ₙH)`, and keeps columns `1…k, n+1…n+k`.
/// The same seed always yields the same matrix.
pub fn random_symplectic(n: usize, k: usize, seed: u64) -> Result<DenseMatrix> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(sample_with_stream(n, k, seed, 0))
}

/// Sample for substream `(seed, stream)`; stream 0 is [`random_symplectic`].
fn sample_with_stream(n: usize, k: usize, seed: u64, stream: u64) -> DenseMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let dim = 2 * n;
    let mut h = DenseMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let x = uniform_pm1(&mut rng);
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    let norm = h.frobenius_norm();
    if norm > 1.0 {
        h = h.scale(1.0 / norm);
    }
    let e = symplectic_exp(&h).expect("H is symmetric by construction");
    let idx: Vec<usize> = (0..k).chain(n..n + k).collect();
    e.select_columns(&idx)
}

/// Uniform draw from `[−1, 1]` using the top 53 bits of the generator word.
fn uniform_pm1(rng: &mut impl RngCore) -> f64 {
    let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * unit - 1.0
}

/// Randomized check of the trace minimization theorem: computes the bound
/// and the minimizer value, then samples `num_samples` feasible points from
/// per-index substreams of `seed` and counts violations of
/// `tr(XᵀAX) ≥ bound − tol·(1 + |bound|)`.
pub fn verify_trace_theorem(
    a: &DenseMatrix,
    k: usize,
    num_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<TraceMinReport> {
    let w = williamson(a, tol)?;
    let n = w.d.len();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let bound = 2.0 * w.d[..k].iter().sum::<f64>();
    let idx: Vec<usize> = (0..k).chain(n..n + k).collect();
    let xstar = w.s.select_columns(&idx);
    let minimizer_value = trace_value(a, &xstar)?;

    let cutoff = bound - tol * (1.0 + bound.abs());
    let mut samples = Vec::with_capacity(num_samples);
    let mut violations = 0;
    for i in 0..num_samples {
        let x = sample_with_stream(n, k, seed, i as u64);
        let value = trace_value(a, &x)?;
        if value < cutoff {
            violations += 1;
        }
        samples.push(value);
    }
    Ok(TraceMinReport {
        k,
        bound,
        minimizer_value,
        samples,
        violations,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::is_symplectic;
    use crate::DEFAULT_TOL;

    #[test]
    fn lower_bound_examples() {
        for n in 1..=4 {
            let a = DenseMatrix::identity(2 * n);
            for k in 1..=n {
                let b = trace_lower_bound(&a, k, DEFAULT_TOL).unwrap();
                assert!((b - 2.0 * k as f64).abs() <= 1e-12);
            }
        }
        let b = trace_lower_bound(&DenseMatrix::diagonal(&[2.0, 1.0]), 1, DEFAULT_TOL).unwrap();
        assert!((b - 2.0 * 2.0_f64.sqrt()).abs() <= 1e-12);
        let b = trace_lower_bound(
            &DenseMatrix::diagonal(&[0.0, 3.0, 0.0, 3.0]),
            1,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(b.abs() <= 1e-12);
        assert!(matches!(
            trace_lower_bound(&DenseMatrix::identity(4), 3, DEFAULT_TOL),
            Err(Error::KOutOfRange { .. })
        ));
    }

    #[test]
    fn trace_value_examples() {
        // Canonical columns (e₁…e_k, e_{n+1}…e_{n+k}) of the identity.
        let (n, k) = (3, 2);
        let idx: Vec<usize> = (0..k).chain(n..n + k).collect();
        let x = DenseMatrix::identity(2 * n).select_columns(&idx);
        let a = DenseMatrix::identity(2 * n);
        assert_eq!(trace_value(&a, &x).unwrap(), 2.0 * k as f64);

        let a = DenseMatrix::diagonal(&[2.0, 1.0]);
        assert_eq!(trace_value(&a, &DenseMatrix::identity(2)).unwrap(), 3.0);
        let scaled = DenseMatrix::identity(2).scale(3.0);
        assert_eq!(trace_value(&a, &scaled).unwrap(), 9.0 * 3.0);
    }

    #[test]
    fn minimizer_attains_bound() {
        let x = minimizer(&DenseMatrix::identity(4), 1, DEFAULT_TOL).unwrap();
        let v = trace_value(&DenseMatrix::identity(4), &x).unwrap();
        assert!((v - 2.0).abs() <= 1e-10);

        let a = DenseMatrix::diagonal(&[2.0, 1.0]);
        let x = minimizer(&a, 1, DEFAULT_TOL).unwrap();
        assert!(is_symplectic(&x, 1e-9).unwrap().symplectic);
        let v = trace_value(&a, &x).unwrap();
        assert!((v - 2.0 * 2.0_f64.sqrt()).abs() <= 1e-10);

        // Kernel pair: the value collapses to zero and X★ spans ker A.
        let a = DenseMatrix::diagonal(&[0.0, 3.0, 0.0, 3.0]);
        let x = minimizer(&a, 1, DEFAULT_TOL).unwrap();
        let v = trace_value(&a, &x).unwrap();
        assert!(v.abs() <= 1e-10);
        assert!(a.matmul(&x).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn embedding_doubles_the_trace() {
        let s = DenseMatrix::identity(2);
        let x = embed(&s, 1).unwrap();
        let a = DenseMatrix::identity(2);
        let mut cal_a = DenseMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                cal_a[(i, j)] = a[(i, j)];
                cal_a[(2 + i, 2 + j)] = a[(i, j)];
            }
        }
        assert!((trace_value(&cal_a, &x).unwrap() - 4.0).abs() <= 1e-14);
    }

    #[test]
    fn embedding_constraint_for_symplectic_input() {
        let (n, k) = (3, 2);
        let s = random_symplectic(n, k, 7).unwrap();
        let x = embed(&s, k).unwrap();
        let cal_j = crate::pencil::build_pencil(&DenseMatrix::identity(2 * n))
            .unwrap()
            .cal_j;
        let gram = x.transpose().matmul(&cal_j.matmul(&x));
        let mut expect = DenseMatrix::zeros(4 * k, 4 * k);
        for i in 0..2 * k {
            expect[(i, i)] = 1.0;
            expect[(2 * k + i, 2 * k + i)] = -1.0;
        }
        assert!(gram.sub(&expect).frobenius_norm() <= 1e-10);

        // The zero matrix is detected as infeasible.
        let zero = DenseMatrix::zeros(2 * n, 2 * k);
        let x = embed(&zero, k).unwrap();
        assert_eq!(x.frobenius_norm(), 0.0);
        let gram = x.transpose().matmul(&cal_j.matmul(&x));
        assert!(gram.sub(&expect).frobenius_norm() > 1.0);
    }

    #[test]
    fn exponential_of_zero_is_identity() {
        let e = symplectic_exp(&DenseMatrix::zeros(4, 4)).unwrap();
        assert_eq!(e, DenseMatrix::identity(4));
    }

    #[test]
    fn sampler_is_symplectic_and_deterministic() {
        for seed in 0..25 {
            let s = random_symplectic(3, 2, seed).unwrap();
            assert!(is_symplectic(&s, 1e-9).unwrap().symplectic);
        }
        let a = random_symplectic(4, 4, 123).unwrap();
        let b = random_symplectic(4, 4, 123).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn theorem_verifier_identity() {
        let report = verify_trace_theorem(&DenseMatrix::identity(4), 1, 100, 0, 1e-8).unwrap();
        assert!((report.bound - 2.0).abs() <= 1e-12);
        assert!((report.minimizer_value - 2.0).abs() <= 1e-10);
        assert_eq!(report.violations, 0);
        assert_eq!(report.samples.len(), 100);
    }

    #[test]
    fn theorem_verifier_analytic_and_singular() {
        let report =
            verify_trace_theorem(&DenseMatrix::diagonal(&[2.0, 1.0]), 1, 1000, 0, 1e-8).unwrap();
        assert!((report.bound - 2.0 * 2.0_f64.sqrt()).abs() <= 1e-12);
        assert_eq!(report.violations, 0);

        let a = DenseMatrix::diagonal(&[0.0, 3.0, 0.0, 3.0]);
        let report = verify_trace_theorem(&a, 2, 200, 1, 1e-8).unwrap();
        assert!((report.bound - 6.0).abs() <= 1e-10);
        assert_eq!(report.violations, 0);
        assert!(report.minimizer_value <= report.samples.iter().fold(f64::INFINITY, |m, &x| m.min(x)) + 1e-8);
    }
}

//! Dense symmetric eigensolvers (faer, single-threaded for reproducibility) and a
//! matrix-free Lanczos ground-state solver.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::diag::Diag;
use faer::{Mat, MatRef, Par};
use num_complex::Complex64;

use crate::{Error, Result};

/// Eigenvalues in ascending order with eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigen<T> {
    pub values: Vec<f64>,
    /// Column-major: vector `j` is `vectors[j * dim..(j + 1) * dim]`.
    pub vectors: Vec<T>,
    pub dim: usize,
}

impl<T> Eigen<T> {
    pub fn vector(&self, j: usize) -> &[T] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}

fn evd_seq<T: faer::traits::ComplexField>(a: MatRef<'_, T>) -> Result<(Diag<T>, Mat<T>)> {
    let n = a.nrows();
    let mut u = Mat::<T>::zeros(n, n);
    let mut s = Diag::<T>::zeros(n);
    let scratch = evd::self_adjoint_evd_scratch::<T>(n, ComputeEigenvectors::Yes, Par::Seq, Default::default());
    let res = evd::self_adjoint_evd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(scratch)),
        Default::default(),
    )
    .map_err(|_| Error::EigenFailure);
    clear_upper_vector_state();
    res?;
    Ok((s, u))
}

/// faer's x86 kernels can return with the upper halves of the vector registers dirty.
/// Legacy-SSE code later run on the same thread (libm `exp` in particular) is then
/// roughly twenty times slower, so every faer call here is followed by this.
#[inline]
fn clear_upper_vector_state() {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx") {
        // SAFETY: AVX is available, and `vzeroupper` touches only vector registers,
        // all of which are declared clobbered through the C ABI.
        unsafe { std::arch::asm!("vzeroupper", clobber_abi("C"), options(nomem, nostack, preserves_flags)) };
    }
}

/// Full eigendecomposition of a real symmetric row-major matrix (lower triangle read).
pub fn eigh_real(matrix: &[f64], dim: usize) -> Result<Eigen<f64>> {
    assert_eq!(matrix.len(), dim * dim);
    let a = Mat::<f64>::from_fn(dim, dim, |i, j| matrix[i * dim + j]);
    let (s, u) = evd_seq(a.as_ref())?;
    let values = (0..dim).map(|i| s[i]).collect();
    let mut vectors = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        vectors.extend((0..dim).map(|i| u[(i, j)]));
    }
    Ok(Eigen { values, vectors, dim })
}

/// Full eigendecomposition of a complex Hermitian row-major matrix.
pub fn eigh_hermitian(matrix: &[Complex64], dim: usize) -> Result<Eigen<Complex64>> {
    assert_eq!(matrix.len(), dim * dim);
    let a = Mat::<Complex64>::from_fn(dim, dim, |i, j| matrix[i * dim + j]);
    let (s, u) = evd_seq(a.as_ref())?;
    let values = (0..dim).map(|i| s[i].re).collect();
    let mut vectors = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        vectors.extend((0..dim).map(|i| u[(i, j)]));
    }
    Ok(Eigen { values, vectors, dim })
}

/// Row-major product of two square complex matrices.
pub fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let lhs = Mat::<Complex64>::from_fn(dim, dim, |i, j| a[i * dim + j]);
    let rhs = Mat::<Complex64>::from_fn(dim, dim, |i, j| b[i * dim + j]);
    let mut out = Mat::<Complex64>::zeros(dim, dim);
    faer::linalg::matmul::matmul(&mut out, faer::Accum::Replace, &lhs, &rhs, Complex64::new(1.0, 0.0), Par::Seq);
    clear_upper_vector_state();
    let mut flat = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        flat.extend((0..dim).map(|j| out[(i, j)]));
    }
    flat
}

/// `U† A U` for the eigenvector matrix of `eig` and a row-major `A`, row-major result.
pub fn to_eigenbasis(eig: &Eigen<Complex64>, a: &[Complex64]) -> Vec<Complex64> {
    let dim = eig.dim;
    let u = Mat::<Complex64>::from_fn(dim, dim, |i, j| eig.vectors[j * dim + i]);
    let a = Mat::<Complex64>::from_fn(dim, dim, |i, j| a[i * dim + j]);
    let one = Complex64::new(1.0, 0.0);
    let mut au = Mat::<Complex64>::zeros(dim, dim);
    faer::linalg::matmul::matmul(&mut au, faer::Accum::Replace, &a, &u, one, Par::Seq);
    let mut out = Mat::<Complex64>::zeros(dim, dim);
    faer::linalg::matmul::matmul(&mut out, faer::Accum::Replace, u.adjoint(), &au, one, Par::Seq);
    clear_upper_vector_state();
    let mut flat = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        flat.extend((0..dim).map(|j| out[(i, j)]));
    }
    flat
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    /// Cap on matrix-vector products across all restarts.
    pub max_iterations: usize,
    /// Required `‖Hx − λx‖` for the returned vector.
    pub residual_tol: f64,
    /// Krylov basis size before restarting from the current Ritz vector.
    pub krylov_dim: usize,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            residual_tol: 1e-10,
            krylov_dim: 120,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LanczosResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Lowest eigenpair of a real symmetric operator given only as `y = H x`.
///
/// Restarted Lanczos with full re-orthogonalization. The Krylov space is generated from
/// `start`, so symmetry sectors the start vector lives in are preserved.
pub fn lanczos_ground_state<F>(matvec: F, start: &[f64], opts: &LanczosOptions) -> Result<LanczosResult>
where
    F: Fn(&[f64], &mut [f64]),
{
    let dim = start.len();
    let mut x = start.to_vec();
    normalize(&mut x);
    let mut hx = vec![0.0; dim];
    let mut iterations = 0;
    let mut residual = f64::INFINITY;

    while iterations < opts.max_iterations {
        let m_max = opts.krylov_dim.min(dim).min(opts.max_iterations - iterations).max(1);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m_max);
        let mut alpha = Vec::with_capacity(m_max);
        let mut beta: Vec<f64> = Vec::with_capacity(m_max);
        basis.push(x.clone());
        let mut w = vec![0.0; dim];
        let mut ritz = (f64::NAN, vec![1.0]);

        for j in 0..m_max {
            matvec(&basis[j], &mut w);
            iterations += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            axpy(-a, &basis[j], &mut w);
            if j > 0 {
                axpy(-beta[j - 1], &basis[j - 1], &mut w);
            }
            // Two passes of Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    axpy(-c, q, &mut w);
                }
            }
            let b = norm(&w);
            let last = j + 1 == m_max;
            let breakdown = b <= 1e-13 * alpha.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            if last || breakdown || (j + 1) % 5 == 0 {
                ritz = lowest_tridiagonal(&alpha, &beta)?;
                let estimate = (b * ritz.1[j]).abs();
                if breakdown || last || estimate < 0.1 * opts.residual_tol {
                    break;
                }
            }
            beta.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }

        // Ritz vector from the current basis, then its true residual.
        let coeffs = &ritz.1;
        x.iter_mut().for_each(|v| *v = 0.0);
        for (c, q) in coeffs.iter().zip(&basis) {
            axpy(*c, q, &mut x);
        }
        normalize(&mut x);
        matvec(&x, &mut hx);
        iterations += 1;
        let value = dot(&x, &hx);
        residual = hx
            .iter()
            .zip(&x)
            .map(|(h, v)| (h - value * v).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= opts.residual_tol {
            return Ok(LanczosResult {
                value,
                vector: x,
                iterations,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations,
        residual,
    })
}

/// Lowest eigenpair of the symmetric tridiagonal matrix `(alpha, beta)`.
fn lowest_tridiagonal(alpha: &[f64], beta: &[f64]) -> Result<(f64, Vec<f64>)> {
    let m = alpha.len();
    let mut t = vec![0.0; m * m];
    for i in 0..m {
        t[i * m + i] = alpha[i];
        if i + 1 < m {
            t[i * m + i + 1] = beta[i];
            t[(i + 1) * m + i] = beta[i];
        }
    }
    let eig = eigh_real(&t, m)?;
    Ok((eig.values[0], eig.vector(0).to_vec()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

fn normalize(a: &mut [f64]) {
    let n = norm(a);
    a.iter_mut().for_each(|v| *v /= n);
}

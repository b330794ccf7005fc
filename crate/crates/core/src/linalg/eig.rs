use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol::TOL_INPUT;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the column for `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V · diag(λ) · V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            m.add_scaled_assign(Complex64::new(*lambda, 0.0), &ComplexMatrix::outer(v, v));
        }
        m
    }
}

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenSystem> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let deviation = m.hermitian_deviation();
    if deviation > TOL_INPUT {
        return Err(Error::NotHermitian { deviation });
    }
    let (values, vectors) = jacobi(symmetrized(m), true);
    let vectors = vectors.expect("vectors requested");
    let n = m.dim();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(EigenSystem {
        eigenvalues: order.iter().map(|&k| values[k]).collect(),
        eigenvectors: order
            .iter()
            .map(|&k| (0..n).map(|i| vectors[(i, k)]).collect())
            .collect(),
    })
}

/// Ascending eigenvalues of the Hermitian part of `m`, without vectors.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let (mut values, _) = jacobi(symmetrized(m), false);
    values.sort_by(f64::total_cmp);
    values
}

fn symmetrized(m: &ComplexMatrix) -> ComplexMatrix {
    m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0))
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(mut a: ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = a.dim();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let target = (1e-15 * a.frobenius_norm()).powi(2);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sqr(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b;
                // After the phase gauge the 2×2 block is real symmetric and the
                // classic real rotation zeroes it.
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = phase.conj() * (-s);
                let g_qq = phase.conj() * c;

                rotate_columns(&mut a, p, q, g_pp, g_pq, g_qp, g_qq);
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = g_pp.conj() * apj + g_qp.conj() * aqj;
                    a[(q, j)] = g_pq.conj() * apj + g_qq.conj() * aqj;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                if let Some(v) = v.as_mut() {
                    rotate_columns(v, p, q, g_pp, g_pq, g_qp, g_qq);
                }
            }
        }
    }
    (a.diagonal_real(), v)
}

#[inline]
fn rotate_columns(
    m: &mut ComplexMatrix,
    p: usize,
    q: usize,
    g_pp: Complex64,
    g_pq: Complex64,
    g_qp: Complex64,
    g_qq: Complex64,
) {
    for i in 0..m.dim() {
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        if mip.re == 0.0 && mip.im == 0.0 && miq.re == 0.0 && miq.im == 0.0 {
            continue;
        }
        m[(i, p)] = mip * g_pp + miq * g_qp;
        m[(i, q)] = mip * g_pq + miq * g_qq;
    }
}

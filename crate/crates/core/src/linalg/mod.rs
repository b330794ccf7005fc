//! Dense complex linear algebra sized for the atom–field problem
//! (2×2 up to a few hundred).

mod eig;
mod expm;
mod matrix;

pub use eig::{hermitian_eig, hermitian_eigenvalues, EigenSystem};
pub use expm::matrix_exp_series;
pub use matrix::ComplexMatrix;

use crate::error::{Error, Result};

/// Kronecker product `A ⊗ B`; `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Traces out the field factor of an operator on atom ⊗ field (atom-major
/// ordering), returning the 2×2 atomic operator.
pub fn partial_trace_field(m: &ComplexMatrix, field_dim: usize) -> Result<ComplexMatrix> {
    if field_dim == 0 || m.dim() != 2 * field_dim {
        return Err(Error::DimensionMismatch {
            expected: 2 * field_dim,
            found: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = (0..field_dim)
                .map(|n| m[(a * field_dim + n, b * field_dim + n)])
                .sum();
        }
    }
    Ok(out)
}

/// Traces out the atom factor, returning the `field_dim`-dimensional operator.
pub fn partial_trace_atom(m: &ComplexMatrix, field_dim: usize) -> Result<ComplexMatrix> {
    if field_dim == 0 || m.dim() != 2 * field_dim {
        return Err(Error::DimensionMismatch {
            expected: 2 * field_dim,
            found: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(field_dim);
    for n in 0..field_dim {
        for k in 0..field_dim {
            out[(n, k)] = m[(n, k)] + m[(field_dim + n, field_dim + k)];
        }
    }
    Ok(out)
}

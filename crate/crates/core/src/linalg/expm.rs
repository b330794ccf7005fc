use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Scaled norm bound before the Taylor series is summed.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 60;

/// `exp(scale · M)` by scaling and squaring around a truncated Taylor series.
///
/// The argument is halved `s` times until its 1-norm is at most 0.5, the
/// series is summed until the next term no longer changes the result at
/// double precision, and the result is squared `s` times.
pub fn matrix_exp_series(m: &ComplexMatrix, scale: Complex64) -> Result<ComplexMatrix> {
    if !m.is_finite() || !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.dim();
    let a = m.scale(scale);
    let norm = a.norm_1();

    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > SCALED_NORM {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let b = a.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&b * &term).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.norm_1() <= f64::EPSILON * 1e-3 * sum.norm_1() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let e = matrix_exp_series(&ComplexMatrix::zeros(3), c(0.0, -7.0)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(3));
    }

    #[test]
    fn pauli_x_rotation() {
        let x = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        for a in [0.1, 1.0, 2.5, 40.0] {
            let e = matrix_exp_series(&x, c(0.0, -a)).unwrap();
            let expected = ComplexMatrix::from_rows(&[
                vec![c(a.cos(), 0.0), c(0.0, -a.sin())],
                vec![c(0.0, -a.sin()), c(a.cos(), 0.0)],
            ]);
            assert!(e.sub(&expected).frobenius_norm() < 1e-13, "a={a}");
        }
    }

    #[test]
    fn diagonal_case() {
        let d = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-2.0, 0.5)]);
        let s = c(0.3, -1.1);
        let e = matrix_exp_series(&d, s).unwrap();
        let expected = ComplexMatrix::from_diag(&[(s * d[(0, 0)]).exp(), (s * d[(1, 1)]).exp()]);
        assert!(e.sub(&expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn hermitian_generator_gives_unitary() {
        let mut rng = StdRng::seed_from_u64(9);
        let n = 12;
        let mut h = ComplexMatrix::zeros(n);
        for i in 0..n {
            h[(i, i)] = c(rng.gen_range(-3.0..3.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        for t in [0.01, 1.0, 25.0] {
            let u = matrix_exp_series(&h, c(0.0, -t)).unwrap();
            assert!(u.unitarity_residual() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert_eq!(matrix_exp_series(&m, c(1.0, 0.0)), Err(Error::NonFinite));
    }
}

//! Dense real-symmetric matrices and their eigendecomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// A square real matrix that is exactly symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix(DMatrix<f64>);

impl DenseSymMatrix {
    /// Wraps `m`, rejecting anything that is not square or not bitwise symmetric.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        for i in 0..m.nrows() {
            for j in 0..i {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds the symmetric part `(m + m^T) / 2`.
    pub fn symmetrize(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        let n = m.nrows();
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = m[(i, i)];
            for j in 0..i {
                let v = 0.5 * (m[(i, j)] + m[(j, i)]);
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        Ok(Self(out))
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn dimension(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SymEigen {
    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let lambda = DMatrix::from_diagonal(&DVector::from_column_slice(&self.eigenvalues));
        &self.eigenvectors * lambda * self.eigenvectors.transpose()
    }
}

pub fn eig_sym(m: &DenseSymMatrix) -> Result<SymEigen> {
    if m.0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = m.dimension();
    if n == 0 {
        return Ok(SymEigen {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(m.0.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SymEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvals_sym(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    if m.0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut ev: Vec<f64> = m.0.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_diagonal() {
        let e = eig_sym(&DenseSymMatrix::identity(4)).unwrap();
        assert!(e.eigenvalues.iter().all(|&v| (v - 1.0).abs() < 1e-14));
        let e = eig_sym(&DenseSymMatrix::from_diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = DMatrix::from_fn(50, 50, |_, _| rng.gen_range(-1.0..1.0));
        let m = DenseSymMatrix::symmetrize(&a).unwrap();
        let e = eig_sym(&m).unwrap();
        let err = (e.reconstruct() - m.as_matrix()).amax();
        assert!(err <= 1e-10 * m.max_abs(), "{err}");
        let orth = (e.eigenvectors.transpose() * &e.eigenvectors - DMatrix::identity(50, 50)).amax();
        assert!(orth <= 1e-10, "{orth}");
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = e.eigenvalues.iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0));
    }

    #[test]
    fn rejects_bad_input() {
        let mut a = DMatrix::zeros(2, 2);
        a[(0, 1)] = 1.0;
        assert_eq!(DenseSymMatrix::new(a).unwrap_err(), Error::NotSymmetric { row: 1, col: 0 });
        let m = DenseSymMatrix::from_diagonal(&[1.0, f64::NAN]);
        assert_eq!(eig_sym(&m).unwrap_err(), Error::NonFinite);
        assert!(DenseSymMatrix::new(DMatrix::zeros(2, 3)).is_err());
    }
}

//! Partial transpose and negativity of bipartite real density matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{eigvals_sym, DenseSymMatrix};

/// Transposes the second tensor factor: `((a,b),(a',b')) -> ((a,b'),(a',b))`.
pub fn partial_transpose(rho: &DMatrix<f64>, dim_a: usize, dim_b: usize) -> Result<DMatrix<f64>> {
    let n = dim_a * dim_b;
    if rho.nrows() != n || rho.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: if rho.nrows() != n { rho.nrows() } else { rho.ncols() },
        });
    }
    let mut out = DMatrix::zeros(n, n);
    for a in 0..dim_a {
        for b in 0..dim_b {
            for a2 in 0..dim_a {
                for b2 in 0..dim_b {
                    out[(a * dim_b + b2, a2 * dim_b + b)] = rho[(a * dim_b + b, a2 * dim_b + b2)];
                }
            }
        }
    }
    Ok(out)
}

/// Absolute sum of the negative eigenvalues of the partial transpose.
pub fn negativity_bruteforce(rho: &DMatrix<f64>, dim_a: usize, dim_b: usize) -> Result<f64> {
    let pt = partial_transpose(rho, dim_a, dim_b)?;
    let ev = eigvals_sym(&DenseSymMatrix::symmetrize(&pt)?)?;
    Ok(-ev.iter().filter(|&&v| v < 0.0).sum::<f64>())
}

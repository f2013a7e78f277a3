//! Dense symmetric eigensolves for finite sections.

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::operator::SquareMatrix;

/// Smallest eigenvalue with its unit eigenvector and ‖(A - λI)v‖₂.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    /// spectral norm of A
    pub norm: f64,
}

fn to_faer(a: &SquareMatrix) -> Mat<f64> {
    Mat::from_fn(a.size(), a.size(), |i, j| a.get(i, j))
}

fn check_symmetric(a: &SquareMatrix) -> Result<()> {
    if a.size() == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if !a.is_symmetric() {
        return Err(Error::InvalidInput("matrix is not symmetric".into()));
    }
    Ok(())
}

fn eig_failure(e: impl std::fmt::Debug) -> Error {
    Error::NonConvergence {
        what: "symmetric eigensolver",
        detail: format!("{e:?}"),
    }
}

/// All eigenvalues in ascending order.
pub fn eigenvalues(a: &SquareMatrix) -> Result<Vec<f64>> {
    check_symmetric(a)?;
    let mut values = to_faer(a).self_adjoint_eigenvalues(Side::Lower).map_err(eig_failure)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// ‖A v - λ v‖₂.
pub fn residual_norm(a: &SquareMatrix, value: f64, vector: &[f64]) -> f64 {
    (0..a.size())
        .map(|i| {
            let av: f64 = a.row(i).iter().zip(vector).map(|(x, y)| x * y).sum();
            (av - value * vector[i]).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

/// Smallest eigenpair from a full dense decomposition.
pub fn smallest_eigenpair(a: &SquareMatrix) -> Result<ExtremalPair> {
    check_symmetric(a)?;
    let evd = to_faer(a).self_adjoint_eigen(Side::Lower).map_err(eig_failure)?;
    let s = evd.S();
    let n = a.size();
    let k = (0..n)
        .min_by(|&i, &j| s[i].total_cmp(&s[j]))
        .expect("non-empty spectrum");
    let value = s[k];
    let vector: Vec<f64> = evd.U().col(k).iter().copied().collect();
    let residual = residual_norm(a, value, &vector);
    let norm = (0..n).map(|i| s[i].abs()).fold(0.0, f64::max);
    Ok(ExtremalPair {
        value,
        vector,
        residual,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dirichlet(n: usize) -> SquareMatrix {
        let mut a = SquareMatrix::zeros(n);
        for i in 0..n {
            a.set(i, i, 2.0);
            if i + 1 < n {
                a.set(i, i + 1, -1.0);
                a.set(i + 1, i, -1.0);
            }
        }
        a
    }

    #[test]
    fn tridiagonal_spectrum() {
        let n = 120;
        let values = eigenvalues(&dirichlet(n)).unwrap();
        for (k, v) in values.iter().enumerate() {
            let exact = 2.0 - 2.0 * (PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn extremal_pair() {
        let a = dirichlet(60);
        let p = smallest_eigenpair(&a).unwrap();
        assert!((p.value - (2.0 - 2.0 * (PI / 61.0).cos())).abs() < 1e-13);
        assert!(p.residual < 1e-12);
        assert!((p.norm - (2.0 + 2.0 * (PI / 61.0).cos())).abs() < 1e-13);
        let norm: f64 = p.vector.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_symmetric() {
        let a = SquareMatrix::from_row_major(2, vec![1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(smallest_eigenpair(&a).is_err());
    }
}

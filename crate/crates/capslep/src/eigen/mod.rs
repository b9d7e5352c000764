//! Self-contained symmetric eigensolvers: implicit-shift QL for tridiagonal
//! matrices, cyclic Jacobi for dense symmetric matrices, and a double-double
//! Jacobi used as the reference for the eigenvector error analysis.

mod jacobi;
mod tridiag;

pub use jacobi::{eigh_dense, eigh_dense_dd, eigh_dense_dd_exact, DdEigenDecomposition};
pub use tridiag::eigh_tridiag;

use crate::error::{Error, Result};

/// Full symmetric eigendecomposition: values ascending, `vectors[i]` is the
/// unit eigenvector paired with `values[i]`, sign-fixed so the
/// largest-magnitude component is positive (ties broken by lowest index).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Apply the sign convention in place and sort ascending by eigenvalue.
pub(crate) fn finalize(mut values: Vec<f64>, mut vectors: Vec<Vec<f64>>) -> EigenDecomposition {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let values_sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut vectors_sorted: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| std::mem::take(&mut vectors[i]))
        .collect();
    for v in &mut vectors_sorted {
        fix_sign(v);
    }
    values.clear();
    EigenDecomposition {
        values: values_sorted,
        vectors: vectors_sorted,
    }
}

pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, &c) in v.iter().enumerate() {
        if c.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
}

/// Per-index minimal eigenvalue distance: gap(λ_n) = min_{j≠n} |λ_n - λ_j|.
pub fn eigval_gap(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::domain("gap needs at least two eigenvalues"));
    }
    Ok((0..values.len())
        .map(|n| {
            values
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != n)
                .map(|(_, &v)| (values[n] - v).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Sign-ambiguity-aware eigenvector error: min(‖v - w‖, ‖v + w‖).
pub fn vector_error(v: &[f64], w: &[f64]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::domain("vector length mismatch"));
    }
    let norm = |u: &[f64]| u.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm(v) - 1.0).abs() > 1e-12 || (norm(w) - 1.0).abs() > 1e-12 {
        return Err(Error::domain("vector_error expects unit-norm inputs"));
    }
    let mut d2 = 0.0;
    let mut s2 = 0.0;
    for (a, b) in v.iter().zip(w) {
        d2 += (a - b) * (a - b);
        s2 += (a + b) * (a + b);
    }
    Ok(d2.min(s2).sqrt())
}

//! Implicit Wilkinson-shift QL iteration for symmetric tridiagonal matrices
//! with eigenvector accumulation.

use super::{finalize, EigenDecomposition};
use crate::capop::TriDiagSym;
use crate::error::{Error, Result};

const MAX_ITER: usize = 30;

/// Full decomposition of a symmetric tridiagonal matrix. Deterministic for
/// identical input; fails only if an eigenvalue does not settle within the
/// iteration limit.
pub fn eigh_tridiag(t: &TriDiagSym) -> Result<EigenDecomposition> {
    let n = t.n();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    if t.diag.iter().chain(t.offdiag.iter()).any(|v| !v.is_finite()) {
        return Err(Error::domain("non-finite matrix entry"));
    }
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    // z[i][j]: i-th component of the j-th accumulated vector.
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Look for a negligible off-diagonal element.
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence {
                    sweeps: MAX_ITER,
                    n,
                });
            }
            // Wilkinson shift from the leading 2x2.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // Accumulate the rotation into the vectors.
                for row in z.iter_mut() {
                    f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if r == 0.0 && m - l > 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let vectors: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| z[i][j]).collect()).collect();
    Ok(finalize(d, vectors))
}

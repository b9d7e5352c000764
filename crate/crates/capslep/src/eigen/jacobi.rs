//! Cyclic Jacobi eigensolvers for dense symmetric matrices, in working
//! precision and in double-double precision.

use super::{finalize, EigenDecomposition};
use crate::capop::{DenseSym, DenseSymDd};
use crate::dd::Dd;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 50;
const MAX_SWEEPS_DD: usize = 80;

/// Cyclic Jacobi iteration until the off-diagonal Frobenius norm falls
/// below ε times the matrix Frobenius norm.
pub fn eigh_dense(a: &DenseSym) -> Result<EigenDecomposition> {
    let n = a.n();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    let mut m: Vec<f64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("non-finite matrix entry"));
    }
    let fro: f64 = m.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut v = identity(n);
    let threshold = f64::EPSILON * fro;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = off_norm(&m, n);
        if off <= threshold || fro == 0.0 {
            let (values, vectors) = extract(&m, &v, n);
            return Ok(finalize(values, vectors));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, n, p, q, c, s);
            }
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        n,
    })
}

fn identity(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    v
}

fn off_norm(m: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += m[p * n + q] * m[p * n + q];
            }
        }
    }
    acc.sqrt()
}

fn rotate(m: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        m[k * n + p] = c * mkp - s * mkq;
        m[k * n + q] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[p * n + k];
        let mqk = m[q * n + k];
        m[p * n + k] = c * mpk - s * mqk;
        m[q * n + k] = s * mpk + c * mqk;
    }
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn extract(m: &[f64], v: &[f64], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let values = (0..n).map(|i| m[i * n + i]).collect();
    let vectors = (0..n)
        .map(|j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();
    (values, vectors)
}

/// Eigendecomposition held entirely in double-double precision.
#[derive(Debug, Clone)]
pub struct DdEigenDecomposition {
    pub values: Vec<Dd>,
    pub vectors: Vec<Vec<Dd>>,
}

impl DdEigenDecomposition {
    /// Round to working precision, keeping the ordering and sign fix.
    pub fn rounded(&self) -> EigenDecomposition {
        EigenDecomposition {
            values: self.values.iter().map(|v| v.to_f64()).collect(),
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|c| c.to_f64()).collect())
                .collect(),
        }
    }
}

/// Double-double Jacobi on a matrix given in working precision.
pub fn eigh_dense_dd(a: &DenseSym) -> Result<DdEigenDecomposition> {
    let n = a.n();
    let data = (0..n * n)
        .map(|k| Dd::from_f64(a.get(k / n, k % n)))
        .collect();
    eigh_dense_dd_exact(&DenseSymDd { n, data })
}

/// Double-double Jacobi on a matrix assembled in double-double precision.
pub fn eigh_dense_dd_exact(a: &DenseSymDd) -> Result<DdEigenDecomposition> {
    let n = a.n;
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    let mut m = a.data.clone();
    let fro = {
        let mut acc = Dd::ZERO;
        for v in &m {
            // A double-double square drops the lo*lo term and can round to a
            // tiny negative value for denormal-scale entries; take |.| so the
            // accumulated norm stays a valid sqrt argument.
            acc = acc + (*v * *v).abs();
        }
        acc.sqrt()
    };
    let mut v = vec![Dd::ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Dd::ONE;
    }
    // 2^-104 relative target for the off-diagonal mass.
    let threshold = fro * Dd::from_f64(2f64.powi(-104));

    for _ in 0..MAX_SWEEPS_DD {
        let mut off = Dd::ZERO;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off = off + (m[p * n + q] * m[p * n + q]).abs();
                }
            }
        }
        if off.sqrt() <= threshold || fro.hi == 0.0 {
            let values: Vec<Dd> = (0..n).map(|i| m[i * n + i]).collect();
            let vectors: Vec<Vec<Dd>> = (0..n)
                .map(|j| (0..n).map(|i| v[i * n + j]).collect())
                .collect();
            return Ok(sort_and_sign_dd(values, vectors));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.hi == 0.0 && apq.lo == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (Dd::from_f64(2.0) * apq);
                // For huge |theta| the discriminant theta^2 + 1 overflows;
                // fall back to the asymptotic tangent 1 / (2 theta).
                let t = if theta.hi.abs() > 1e150 {
                    (Dd::from_f64(0.5)) / theta
                } else {
                    let root = (theta * theta + Dd::ONE).sqrt();
                    if theta.hi >= 0.0 {
                        Dd::ONE / (theta + root)
                    } else {
                        -(Dd::ONE / (-theta + root))
                    }
                };
                let c = Dd::ONE / (t * t + Dd::ONE).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS_DD,
        n,
    })
}

fn sort_and_sign_dd(values: Vec<Dd>, mut vectors: Vec<Vec<Dd>>) -> DdEigenDecomposition {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values_sorted: Vec<Dd> = order.iter().map(|&i| values[i]).collect();
    let mut vectors_sorted: Vec<Vec<Dd>> = order
        .iter()
        .map(|&i| std::mem::take(&mut vectors[i]))
        .collect();
    for v in &mut vectors_sorted {
        let mut best = 0usize;
        for (i, c) in v.iter().enumerate() {
            if c.abs() > v[best].abs() {
                best = i;
            }
        }
        if v[best].hi < 0.0 {
            for c in v.iter_mut() {
                *c = -*c;
            }
        }
    }
    DdEigenDecomposition {
        values: values_sorted,
        vectors: vectors_sorted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capop::{CapProblem, DenseSym};

    #[test]
    fn identity_and_scalar() {
        let id = DenseSym::from_upper(3, |i, j| if i == j { 1.0 } else { 0.0 });
        let dec = eigh_dense(&id).unwrap();
        assert_eq!(dec.values, vec![1.0, 1.0, 1.0]);

        let one = DenseSym::from_upper(1, |_, _| 0.875);
        let dec = eigh_dense(&one).unwrap();
        assert_eq!(dec.values, vec![0.875]);
        assert_eq!(dec.vectors, vec![vec![1.0]]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = DenseSym::from_upper(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let dec = eigh_dense(&a).unwrap();
        assert!((dec.values[0] - 1.0).abs() < 1e-14);
        assert!((dec.values[1] - 3.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((dec.vectors[1][0] - s).abs() < 1e-14);
        assert!((dec.vectors[1][1] - s).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_tridiagonal_solver() {
        let cap = CapProblem::new(9, 1.0).unwrap();
        let problem = cap.order(2).unwrap();
        let j = crate::capop::assemble_j(&problem);
        let tri = super::super::eigh_tridiag(&j).unwrap();
        let dense = eigh_dense(&j.to_dense()).unwrap();
        let scale = j.max_abs();
        for (a, b) in tri.values.iter().zip(&dense.values) {
            assert!((a - b).abs() < 1e-13 * scale);
        }
        for (va, vb) in tri.vectors.iter().zip(&dense.vectors) {
            assert!(super::super::vector_error(va, vb).unwrap() < 1e-10);
        }
    }

    #[test]
    fn dd_hilbert_reference() {
        // 4x4 Hilbert matrix with entries rounded to f64; reference
        // eigenvalues of that rounded matrix computed once with 60-digit
        // arithmetic.
        let h = DenseSym::from_upper(4, |i, j| 1.0 / (i + j + 1) as f64);
        let dec = eigh_dense_dd(&h).unwrap();
        let reference: [(f64, f64); 4] = [
            (9.670230402260018e-5, -6.44103375919104e-21),
            (6.738273605760722e-3, -3.568072539699721e-20),
            (1.6914122022145003e-1, 7.264455383792075e-18),
            (1.5002142800592428e0, -3.233516644483138e-17),
        ];
        for (got, (hi, lo)) in dec.values.iter().zip(reference) {
            let want = Dd::new(hi, lo);
            let rel = ((*got - want) / want).abs().to_f64();
            assert!(rel < 1e-25, "rel err = {rel:e}");
        }
    }

    #[test]
    fn dd_self_residual_on_concentration_matrix() {
        let cap = CapProblem::new(18, std::f64::consts::FRAC_PI_3).unwrap();
        let problem = cap.order(1).unwrap();
        let kdd = crate::capop::assemble_k_dd(&problem).unwrap();
        let dec = eigh_dense_dd_exact(&kdd).unwrap();
        let n = kdd.n;
        let mut norm = Dd::ZERO;
        for v in &kdd.data {
            let a = v.abs();
            if a > norm {
                norm = a;
            }
        }
        for (lam, v) in dec.values.iter().zip(&dec.vectors) {
            for i in 0..n {
                let mut acc = Dd::ZERO;
                for j in 0..n {
                    acc = acc + kdd.get(i, j) * v[j];
                }
                let resid = (acc - *lam * v[i]).abs().to_f64();
                assert!(resid <= 1e-28 * norm.to_f64(), "residual {resid:e}");
            }
        }
    }
}

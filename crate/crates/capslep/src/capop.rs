//! Per-order concentration matrices K_m, the commuting tridiagonal matrices
//! J_m, and Shannon-number accounting for the spherical-cap problem.
//!
//! K_m has entries ∫_{cosΘ}^{1} F_lm F_l'm dx over the degree range
//! ℓ_m..L; its integrand is a polynomial of degree <= 2L, so one shared
//! (L+1)-node Gauss-Legendre rule integrates every entry exactly. J_m has
//! closed-form tridiagonal entries and commutes with K_m.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::flm;
use crate::quadrature;

/// Global problem definition: bandlimit and cap half-angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapProblem {
    pub bandlimit: u32,
    pub half_angle: f64,
}

impl CapProblem {
    pub fn new(bandlimit: u32, half_angle: f64) -> Result<Self> {
        if bandlimit < 1 {
            return Err(Error::domain("bandlimit must be >= 1"));
        }
        if !(half_angle > 0.0 && half_angle <= std::f64::consts::PI) {
            return Err(Error::domain(format!(
                "cap half-angle must lie in (0, π], got {half_angle}"
            )));
        }
        Ok(CapProblem {
            bandlimit,
            half_angle,
        })
    }

    /// Cap area 2π (1 - cosΘ).
    pub fn area(&self) -> f64 {
        2.0 * std::f64::consts::PI * (1.0 - self.half_angle.cos())
    }

    pub fn order(&self, m: i32) -> Result<FixedOrderProblem> {
        FixedOrderProblem::new(*self, m)
    }
}

/// One diagonal block of the full problem: (cap, order m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedOrderProblem {
    pub cap: CapProblem,
    pub m: i32,
}

impl FixedOrderProblem {
    pub fn new(cap: CapProblem, m: i32) -> Result<Self> {
        if m.unsigned_abs() > cap.bandlimit {
            return Err(Error::domain(format!(
                "|m| = {} exceeds the bandlimit L = {}",
                m.abs(),
                cap.bandlimit
            )));
        }
        Ok(FixedOrderProblem { cap, m })
    }

    pub fn min_degree(&self) -> u32 {
        flm::min_degree(self.m)
    }

    /// Block size L - ℓ_m + 1.
    pub fn size(&self) -> usize {
        (self.cap.bandlimit - self.min_degree() + 1) as usize
    }
}

/// Dense symmetric matrix, symmetric bitwise by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSym {
    n: usize,
    data: Vec<f64>,
}

impl DenseSym {
    /// Build from a function of the upper-triangle index pair.
    pub fn from_upper(n: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = entry(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        DenseSym { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
    }

    /// y = A x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TriDiagSym {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TriDiagSym {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn max_abs(&self) -> f64 {
        let d = self.diag.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        self.offdiag.iter().fold(d, |a, &v| a.max(v.abs()))
    }

    pub fn to_dense(&self) -> DenseSym {
        DenseSym::from_upper(self.n(), |i, j| {
            if i == j {
                self.diag[i]
            } else if j == i + 1 {
                self.offdiag[i]
            } else {
                0.0
            }
        })
    }
}

/// Dense symmetric matrix with double-double entries (reference route).
#[derive(Debug, Clone)]
pub struct DenseSymDd {
    pub n: usize,
    pub data: Vec<Dd>,
}

impl DenseSymDd {
    pub fn get(&self, i: usize, j: usize) -> Dd {
        self.data[i * self.n + j]
    }
}

/// Assemble the concentration matrix K_m with the shared (L+1)-node rule
/// mapped to [cosΘ, 1].
pub fn assemble_k(problem: &FixedOrderProblem) -> Result<DenseSym> {
    let big_l = problem.cap.bandlimit;
    let base = quadrature::gauss_legendre(big_l as usize + 1)?;
    let x_min = problem.cap.half_angle.cos();
    let rule = if x_min < 1.0 {
        quadrature::map_interval(&base, x_min, 1.0)?
    } else {
        return Err(Error::domain("degenerate cap of zero area"));
    };
    let n = problem.size();
    let mut acc = vec![0.0; n * n];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let col = flm::eval_f_column(problem.m, big_l, x)?;
        for i in 0..n {
            for j in i..n {
                acc[i * n + j] += w * col[i] * col[j];
            }
        }
    }
    Ok(DenseSym::from_upper(n, |i, j| acc[i * n + j]))
}

/// Reference assembly of K_m entirely in double-double arithmetic. The cap
/// parameter is the same double value cos(Θ) the working-precision route
/// uses, so both routes discretize the identical operator.
pub fn assemble_k_dd(problem: &FixedOrderProblem) -> Result<DenseSymDd> {
    let big_l = problem.cap.bandlimit;
    let (nodes, weights) = quadrature::gauss_legendre_dd(big_l as usize + 1)?;
    let x_min = Dd::from_f64(problem.cap.half_angle.cos());
    let scale = (Dd::ONE - x_min) / Dd::from_f64(2.0);
    let mid = (Dd::ONE + x_min) / Dd::from_f64(2.0);
    let n = problem.size();
    let mut data = vec![Dd::ZERO; n * n];
    for (&x, &w) in nodes.iter().zip(&weights) {
        let xm = mid + scale * x;
        let wm = scale * w;
        let col = flm::eval_f_column_dd(problem.m, big_l, xm);
        for i in 0..n {
            for j in i..n {
                let v = data[i * n + j] + wm * col[i] * col[j];
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
    }
    Ok(DenseSymDd { n, data })
}

///// Closed-form commuting tridiagonal matrix J_m:
/// diagonal  -l(l+1) cosΘ + m [1 - (L(L+2)+1)/(l(l+1))],
/// offdiagonal [l(l+2) - L(L+2)] ζ_{l+1,m}.
pub fn assemble_j(problem: &FixedOrderProblem) -> TriDiagSym {
    let big_l = problem.cap.bandlimit;
    let lmin = problem.min_degree();
    let cos_t = problem.cap.half_angle.cos();
    let ll2 = (big_l * (big_l + 2)) as f64;
    let m = problem.m as f64;
    let diag = (lmin..=big_l)
        .map(|l| {
            let ll1 = (l * (l + 1)) as f64;
            -ll1 * cos_t + m * (1.0 - (ll2 + 1.0) / ll1)
        })
        .collect();
    let offdiag = (lmin..big_l)
        .map(|l| ((l * (l + 2)) as f64 - ll2) * flm::zeta(l + 1, problem.m))
        .collect();
    TriDiagSym { diag, offdiag }
}

/// Independent route for J_m by quadrature of F_lm (𝒥_m F_l'm) over
/// [-1, 1], with 𝒥_m applied through the eigenvalue relation of the
/// fixed-order vector Laplacian and the derivative coupling. Verification
/// oracle for [`assemble_j`]; fills the full matrix, not just the bands.
pub fn assemble_j_by_quadrature(problem: &FixedOrderProblem) -> Result<DenseSym> {
    let big_l = problem.cap.bandlimit;
    let lmin = problem.min_degree();
    let n = problem.size();
    let m = problem.m;
    let cos_t = problem.cap.half_angle.cos();
    let ll2 = (big_l * (big_l + 2)) as f64;
    // Integrand degree <= 2L + 1, so L + 2 nodes are exact.
    let rule = quadrature::gauss_legendre(big_l as usize + 2)?;
    let mut acc = vec![0.0; n * n];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let col = flm::eval_f_column(m, big_l, x)?;
        // 𝒥_m F_l' = (cosΘ - x)(-l'(l'+1)) F_l' - (1-x²) F'_l' - L(L+2) x F_l'
        let applied: Vec<f64> = (0..n)
            .map(|jp| {
                let l = lmin + jp as u32;
                let lf = l as f64;
                let f = col[jp];
                let f_prev = if jp == 0 { 0.0 } else { col[jp - 1] };
                let deriv_combo = -lf * (x - m as f64 / (lf * lf)) * f
                    + (2.0 * lf + 1.0) * flm::zeta(l, m) * f_prev;
                (cos_t - x) * (-(lf * (lf + 1.0))) * f - deriv_combo - ll2 * x * f
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                acc[i * n + j] += w * col[i] * applied[j];
            }
        }
    }
    // Entries are mathematically symmetric; average away quadrature roundoff.
    Ok(DenseSym::from_upper(n, |i, j| {
        0.5 * (acc[i * n + j] + acc[j * n + i])
    }))
}

/// Partial Shannon number N_m = Tr K_m.
pub fn partial_shannon(problem: &FixedOrderProblem) -> Result<f64> {
    Ok(assemble_k(problem)?.trace())
}

/// Total Shannon number N = L(L+2)(1 - cosΘ)/2.
pub fn shannon(cap: &CapProblem) -> f64 {
    let ll2 = (cap.bandlimit * (cap.bandlimit + 2)) as f64;
    ll2 * (1.0 - cap.half_angle.cos()) / 2.0
}

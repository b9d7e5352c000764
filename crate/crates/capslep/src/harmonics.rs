//! Scalar spherical harmonics, tangential vector harmonics and the mixed
//! vector spherical harmonics Q±_lm.
//!
//! In the complex tangential basis τ± = (θ̂ ± iφ̂)/√2 the mixed harmonics
//! separate, Q±_lm = F_{l,±m}(cosθ) e^{imφ}/√(2π) τ±, and are locally
//! orthogonal by construction. Tangent values carry an explicit basis tag
//! because the pole values are only expressible in Cartesian components.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flm;
use crate::legendre;

pub const SQRT_TAU: f64 = 2.5066282746310002; // sqrt(2π)

/// A point on the unit sphere: colatitude θ in [0, π], azimuth φ in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::domain(format!("colatitude {theta} outside [0, π]")));
        }
        if !phi.is_finite() {
            return Err(Error::domain("azimuth must be finite"));
        }
        Ok(SpherePoint {
            theta,
            phi: phi.rem_euclid(2.0 * std::f64::consts::PI),
        })
    }

    pub fn is_pole(&self) -> bool {
        self.theta == 0.0 || self.theta == std::f64::consts::PI
    }
}

/// A tangential vector value in one of three explicit bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentValue {
    /// Components along τ+ and τ-.
    Tau { plus: Complex64, minus: Complex64 },
    /// Components along θ̂ and φ̂.
    Polar { theta: Complex64, phi: Complex64 },
    /// Cartesian components; the only representation valid at the poles.
    Cartesian {
        x: Complex64,
        y: Complex64,
        z: Complex64,
    },
}

impl TangentValue {
    pub fn zero_tau() -> Self {
        TangentValue::Tau {
            plus: Complex64::new(0.0, 0.0),
            minus: Complex64::new(0.0, 0.0),
        }
    }

    /// Unitary change to the τ± basis. Rejected for Cartesian values
    /// because the map depends on the evaluation point.
    pub fn to_tau(self) -> Result<Self> {
        match self {
            v @ TangentValue::Tau { .. } => Ok(v),
            TangentValue::Polar { theta, phi } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                Ok(TangentValue::Tau {
                    plus: s * (theta - Complex64::i() * phi),
                    minus: s * (theta + Complex64::i() * phi),
                })
            }
            TangentValue::Cartesian { .. } => Err(Error::domain(
                "Cartesian tangent values carry no polar frame; cannot convert",
            )),
        }
    }

    /// Unitary change to the (θ̂, φ̂) basis.
    pub fn to_polar(self) -> Result<Self> {
        match self {
            v @ TangentValue::Polar { .. } => Ok(v),
            TangentValue::Tau { plus, minus } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                Ok(TangentValue::Polar {
                    theta: s * (plus + minus),
                    phi: Complex64::i() * s * (plus - minus),
                })
            }
            TangentValue::Cartesian { .. } => Err(Error::domain(
                "Cartesian tangent values carry no polar frame; cannot convert",
            )),
        }
    }

    /// Squared norm, invariant under the basis changes above.
    pub fn norm_sq(&self) -> f64 {
        match self {
            TangentValue::Tau { plus, minus } => plus.norm_sqr() + minus.norm_sqr(),
            TangentValue::Polar { theta, phi } => theta.norm_sqr() + phi.norm_sqr(),
            TangentValue::Cartesian { x, y, z } => x.norm_sqr() + y.norm_sqr() + z.norm_sqr(),
        }
    }

    /// Complex dot product self* · other; both values must share a basis.
    pub fn dot(&self, other: &TangentValue) -> Result<Complex64> {
        match (self, other) {
            (
                TangentValue::Tau { plus: a, minus: b },
                TangentValue::Tau { plus: c, minus: d },
            ) => Ok(a.conj() * c + b.conj() * d),
            (
                TangentValue::Polar { theta: a, phi: b },
                TangentValue::Polar { theta: c, phi: d },
            ) => Ok(a.conj() * c + b.conj() * d),
            (
                TangentValue::Cartesian { x: a, y: b, z: c },
                TangentValue::Cartesian { x: d, y: e, z: f },
            ) => Ok(a.conj() * d + b.conj() * e + c.conj() * f),
            _ => Err(Error::domain("dot product requires matching bases")),
        }
    }
}

/// Sign tag for the mixed harmonics Q±.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauSign {
    Plus,
    Minus,
}

/// Scalar spherical harmonic Y_lm(θ, φ) = U_lm(cosθ) e^{imφ} / sqrt(2π).
pub fn eval_y(l: u32, m: i32, point: &SpherePoint) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(Error::index(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    let u = legendre::eval_u(l, m, point.theta.cos())?;
    let phase = Complex64::from_polar(1.0, m as f64 * point.phi);
    Ok(u / SQRT_TAU * phase)
}

/// Mixed vector spherical harmonic Q±_lm. Away from the poles the result is
/// in the τ basis with a single nonzero component; at the poles the closed
/// Cartesian forms are returned.
pub fn eval_q(l: u32, m: i32, sign: TauSign, point: &SpherePoint) -> Result<TangentValue> {
    let fm = match sign {
        TauSign::Plus => m,
        TauSign::Minus => -m,
    };
    if l < flm::min_degree(fm) {
        return Err(Error::index(format!(
            "Q needs l >= max(1, |m|); got l = {l}, m = {m}"
        )));
    }
    if point.is_pole() {
        return Ok(pole_value(l, m, sign, point.theta == 0.0));
    }
    let f = flm::eval_f(l, fm, point.theta.cos())?;
    let phase = Complex64::from_polar(1.0, m as f64 * point.phi);
    let comp = f / SQRT_TAU * phase;
    Ok(match sign {
        TauSign::Plus => TangentValue::Tau {
            plus: comp,
            minus: Complex64::new(0.0, 0.0),
        },
        TauSign::Minus => TangentValue::Tau {
            plus: Complex64::new(0.0, 0.0),
            minus: comp,
        },
    })
}

/// Closed-form pole values of Q±_lm in Cartesian components.
fn pole_value(l: u32, m: i32, sign: TauSign, north: bool) -> TangentValue {
    let zero = Complex64::new(0.0, 0.0);
    let c = legendre::norm_factor(l, 0) / (2.0 * std::f64::consts::PI.sqrt());
    let s = match sign {
        TauSign::Plus => 1.0,
        TauSign::Minus => -1.0,
    };
    if north {
        // Nonzero only for m = ±1 (same sign as the τ tag).
        if m as f64 == s {
            TangentValue::Cartesian {
                x: Complex64::new(c, 0.0),
                y: Complex64::new(0.0, s * c),
                z: zero,
            }
        } else {
            TangentValue::Cartesian {
                x: zero,
                y: zero,
                z: zero,
            }
        }
    } else {
        // South pole: nonzero only for m = ∓1, with the parity factor (-1)^l.
        if m as f64 == -s {
            let p = if l % 2 == 0 { 1.0 } else { -1.0 };
            TangentValue::Cartesian {
                x: Complex64::new(p * c, 0.0),
                y: Complex64::new(0.0, -s * p * c),
                z: zero,
            }
        } else {
            TangentValue::Cartesian {
                x: zero,
                y: zero,
                z: zero,
            }
        }
    }
}

/// Conventional tangential vector spherical harmonics (Y_lm, Z_lm) in the
/// polar basis, away from the poles.
pub fn eval_yz(l: u32, m: i32, point: &SpherePoint) -> Result<(TangentValue, TangentValue)> {
    if m.unsigned_abs() > l || l == 0 {
        return Err(Error::index(format!("need 1 <= |m| <= l; got l = {l}, m = {m}")));
    }
    if point.is_pole() {
        return Err(Error::domain(
            "vector harmonics are evaluated away from the poles; use eval_q there",
        ));
    }
    let x = point.theta.cos();
    let (slope, ratio) = legendre::eval_du_and_ratio(l, m, x)?;
    let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
    let phase = Complex64::from_polar(1.0, m as f64 * point.phi) / SQRT_TAU;
    let y = TangentValue::Polar {
        theta: -norm * ratio * phase,
        phi: -Complex64::i() * norm * slope * phase,
    };
    let z = TangentValue::Polar {
        theta: Complex64::i() * norm * slope * phase,
        phi: -norm * ratio * phase,
    };
    Ok((y, z))
}

/// Expansion coefficients v±_lm of a tangential field, stored per (l, m, ±).
#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub bandlimit: u32,
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
    offsets: Vec<usize>,
}

impl CoeffTable {
    fn new(bandlimit: u32) -> Self {
        let l_max = bandlimit as i32;
        let mut offsets = Vec::with_capacity((2 * l_max + 2) as usize);
        let mut total = 0usize;
        for m in -l_max..=l_max {
            offsets.push(total);
            let lmin = flm::min_degree(m);
            if lmin <= bandlimit {
                total += (bandlimit - lmin + 1) as usize;
            }
        }
        offsets.push(total);
        CoeffTable {
            bandlimit,
            plus: vec![Complex64::new(0.0, 0.0); total],
            minus: vec![Complex64::new(0.0, 0.0); total],
            offsets,
        }
    }

    fn index(&self, l: u32, m: i32) -> usize {
        let slot = (m + self.bandlimit as i32) as usize;
        self.offsets[slot] + (l - flm::min_degree(m)) as usize
    }

    pub fn get(&self, l: u32, m: i32, sign: TauSign) -> Complex64 {
        let i = self.index(l, m);
        match sign {
            TauSign::Plus => self.plus[i],
            TauSign::Minus => self.minus[i],
        }
    }

    /// Number of stored coefficients: 2 L (L + 2).
    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// Synthesize the field value at a point (away from the poles).
    pub fn synthesize(&self, point: &SpherePoint) -> Result<TangentValue> {
        let x = point.theta.cos();
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for m in -(self.bandlimit as i32)..=(self.bandlimit as i32) {
            let lmin = flm::min_degree(m);
            let col_p = flm::eval_f_column(m, self.bandlimit, x)?;
            let col_m = flm::eval_f_column(-m, self.bandlimit, x)?;
            let phase = Complex64::from_polar(1.0, m as f64 * point.phi) / SQRT_TAU;
            for (k, l) in (lmin..=self.bandlimit).enumerate() {
                let i = self.index(l, m);
                plus += self.plus[i] * col_p[k] * phase;
                minus += self.minus[i] * col_m[k] * phase;
            }
        }
        Ok(TangentValue::Tau { plus, minus })
    }
}

/// Expand a tangential field sampler into mixed-harmonic coefficients.
///
/// Product quadrature: Gauss-Legendre with L+1 nodes in cosθ and the
/// uniform 2L+2-point rule in φ, exact for fields bandlimited to L. Inputs
/// above the bandlimit alias silently.
pub fn expand_tangent_field<F>(field: F, bandlimit: u32) -> Result<CoeffTable>
where
    F: Fn(&SpherePoint) -> TangentValue,
{
    let big_l = bandlimit;
    let rule = crate::quadrature::gauss_legendre(big_l as usize + 1)?;
    let n_phi = 2 * big_l as usize + 2;
    let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut table = CoeffTable::new(big_l);

    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        let theta = x.acos();
        // F columns for every order at this node, both sign conventions.
        let cols: Vec<Vec<f64>> = (-(big_l as i32)..=big_l as i32)
            .map(|m| flm::eval_f_column(m, big_l, x))
            .collect::<Result<_>>()?;
        for j in 0..n_phi {
            let phi = w_phi * j as f64;
            let point = SpherePoint::new(theta, phi)?;
            let v = field(&point).to_tau()?;
            let (vp, vm) = match v {
                TangentValue::Tau { plus, minus } => (plus, minus),
                _ => unreachable!(),
            };
            let w = wx * w_phi;
            for m in -(big_l as i32)..=big_l as i32 {
                let lmin = flm::min_degree(m);
                let conj_phase = Complex64::from_polar(1.0, -(m as f64) * phi) / SQRT_TAU;
                let col_p = &cols[(m + big_l as i32) as usize];
                let col_m = &cols[(-m + big_l as i32) as usize];
                for (k, l) in (lmin..=big_l).enumerate() {
                    let i = table.index(l, m);
                    table.plus[i] += w * conj_phase * col_p[k] * vp;
                    table.minus[i] += w * conj_phase * col_m[k] * vm;
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn scalar_harmonic_values() {
        let p = SpherePoint::new(1.0, 2.0).unwrap();
        let y00 = eval_y(0, 0, &p).unwrap();
        assert!(close(y00, Complex64::new(0.28209479177387814, 0.0), 1e-15));

        let north = SpherePoint::new(0.0, 0.0).unwrap();
        let y10 = eval_y(1, 0, &north).unwrap();
        assert!(close(y10, Complex64::new(0.4886025119029199, 0.0), 1e-15));

        let eq = SpherePoint::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
            .unwrap();
        let y11 = eval_y(1, 1, &eq).unwrap();
        assert!(close(y11, Complex64::new(0.0, -0.3454941494713355), 1e-15));
    }

    #[test]
    fn conjugation_symmetry() {
        let p = SpherePoint::new(0.8, 2.3).unwrap();
        for &(l, m) in &[(3u32, 2i32), (5, 1), (4, 4)] {
            let a = eval_y(l, -m, &p).unwrap();
            let b = eval_y(l, m, &p).unwrap().conj();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(a, sign * b, 1e-14));
        }
    }

    #[test]
    fn q_pole_values() {
        let north = SpherePoint::new(0.0, 0.0).unwrap();
        let q = eval_q(1, 1, TauSign::Plus, &north).unwrap();
        match q {
            TangentValue::Cartesian { x, y, z } => {
                assert!(close(x, Complex64::new(0.3454941494713355, 0.0), 1e-15));
                assert!(close(y, Complex64::new(0.0, 0.3454941494713355), 1e-15));
                assert_eq!(z, Complex64::new(0.0, 0.0));
            }
            _ => panic!("expected Cartesian at pole"),
        }
        let q = eval_q(2, 0, TauSign::Plus, &north).unwrap();
        assert_eq!(q.norm_sq(), 0.0);
    }

    #[test]
    fn q_equator_value() {
        let p = SpherePoint::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        let q = eval_q(1, 1, TauSign::Plus, &p).unwrap();
        match q {
            TangentValue::Tau { plus, minus } => {
                assert!(close(plus, Complex64::new(0.24430125595145993, 0.0), 1e-14));
                assert_eq!(minus, Complex64::new(0.0, 0.0));
            }
            _ => panic!("expected tau basis"),
        }
    }

    #[test]
    fn yz_reconstruct_q() {
        // Q±_lm = (±1)^{m+1}/√2 (Y_lm ± i Z_lm)
        for &(l, m, theta, phi) in &[
            (1u32, 0i32, std::f64::consts::FRAC_PI_2, 0.0),
            (1, 1, std::f64::consts::FRAC_PI_3, 1.0),
            (2, -2, 2.0, 4.0),
            (5, 3, 1.1, 0.7),
        ] {
            let p = SpherePoint::new(theta, phi).unwrap();
            let (y, z) = eval_yz(l, m, &p).unwrap();
            let (y, z) = (y.to_tau().unwrap(), z.to_tau().unwrap());
            for (sign, s) in [(TauSign::Plus, 1.0), (TauSign::Minus, -1.0)] {
                let q = eval_q(l, m, sign, &p).unwrap().to_tau().unwrap();
                let pref = if s > 0.0 {
                    1.0
                } else if (m + 1) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let (yp, ym) = match y {
                    TangentValue::Tau { plus, minus } => (plus, minus),
                    _ => unreachable!(),
                };
                let (zp, zm) = match z {
                    TangentValue::Tau { plus, minus } => (plus, minus),
                    _ => unreachable!(),
                };
                let rp = pref / 2f64.sqrt() * (yp + s * Complex64::i() * zp);
                let rm = pref / 2f64.sqrt() * (ym + s * Complex64::i() * zm);
                let (qp, qm) = match q {
                    TangentValue::Tau { plus, minus } => (plus, minus),
                    _ => unreachable!(),
                };
                assert!(close(rp, qp, 1e-13), "l={l} m={m} plus");
                assert!(close(rm, qm, 1e-13), "l={l} m={m} minus");
            }
        }
    }

    #[test]
    fn local_orthogonality_is_structural() {
        let p = SpherePoint::new(0.9, 1.4).unwrap();
        let a = eval_q(3, 2, TauSign::Plus, &p).unwrap();
        let b = eval_q(5, 2, TauSign::Minus, &p).unwrap();
        assert_eq!(a.dot(&b).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn basis_change_unitarity() {
        let v = TangentValue::Tau {
            plus: Complex64::new(0.3, -0.4),
            minus: Complex64::new(-1.1, 0.2),
        };
        let p = v.to_polar().unwrap();
        assert!((v.norm_sq() - p.norm_sq()).abs() < 1e-14);
        let back = p.to_tau().unwrap();
        match (v, back) {
            (TangentValue::Tau { plus: a, minus: b }, TangentValue::Tau { plus: c, minus: d }) => {
                assert!(close(a, c, 1e-15));
                assert!(close(b, d, 1e-15));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn expansion_recovers_single_harmonics() {
        let table = expand_tangent_field(
            |p| eval_q(2, 1, TauSign::Plus, p).unwrap(),
            4,
        )
        .unwrap();
        assert_eq!(table.len(), 2 * 4 * 6);
        for m in -4i32..=4 {
            for l in flm::min_degree(m)..=4 {
                for sign in [TauSign::Plus, TauSign::Minus] {
                    let c = table.get(l, m, sign);
                    let want = if (l, m, sign) == (2, 1, TauSign::Plus) {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    assert!(close(c, want, 1e-12), "l={l} m={m} {sign:?}: {c}");
                }
            }
        }
    }

    #[test]
    fn expansion_is_linear() {
        let field = |p: &SpherePoint| {
            let a = eval_q(1, 0, TauSign::Plus, p).unwrap().to_tau().unwrap();
            let b = eval_q(3, 2, TauSign::Minus, p).unwrap().to_tau().unwrap();
            match (a, b) {
                (
                    TangentValue::Tau { plus: ap, minus: am },
                    TangentValue::Tau { plus: bp, minus: bm },
                ) => TangentValue::Tau {
                    plus: 0.6 * ap + Complex64::new(0.0, 0.8) * bp,
                    minus: 0.6 * am + Complex64::new(0.0, 0.8) * bm,
                },
                _ => unreachable!(),
            }
        };
        let table = expand_tangent_field(field, 4).unwrap();
        assert!(close(
            table.get(1, 0, TauSign::Plus),
            Complex64::new(0.6, 0.0),
            1e-12
        ));
        assert!(close(
            table.get(3, 2, TauSign::Minus),
            Complex64::new(0.0, 0.8),
            1e-12
        ));
        // Round trip at a few interior points.
        for &(t, f) in &[(0.7, 0.3), (1.9, 5.0)] {
            let p = SpherePoint::new(t, f).unwrap();
            let direct = field(&p);
            let synth = table.synthesize(&p).unwrap();
            match (direct, synth) {
                (
                    TangentValue::Tau { plus: a, minus: b },
                    TangentValue::Tau { plus: c, minus: d },
                ) => {
                    assert!(close(a, c, 1e-11));
                    assert!(close(b, d, 1e-11));
                }
                _ => unreachable!(),
            }
        }
    }
}

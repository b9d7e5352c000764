//! The scalar generating functions F_lm of the tangential harmonic basis.
//!
//! F_lm(x) = [sqrt(1-x²) U'_lm(x) - m U_lm(x)/sqrt(1-x²)] / sqrt(l(l+1)),
//! defined for l >= max(1, |m|). They are orthonormal over [-1, 1] for
//! fixed m and satisfy a three-term recurrence in the degree, which is the
//! evaluation route used here: closed-form seed at the minimal degree, then
//! upward recurrence.
//!
//! The seed prefactor uses the (2m-1)!! double factorial. Written with
//! (2m+1)!! instead, the seed disagrees with the definition above and with
//! the endpoint values F_l1(1) = c_l0 already for m = 1; the unit tests pin
//! the seed against an independent route through U_lm.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::legendre;

/// Minimal degree ℓ_m = max(1, |m|) for which F_lm exists.
pub fn min_degree(m: i32) -> u32 {
    m.unsigned_abs().max(1)
}

/// Three-term coupling ζ_lm = sqrt((l+1)(l-1)(l+m)(l-m) / ((2l+1)(2l-1))) / l.
pub fn zeta(l: u32, m: i32) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    (((lf + 1.0) * (lf - 1.0) * (lf + mf) * (lf - mf)) / ((2.0 * lf + 1.0) * (2.0 * lf - 1.0)))
        .sqrt()
        / lf
}

fn zeta_dd(l: u32, m: i32) -> Dd {
    let num = Dd::from_f64(((l + 1) * (l - 1)) as f64)
        * Dd::from_f64(((l as i64 + m as i64) * (l as i64 - m as i64)) as f64);
    let den = Dd::from_f64(((2 * l + 1) * (2 * l - 1)) as f64);
    (num / den).sqrt() / Dd::from_f64(l as f64)
}

fn check_indices(l: u32, m: i32) -> Result<()> {
    if l < min_degree(m) {
        return Err(Error::domain(format!(
            "F_lm needs l >= max(1, |m|); got l = {l}, m = {m}"
        )));
    }
    Ok(())
}

fn check_arg(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Endpoint values: F_lm(1) = c_l0 iff m = 1, F_lm(-1) = (-1)^{l-1} c_l0
/// iff m = -1, zero otherwise.
fn endpoint_value(l: u32, m: i32, x: f64) -> f64 {
    if x == 1.0 && m == 1 {
        legendre::norm_factor(l, 0)
    } else if x == -1.0 && m == -1 {
        let sign = if (l - 1) % 2 == 0 { 1.0 } else { -1.0 };
        sign * legendre::norm_factor(l, 0)
    } else {
        0.0
    }
}

/// Seed value F_{ℓ_m,m}(x), with the prefactor Φ_m accumulated as a
/// product of per-step ratios for overflow safety.
fn seed(m: i32, x: f64) -> f64 {
    let s2 = (1.0 - x) * (1.0 + x);
    if m == 0 {
        return 3f64.sqrt() / 2.0 * s2.sqrt();
    }
    let ma = m.unsigned_abs();
    // Φ_1 = sqrt(1/2) c_11 = sqrt(3/8)
    let mut phi = (3f64 / 8.0).sqrt();
    let s = s2.sqrt();
    for k in 2..=ma {
        let k = k as f64;
        phi *= ((k * k) / ((k + 1.0) * (k - 1.0))).sqrt() * ((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if m > 0 {
        let sign = if ma % 2 == 0 { -1.0 } else { 1.0 };
        sign * (1.0 + x) * phi
    } else {
        (1.0 - x) * phi
    }
}

/// Evaluate F_lm(x).
pub fn eval_f(l: u32, m: i32, x: f64) -> Result<f64> {
    check_indices(l, m)?;
    check_arg(x)?;
    let col = eval_f_column(m, l, x)?;
    Ok(col[(l - min_degree(m)) as usize])
}

/// Evaluate (F_{ℓ_m,m}(x), ..., F_{L,m}(x)); empty when ℓ_m > L.
pub fn eval_f_column(m: i32, max_degree: u32, x: f64) -> Result<Vec<f64>> {
    check_arg(x)?;
    let lmin = min_degree(m);
    if lmin > max_degree {
        return Ok(Vec::new());
    }
    if x.abs() == 1.0 {
        return Ok((lmin..=max_degree)
            .map(|l| endpoint_value(l, m, x))
            .collect());
    }
    let n = (max_degree - lmin + 1) as usize;
    let mut out = vec![0.0; n];
    let mut prev = 0.0; // F_{ℓ_m - 1, m} := 0 bootstraps the recurrence
    let mut curr = seed(m, x);
    out[0] = curr;
    for l in lmin..max_degree {
        let lf = l as f64;
        let shift = x - m as f64 / (lf * (lf + 1.0));
        let next = (shift * curr - zeta(l, m) * prev) / zeta(l + 1, m);
        prev = curr;
        curr = next;
        out[(l + 1 - lmin) as usize] = curr;
    }
    Ok(out)
}

/// Independent route: the singularity-free combination of four U values,
/// F_lm = -[a⁺U_{l,m+1} + a⁻U_{l,m-1} + b⁺U_{l-1,m+1} + b⁻U_{l-1,m-1}] / sqrt(l(l+1)).
pub fn eval_f_via_u(l: u32, m: i32, x: f64) -> Result<f64> {
    check_indices(l, m)?;
    check_arg(x)?;
    let u_at = |ll: u32, mm: i32| -> f64 {
        if mm.unsigned_abs() > ll {
            0.0
        } else {
            legendre::eval_u(ll, mm, x).expect("indices checked")
        }
    };
    let sum = legendre::a_coupling(l, m, true) * u_at(l, m + 1)
        + legendre::a_coupling(l, m, false) * u_at(l, m - 1)
        + legendre::b_coupling(l, m, true) * u_at(l - 1, m + 1)
        + legendre::b_coupling(l, m, false) * u_at(l - 1, m - 1);
    Ok(-sum / ((l * (l + 1)) as f64).sqrt())
}

/// (1 - x²) dF_lm/dx via the downward coupling:
/// -l (x - m/l²) F_lm + (2l+1) ζ_lm F_{l-1,m}, with F_{ℓ_m-1,m} := 0.
pub fn eval_f_deriv_combo(l: u32, m: i32, x: f64) -> Result<f64> {
    check_indices(l, m)?;
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "derivative combination needs |x| < 1, got x = {x}"
        )));
    }
    let col = eval_f_column(m, l, x)?;
    let k = (l - min_degree(m)) as usize;
    let f = col[k];
    let f_prev = if k == 0 { 0.0 } else { col[k - 1] };
    let lf = l as f64;
    Ok(-lf * (x - m as f64 / (lf * lf)) * f + (2.0 * lf + 1.0) * zeta(l, m) * f_prev)
}

/// Concentration kernel 𝒦_m(x, x') = Σ_{l=ℓ_m}^{L} F_lm(x) F_lm(x').
pub fn kernel(m: i32, max_degree: u32, x: f64, x_prime: f64) -> Result<f64> {
    let fx = eval_f_column(m, max_degree, x)?;
    let fxp = eval_f_column(m, max_degree, x_prime)?;
    Ok(fx.iter().zip(&fxp).map(|(a, b)| a * b).sum())
}

/// Double-double evaluation of the F column at an interior point. Same
/// seed-plus-recurrence route as [`eval_f_column`], carried in extended
/// precision for the reference concentration matrix.
pub fn eval_f_column_dd(m: i32, max_degree: u32, x: Dd) -> Vec<Dd> {
    let lmin = min_degree(m);
    if lmin > max_degree {
        return Vec::new();
    }
    let s2 = (Dd::ONE - x) * (Dd::ONE + x);
    let ma = m.unsigned_abs();
    let seed = if m == 0 {
        Dd::from_f64(3.0).sqrt() / Dd::from_f64(2.0) * s2.sqrt()
    } else {
        let mut phi = Dd::from_ratio(3, 8).sqrt();
        let s = s2.sqrt();
        for k in 2..=ma as i64 {
            phi = phi
                * (Dd::from_f64((k * k) as f64) / Dd::from_f64(((k + 1) * (k - 1)) as f64)).sqrt()
                * Dd::from_ratio(2 * k + 1, 2 * k).sqrt()
                * s;
        }
        if m > 0 {
            let sign = if ma % 2 == 0 { -Dd::ONE } else { Dd::ONE };
            sign * (Dd::ONE + x) * phi
        } else {
            (Dd::ONE - x) * phi
        }
    };
    let n = (max_degree - lmin + 1) as usize;
    let mut out = vec![Dd::ZERO; n];
    let mut prev = Dd::ZERO;
    let mut curr = seed;
    out[0] = curr;
    for l in lmin..max_degree {
        let shift = x - Dd::from_ratio(m as i64, (l as i64) * (l as i64 + 1));
        let next = (shift * curr - zeta_dd(l, m) * prev) / zeta_dd(l + 1, m);
        prev = curr;
        curr = next;
        out[(l + 1 - lmin) as usize] = curr;
    }
    out
}

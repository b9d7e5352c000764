//! Normalized associated Legendre functions U_lm and their coupling
//! coefficients.
//!
//! U_lm(x) := c_lm P_l^m(x) with the Condon-Shortley phase included, so
//! that ∫ U_lm U_l'm dx = δ_ll' over [-1, 1]. Evaluation seeds at the
//! sectoral value U_mm and runs the three-term recurrence upward, which is
//! stable in that direction.

use crate::error::{Error, Result};

/// Normalization factor c_lm = sqrt((2l+1)/2 * (l-m)!/(l+m)!).
///
/// Computed as an iterative product of ratios so it stays finite for
/// degrees far beyond where the factorials themselves overflow.
pub fn norm_factor(l: u32, m: i32) -> f64 {
    let m = m.unsigned_abs();
    debug_assert!(m <= l);
    let mut ratio = 1.0; // (l-m)!/(l+m)!
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    ((2 * l + 1) as f64 / 2.0 * ratio).sqrt()
}

/// Three-term coupling ξ_lm = sqrt((l+m)(l-m) / ((2l+1)(2l-1))).
pub fn xi(l: u32, m: i32) -> f64 {
    let l = l as f64;
    let m = m as f64;
    (((l + m) * (l - m)) / ((2.0 * l + 1.0) * (2.0 * l - 1.0))).sqrt()
}

/// Derivative coupling a±_lm = ± sqrt((l∓m)(l±m+1)) / 2.
pub fn a_coupling(l: u32, m: i32, plus: bool) -> f64 {
    let l = l as f64;
    let m = m as f64;
    let prod = if plus {
        (l - m) * (l + m + 1.0)
    } else {
        (l + m) * (l - m + 1.0)
    };
    if prod <= 0.0 {
        return 0.0;
    }
    let sign = if plus { 0.5 } else { -0.5 };
    sign * prod.sqrt()
}

/// Order coupling b±_lm = -sqrt((2l+1)/(2l-1)) sqrt((l∓m)(l∓m-1)) / 2.
pub fn b_coupling(l: u32, m: i32, plus: bool) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    let prod = if plus {
        (lf - mf) * (lf - mf - 1.0)
    } else {
        (lf + mf) * (lf + mf - 1.0)
    };
    if prod <= 0.0 || l == 0 {
        return 0.0;
    }
    -((2.0 * lf + 1.0) / (2.0 * lf - 1.0)).sqrt() * prod.sqrt() / 2.0
}

fn check_indices(l: u32, m: i32) -> Result<()> {
    if m.unsigned_abs() > l {
        return Err(Error::domain(format!("|m| = {} exceeds l = {l}", m.abs())));
    }
    Ok(())
}

fn check_arg(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Sectoral seed U_mm(x) = (-1)^m c_mm (2m-1)!! (1-x²)^{m/2}, m >= 0,
/// accumulated as a product of per-step factors -sqrt((2k+1)/(2k)) sqrt(1-x²)
/// so that no intermediate overflows.
fn seed_sectoral(m: u32, x: f64) -> f64 {
    let mut u = std::f64::consts::FRAC_1_SQRT_2; // U_00 = c_00
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    for k in 1..=m {
        u *= -((2 * k + 1) as f64 / (2 * k) as f64).sqrt() * s;
    }
    u
}

/// Evaluate U_lm(x).
pub fn eval_u(l: u32, m: i32, x: f64) -> Result<f64> {
    check_indices(l, m)?;
    check_arg(x)?;
    let col = eval_u_column(m, l, x)?;
    Ok(col[(l - m.unsigned_abs()) as usize])
}

/// Evaluate the column (U_{|m|,m}(x), ..., U_{L,m}(x)) in one upward sweep.
pub fn eval_u_column(m: i32, max_degree: u32, x: f64) -> Result<Vec<f64>> {
    check_indices(max_degree, m)?;
    check_arg(x)?;
    let ma = m.unsigned_abs();
    let n = (max_degree - ma + 1) as usize;
    let mut out = vec![0.0; n];

    if x.abs() == 1.0 {
        // Endpoint closed forms: zero unless m = 0.
        if m == 0 {
            for (k, slot) in out.iter_mut().enumerate() {
                let l = k as u32;
                let parity = if x < 0.0 && l % 2 == 1 { -1.0 } else { 1.0 };
                *slot = parity * norm_factor(l, 0);
            }
        }
        return Ok(out);
    }

    // Sign convention for negative orders: U_{l,-m} = (-1)^m U_{l,m}.
    let sign = if m < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
    let mut prev = 0.0; // U_{l-1,m}
    let mut curr = seed_sectoral(ma, x); // U_{l,m}, starting at l = |m|
    out[0] = sign * curr;
    for l in ma..max_degree {
        let next = (x * curr - xi(l, m.abs()) * prev) / xi(l + 1, m.abs());
        prev = curr;
        curr = next;
        out[(l + 1 - ma) as usize] = sign * curr;
    }
    Ok(out)
}

/// The two singularity-free derivative combinations at x in (-1, 1):
/// returns (-sqrt(1-x²) dU_lm/dx, m U_lm / sqrt(1-x²)), each evaluated
/// through the order-coupling recurrences rather than by division.
pub fn eval_du_and_ratio(l: u32, m: i32, x: f64) -> Result<(f64, f64)> {
    check_indices(l, m)?;
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "derivative combinations need |x| < 1, got x = {x}"
        )));
    }
    let u_at = |ll: u32, mm: i32| -> f64 {
        if mm.unsigned_abs() > ll {
            0.0
        } else {
            eval_u(ll, mm, x).expect("indices checked")
        }
    };
    let slope = a_coupling(l, m, true) * u_at(l, m + 1) + a_coupling(l, m, false) * u_at(l, m - 1);
    let ratio = if l == 0 {
        0.0
    } else {
        b_coupling(l, m, true) * u_at(l - 1, m + 1) + b_coupling(l, m, false) * u_at(l - 1, m - 1)
    };
    Ok((slope, ratio))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_3_2: f64 = 1.224744871391589;

    #[test]
    fn trivial_values() {
        assert!((eval_u(0, 0, 0.3).unwrap() - 0.7071067811865476).abs() < 1e-15);
        assert!((eval_u(2, 0, 1.0).unwrap() - (2.5f64).sqrt()).abs() < 1e-15);
        assert!((eval_u(1, 1, 0.0).unwrap() + 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn column_matches_scalar_eval() {
        let col = eval_u_column(2, 6, 0.5).unwrap();
        for (k, &v) in col.iter().enumerate() {
            let l = 2 + k as u32;
            assert_eq!(v, eval_u(l, 2, 0.5).unwrap());
        }
        let col = eval_u_column(0, 1, 0.0).unwrap();
        assert!((col[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(col[1], 0.0);
    }

    #[test]
    fn endpoint_zeros_for_nonzero_order() {
        assert_eq!(eval_u(1, 1, 1.0).unwrap(), 0.0);
        assert_eq!(eval_u_column(1, 1, 1.0).unwrap(), vec![0.0]);
        assert_eq!(eval_u(5, -3, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_order_symmetry_is_exact() {
        for &(l, m, x) in &[(3u32, 2i32, 0.4), (5, 5, -0.2), (7, 1, 0.9)] {
            let plus = eval_u(l, m, x).unwrap();
            let minus = eval_u(l, -m, x).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(minus, sign * plus);
        }
    }

    #[test]
    fn derivative_combo_m0() {
        // U_10 = sqrt(3/2) x, so -sqrt(1-x²) dU/dx = -sqrt(3/2) at x = 0.
        let (slope, ratio) = eval_du_and_ratio(1, 0, 0.0).unwrap();
        assert!((slope + SQRT_3_2).abs() < 1e-15);
        assert_eq!(ratio, 0.0);
    }

    #[test]
    fn derivative_combo_against_finite_differences() {
        let h = 1e-6;
        for &(l, m, x) in &[(1u32, 1i32, 0.0), (3, 2, 0.25), (6, -4, -0.6)] {
            let du = (eval_u(l, m, x + h).unwrap() - eval_u(l, m, x - h).unwrap()) / (2.0 * h);
            let s = (1.0 - x * x).sqrt();
            let (slope, ratio) = eval_du_and_ratio(l, m, x).unwrap();
            assert!((slope + s * du).abs() < 1e-8, "slope l={l} m={m}");
            let expect = m as f64 * eval_u(l, m, x).unwrap() / s;
            assert!((ratio - expect).abs() < 1e-12, "ratio l={l} m={m}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eval_u(1, 2, 0.0).is_err());
        assert!(eval_u(1, 0, 1.5).is_err());
        assert!(eval_du_and_ratio(1, 0, 1.0).is_err());
    }
}

//! Cross-check of the normalized Legendre evaluator against an exact
//! rational construction: Legendre polynomials from the Rodrigues formula
//! with BigRational coefficients, differentiated m times and evaluated at
//! rational abscissas. The squared normalized function
//!
//!     U_lm(x)^2 = (2l+1)/2 * (l-m)!/(l+m)! * (1-x^2)^m * (d^m P_l)(x)^2
//!
//! is an exact rational number, so the comparison admits no oracle error
//! beyond the final rational-to-double conversions.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use capslep::legendre;

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Coefficients of P_l in ascending powers, via the recurrence
/// (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}.
fn legendre_coeffs(l: u32) -> Vec<BigRational> {
    let mut prev = vec![BigRational::one()];
    if l == 0 {
        return prev;
    }
    let mut cur = vec![BigRational::zero(), BigRational::one()];
    for k in 1..l {
        let mut next = vec![BigRational::zero(); k as usize + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += rat(2 * k as i64 + 1, k as i64 + 1) * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= rat(k as i64, k as i64 + 1) * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn differentiate(coeffs: &[BigRational]) -> Vec<BigRational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| BigRational::from(BigInt::from(i as i64)) * c)
        .collect()
}

fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn factorial_ratio(l: u32, m: u32) -> BigRational {
    // (l - m)! / (l + m)!
    let mut den = BigInt::one();
    for k in (l - m + 1)..=(l + m) {
        den *= BigInt::from(k);
    }
    BigRational::new(BigInt::one(), den)
}

#[test]
fn squared_values_match_rodrigues_construction() {
    let xs = [rat(0, 1), rat(1, 3), rat(-2, 5), rat(7, 8), rat(-9, 10), rat(1, 7)];
    let mut worst = 0.0f64;
    for l in 0..=8u32 {
        let p = legendre_coeffs(l);
        let mut dm = p;
        for m in 0..=l {
            if m > 0 {
                dm = differentiate(&dm);
            }
            let norm = rat(2 * l as i64 + 1, 2) * factorial_ratio(l, m);
            for x in &xs {
                let weight = (BigRational::one() - x * x).pow(m as i32);
                let d = eval_poly(&dm, x);
                let exact = &norm * &weight * &d * &d;
                let exact_f = exact.to_f64().unwrap();
                let u = legendre::eval_u(l, m as i32, x.to_f64().unwrap()).unwrap();
                let err = (u * u - exact_f).abs() / exact_f.abs().max(1.0);
                worst = worst.max(err);
            }
        }
    }
    assert!(worst <= 1e-13, "worst squared-value defect {worst:.2e}");
}

#[test]
fn signs_match_rodrigues_construction() {
    // The Condon-Shortley convention gives sign(U_lm) = (-1)^m sign(d^m P_l).
    let xs = [rat(1, 3), rat(-2, 5), rat(7, 8), rat(-9, 10)];
    for l in 0..=8u32 {
        let p = legendre_coeffs(l);
        let mut dm = p;
        for m in 0..=l {
            if m > 0 {
                dm = differentiate(&dm);
            }
            for x in &xs {
                let d = eval_poly(&dm, x);
                if d.is_zero() {
                    continue;
                }
                let want_positive = d.is_positive() == (m % 2 == 0);
                let u = legendre::eval_u(l, m as i32, x.to_f64().unwrap()).unwrap();
                assert_eq!(
                    u > 0.0,
                    want_positive,
                    "sign mismatch at l={l} m={m} x={x}"
                );
            }
        }
    }
}

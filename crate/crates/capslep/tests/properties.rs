//! Randomized property tests for the numerical kernels.

use num_complex::Complex64;
use proptest::prelude::*;

use capslep::capop::{self, CapProblem};
use capslep::dd::Dd;
use capslep::flm;
use capslep::harmonics::TangentValue;
use capslep::legendre;

proptest! {
    /// Negating the order reuses the same code path up to (-1)^m, so the
    /// symmetry must hold bitwise.
    #[test]
    fn u_order_symmetry_is_bitwise(l in 0u32..=24, x in -1.0f64..=1.0) {
        for m in 0..=l as i32 {
            let a = legendre::eval_u(l, m, x).unwrap();
            let b = legendre::eval_u(l, -m, x).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!((sign * b).to_bits(), a.to_bits());
        }
    }

    /// The addition theorem caps each normalized value at sqrt((2l+1)/2).
    #[test]
    fn u_values_are_bounded(l in 0u32..=30, x in -1.0f64..=1.0) {
        let bound = ((2 * l + 1) as f64 / 2.0).sqrt() * (1.0 + 1e-12);
        for m in -(l as i32)..=l as i32 {
            let u = legendre::eval_u(l, m, x).unwrap();
            prop_assert!(u.abs() <= bound, "l={} m={} x={} u={}", l, m, x, u);
        }
    }

    /// Three-term recurrence residual of the order-m basis, relative to the
    /// local column scale.
    #[test]
    fn f_recurrence_residual_is_small(m in -8i32..=8, x in -0.999f64..=0.999) {
        let big_l = 16u32;
        let col = flm::eval_f_column(m, big_l, x).unwrap();
        let l0 = flm::min_degree(m);
        let scale = col.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        for (i, l) in (l0 + 2..=big_l).enumerate() {
            let lf = l as f64;
            let lhs = flm::zeta(l, m) * col[i + 2];
            let rhs = (x - m as f64 / ((lf - 1.0) * lf)) * col[i + 1]
                - flm::zeta(l - 1, m) * col[i];
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale,
                "l={} residual {:e}", l, (lhs - rhs).abs());
        }
    }

    /// The reproducing kernel is symmetric in its arguments.
    #[test]
    fn kernel_is_symmetric(m in -6i32..=6, x in -1.0f64..=1.0, y in -1.0f64..=1.0) {
        let a = flm::kernel(m, 12, x, y).unwrap();
        let b = flm::kernel(m, 12, y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1.0));
    }

    /// Double-double sums and products agree with f64 up to rounding of the
    /// inputs, and the compensation term stays below one ulp of the head.
    #[test]
    fn dd_ops_stay_normalized(a in -1e18f64..1e18, b in -1e18f64..1e18) {
        let x = Dd::from_f64(a);
        let y = Dd::from_f64(b);
        for v in [x + y, x - y, x * y] {
            if v.hi != 0.0 {
                prop_assert!(v.lo.abs() <= v.hi.abs() * f64::EPSILON,
                    "unnormalized ({:e}, {:e})", v.hi, v.lo);
            }
            prop_assert!(v.to_f64().is_finite());
        }
        let s = (x * x + y * y).sqrt();
        prop_assert!((s.to_f64() - a.hypot(b)).abs() <= 4.0 * f64::EPSILON * a.hypot(b).max(1.0));
    }

    /// tau <-> polar is a unitary change of frame: round trips are exact to
    /// rounding and the pointwise norm is preserved.
    #[test]
    fn tangent_frames_round_trip(re1 in -2.0f64..2.0, im1 in -2.0f64..2.0,
                                 re2 in -2.0f64..2.0, im2 in -2.0f64..2.0) {
        let v = TangentValue::Tau {
            plus: Complex64::new(re1, im1),
            minus: Complex64::new(re2, im2),
        };
        let p = v.to_polar().unwrap();
        prop_assert!((p.norm_sq() - v.norm_sq()).abs() <= 1e-14 * v.norm_sq().max(1.0));
        let back = p.to_tau().unwrap();
        let (TangentValue::Tau { plus: a, minus: b }, TangentValue::Tau { plus: c, minus: d }) =
            (v, back)
        else {
            unreachable!();
        };
        prop_assert!((a - c).norm() <= 1e-15 && (b - d).norm() <= 1e-15);
    }

    /// The concentration matrix is a Gram matrix: symmetric with diagonal
    /// entries in [0, 1].
    #[test]
    fn concentration_matrix_is_symmetric_gram(big_l in 1u32..=10, m in -4i32..=4,
                                              frac in 0.05f64..0.95) {
        prop_assume!(m.unsigned_abs() <= big_l);
        let cap = CapProblem::new(big_l, frac * std::f64::consts::PI).unwrap();
        let k = capop::assemble_k(&cap.order(m).unwrap()).unwrap();
        for i in 0..k.n() {
            prop_assert!(k.get(i, i) >= -1e-15 && k.get(i, i) <= 1.0 + 1e-13);
            for j in 0..k.n() {
                prop_assert!((k.get(i, j) - k.get(j, i)).abs() <= 1e-15);
            }
        }
    }
}

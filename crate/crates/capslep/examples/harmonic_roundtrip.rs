//! Analysis/synthesis round trip: sample a bandlimited tangential field,
//! expand it in the mixed vector-harmonic basis by product quadrature, and
//! synthesize it back at off-grid points.

use capslep::harmonics::{self, SpherePoint, TangentValue, TauSign};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bandlimit = 8;

    // A synthetic field: a handful of basis functions with fixed weights.
    let terms: Vec<(u32, i32, TauSign, Complex64)> = vec![
        (1, 1, TauSign::Plus, Complex64::new(1.0, 0.0)),
        (3, -2, TauSign::Plus, Complex64::new(0.5, -0.25)),
        (5, 0, TauSign::Minus, Complex64::new(0.0, 0.8)),
        (8, 4, TauSign::Minus, Complex64::new(-0.3, 0.1)),
    ];
    let field = |point: &SpherePoint| -> TangentValue {
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for &(l, m, sign, w) in &terms {
            let TangentValue::Tau { plus: qp, minus: qm } =
                harmonics::eval_q(l, m, sign, point).unwrap()
            else {
                unreachable!("off-pole values are in the tau frame");
            };
            plus += w * qp;
            minus += w * qm;
        }
        TangentValue::Tau { plus, minus }
    };

    let table = harmonics::expand_tangent_field(field, bandlimit)?;
    println!("expanded {} coefficients at L = {bandlimit}", table.len());

    let mut worst = 0.0f64;
    for &(l, m, sign, w) in &terms {
        let c = table.get(l, m, sign);
        worst = worst.max((c - w).norm());
        println!("  (l={l}, m={m:+}, {sign:?}) recovered {c:.15} vs {w}");
    }
    println!("worst coefficient error: {worst:.2e}");

    // Synthesis at points unrelated to the quadrature grid.
    let mut worst_val = 0.0f64;
    for (theta, phi) in [(0.4, 0.9), (1.3, 2.2), (2.0, 5.1), (2.9, 0.3)] {
        let point = SpherePoint::new(theta, phi)?;
        let direct = field(&point);
        let synth = table.synthesize(&point)?;
        let TangentValue::Tau { plus: a, minus: b } = direct else { unreachable!() };
        let TangentValue::Tau { plus: c, minus: d } = synth else { unreachable!() };
        worst_val = worst_val.max((a - c).norm()).max((b - d).norm());
    }
    println!("worst off-grid synthesis error: {worst_val:.2e}");
    Ok(())
}

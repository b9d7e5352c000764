//! Evaluate a concentrated tangential vector eigenfield at points on the
//! sphere, in both the rotating tau frame and the polar frame, including the
//! pole where the polar frame degenerates.

use capslep::capop::CapProblem;
use capslep::harmonics::{SpherePoint, TangentValue, TauSign};
use capslep::slepian::{self, VectorEigenfield};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = CapProblem::new(12, f64::to_radians(30.0))?;
    let sol = slepian::solve_order(&cap.order(1)?)?;
    let field = VectorEigenfield::new(&sol, 1, TauSign::Plus)?;
    println!(
        "L = 12, half-angle 30 degrees, m = 1, tau+: eta = {:.12}, realized order {}",
        sol.eta[0],
        field.realized_order()
    );

    println!("\n{:>12} {:>8}  {:>44}", "theta (deg)", "phi", "polar components (theta-hat, phi-hat)");
    for (theta_deg, phi) in [(5.0, 0.0), (15.0, 0.7), (30.0, 1.4), (60.0, 2.1), (120.0, 0.0)] {
        let point = SpherePoint::new(f64::to_radians(theta_deg), phi)?;
        let value = slepian::eval_eigenfield(&field, &point)?.to_polar()?;
        let TangentValue::Polar { theta, phi: azim } = value else {
            unreachable!();
        };
        println!(
            "{theta_deg:>12} {phi:>8.1}  ({:>9.2e} {:+.2e}i, {:>9.2e} {:+.2e}i)",
            theta.re, theta.im, azim.re, azim.im
        );
    }

    // At the pole only the Cartesian frame is meaningful; the field is
    // nonzero there exactly when the realized order is +-1.
    let pole = SpherePoint::new(0.0, 0.0)?;
    let TangentValue::Cartesian { x, y, z } = slepian::eval_eigenfield(&field, &pole)? else {
        panic!("pole evaluation must be Cartesian");
    };
    println!("\npole value: x = {x}, y = {y}, z = {z}");

    // Pointwise magnitude decays quickly outside the cap.
    let inside = slepian::eval_eigenfield(&field, &SpherePoint::new(0.3, 0.0)?)?.norm_sq();
    let outside = slepian::eval_eigenfield(&field, &SpherePoint::new(2.8, 0.0)?)?.norm_sq();
    println!("|field|^2 inside cap {inside:.3e}, near antipode {outside:.3e}");
    Ok(())
}

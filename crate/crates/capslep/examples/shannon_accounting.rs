//! Shannon number bookkeeping: the total count of well-concentrated fields,
//! its closed form, and how it splits across azimuthal orders.

use capslep::capop::{self, CapProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bandlimit = 18;
    for theta_deg in [30.0, 60.0, 90.0] {
        let cap = CapProblem::new(bandlimit, f64::to_radians(theta_deg))?;
        let n = capop::shannon(&cap);
        println!("L = {bandlimit}, cap half-angle {theta_deg} degrees:");
        println!("  Shannon number N = {n:.12}");
        // N = (dimension of one tau family) x (fractional cap area).
        println!(
            "  dimension-times-area check: {:.12}",
            bandlimit as f64 * (bandlimit + 2) as f64 * cap.area() / (4.0 * std::f64::consts::PI)
        );

        // The tangential basis couples the sign of m to the orientation of
        // the cap, so N_m and N_{-m} differ; sum both signs.
        let mut total = 0.0;
        print!("  per-order N_m:");
        for m in -(bandlimit as i32)..=bandlimit as i32 {
            let nm = capop::partial_shannon(&cap.order(m)?)?;
            total += nm;
            if m.abs() <= 2 {
                print!(" {nm:.4}");
            }
        }
        println!(" ...");
        println!("  sum over m = {total:.12} (defect {:.2e})\n", (total - n).abs());
    }
    Ok(())
}

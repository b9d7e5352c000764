//! Tabulate the two scalar basis families and check the identities that pin
//! down their normalization and phase: endpoint values, the addition
//! theorem, and the reproducing kernel.

use capslep::{flm, legendre, quadrature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Normalized associated Legendre functions.
    println!("U_lm at x = 0.5:");
    for l in 0..=4u32 {
        print!("  l = {l}:");
        for m in 0..=l as i32 {
            print!("  {:+.6}", legendre::eval_u(l, m, 0.5)?);
        }
        println!();
    }

    // The tangential-basis generating functions F_lm.
    println!("\nF_lm at x = 0.5 (defined for l >= max(1, |m|)):");
    for l in 1..=4u32 {
        print!("  l = {l}:");
        for m in -(l as i32)..=l as i32 {
            print!("  {:+.6}", flm::eval_f(l, m, 0.5)?);
        }
        println!();
    }

    // Only the m = 1 column survives at the north pole: F_l1(1) = sqrt((2l+1)/2).
    println!("\nendpoint x = 1:");
    for l in 1..=4u32 {
        let v = flm::eval_f(l, 1, 1.0)?;
        println!("  F_{l},1(1) = {v:.12}  (sqrt((2l+1)/2) = {:.12})", ((2 * l + 1) as f64 / 2.0).sqrt());
    }

    // Addition theorem: sum_m F_lm(x)^2 = (2l+1)/2, independent of x.
    let l = 7u32;
    let x = -0.321;
    let s: f64 = (-(l as i32)..=l as i32)
        .map(|m| flm::eval_f(l, m, x).map(|f| f * f))
        .sum::<Result<f64, _>>()?;
    println!("\nsum_m F_{l}m({x})^2 = {s:.12} vs (2l+1)/2 = {}", (2 * l + 1) as f64 / 2.0);

    // The kernel reproduces members of the band: integrating it against
    // F_lm returns F_lm.
    let rule = quadrature::gauss_legendre(13)?;
    let reproduced = rule.integrate(|xp| {
        flm::kernel(2, 12, 0.4, xp).unwrap() * flm::eval_f(9, 2, xp).unwrap()
    });
    let direct = flm::eval_f(9, 2, 0.4)?;
    println!("kernel reproduction of F_9,2(0.4): {reproduced:.15} vs {direct:.15}");
    Ok(())
}

//! Rank-ordered concentration spectrum: the eigenvalues of the cap
//! concentration operator plunge from near 1 to near 0 around the Shannon
//! number.

use capslep::capop::{self, CapProblem};
use capslep::slepian;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = CapProblem::new(18, f64::to_radians(40.0))?;
    let shannon = capop::shannon(&cap);

    let mut spectrum: Vec<(f64, i32, usize)> = Vec::new();
    for m in -18i32..=18 {
        let sol = slepian::solve_order(&cap.order(m)?)?;
        for (i, &eta) in sol.eta.iter().enumerate() {
            spectrum.push((eta, m, i + 1));
        }
    }
    spectrum.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    println!("L = 18, cap half-angle 40 degrees, N = {shannon:.3}");
    println!("{:>5}  {:>4}  {:>3}  {:>22}", "rank", "m", "n", "eta");
    let n_round = shannon.round() as usize;
    for (rank, (eta, m, n)) in spectrum.iter().enumerate() {
        let rank = rank + 1;
        if rank <= 5 || (rank as i64 - n_round as i64).unsigned_abs() <= 2 {
            println!("{rank:>5}  {m:>4}  {n:>3}  {eta:>22.16}");
        } else if rank == 6 {
            println!("  ...");
        }
    }

    let above_half = spectrum.iter().filter(|s| s.0 >= 0.5).count();
    println!("\neigenvalues >= 1/2: {above_half} (Shannon number {shannon:.3})");
    let sum: f64 = spectrum.iter().map(|s| s.0).sum();
    println!("sum of all eigenvalues = {sum:.12} (equals N)");
    Ok(())
}

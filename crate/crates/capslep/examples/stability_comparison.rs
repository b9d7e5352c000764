//! Why the tridiagonal commuting operator is the right thing to
//! diagonalize: eigenvectors of the dense concentration matrix lose most of
//! their digits on the degenerate tail of the spectrum, while the commuting
//! route stays at machine precision for every rank. Errors are measured
//! against an extended-precision reference.

use capslep::slepian;
use capslep::CapProblem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = CapProblem::new(18, f64::to_radians(30.0))?;
    let rows = slepian::error_analysis(&cap, 1)?;

    println!("L = 18, half-angle 30 degrees, m = 1");
    println!(
        "{:>3}  {:>10}  {:>10}  {:>12}  {:>12}",
        "n", "eta gap", "chi gap", "dense-K err", "tridiag-J err"
    );
    for r in &rows {
        println!(
            "{:>3}  {:>10.2e}  {:>10.2e}  {:>12.2e}  {:>12.2e}",
            r.n, r.gap_eta, r.gap_chi, r.err_k, r.err_j
        );
    }

    let eps = f64::EPSILON / 2.0;
    let max_k = rows.iter().map(|r| r.err_k).fold(0.0f64, f64::max);
    let max_j = rows.iter().map(|r| r.err_j).fold(0.0f64, f64::max);
    println!("\nworst dense-K error    = {:.1e} ({:.2e} eps)", max_k, max_k / eps);
    println!("worst tridiagonal error = {:.1e} ({:.1} eps)", max_j, max_j / eps);
    println!(
        "the concentration eigenvalues cluster to spacing ~{:.1e}; the dense\n\
         route cannot separate them, the commuting spectrum stays well gapped",
        rows.iter().map(|r| r.gap_eta).fold(f64::INFINITY, f64::min)
    );
    Ok(())
}

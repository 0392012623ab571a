//! Cross-checks the assignment DP against its analytic origin: the
//! norm is the supremum of an integral functional over concentrating
//! reparametrizations. Squeezing the concentration parameter eta drives
//! the integral up to the DP value from below.
//!
//! Run with `cargo run --example integral_oracle`.

use rpinorm::norms::standard_norm;
use rpinorm::oracle::{brute_force_norm, integral_norm_estimate, DEFAULT_ENUMERATION_CAP};
use rpinorm::norms::weights_of;
use rpinorm::profiles::{star_values, CriticalProfile};

fn main() -> Result<(), rpinorm::Error> {
    let phi = CriticalProfile::new(vec![0.0, 3.0, 1.0, 2.0, 0.0])?;
    let psi = CriticalProfile::new(vec![0.0, 1.0, 0.0, 1.0])?;
    let norm = standard_norm(&phi, &psi)?;
    println!("phi = {:?}, psi = {:?}", phi.values(), psi.values());
    println!("assignment DP:     N(phi, psi) = {norm}");

    // Second opinion: enumerate every nondecreasing assignment.
    let brute = brute_force_norm(
        &star_values(&phi),
        &weights_of(&psi)?,
        DEFAULT_ENUMERATION_CAP,
    )?;
    println!("brute enumeration: N(phi, psi) = {brute}");
    println!();

    // Third opinion: realize both profiles as concrete functions and
    // integrate against concentrating reparametrizations.
    let f = phi.representative(64.0)?;
    let g = psi.representative(64.0)?;
    let etas = [1.0, 0.1, 1e-2, 1e-3, 1e-4];
    let estimates = integral_norm_estimate(&f, &g, &etas)?;
    println!("integral estimates (approaching from below):");
    for (eta, estimate) in etas.iter().zip(&estimates) {
        println!("  eta = {eta:<6}  integral = {estimate:<20}  gap = {}", norm - estimate);
    }
    Ok(())
}

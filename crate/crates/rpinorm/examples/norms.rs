//! Evaluates the named norm catalog and the classic functionals on a
//! small piecewise monotone function, then shows how to bring your own
//! weight sequence.
//!
//! Run with `cargo run --example norms`.

use rpinorm::norms::{
    standard_catalog, standard_norm, standard_norm_weights, Classic, WeightSequence,
};
use rpinorm::profiles::CriticalProfile;

fn main() -> Result<(), rpinorm::Error> {
    // The function 0 -> 3 -> 1 -> 2 -> 0, recorded by its critical values.
    let phi = CriticalProfile::new(vec![0.0, 3.0, 1.0, 2.0, 0.0])?;
    println!("phi = {:?}", phi.values());
    println!();

    println!("named catalog:");
    for (name, weights) in standard_catalog() {
        let value = standard_norm_weights(&phi, &weights);
        println!("  {name:>8}  ->  {value}");
    }
    println!();

    println!("classic functionals:");
    for classic in [
        Classic::Sup,
        Classic::Range,
        Classic::Tv,
        Classic::Tail,
        Classic::Asym,
    ] {
        println!("  {:>8}  ->  {}", format!("{classic:?}"), classic.evaluate(&phi));
    }
    println!();

    // Any nonzero profile doubles as a norm: the pairing is symmetric.
    let psi = CriticalProfile::new(vec![0.0, 1.0, 0.0, 1.0])?;
    println!("[psi]-norm of phi (psi = {:?}):", psi.values());
    println!("  N(phi, psi) = {}", standard_norm(&phi, &psi)?);
    println!("  N(psi, phi) = {}", standard_norm(&psi, &phi)?);
    println!();

    // Or skip the profile and hand the weights over directly.
    let w = WeightSequence::new(vec![2.0, -1.0, 0.5])?;
    println!(
        "custom weights {:?}  ->  {}",
        w.weights(),
        standard_norm_weights(&phi, &w)
    );
    Ok(())
}

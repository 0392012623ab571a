//! Recovers a hidden function from norm queries alone. The oracle
//! answers "what is the [psi]-norm of the hidden phi?" and nothing
//! else; the pipeline finds the slope count from the S_n spectrum,
//! reads off the critical values with perturbed weights, and audits
//! the rebuilt profile.
//!
//! Run with `cargo run --example reconstruction`.

use rpinorm::reconstruct::{
    reconstruct, verify_reconstruction, ProfileOracle, ReconstructionConfig,
};
use rpinorm::profiles::CriticalProfile;

fn main() -> Result<(), rpinorm::Error> {
    let hidden = CriticalProfile::new(vec![0.0, 3.0, 1.0, 2.0, 0.0])?;
    let oracle = ProfileOracle::new(hidden.clone())?;
    let config = ReconstructionConfig::default();

    let report = reconstruct(&oracle, &config)?;
    println!("hidden profile:    {:?}", hidden.values());
    println!("recovered profile: {:?}", report.profile.values());
    println!();
    println!("detected l:        {}", report.l);
    println!("S_n spectrum seen: {:?}", report.spectrum);
    println!("slope derivatives: {:?}", report.derivatives);
    println!("oracle calls:      {}", report.oracle_calls);
    println!("probe step used:   {}", report.epsilon_used);
    println!();

    for diagnostic in &report.diagnostics {
        println!(
            "audit {}: expected {}, got {} -> {}",
            diagnostic.name,
            diagnostic.expected,
            diagnostic.actual,
            if diagnostic.pass { "pass" } else { "FAIL" }
        );
    }
    println!();

    // Norms cannot tell phi from -phi, so recovery is up to a global
    // sign; the verifier accounts for that.
    let error = verify_reconstruction(&hidden, &report.profile);
    println!("variation distance to the hidden profile (up to sign): {error}");

    let negated = CriticalProfile::new(vec![0.0, -3.0, -1.0, -2.0, 0.0])?;
    let negated_report = reconstruct(&ProfileOracle::new(negated)?, &config)?;
    println!(
        "negated input recovers the same representative: {:?}",
        negated_report.profile.values()
    );
    Ok(())
}

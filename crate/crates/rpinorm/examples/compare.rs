//! Sandwiches the natural pseudo-distance between two functions: every
//! catalog norm yields a lower bound (with the witness recorded), and
//! an explicit coupling of value stations yields an upper bound.
//!
//! Run with `cargo run --example compare`.

use rpinorm::norms::standard_catalog;
use rpinorm::profiles::{apply_reparam, canonicalize, CriticalProfile, Reparametrization};
use rpinorm::pseudodist::{npd_upper, sandwich};

fn main() -> Result<(), rpinorm::Error> {
    let catalog = standard_catalog();

    let bump3 = CriticalProfile::new(vec![0.0, 3.0, 0.0])?;
    let bump5 = CriticalProfile::new(vec![0.0, 5.0, 0.0])?;
    let result = sandwich(&bump3, &bump5, 128, &catalog)?;
    println!("bump of height 3 vs bump of height 5:");
    println!(
        "  {} <= distance <= {}   (lower bound witnessed by {})",
        result.lower,
        result.upper,
        result.witness_psi.as_deref().unwrap_or("-")
    );
    println!("  the bounds meet, so the distance is exactly {}", result.lower);
    println!();

    let phi = CriticalProfile::new(vec![0.0, 3.0, 1.0, 2.0, 0.0])?;
    let result = sandwich(&phi, &bump3, 512, &catalog)?;
    println!("phi = {:?} vs the height-3 bump:", phi.values());
    println!(
        "  {} <= distance <= {}   (witness {})",
        result.lower,
        result.upper,
        result.witness_psi.as_deref().unwrap_or("-")
    );
    println!();

    // Reparametrized copies are at distance zero; the coupling bound
    // sees that because it samples in value space.
    let f = phi.representative(1.0)?;
    let h = Reparametrization::new(vec![(0.0, 0.0), (1.0, 3.0), (4.0, 4.0)])?;
    let g = apply_reparam(&f, &h);
    let upper = npd_upper(&canonicalize(&f), &canonicalize(&g), 512)?;
    println!("phi vs phi-after-a-reparametrization: upper bound {upper}");
    Ok(())
}

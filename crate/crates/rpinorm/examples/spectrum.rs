//! Sweeps the S_n and L_n families and shows where each sequence
//! stabilizes: S_n freezes at half the total variation once n reaches
//! the slope count l, and L_n climbs to the full variation right after.
//!
//! Run with `cargo run --example spectrum`.

use rpinorm::norms::{ln_weights, sn_weights, standard_norm_weights};
use rpinorm::profiles::{l_of, total_variation, CriticalProfile};

fn main() -> Result<(), rpinorm::Error> {
    let phi = CriticalProfile::new(vec![0.0, 3.0, 1.0, 2.0, 0.0])?;
    let l = l_of(&phi);
    let v = total_variation(&phi);
    println!("phi = {:?}", phi.values());
    println!("l = {l} monotone slopes, total variation V = {v}");
    println!();

    println!("  n      S_n      L_n");
    for n in 1..=l + 3 {
        let s_n = standard_norm_weights(&phi, &sn_weights(n)?);
        let l_n = standard_norm_weights(&phi, &ln_weights(n)?);
        let marker = if n == l { "   <- S_n reaches V/2 here" } else { "" };
        println!("  {n}   {s_n:>6}   {l_n:>6}{marker}");
    }
    println!();
    println!("S_n sticks at V/2 = {} for every n >= l;", v / 2.0);
    println!("reading l off the spectrum is what makes reconstruction possible.");
    Ok(())
}

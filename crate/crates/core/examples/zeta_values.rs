//! ζ(s), ζ′(s), Z(t) and θ(t) with their reported error bounds.
//!
//! cargo run --release --example zeta_values -- 0.5 14.134725

use zeta_moments::zeta_eval::{hardy_z, log_deriv, theta, zeta, zeta_prime};
use zeta_moments::Complex64;

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let re = args.next().unwrap_or(0.5);
    let im = args.next().unwrap_or(14.134_725_141_734_69);
    let s = Complex64::new(re, im);

    let (z, acc) = zeta(s)?;
    println!("ζ({s}) = {z:.15}  (|err| ≤ {:.1e})", acc.abs_error_bound);
    let (dz, _) = zeta_prime(s)?;
    println!("ζ′({s}) = {dz:.15}");
    if let Ok((ld, _)) = log_deriv(s) {
        println!("ζ′/ζ({s}) = {ld:.12}");
    }
    if im > 0.0 {
        println!("θ({im}) = {:.15}", theta(im)?);
        println!("Z({im}) = {:.6e}", hardy_z(im)?);
    }
    Ok(())
}

//! Pair-correlation and derivative moments against their main terms.
//!
//! cargo run --release --example gonek_and_derivative -- 20000

use zeta_moments::asymptotics::{main_term_deriv, main_term_gonek};
use zeta_moments::moments::{gonek_alpha_bound, moment_deriv, moment_gonek};
use zeta_moments::zeros;

fn main() -> zeta_moments::Result<()> {
    let t_max: f64 = std::env::args().nth(1).map_or(2e4, |s| s.parse().expect("T"));
    let cache = zeros::build(t_max, 0)?;

    println!("admissible α ≤ {:.3} at T = {t_max}", gonek_alpha_bound(t_max));
    for alpha in [0.1, 0.25, 0.5] {
        match moment_gonek(alpha, t_max, &cache) {
            Ok(m) => {
                let p = main_term_gonek(alpha, t_max)?;
                println!("α = {alpha}: S = {:.6}, main term {p:.6}, ratio {:.4}", m.value.re, m.value.re / p);
            }
            Err(e) => println!("α = {alpha}: {e}"),
        }
    }
    for t in [1e3, t_max / 4.0, t_max] {
        let m = moment_deriv(t, &cache)?;
        let p = main_term_deriv(t);
        println!("Σ|ζ′(ρ)|² to T = {t}: {:.6}, (T/2π) ln⁴T / 12 = {p:.6}, ratio {:.4}", m.value.re, m.value.re / p);
    }
    Ok(())
}

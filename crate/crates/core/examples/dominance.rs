//! Where the quadratic leading term dominates Re g, and how well the small-δ
//! expansion fits.
//!
//! cargo run --release --example dominance

use std::f64::consts::PI;

use zeta_moments::asymptotics::{default_eps_grid, dominance_region, g_expansion_check};
use zeta_moments::moments::ShiftParameter;

fn main() -> zeta_moments::Result<()> {
    for t in [1e4, 1e6, 1e8, 1e12] {
        let r = dominance_region(t, &default_eps_grid())?;
        println!(
            "T = {t:e}: ε0 = {:.3}{}, floor |δ| ln T = {:.3}, ε0 without floor = {:.3}, first failure {:?}",
            r.eps0,
            if r.is_vacuous() { " (no samples inside)" } else { "" },
            r.min_scale,
            r.eps0_without_floor,
            r.first_failure
        );
        let l = t.ln();
        for scale in [1e-3, 1e-2, 0.1, 0.5, 0.99] {
            let phi = PI / 3.0;
            let d = ShiftParameter::new(scale / l * phi.cos(), scale / l * phi.sin())?;
            let e = g_expansion_check(d, t)?;
            println!(
                "  |δ| ln T = {scale}: Re g = {:.6e}, leading = {:.6e}, residual {:.3}",
                e.re_g, e.leading, e.residual
            );
        }
    }
    Ok(())
}

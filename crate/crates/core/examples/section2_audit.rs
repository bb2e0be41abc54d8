//! Step-by-step audit of the error-envelope inequalities.
//!
//! cargo run --example section2_audit

use zeta_moments::asymptotics::{
    audit_section2, default_audit_delta1_grid, default_audit_t_grid, error_envelope_exponent,
};

fn main() -> zeta_moments::Result<()> {
    let t_grid = default_audit_t_grid();
    let d_grid = default_audit_delta1_grid();
    for &t in &t_grid {
        let exps: Vec<String> = d_grid
            .iter()
            .map(|&d| {
                let (e, case) = error_envelope_exponent(d, t, 1.0).expect("in region");
                format!("{d}:{e:.4}({case:?})")
            })
            .collect();
        println!("T = {t:e}: E(T) = T^e  {}", exps.join(" "));
    }

    let r = audit_section2(&t_grid, &d_grid)?;
    println!(
        "{} steps, {} gating, {} gating failures, {} informational failures",
        r.steps.len(),
        r.gating_steps,
        r.gating_failures,
        r.informational_failures
    );
    for s in r.steps.iter().filter(|s| !s.pass).take(10) {
        println!("  not met ({}): {} at T = {:e}, δ₁ = {}: {:.4e} vs {:.4e}",
            if s.gating { "gating" } else { "informational" }, s.step, s.t, s.delta1, s.lhs, s.rhs);
    }
    for b in &r.boundary {
        println!("  boundary T = {:e}, δ₁ = {:.5}: case 2 exponent {:.6} ≤ case 1 {:.6}: {}",
            b.t, b.delta1, b.exponent_case_two, b.exponent_case_one, b.pass);
    }
    println!("audit: {}", if r.pass { "PASS" } else { "FAIL" });
    Ok(())
}

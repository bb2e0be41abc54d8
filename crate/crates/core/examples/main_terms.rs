//! Term-by-term breakdown of each closed-form prediction.
//!
//! cargo run --example main_terms -- 0.1 0.2 1e6

use zeta_moments::asymptotics::{
    classify_regime, main_term_eq3, main_term_gonek, main_term_quadratic, main_term_thm2,
    PredictionBreakdown,
};
use zeta_moments::moments::ShiftParameter;

fn show(name: &str, b: &PredictionBreakdown) {
    println!("{name}: total {:.10e}", b.total);
    let labels = ["density", "logderiv_plus", "cross", "logderiv_minus", "secondary_main"];
    for (label, v) in labels.iter().zip(b.terms()) {
        println!("  {label:>15} {v:+.10e}");
    }
    println!("  cutoff active: {}, limit mode: {}", b.cutoff_active, b.limit_mode);
}

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let d1 = args.next().unwrap_or(0.1);
    let d2 = args.next().unwrap_or(0.2);
    let t = args.next().unwrap_or(1e6);

    let delta = ShiftParameter::new(d1, d2)?;
    println!("{:?}", classify_regime(delta, t));
    show("eq3 (χ cutoff)", &main_term_eq3(delta, t)?);
    show("thm2 (indicator cutoff)", &main_term_thm2(delta, t)?);
    println!("quadratic: {:.10e}", main_term_quadratic(delta, t));
    for alpha in [0.1, 0.25, 0.5] {
        match main_term_gonek(alpha, t) {
            Ok(v) => println!("gonek α = {alpha}: {v:.10e}"),
            Err(e) => println!("gonek α = {alpha}: {e}"),
        }
    }
    Ok(())
}

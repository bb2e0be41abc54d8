//! Which unconditional regime a shift falls in as T grows.
//!
//! cargo run --example regime -- 0.01 0

use zeta_moments::asymptotics::{chi_threshold, classify_regime};
use zeta_moments::moments::ShiftParameter;

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let delta = ShiftParameter::new(args.next().unwrap_or(0.01), args.next().unwrap_or(0.0))?;
    for e in [3, 4, 6, 8, 10, 15, 20, 30] {
        let t = 10f64.powi(e);
        let r = classify_regime(delta, t);
        println!(
            "T = 1e{e:<2} χ-threshold {:.4}  small {:.3e} ({})  large {:.3e} ({})  gap {}  χ {}  ind {}",
            chi_threshold(t),
            r.small_value,
            r.small_condition,
            r.large_value,
            r.large_condition,
            r.gap_zone,
            r.chi,
            r.indicator_quarter
        );
    }
    Ok(())
}

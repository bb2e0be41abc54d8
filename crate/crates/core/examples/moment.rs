//! Empirical moment S(δ, T) against the conditional main term.
//!
//! cargo run --release --example moment -- 0.05 0.1 10000

use zeta_moments::asymptotics::main_term_thm2;
use zeta_moments::moments::{moment_s, ShiftParameter};
use zeta_moments::zeros;

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("number"));
    let d1 = args.next().unwrap_or(0.05);
    let d2 = args.next().unwrap_or(0.0);
    let t_max = args.next().unwrap_or(1e4);

    let delta = ShiftParameter::new(d1, d2)?;
    let cache = zeros::build(t_max, 0)?;
    println!("{:>10} {:>8} {:>18} {:>18} {:>10}", "T", "zeros", "S(δ,T)", "main term", "ratio");
    let mut t = 1e3f64.min(t_max);
    loop {
        let m = moment_s(delta, t, &cache)?;
        let p = main_term_thm2(delta, t)?;
        println!(
            "{t:>10.0} {:>8} {:>18.6} {:>18.6} {:>10.6}",
            m.n_zeros,
            m.value.re,
            p.total,
            m.value.re / p.total
        );
        if t >= t_max {
            break;
        }
        t = (t * 2.0).min(t_max);
    }
    Ok(())
}

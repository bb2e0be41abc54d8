//! The two cutoff forms of the main term agree wherever their cutoffs do.
//!
//! cargo run --release --example identity -- 5000 42

use zeta_moments::asymptotics::{identity_suite, main_term_eq3, main_term_thm2, sample_matching_points};

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(1000, |s| s.parse().expect("count"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    for (d, t) in sample_matching_points(5, seed) {
        let a = main_term_eq3(d, t)?.total;
        let b = main_term_thm2(d, t)?.total;
        println!("δ = {:+.5}{:+.5}i, T = {t:.3e}: eq3 {a:.12e}, thm2 {b:.12e}", d.delta1, d.delta2);
    }
    let r = identity_suite(n, seed)?;
    println!("{r:#?}");
    Ok(())
}

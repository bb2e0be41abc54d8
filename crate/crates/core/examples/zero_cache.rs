//! Build a certified zero cache, audit it, and write CSV + binary sidecar.
//!
//! cargo run --release --example zero_cache -- 10000 /tmp/zeros.csv

use std::path::PathBuf;
use std::time::Instant;

use zeta_moments::zeros;

fn main() -> zeta_moments::Result<()> {
    let mut args = std::env::args().skip(1);
    let t_max: f64 = args.next().map_or(1e4, |s| s.parse().expect("T_max"));
    let out = args.next().map(PathBuf::from);

    let start = Instant::now();
    let (cache, stats) = zeros::build_with_stats(t_max, 0)?;
    println!(
        "{} zeros up to T = {t_max} in {:.2?} ({} Gram points, {} blocks, {} subdivided)",
        cache.len(),
        start.elapsed(),
        stats.gram_points,
        stats.blocks,
        stats.subdivided_blocks
    );

    let audit = cache.audit_completeness(t_max)?;
    println!(
        "audit: located {} vs smooth {:.3}, worst |deviation| {:.3} at T = {:.3}",
        audit.located, audit.smooth, audit.worst_deviation, audit.worst_height
    );
    let max_err = cache.records.iter().map(|r| r.err_bound).fold(0.0, f64::max);
    println!("largest err_bound: {max_err:.2e}");

    if let Some(path) = out {
        cache.save_csv(&path)?;
        cache.save_binary(&path.with_extension("bin"))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

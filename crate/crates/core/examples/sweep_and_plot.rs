//! A δ × T sweep written as CSV and rendered as an SVG ratio plot.
//!
//! cargo run --release --example sweep_and_plot -- /tmp/sweep

use std::path::PathBuf;

use zeta_moments::io::{render_svg, run_sweep, write_rows_csv, Formula, SweepConfig, XAxis};
use zeta_moments::moments::ShiftParameter;
use zeta_moments::zeros;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sweep_out".into()));
    std::fs::create_dir_all(&dir)?;

    let config = SweepConfig {
        delta_list: vec![
            ShiftParameter::new(0.05, 0.0)?,
            ShiftParameter::new(0.1, 0.0)?,
            ShiftParameter::new(0.2, 0.1)?,
            ShiftParameter::new(0.005, 0.005)?,
        ],
        t_checkpoints: vec![1e3, 2e3, 5e3, 1e4],
        formulas: vec![Formula::Thm2, Formula::Quadratic],
        output_path: dir.join("rows.csv"),
        cache_path: dir.join("zeros.csv"),
    };
    let cache = zeros::build(1e4, 0)?;
    cache.save_csv(&config.cache_path)?;

    let rows = run_sweep(&config, &cache)?;
    std::fs::write(&config.output_path, write_rows_csv(&rows)?)?;
    for r in &rows {
        let ratio = r.ratio.map_or("-".to_string(), |v| format!("{v:.5}"));
        println!("δ = {}+{}i  T = {:>6}  {:<9} ratio {ratio}", r.delta1, r.delta2, r.t, r.formula.to_string());
    }

    let thm2: Vec<_> = rows.iter().filter(|r| r.formula == Formula::Thm2).cloned().collect();
    std::fs::write(dir.join("ratio_vs_T.svg"), render_svg(&thm2, XAxis::T))?;
    std::fs::write(dir.join("ratio_vs_delta.svg"), render_svg(&thm2, XAxis::AbsDelta))?;
    println!("wrote {}", dir.display());
    Ok(())
}

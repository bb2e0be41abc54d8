use std::fmt::Write as _;

use super::{fmt15, ComparisonRow};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum XAxis {
    /// log₁₀ T.
    #[value(name = "T")]
    T,
    /// |δ|, linear.
    #[value(name = "abs_delta")]
    AbsDelta,
}

impl XAxis {
    fn coord(self, r: &ComparisonRow) -> f64 {
        match self {
            XAxis::T => r.t.log10(),
            XAxis::AbsDelta => r.delta1.hypot(r.delta2),
        }
    }

    fn label(self) -> &'static str {
        match self {
            XAxis::T => "log10 T",
            XAxis::AbsDelta => "|delta|",
        }
    }
}

fn range(vals: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo > hi {
        return None;
    }
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
    Some((lo - pad, hi + pad))
}

/// Ratio against `axis`, one polyline per shift in order of first
/// appearance, and a dashed reference line at ratio 1.
pub fn render_svg(rows: &[ComparisonRow], axis: XAxis) -> String {
    let pts: Vec<(usize, f64, f64)> = {
        let mut keys: Vec<(u64, u64)> = Vec::new();
        rows.iter()
            .filter_map(|r| {
                let ratio = r.ratio.filter(|v| v.is_finite())?;
                let key = (r.delta1.to_bits(), r.delta2.to_bits());
                let series = keys.iter().position(|&k| k == key).unwrap_or_else(|| {
                    keys.push(key);
                    keys.len() - 1
                });
                Some((series, axis.coord(r), ratio))
            })
            .collect()
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN / 2.0, HEIGHT - MARGIN, MARGIN / 2.0);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0,
        axis.label()
    );
    let _ = writeln!(
        out,
        r#"<text x="15" y="{}" font-size="13" transform="rotate(-90 15 {})" text-anchor="middle">empirical / predicted</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let xr = range(pts.iter().map(|p| p.1));
    let yr = range(pts.iter().map(|p| p.2).chain(std::iter::once(1.0)));
    if let (Some((xa, xb)), Some((ya, yb))) = (xr, yr) {
        let sx = |x: f64| x0 + (x - xa) / (xb - xa) * (x1 - x0);
        let sy = |y: f64| y0 - (y - ya) / (yb - ya) * (y0 - y1);
        for (x, anchor) in [(xa, "start"), (xb, "end")] {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{}" text-anchor="{anchor}" font-size="11">{}</text>"#,
                sx(x),
                y0 + 16.0,
                fmt15((x * 1e3).round() / 1e3)
            );
        }
        for y in [ya, yb] {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="11">{}</text>"#,
                x0 - 4.0,
                sy(y),
                fmt15((y * 1e3).round() / 1e3)
            );
        }
        let _ = writeln!(
            out,
            r##"<line class="reference" x1="{x0}" y1="{r:.2}" x2="{x1}" y2="{r:.2}" stroke="#555" stroke-dasharray="6 4"/>"##,
            r = sy(1.0)
        );
        let n_series = pts.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        for s in 0..n_series {
            let coords: Vec<String> = pts
                .iter()
                .filter(|p| p.0 == s)
                .map(|p| format!("{:.2},{:.2}", sx(p.1), sy(p.2)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                PALETTE[s % PALETTE.len()],
                coords.join(" ")
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{Formula, RegimeFlags};

    fn row(d1: f64, t: f64, ratio: Option<f64>) -> ComparisonRow {
        ComparisonRow {
            delta1: d1,
            delta2: 0.0,
            t,
            empirical: ratio,
            predicted: Some(1.0),
            ratio,
            regime: RegimeFlags {
                small: false,
                large: true,
                gap: false,
                chi: true,
                indicator_quarter: true,
                in_region: true,
            },
            n_zeros: Some(1),
            formula: Formula::Thm2,
            reason: None,
        }
    }

    #[test]
    fn polylines_per_shift() {
        let rows: Vec<_> = [0.05, 0.1]
            .iter()
            .flat_map(|&d| [1e3, 1e4, 5e4].map(|t| row(d, t, Some(1.0 + d))))
            .collect();
        let svg = render_svg(&rows, XAxis::T);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"class="reference""#).count(), 1);
        assert_eq!(svg.matches(r#"class="axis""#).count(), 2);
    }

    #[test]
    fn empty_is_axes_only() {
        let svg = render_svg(&[], XAxis::AbsDelta);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches(r#"class="axis""#).count(), 2);
    }
}

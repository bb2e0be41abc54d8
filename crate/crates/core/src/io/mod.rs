//! Number formatting, sweep rows and SVG output.

mod svg;
mod sweep;

use serde::Serializer;

pub use svg::{render_svg, XAxis};
pub use sweep::{
    parse_rows_csv, run_sweep, write_rows_csv, ComparisonRow, Formula, RegimeFlags, SweepConfig,
    SWEEP_HEADER,
};

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` to 15 significant digits, fixed notation for exponents in [−5, 15)
/// and scientific otherwise, trailing zeros removed.
pub fn fmt15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let fixed = format!("{:.*}", (14 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

/// Serde adapter writing an `f64` as a 15-digit decimal string.
pub fn ser15<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt15(*x))
}

pub fn ser15_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&fmt15(*v)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt15(0.0), "0");
        assert_eq!(fmt15(-0.0), "0");
        assert_eq!(fmt15(1.0), "1");
        assert_eq!(fmt15(0.1), "0.1");
        assert_eq!(fmt15(1e4), "10000");
        assert_eq!(fmt15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(fmt15(-2.5e-7), "-2.5e-7");
        assert_eq!(fmt15(1.234e20), "1.234e20");
        assert_eq!(fmt15(9.999_999_999_999_999), "10");
        assert_eq!(fmt15(f64::NAN), "NaN");
    }
}

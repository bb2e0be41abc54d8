use proptest::prelude::*;
use zeta_moments::io::{
    fmt15, parse_rows_csv, render_svg, write_rows_csv, ComparisonRow, Formula, RegimeFlags, XAxis,
    SWEEP_HEADER,
};

fn header() -> String {
    SWEEP_HEADER.join(",")
}

fn r15(x: f64) -> f64 {
    fmt15(x).parse().unwrap()
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        (-300i32..300, -9.99f64..9.99).prop_map(|(e, m)| m * 10f64.powi(e)),
        Just(0.0),
        Just(-0.0),
    ]
}

fn flags() -> impl Strategy<Value = RegimeFlags> {
    any::<[bool; 6]>().prop_map(|b| RegimeFlags {
        small: b[0],
        large: b[1],
        gap: b[2],
        chi: b[3],
        indicator_quarter: b[4],
        in_region: b[5],
    })
}

fn row() -> impl Strategy<Value = ComparisonRow> {
    (
        (finite(), finite(), 1.0f64..1e12),
        proptest::option::of((finite(), finite(), finite(), 0usize..1_000_000)),
        flags(),
        prop_oneof![Just(Formula::Eq3), Just(Formula::Thm2), Just(Formula::Quadratic), Just(Formula::Gonek)],
        "[a-z ,\"=;.]{1,30}",
    )
        .prop_map(|((d1, d2, t), values, regime, formula, reason)| {
            let (empirical, predicted, ratio, n_zeros, reason) = match values {
                Some((e, p, r, n)) => (Some(r15(e)), Some(r15(p)), Some(r15(r)), Some(n), None),
                None => (None, None, None, None, Some(reason)),
            };
            ComparisonRow {
                delta1: r15(d1),
                delta2: r15(d2),
                t: r15(t),
                empirical,
                predicted,
                ratio,
                regime,
                n_zeros,
                formula,
                reason,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn fifteen_digit_round_trip(x in finite()) {
        let s = fmt15(x);
        let y: f64 = s.parse().unwrap();
        prop_assert!((x - y).abs() <= 5e-15 * x.abs(), "{x} -> {s}");
        prop_assert_eq!(fmt15(y), s);
    }

    #[test]
    fn regime_flags_round_trip(f in flags()) {
        prop_assert_eq!(f.to_string().parse::<RegimeFlags>().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rows_round_trip(rows in proptest::collection::vec(row(), 0..12)) {
        let text = write_rows_csv(&rows).unwrap();
        prop_assert!(text.starts_with(&header()));
        let back = parse_rows_csv(&text).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(write_rows_csv(&back).unwrap(), text);
    }
}

#[test]
fn malformed_rows_rejected() {
    assert!(parse_rows_csv("delta1,delta2\n1,2\n").is_err());
    let bad = format!("{}\n0.1,0,1000,x,1,1,small=0;large=0;gap=0;chi=0;ind=0;region=1,10,thm2,\n", header());
    assert!(parse_rows_csv(&bad).is_err());
    assert!(parse_rows_csv(&format!("{}\n", header())).unwrap().is_empty());
}

#[test]
fn svg_has_one_series_per_shift() {
    let base = ComparisonRow {
        delta1: 0.1,
        delta2: 0.0,
        t: 1000.0,
        empirical: Some(1.0),
        predicted: Some(1.0),
        ratio: Some(1.0),
        regime: "small=0;large=1;gap=0;chi=1;ind=1;region=1".parse().unwrap(),
        n_zeros: Some(649),
        formula: Formula::Thm2,
        reason: None,
    };
    let rows = vec![
        base.clone(),
        ComparisonRow { t: 5000.0, ratio: Some(1.01), ..base.clone() },
        ComparisonRow { delta2: 0.2, ..base.clone() },
        ComparisonRow { delta2: 0.2, t: 5000.0, ..base.clone() },
    ];
    for axis in [XAxis::T, XAxis::AbsDelta] {
        let svg = render_svg(&rows, axis);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("class=\"reference\"").count(), 1);
    }
    let empty = render_svg(&[], XAxis::T);
    assert_eq!(empty.matches("<polyline").count(), 0);
    assert_eq!(empty.matches("class=\"axis\"").count(), 2);
}

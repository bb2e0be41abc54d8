use serde::Serialize;

use super::{chi_threshold, A_ZERO_FREE, T_MIN};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnvelopeCase {
    /// −a/ln T ≤ δ₁ ≤ (ln T)^{−2/5}(ln ln T)^{−1/5}
    One,
    /// (ln T)^{−2/5}(ln ln T)^{−1/5} ≤ δ₁ ≤ 1/2 + a/ln T
    Two,
}

fn exponent_case_one(t: f64) -> f64 {
    1.0 - A_ZERO_FREE * chi_threshold(t)
}

fn exponent_case_two(delta1: f64, t: f64) -> f64 {
    let l = t.ln();
    1.0 - A_ZERO_FREE * (delta1 * l).powf(-2.0 / 3.0) * l.ln().powf(-1.0 / 3.0) - delta1
        + 0.5 * delta1 * delta1
}

/// The exponent e with E(T) = T^e, and which case produced it.
pub fn error_envelope_exponent(delta1: f64, t: f64, a: f64) -> Result<(f64, EnvelopeCase)> {
    if !(t >= T_MIN) {
        return Err(Error::DomainTooSmall { t, min: T_MIN });
    }
    let (lo, hi) = (-a / t.ln(), 0.5 + a / t.ln());
    if !(delta1 >= lo && delta1 <= hi) {
        return Err(Error::OutsideRegion { delta1, lo, hi });
    }
    Ok(if delta1 <= chi_threshold(t) {
        (exponent_case_one(t), EnvelopeCase::One)
    } else {
        (exponent_case_two(delta1, t), EnvelopeCase::Two)
    })
}

/// The corrected error term E(T) (region parameter a = 1).
pub fn error_envelope(delta1: f64, t: f64) -> Result<f64> {
    error_envelope_with_a(delta1, t, 1.0)
}

pub fn error_envelope_with_a(delta1: f64, t: f64, a: f64) -> Result<f64> {
    error_envelope_exponent(delta1, t, a).map(|(e, _)| t.powf(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// A plain ≤ between two evaluated sides.
    Literal,
    /// A ≪ step: `value` is the implied constant, required ≤ `rhs`.
    Bounded,
    /// An o(·) step: `value` is the ratio to the reference, required ≤ 1.
    LittleO,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepResult {
    pub step: &'static str,
    pub t: f64,
    pub delta1: f64,
    pub kind: StepKind,
    /// Gating steps decide the audit; the others are reported only.
    pub gating: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryCheck {
    pub t: f64,
    pub delta1: f64,
    pub exponent_case_one: f64,
    pub exponent_case_two: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Section2Report {
    pub steps: Vec<StepResult>,
    pub boundary: Vec<BoundaryCheck>,
    pub gating_steps: usize,
    pub gating_failures: usize,
    pub informational_failures: usize,
    pub pass: bool,
}

impl Section2Report {
    pub fn first_gating_failure(&self) -> Option<&StepResult> {
        self.steps.iter().find(|s| s.gating && !s.pass)
    }
}

pub fn default_audit_t_grid() -> Vec<f64> {
    vec![1e6, 1e9, 1e12]
}

pub fn default_audit_delta1_grid() -> Vec<f64> {
    vec![-0.03, -0.01, 1e-3, 0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5]
}

fn le(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-12 * lhs.abs().max(rhs.abs())
}

struct Point {
    t: f64,
    delta1: f64,
    steps: Vec<StepResult>,
}

impl Point {
    fn push(&mut self, step: &'static str, kind: StepKind, gating: bool, lhs: f64, rhs: f64) {
        let pass = match kind {
            StepKind::Literal | StepKind::Bounded => le(lhs, rhs),
            StepKind::LittleO => lhs.is_finite() && lhs <= 1.0,
        };
        self.steps.push(StepResult {
            step,
            t: self.t,
            delta1: self.delta1,
            kind,
            gating,
            lhs,
            rhs,
            pass,
        });
    }
}

/// Common quantities at one grid point. Exponents are in units of ln T.
struct Quantities {
    l: f64,
    ll: f64,
    b: f64,
    /// ln U
    lu: f64,
    /// ln ln U
    llu: f64,
}

impl Quantities {
    fn new(t: f64, delta1: f64) -> Self {
        let l = t.ln();
        let b = chi_threshold(t);
        let lu = l * (b + delta1 - 0.5 * delta1 * delta1);
        Self {
            l,
            ll: l.ln(),
            b,
            lu,
            llu: lu.ln(),
        }
    }

    /// (3/2) A (ln U)^{−2/3} (ln ln U)^{−1/3}
    fn u_rate(&self) -> f64 {
        1.5 * A_ZERO_FREE * self.lu.powf(-2.0 / 3.0) * self.llu.powf(-1.0 / 3.0)
    }

    /// ln of the right-hand side of the integral bound minus ln E(T).
    fn conclusion_gap(&self, delta1: f64, e_exponent: f64) -> f64 {
        let u_factor = self.lu * (self.u_rate() + 0.5 * delta1);
        let t_factor = self.l
            * (1.0
                - 2.0 * A_ZERO_FREE * self.lu.powf(-2.0 / 3.0) * self.llu.powf(-1.0 / 3.0)
                - delta1);
        u_factor + t_factor + 3.0 * self.l.ln() - self.l * e_exponent
    }
}

fn case_one(p: &mut Point, a: f64) {
    let Quantities { l, ll, b, lu, llu } = Quantities::new(p.t, p.delta1);
    let q = Quantities::new(p.t, p.delta1);
    let d = p.delta1;
    let eu = b + d - 0.5 * d * d;
    p.push("C1.U<=T^(b+d1)", StepKind::Literal, false, eu, b + d);
    p.push("C1.T^(b+d1)<=T^(2b)", StepKind::Literal, false, b + d, 2.0 * b);
    p.push("C1.logU", StepKind::Literal, false, lu, 2.0 * l.powf(0.6) * ll.powf(-0.2));
    p.push(
        "C1.logU^(-2/3)",
        StepKind::Literal,
        false,
        2f64.powf(-2.0 / 3.0) * l.powf(-0.4) * ll.powf(2.0 / 15.0),
        lu.powf(-2.0 / 3.0),
    );
    p.push("C1.loglogU<=loglogT", StepKind::Literal, false, llu, ll);

    // (T): exponents of T.
    let lhs = 1.0 - 2.0 * A_ZERO_FREE * lu.powf(-2.0 / 3.0) * llu.powf(-1.0 / 3.0) - d;
    let mid = 1.0 - 2f64.cbrt() * A_ZERO_FREE * b - d;
    p.push("(T).1", StepKind::Literal, true, lhs, mid);
    // T^{mid} ≪ T^{mid + δ₁}: implied constant T^{−δ₁} ≤ e^a on the region.
    p.push("(T).2", StepKind::Bounded, true, (-d * l).exp(), a.exp());

    // (U): natural logs of each side.
    let u0 = lu * (q.u_rate() + 0.5 * d);
    let u1 = 1.5 * A_ZERO_FREE * lu.cbrt() + 0.5 * b * lu;
    let u2 = 3.0 * A_ZERO_FREE * 2f64.powf(-2.0 / 3.0) * l.powf(0.2) * ll.powf(-1.0 / 15.0)
        + l.powf(0.2) * ll.powf(-0.4);
    let u3_exp = 3.0 * A_ZERO_FREE * l.powf(-0.8) * ll.powf(-1.0 / 15.0) + l.powf(-0.8) * ll.powf(-0.4);
    p.push("(U).1", StepKind::Literal, true, u0, u1);
    p.push("(U).2", StepKind::Literal, true, u1, u2);
    p.push("(U).3", StepKind::Literal, true, u2, l * u3_exp);
    p.push("(U).4", StepKind::LittleO, true, u3_exp / b, 1.0);

    let gap = q.conclusion_gap(d, exponent_case_one(p.t));
    p.push("C1.conclusion", StepKind::Bounded, false, gap.exp(), 1.0);
}

fn case_two(p: &mut Point) {
    let q = Quantities::new(p.t, p.delta1);
    let Quantities { l, ll, b, lu, llu } = q;
    let d = p.delta1;
    let eu = b + d - 0.5 * d * d;
    let ref_rate = (d * l).powf(-2.0 / 3.0) * ll.powf(-1.0 / 3.0);

    p.push("C2.U<=T^(2d1)", StepKind::Literal, false, eu, 2.0 * d);
    p.push(
        "C2.logU^(-2/3)",
        StepKind::Literal,
        false,
        2f64.powf(-2.0 / 3.0) * (d * l).powf(-2.0 / 3.0),
        lu.powf(-2.0 / 3.0),
    );
    // (TCase2): compare the subtracted parts of the exponents.
    p.push(
        "(TCase2)",
        StepKind::Literal,
        true,
        2f64.cbrt() * A_ZERO_FREE * ref_rate,
        2.0 * A_ZERO_FREE * lu.powf(-2.0 / 3.0) * llu.powf(-1.0 / 3.0),
    );
    p.push("C2.U>=T^(d1/2)", StepKind::Literal, false, 0.5 * d, eu);
    let floor = (0.5 * l.powf(0.6) * ll.powf(-0.2)).ln();
    p.push("C2.loglogU>=log(d1 logT/2)", StepKind::Literal, false, (0.5 * d * l).ln(), llu);
    p.push("C2.log(d1 logT/2)>=log(...)", StepKind::Literal, false, floor, (0.5 * d * l).ln());
    // Holds only once ln T ≥ 32 ln ln T.
    p.push("C2.log(...)>=(2/5)loglogT", StepKind::Literal, false, 0.4 * ll, floor);
    p.push("C2.U-rate<=4A(...)", StepKind::Literal, false, q.u_rate(), 4.0 * A_ZERO_FREE * ref_rate);

    let rate4 = 4.0 * A_ZERO_FREE * ref_rate;
    let product = eu * (rate4 + 0.5 * d);
    let o_part = b * rate4;
    let expanded = o_part
        + 4.0 * A_ZERO_FREE * d.cbrt() * l.powf(-2.0 / 3.0) * ll.powf(-1.0 / 3.0)
        + 0.5 * d * b
        + 0.5 * d * d
        - 0.25 * d * d * d;
    p.push("C2.expand", StepKind::Literal, false, product, expanded);
    p.push("C2.expand.o", StepKind::LittleO, false, o_part / ref_rate, 1.0);
    p.push(
        "C2.absorb",
        StepKind::Literal,
        false,
        4.0 * A_ZERO_FREE * d.cbrt() * l.powf(-2.0 / 3.0) * ll.powf(-1.0 / 3.0) + 0.5 * d * b,
        d * b,
    );
    if d >= l.powf(-0.2) {
        p.push("C2.subcase(d1>=logT^-1/5)", StepKind::Literal, false, d * b, 0.25 * d * d * d);
    } else {
        p.push("C2.subcase(d1<logT^-1/5)", StepKind::LittleO, false, d * b / ref_rate, 1.0);
    }

    // (UCase2): actual exponent of the U-factor, minus δ₁²/2, against the
    // o(·) reference rate.
    let u_exponent = (lu / l) * (q.u_rate() + 0.5 * d);
    p.push("(UCase2)", StepKind::LittleO, true, (u_exponent - 0.5 * d * d) / ref_rate, 1.0);

    let gap = q.conclusion_gap(d, exponent_case_two(d, p.t));
    p.push("C2.conclusion", StepKind::Bounded, false, gap.exp(), 1.0);
}

/// Evaluates every step of both case chains on the grid.
///
/// Literal steps compare evaluated sides directly. ≪ steps report their
/// implied constant and o(·) steps their ratio to the reference rate; these
/// are numerical evidence at finite T, not proofs. Only the labelled
/// displays (T), (U), (TCase2), (UCase2) and the case-boundary ordering gate
/// the result.
pub fn audit_section2_report(t_grid: &[f64], delta1_grid: &[f64], a: f64) -> Result<Section2Report> {
    if t_grid.is_empty() || delta1_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut steps = Vec::new();
    let mut boundary = Vec::new();
    for &t in t_grid {
        if !(t >= 1e6) {
            return Err(Error::DomainTooSmall { t, min: 1e6 });
        }
        let b = chi_threshold(t);
        let (e1, e2) = (exponent_case_one(t), exponent_case_two(b, t));
        boundary.push(BoundaryCheck {
            t,
            delta1: b,
            exponent_case_one: e1,
            exponent_case_two: e2,
            pass: le(e2, e1),
        });
        for &delta1 in delta1_grid {
            let (_, case) = error_envelope_exponent(delta1, t, a)?;
            let mut p = Point {
                t,
                delta1,
                steps: Vec::new(),
            };
            match case {
                EnvelopeCase::One => case_one(&mut p, a),
                EnvelopeCase::Two => case_two(&mut p),
            }
            steps.extend(p.steps);
        }
    }
    let gating_steps = steps.iter().filter(|s| s.gating).count();
    let gating_failures = steps.iter().filter(|s| s.gating && !s.pass).count()
        + boundary.iter().filter(|b| !b.pass).count();
    let informational_failures = steps.iter().filter(|s| !s.gating && !s.pass).count();
    Ok(Section2Report {
        pass: gating_failures == 0,
        steps,
        boundary,
        gating_steps,
        gating_failures,
        informational_failures,
    })
}

/// As [`audit_section2_report`], failing with ChainStepFailed at the first
/// gating step that does not hold.
pub fn audit_section2(t_grid: &[f64], delta1_grid: &[f64]) -> Result<Section2Report> {
    let report = audit_section2_report(t_grid, delta1_grid, 1.0)?;
    if let Some(s) = report.first_gating_failure() {
        return Err(Error::ChainStepFailed {
            step: s.step.to_string(),
            t: s.t,
            delta1: s.delta1,
        });
    }
    if let Some(b) = report.boundary.iter().find(|b| !b.pass) {
        return Err(Error::ChainStepFailed {
            step: "case-boundary".into(),
            t: b.t,
            delta1: b.delta1,
        });
    }
    Ok(report)
}

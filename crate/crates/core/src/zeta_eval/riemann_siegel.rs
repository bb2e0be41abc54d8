//! Riemann–Siegel evaluation of Z(t) on the critical line.
//!
//! Z(t) = 2 Σ_{n≤N} n^{-1/2} cos(θ(t) - t ln n)
//!        + (-1)^{N-1} a^{-1/2} Σ_{k=0}^{4} C_k(p) a^{-k} + R,
//! a = √(t/2π), N = ⌊a⌋, p = a - N. The C_k are combinations of derivatives
//! of Ψ(p) = cos(2π(p² - p - 1/16)) / cos(2πp), stored as Taylor tables in
//! x = p - 1/2 (see tools/rs_coeffs.py).

use std::f64::consts::PI;

use std::sync::OnceLock;

use super::dd::Dd;
use super::gamma::theta_dd;

/// Gabcke-type bound for the remainder after C_4: |R| ≤ 0.017 t^{-11/4}, t ≥ 200.
const REMAINDER_CONSTANT: f64 = 0.017;

pub(crate) fn remainder_bound(t: f64) -> f64 {
    REMAINDER_CONSTANT * t.powf(-2.75)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// ln n in double-double for 1 ≤ n ≤ LN_TABLE_LEN (covers t ≤ 10⁶).
const LN_TABLE_LEN: usize = 400;

fn ln_table() -> &'static [Dd] {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=LN_TABLE_LEN).map(|n| Dd::new(n as f64).ln()).collect())
}

/// Z(t) and an absolute error bound. Intended for t above the switch height.
///
/// Each phase θ(t) − t ln n is formed and reduced modulo 2π in double-double,
/// so the per-term rounding stays at a few ulp of 1 whatever the height.
pub(crate) fn hardy_z(t: f64) -> (f64, f64) {
    let a = (t / (2.0 * PI)).sqrt();
    let n_max = a.floor() as usize;
    let p = a - n_max as f64;
    let theta = theta_dd(t);
    let lns = ln_table();
    debug_assert!(n_max <= lns.len());

    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut weight = 0.0;
    let t_dd = Dd::new(t);
    for (n, ln_n) in lns.iter().enumerate().take(n_max) {
        let inv_sqrt = 1.0 / ((n + 1) as f64).sqrt();
        let phase = (theta - t_dd * *ln_n).rem_two_pi();
        let v = phase.to_f64().cos() * inv_sqrt;
        let s = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - s) + v;
        } else {
            comp += (v - s) + sum;
        }
        sum = s;
        weight += inv_sqrt;
    }
    let main = 2.0 * (sum + comp);

    let x = p - 0.5;
    let inv_a = 1.0 / a;
    let tables: [&[f64]; 5] = [&C0, &C1, &C2, &C3, &C4];
    let mut corr = 0.0;
    let mut scale = 1.0;
    for table in tables {
        corr += horner(table, x) * scale;
        scale *= inv_a;
    }
    let sign = if n_max % 2 == 1 { 1.0 } else { -1.0 };
    let value = main + sign * corr / a.sqrt();
    // cos and 1/√n to a few ulp per term; p inherits ε·a from the square
    // root, and |dC₀/dp| < 4.
    let rounding = 8.0 * f64::EPSILON * weight + 8.0 * f64::EPSILON * a.sqrt();
    (value, remainder_bound(t) + rounding)
}

#[allow(clippy::excessive_precision)]
const C0: [f64; 47] = [
    3.8268343236508977173e-1,
    0.0,
    1.7489618723100817974,
    0.0,
    2.1180252076854963732,
    0.0,
    -8.7072166705114807392e-1,
    0.0,
    -3.4733112243465167073,
    0.0,
    -1.6626947308999324496,
    0.0,
    1.2167312889192321345,
    0.0,
    1.3014304161007975773,
    0.0,
    3.0511021827361672421e-2,
    0.0,
    -3.7558030515450952428e-1,
    0.0,
    -1.0857844165640659744e-1,
    0.0,
    5.1832902999549623376e-2,
    0.0,
    2.999948061990227592e-2,
    0.0,
    -2.275939670612564226e-3,
    0.0,
    -4.3826474165803383059e-3,
    0.0,
    -4.0642301837298469931e-4,
    0.0,
    4.0060977854221139279e-4,
    0.0,
    8.9710579913888412978e-5,
    0.0,
    -2.3025650027239107116e-5,
    0.0,
    -9.3800066019067924847e-6,
    0.0,
    6.3235149476091075042e-7,
    0.0,
    6.5510228192315016662e-7,
    0.0,
    2.2105237455526972587e-8,
    0.0,
    -3.322316176445628835e-8,
];
#[allow(clippy::excessive_precision)]
const C1: [f64; 48] = [
    0.0,
    -5.365020525675069406e-2,
    0.0,
    1.102781874108148244e-1,
    0.0,
    1.2317200154315226313,
    0.0,
    1.2634964862799457884,
    0.0,
    -1.6951089975595030184,
    0.0,
    -2.999871196765010089,
    0.0,
    -1.0819944959899208643e-1,
    0.0,
    1.9407662946212712688,
    0.0,
    7.8384235615006865329e-1,
    0.0,
    -5.0548296679003659188e-1,
    0.0,
    -3.8450723496057974051e-1,
    0.0,
    3.7472646465315320676e-2,
    0.0,
    9.0920266109731763173e-2,
    0.0,
    1.0449237550064509218e-2,
    0.0,
    -1.2582979651583416497e-2,
    0.0,
    -3.3995037211512740851e-3,
    0.0,
    1.0410950537714891268e-3,
    0.0,
    5.0109490511184868604e-4,
    0.0,
    -3.9563596690031815595e-5,
    0.0,
    -4.7624592453571896387e-5,
    0.0,
    -1.8539355338085132273e-6,
    0.0,
    3.193691808006897204e-6,
    0.0,
    4.0907807608506066327e-7,
    0.0,
    -1.5446624332576632128e-7,
];
#[allow(clippy::excessive_precision)]
const C2: [f64; 51] = [
    5.1885428302931684938e-3,
    0.0,
    1.2378633552253898413e-3,
    0.0,
    -1.8137505725166997411e-1,
    0.0,
    1.4291492748532126541e-1,
    0.0,
    1.3303391766687565325,
    0.0,
    3.5224723534037336775e-1,
    0.0,
    -2.4210015958919507238,
    0.0,
    -1.6760787022538108853,
    0.0,
    1.3689416723328372184,
    0.0,
    1.5539019430222983221,
    0.0,
    -1.722164273472998052e-1,
    0.0,
    -6.359068055045430989e-1,
    0.0,
    -9.9116498730412081054e-2,
    0.0,
    1.4033480067387008951e-1,
    0.0,
    4.7823520198272922364e-2,
    0.0,
    -1.7356040641479780798e-2,
    0.0,
    -1.0225012534028591844e-2,
    0.0,
    9.2741491597948878994e-4,
    0.0,
    1.3572194372373385345e-3,
    0.0,
    6.41369012029388009e-5,
    0.0,
    -1.2300805698196629883e-4,
    0.0,
    -1.8313507404789202555e-5,
    0.0,
    7.8216286043226273085e-6,
    0.0,
    2.0087542484759945503e-6,
    0.0,
    -3.3532765393185713737e-7,
    0.0,
    -1.4616020917418230926e-7,
];
#[allow(clippy::excessive_precision)]
const C3: [f64; 52] = [
    0.0,
    -2.6794321814389138085e-3,
    0.0,
    2.9953721091035149637e-2,
    0.0,
    -4.2570172541828697985e-2,
    0.0,
    -2.8997965779803887507e-1,
    0.0,
    4.8888319992354459725e-1,
    0.0,
    1.2308558763957460812,
    0.0,
    -8.2975607085274087042e-1,
    0.0,
    -2.2497635366665668665,
    0.0,
    7.8451399610054713794e-2,
    0.0,
    1.7467492800868894004,
    0.0,
    4.5968080979749935109e-1,
    0.0,
    -6.6193534710397749464e-1,
    0.0,
    -3.1590441036173634579e-1,
    0.0,
    1.2844792545207495989e-1,
    0.0,
    1.0073382716626152301e-1,
    0.0,
    -9.5301838488252677595e-3,
    0.0,
    -1.9264421687514088898e-2,
    0.0,
    -1.2464637158769291712e-3,
    0.0,
    2.424396964110308574e-3,
    0.0,
    4.3764769774185701828e-4,
    0.0,
    -2.0714032687001791276e-4,
    0.0,
    -6.2743445041865155605e-5,
    0.0,
    1.1575343814595669348e-5,
    0.0,
    5.8838549245403797839e-6,
    0.0,
    -3.1246774006963362209e-7,
    0.0,
    -4.024065775498959501e-7,
];
#[allow(clippy::excessive_precision)]
const C4: [f64; 53] = [
    4.6483389361763381854e-4,
    0.0,
    -4.0226429461361883039e-3,
    0.0,
    3.8471770517961268836e-3,
    0.0,
    6.5811751358094860021e-2,
    0.0,
    -1.9604124343694449118e-1,
    0.0,
    -2.0854053686358853244e-1,
    0.0,
    9.5077541851417509458e-1,
    0.0,
    5.3415353129148739761e-1,
    0.0,
    -1.6763494411763400796,
    0.0,
    -1.0767471578751289928,
    0.0,
    1.2353393016565969853,
    0.0,
    1.0257825340057275772,
    0.0,
    -4.0124095793988544379e-1,
    0.0,
    -5.036663995108303448e-1,
    0.0,
    3.5734877955027449858e-2,
    0.0,
    1.4431763086785416624e-1,
    0.0,
    1.5091527417903469417e-2,
    0.0,
    -2.6098874779194361318e-2,
    0.0,
    -6.126628379519261749e-3,
    0.0,
    3.0775031298708411848e-3,
    0.0,
    1.1562478934088752316e-3,
    0.0,
    -2.2775966758472127473e-4,
    0.0,
    -1.4189637118181444433e-4,
    0.0,
    7.4648603079559194531e-6,
    0.0,
    1.2479701645409116617e-5,
    0.0,
    4.8639451840020946191e-7,
    0.0,
    -8.2102374141231672339e-7,
];

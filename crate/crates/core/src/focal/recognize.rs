//! Jet-level recognizer for the simple function singularities that occur on
//! the focal set: `A_k` (k ≤ 4) in corank one, `D4` and `X9` in corank two.

use crate::series::{TruncatedSeries1, TruncatedSeries2, Var};

use super::{FocalClass, FocalLabel};

/// Relative tolerance of the zero tests.
pub const RECOGNIZER_TOL: f64 = 1e-9;

/// Discriminant of `a u³ + b u²v + c uv² + d v³`.
pub fn cubic_discriminant([a, b, c, d]: [f64; 4]) -> f64 {
    b * b * c * c - 4.0 * a * c * c * c - 4.0 * b * b * b * d - 27.0 * a * a * d * d + 18.0 * a * b * c * d
}

/// Discriminant of `a u⁴ + b u³v + c u²v² + d uv³ + e v⁴`.
pub fn quartic_discriminant([a, b, c, d, e]: [f64; 5]) -> f64 {
    256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e - 128.0 * a * a * c * c * e * e
        + 144.0 * a * a * c * d * d * e
        - 27.0 * a * a * d * d * d * d
        + 144.0 * a * b * b * c * e * e
        - 6.0 * a * b * b * d * d * e
        - 80.0 * a * b * c * c * d * e
        + 18.0 * a * b * c * d * d * d
        + 16.0 * a * c * c * c * c * e
        - 4.0 * a * c * c * c * d * d
        - 27.0 * b * b * b * b * e * e
        + 18.0 * b * b * b * c * d * e
        - 4.0 * b * b * b * d * d * d
        - 4.0 * b * b * c * c * c * e
        + b * b * c * c * d * d
}

fn homogeneous<const N: usize>(h: &TruncatedSeries2) -> [f64; N] {
    let d = N - 1;
    core::array::from_fn(|k| h.coeff(d - k, k))
}

/// Recognizes `h` (with `h(0) = 0`, `dh(0) = 0`) using [`RECOGNIZER_TOL`]
/// relative to the size of its coefficients.
pub fn recognize_function_singularity(h: &TruncatedSeries2) -> FocalClass {
    recognize_with_tol(h, RECOGNIZER_TOL * h.max_abs().max(1.0))
}

/// Recognizer with an absolute zero tolerance.
pub fn recognize_with_tol(h: &TruncatedSeries2, tol: f64) -> FocalClass {
    let r = h.degree();
    let (h20, h11, h02) = (h.coeff(2, 0), h.coeff(1, 1), h.coeff(0, 2));
    let mean = 0.5 * (h20 + h02);
    let rad = libm::hypot(0.5 * (h20 - h02), 0.5 * h11);
    let (l1, l2) = (mean + rad, mean - rad);
    let ang = 0.5 * libm::atan2(h11, h20 - h02);
    let e1 = [libm::cos(ang), libm::sin(ang)];
    let e2 = [-e1[1], e1[0]];
    match (l1.abs() <= tol, l2.abs() <= tol) {
        (false, false) => FocalClass::new(FocalLabel::A1, "hessian_det", 4.0 * l1 * l2),
        (true, false) => corank_one(h, e1, e2, l2, tol),
        (false, true) => corank_one(h, e2, e1, l1, tol),
        (true, true) if r < 3 => FocalClass::new(FocalLabel::Unclassified, "degree", r as f64),
        (true, true) => corank_two(h, tol),
    }
}

/// Splits off `μq²` along the critical curve `∂_q h = 0` and reads the order
/// of the remaining function of `p`.
fn corank_one(h: &TruncatedSeries2, kernel: [f64; 2], other: [f64; 2], mu: f64, tol: f64) -> FocalClass {
    let r = h.degree();
    let p = TruncatedSeries2::var_u(r);
    let q = TruncatedSeries2::var_v(r);
    let su = &p.scale(kernel[0]) + &q.scale(other[0]);
    let sv = &p.scale(kernel[1]) + &q.scale(other[1]);
    let Ok(ht) = h.compose(&su, &sv) else {
        return FocalClass::new(FocalLabel::Unclassified, "composition", 0.0);
    };
    let dq = ht.partial(Var::V);
    let mut big_q = TruncatedSeries1::zero(r);
    let along = |s: &TruncatedSeries2, big_q: &TruncatedSeries1| {
        s.compose(&p, &TruncatedSeries2::from_univariate(r, big_q, Var::U))
            .map(|c| c.restrict(Var::U))
    };
    for _ in 0..r {
        let Ok(d) = along(&dq, &big_q) else { break };
        big_q = &big_q - &d.scale(0.5 / mu);
    }
    let Ok(g) = along(&ht, &big_q) else {
        return FocalClass::new(FocalLabel::Unclassified, "composition", 0.0);
    };
    let cap = r.min(5);
    for k in 3..=cap {
        if g.coeff(k).abs() > tol {
            let label = match k {
                3 => FocalLabel::A2,
                4 => FocalLabel::A3,
                _ => FocalLabel::A4,
            };
            return FocalClass::new(label, "order_coefficient", g.coeff(k));
        }
    }
    FocalClass::new(FocalLabel::Unclassified, "order_beyond", (cap + 1) as f64)
}

fn corank_two(h: &TruncatedSeries2, tol: f64) -> FocalClass {
    let cubic: [f64; 4] = homogeneous(h);
    let size3 = cubic.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if size3 > tol {
        let disc = cubic_discriminant(cubic);
        if disc.abs() > RECOGNIZER_TOL * libm::pow(size3, 4.0) {
            return FocalClass::new(FocalLabel::D4, "cubic_discriminant", disc);
        }
        return FocalClass::new(FocalLabel::Unclassified, "cubic_discriminant", disc);
    }
    if h.degree() < 4 {
        return FocalClass::new(FocalLabel::Unclassified, "degree", h.degree() as f64);
    }
    let quartic: [f64; 5] = homogeneous(h);
    let size4 = quartic.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let disc = quartic_discriminant(quartic);
    if size4 > tol && disc.abs() > RECOGNIZER_TOL * libm::pow(size4, 6.0) {
        FocalClass::new(FocalLabel::X9, "quartic_discriminant", disc)
    } else {
        FocalClass::new(FocalLabel::Unclassified, "quartic_discriminant", disc)
    }
}

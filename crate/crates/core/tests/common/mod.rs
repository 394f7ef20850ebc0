#![allow(dead_code)]

use frontkit_core::linalg::Mat3;
use frontkit_core::{NormalFormGerm, TruncatedSeries1, TruncatedSeries2, Var};
use proptest::prelude::*;

pub fn coeffs(n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(lo..hi, n)
}

pub fn series(r: usize) -> impl Strategy<Value = TruncatedSeries2> {
    coeffs((r + 1) * (r + 2) / 2, -2.0, 2.0).prop_map(move |c| {
        let mut it = c.into_iter();
        TruncatedSeries2::from_fn(r, |_, _| it.next().unwrap())
    })
}

/// Series vanishing at the origin.
pub fn series0(r: usize) -> impl Strategy<Value = TruncatedSeries2> {
    series(r).prop_map(|s| s.add_scalar(-s.constant_term()))
}

fn t1(c: &[f64]) -> TruncatedSeries1 {
    TruncatedSeries1::from_coeffs(c.to_vec())
}

/// Normal forms with `a ∈ [0.2, 5]`, coefficients in `[−2, 2]` and
/// `c₁(0), c₃(0) ∈ [0.2, 2]`.
pub fn normal_form(r: usize) -> impl Strategy<Value = NormalFormGerm> {
    let n1 = r - 2;
    let n2 = (r - 3) * (r - 2) / 2;
    (0.2f64..5.0, coeffs(n1, -2.0, 2.0), coeffs(n2, -2.0, 2.0), coeffs(n1, -2.0, 2.0))
        .prop_flat_map(move |(a, b1, b2, b3)| {
            (
                Just((a, b1, b2, b3)),
                coeffs(n1, -2.0, 2.0),
                coeffs(n2, -2.0, 2.0),
                coeffs(n1, -2.0, 2.0),
                0.2f64..2.0,
                0.2f64..2.0,
            )
        })
        .prop_map(move |((a, b1, b2, b3), mut c1, c2, mut c3, k1, k3)| {
            c1[0] = k1;
            c3[0] = k3;
            let mixed = |c: Vec<f64>| {
                let mut it = c.into_iter();
                TruncatedSeries2::from_fn(r - 4, |_, _| it.next().unwrap())
            };
            NormalFormGerm::from_parts(a, t1(&b1), mixed(b2), t1(&b3), t1(&c1), mixed(c2), t1(&c3), r).unwrap()
        })
}

pub fn rotation() -> impl Strategy<Value = Mat3> {
    (coeffs(3, -1.0, 1.0), 0.0f64..std::f64::consts::TAU).prop_filter_map("zero axis", |(axis, ang)| {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        (n > 0.1).then(|| Mat3::rotation(&[axis[0], axis[1], axis[2]], ang))
    })
}

/// Tangent-to-identity changes `(u(1 + p(u) + v²q), v(1 + p̃(v) + u²q̃))`
/// that keep the axes and the divisibility structure.
pub fn adapted_jet(r: usize) -> impl Strategy<Value = (TruncatedSeries2, TruncatedSeries2)> {
    (coeffs(r - 1, -0.5, 0.5), coeffs(r - 1, -0.5, 0.5), series(r - 3), series(r - 3)).prop_map(move |(p, pt, q, qt)| {
        let factor = |p: &[f64], q: &TruncatedSeries2, var: Var| {
            let mut c = vec![1.0];
            c.extend(p);
            let along = TruncatedSeries2::from_univariate(r - 1, &t1(&c), var);
            let (i, j) = if var == Var::U { (0, 2) } else { (2, 0) };
            &along + &q.scale(0.5).mul_monomial(i, j)
        };
        let su = factor(&p, &q, Var::U).mul_monomial(1, 0);
        let sv = factor(&pt, &qt, Var::V).mul_monomial(0, 1);
        (su, sv)
    })
}

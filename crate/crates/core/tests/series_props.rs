mod common;

use common::{series, series0};
use frontkit_core::series::invert_coordinate_change;
use frontkit_core::{TruncatedSeries2, Var};
use proptest::prelude::*;

fn close(a: &TruncatedSeries2, b: &TruncatedSeries2, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol * (1.0 + a.max_abs().max(b.max_abs()))
}

/// Near-identity change with a random nonlinear part.
fn near_identity(r: usize) -> impl Strategy<Value = (TruncatedSeries2, TruncatedSeries2)> {
    (series0(r), series0(r), -0.5f64..0.5, -0.5f64..0.5).prop_map(move |(a, b, s, t)| {
        let strip = |x: &TruncatedSeries2| {
            let lin = &TruncatedSeries2::monomial(r, 1, 0, x.coeff(1, 0)) + &TruncatedSeries2::monomial(r, 0, 1, x.coeff(0, 1));
            (x - &lin).scale(0.3)
        };
        let su = &(&TruncatedSeries2::var_u(r) + &TruncatedSeries2::var_v(r).scale(s)) + &strip(&a);
        let sv = &(&TruncatedSeries2::var_v(r) + &TruncatedSeries2::var_u(r).scale(t)) + &strip(&b);
        (su, sv)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in series(5), b in series(5), c in series(5)) {
        prop_assert!(close(&(&a * &b), &(&b * &a), 1e-13));
        prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12));
        prop_assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), 1e-12));
        prop_assert!(close(&(&(&a + &b) + &c), &(&a + &(&b + &c)), 1e-14));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sqrt_squares_back(s in series(6), k in 0.5f64..3.0) {
        let s = s.add_scalar(k - s.constant_term());
        let y = s.sqrt().unwrap();
        prop_assert!(close(&(&y * &y), &s, 1e-10));
        prop_assert!(close(&(&s * &s.recip().unwrap()), &TruncatedSeries2::constant(6, 1.0), 1e-9));
    }

    #[test]
    fn composition_is_associative(f in series(5), g in near_identity(5), h in near_identity(5)) {
        let left = f.compose(&g.0, &g.1).unwrap().compose(&h.0, &h.1).unwrap();
        let inner = (g.0.compose(&h.0, &h.1).unwrap(), g.1.compose(&h.0, &h.1).unwrap());
        let right = f.compose(&inner.0, &inner.1).unwrap();
        prop_assert!(close(&left, &right, 1e-10));
    }

    #[test]
    fn inverse_is_two_sided(s in near_identity(6)) {
        let (tu, tv) = invert_coordinate_change(&s.0, &s.1).unwrap();
        let (u, v) = (TruncatedSeries2::var_u(6), TruncatedSeries2::var_v(6));
        prop_assert!(close(&s.0.compose(&tu, &tv).unwrap(), &u, 1e-9));
        prop_assert!(close(&s.1.compose(&tu, &tv).unwrap(), &v, 1e-9));
        prop_assert!(close(&tu.compose(&s.0, &s.1).unwrap(), &u, 1e-9));
        prop_assert!(close(&tv.compose(&s.0, &s.1).unwrap(), &v, 1e-9));
    }

    #[test]
    fn partials_commute(s in series(7)) {
        prop_assert_eq!(s.partial(Var::U).partial(Var::V), s.partial(Var::V).partial(Var::U));
        prop_assert_eq!(s.derivative(1, 1), s.partial(Var::U).partial(Var::V));
    }

    #[test]
    fn derivative_matches_finite_differences(s in series(6), u in -0.5f64..0.5, v in -0.5f64..0.5) {
        let h = 1e-4;
        let fd_u = (s.evaluate(u + h, v) - s.evaluate(u - h, v)) / (2.0 * h);
        let fd_v = (s.evaluate(u, v + h) - s.evaluate(u, v - h)) / (2.0 * h);
        let (du, dv) = (s.partial(Var::U).evaluate(u, v), s.partial(Var::V).evaluate(u, v));
        let scale = 1.0 + s.max_abs();
        prop_assert!((fd_u - du).abs() <= 1e-6 * scale, "{} {}", fd_u, du);
        prop_assert!((fd_v - dv).abs() <= 1e-6 * scale);
    }
}

//! Invariants of the two cuspidal edges `γ₁(u) = (u, 0)` and `γ₂(v) = (0, v)`.
//!
//! Every quantity is first divided through by the powers of `t` hidden in
//! `f_u = uφ₁`, `f_v = vφ₂`, so that `t·κ_s`, `t·κ_ν`, `t·κ_t` and `κ_c` are
//! smooth along the edge and can be expanded as series in `t`.
//!
//! On the `v` axis the pseudo-scalars `κ_s`, `κ_t`, `κ_c` carry an extra sign
//! so that swapping `u ↔ v` (together with `x ↦ −x`) swaps the two edges.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::germ::NormalFormGerm;
use crate::linalg::{self, Vec3};
use crate::series::{self, map3, TruncatedSeries1, TruncatedSeries2, Var};

/// Tolerance for the zero tests in [`boundedness_report`].
pub const BOUNDED_TOL: f64 = 1e-9;

/// Image of one singular curve, `t ↦ f(t, 0)` or `t ↦ f(0, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularCurve {
    pub axis: Var,
    pub image: [TruncatedSeries1; 3],
}

impl SingularCurve {
    pub fn new(nf: &NormalFormGerm, axis: Var) -> Self {
        let m = nf.expand();
        Self {
            axis,
            image: map3(m.components(), |c| c.restrict(axis)),
        }
    }

    pub fn eval(&self, t: f64) -> Vec3 {
        self.image.clone().map(|c| c.evaluate(t))
    }

    /// `k`-th derivative at `t = 0`.
    pub fn derivative_at_origin(&self, k: usize) -> Vec3 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.image.clone().map(|c| c.coeff(k) * fact)
    }
}

/// `κ_s`, `κ_ν`, `κ_t`, `κ_c` at one point of an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeInvariants {
    pub kappa_s: f64,
    pub kappa_nu: f64,
    pub kappa_t: f64,
    pub kappa_c: f64,
}

/// Series along one edge: `t·κ_s`, `t·κ_ν`, `t·κ_t` and `κ_c` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisAsymptotics {
    pub t_kappa_s: TruncatedSeries1,
    pub t_kappa_nu: TruncatedSeries1,
    pub t_kappa_t: TruncatedSeries1,
    pub kappa_c: TruncatedSeries1,
}

impl AxisAsymptotics {
    /// Coefficients of `1/t` (of `t⁰` for `κ_c`), in the order s, ν, t, c.
    pub fn leading(&self) -> [f64; 4] {
        [
            self.t_kappa_s.coeff(0),
            self.t_kappa_nu.coeff(0),
            self.t_kappa_t.coeff(0),
            self.kappa_c.coeff(0),
        ]
    }

    /// The next coefficient of each expansion.
    pub fn next(&self) -> [f64; 4] {
        [
            self.t_kappa_s.coeff(1),
            self.t_kappa_nu.coeff(1),
            self.t_kappa_t.coeff(1),
            self.kappa_c.coeff(1),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantAsymptotics {
    pub u_axis: AxisAsymptotics,
    pub v_axis: AxisAsymptotics,
}

impl InvariantAsymptotics {
    pub fn axis(&self, axis: Var) -> &AxisAsymptotics {
        match axis {
            Var::U => &self.u_axis,
            Var::V => &self.v_axis,
        }
    }
}

/// Bounded / vanishing flags for one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisBoundedness {
    pub kappa_s_bounded: bool,
    /// `κ_s → 0` at the vertex (bounded and the next order vanishes too).
    pub kappa_s_vanishes: bool,
    pub kappa_nu_bounded: bool,
    pub kappa_t_bounded: bool,
    pub kappa_c_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundednessReport {
    pub u_axis: AxisBoundedness,
    pub v_axis: AxisBoundedness,
}

/// Polynomial fields restricted to one axis.
struct EdgeFields {
    sign: f64,
    /// φ along the edge (`φ₁` on `u`, `φ₂` on `v`) and its `t`-derivative.
    p: [TruncatedSeries1; 3],
    p_t: [TruncatedSeries1; 3],
    /// The transverse field and its derivative along the edge.
    q: [TruncatedSeries1; 3],
    q_t: [TruncatedSeries1; 3],
    /// `φ₁ × φ₂`
    n: [TruncatedSeries1; 3],
    /// `γ̂''`, `γ̂'''`
    g2: [TruncatedSeries1; 3],
    g3: [TruncatedSeries1; 3],
}

impl EdgeFields {
    fn new(frame: &Frame, axis: Var) -> Self {
        let phi = frame.phi();
        let r = frame.germ().degree();
        let restrict = |s: &[TruncatedSeries2; 3]| map3(s, |c| c.restrict(axis).resize(r));
        let d = |s: &[TruncatedSeries2; 3], var| map3(s, |c| c.partial(var));
        let (p, q) = match axis {
            Var::U => (&phi.phi1, &phi.phi2),
            Var::V => (&phi.phi2, &phi.phi1),
        };
        let n = series::cross(&phi.phi1, &phi.phi2);
        let (du, dv) = match axis {
            Var::U => (1, 0),
            Var::V => (0, 1),
        };
        let m = frame.germ();
        Self {
            sign: if axis == Var::U { 1.0 } else { -1.0 },
            p: restrict(p),
            p_t: restrict(&d(p, axis)),
            q: restrict(q),
            q_t: restrict(&d(q, axis)),
            n: restrict(&n),
            g2: restrict(&m.derivative(2 * du, 2 * dv)),
            g3: restrict(&m.derivative(3 * du, 3 * dv)),
        }
    }

    fn at(&self, t: f64) -> EdgePoint {
        let e = |s: &[TruncatedSeries1; 3]| s.clone().map(|c| c.evaluate(t));
        EdgePoint {
            p: e(&self.p),
            p_t: e(&self.p_t),
            q: e(&self.q),
            q_t: e(&self.q_t),
            n: e(&self.n),
            g2: e(&self.g2),
            g3: e(&self.g3),
        }
    }

    fn series(&self, degree: usize) -> Result<AxisAsymptotics> {
        let cut = |s: &[TruncatedSeries1; 3]| map3(s, |c| c.resize(degree));
        let (p, p_t, q, q_t, n) = (cut(&self.p), cut(&self.p_t), cut(&self.q), cut(&self.q_t), cut(&self.n));
        let (g2, g3) = (cut(&self.g2), cut(&self.g3));
        let pp = series::dot(&p, &p);
        let nn = series::dot(&n, &n);
        let inv_delta = nn.powf(-0.5)?;
        let t_kappa_s = (&(&series::det(&p, &p_t, &n) * &inv_delta) * &pp.powf(-1.5)?).scale(self.sign);
        let t_kappa_nu = &(&series::dot(&p_t, &n) * &inv_delta) * &pp.recip()?;
        let num_t = &(&pp * &series::det(&p, &q, &q_t)) - &(&series::dot(&p, &q) * &series::det(&p, &q, &p_t));
        let t_kappa_t = (&num_t * &(&pp * &nn).recip()?).scale(self.sign);
        let kappa_c = (&(&series::det(&g2, &g3, &n) * &inv_delta) * &series::dot(&g2, &g2).powf(-1.25)?)
            .scale(self.sign);
        Ok(AxisAsymptotics {
            t_kappa_s,
            t_kappa_nu,
            t_kappa_t,
            kappa_c,
        })
    }
}

struct EdgePoint {
    p: Vec3,
    p_t: Vec3,
    q: Vec3,
    q_t: Vec3,
    n: Vec3,
    g2: Vec3,
    g3: Vec3,
}

impl EdgePoint {
    fn invariants(&self, t: f64, sign: f64) -> Result<EdgeInvariants> {
        let delta = linalg::norm(&self.n);
        if !(delta > 1e-12 * linalg::norm(&self.p) * linalg::norm(&self.q)) {
            return Err(Error::DegenerateFrame("phi1 and phi2 are parallel on the edge"));
        }
        let nu = linalg::scale(&self.n, 1.0 / delta);
        let pp = linalg::dot(&self.p, &self.p);
        let kappa_s = sign * linalg::det3(&self.p, &self.p_t, &nu) / (t * pp * libm::sqrt(pp));
        let kappa_nu = linalg::dot(&self.p_t, &nu) / (t * pp);
        let num_t = pp * linalg::det3(&self.p, &self.q, &self.q_t)
            - linalg::dot(&self.p, &self.q) * linalg::det3(&self.p, &self.q, &self.p_t);
        let kappa_t = sign * num_t / (t * pp * delta * delta);
        let g = linalg::dot(&self.g2, &self.g2);
        let kappa_c = sign * linalg::det3(&self.g2, &self.g3, &nu) / libm::pow(g, 1.25);
        Ok(EdgeInvariants {
            kappa_s,
            kappa_nu,
            kappa_t,
            kappa_c,
        })
    }
}

fn check_t(t: f64) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidParameter(alloc::format!(
            "edge parameter must be finite and nonzero, got {t}"
        )));
    }
    Ok(())
}

/// `(κ_s, κ_ν, κ_t, κ_c)` at parameter `t ≠ 0` on the given edge.
pub fn edge_invariants_at(nf: &NormalFormGerm, axis: Var, t: f64) -> Result<EdgeInvariants> {
    check_t(t)?;
    let frame = Frame::new(nf)?;
    let fields = EdgeFields::new(&frame, axis);
    fields.at(t).invariants(t, fields.sign)
}

/// Invariants at many parameters, sharing the setup.
pub fn sample_edge_invariants(nf: &NormalFormGerm, axis: Var, ts: &[f64]) -> Result<Vec<EdgeInvariants>> {
    let frame = Frame::new(nf)?;
    let fields = EdgeFields::new(&frame, axis);
    ts.iter()
        .map(|&t| {
            check_t(t)?;
            fields.at(t).invariants(t, fields.sign)
        })
        .collect()
}

/// Expansions of the rescaled invariants along both edges.
pub fn invariant_asymptotics(nf: &NormalFormGerm) -> Result<InvariantAsymptotics> {
    let frame = Frame::new(nf)?;
    let degree = nf.degree() - 2;
    Ok(InvariantAsymptotics {
        u_axis: EdgeFields::new(&frame, Var::U).series(degree)?,
        v_axis: EdgeFields::new(&frame, Var::V).series(degree)?,
    })
}

/// Which invariants stay bounded at the vertex, from the jet data.
pub fn boundedness_report(nf: &NormalFormGerm) -> BoundednessReport {
    let a = nf.a();
    let axis = |var: Var| {
        let b = nf.b().axis(var);
        let c0 = nf.c().axis(var).coeff(0);
        let zero = |x: f64| x.abs() <= BOUNDED_TOL;
        let second = 9.0 * (a * a - 1.0) * c0 * c0 - 32.0 * a * b.coeff(1);
        AxisBoundedness {
            kappa_s_bounded: zero(b.coeff(0)),
            kappa_s_vanishes: zero(b.coeff(0)) && zero(second),
            kappa_nu_bounded: zero(c0),
            kappa_t_bounded: zero((a * a - 1.0) * c0),
            kappa_c_zero: zero(b.coeff(0)),
        }
    };
    BoundednessReport {
        u_axis: axis(Var::U),
        v_axis: axis(Var::V),
    }
}

/// Angle between `γ̂₁''(0)` and `γ̂₂''(0)`.
pub fn vertex_angle(nf: &NormalFormGerm) -> f64 {
    let m = nf.expand();
    linalg::angle(&m.derivative_at(2, 0, 0.0, 0.0), &m.derivative_at(0, 2, 0.0, 0.0))
}

/// Planar cuspidal curvatures `Ω` of the edges projected along `ν(0)` and
/// along the center line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedCurvatures {
    pub gamma1_normal: f64,
    pub gamma1_center: f64,
    pub gamma2_normal: f64,
    pub gamma2_center: f64,
}

fn plane_cusp(g2: [f64; 2], g3: [f64; 2]) -> Result<f64> {
    let n2 = g2[0] * g2[0] + g2[1] * g2[1];
    if !(n2 > 1e-24) {
        return Err(Error::DegenerateFrame("projected curve has no 3/2-cusp"));
    }
    Ok((g2[0] * g3[1] - g2[1] * g3[0]) / libm::pow(n2, 1.25))
}

pub fn projected_cuspidal_curvatures(nf: &NormalFormGerm) -> Result<ProjectedCurvatures> {
    let omega = |axis: Var, keep: usize| {
        let curve = SingularCurve::new(nf, axis);
        let (g2, g3) = (curve.derivative_at_origin(2), curve.derivative_at_origin(3));
        let sign = if axis == Var::U { 1.0 } else { -1.0 };
        Ok::<f64, Error>(sign * plane_cusp([g2[0], g2[keep]], [g3[0], g3[keep]])?)
    };
    Ok(ProjectedCurvatures {
        gamma1_normal: omega(Var::U, 1)?,
        gamma1_center: omega(Var::U, 2)?,
        gamma2_normal: omega(Var::V, 1)?,
        gamma2_center: omega(Var::V, 2)?,
    })
}

/// Cuspidal curvature of the surface along an edge, taken across the edge:
/// `|f_ξ|^{3/2} det(f_ξ, f_ηη, f_ηηη)/|f_ξ × f_ηη|^{5/2}` with `ξ` the edge
/// direction and `η` the null direction.
pub fn transverse_cuspidal_curvature(nf: &NormalFormGerm, axis: Var, t: f64) -> Result<f64> {
    check_t(t)?;
    let m = nf.expand();
    let (u, v) = match axis {
        Var::U => (t, 0.0),
        Var::V => (0.0, t),
    };
    let (xi, eta2, eta3) = match axis {
        Var::U => (m.derivative_at(1, 0, u, v), m.derivative_at(0, 2, u, v), m.derivative_at(0, 3, u, v)),
        Var::V => (m.derivative_at(0, 1, u, v), m.derivative_at(2, 0, u, v), m.derivative_at(3, 0, u, v)),
    };
    let w = linalg::norm(&linalg::cross(&xi, &eta2));
    if !(w > 0.0) {
        return Err(Error::DegenerateFrame("edge is not a cuspidal edge here"));
    }
    let sign = if axis == Var::U { 1.0 } else { -1.0 };
    Ok(sign * libm::pow(linalg::norm(&xi), 1.5) * linalg::det3(&xi, &eta2, &eta3) / libm::pow(w, 2.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::tests::focal_example;
    use crate::germ::SplitSeries;

    fn t1(c: &[f64]) -> TruncatedSeries1 {
        TruncatedSeries1::from_coeffs(c.to_vec())
    }

    fn germ(a: f64, b1: &[f64], b3: &[f64], c1: &[f64], c3: &[f64]) -> NormalFormGerm {
        NormalFormGerm::from_parts(a, t1(b1), TruncatedSeries2::zero(2), t1(b3), t1(c1), TruncatedSeries2::zero(2), t1(c3), 6)
            .unwrap()
    }

    fn general() -> NormalFormGerm {
        let b2 = TruncatedSeries2::from_terms(2, [(0, 0, 0.4), (1, 0, -0.3)]).unwrap();
        let c2 = TruncatedSeries2::from_terms(2, [(0, 1, 0.7)]).unwrap();
        NormalFormGerm::from_parts(1.6, t1(&[0.8, -0.5, 0.2]), b2, t1(&[-0.6, 0.3]), t1(&[1.1, 0.4]), c2, t1(&[0.7, -0.2, 0.5]), 7)
            .unwrap()
    }

    /// Definitions applied to raw derivatives of `f`, no factoring.
    fn raw(nf: &NormalFormGerm, axis: Var, t: f64) -> EdgeInvariants {
        let m = nf.expand();
        let frame = Frame::new(nf).unwrap();
        let (u, v, s, ax) = match axis {
            Var::U => (t, 0.0, libm::copysign(1.0, t), 1.0),
            Var::V => (0.0, t, -libm::copysign(1.0, t), -1.0),
        };
        let nu = frame.unit_normal(u, v).unwrap();
        let d = |i, j| m.derivative_at(i, j, u, v);
        let (g1, g2, g3) = match axis {
            Var::U => (d(1, 0), d(2, 0), d(3, 0)),
            Var::V => (d(0, 1), d(0, 2), d(0, 3)),
        };
        let n1 = linalg::norm(&g1);
        let (fe, fee, fxee) = match axis {
            Var::U => (d(1, 0), d(0, 2), d(1, 2)),
            Var::V => (d(0, 1), d(2, 0), d(2, 1)),
        };
        let ff = linalg::dot(&fe, &fe);
        let w = linalg::cross(&fe, &fee);
        let kt = (ff * linalg::det3(&fe, &fee, &fxee) - linalg::dot(&fe, &fee) * linalg::det3(&fe, &fee, &g2))
            / (ff * linalg::dot(&w, &w));
        EdgeInvariants {
            kappa_s: s * linalg::det3(&g1, &g2, &nu) / (n1 * n1 * n1),
            kappa_nu: linalg::dot(&g2, &nu) / (n1 * n1),
            kappa_t: ax * kt,
            kappa_c: ax * linalg::det3(&g2, &g3, &nu) / libm::pow(linalg::dot(&g2, &g2), 1.25),
        }
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + y.abs())
    }

    #[test]
    fn factored_forms_match_raw_definitions() {
        let nf = general();
        for axis in [Var::U, Var::V] {
            for t in [0.3, -0.2, 0.05, -0.01] {
                let a = edge_invariants_at(&nf, axis, t).unwrap();
                let b = raw(&nf, axis, t);
                assert!(close(a.kappa_s, b.kappa_s, 1e-9), "{axis:?} {t} {a:?} {b:?}");
                assert!(close(a.kappa_nu, b.kappa_nu, 1e-9));
                assert!(close(a.kappa_t, b.kappa_t, 1e-9));
                assert!(close(a.kappa_c, b.kappa_c, 1e-9));
            }
        }
    }

    #[test]
    fn zero_parameter_is_rejected() {
        assert!(edge_invariants_at(&general(), Var::U, 0.0).is_err());
    }

    #[test]
    fn leading_coefficients_have_closed_forms() {
        let nf = general();
        let a = nf.a();
        let s = 1.0 + a * a;
        let asy = invariant_asymptotics(&nf).unwrap();
        for (axis, b0, c0) in [(Var::U, 0.8, 1.1), (Var::V, -0.6, 0.7)] {
            let [ks, kn, kt, kc] = asy.axis(axis).leading();
            assert!(close(ks, 0.75 * b0 / libm::pow(s, 1.5), 1e-12));
            assert!(close(kn, 0.75 * c0 / s, 1e-12));
            assert!(close(kt, 0.375 * (1.0 - a * a) * c0 / (a * s), 1e-12));
            assert!(close(kc, 3.0 / libm::sqrt(2.0) * b0 / libm::pow(s, 1.25), 1e-12));
        }
    }

    #[test]
    fn series_agree_with_pointwise_values() {
        let nf = general();
        let asy = invariant_asymptotics(&nf).unwrap();
        for axis in [Var::U, Var::V] {
            let s = asy.axis(axis);
            for t in [1e-2, -1e-3] {
                let p = edge_invariants_at(&nf, axis, t).unwrap();
                let tol = 1e-9;
                assert!(close(t * p.kappa_s, s.t_kappa_s.evaluate(t), tol));
                assert!(close(t * p.kappa_nu, s.t_kappa_nu.evaluate(t), tol));
                assert!(close(t * p.kappa_t, s.t_kappa_t.evaluate(t), tol));
                assert!(close(p.kappa_c, s.kappa_c.evaluate(t), tol));
            }
        }
    }

    #[test]
    fn sign_examples() {
        let f1 = germ(1.0, &[1.0], &[1.0], &[1.0], &[1.0]);
        let f2 = germ(1.0, &[1.0], &[-1.0], &[1.0], &[1.0]);
        for t in [0.01, -0.01] {
            let k = edge_invariants_at(&f1, Var::U, t).unwrap().kappa_s;
            assert_eq!(k.signum(), t.signum());
            let k1 = edge_invariants_at(&f1, Var::V, t).unwrap().kappa_s;
            let k2 = edge_invariants_at(&f2, Var::V, t).unwrap().kappa_s;
            assert!(k1 * k2 < 0.0);
        }
    }

    #[test]
    fn torsion_bounded_at_unit_a() {
        let nf = germ(1.0, &[0.5], &[0.5], &[2.0, 1.0], &[1.0]);
        let asy = invariant_asymptotics(&nf).unwrap();
        assert!(asy.u_axis.leading()[2].abs() < 1e-13);
        assert!(asy.v_axis.leading()[2].abs() < 1e-13);
        assert!(boundedness_report(&nf).u_axis.kappa_t_bounded);
    }

    #[test]
    fn vanishing_b1_kills_kappa_s_and_kappa_c() {
        let nf = germ(2.0, &[0.0, 0.3], &[1.0], &[1.0], &[1.0]);
        let asy = invariant_asymptotics(&nf).unwrap();
        assert!(asy.u_axis.leading()[0].abs() < 1e-13);
        assert!(asy.u_axis.leading()[3].abs() < 1e-13);
        let rep = boundedness_report(&nf);
        assert!(rep.u_axis.kappa_s_bounded && rep.u_axis.kappa_c_zero);
        assert!(!rep.v_axis.kappa_s_bounded);
        let model = NormalFormGerm::model(1.0, 6).unwrap();
        assert!(boundedness_report(&model).u_axis.kappa_s_bounded);
        assert!(!boundedness_report(&model).u_axis.kappa_nu_bounded);
    }

    #[test]
    fn second_order_condition_matches_series() {
        // with b₁(0) = 0 the next coefficient of tκ_s is ∝ 9(a²−1)c₁² − 32ab₁'
        let a: f64 = 2.0;
        let c0: f64 = 1.5;
        let crit = 9.0 * (a * a - 1.0) * c0 * c0 / (32.0 * a);
        let on = germ(a, &[0.0, crit], &[1.0], &[c0], &[1.0]);
        let off = germ(a, &[0.0, crit + 0.1], &[1.0], &[c0], &[1.0]);
        let next = |nf: &NormalFormGerm| invariant_asymptotics(nf).unwrap().u_axis.next()[0];
        assert!(next(&on).abs() < 1e-12);
        assert!(next(&off).abs() > 1e-3);
        assert!(boundedness_report(&on).u_axis.kappa_s_vanishes);
        assert!(!boundedness_report(&off).u_axis.kappa_s_vanishes);
    }

    #[test]
    fn vertex_angle_examples() {
        let cos = |a: f64| libm::cos(vertex_angle(&germ(a, &[1.0], &[1.0], &[1.0], &[1.0])));
        assert!(cos(1.0).abs() < 1e-15);
        assert!((cos(2.0) - 0.6).abs() < 1e-12);
        assert!((cos(10.0) - 99.0 / 101.0).abs() < 1e-12);
        assert!((libm::cos(vertex_angle(&focal_example(6))) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn projected_curvatures() {
        let nf = germ(1.0, &[2.0], &[0.5], &[1.0], &[3.0]);
        let om = projected_cuspidal_curvatures(&nf).unwrap();
        let k = 3.0 / libm::sqrt(2.0);
        let s = libm::pow(2.0, 1.25);
        assert!(close(om.gamma1_normal, k * 2.0 / s, 1e-12));
        assert!(close(om.gamma2_normal, k * 0.5 / s, 1e-12));
        assert!(close(om.gamma1_center, k, 1e-12));
        assert!(close(om.gamma2_center, k * 3.0, 1e-12));
        let doubled = germ(1.0, &[4.0], &[0.5], &[1.0], &[3.0]);
        let om2 = projected_cuspidal_curvatures(&doubled).unwrap();
        assert!(close(om2.gamma1_normal, 2.0 * om.gamma1_normal, 1e-12));
        let flat = germ(1.0, &[0.0], &[0.5], &[1.0], &[3.0]);
        assert_eq!(projected_cuspidal_curvatures(&flat).unwrap().gamma1_normal, 0.0);
    }

    #[test]
    fn swapping_axes_swaps_edges() {
        let nf = general();
        let swap = |s: &SplitSeries| SplitSeries {
            along_u: s.along_v.clone(),
            mixed: TruncatedSeries2::from_fn(s.mixed.degree(), |i, j| s.mixed.coeff(j, i)),
            along_v: s.along_u.clone(),
        };
        let sw = NormalFormGerm::new(nf.a(), swap(nf.b()), swap(nf.c()), nf.degree()).unwrap();
        for t in [0.1, -0.05] {
            let a = edge_invariants_at(&nf, Var::U, t).unwrap();
            let b = edge_invariants_at(&sw, Var::V, t).unwrap();
            for (x, y) in [(a.kappa_s, b.kappa_s), (a.kappa_nu, b.kappa_nu), (a.kappa_t, b.kappa_t), (a.kappa_c, b.kappa_c)] {
                assert!(close(x, y, 1e-10), "{t} {x} {y}");
            }
        }
    }

    #[test]
    fn transverse_limit() {
        let nf = general();
        let a = nf.a();
        let want = 0.75 * 0.7 * libm::pow(1.0 + a * a, 0.75) / libm::pow(a, 1.5);
        let k = transverse_cuspidal_curvature(&nf, Var::U, 1e-6).unwrap();
        assert!(close(k, want, 1e-5), "{k} {want}");
    }
}

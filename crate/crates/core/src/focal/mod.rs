//! Distance-squared functions `d_x = |x − f|²/2 − |x|²/2` of a normal form and
//! the stratification of target space by the singularity type of `d_x` at 0.
//!
//! The Hessian of `d_x` is `diag(−2(x₁ + ax₂), 2(x₁ − ax₂))`, so the focal set
//! is the pair of planes `x₁ = ∓ax₂`. On `x₁ = −ax₂` the kernel is `∂_u` and
//! the edge data `(b₁, c₁)` decide the type, on `x₁ = ax₂` it is `∂_v` with
//! `(b₃, c₃)`. Writing `β, γ` for the relevant `b, c` series:
//!
//! - `A3` line: `x₃ = −x₂β(0)/γ(0)`,
//! - `A4` point on it: `x₂ = (1 + a²)γ(0) / (2(γ(0)β'(0) − β(0)γ'(0)))`,
//! - past that the fifth-order coefficient is
//!   `((1 + a²)(βγ'' − γβ'') − 4aβ(βγ' − γβ'))/(4(γβ' − βγ'))` at 0.

mod recognize;

use alloc::vec::Vec;

pub use recognize::{
    cubic_discriminant, quartic_discriminant, recognize_function_singularity, recognize_with_tol, RECOGNIZER_TOL,
};

use crate::error::{Error, Result};
use crate::germ::NormalFormGerm;
use crate::linalg::{self, Vec3};
use crate::series::{self, TruncatedSeries1, TruncatedSeries2, Var};

/// Plane membership tolerance, relative to `1 + |x|`.
pub const PLANE_TOL: f64 = 1e-9;
/// Offsets between [`PLANE_TOL`] and this are reported as ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e-6;
/// Relative tolerance of the closed-form equality tests.
pub const EQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FocalLabel {
    A1,
    A2,
    A3,
    A4,
    D4,
    X9,
    Unclassified,
}

impl FocalLabel {
    pub fn name(self) -> &'static str {
        match self {
            FocalLabel::A1 => "A1",
            FocalLabel::A2 => "A2",
            FocalLabel::A3 => "A3",
            FocalLabel::A4 => "A4",
            FocalLabel::D4 => "D4",
            FocalLabel::X9 => "X9",
            FocalLabel::Unclassified => "Unclassified",
        }
    }
}

/// A label with the quantity that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalClass {
    pub label: FocalLabel,
    pub witness: &'static str,
    pub witness_value: f64,
}

impl FocalClass {
    pub fn new(label: FocalLabel, witness: &'static str, witness_value: f64) -> Self {
        Self {
            label,
            witness,
            witness_value,
        }
    }
}

/// `C_{m,n}(h)`: rows `j = n, …, 0`, columns `i = 0, …, m`, entry `a_{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl CoeffMatrix {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.rows[self.n - j][i]
    }
}

pub fn coeff_matrix(h: &TruncatedSeries2, m: usize, n: usize) -> Result<CoeffMatrix> {
    if m + n > h.degree() {
        return Err(Error::TermBeyondDegree {
            i: m,
            j: n,
            degree: h.degree(),
        });
    }
    let rows = (0..=n).rev().map(|j| (0..=m).map(|i| h.coeff(i, j)).collect()).collect();
    Ok(CoeffMatrix { m, n, rows })
}

/// Jet of `d_x` to degree `r`, without its constant term.
pub fn dist_sq_jet(nf: &NormalFormGerm, x: &Vec3, r: usize) -> Result<TruncatedSeries2> {
    let m = nf.with_degree(r)?.expand();
    let f = m.components();
    let lin = &(&f[0].scale(x[0]) + &f[1].scale(x[1])) + &f[2].scale(x[2]);
    Ok(&series::dot(f, f).scale(0.5) - &lin)
}

/// One sheet `x₁ = ∓ax₂` of the focal set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalPlane {
    /// Normal `(1, ±a, 0)`; the plane is `normal · x = 0`.
    pub normal: Vec3,
    /// Source direction of the Hessian kernel on this plane.
    pub kernel: Var,
}

impl FocalPlane {
    pub fn offset(&self, x: &Vec3) -> f64 {
        linalg::dot(&self.normal, x)
    }
}

/// `x₁ = −ax₂` (kernel `u`) and `x₁ = ax₂` (kernel `v`).
pub fn focal_planes(nf: &NormalFormGerm) -> [FocalPlane; 2] {
    let a = nf.a();
    [
        FocalPlane {
            normal: [1.0, a, 0.0],
            kernel: Var::U,
        },
        FocalPlane {
            normal: [1.0, -a, 0.0],
            kernel: Var::V,
        },
    ]
}

/// Edge data `(β, γ)` that govern `d_x` on a plane.
fn branch(nf: &NormalFormGerm, plane: &FocalPlane) -> (TruncatedSeries1, TruncatedSeries1) {
    (nf.b().axis(plane.kernel).resize(2), nf.c().axis(plane.kernel).resize(2))
}

/// `x₃ = slope·x₂` is the `A3` line on the plane.
pub fn a3_slope(nf: &NormalFormGerm, plane: &FocalPlane) -> f64 {
    let (b, c) = branch(nf, plane);
    -b.coeff(0) / c.coeff(0)
}

/// The `A4` point on the `A3` line, if the line has one.
pub fn a4_point(nf: &NormalFormGerm, plane: &FocalPlane) -> Option<Vec3> {
    let (b, c) = branch(nf, plane);
    let den = 2.0 * (c.coeff(0) * b.coeff(1) - b.coeff(0) * c.coeff(1));
    if den.abs() <= EQUALITY_TOL * (b.coeff(0).abs() + c.coeff(0).abs()) * (b.coeff(1).abs() + c.coeff(1).abs()) {
        return None;
    }
    let a = nf.a();
    let x2 = (1.0 + a * a) * c.coeff(0) / den;
    let x1 = -plane.normal[1] * x2;
    Some([x1, x2, a3_slope(nf, plane) * x2])
}

/// Fifth-order coefficient of `d_x` after splitting, at the `A4` point.
pub fn a5_coefficient(nf: &NormalFormGerm, plane: &FocalPlane) -> f64 {
    let (b, c) = branch(nf, plane);
    let a = nf.a();
    let (b0, b1, b2) = (b.coeff(0), b.coeff(1), 2.0 * b.coeff(2));
    let (c0, c1, c2) = (c.coeff(0), c.coeff(1), 2.0 * c.coeff(2));
    ((1.0 + a * a) * (b0 * c2 - c0 * b2) - 4.0 * a * b0 * (b0 * c1 - c0 * b1)) / (4.0 * (c0 * b1 - b0 * c1))
}

fn near_zero(value: f64, scale: f64) -> bool {
    value.abs() <= EQUALITY_TOL * scale
}

/// Which plane(s) `x` lies on, with the ambiguity band enforced.
fn membership(nf: &NormalFormGerm, x: &Vec3) -> Result<[bool; 2]> {
    let s = 1.0 + linalg::norm(x);
    let planes = focal_planes(nf);
    let mut on = [false; 2];
    for (k, p) in planes.iter().enumerate() {
        let d = p.offset(x).abs();
        if d <= PLANE_TOL * s {
            on[k] = true;
        } else if d <= AMBIGUITY_BAND * s {
            return Err(Error::AmbiguousMembership {
                plane: k as u8 + 1,
                offset: p.offset(x),
            });
        }
    }
    Ok(on)
}

/// Closed-form decision tree only, without the recognizer cross-check.
pub fn classify_closed_form(nf: &NormalFormGerm, x: &Vec3) -> Result<FocalClass> {
    let c1 = nf.c().along_u.coeff(0);
    let c3 = nf.c().along_v.coeff(0);
    if !(c1 > 0.0 && c3 > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "focal classification needs c₁(0), c₃(0) > 0, got {c1}, {c3}"
        )));
    }
    let a = nf.a();
    let planes = focal_planes(nf);
    match membership(nf, x)? {
        [false, false] => {
            let det = -4.0 * planes[0].offset(x) * planes[1].offset(x);
            Ok(FocalClass::new(FocalLabel::A1, "hessian_det", det))
        }
        [true, true] => {
            let s = 1.0 + linalg::norm(x);
            if x[2].abs() <= PLANE_TOL * s {
                let q = [1.0 + a * a, 0.0, 2.0 * (a * a - 1.0), 0.0, 1.0 + a * a].map(|c| 0.5 * c);
                Ok(FocalClass::new(FocalLabel::X9, "quartic_discriminant", quartic_discriminant(q)))
            } else if x[2].abs() <= AMBIGUITY_BAND * s {
                Err(Error::AmbiguousMembership { plane: 3, offset: x[2] })
            } else {
                let cubic = [-x[2] * c1, 0.0, 0.0, -x[2] * c3];
                Ok(FocalClass::new(FocalLabel::D4, "cubic_discriminant", cubic_discriminant(cubic)))
            }
        }
        on => {
            let plane = if on[0] { planes[0] } else { planes[1] };
            let (b, c) = branch(nf, &plane);
            let (b0, b1, c0, c1) = (b.coeff(0), b.coeff(1), c.coeff(0), c.coeff(1));
            let g3 = -(b0 * x[1] + c0 * x[2]);
            if !near_zero(g3, (b0 * x[1]).abs() + (c0 * x[2]).abs()) {
                return Ok(FocalClass::new(FocalLabel::A2, "g3", g3));
            }
            let t = 2.0 * x[1] * (b0 * c1 - b1 * c0);
            let g4 = (t + c0 * (1.0 + a * a)) / (2.0 * c0);
            if !near_zero(t + c0 * (1.0 + a * a), t.abs() + c0 * (1.0 + a * a)) {
                return Ok(FocalClass::new(FocalLabel::A3, "g4", g4));
            }
            let g5 = a5_coefficient(nf, &plane);
            let scale = {
                let (bb, cc) = (b.coeff(2).abs() + b1.abs() + b0.abs(), c.coeff(2).abs() + c1.abs() + c0.abs());
                (1.0 + a * a) * bb * cc / (4.0 * (c0 * b1 - b0 * c1)).abs()
            };
            if !near_zero(g5, scale) {
                Ok(FocalClass::new(FocalLabel::A4, "g5", g5))
            } else {
                Ok(FocalClass::new(FocalLabel::Unclassified, "g5", g5))
            }
        }
    }
}

/// Jet degree used for the recognizer cross-check.
pub fn check_degree(nf: &NormalFormGerm) -> usize {
    nf.degree().max(6)
}

/// Closed-form classification of `d_x`, cross-checked against the recognizer.
pub fn classify_focal_point(nf: &NormalFormGerm, x: &Vec3) -> Result<FocalClass> {
    let closed = classify_closed_form(nf, x)?;
    let jet = dist_sq_jet(nf, x, check_degree(nf))?;
    let oracle = recognize_function_singularity(&jet);
    if oracle.label != closed.label {
        return Err(Error::ClassifierDisagreement {
            closed_form: closed.label.name(),
            recognizer: oracle.label.name(),
        });
    }
    Ok(closed)
}

/// Axis-aligned lattice `lo + k·step` inside `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub lo: Vec3,
    pub hi: Vec3,
    pub step: f64,
}

impl ScanGrid {
    pub fn points(&self) -> Result<Vec<Vec3>> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!("scan step must be positive, got {}", self.step)));
        }
        let count = |k: usize| {
            let n = (self.hi[k] - self.lo[k]) / self.step;
            if n < -1e-9 {
                None
            } else {
                Some(libm::floor(n + 1e-9) as usize + 1)
            }
        };
        let (Some(n0), Some(n1), Some(n2)) = (count(0), count(1), count(2)) else {
            return Err(Error::InvalidParameter("scan box has hi < lo".into()));
        };
        let at = |k: usize, i: usize| self.lo[k] + self.step * i as f64;
        let mut out = Vec::with_capacity(n0 * n1 * n2);
        for i in 0..n0 {
            for j in 0..n1 {
                for k in 0..n2 {
                    out.push([at(0, i), at(1, j), at(2, k)]);
                }
            }
        }
        Ok(out)
    }
}

/// Classification of every lattice point; errors stay attached to their point.
pub fn focal_scan(nf: &NormalFormGerm, grid: &ScanGrid) -> Result<Vec<(Vec3, Result<FocalClass>)>> {
    Ok(grid.points()?.into_iter().map(|x| (x, classify_focal_point(nf, &x))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::tests::focal_example;

    fn label(nf: &NormalFormGerm, x: Vec3) -> FocalLabel {
        classify_focal_point(nf, &x).unwrap().label
    }

    #[test]
    fn hessian_and_cubic_of_the_jet() {
        let nf = focal_example(6);
        let x = [0.3, -0.7, 1.1];
        let h = dist_sq_jet(&nf, &x, 6).unwrap();
        let a = nf.a();
        assert!((h.coeff(2, 0) + (x[0] + a * x[1])).abs() < 1e-15);
        assert!((h.coeff(0, 2) - (x[0] - a * x[1])).abs() < 1e-15);
        assert_eq!(h.coeff(1, 1), 0.0);
        // finite differences of the evaluated function
        let d = |u: f64, v: f64| {
            let f = nf.expand().eval(u, v);
            0.5 * linalg::dot(&linalg::sub(&x, &f), &linalg::sub(&x, &f)) - 0.5 * linalg::dot(&x, &x)
        };
        let e = 1e-4;
        let huu = (d(e, 0.0) - 2.0 * d(0.0, 0.0) + d(-e, 0.0)) / (e * e);
        assert!((huu - 2.0 * h.coeff(2, 0)).abs() < 1e-6);
        let model = NormalFormGerm::model(1.0, 6).unwrap();
        let h = dist_sq_jet(&model, &[0.0, 0.0, 1.0], 6).unwrap();
        assert_eq!((h.coeff(3, 0), h.coeff(0, 3)), (-1.0, -1.0));
    }

    #[test]
    fn coefficient_matrices() {
        let h = TruncatedSeries2::from_terms(6, [(3, 0, 1.0), (0, 3, 1.0)]).unwrap();
        let c = coeff_matrix(&h, 3, 3).unwrap();
        assert_eq!(c.rows[3], [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(c.rows[0], [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(c.entry(3, 0), 1.0);
        assert!(coeff_matrix(&h, 4, 3).is_err());
        // bottom-right of C_{3,2}(d_x) on x₁ = −ax₂ is −x₂b₁(0) − x₃c₁(0)
        let nf = focal_example(6);
        let x = [-2.0 * 0.4, 0.4, 0.9];
        let c = coeff_matrix(&dist_sq_jet(&nf, &x, 6).unwrap(), 3, 2).unwrap();
        assert!((c.rows[2][3] - (-0.4 * 1.0 - 0.9 * 1.0)).abs() < 1e-15);
        let g = TruncatedSeries2::from_terms(6, [(1, 2, 2.0)]).unwrap();
        let sum = coeff_matrix(&(&h.scale(3.0) + &g), 3, 3).unwrap();
        let (ch, cg) = (coeff_matrix(&h, 3, 3).unwrap(), coeff_matrix(&g, 3, 3).unwrap());
        for j in 0..4 {
            for i in 0..4 {
                assert_eq!(sum.rows[j][i], 3.0 * ch.rows[j][i] + cg.rows[j][i]);
            }
        }
    }

    #[test]
    fn example_stratification() {
        let nf = focal_example(6);
        assert_eq!(label(&nf, [0.5, 0.1, 0.2]), FocalLabel::A1);
        assert_eq!(label(&nf, [0.6, 0.3, 0.2]), FocalLabel::A2);
        assert_eq!(label(&nf, [-0.6, 0.3, 0.2]), FocalLabel::A2);
        assert_eq!(label(&nf, [0.6, 0.3, -0.3]), FocalLabel::A3);
        assert_eq!(label(&nf, [5.0 / 3.0, 5.0 / 6.0, -5.0 / 6.0]), FocalLabel::A4);
        assert_eq!(label(&nf, [-5.0 / 3.0, 5.0 / 6.0, -5.0 / 6.0]), FocalLabel::A3);
        assert_eq!(label(&nf, [5.0, -2.5, 2.5]), FocalLabel::A4);
        assert_eq!(label(&nf, [0.0, 0.0, 1.0]), FocalLabel::D4);
        assert_eq!(label(&nf, [0.0, 0.0, 0.0]), FocalLabel::X9);
        let [minus, plus] = focal_planes(&nf);
        assert_eq!(minus.normal, [1.0, 2.0, 0.0]);
        assert_eq!(plus.normal, [1.0, -2.0, 0.0]);
        let p = a4_point(&nf, &plus).unwrap();
        assert!((p[1] - 5.0 / 6.0).abs() < 1e-15 && (p[0] - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn branch_pairing_matches_recognizer() {
        // kernel direction of the Hessian on each plane, from the jet
        let nf = focal_example(6);
        for plane in focal_planes(&nf) {
            let x2 = 0.7;
            let x = [-plane.normal[1] * x2, x2, 0.1];
            let h = dist_sq_jet(&nf, &x, 6).unwrap();
            let (huu, hvv) = (h.coeff(2, 0), h.coeff(0, 2));
            match plane.kernel {
                Var::U => assert!(huu.abs() < 1e-15 && hvv.abs() > 0.1),
                Var::V => assert!(hvv.abs() < 1e-15 && huu.abs() > 0.1),
            }
            let a4 = a4_point(&nf, &plane).unwrap();
            let jet = dist_sq_jet(&nf, &a4, 6).unwrap();
            assert_eq!(recognize_function_singularity(&jet).label, FocalLabel::A4);
        }
    }

    #[test]
    fn a5_points_are_unclassified() {
        // choose b₁'' so that the fifth-order coefficient vanishes
        let t1 = |c: &[f64]| TruncatedSeries1::from_coeffs(c.to_vec());
        let (a, b0, b1, c0, c1, c2) = (1.5, 0.8, 0.3, 1.2, -0.4, 0.5);
        let half_b2 = ((1.0 + a * a) * b0 * c2 - 4.0 * a * b0 * (b0 * c1 - c0 * b1)) / ((1.0 + a * a) * c0);
        let nf = NormalFormGerm::from_parts(
            a,
            t1(&[b0, b1, 0.5 * half_b2]),
            TruncatedSeries2::zero(2),
            t1(&[0.2]),
            t1(&[c0, c1, 0.5 * c2]),
            TruncatedSeries2::zero(2),
            t1(&[0.9]),
            6,
        )
        .unwrap();
        let plane = focal_planes(&nf)[0];
        assert!(a5_coefficient(&nf, &plane).abs() < 1e-14);
        let x = a4_point(&nf, &plane).unwrap();
        assert_eq!(label(&nf, x), FocalLabel::Unclassified);
    }

    #[test]
    fn ambiguous_membership_is_reported() {
        let nf = focal_example(6);
        let err = classify_focal_point(&nf, &[0.6 + 1e-7, 0.3, 0.2]).unwrap_err();
        assert!(matches!(err, Error::AmbiguousMembership { plane: 2, .. }));
        let bad = NormalFormGerm::from_parts(
            1.0,
            TruncatedSeries1::from_coeffs([1.0].to_vec()),
            TruncatedSeries2::zero(0),
            TruncatedSeries1::from_coeffs([1.0].to_vec()),
            TruncatedSeries1::from_coeffs([0.0].to_vec()),
            TruncatedSeries2::zero(0),
            TruncatedSeries1::from_coeffs([1.0].to_vec()),
            5,
        )
        .unwrap();
        assert!(matches!(classify_focal_point(&bad, &[0.0; 3]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn eigenvalue_sign_on_the_minus_plane() {
        let nf = focal_example(6);
        let x2 = 0.4;
        let h = dist_sq_jet(&nf, &[-2.0 * x2, x2, 0.0], 6).unwrap();
        assert!((2.0 * h.coeff(0, 2) + 4.0 * 2.0 * x2).abs() < 1e-14);
    }

    #[test]
    fn thresholds_move_continuously() {
        let nf = focal_example(6);
        let plane = focal_planes(&nf)[1];
        let t1 = |c: &[f64]| TruncatedSeries1::from_coeffs(c.to_vec());
        let nudged = NormalFormGerm::from_parts(
            2.0,
            t1(&[1.0, 0.0]),
            TruncatedSeries2::zero(2),
            t1(&[1.0 + 1e-6, 4.0]),
            t1(&[1.0, 1.0]),
            TruncatedSeries2::zero(2),
            t1(&[1.0, 1.0 - 1e-6]),
            6,
        )
        .unwrap();
        assert!((a3_slope(&nudged, &plane) - a3_slope(&nf, &plane)).abs() < 1e-5);
        let (p, q) = (a4_point(&nf, &plane).unwrap(), a4_point(&nudged, &plane).unwrap());
        assert!(linalg::norm(&linalg::sub(&p, &q)) < 1e-5);
    }

    #[test]
    fn scan_covers_the_stratification() {
        let nf = focal_example(6);
        let grid = ScanGrid {
            lo: [-2.0, -1.0, -1.0],
            hi: [2.0, 1.0, 1.0],
            step: 1.0 / 6.0,
        };
        let pts = focal_scan(&nf, &grid).unwrap();
        assert_eq!(pts.len(), 25 * 13 * 13);
        let mut seen = Vec::new();
        for (_, r) in &pts {
            let l = r.as_ref().unwrap().label;
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        seen.sort();
        assert_eq!(
            seen,
            [FocalLabel::A1, FocalLabel::A2, FocalLabel::A3, FocalLabel::A4, FocalLabel::D4, FocalLabel::X9]
        );
    }
}

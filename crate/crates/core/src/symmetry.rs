//! Distinguished planes and lines at the vertex, and the three reflection /
//! rotation symmetries of a normal form.
//!
//! | symmetry   | target map   | source map   | b        | c        |
//! |------------|--------------|--------------|----------|----------|
//! | tangent    | `T(1, −1)`   | `(−u, −v)`   | even     | odd      |
//! | principal  | `T(−1, 1)`   | `(v, u)`     | symmetric| symmetric|
//! | center     | `T(−1, −1)`  | `(−v, −u)`   | symmetric| antisym. |
//!
//! with `T(ε₁, ε₂) = diag(ε₁, 1, ε₂)`.

use crate::error::{Error, Result};
use crate::germ::{MapGerm, NormalFormGerm};
use crate::linalg::{self, Mat3, Vec3};
use crate::normalform::check_hypothesis;
use crate::series::{eval3, TruncatedSeries2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Tangent,
    Principal,
    Center,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Tangent, Symmetry::Principal, Symmetry::Center];

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Tangent => "tangent",
            Symmetry::Principal => "principal",
            Symmetry::Center => "center",
        }
    }

    /// `T(ε₁, ε₂) = diag(ε₁, 1, ε₂)`.
    pub fn target_map(self) -> Mat3 {
        let (e1, e2) = self.epsilons();
        Mat3::diag([e1, 1.0, e2])
    }

    pub fn epsilons(self) -> (f64, f64) {
        match self {
            Symmetry::Tangent => (1.0, -1.0),
            Symmetry::Principal => (-1.0, 1.0),
            Symmetry::Center => (-1.0, -1.0),
        }
    }

    pub fn source_map(self, u: f64, v: f64) -> (f64, f64) {
        match self {
            Symmetry::Tangent => (-u, -v),
            Symmetry::Principal => (v, u),
            Symmetry::Center => (-v, -u),
        }
    }

    /// Coefficient of `(i, j)` after substituting the source map, as
    /// `(sign, i', j')`: `s∘σ` has `sign · s_{i'j'}` at `(i, j)`.
    fn pull(self, i: usize, j: usize) -> (f64, usize, usize) {
        let odd = if (i + j) % 2 == 1 { -1.0 } else { 1.0 };
        match self {
            Symmetry::Tangent => (odd, i, j),
            Symmetry::Principal => (1.0, j, i),
            Symmetry::Center => (odd, j, i),
        }
    }

    /// Max coefficient of `b∘σ − b` and `c∘σ − ε₂c`.
    pub fn parity_residual(self, nf: &NormalFormGerm) -> f64 {
        let (_, e2) = self.epsilons();
        let gap = |s: &TruncatedSeries2, eps: f64| {
            s.terms()
                .map(|(i, j, _)| (i, j))
                .chain(s.terms().map(|(i, j, _)| (j, i)))
                .map(|(i, j)| {
                    let (sg, k, l) = self.pull(i, j);
                    (sg * s.coeff(k, l) - eps * s.coeff(i, j)).abs()
                })
                .fold(0.0, f64::max)
        };
        gap(&nf.b_series(), 1.0).max(gap(&nf.c_series(), e2))
    }
}

/// Planes are given by unit normals, lines by unit directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricElements {
    pub tangent_plane: Vec3,
    pub normal_plane: Vec3,
    pub principal_plane: Vec3,
    pub center_line: Vec3,
    pub singular_line_1: Vec3,
    pub singular_line_2: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetryFlags {
    pub tangent_reflection: bool,
    pub principal_reflection: bool,
    pub center_rotation: bool,
}

impl SymmetryFlags {
    pub fn get(&self, s: Symmetry) -> bool {
        match s {
            Symmetry::Tangent => self.tangent_reflection,
            Symmetry::Principal => self.principal_reflection,
            Symmetry::Center => self.center_rotation,
        }
    }
}

/// Elements of any germ satisfying the adapted-coordinate hypothesis.
pub fn geometric_elements_of(m: &MapGerm) -> Result<GeometricElements> {
    let phi = check_hypothesis(m)?;
    let nu = linalg::cross(&eval3(&phi.phi1, 0.0, 0.0), &eval3(&phi.phi2, 0.0, 0.0));
    let unit = |v: &Vec3| linalg::normalize(v).ok_or(Error::DegenerateFrame("vanishing direction at the vertex"));
    let nu = unit(&nu)?;
    let l1 = unit(&m.derivative_at(2, 0, 0.0, 0.0))?;
    let l2 = unit(&m.derivative_at(0, 2, 0.0, 0.0))?;
    let center = unit(&linalg::add(&l1, &l2))?;
    Ok(GeometricElements {
        tangent_plane: nu,
        normal_plane: center,
        principal_plane: unit(&linalg::cross(&center, &nu))?,
        center_line: center,
        singular_line_1: l1,
        singular_line_2: l2,
    })
}

pub fn geometric_elements(nf: &NormalFormGerm) -> Result<GeometricElements> {
    geometric_elements_of(&nf.expand())
}

/// Jet-level parity test of the three symmetries.
pub fn detect_symmetries(nf: &NormalFormGerm, tol: f64) -> SymmetryFlags {
    let ok = |s: Symmetry| s.parity_residual(nf) <= tol;
    SymmetryFlags {
        tangent_reflection: ok(Symmetry::Tangent),
        principal_reflection: ok(Symmetry::Principal),
        center_rotation: ok(Symmetry::Center),
    }
}

/// `max |T·f(σ(u, v)) − f(u, v)|` over `sample_count` points of `[−½, ½]²`.
pub fn verify_symmetry_on_image(nf: &NormalFormGerm, s: Symmetry, sample_count: usize) -> f64 {
    let m = nf.expand();
    let t = s.target_map();
    // additive recurrence with the plastic-number increments
    let (g1, g2) = (0.754_877_666_246_692_7, 0.569_840_290_998_053_3);
    (0..sample_count)
        .map(|k| {
            let k = k as f64 + 1.0;
            let u = (0.5 + g1 * k) % 1.0 - 0.5;
            let v = (0.5 + g2 * k) % 1.0 - 0.5;
            let (su, sv) = s.source_map(u, v);
            let lhs = t.apply(&m.eval(su, sv));
            linalg::norm(&linalg::sub(&lhs, &m.eval(u, v)))
        })
        .fold(0.0, f64::max)
}

//! φ-fields, unit normal, fundamental forms and curvature of a normal-form front.
//!
//! With `f_u = uφ₁`, `f_v = vφ₂` and `(φ₁)_v = vφ₃`, the normal is
//! `ν = ñ/δ` for `ñ = φ₁ × φ₂`, `δ = |ñ|`, and the forms factor as
//! `E = u²Ẽ, F = uvF̃, G = v²G̃, L = uL̃/δ, M = uvM̃/δ, N = vÑ/δ`.

use crate::error::{Error, Result};
use crate::germ::{MapGerm, NormalFormGerm};
use crate::linalg::{self, Vec3};
use crate::series::{self, eval3, map3, try_map3, TruncatedSeries2, Var};

/// `φ₁ = f_u/u`, `φ₂ = f_v/v`, `φ₃ = (φ₁)_v/v`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFields {
    pub phi1: [TruncatedSeries2; 3],
    pub phi2: [TruncatedSeries2; 3],
    pub phi3: [TruncatedSeries2; 3],
}

/// φ-fields of an arbitrary germ satisfying the divisibility hypothesis.
pub fn phi_fields_of(m: &MapGerm) -> Result<PhiFields> {
    let phi1 = try_map3(&m.derivative(1, 0), |s| s.div_u())?;
    let phi2 = try_map3(&m.derivative(0, 1), |s| s.div_v())?;
    let phi3 = try_map3(&phi1, |s| s.partial(Var::V).div_v())?;
    Ok(PhiFields { phi1, phi2, phi3 })
}

pub fn phi_fields(nf: &NormalFormGerm) -> Result<PhiFields> {
    phi_fields_of(&nf.expand())
}

/// Numeric frame quantities at one source point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePoint {
    pub u: f64,
    pub v: f64,
    pub phi1: Vec3,
    pub phi2: Vec3,
    pub phi3: Vec3,
    pub phi1_u: Vec3,
    pub phi2_v: Vec3,
    /// `ñ = φ₁ × φ₂`
    pub n_tilde: Vec3,
    /// `δ = |ñ|`
    pub delta: f64,
}

impl FramePoint {
    pub fn nu(&self) -> Vec3 {
        linalg::scale(&self.n_tilde, 1.0 / self.delta)
    }

    pub fn e_tilde(&self) -> f64 {
        linalg::dot(&self.phi1, &self.phi1)
    }

    pub fn f_tilde(&self) -> f64 {
        linalg::dot(&self.phi1, &self.phi2)
    }

    pub fn g_tilde(&self) -> f64 {
        linalg::dot(&self.phi2, &self.phi2)
    }

    pub fn l_tilde(&self) -> f64 {
        linalg::dot(&self.phi1_u, &self.n_tilde)
    }

    pub fn m_tilde(&self) -> f64 {
        linalg::dot(&self.phi3, &self.n_tilde)
    }

    pub fn n_tilde_form(&self) -> f64 {
        linalg::dot(&self.phi2_v, &self.n_tilde)
    }

    /// `uv·K = (L̃Ñ − uvM̃²)/δ⁴`, finite on the singular set.
    pub fn uv_k(&self) -> f64 {
        let m = self.m_tilde();
        (self.l_tilde() * self.n_tilde_form() - self.u * self.v * m * m) / libm::pow(self.delta, 4.0)
    }

    /// `uv·H = (uẼÑ − 2uvF̃M̃ + vG̃L̃)/(2δ³)`.
    pub fn uv_h(&self) -> f64 {
        let (u, v) = (self.u, self.v);
        (u * self.e_tilde() * self.n_tilde_form() - 2.0 * u * v * self.f_tilde() * self.m_tilde()
            + v * self.g_tilde() * self.l_tilde())
            / (2.0 * libm::pow(self.delta, 3.0))
    }

    /// Density of `K dA` against `du dv` for the orientation `ν`:
    /// `(L̃Ñ − uvM̃²)/δ³`. Multiply by `sgn(uv)` for the source orientation.
    pub fn k_density(&self) -> f64 {
        let m = self.m_tilde();
        (self.l_tilde() * self.n_tilde_form() - self.u * self.v * m * m) / libm::pow(self.delta, 3.0)
    }
}

/// First and second fundamental forms at a point, with the normal used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub nu: Vec3,
}

/// Series of `uv·K` and `uv·H` at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureAsymptotics {
    pub uv_k: TruncatedSeries2,
    pub uv_h: TruncatedSeries2,
}

/// Witness of the front criterion: the first derivatives of `ν` at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontWitness {
    pub is_front: bool,
    pub nu_u: Vec3,
    pub nu_v: Vec3,
}

/// Precomputed derivative fields of a normal-form germ.
#[derive(Debug, Clone)]
pub struct Frame {
    germ: MapGerm,
    phi: PhiFields,
    phi1_u: [TruncatedSeries2; 3],
    phi2_v: [TruncatedSeries2; 3],
}

impl Frame {
    pub fn new(nf: &NormalFormGerm) -> Result<Self> {
        Self::from_germ(nf.expand())
    }

    pub fn from_germ(germ: MapGerm) -> Result<Self> {
        let phi = phi_fields_of(&germ)?;
        let phi1_u = map3(&phi.phi1, |s| s.partial(Var::U));
        let phi2_v = map3(&phi.phi2, |s| s.partial(Var::V));
        Ok(Self {
            germ,
            phi,
            phi1_u,
            phi2_v,
        })
    }

    pub fn germ(&self) -> &MapGerm {
        &self.germ
    }

    pub fn phi(&self) -> &PhiFields {
        &self.phi
    }

    pub fn phi1_u(&self) -> &[TruncatedSeries2; 3] {
        &self.phi1_u
    }

    pub fn phi2_v(&self) -> &[TruncatedSeries2; 3] {
        &self.phi2_v
    }

    /// Numeric frame data; fails where `φ₁ × φ₂` vanishes.
    pub fn at(&self, u: f64, v: f64) -> Result<FramePoint> {
        let phi1 = eval3(&self.phi.phi1, u, v);
        let phi2 = eval3(&self.phi.phi2, u, v);
        let n_tilde = linalg::cross(&phi1, &phi2);
        let delta = linalg::norm(&n_tilde);
        let scale = linalg::norm(&phi1) * linalg::norm(&phi2);
        if !(delta > 1e-12 * scale) || !delta.is_finite() {
            return Err(Error::DegenerateFrame("phi1 and phi2 are parallel"));
        }
        Ok(FramePoint {
            u,
            v,
            phi1,
            phi2,
            phi3: eval3(&self.phi.phi3, u, v),
            phi1_u: eval3(&self.phi1_u, u, v),
            phi2_v: eval3(&self.phi2_v, u, v),
            n_tilde,
            delta,
        })
    }

    pub fn unit_normal(&self, u: f64, v: f64) -> Result<Vec3> {
        Ok(self.at(u, v)?.nu())
    }

    pub fn fundamental_forms(&self, u: f64, v: f64) -> Result<FundamentalForms> {
        let p = self.at(u, v)?;
        Ok(FundamentalForms {
            e: u * u * p.e_tilde(),
            f: u * v * p.f_tilde(),
            g: v * v * p.g_tilde(),
            l: u * p.l_tilde() / p.delta,
            m: u * v * p.m_tilde() / p.delta,
            n: v * p.n_tilde_form() / p.delta,
            nu: p.nu(),
        })
    }

    /// Gaussian and mean curvature off the singular set, oriented by `ν`.
    pub fn curvatures(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        if u * v == 0.0 {
            return Err(Error::OnSingularSet { u, v });
        }
        let p = self.at(u, v)?;
        Ok((p.uv_k() / (u * v), p.uv_h() / (u * v)))
    }

    /// φ-fields promoted to degree `r` (they are exact polynomials).
    fn promoted(&self, r: usize) -> [[TruncatedSeries2; 3]; 5] {
        let up = |s: &[TruncatedSeries2; 3]| map3(s, |c| c.resize(r));
        [
            up(&self.phi.phi1),
            up(&self.phi.phi2),
            up(&self.phi.phi3),
            up(&self.phi1_u),
            up(&self.phi2_v),
        ]
    }

    /// Jet of `ñ` to degree `r`.
    pub fn n_tilde_series(&self, r: usize) -> [TruncatedSeries2; 3] {
        let [p1, p2, ..] = self.promoted(r);
        series::cross(&p1, &p2)
    }

    /// Jet of `ν` to degree `r`.
    pub fn unit_normal_series(&self, r: usize) -> Result<[TruncatedSeries2; 3]> {
        let n = self.n_tilde_series(r);
        let inv = series::dot(&n, &n).powf(-0.5)?;
        Ok(map3(&n, |c| c * &inv))
    }

    /// `λ = det(f_u, f_v, ν) = uv·δ` to the degree of the germ.
    pub fn discriminant(&self) -> Result<TruncatedSeries2> {
        let r = self.germ.degree();
        let n = self.n_tilde_series(r - 2);
        let delta = series::dot(&n, &n).sqrt()?;
        Ok(delta.mul_monomial(1, 1))
    }

    /// `uv·K` and `uv·H` as series of degree `r`.
    pub fn kh_series(&self, r: usize) -> Result<CurvatureAsymptotics> {
        let [p1, p2, p3, p1u, p2v] = self.promoted(r);
        let n = series::cross(&p1, &p2);
        let d2 = series::dot(&n, &n);
        let (e, f, g) = (series::dot(&p1, &p1), series::dot(&p1, &p2), series::dot(&p2, &p2));
        let (l, m, nn) = (series::dot(&p1u, &n), series::dot(&p3, &n), series::dot(&p2v, &n));
        let uv = |s: &TruncatedSeries2| s.mul_monomial(1, 1).truncate(r);
        let num_k = &(&l * &nn) - &uv(&(&m * &m));
        let uv_k = &num_k * &d2.powf(-2.0)?;
        let num_h = &(&(&e * &nn).mul_monomial(1, 0).truncate(r) - &uv(&(&f * &m)).scale(2.0))
            + &(&g * &l).mul_monomial(0, 1).truncate(r);
        let uv_h = (&num_h * &d2.powf(-1.5)?).scale(0.5);
        Ok(CurvatureAsymptotics { uv_k, uv_h })
    }

    /// `ν_u(0)` and `ν_v(0)` from the normal jet.
    pub fn normal_derivatives_at_origin(&self) -> Result<(Vec3, Vec3)> {
        let nu = self.unit_normal_series(2)?;
        Ok((nu.clone().map(|c| c.coeff(1, 0)), nu.map(|c| c.coeff(0, 1))))
    }
}

pub fn unit_normal(nf: &NormalFormGerm, u: f64, v: f64) -> Result<Vec3> {
    Frame::new(nf)?.unit_normal(u, v)
}

pub fn discriminant(nf: &NormalFormGerm) -> Result<TruncatedSeries2> {
    Frame::new(nf)?.discriminant()
}

pub fn fundamental_forms(nf: &NormalFormGerm, u: f64, v: f64) -> Result<FundamentalForms> {
    Frame::new(nf)?.fundamental_forms(u, v)
}

pub fn curvatures(nf: &NormalFormGerm, u: f64, v: f64) -> Result<(f64, f64)> {
    Frame::new(nf)?.curvatures(u, v)
}

/// `uv·K`, `uv·H` series at the truncation degree of `nf`.
pub fn kh_asymptotics(nf: &NormalFormGerm) -> Result<CurvatureAsymptotics> {
    Frame::new(nf)?.kh_series(nf.degree())
}

/// Front criterion `c₁(0)c₃(0) ≠ 0`, with `ν_u(0)`, `ν_v(0)` as witness.
pub fn is_front_at_origin(nf: &NormalFormGerm) -> Result<FrontWitness> {
    let (nu_u, nu_v) = Frame::new(nf)?.normal_derivatives_at_origin()?;
    let c1 = nf.c().along_u.coeff(0);
    let c3 = nf.c().along_v.coeff(0);
    Ok(FrontWitness {
        is_front: c1.abs() > crate::germ::STRUCTURE_TOL && c3.abs() > crate::germ::STRUCTURE_TOL,
        nu_u,
        nu_v,
    })
}

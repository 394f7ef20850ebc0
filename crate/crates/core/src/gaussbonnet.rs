//! Sector-wise Gauss-Bonnet check around the vertex.
//!
//! Each open quadrant of the source disk of radius `δ` is immersed, with the
//! two half-axes and the outer arc as its boundary. Along the boundary
//! (counterclockwise in the source) the smooth identity
//! `∫K dA + ∫κ_g ds + Σ exterior angles = 2π` holds, where the surface is
//! oriented by `N = sgn(uv)·ν`. All densities are taken in factored form, so
//! they stay bounded on the axes:
//!
//! - `K dA = sgn(uv)(L̃Ñ − uvM̃²)/δ³ du dv`,
//! - along an axis ray `κ_g ds = ±det(φ, φ_t, N)/|φ|² dρ`,
//! - along the arc `κ_g ds = det(w, w_φ, N)/|w|² dφ` with `w = φ₂ − φ₁`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::edgeinv::vertex_angle;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::germ::NormalFormGerm;
use crate::linalg::{self, Vec3};
use crate::quadrature::GaussLegendre;
use crate::series::{eval3, map3, TruncatedSeries2, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    /// `u > 0, v > 0`
    PP,
    /// `u < 0, v > 0`
    MP,
    MM,
    PM,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::PP, Quadrant::MP, Quadrant::MM, Quadrant::PM];

    /// Sign pattern of `(u, v)`, e.g. `"+-"`.
    pub fn label(self) -> &'static str {
        match self {
            Quadrant::PP => "++",
            Quadrant::MP => "-+",
            Quadrant::MM => "--",
            Quadrant::PM => "+-",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Quadrant::ALL.into_iter().find(|q| q.label() == s)
    }

    /// Polar angle range, counterclockwise.
    pub fn angles(self) -> (f64, f64) {
        match self {
            Quadrant::PP => (0.0, FRAC_PI_2),
            Quadrant::MP => (FRAC_PI_2, PI),
            Quadrant::MM => (PI, 1.5 * PI),
            Quadrant::PM => (-FRAC_PI_2, 0.0),
        }
    }

    /// `sgn(uv)` inside the quadrant.
    pub fn orientation(self) -> f64 {
        match self {
            Quadrant::PP | Quadrant::MM => 1.0,
            Quadrant::MP | Quadrant::PM => -1.0,
        }
    }

    /// Start and end rays as (axis, sign).
    fn rays(self) -> ((Var, f64), (Var, f64)) {
        match self {
            Quadrant::PP => ((Var::U, 1.0), (Var::V, 1.0)),
            Quadrant::MP => ((Var::V, 1.0), (Var::U, -1.0)),
            Quadrant::MM => ((Var::U, -1.0), (Var::V, -1.0)),
            Quadrant::PM => ((Var::V, -1.0), (Var::U, 1.0)),
        }
    }
}

/// Integrals and angles of one sector. Edge integrals and corner angles are
/// listed in traversal order (outgoing ray first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorGBReport {
    pub quadrant: Quadrant,
    pub k_integral: f64,
    pub edge_integrals: [f64; 2],
    pub arc_integral: f64,
    pub vertex_interior_angle: f64,
    /// Exterior (turning) angles where the arc meets the two rays.
    pub outer_corner_angles: [f64; 2],
    pub residual: f64,
    pub mesh: usize,
}

impl SectorGBReport {
    /// Everything on the left of the identity, the vertex included.
    pub fn total(&self) -> f64 {
        self.k_integral + self.edge_integrals[0] + self.edge_integrals[1] + self.arc_integral
            + self.outer_corner_angles[0] + self.outer_corner_angles[1] + (PI - self.vertex_interior_angle)
    }

    /// Interior vertex angle forced by the identity from the other terms.
    pub fn implied_vertex_angle(&self) -> f64 {
        self.k_integral + self.edge_integrals[0] + self.edge_integrals[1] + self.arc_integral
            + self.outer_corner_angles[0] + self.outer_corner_angles[1] - PI
    }
}

/// Four sectors and the angle bookkeeping at the vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussBonnetAggregate {
    pub sectors: Vec<SectorGBReport>,
    /// `Σ implied vertex angles − 2π`
    pub measured_defect: f64,
    /// `4θ − 2π`
    pub predicted_defect: f64,
}

/// Options for [`sector_gauss_bonnet_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorOptions {
    pub radius: f64,
    pub mesh: usize,
    /// Gauss-Legendre nodes per panel (1 = composite midpoint).
    pub nodes_per_panel: usize,
}

impl SectorOptions {
    pub fn new(radius: f64, mesh: usize) -> Self {
        Self {
            radius,
            mesh,
            nodes_per_panel: 1,
        }
    }
}

struct Fields {
    frame: Frame,
    phi2_u: [TruncatedSeries2; 3],
    phi1_v: [TruncatedSeries2; 3],
}

impl Fields {
    fn new(nf: &NormalFormGerm) -> Result<Self> {
        let frame = Frame::new(nf)?;
        let phi2_u = map3(&frame.phi().phi2, |s| s.partial(Var::U));
        let phi1_v = map3(&frame.phi().phi1, |s| s.partial(Var::V));
        Ok(Self { frame, phi2_u, phi1_v })
    }

    fn k_density(&self, u: f64, v: f64, q: f64) -> Result<f64> {
        Ok(q * self.frame.at(u, v)?.k_density())
    }

    /// Outward density along the ray `ρ ↦ ρ·sign·e_axis`.
    fn ray_density(&self, axis: Var, sign: f64, rho: f64, q: f64) -> Result<f64> {
        let (u, v) = point(axis, sign * rho);
        let p = self.frame.at(u, v)?;
        let (phi, phi_t) = match axis {
            Var::U => (p.phi1, p.phi1_u),
            Var::V => (p.phi2, p.phi2_v),
        };
        let n = linalg::scale(&p.nu(), q);
        Ok(sign * linalg::det3(&phi, &phi_t, &n) / linalg::dot(&phi, &phi))
    }

    fn arc_vectors(&self, radius: f64, ang: f64) -> Result<(Vec3, Vec3, Vec3)> {
        let (u, v) = (radius * libm::cos(ang), radius * libm::sin(ang));
        let p = self.frame.at(u, v)?;
        let w = linalg::sub(&p.phi2, &p.phi1);
        let w_u = linalg::sub(&eval3(&self.phi2_u, u, v), &p.phi1_u);
        let w_v = linalg::sub(&p.phi2_v, &eval3(&self.phi1_v, u, v));
        let w_ang = linalg::add(&linalg::scale(&w_u, -v), &linalg::scale(&w_v, u));
        Ok((w, w_ang, p.nu()))
    }

    fn arc_density(&self, radius: f64, ang: f64, q: f64) -> Result<f64> {
        let (w, w_ang, nu) = self.arc_vectors(radius, ang)?;
        Ok(linalg::det3(&w, &w_ang, &linalg::scale(&nu, q)) / linalg::dot(&w, &w))
    }

    /// Field along the axis (`φ₁` on `u`, `φ₂` on `v`) and `N` at a point.
    fn axis_field(&self, axis: Var, t: f64, q: f64) -> Result<(Vec3, Vec3)> {
        let (u, v) = point(axis, t);
        let p = self.frame.at(u, v)?;
        let phi = if axis == Var::U { p.phi1 } else { p.phi2 };
        Ok((phi, linalg::scale(&p.nu(), q)))
    }
}

fn point(axis: Var, t: f64) -> (f64, f64) {
    match axis {
        Var::U => (t, 0.0),
        Var::V => (0.0, t),
    }
}

/// Turning angle from `a` to `b` in the plane with normal `n`.
fn turn(a: &Vec3, b: &Vec3, n: &Vec3) -> f64 {
    libm::atan2(linalg::det3(a, b, n), linalg::dot(a, b))
}

fn check_options(o: &SectorOptions) -> Result<()> {
    if !(o.radius > 0.0) || !o.radius.is_finite() || o.mesh == 0 || o.nodes_per_panel == 0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "sector needs radius > 0, mesh ≥ 1, nodes ≥ 1 (got {}, {}, {})",
            o.radius,
            o.mesh,
            o.nodes_per_panel
        )));
    }
    Ok(())
}

/// Quadrature that stops at the first failing sample.
fn integrate(g: &GaussLegendre, a: f64, b: f64, n: usize, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut err = None;
    let val = g.composite(a, b, n, |x| match f(x) {
        Ok(y) if y.is_finite() => y,
        Ok(_) => {
            err.get_or_insert(Error::DegenerateFrame("non-finite density"));
            0.0
        }
        Err(e) => {
            err.get_or_insert(e);
            0.0
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(val),
    }
}

pub fn sector_gauss_bonnet(nf: &NormalFormGerm, quadrant: Quadrant, radius: f64, mesh: usize) -> Result<SectorGBReport> {
    sector_gauss_bonnet_with(nf, quadrant, SectorOptions::new(radius, mesh))
}

pub fn sector_gauss_bonnet_with(nf: &NormalFormGerm, quadrant: Quadrant, opts: SectorOptions) -> Result<SectorGBReport> {
    check_options(&opts)?;
    let fields = Fields::new(nf)?;
    sector(&fields, quadrant, &opts)
}

fn sector(fields: &Fields, quadrant: Quadrant, opts: &SectorOptions) -> Result<SectorGBReport> {
    let g = GaussLegendre::new(opts.nodes_per_panel)?;
    let (r, n) = (opts.radius, opts.mesh);
    let q = quadrant.orientation();
    let (lo, hi) = quadrant.angles();
    let ((ax_a, s_a), (ax_b, s_b)) = quadrant.rays();

    let k_integral = integrate(&g, 0.0, r, n, |rho| {
        integrate(&g, lo, hi, n, |ang| {
            Ok(rho * fields.k_density(rho * libm::cos(ang), rho * libm::sin(ang), q)?)
        })
    })?;
    let edge_out = integrate(&g, 0.0, r, n, |rho| fields.ray_density(ax_a, s_a, rho, q))?;
    let edge_in = -integrate(&g, 0.0, r, n, |rho| fields.ray_density(ax_b, s_b, rho, q))?;
    let arc_integral = integrate(&g, lo, hi, n, |ang| fields.arc_density(r, ang, q))?;

    let (phi_a, n_a) = fields.axis_field(ax_a, s_a * r, q)?;
    let (w_a, _, _) = fields.arc_vectors(r, lo)?;
    let corner_a = turn(&phi_a, &linalg::scale(&w_a, q), &n_a);
    let (phi_b, n_b) = fields.axis_field(ax_b, s_b * r, q)?;
    let (w_b, _, _) = fields.arc_vectors(r, hi)?;
    let corner_b = turn(&linalg::scale(&w_b, q), &linalg::scale(&phi_b, -1.0), &n_b);
    let (phi_i, n0) = fields.axis_field(ax_a, 0.0, q)?;
    let (phi_j, _) = fields.axis_field(ax_b, 0.0, q)?;
    let vertex_exterior = turn(&linalg::scale(&phi_j, -1.0), &phi_i, &n0);

    let mut report = SectorGBReport {
        quadrant,
        k_integral,
        edge_integrals: [edge_out, edge_in],
        arc_integral,
        vertex_interior_angle: PI - vertex_exterior,
        outer_corner_angles: [corner_a, corner_b],
        residual: 0.0,
        mesh: n,
    };
    report.residual = (report.total() - 2.0 * PI).abs();
    Ok(report)
}

/// All four sectors and the vertex defect they imply.
pub fn aggregate(nf: &NormalFormGerm, opts: SectorOptions) -> Result<GaussBonnetAggregate> {
    check_options(&opts)?;
    let fields = Fields::new(nf)?;
    let sectors = Quadrant::ALL
        .iter()
        .map(|&q| sector(&fields, q, &opts))
        .collect::<Result<Vec<_>>>()?;
    let measured_defect = sectors.iter().map(|s| s.implied_vertex_angle()).sum::<f64>() - 2.0 * PI;
    Ok(GaussBonnetAggregate {
        sectors,
        measured_defect,
        predicted_defect: gb_defect(nf),
    })
}

/// `4θ − 2π` with `θ` the vertex angle.
pub fn gb_defect(nf: &NormalFormGerm) -> f64 {
    4.0 * vertex_angle(nf) - 2.0 * PI
}

/// Unit initial vector of `t ↦ f(t cos θ₀, t sin θ₀)` at `t = 0⁺`, read off
/// the lowest nonvanishing homogeneous part of `f`.
pub fn initial_vector(nf: &NormalFormGerm, theta0: f64) -> Result<Vec3> {
    let m = nf.expand();
    let (c, s) = (libm::cos(theta0), libm::sin(theta0));
    for d in 1..=m.degree() {
        let v = m.components().clone().map(|x| x.homogeneous_part(d).evaluate(c, s));
        if linalg::norm(&v) > 1e-12 {
            return linalg::normalize(&v).ok_or(Error::DegenerateFrame("radial curve"));
        }
    }
    Err(Error::DegenerateFrame("radial curve is constant to the jet degree"))
}

/// One sample of [`measure_boundedness`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSample {
    pub t: f64,
    /// `K·√(EG − F²)` at `(t, t)` and `(t, 2t)`.
    pub k_density_diagonal: f64,
    pub k_density_skew: f64,
    /// `κ_s·|γ̂'|` at `t` on the `u` and `v` edges.
    pub edge_density_u: f64,
    pub edge_density_v: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub samples: Vec<MeasureSample>,
    /// Largest change between consecutive samples, per column.
    pub cauchy_gaps: [f64; 4],
}

/// Samples the densities of `K dA` and `κ_s ds` approaching the vertex.
pub fn measure_boundedness(nf: &NormalFormGerm, ts: &[f64]) -> Result<MeasureReport> {
    let frame = Frame::new(nf)?;
    let kd = |u: f64, v: f64| -> Result<f64> {
        let p = frame.at(u, v)?;
        let q = if u * v > 0.0 { 1.0 } else { -1.0 };
        Ok(q * p.k_density())
    };
    let edge = |axis: Var, t: f64| -> Result<f64> {
        let inv = crate::edgeinv::edge_invariants_at(nf, axis, t)?;
        let (u, v) = point(axis, t);
        let (du, dv) = if axis == Var::U { (1, 0) } else { (0, 1) };
        Ok(inv.kappa_s * linalg::norm(&frame.germ().derivative_at(du, dv, u, v)))
    };
    let samples = ts
        .iter()
        .map(|&t| {
            Ok(MeasureSample {
                t,
                k_density_diagonal: kd(t, t)?,
                k_density_skew: kd(t, 2.0 * t)?,
                edge_density_u: edge(Var::U, t)?,
                edge_density_v: edge(Var::V, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut gaps = [0.0f64; 4];
    for w in samples.windows(2) {
        let col = |s: &MeasureSample| [s.k_density_diagonal, s.k_density_skew, s.edge_density_u, s.edge_density_v];
        let (a, b) = (col(&w[0]), col(&w[1]));
        for k in 0..4 {
            gaps[k] = gaps[k].max((a[k] - b[k]).abs());
        }
    }
    Ok(MeasureReport {
        samples,
        cauchy_gaps: gaps,
    })
}

//! Serializable reports written by the subcommands.

use frontkit_core::edgeinv::{AxisAsymptotics, AxisBoundedness, EdgeInvariants, ProjectedCurvatures};
use frontkit_core::focal::FocalClass;
use frontkit_core::gaussbonnet::SectorGBReport;
use frontkit_core::linalg::Vec3;
use frontkit_core::symmetry::GeometricElements;
use serde::Serialize;

use crate::io::{NormalFormDto, SeriesDto};

#[derive(Debug, Serialize)]
pub struct TransformDto {
    pub rotation: [[f64; 3]; 3],
    /// `(ũ, ṽ)` as series in the original coordinates.
    pub source_change: [SeriesDto; 2],
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub degree: usize,
    pub normal_form: NormalFormDto,
    pub canonical: bool,
    pub passes: usize,
    pub eliminate_b2: bool,
    pub transform: TransformDto,
}

#[derive(Debug, Serialize)]
pub struct FormsDto {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

#[derive(Debug, Serialize)]
pub struct FrontDto {
    pub is_front: bool,
    pub nu_u: Vec3,
    pub nu_v: Vec3,
}

#[derive(Debug, Serialize)]
pub struct FrameReport {
    pub point: [f64; 2],
    pub image: Vec3,
    pub nu: Vec3,
    pub delta: f64,
    pub forms: FormsDto,
    /// `None` on the singular set `uv = 0`.
    pub gaussian_curvature: Option<f64>,
    pub mean_curvature: Option<f64>,
    /// `uv·K` and `uv·H` at the point, bounded through the singular set.
    pub uv_k: f64,
    pub uv_h: f64,
    pub front_at_origin: FrontDto,
}

#[derive(Debug, Serialize)]
pub struct InvariantRow {
    pub axis: &'static str,
    pub t: f64,
    pub kappa_s: f64,
    pub kappa_nu: f64,
    pub kappa_t: f64,
    pub kappa_c: f64,
}

impl InvariantRow {
    pub fn new(axis: &'static str, t: f64, e: &EdgeInvariants) -> Self {
        Self {
            axis,
            t,
            kappa_s: e.kappa_s,
            kappa_nu: e.kappa_nu,
            kappa_t: e.kappa_t,
            kappa_c: e.kappa_c,
        }
    }
}

/// First two coefficients of `t·κ_s`, `t·κ_ν`, `t·κ_t` and `κ_c`.
#[derive(Debug, Serialize)]
pub struct AsymptoticsDto {
    pub t_kappa_s: [f64; 2],
    pub t_kappa_nu: [f64; 2],
    pub t_kappa_t: [f64; 2],
    pub kappa_c: [f64; 2],
}

impl From<&AxisAsymptotics> for AsymptoticsDto {
    fn from(a: &AxisAsymptotics) -> Self {
        let (l, n) = (a.leading(), a.next());
        Self {
            t_kappa_s: [l[0], n[0]],
            t_kappa_nu: [l[1], n[1]],
            t_kappa_t: [l[2], n[2]],
            kappa_c: [l[3], n[3]],
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundednessDto {
    pub kappa_s_bounded: bool,
    pub kappa_s_vanishes: bool,
    pub kappa_nu_bounded: bool,
    pub kappa_t_bounded: bool,
    pub kappa_c_zero: bool,
}

impl From<&AxisBoundedness> for BoundednessDto {
    fn from(b: &AxisBoundedness) -> Self {
        Self {
            kappa_s_bounded: b.kappa_s_bounded,
            kappa_s_vanishes: b.kappa_s_vanishes,
            kappa_nu_bounded: b.kappa_nu_bounded,
            kappa_t_bounded: b.kappa_t_bounded,
            kappa_c_zero: b.kappa_c_zero,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EdgeReport {
    pub asymptotics: AsymptoticsDto,
    pub boundedness: BoundednessDto,
}

#[derive(Debug, Serialize)]
pub struct ProjectedDto {
    pub gamma1_normal: f64,
    pub gamma1_center: f64,
    pub gamma2_normal: f64,
    pub gamma2_center: f64,
}

impl From<&ProjectedCurvatures> for ProjectedDto {
    fn from(p: &ProjectedCurvatures) -> Self {
        Self {
            gamma1_normal: p.gamma1_normal,
            gamma1_center: p.gamma1_center,
            gamma2_normal: p.gamma2_normal,
            gamma2_center: p.gamma2_center,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub vertex_angle: f64,
    pub u_axis: EdgeReport,
    pub v_axis: EdgeReport,
    pub projected_cuspidal_curvatures: Option<ProjectedDto>,
    pub samples: Vec<InvariantRow>,
}

#[derive(Debug, Serialize)]
pub struct ElementsDto {
    pub tangent_plane: Vec3,
    pub normal_plane: Vec3,
    pub principal_plane: Vec3,
    pub center_line: Vec3,
    pub singular_line_1: Vec3,
    pub singular_line_2: Vec3,
}

impl From<&GeometricElements> for ElementsDto {
    fn from(e: &GeometricElements) -> Self {
        Self {
            tangent_plane: e.tangent_plane,
            normal_plane: e.normal_plane,
            principal_plane: e.principal_plane,
            center_line: e.center_line,
            singular_line_1: e.singular_line_1,
            singular_line_2: e.singular_line_2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SymmetryEntry {
    pub symmetry: &'static str,
    pub holds: bool,
    pub parity_residual: f64,
    pub image_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct SymmetryReport {
    pub tolerance: f64,
    pub symmetries: Vec<SymmetryEntry>,
    pub elements: ElementsDto,
}

#[derive(Debug, Serialize)]
pub struct SectorDto {
    pub quadrant: &'static str,
    pub k_integral: f64,
    pub edge_integrals: [f64; 2],
    pub arc_integral: f64,
    pub vertex_interior_angle: f64,
    pub outer_corner_angles: [f64; 2],
    pub residual: f64,
}

impl From<&SectorGBReport> for SectorDto {
    fn from(s: &SectorGBReport) -> Self {
        Self {
            quadrant: s.quadrant.label(),
            k_integral: s.k_integral,
            edge_integrals: s.edge_integrals,
            arc_integral: s.arc_integral,
            vertex_interior_angle: s.vertex_interior_angle,
            outer_corner_angles: s.outer_corner_angles,
            residual: s.residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GbReport {
    pub radius: f64,
    pub mesh: usize,
    pub nodes_per_panel: usize,
    pub sectors: Vec<SectorDto>,
    pub max_residual: f64,
    pub measured_defect: f64,
    pub predicted_defect: f64,
}

#[derive(Debug, Serialize)]
pub struct FocalReport {
    pub x: Vec3,
    pub label: &'static str,
    pub witness: &'static str,
    pub witness_value: f64,
    pub plane_offsets: [f64; 2],
}

impl FocalReport {
    pub fn new(x: Vec3, c: &FocalClass, plane_offsets: [f64; 2]) -> Self {
        Self {
            x,
            label: c.label.name(),
            witness: c.witness,
            witness_value: c.witness_value,
            plane_offsets,
        }
    }
}

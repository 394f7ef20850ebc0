//! Subcommand bodies. Each returns the text to be written, so the binary
//! only deals with arguments, files and exit codes.

use frontkit_core::edgeinv::{
    boundedness_report, invariant_asymptotics, projected_cuspidal_curvatures, sample_edge_invariants, vertex_angle,
};
use frontkit_core::focal::{classify_focal_point, focal_planes, focal_scan, ScanGrid};
use frontkit_core::frame::{is_front_at_origin, Frame};
use frontkit_core::gaussbonnet::{aggregate, SectorOptions};
use frontkit_core::linalg::{self, Vec3};
use frontkit_core::normalform::{reduce_with, ReduceOptions};
use frontkit_core::symmetry::{detect_symmetries, geometric_elements, verify_symmetry_on_image, Symmetry};
use frontkit_core::{Error, MapGerm, NormalFormGerm, Var};
use serde::Serialize;

use crate::io::{Germ, NormalFormDto};
use crate::report::*;
use crate::Result;

/// Default zero tolerance of the symmetry parity test.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Samples used by the image residual of each symmetry.
const SYMMETRY_SAMPLES: usize = 400;

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::CliError::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn reduce(germ: &Germ, degree: Option<usize>, eliminate_b2: bool) -> Result<String> {
    let m = germ.map();
    let r = degree.unwrap_or(m.degree());
    let red = reduce_with(&m, r, ReduceOptions { eliminate_b2 })?;
    red.transform.validate()?;
    let (su, sv) = &red.transform.source_change;
    to_json(&ReduceReport {
        degree: red.normal_form.degree(),
        normal_form: NormalFormDto::from(&red.normal_form),
        canonical: red.canonical,
        passes: red.passes,
        eliminate_b2,
        transform: TransformDto {
            rotation: red.transform.rotation.0,
            source_change: [su.into(), sv.into()],
        },
    })
}

fn front_witness(germ: &Germ, frame: &Frame) -> Result<FrontDto> {
    if let Germ::NormalForm(nf) = germ {
        let w = is_front_at_origin(nf)?;
        return Ok(FrontDto {
            is_front: w.is_front,
            nu_u: w.nu_u,
            nu_v: w.nu_v,
        });
    }
    let (nu_u, nu_v) = frame.normal_derivatives_at_origin()?;
    let area = linalg::norm(&linalg::cross(&nu_u, &nu_v));
    Ok(FrontDto {
        is_front: area > frontkit_core::germ::STRUCTURE_TOL,
        nu_u,
        nu_v,
    })
}

pub fn frame(germ: &Germ, u: f64, v: f64) -> Result<String> {
    let frame = Frame::from_germ(germ.map())?;
    let p = frame.at(u, v)?;
    let ff = frame.fundamental_forms(u, v)?;
    let (k, h) = match frame.curvatures(u, v) {
        Ok((k, h)) => (Some(k), Some(h)),
        Err(Error::OnSingularSet { .. }) => (None, None),
        Err(e) => return Err(e.into()),
    };
    to_json(&FrameReport {
        point: [u, v],
        image: frame.germ().eval(u, v),
        nu: p.nu(),
        delta: p.delta,
        forms: FormsDto {
            e: ff.e,
            f: ff.f,
            g: ff.g,
            l: ff.l,
            m: ff.m,
            n: ff.n,
        },
        gaussian_curvature: k,
        mean_curvature: h,
        uv_k: p.uv_k(),
        uv_h: p.uv_h(),
        front_at_origin: front_witness(germ, &frame)?,
    })
}

/// JSON report and CSV of the sampled invariants on both edges.
pub fn invariants(nf: &NormalFormGerm, samples: &[f64]) -> Result<(String, String)> {
    let asym = invariant_asymptotics(nf)?;
    let bounded = boundedness_report(nf);
    let mut rows = Vec::new();
    for (name, axis) in [("u", Var::U), ("v", Var::V)] {
        let values = sample_edge_invariants(nf, axis, samples)?;
        rows.extend(samples.iter().zip(&values).map(|(&t, e)| InvariantRow::new(name, t, e)));
    }
    let report = InvariantsReport {
        vertex_angle: vertex_angle(nf),
        u_axis: EdgeReport {
            asymptotics: (&asym.u_axis).into(),
            boundedness: (&bounded.u_axis).into(),
        },
        v_axis: EdgeReport {
            asymptotics: (&asym.v_axis).into(),
            boundedness: (&bounded.v_axis).into(),
        },
        projected_cuspidal_curvatures: projected_cuspidal_curvatures(nf).ok().map(|p| (&p).into()),
        samples: rows,
    };
    let csv = csv_text(&report.samples)?;
    Ok((to_json(&report)?, csv))
}

pub fn symmetry(nf: &NormalFormGerm, tol: Option<f64>) -> Result<String> {
    let tol = tol.unwrap_or(SYMMETRY_TOL);
    let flags = detect_symmetries(nf, tol);
    let symmetries = Symmetry::ALL
        .iter()
        .map(|&s| SymmetryEntry {
            symmetry: s.name(),
            holds: flags.get(s),
            parity_residual: s.parity_residual(nf),
            image_residual: verify_symmetry_on_image(nf, s, SYMMETRY_SAMPLES),
        })
        .collect();
    to_json(&SymmetryReport {
        tolerance: tol,
        symmetries,
        elements: (&geometric_elements(nf)?).into(),
    })
}

pub fn gauss_bonnet(nf: &NormalFormGerm, opts: SectorOptions) -> Result<String> {
    let agg = aggregate(nf, opts)?;
    to_json(&GbReport {
        radius: opts.radius,
        mesh: opts.mesh,
        nodes_per_panel: opts.nodes_per_panel,
        max_residual: agg.sectors.iter().fold(0.0, |m, s| m.max(s.residual.abs())),
        sectors: agg.sectors.iter().map(SectorDto::from).collect(),
        measured_defect: agg.measured_defect,
        predicted_defect: agg.predicted_defect,
    })
}

/// Focal subcommands need the fifth-order jet of `d_x`.
pub const FOCAL_MIN_DEGREE: usize = 5;

fn check_focal_degree(nf: &NormalFormGerm) -> Result<()> {
    if nf.degree() < FOCAL_MIN_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "focal classification needs degree at least {FOCAL_MIN_DEGREE}, got {}",
            nf.degree()
        ))
        .into());
    }
    Ok(())
}

fn plane_offsets(nf: &NormalFormGerm, x: &Vec3) -> [f64; 2] {
    focal_planes(nf).map(|p| p.offset(x))
}

pub fn focal_classify(nf: &NormalFormGerm, x: Vec3) -> Result<String> {
    check_focal_degree(nf)?;
    let class = classify_focal_point(nf, &x)?;
    to_json(&FocalReport::new(x, &class, plane_offsets(nf, &x)))
}

#[derive(Serialize)]
struct ScanRow<'a> {
    x1: f64,
    x2: f64,
    x3: f64,
    label: &'a str,
    detail: String,
}

/// CSV `x1,x2,x3,label,detail`; points that fail carry label `error`.
pub fn focal_scan_csv(nf: &NormalFormGerm, grid: &ScanGrid) -> Result<String> {
    check_focal_degree(nf)?;
    let rows = focal_scan(nf, grid)?.into_iter().map(|(x, c)| {
        let (label, detail) = match c {
            Ok(c) => (c.label.name(), String::new()),
            Err(e) => ("error", e.to_string()),
        };
        ScanRow {
            x1: x[0],
            x2: x[1],
            x3: x[2],
            label,
            detail,
        }
    });
    csv_text(rows)
}

#[derive(Serialize)]
struct SurfaceRow {
    u: f64,
    v: f64,
    x: f64,
    y: f64,
    z: f64,
}

/// `f` on an `n × n` grid over `[−range, range]²`.
pub fn sample_surface(m: &MapGerm, range: f64, n: usize) -> Result<String> {
    if !(range > 0.0 && range.is_finite()) || n < 2 {
        return Err(Error::InvalidParameter(format!("need range > 0 and n ≥ 2, got {range}, {n}")).into());
    }
    let at = |k: usize| -range + 2.0 * range * k as f64 / (n - 1) as f64;
    let rows = (0..n).flat_map(|i| {
        (0..n).map(move |j| {
            let (u, v) = (at(i), at(j));
            let [x, y, z] = m.eval(u, v);
            SurfaceRow { u, v, x, y, z }
        })
    });
    csv_text(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use frontkit_core::TruncatedSeries1;

    fn f1() -> NormalFormGerm {
        let one = TruncatedSeries1::from_coeffs(vec![1.0]);
        let zero = frontkit_core::TruncatedSeries2::zero(0);
        NormalFormGerm::from_parts(1.0, one.clone(), zero.clone(), one.clone(), one.clone(), zero, one, 6).unwrap()
    }

    #[test]
    fn invariants_csv_has_both_edges() {
        let (json, csv) = invariants(&f1(), &[-0.1, 0.1]).unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("axis,t,kappa_s,kappa_nu,kappa_t,kappa_c\n"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let theta = v["vertex_angle"].as_f64().unwrap();
        assert!((theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn focal_needs_degree_five() {
        let nf = f1().with_degree(4).unwrap();
        assert_eq!(focal_classify(&nf, [0.0, 0.0, 1.0]).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn surface_grid() {
        let csv = sample_surface(&f1().expand(), 0.5, 3).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[5], "0.0,0.0,0.0,0.0,0.0");
        assert!(sample_surface(&f1().expand(), 0.5, 1).is_err());
    }
}

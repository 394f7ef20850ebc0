//! Reduction of a germ with `f_u = uφ₁`, `f_v = vφ₂` to the normal form
//! `A ∘ f ∘ s⁻¹ = (u² − v², a(u² + v²) + b, c)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::{phi_fields_of, PhiFields};
use crate::germ::{split_bc, MapGerm, NormalFormGerm, SplitSeries, TransformRecord, STRUCTURE_TOL};
use crate::linalg::{self, Mat3, Vec3};
use crate::series::{eval3, invert_coordinate_change, TruncatedSeries2};

/// Checks the divisibility hypothesis and independence of `φ₁(0)`, `φ₂(0)`.
pub fn check_hypothesis(m: &MapGerm) -> Result<PhiFields> {
    let phi = phi_fields_of(m)?;
    let w1 = eval3(&phi.phi1, 0.0, 0.0);
    let w2 = eval3(&phi.phi2, 0.0, 0.0);
    let n = linalg::norm(&linalg::cross(&w1, &w2));
    if !(n > 1e-12 * linalg::norm(&w1) * linalg::norm(&w2)) {
        return Err(Error::DegenerateFrame("phi1(0) and phi2(0) are dependent"));
    }
    Ok(phi)
}

/// Rotation taking `w₁ ↦ 2k₁(1, a, 0)` and `w₂ ↦ 2k₂(−1, a, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRotation {
    pub rotation: Mat3,
    pub k1: f64,
    pub k2: f64,
    pub a: f64,
}

pub fn target_rotation(w1: &Vec3, w2: &Vec3) -> Result<TargetRotation> {
    let (n1, n2) = (linalg::norm(w1), linalg::norm(w2));
    let (h1, h2) = match (linalg::normalize(w1), linalg::normalize(w2)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::DegenerateFrame("zero vector")),
    };
    if linalg::norm(&linalg::cross(&h1, &h2)) <= 1e-12 {
        return Err(Error::DegenerateFrame("w1 and w2 are dependent"));
    }
    let ey = linalg::normalize(&linalg::add(&h1, &h2))
        .ok_or(Error::DegenerateFrame("w1 and w2 are opposite (a = 0)"))?;
    let ex = linalg::normalize(&linalg::sub(&h1, &h2)).ok_or(Error::DegenerateFrame("w1 = w2"))?;
    let ez = linalg::cross(&ex, &ey);
    let rotation = Mat3::from_rows(ex, ey, ez);
    // ĥ₁ = cos α e_y + sin α e_x with α half the angle between w₁, w₂
    let (s, c) = (linalg::dot(&h1, &ex), linalg::dot(&h1, &ey));
    let a = c / s;
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a = {a} is not positive")));
    }
    Ok(TargetRotation {
        rotation,
        k1: n1 * s / 2.0,
        k2: n2 * s / 2.0,
        a,
    })
}

/// Output of [`reduce`].
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub normal_form: NormalFormGerm,
    pub transform: TransformRecord,
    /// False at the boundary `c₁(0) = 0` or `c₃(0) = 0`, where uniqueness fails.
    pub canonical: bool,
    pub passes: usize,
}

/// Distance of the first component from `u² − v²`.
fn first_component_residual(x: &TruncatedSeries2) -> f64 {
    x.terms().fold(0.0, |m, (i, j, c)| {
        let expect = match (i, j) {
            (2, 0) => 1.0,
            (0, 2) => -1.0,
            _ => 0.0,
        };
        m.max((c - expect).abs())
    })
}

/// One substitution `ũ = u√P`, `ṽ = v√Q` with `x = u²P − v²Q`; returns `s⁻¹`.
fn straightening_change(x: &TruncatedSeries2) -> Result<(TruncatedSeries2, TruncatedSeries2)> {
    let r = x.degree();
    let (k1, k2) = (x.coeff(2, 0), -x.coeff(0, 2));
    let rest = TruncatedSeries2::from_fn(r, |i, j| if i + j <= 2 { 0.0 } else { x.coeff(i, j) });
    let g = SplitSeries::from_series(&rest, "x", STRUCTURE_TOL * (1.0 + x.max_abs()))?;
    // P = k₁ + u g₁(u) + v² g₂,  Q = k₂ − v g₃(v), both of degree r − 2
    let p = TruncatedSeries2::from_fn(r - 2, |i, j| match (i, j) {
        (0, 0) => k1,
        (i, 0) => g.along_u.coeff(i - 1),
        (i, j) if j >= 2 => g.mixed.coeff(i, j - 2),
        _ => 0.0,
    });
    let q = TruncatedSeries2::from_fn(r - 2, |i, j| match (i, j) {
        (0, 0) => k2,
        (0, j) => -g.along_v.coeff(j - 1),
        _ => 0.0,
    });
    let su = p.sqrt()?.mul_monomial(1, 0).resize(r);
    let sv = q.sqrt()?.mul_monomial(0, 1).resize(r);
    invert_coordinate_change(&su, &sv)
}

/// The `u²v²` block of the second component, divided by `u²v²`.
fn mixed_block_of_y(m: &MapGerm) -> TruncatedSeries2 {
    let y = m.y();
    TruncatedSeries2::from_fn(m.degree() - 4, |i, j| y.coeff(i + 2, j + 2))
}

/// Composes a germ in normal form with `(u√(1 + v²H), v√(1 + u²H))` until
/// the `u²v²` block of `b` vanishes; returns the germ and the total change.
fn eliminate_b2(m: &MapGerm) -> Result<(MapGerm, TruncatedSeries2, TruncatedSeries2)> {
    let r = m.degree();
    let a = m.y().coeff(2, 0);
    let mut cur = m.clone();
    let mut inv = (TruncatedSeries2::var_u(r), TruncatedSeries2::var_v(r));
    for _ in 0..=r {
        let b2 = mixed_block_of_y(&cur);
        if b2.max_abs() <= 1e-13 * (1.0 + a) {
            return Ok((cur, inv.0, inv.1));
        }
        // 2aH cancels b₂ to leading order; the remainder moves up a degree
        let h = b2.scale(-0.5 / a);
        let alpha = h.mul_monomial(0, 2).add_scalar(1.0).sqrt()?;
        let beta = h.mul_monomial(2, 0).add_scalar(1.0).sqrt()?;
        let tu = alpha.mul_monomial(1, 0).resize(r);
        let tv = beta.mul_monomial(0, 1).resize(r);
        cur = cur.compose_source(&tu, &tv)?;
        inv = (inv.0.compose(&tu, &tv)?, inv.1.compose(&tu, &tv)?);
    }
    Err(Error::ReductionFailed {
        passes: r + 1,
        residual: mixed_block_of_y(&cur).max_abs(),
    })
}

/// The four discrete normalizations `(σ, T)` acting by `f ↦ T ∘ f ∘ σ`.
fn sign_candidates(r: usize) -> [(Mat3, TruncatedSeries2, TruncatedSeries2); 4] {
    let u = TruncatedSeries2::var_u(r);
    let v = TruncatedSeries2::var_v(r);
    let flip = Mat3::diag([-1.0, 1.0, -1.0]);
    [
        (Mat3::IDENTITY, u.clone(), v.clone()),
        (Mat3::IDENTITY, -&u, -&v),
        (flip, -&v, u.clone()),
        (flip, v, -&u),
    ]
}

/// Brings `m` to normal form to degree `r`.
///
/// Passes of the straightening substitution repeat until the first
/// component is `u² − v²`, at most `r` times. Signs are then fixed with the
/// π-rotation and quarter turns so that `c₁(0), c₃(0) ≥ 0`, preferring
/// `c₁(0) ≥ c₃(0)` when several choices qualify.
pub fn reduce(m: &MapGerm, r: usize) -> Result<Reduction> {
    reduce_with(m, r, ReduceOptions::default())
}

/// Knobs for [`reduce_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Also remove the `u²v²` block of `b` with the axis-preserving family
    /// `(u√(1 + v²H), v√(1 + u²H))`, which fixes `u² − v²`. Without this the
    /// blocks `b₂`, `c₂` depend on the input coordinates.
    pub eliminate_b2: bool,
}

/// [`reduce`] with options.
pub fn reduce_with(m: &MapGerm, r: usize, opts: ReduceOptions) -> Result<Reduction> {
    if r < 4 {
        return Err(Error::InvalidParameter(format!("degree must be at least 4, got {r}")));
    }
    if r > m.degree() {
        return Err(Error::InvalidParameter(format!(
            "requested degree {r} exceeds germ degree {}",
            m.degree()
        )));
    }
    let m = m.truncate(r);
    let phi = check_hypothesis(&m)?;
    let target = target_rotation(&eval3(&phi.phi1, 0.0, 0.0), &eval3(&phi.phi2, 0.0, 0.0))?;
    let mut rotation = target.rotation;
    let mut cur = m.rotate(&rotation);
    let mut inv = (TruncatedSeries2::var_u(r), TruncatedSeries2::var_v(r));
    let scale = 1.0 + cur.x().max_abs();
    let mut passes = 0;
    while first_component_residual(cur.x()) > 1e-12 * scale {
        if passes == r {
            return Err(Error::ReductionFailed {
                passes,
                residual: first_component_residual(cur.x()),
            });
        }
        let (tu, tv) = straightening_change(cur.x())?;
        cur = cur.compose_source(&tu, &tv)?;
        inv = (inv.0.compose(&tu, &tv)?, inv.1.compose(&tu, &tv)?);
        passes += 1;
    }
    let c1 = cur.z().coeff(3, 0);
    let c3 = cur.z().coeff(0, 3);
    let admissible = |p: f64, q: f64| p >= -STRUCTURE_TOL && q >= -STRUCTURE_TOL;
    let images = [(c1, c3), (-c1, -c3), (-c3, c1), (c3, -c1)];
    let choice = (0..4)
        .filter(|&k| admissible(images[k].0, images[k].1))
        .min_by_key(|&k| (images[k].0 < images[k].1 - STRUCTURE_TOL, k))
        .expect("one of the four sign patterns is admissible");
    let (t, su, sv) = sign_candidates(r).into_iter().nth(choice).expect("four candidates");
    cur = cur.compose_source(&su, &sv)?.rotate(&t);
    inv = (inv.0.compose(&su, &sv)?, inv.1.compose(&su, &sv)?);
    rotation = t.mul(&rotation);

    if opts.eliminate_b2 {
        let (next, tu, tv) = eliminate_b2(&cur)?;
        cur = next;
        inv = (inv.0.compose(&tu, &tv)?, inv.1.compose(&tu, &tv)?);
    }

    let normal_form = split_bc(&cur).map_err(|e| match e {
        Error::StructuralViolation { value, .. } => Error::ReductionFailed {
            passes,
            residual: value.abs(),
        },
        other => other,
    })?;
    Ok(Reduction {
        canonical: normal_form.is_canonical(),
        normal_form,
        transform: TransformRecord {
            rotation,
            source_change: inv,
        },
        passes,
    })
}

/// Flat coefficient vector `(a, jʳb(0), jʳc(0))` with a canonicity flag.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalJet {
    pub values: Vec<f64>,
    pub canonical: bool,
}

impl CanonicalJet {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn equivalent(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

/// Coefficients ordered as `a`, then `b` and `c` by total degree and then by
/// the power of `v`; structural zeros are kept so lengths depend only on `r`.
pub fn canonical_jet(nf: &NormalFormGerm, r: usize) -> Result<CanonicalJet> {
    if r > nf.degree() {
        return Err(Error::InvalidParameter(format!(
            "jet degree {r} exceeds germ degree {}",
            nf.degree()
        )));
    }
    let mut values = Vec::with_capacity(1 + (r + 1) * (r + 2));
    values.push(nf.a());
    for s in [nf.b_series(), nf.c_series()] {
        for d in 0..=r {
            for j in 0..=d {
                values.push(s.coeff(d - j, j));
            }
        }
    }
    Ok(CanonicalJet {
        values,
        canonical: nf.is_canonical(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries1;

    fn series(r: usize, t: &[(usize, usize, f64)]) -> TruncatedSeries2 {
        TruncatedSeries2::from_terms(r, t.iter().copied()).unwrap()
    }

    #[test]
    fn hypothesis_examples() {
        let model = NormalFormGerm::model(1.0, 5).unwrap().expand();
        let phi = check_hypothesis(&model).unwrap();
        assert_eq!(eval3(&phi.phi1, 0.0, 0.0), [2.0, 2.0, 0.0]);
        let edge = MapGerm::new(
            series(4, &[(1, 0, 1.0)]),
            series(4, &[(0, 2, 1.0)]),
            series(4, &[(0, 3, 1.0)]),
        )
        .unwrap();
        assert!(matches!(check_hypothesis(&edge), Err(Error::NotDivisible { var: 'u', .. })));
        let flat = MapGerm::new(
            series(4, &[(2, 0, 1.0), (0, 2, -1.0)]),
            series(4, &[(2, 0, 1.0), (0, 2, 1.0)]),
            TruncatedSeries2::zero(4),
        )
        .unwrap();
        assert!(check_hypothesis(&flat).is_ok());
    }

    #[test]
    fn target_rotation_examples() {
        let t = target_rotation(&[2.0, 2.0, 0.0], &[-2.0, 2.0, 0.0]).unwrap();
        assert!((t.k1 - 1.0).abs() < 1e-15 && (t.k2 - 1.0).abs() < 1e-15);
        assert!((t.a - 1.0).abs() < 1e-15);
        assert!(t.rotation.mul(&Mat3::IDENTITY.transpose()).orthogonality_residual() < 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((t.rotation.0[i][j] - e).abs() < 1e-15);
            }
        }
        let o = target_rotation(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert!((o.a - 1.0).abs() < 1e-15);
        let k = 1.0 / (2.0 * libm::sqrt(2.0));
        assert!((o.k1 - k).abs() < 1e-15 && (o.k2 - k).abs() < 1e-15);
        assert!(target_rotation(&[1.0, 0.0, 0.0], &[-2.0, 0.0, 0.0]).is_err());
        assert!(target_rotation(&[1.0, 0.0, 0.0], &[2.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn target_rotation_undoes_a_known_rotation() {
        let r = Mat3::rotation(&[0.3, -1.0, 0.4], 1.1);
        let w1 = r.apply(&[2.0, 3.0, 0.0]);
        let w2 = r.apply(&[-2.0, 3.0, 0.0]);
        let t = target_rotation(&w1, &w2).unwrap();
        assert!((t.a - 1.5).abs() < 1e-14);
        let back = t.rotation.mul(&r);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((back.0[i][j] - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn model_is_fixed() {
        let m = NormalFormGerm::model(1.0, 6).unwrap();
        let red = reduce(&m.expand(), 6).unwrap();
        assert_eq!(red.passes, 0);
        assert!(red.canonical);
        assert!(red.normal_form.expand().max_abs_diff(&m.expand()) < 1e-14);
        assert_eq!(red.transform.rotation, Mat3::IDENTITY);
    }

    #[test]
    fn negative_cubic_takes_pi_rotation() {
        let m = NormalFormGerm::model(1.0, 6).unwrap().expand();
        let neg = MapGerm::new(m.x().clone(), m.y().clone(), -m.z()).unwrap();
        let red = reduce(&neg, 6).unwrap();
        let c = red.normal_form.c();
        assert!((c.along_u.coeff(0) - 1.0).abs() < 1e-14);
        assert!((c.along_v.coeff(0) - 1.0).abs() < 1e-14);
        assert_eq!(red.transform.source_change.0, -&TruncatedSeries2::var_u(6));
        let back = red.transform.apply(&neg).unwrap();
        assert!(back.max_abs_diff(&red.normal_form.expand()) < 1e-12);
    }

    fn sample_germ() -> NormalFormGerm {
        NormalFormGerm::from_parts(
            0.7,
            TruncatedSeries1::from_coeffs([0.3, -0.2].to_vec()),
            series(2, &[(0, 0, 0.5)]),
            TruncatedSeries1::from_coeffs([0.1].to_vec()),
            TruncatedSeries1::from_coeffs([1.2, 0.4].to_vec()),
            TruncatedSeries2::zero(2),
            TruncatedSeries1::from_coeffs([0.6, 0.0, 0.3].to_vec()),
            6,
        )
        .unwrap()
    }

    fn axis_data(nf: &NormalFormGerm) -> [TruncatedSeries1; 4] {
        [
            nf.b().along_u.clone(),
            nf.b().along_v.clone(),
            nf.c().along_u.clone(),
            nf.c().along_v.clone(),
        ]
    }

    #[test]
    fn scaled_axes_are_straightened() {
        let nf = sample_germ();
        let su = series(6, &[(1, 0, 1.3), (2, 0, 0.2), (1, 2, -0.4)]);
        let sv = series(6, &[(0, 1, 0.8), (0, 2, -0.3), (2, 1, 0.25)]);
        let rot = Mat3::rotation(&[1.0, 0.5, -0.2], 0.9);
        let m = nf.expand().compose_source(&su, &sv).unwrap().rotate(&rot);
        let red = reduce(&m, 6).unwrap();
        assert!((red.normal_form.a() - nf.a()).abs() < 1e-12);
        for (x, y) in axis_data(&red.normal_form).iter().zip(axis_data(&nf).iter()) {
            assert!(x.max_abs_diff(y) < 1e-10);
        }
        let back = red.transform.apply(&m).unwrap();
        assert!(back.max_abs_diff(&red.normal_form.expand()) < 1e-9);
        red.transform.validate().unwrap();
    }

    #[test]
    fn mixed_blocks_move_under_the_axis_preserving_family() {
        let nf = sample_germ();
        // (u√(1 + v²H), v√(1 + u²H)) with H = 0.3 keeps u² − v² and both axes
        let h = TruncatedSeries2::constant(6, 0.3);
        let tu = h.mul_monomial(0, 2).add_scalar(1.0).sqrt().unwrap().mul_monomial(1, 0).resize(6);
        let tv = h.mul_monomial(2, 0).add_scalar(1.0).sqrt().unwrap().mul_monomial(0, 1).resize(6);
        let moved = split_bc(&nf.expand().compose_source(&tu, &tv).unwrap()).unwrap();
        let shift = moved.b().mixed.coeff(0, 0) - nf.b().mixed.coeff(0, 0);
        assert!((shift - 2.0 * nf.a() * 0.3).abs() < 1e-12);
        for (x, y) in axis_data(&moved).iter().zip(axis_data(&nf).iter()) {
            assert!(x.max_abs_diff(y) < 1e-12);
        }
    }

    #[test]
    fn eliminating_b2_makes_the_jet_coordinate_free() {
        let nf = sample_germ();
        let opts = ReduceOptions { eliminate_b2: true };
        let base = reduce_with(&nf.expand(), 6, opts).unwrap();
        assert!(base.normal_form.b().mixed.max_abs() < 1e-12);
        let su = series(6, &[(1, 0, 1.3), (2, 0, 0.2), (1, 2, -0.4)]);
        let sv = series(6, &[(0, 1, 0.8), (0, 2, -0.3), (2, 1, 0.25)]);
        let rot = Mat3::rotation(&[1.0, 0.5, -0.2], 0.9);
        let m = nf.expand().compose_source(&su, &sv).unwrap().rotate(&rot);
        let red = reduce_with(&m, 6, opts).unwrap();
        let a = canonical_jet(&red.normal_form, 6).unwrap();
        let b = canonical_jet(&base.normal_form, 6).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-9, "{}", a.max_abs_diff(&b));
        let back = red.transform.apply(&m).unwrap();
        assert!(back.max_abs_diff(&red.normal_form.expand()) < 1e-9);
    }

    #[test]
    fn boundary_germs_are_flagged() {
        let nf = NormalFormGerm::from_parts(
            1.0,
            TruncatedSeries1::zero(0),
            TruncatedSeries2::zero(0),
            TruncatedSeries1::zero(0),
            TruncatedSeries1::zero(0),
            TruncatedSeries2::zero(0),
            TruncatedSeries1::from_coeffs([1.0].to_vec()),
            5,
        )
        .unwrap();
        let red = reduce(&nf.expand(), 5).unwrap();
        assert!(!red.canonical);
        // quarter turn moves the nonzero value into c₁
        assert!((red.normal_form.c().along_u.coeff(0) - 1.0).abs() < 1e-14);
        assert!(!canonical_jet(&nf, 5).unwrap().canonical);
    }
}

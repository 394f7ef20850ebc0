//! Map germs `(R², 0) → (R³, 0)` and the normal-form data.

use alloc::format;

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::series::{map3, try_map3, TruncatedSeries1, TruncatedSeries2, Var};

/// Absolute slack for monomials that must vanish structurally.
pub const STRUCTURE_TOL: f64 = 1e-9;

/// A map germ given by three truncated component series.
#[derive(Debug, Clone, PartialEq)]
pub struct MapGerm {
    comps: [TruncatedSeries2; 3],
}

impl MapGerm {
    pub fn new(x: TruncatedSeries2, y: TruncatedSeries2, z: TruncatedSeries2) -> Result<Self> {
        let r = x.degree();
        for s in [&y, &z] {
            if s.degree() != r {
                return Err(Error::DegreeMismatch {
                    left: r,
                    right: s.degree(),
                });
            }
        }
        for (name, s) in ["x", "y", "z"].iter().zip([&x, &y, &z]) {
            if s.constant_term().abs() > STRUCTURE_TOL {
                return Err(Error::StructuralViolation {
                    component: name,
                    i: 0,
                    j: 0,
                    value: s.constant_term(),
                });
            }
        }
        Ok(Self {
            comps: [x, y, z].map(|s| {
                TruncatedSeries2::from_fn(s.degree(), |i, j| if i + j == 0 { 0.0 } else { s.coeff(i, j) })
            }),
        })
    }

    pub fn from_array(c: [TruncatedSeries2; 3]) -> Result<Self> {
        let [x, y, z] = c;
        Self::new(x, y, z)
    }

    pub fn degree(&self) -> usize {
        self.comps[0].degree()
    }

    pub fn x(&self) -> &TruncatedSeries2 {
        &self.comps[0]
    }

    pub fn y(&self) -> &TruncatedSeries2 {
        &self.comps[1]
    }

    pub fn z(&self) -> &TruncatedSeries2 {
        &self.comps[2]
    }

    pub fn components(&self) -> &[TruncatedSeries2; 3] {
        &self.comps
    }

    pub fn eval(&self, u: f64, v: f64) -> Vec3 {
        crate::series::eval3(&self.comps, u, v)
    }

    /// Componentwise `∂^{du}_u ∂^{dv}_v`.
    pub fn derivative(&self, du: usize, dv: usize) -> [TruncatedSeries2; 3] {
        map3(&self.comps, |s| s.derivative(du, dv))
    }

    /// Value of `∂^{du}_u ∂^{dv}_v f` at `(u, v)`.
    pub fn derivative_at(&self, du: usize, dv: usize, u: f64, v: f64) -> Vec3 {
        crate::series::eval3(&self.derivative(du, dv), u, v)
    }

    /// `A ∘ f` for a linear map `A` of the target.
    pub fn rotate(&self, a: &Mat3) -> Self {
        let c = &self.comps;
        let row = |k: usize| {
            let r = a.row(k);
            &(&c[0].scale(r[0]) + &c[1].scale(r[1])) + &c[2].scale(r[2])
        };
        Self {
            comps: [row(0), row(1), row(2)],
        }
    }

    /// `f ∘ (s_u, s_v)`.
    pub fn compose_source(&self, s_u: &TruncatedSeries2, s_v: &TruncatedSeries2) -> Result<Self> {
        let r = self.degree();
        let comps = try_map3(&self.comps, |c| c.compose(&s_u.resize(r), &s_v.resize(r)))?;
        Ok(Self { comps })
    }

    pub fn truncate(&self, r: usize) -> Self {
        Self {
            comps: map3(&self.comps, |c| c.truncate(r)),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3).fold(0.0, |m, k| m.max(self.comps[k].max_abs_diff(&other.comps[k])))
    }
}

/// A series of the shape `u³g₁(u) + u²v²g₂(u, v) + v³g₃(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSeries {
    pub along_u: TruncatedSeries1,
    pub mixed: TruncatedSeries2,
    pub along_v: TruncatedSeries1,
}

impl SplitSeries {
    /// The zero split for a germ of degree `r ≥ 4`.
    pub fn zero(r: usize) -> Self {
        Self {
            along_u: TruncatedSeries1::zero(r - 3),
            mixed: TruncatedSeries2::zero(r - 4),
            along_v: TruncatedSeries1::zero(r - 3),
        }
    }

    /// Resizes the parts to match a germ of degree `r ≥ 4`.
    pub fn fit(&self, r: usize) -> Self {
        Self {
            along_u: self.along_u.resize(r - 3),
            mixed: self.mixed.resize(r - 4),
            along_v: self.along_v.resize(r - 3),
        }
    }

    /// Assembles the full series to degree `r`.
    pub fn to_series(&self, r: usize) -> TruncatedSeries2 {
        TruncatedSeries2::from_fn(r, |i, j| {
            if j == 0 && i >= 3 {
                self.along_u.coeff(i - 3)
            } else if i == 0 && j >= 3 {
                self.along_v.coeff(j - 3)
            } else if i >= 2 && j >= 2 {
                self.mixed.coeff(i - 2, j - 2)
            } else {
                0.0
            }
        })
    }

    /// Splits `s`, rejecting any monomial outside the three blocks.
    pub fn from_series(s: &TruncatedSeries2, component: &'static str, tol: f64) -> Result<Self> {
        let r = s.degree();
        if r < 4 {
            return Err(Error::InvalidParameter(format!(
                "degree {r} is too small for a split (need at least 4)"
            )));
        }
        for (i, j, c) in s.terms() {
            let allowed = (j == 0 && i >= 3) || (i == 0 && j >= 3) || (i >= 2 && j >= 2);
            if !allowed && c.abs() > tol {
                return Err(Error::StructuralViolation {
                    component,
                    i,
                    j,
                    value: c,
                });
            }
        }
        Ok(Self {
            along_u: TruncatedSeries1::from_coeffs((3..=r).map(|i| s.coeff(i, 0)).collect()),
            mixed: TruncatedSeries2::from_fn(r - 4, |i, j| s.coeff(i + 2, j + 2)),
            along_v: TruncatedSeries1::from_coeffs((3..=r).map(|j| s.coeff(0, j)).collect()),
        })
    }

    /// The coefficient function on the axis `var` (`g₁` or `g₃`).
    pub fn axis(&self, var: Var) -> &TruncatedSeries1 {
        match var {
            Var::U => &self.along_u,
            Var::V => &self.along_v,
        }
    }
}

/// Normal-form data `(a; b₁, b₂, b₃; c₁, c₂, c₃)` truncated at degree `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGerm {
    a: f64,
    b: SplitSeries,
    c: SplitSeries,
    degree: usize,
}

impl NormalFormGerm {
    /// Validates `r ≥ 4`, `a > 0` and `c₁(0), c₃(0) ≥ 0`; parts are resized to `r`.
    pub fn new(a: f64, b: SplitSeries, c: SplitSeries, degree: usize) -> Result<Self> {
        if degree < 4 {
            return Err(Error::InvalidParameter(format!(
                "normal form needs degree at least 4, got {degree}"
            )));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
        }
        for (name, v) in [("c1(0)", c.along_u.coeff(0)), ("c3(0)", c.along_v.coeff(0))] {
            if v < -STRUCTURE_TOL {
                return Err(Error::InvalidParameter(format!("{name} must be nonnegative, got {v}")));
            }
        }
        Ok(Self {
            a,
            b: b.fit(degree),
            c: c.fit(degree),
            degree,
        })
    }

    /// Convenience constructor from the six coefficient functions.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        a: f64,
        b1: TruncatedSeries1,
        b2: TruncatedSeries2,
        b3: TruncatedSeries1,
        c1: TruncatedSeries1,
        c2: TruncatedSeries2,
        c3: TruncatedSeries1,
        degree: usize,
    ) -> Result<Self> {
        let b = SplitSeries {
            along_u: b1,
            mixed: b2,
            along_v: b3,
        };
        let c = SplitSeries {
            along_u: c1,
            mixed: c2,
            along_v: c3,
        };
        Self::new(a, b, c, degree)
    }

    /// The germ `(u² − v², a(u² + v²), u³ + v³)`.
    pub fn model(a: f64, degree: usize) -> Result<Self> {
        let one = TruncatedSeries1::constant(0, 1.0);
        let c = SplitSeries {
            along_u: one.clone(),
            mixed: TruncatedSeries2::zero(0),
            along_v: one,
        };
        Self::new(a, SplitSeries::zero(4), c, degree)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> &SplitSeries {
        &self.b
    }

    pub fn c(&self) -> &SplitSeries {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Same data at another truncation degree (`≥ 4`).
    pub fn with_degree(&self, r: usize) -> Result<Self> {
        Self::new(self.a, self.b.clone(), self.c.clone(), r)
    }

    pub fn b_series(&self) -> TruncatedSeries2 {
        self.b.to_series(self.degree)
    }

    pub fn c_series(&self) -> TruncatedSeries2 {
        self.c.to_series(self.degree)
    }

    /// `(u² − v², a(u² + v²) + b, c)`.
    pub fn expand(&self) -> MapGerm {
        let r = self.degree;
        let x = TruncatedSeries2::from_fn(r, |i, j| match (i, j) {
            (2, 0) => 1.0,
            (0, 2) => -1.0,
            _ => 0.0,
        });
        let quad = TruncatedSeries2::from_fn(r, |i, j| match (i, j) {
            (2, 0) | (0, 2) => self.a,
            _ => 0.0,
        });
        let y = &quad + &self.b_series();
        MapGerm {
            comps: [x, y, self.c_series()],
        }
    }

    /// True when `c₁(0)` and `c₃(0)` are both strictly positive.
    pub fn is_canonical(&self) -> bool {
        self.c.along_u.coeff(0) > STRUCTURE_TOL && self.c.along_v.coeff(0) > STRUCTURE_TOL
    }
}

/// Reads normal-form data off a germ already in normal form.
pub fn split_bc(m: &MapGerm) -> Result<NormalFormGerm> {
    split_bc_with_tol(m, STRUCTURE_TOL)
}

pub fn split_bc_with_tol(m: &MapGerm, tol: f64) -> Result<NormalFormGerm> {
    let r = m.degree();
    for (i, j, c) in m.x().terms() {
        let expect = match (i, j) {
            (2, 0) => 1.0,
            (0, 2) => -1.0,
            _ => 0.0,
        };
        if (c - expect).abs() > tol {
            return Err(Error::StructuralViolation {
                component: "x",
                i,
                j,
                value: c,
            });
        }
    }
    for (i, j) in [(2, 0), (0, 2)] {
        if m.x().coeff(i, j) == 0.0 {
            return Err(Error::StructuralViolation {
                component: "x",
                i,
                j,
                value: 0.0,
            });
        }
    }
    let y = m.y();
    let a = y.coeff(2, 0);
    if (y.coeff(0, 2) - a).abs() > tol {
        return Err(Error::StructuralViolation {
            component: "y",
            i: 0,
            j: 2,
            value: y.coeff(0, 2),
        });
    }
    let rest = TruncatedSeries2::from_fn(r, |i, j| match (i, j) {
        (2, 0) | (0, 2) => 0.0,
        _ => y.coeff(i, j),
    });
    let b = SplitSeries::from_series(&rest, "y", tol)?;
    let c = SplitSeries::from_series(m.z(), "z", tol)?;
    NormalFormGerm::new(a, b, c, r)
}

/// A target rotation `A` together with the source change `s⁻¹`, acting by
/// `f ↦ A ∘ f ∘ s⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformRecord {
    pub rotation: Mat3,
    pub source_change: (TruncatedSeries2, TruncatedSeries2),
}

impl TransformRecord {
    pub fn identity(r: usize) -> Self {
        Self {
            rotation: Mat3::IDENTITY,
            source_change: (TruncatedSeries2::var_u(r), TruncatedSeries2::var_v(r)),
        }
    }

    pub fn apply(&self, m: &MapGerm) -> Result<MapGerm> {
        let (su, sv) = &self.source_change;
        Ok(m.compose_source(su, sv)?.rotate(&self.rotation))
    }

    /// Checks orthogonality, orientation and invertibility of the linear part.
    pub fn validate(&self) -> Result<()> {
        if self.rotation.orthogonality_residual() > 1e-12 || (self.rotation.det() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "rotation is not in SO(3) (residual {:e})",
                self.rotation.orthogonality_residual()
            )));
        }
        let (su, sv) = &self.source_change;
        let det = su.coeff(1, 0) * sv.coeff(0, 1) - su.coeff(0, 1) * sv.coeff(1, 0);
        if det.abs() < 1e-12 {
            return Err(Error::SingularLinearPart(det));
        }
        Ok(())
    }
}

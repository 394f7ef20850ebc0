use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::{TruncatedSeries1, Var, ZERO_TOL};
use crate::error::{Error, Result};

/// Number of monomials of total degree at most `r`.
#[inline]
const fn len(r: usize) -> usize {
    (r + 1) * (r + 2) / 2
}

/// Dense slot of `u^i v^j`, grouped by total degree.
#[inline]
const fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Bivariate power series in `(u, v)` truncated at total degree `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries2 {
    degree: usize,
    coeffs: Vec<f64>,
}

impl TruncatedSeries2 {
    fn from_raw(degree: usize, mut coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), len(degree));
        for c in coeffs.iter_mut() {
            if c.abs() < ZERO_TOL {
                *c = 0.0;
            }
        }
        Self { degree, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![0.0; len(degree)],
        }
    }

    pub fn constant(degree: usize, c: f64) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        Self::from_raw(degree, s.coeffs)
    }

    pub fn var_u(degree: usize) -> Self {
        Self::monomial(degree, 1, 0, 1.0)
    }

    pub fn var_v(degree: usize) -> Self {
        Self::monomial(degree, 0, 1, 1.0)
    }

    /// `c·u^i v^j`, silently zero when `i + j > degree`.
    pub fn monomial(degree: usize, i: usize, j: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; len(degree)];
        if i + j <= degree {
            coeffs[idx(i, j)] = c;
        }
        Self::from_raw(degree, coeffs)
    }

    /// Builds a series from `(i, j, c)` triples; repeated exponents accumulate.
    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut coeffs = vec![0.0; len(degree)];
        for (i, j, c) in terms {
            if i + j > degree {
                return Err(Error::TermBeyondDegree { i, j, degree });
            }
            coeffs[idx(i, j)] += c;
        }
        Ok(Self::from_raw(degree, coeffs))
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut coeffs = vec![0.0; len(degree)];
        for d in 0..=degree {
            for j in 0..=d {
                coeffs[idx(d - j, j)] = f(d - j, j);
            }
        }
        Self::from_raw(degree, coeffs)
    }

    /// Lifts a series in one variable, placing it along `var`.
    pub fn from_univariate(degree: usize, s: &TruncatedSeries1, var: Var) -> Self {
        Self::from_fn(degree, |i, j| match var {
            Var::U if j == 0 => s.coeff(i),
            Var::V if i == 0 => s.coeff(j),
            _ => 0.0,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `u^i v^j`; zero beyond the truncation degree.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j <= self.degree {
            self.coeffs[idx(i, j)]
        } else {
            0.0
        }
    }

    #[inline]
    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    /// Nonzero terms as `(i, j, c)`, ordered by total degree then by `j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.degree).flat_map(move |d| {
            (0..=d).filter_map(move |j| {
                let c = self.coeffs[idx(d - j, j)];
                (c != 0.0).then_some((d - j, j, c))
            })
        })
    }

    /// All coefficients in slot order, zeros included.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Max coefficient difference over the common degree range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let r = self.degree.max(other.degree);
        let mut m: f64 = 0.0;
        for d in 0..=r {
            for j in 0..=d {
                m = m.max((self.coeff(d - j, j) - other.coeff(d - j, j)).abs());
            }
        }
        m
    }

    /// Sets coefficients below `tol` in absolute value to zero.
    pub fn chop(&self, tol: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c.abs() < tol { 0.0 } else { c })
            .collect();
        Self {
            degree: self.degree,
            coeffs,
        }
    }

    /// Drops terms above degree `r` (or pads with zeros when `r` is larger).
    pub fn resize(&self, r: usize) -> Self {
        Self::from_fn(r, |i, j| self.coeff(i, j))
    }

    pub fn truncate(&self, r: usize) -> Self {
        self.resize(r.min(self.degree))
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self::from_fn(self.degree, |i, j| if i + j == d { self.coeff(i, j) } else { 0.0 })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.degree, self.coeffs.iter().map(|c| c * s).collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let r = self.degree.min(rhs.degree);
        Self::from_fn(r, |i, j| f(self.coeff(i, j), rhs.coeff(i, j)))
    }

    fn mul_jet(&self, rhs: &Self) -> Self {
        let r = self.degree.min(rhs.degree);
        let mut out = vec![0.0; len(r)];
        for d1 in 0..=r {
            for j1 in 0..=d1 {
                let a = self.coeffs[idx(d1 - j1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(r - d1) {
                    for j2 in 0..=d2 {
                        let b = rhs.coeffs[idx(d2 - j2, j2)];
                        if b != 0.0 {
                            out[idx(d1 - j1 + d2 - j2, j1 + j2)] += a * b;
                        }
                    }
                }
            }
        }
        Self::from_raw(r, out)
    }

    fn check_degree(&self, rhs: &Self) -> Result<()> {
        if self.degree == rhs.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch {
                left: self.degree,
                right: rhs.degree,
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_degree(rhs)?;
        Ok(self * rhs)
    }

    pub fn add_scalar(&self, c: f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Self::from_raw(self.degree, coeffs)
    }

    /// Multiplies by `u^i v^j`; the product is known to `degree + i + j`.
    pub fn mul_monomial(&self, i: usize, j: usize) -> Self {
        let r = self.degree + i + j;
        Self::from_fn(r, |p, q| {
            if p >= i && q >= j {
                self.coeff(p - i, q - j)
            } else {
                0.0
            }
        })
    }

    /// Exact quotient by `var`; the result has degree `r − 1`.
    ///
    /// Fails when a coefficient free of `var` exceeds `tol`.
    pub fn div_var(&self, var: Var, tol: f64) -> Result<Self> {
        for d in 0..=self.degree {
            let (i, j) = match var {
                Var::U => (0, d),
                Var::V => (d, 0),
            };
            let c = self.coeff(i, j);
            if c.abs() > tol {
                return Err(Error::NotDivisible {
                    var: var.name(),
                    i,
                    j,
                    value: c,
                });
            }
        }
        let r = self.degree.saturating_sub(1);
        if self.degree == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_fn(r, |i, j| match var {
            Var::U => self.coeff(i + 1, j),
            Var::V => self.coeff(i, j + 1),
        }))
    }

    pub fn div_u(&self) -> Result<Self> {
        self.div_var(Var::U, super::DIVISION_TOL * (1.0 + self.max_abs()))
    }

    pub fn div_v(&self) -> Result<Self> {
        self.div_var(Var::V, super::DIVISION_TOL * (1.0 + self.max_abs()))
    }

    /// Formal partial derivative; degree drops by one (stays 0 for constants).
    pub fn partial(&self, var: Var) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.degree - 1, |i, j| match var {
            Var::U => (i + 1) as f64 * self.coeff(i + 1, j),
            Var::V => (j + 1) as f64 * self.coeff(i, j + 1),
        })
    }

    /// `∂^{du}_u ∂^{dv}_v`.
    pub fn derivative(&self, du: usize, dv: usize) -> Self {
        let mut s = self.clone();
        for _ in 0..du {
            s = s.partial(Var::U);
        }
        for _ in 0..dv {
            s = s.partial(Var::V);
        }
        s
    }

    /// Value of the truncated polynomial at `(u, v)` by nested Horner.
    pub fn evaluate(&self, u: f64, v: f64) -> f64 {
        let r = self.degree;
        let mut acc = 0.0;
        for i in (0..=r).rev() {
            let mut inner = 0.0;
            for j in (0..=(r - i)).rev() {
                inner = inner * v + self.coeffs[idx(i, j)];
            }
            acc = acc * u + inner;
        }
        acc
    }

    /// Substitutes `(u, v) ↦ (inner_u, inner_v)`.
    ///
    /// The inner series must vanish at the origin; the result has the
    /// smallest of the three degrees.
    pub fn compose(&self, inner_u: &Self, inner_v: &Self) -> Result<Self> {
        for s in [inner_u, inner_v] {
            if s.constant_term() != 0.0 {
                return Err(Error::NonzeroConstantTerm(s.constant_term()));
            }
        }
        let r = self.degree.min(inner_u.degree).min(inner_v.degree);
        let pu = powers(&inner_u.resize(r), r);
        let pv = powers(&inner_v.resize(r), r);
        let mut acc = Self::zero(r);
        for i in 0..=r {
            let mut inner = Self::zero(r);
            for j in 0..=(r - i) {
                let c = self.coeff(i, j);
                if c != 0.0 {
                    inner = &inner + &pv[j].scale(c);
                }
            }
            if !inner.is_zero() {
                acc = &acc + &(&pu[i] * &inner);
            }
        }
        Ok(acc)
    }

    /// Square root with positive constant term, solved degree by degree
    /// from `y² = s`.
    pub fn sqrt(&self) -> Result<Self> {
        let s0 = self.constant_term();
        if s0 <= 0.0 || !s0.is_finite() {
            return Err(Error::NonPositiveConstant(s0));
        }
        let r = self.degree;
        let mut y = vec![0.0; len(r)];
        y[0] = libm::sqrt(s0);
        for d in 1..=r {
            for j in 0..=d {
                let i = d - j;
                let mut acc = self.coeffs[idx(i, j)];
                // products of two strictly lower-degree nonconstant terms
                for d1 in 1..d {
                    for j1 in 0..=d1 {
                        let i1 = d1 - j1;
                        if i1 > i || j1 > j {
                            continue;
                        }
                        acc -= y[idx(i1, j1)] * y[idx(i - i1, j - j1)];
                    }
                }
                y[idx(i, j)] = acc / (2.0 * y[0]);
            }
        }
        Ok(Self::from_raw(r, y))
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let s0 = self.constant_term();
        if s0 == 0.0 || !s0.is_finite() {
            return Err(Error::ZeroConstant);
        }
        let r = self.degree;
        let mut y = vec![0.0; len(r)];
        y[0] = 1.0 / s0;
        for d in 1..=r {
            for j in 0..=d {
                let i = d - j;
                let mut acc = 0.0;
                for d1 in 1..=d {
                    for j1 in 0..=d1 {
                        let i1 = d1 - j1;
                        if i1 > i || j1 > j {
                            continue;
                        }
                        acc += self.coeffs[idx(i1, j1)] * y[idx(i - i1, j - j1)];
                    }
                }
                y[idx(i, j)] = -acc / s0;
            }
        }
        Ok(Self::from_raw(r, y))
    }

    /// `s^α` for a series with positive constant term.
    pub fn powf(&self, alpha: f64) -> Result<Self> {
        let s0 = self.constant_term();
        if s0 <= 0.0 || !s0.is_finite() {
            return Err(Error::NonPositiveConstant(s0));
        }
        let r = self.degree;
        // s = s0 (1 + w) with w(0) = 0, then the binomial series
        let w = self.scale(1.0 / s0).add_scalar(-1.0);
        let mut acc = Self::constant(r, 1.0);
        let mut wk = Self::constant(r, 1.0);
        let mut binom = 1.0;
        for k in 1..=r {
            wk = &wk * &w;
            binom *= (alpha - (k - 1) as f64) / k as f64;
            acc = &acc + &wk.scale(binom);
        }
        Ok(acc.scale(libm::pow(s0, alpha)))
    }

    /// Restriction to the `var` axis (the other variable set to zero).
    pub fn restrict(&self, var: Var) -> TruncatedSeries1 {
        let r = self.degree;
        let coeffs = (0..=r)
            .map(|k| match var {
                Var::U => self.coeff(k, 0),
                Var::V => self.coeff(0, k),
            })
            .collect();
        TruncatedSeries1::from_coeffs(coeffs)
    }
}

fn powers(s: &TruncatedSeries2, n: usize) -> Vec<TruncatedSeries2> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(TruncatedSeries2::constant(s.degree(), 1.0));
    for k in 1..=n {
        let next = &out[k - 1] * s;
        out.push(next);
    }
    out
}

/// Inverse of the coordinate change `(u, v) ↦ (s_u, s_v)`.
///
/// The linear part is inverted exactly and each further pass of the
/// fixed-point map `t ↦ L⁻¹(id − N∘t)` fixes one more homogeneous degree.
pub fn invert_coordinate_change(
    s_u: &TruncatedSeries2,
    s_v: &TruncatedSeries2,
) -> Result<(TruncatedSeries2, TruncatedSeries2)> {
    for s in [s_u, s_v] {
        if s.constant_term() != 0.0 {
            return Err(Error::NonzeroConstantTerm(s.constant_term()));
        }
    }
    let r = s_u.degree().min(s_v.degree());
    let (a, b) = (s_u.coeff(1, 0), s_u.coeff(0, 1));
    let (c, d) = (s_v.coeff(1, 0), s_v.coeff(0, 1));
    let det = a * d - b * c;
    let scale = (a.abs() + b.abs()) * (c.abs() + d.abs());
    if det.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) || !det.is_finite() {
        return Err(Error::SingularLinearPart(det));
    }
    let (ia, ib, ic, id) = (d / det, -b / det, -c / det, a / det);
    let lin = |x: &TruncatedSeries2, y: &TruncatedSeries2| {
        (
            &x.scale(ia) + &y.scale(ib),
            &x.scale(ic) + &y.scale(id),
        )
    };
    let strip = |s: &TruncatedSeries2| {
        TruncatedSeries2::from_fn(r, |i, j| if i + j >= 2 { s.coeff(i, j) } else { 0.0 })
    };
    let (nu, nv) = (strip(s_u), strip(s_v));
    let u = TruncatedSeries2::var_u(r);
    let v = TruncatedSeries2::var_v(r);
    let (mut tu, mut tv) = lin(&u, &v);
    for _ in 1..r {
        let ru = &u - &nu.compose(&tu, &tv)?;
        let rv = &v - &nv.compose(&tu, &tv)?;
        let next = lin(&ru, &rv);
        tu = next.0;
        tv = next.1;
    }
    Ok((tu, tv))
}

impl Add for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn add(self, rhs: Self) -> TruncatedSeries2 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn sub(self, rhs: Self) -> TruncatedSeries2 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn mul(self, rhs: Self) -> TruncatedSeries2 {
        self.mul_jet(rhs)
    }
}

impl Neg for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn neg(self) -> TruncatedSeries2 {
        self.scale(-1.0)
    }
}

impl Add for TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn add(self, rhs: Self) -> TruncatedSeries2 {
        &self + &rhs
    }
}

impl Sub for TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn sub(self, rhs: Self) -> TruncatedSeries2 {
        &self - &rhs
    }
}

impl Mul for TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn mul(self, rhs: Self) -> TruncatedSeries2 {
        &self * &rhs
    }
}

impl Neg for TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn neg(self) -> TruncatedSeries2 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn mul(self, rhs: f64) -> TruncatedSeries2 {
        self.scale(rhs)
    }
}

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::ZERO_TOL;
use crate::error::{Error, Result};

/// Power series in one variable truncated at degree `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries1 {
    coeffs: Vec<f64>,
}

impl TruncatedSeries1 {
    /// Takes `coeffs[k]` as the coefficient of `t^k`; an empty vector means
    /// the zero series of degree 0.
    pub fn from_coeffs(mut coeffs: Vec<f64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        for c in coeffs.iter_mut() {
            if c.abs() < ZERO_TOL {
                *c = 0.0;
            }
        }
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![0.0; degree + 1],
        }
    }

    pub fn constant(degree: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; degree + 1];
        coeffs[0] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn var(degree: usize) -> Self {
        let mut coeffs = vec![0.0; degree + 1];
        if degree >= 1 {
            coeffs[1] = 1.0;
        }
        Self { coeffs }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let r = self.degree().max(other.degree());
        (0..=r).fold(0.0, |m, k| m.max((self.coeff(k) - other.coeff(k)).abs()))
    }

    pub fn resize(&self, r: usize) -> Self {
        Self::from_coeffs((0..=r).map(|k| self.coeff(k)).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add_scalar(&self, c: f64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Self::from_coeffs(coeffs)
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero(0);
        }
        Self::from_coeffs(
            (1..=self.degree())
                .map(|k| k as f64 * self.coeffs[k])
                .collect(),
        )
    }

    /// Exact quotient by the variable; fails on a constant term above `tol`.
    pub fn div_by_var(&self, tol: f64) -> Result<Self> {
        let c = self.coeffs[0];
        if c.abs() > tol {
            return Err(Error::NotDivisible {
                var: 't',
                i: 0,
                j: 0,
                value: c,
            });
        }
        if self.degree() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// Multiplies by `t^k`; the product is known to `degree + k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_coeffs(coeffs)
    }

    pub fn recip(&self) -> Result<Self> {
        let s0 = self.coeffs[0];
        if s0 == 0.0 || !s0.is_finite() {
            return Err(Error::ZeroConstant);
        }
        let r = self.degree();
        let mut y = vec![0.0; r + 1];
        y[0] = 1.0 / s0;
        for k in 1..=r {
            let acc: f64 = (1..=k).map(|p| self.coeffs[p] * y[k - p]).sum();
            y[k] = -acc / s0;
        }
        Ok(Self::from_coeffs(y))
    }

    pub fn sqrt(&self) -> Result<Self> {
        let s0 = self.coeffs[0];
        if s0 <= 0.0 || !s0.is_finite() {
            return Err(Error::NonPositiveConstant(s0));
        }
        let r = self.degree();
        let mut y = vec![0.0; r + 1];
        y[0] = libm::sqrt(s0);
        for k in 1..=r {
            let acc: f64 = (1..k).map(|p| y[p] * y[k - p]).sum();
            y[k] = (self.coeffs[k] - acc) / (2.0 * y[0]);
        }
        Ok(Self::from_coeffs(y))
    }

    /// `s^α` via `s·(y)' = α·s'·y`.
    pub fn powf(&self, alpha: f64) -> Result<Self> {
        let s0 = self.coeffs[0];
        if s0 <= 0.0 || !s0.is_finite() {
            return Err(Error::NonPositiveConstant(s0));
        }
        let r = self.degree();
        let s = &self.coeffs;
        let mut y = vec![0.0; r + 1];
        y[0] = libm::pow(s0, alpha);
        for k in 1..=r {
            // k s0 y_k = Σ_{p=1..k} (α p − (k − p)) s_p y_{k−p}
            let acc: f64 = (1..=k)
                .map(|p| (alpha * p as f64 - (k - p) as f64) * s[p] * y[k - p])
                .sum();
            y[k] = acc / (k as f64 * s0);
        }
        Ok(Self::from_coeffs(y))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let r = self.degree().min(rhs.degree());
        Self::from_coeffs((0..=r).map(|k| f(self.coeffs[k], rhs.coeffs[k])).collect())
    }
}

impl Add for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn add(self, rhs: Self) -> TruncatedSeries1 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn sub(self, rhs: Self) -> TruncatedSeries1 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn mul(self, rhs: Self) -> TruncatedSeries1 {
        let r = self.degree().min(rhs.degree());
        let mut out = vec![0.0; r + 1];
        for (p, &a) in self.coeffs.iter().enumerate().take(r + 1) {
            if a == 0.0 {
                continue;
            }
            for q in 0..=(r - p) {
                out[p + q] += a * rhs.coeffs[q];
            }
        }
        TruncatedSeries1::from_coeffs(out)
    }
}

impl Neg for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn neg(self) -> TruncatedSeries1 {
        self.scale(-1.0)
    }
}

impl Add for TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn add(self, rhs: Self) -> TruncatedSeries1 {
        &self + &rhs
    }
}

impl Sub for TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn sub(self, rhs: Self) -> TruncatedSeries1 {
        &self - &rhs
    }
}

impl Mul for TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn mul(self, rhs: Self) -> TruncatedSeries1 {
        &self * &rhs
    }
}

//! Truncated power series in one and two variables.
//!
//! Coefficients are `f64`. Products and compositions drop everything above the
//! truncation degree; binary operators on series of different degrees work at
//! the smaller one, while the `try_*` methods insist on equal degrees.

mod bivariate;
mod univariate;

use core::ops::{Add, Mul, Sub};

pub use bivariate::{invert_coordinate_change, TruncatedSeries2};
pub use univariate::TruncatedSeries1;

/// Coefficients smaller than this are stored as exact zeros.
pub const ZERO_TOL: f64 = 1e-12;

/// Relative slack for the exact-division checks.
pub const DIVISION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn name(self) -> char {
        match self {
            Var::U => 'u',
            Var::V => 'v',
        }
    }

    pub fn other(self) -> Var {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }
}

pub fn dot<T>(a: &[T; 3], b: &[T; 3]) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross<T>(a: &[T; 3], b: &[T; 3]) -> [T; 3]
where
    for<'a> &'a T: Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn det<T>(a: &[T; 3], b: &[T; 3], c: &[T; 3]) -> T
where
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    dot(&cross(a, b), c)
}

/// Componentwise evaluation of a series triple.
pub fn eval3(s: &[TruncatedSeries2; 3], u: f64, v: f64) -> [f64; 3] {
    [s[0].evaluate(u, v), s[1].evaluate(u, v), s[2].evaluate(u, v)]
}

pub fn map3<T, U>(s: &[T; 3], f: impl Fn(&T) -> U) -> [U; 3] {
    [f(&s[0]), f(&s[1]), f(&s[2])]
}

pub fn try_map3<T, U, E>(s: &[T; 3], f: impl Fn(&T) -> Result<U, E>) -> Result<[U; 3], E> {
    Ok([f(&s[0])?, f(&s[1])?, f(&s[2])?])
}

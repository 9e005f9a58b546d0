//! Arithmetic backends shared by the closed-form code paths.
//!
//! The classification criteria are polynomial equalities whose constants
//! (the golden ratio, `sqrt(3)`, `2cos(j*pi/7)`) are irrational. Three
//! backends implement [`Scalar`]:
//!
//! * `f64`, compared with a relative/absolute [`Tolerance`];
//! * [`Algebraic`](crate::algebraic::Algebraic), exact arithmetic in the
//!   number field that contains all of those constants;
//! * [`Extended`](crate::extended::Extended), rationals with the constants
//!   rounded to 80 decimal places.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Zero test used by every criterion and divisibility check.
///
/// A value `v` computed at magnitude `scale` counts as zero when
/// `|v| <= rel * scale + abs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const DOUBLE: Tolerance = Tolerance { rel: 1e-9, abs: 1e-12 };
    pub const EXTENDED: Tolerance = Tolerance { rel: 1e-50, abs: 1e-60 };

    pub fn with_rel(rel: f64) -> Self {
        Tolerance { rel, abs: rel * 1e-3 }
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.rel * scale + self.abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DOUBLE
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Whether comparisons are exact (no tolerance applies).
    fn is_exact() -> bool;
    fn is_zero(&self) -> bool;

    /// The golden ratio `(sqrt(5) + 1) / 2`.
    fn golden() -> Self;
    fn sqrt3() -> Self;
    /// `2cos(j*pi/7)` for `j` in `1..=3`.
    fn two_cos_pi7(j: u32) -> Self;

    fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol.bound(scale)
        }
    }

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn golden() -> Self {
        (5f64.sqrt() + 1.0) / 2.0
    }
    fn sqrt3() -> Self {
        3f64.sqrt()
    }
    fn two_cos_pi7(j: u32) -> Self {
        2.0 * (j as f64 * std::f64::consts::PI / 7.0).cos()
    }
}

/// Largest absolute value of a slice, used as the scale of homogeneous
/// criteria in the parameters.
pub fn max_abs<T: Scalar>(values: &[T]) -> f64 {
    values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
}

/// Compare `lhs` and `rhs`, two homogeneous expressions of the given degree
/// in parameters of magnitude `scale`.
pub fn approx_eq<T: Scalar>(lhs: &T, rhs: &T, degree: i32, scale: f64, tol: &Tolerance) -> bool {
    (lhs.clone() - rhs.clone()).is_negligible(scale.max(1e-300).powi(degree), tol)
}

/// Nonzero test for a homogeneous expression (the negation of `approx_eq` with zero).
pub fn is_nonzero<T: Scalar>(v: &T, degree: i32, scale: f64, tol: &Tolerance) -> bool {
    !v.is_negligible(scale.max(1e-300).powi(degree), tol)
}

/// Solve the square system `m x = rhs` by Gaussian elimination; `None` when singular.
///
/// Pivots are the largest in magnitude, which for exact backends simply
/// skips exact zeros.
pub fn solve_linear<T: Scalar>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].to_f64().abs().total_cmp(&m[b][col].to_f64().abs()))?;
        if m[pivot][col].is_zero() {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let f = m[row][col].clone() / m[col][col].clone();
            for k in col..n {
                m[row][k] = m[row][k].clone() - f.clone() * m[col][k].clone();
            }
            rhs[row] = rhs[row].clone() - f * rhs[col].clone();
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in row + 1..n {
            acc = acc - m[row][k].clone() * x[k].clone();
        }
        x[row] = acc / m[row][row].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_bound() {
        assert_eq!(Tolerance::DOUBLE.bound(2.0), 2e-9 + 1e-12);
        assert!(approx_eq(&1.0, &(1.0 + 1e-10), 1, 1.0, &Tolerance::DOUBLE));
        assert!(!approx_eq(&1.0, &1.001, 1, 1.0, &Tolerance::DOUBLE));
        assert!(approx_eq(&1e6, &(1e6 + 1e-4), 1, 1e6, &Tolerance::DOUBLE));
        assert!(is_nonzero(&1e-6, 2, 1e-3, &Tolerance::DOUBLE));
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![0.0, 2.0, 1.0], vec![1.0, 1.0, 0.0], vec![3.0, 0.0, 1.0]];
        let x = solve_linear(m, vec![5.0, 3.0, 4.0]).unwrap();
        for (a, b) in x.iter().zip([1.0, 2.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(solve_linear(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }
}

//! Dense polynomials in `zeta` whose coefficients are polynomials in `rho`.

use crate::scalar::{Scalar, Tolerance};

/// Polynomial in `rho`, lowest degree first.
pub type RhoPoly<T> = Vec<T>;

pub(crate) fn rho_add<T: Scalar>(a: &[T], b: &[T]) -> RhoPoly<T> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(crate) fn rho_neg<T: Scalar>(a: &[T]) -> RhoPoly<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub(crate) fn rho_sub<T: Scalar>(a: &[T], b: &[T]) -> RhoPoly<T> {
    rho_add(a, &rho_neg(b))
}

pub(crate) fn rho_mul<T: Scalar>(a: &[T], b: &[T]) -> RhoPoly<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

pub(crate) fn rho_scale<T: Scalar>(a: &[T], s: &T) -> RhoPoly<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

/// Drop trailing exact zeros.
fn rho_trim<T: Scalar>(mut a: RhoPoly<T>) -> RhoPoly<T> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

/// Degree in `rho`, ignoring exact trailing zeros; `None` for the zero polynomial.
pub fn rho_degree<T: Scalar>(a: &[T]) -> Option<usize> {
    a.iter().rposition(|x| !x.is_zero())
}

fn rho_eval<T: Scalar>(a: &[T], rho: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * rho + c.to_f64())
}

/// `sum_j coeffs[j](rho) * zeta^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<T> {
    coeffs: Vec<RhoPoly<T>>,
}

impl<T: Scalar> BiPoly<T> {
    pub fn new(coeffs: Vec<RhoPoly<T>>) -> Self {
        let mut p = BiPoly { coeffs: coeffs.into_iter().map(rho_trim).collect() };
        p.trim();
        p
    }

    pub fn one() -> Self {
        BiPoly::new(vec![vec![T::one()]])
    }

    /// `zeta - (x_sq * rho + c_sq)`: a centered ellipse factor.
    pub fn linear_factor(x_sq: &T, c_sq: &T) -> Self {
        BiPoly::new(vec![vec![-c_sq.clone(), -x_sq.clone()], vec![T::one()]])
    }

    /// `zeta^2 - 2 zeta ((X^2+p^2) rho + c^2) + ((X^2-p^2) rho + c^2)^2`:
    /// a symmetric pair of ellipses centered at `+-p`.
    pub fn quadratic_factor(p_sq: &T, x_sq: &T, c_sq: &T) -> Self {
        let two = T::from_int(2);
        let middle = vec![
            -(two.clone() * c_sq.clone()),
            -(two * (x_sq.clone() + p_sq.clone())),
        ];
        let inner = vec![c_sq.clone(), x_sq.clone() - p_sq.clone()];
        BiPoly::new(vec![rho_mul(&inner, &inner), middle, vec![T::one()]])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| rho_degree(c).is_none()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[RhoPoly<T>] {
        &self.coeffs
    }

    /// Degree in `zeta`; `None` for the zero polynomial.
    pub fn zeta_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: usize) -> &[T] {
        self.coeffs.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BiPoly { coeffs: Vec::new() };
        }
        let mut out = vec![Vec::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = rho_add(&out[i + j], &rho_mul(a, b));
            }
        }
        BiPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new((0..len).map(|j| rho_sub(self.coeff(j), other.coeff(j))).collect())
    }

    /// Division by a divisor whose leading `zeta` coefficient is the constant 1.
    ///
    /// Returns `(quotient, remainder)` with `deg_zeta(remainder) < deg_zeta(divisor)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.zeta_degree().expect("division by the zero polynomial");
        let lead = divisor.coeff(d);
        assert!(
            rho_degree(lead) == Some(0) && lead[0] == T::one(),
            "divisor must be monic in zeta"
        );
        let mut rem: Vec<RhoPoly<T>> = self.coeffs.clone();
        let top = match self.zeta_degree() {
            Some(top) if top >= d => top,
            _ => return (BiPoly { coeffs: Vec::new() }, self.clone()),
        };
        let mut quot = vec![Vec::new(); top - d + 1];
        for j in (d..=top).rev() {
            let factor = std::mem::take(&mut rem[j]);
            if rho_degree(&factor).is_none() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate().take(d) {
                let target = j - d + i;
                rem[target] = rho_sub(&rem[target], &rho_mul(&factor, dc));
            }
            quot[j - d] = factor;
        }
        rem.truncate(d);
        (BiPoly::new(quot), BiPoly::new(rem))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter())
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Whether every coefficient is negligible relative to `scale`.
    pub fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.coeffs.iter().flat_map(|c| c.iter()).all(|x| x.is_negligible(scale, tol))
    }

    pub fn eval(&self, zeta: f64, rho: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * zeta + rho_eval(c, rho))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        BiPoly::new(self.coeffs.iter().map(|c| c.iter().map(&f).collect()).collect())
    }
}

//! Sparse polynomials in the five parameters `xi_1..xi_5`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Exponents of `xi_1..xi_5`.
pub type Exponents = [u8; 5];

#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<T> {
    terms: BTreeMap<Exponents, T>,
}

impl<T: Scalar> MPoly<T> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        let mut p = MPoly::zero();
        p.push([0; 5], c);
        p
    }

    /// `xi_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = [0u8; 5];
        e[i] = 1;
        let mut p = MPoly::zero();
        p.push(e, T::one());
        p
    }

    pub fn from_terms(terms: &[(i64, Exponents)]) -> Self {
        let mut p = MPoly::zero();
        for (c, e) in terms {
            p.push(*e, T::from_int(*c));
        }
        p
    }

    fn push(&mut self, e: Exponents, c: T) {
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.push(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.push(*e, c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.push(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn eval(&self, xi: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (x, &k) in xi.iter().zip(e) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc + term
        })
    }

    /// Partial derivative in `xi_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                out.push(d, c.clone() * T::from_int(e[i] as i64));
            }
        }
        out
    }
}

/// Monomial text such as `xi1^2*xi3`.
pub fn monomial_name(e: &Exponents) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("xi{}", i + 1) } else { format!("xi{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for MPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("({c})*{}", monomial_name(e))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

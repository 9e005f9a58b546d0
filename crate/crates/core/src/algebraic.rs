//! Exact arithmetic in `K = Q(sqrt 3, phi, c)`, where `phi` is the golden
//! ratio and `c = 2cos(2*pi/7)` (a root of `c^3 + c^2 - 2c - 1`).
//!
//! `K` has degree 12 over `Q`; elements are stored in the product basis
//! `sqrt3^i * phi^j * c^k` with `i, j` in `0..2` and `k` in `0..3`.
//! Every constant the reciprocal-matrix criteria need for `n <= 6` lives in `K`:
//! `2cos(pi/7) = c^2 + c - 1`, `2cos(2pi/7) = c`, `2cos(3pi/7) = 2 - c^2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

const DIM: usize = 12;

// Reduction of generator powers into the basis of each factor field.
// sqrt3^e for e in 0..=2
const SQRT3_POW: [[i64; 2]; 3] = [[1, 0], [0, 1], [3, 0]];
// phi^e, phi^2 = phi + 1
const PHI_POW: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, 1]];
// c^e for e in 0..=4, c^3 = -c^2 + 2c + 1, c^4 = 3c^2 - c - 1
const C_POW: [[i64; 3]; 5] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, -1], [-1, -1, 3]];

fn index(i: usize, j: usize, k: usize) -> usize {
    i * 6 + j * 3 + k
}

fn split(idx: usize) -> (usize, usize, usize) {
    (idx / 6, (idx / 3) % 2, idx % 3)
}

/// Structure constants: `basis[a] * basis[b] = sum_t table[a][b][t] * basis[t]`.
fn product_table() -> &'static Vec<Vec<Vec<(usize, i64)>>> {
    static TABLE: std::sync::OnceLock<Vec<Vec<Vec<(usize, i64)>>>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![vec![Vec::new(); DIM]; DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                let (ia, ja, ka) = split(a);
                let (ib, jb, kb) = split(b);
                let mut acc = [0i64; DIM];
                for (i, si) in SQRT3_POW[ia + ib].iter().enumerate() {
                    for (j, pj) in PHI_POW[ja + jb].iter().enumerate() {
                        for (k, ck) in C_POW[ka + kb].iter().enumerate() {
                            acc[index(i, j, k)] += si * pj * ck;
                        }
                    }
                }
                table[a][b] = acc
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(t, v)| (t, *v))
                    .collect();
            }
        }
        table
    })
}

/// An element of `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebraic {
    coeffs: Vec<BigRational>,
}

impl Algebraic {
    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); DIM];
        coeffs[0] = r;
        Algebraic { coeffs }
    }

    pub fn from_bigint_ratio(num: BigInt, den: BigInt) -> Self {
        Self::from_rational(BigRational::new(num, den))
    }

    fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); DIM];
        coeffs[index(i, j, k)] = BigRational::one();
        Algebraic { coeffs }
    }

    /// `2cos(2*pi/7)`, the cubic generator.
    pub fn heptagon() -> Self {
        Self::basis(0, 0, 1)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Parse a decimal (`"0.801938"`, `"-2.5e-3"`) or fraction (`"5/8"`) exactly.
    pub fn parse(text: &str) -> Result<Self> {
        parse_rational(text).map(Self::from_rational)
    }

    /// Exact embedding of an `f64` (every finite double is a dyadic rational).
    pub fn from_f64_exact(v: f64) -> Result<Self> {
        BigRational::from_float(v)
            .map(Self::from_rational)
            .ok_or_else(|| crate::error::Error::InvalidInput(format!("non-finite value {v}")))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let table = product_table();
        let mut out = vec![BigRational::zero(); DIM];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let prod = ca * cb;
                for &(t, m) in &table[a][b] {
                    out[t] += &prod * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        Algebraic { coeffs: out }
    }

    /// Multiplicative inverse via the regular representation; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        // Column b of the multiplication matrix is self * basis_b.
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); DIM + 1]; DIM];
        for b in 0..DIM {
            let (i, j, k) = split(b);
            let col = self.mul_ref(&Self::basis(i, j, k));
            for (row, v) in col.coeffs.into_iter().enumerate() {
                m[row][b] = v;
            }
        }
        m[0][DIM] = BigRational::one();
        let sol = solve_rational(m)?;
        Some(Algebraic { coeffs: sol })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Gaussian elimination on an augmented `n x (n+1)` rational matrix.
pub(crate) fn solve_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return invalid("empty number");
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad_number(text))?;
        let den: BigInt = den.trim().parse().map_err(|_| bad_number(text))?;
        if den.is_zero() {
            return invalid(format!("zero denominator in {text:?}"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad_number(text))?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad_number(text));
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad_number(text))? / 10;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

fn bad_number(text: &str) -> crate::error::Error {
    crate::error::Error::InvalidInput(format!("cannot parse {text:?} as an exact number"))
}

/// `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (idx, coef) in self.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (i, j, k) = split(idx);
            let mut names = Vec::new();
            if i == 1 {
                names.push("sqrt3".to_string());
            }
            if j == 1 {
                names.push("phi".to_string());
            }
            match k {
                1 => names.push("c7".to_string()),
                2 => names.push("c7^2".to_string()),
                _ => {}
            }
            let term = if names.is_empty() {
                format_rational(coef)
            } else if coef.is_one() {
                names.join("*")
            } else if (-coef).is_one() {
                format!("-{}", names.join("*"))
            } else {
                format!("{}*{}", format_rational(coef), names.join("*"))
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebraic({self})")
    }
}

impl Add for Algebraic {
    type Output = Algebraic;
    fn add(mut self, rhs: Algebraic) -> Algebraic {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for Algebraic {
    type Output = Algebraic;
    fn sub(mut self, rhs: Algebraic) -> Algebraic {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Mul for Algebraic {
    type Output = Algebraic;
    fn mul(self, rhs: Algebraic) -> Algebraic {
        self.mul_ref(&rhs)
    }
}

impl Div for Algebraic {
    type Output = Algebraic;
    fn div(self, rhs: Algebraic) -> Algebraic {
        let inv = rhs.inverse().expect("division by zero in number field");
        self.mul_ref(&inv)
    }
}

impl Neg for Algebraic {
    type Output = Algebraic;
    fn neg(self) -> Algebraic {
        Algebraic { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Scalar for Algebraic {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }
    fn to_f64(&self) -> f64 {
        let sqrt3 = 3f64.sqrt();
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        let c = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| {
                let (i, j, k) = split(idx);
                let magnitude = v.abs().to_f64().unwrap_or(f64::INFINITY);
                let signed = if v.is_negative() { -magnitude } else { magnitude };
                signed * sqrt3.powi(i as i32) * phi.powi(j as i32) * c.powi(k as i32)
            })
            .sum()
    }
    fn is_exact() -> bool {
        true
    }
    fn is_zero(&self) -> bool {
        Algebraic::is_zero(self)
    }
    fn golden() -> Self {
        Self::basis(0, 1, 0)
    }
    fn sqrt3() -> Self {
        Self::basis(1, 0, 0)
    }
    fn two_cos_pi7(j: u32) -> Self {
        let c = Self::heptagon();
        match j {
            1 => c.square() + c - Self::one(),
            2 => c,
            3 => Self::from_int(2) - c.square(),
            _ => panic!("2cos(j*pi/7) is only provided for j in 1..=3"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn generators_satisfy_their_minimal_polynomials() {
        let c = Algebraic::heptagon();
        let cubic = c.clone() * c.clone() * c.clone() + c.square() - Algebraic::from_int(2) * c
            - Algebraic::one();
        assert!(cubic.is_zero());
        let phi = Algebraic::golden();
        assert!((phi.square() - phi - Algebraic::one()).is_zero());
        assert_eq!(Algebraic::sqrt3().square(), Algebraic::from_int(3));
    }

    #[test]
    fn float_images_match() {
        for j in 1..=3 {
            assert!(close(Algebraic::two_cos_pi7(j).to_f64(), f64::two_cos_pi7(j)));
        }
        let x = Algebraic::sqrt3() * Algebraic::golden() * Algebraic::two_cos_pi7(1).square();
        assert!(close(x.to_f64(), 3f64.sqrt() * f64::golden() * f64::two_cos_pi7(1).powi(2)));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Algebraic::sqrt3() + Algebraic::golden() * Algebraic::heptagon() - Algebraic::from_ratio(3, 7);
        let inv = x.inverse().unwrap();
        assert_eq!(x * inv, Algebraic::one());
        assert!(Algebraic::zero().inverse().is_none());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(Algebraic::parse("0.5").unwrap(), Algebraic::from_ratio(1, 2));
        assert_eq!(Algebraic::parse("-2.5e-3").unwrap(), Algebraic::from_ratio(-1, 400));
        assert_eq!(Algebraic::parse("5/8").unwrap(), Algebraic::from_ratio(5, 8));
        assert_eq!(Algebraic::parse("3").unwrap(), Algebraic::from_int(3));
        assert!(Algebraic::parse("abc").is_err());
        assert!(Algebraic::parse("1/0").is_err());
    }

    #[test]
    fn display_is_readable() {
        let x = Algebraic::from_ratio(1, 2) * Algebraic::sqrt3() + Algebraic::one();
        assert_eq!(x.to_string(), "1 + 1/2*sqrt3");
        assert_eq!((-Algebraic::heptagon().square()).to_string(), "-c7^2");
    }
}

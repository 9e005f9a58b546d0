//! Extended-precision backend: exact rationals with the irrational constants
//! rounded to 80 decimal places, compared at [`Tolerance::EXTENDED`].

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::{format_rational, parse_rational};
use crate::error::Result;
use crate::scalar::Scalar;

const DIGITS: usize = 80;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extended(pub BigRational);

impl Extended {
    pub fn parse(text: &str) -> Result<Self> {
        parse_rational(text).map(Extended)
    }

    pub fn to_fraction_string(&self) -> String {
        format_rational(&self.0)
    }
}

fn unit() -> BigInt {
    num_traits::pow(BigInt::from(10), DIGITS + 10)
}

fn round(x: &BigRational) -> BigRational {
    let u = unit();
    BigRational::new((x * BigRational::from_integer(u.clone())).round().to_integer(), u)
}

fn newton(
    start: BigRational,
    f: impl Fn(&BigRational) -> BigRational,
    df: impl Fn(&BigRational) -> BigRational,
) -> BigRational {
    let eps = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), DIGITS + 5));
    let mut x = start;
    for _ in 0..200 {
        let step = f(&x) / df(&x);
        x = round(&(&x - &step));
        if step.abs() < eps {
            break;
        }
    }
    x
}

fn sqrt_of(a: i64) -> BigRational {
    let a = BigRational::from_integer(a.into());
    let start = BigRational::from_float((a.to_f64().unwrap()).sqrt()).unwrap();
    newton(start, |x| x * x - &a, |x| x * BigRational::from_integer(2.into()))
}

struct Constants {
    golden: BigRational,
    sqrt3: BigRational,
    heptagon: BigRational,
}

fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let golden = (sqrt_of(5) + &one) / &two;
        let start = BigRational::from_float(2.0 * (2.0 * std::f64::consts::PI / 7.0).cos()).unwrap();
        let heptagon = newton(
            start,
            |c| c * c * c + c * c - &two * c - &one,
            |c| &three * c * c + &two * c - &two,
        );
        Constants { golden, sqrt3: sqrt_of(3), heptagon }
    })
}

impl Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Extended) -> Extended {
        Extended(self.0 + rhs.0)
    }
}

impl Sub for Extended {
    type Output = Extended;
    fn sub(self, rhs: Extended) -> Extended {
        Extended(self.0 - rhs.0)
    }
}

impl Mul for Extended {
    type Output = Extended;
    fn mul(self, rhs: Extended) -> Extended {
        Extended(self.0 * rhs.0)
    }
}

impl Div for Extended {
    type Output = Extended;
    fn div(self, rhs: Extended) -> Extended {
        Extended(self.0 / rhs.0)
    }
}

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended(-self.0)
    }
}

impl Scalar for Extended {
    fn zero() -> Self {
        Extended(BigRational::zero())
    }
    fn one() -> Self {
        Extended(BigRational::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Extended(BigRational::new(num.into(), den.into()))
    }
    fn to_f64(&self) -> f64 {
        let magnitude = self.0.abs().to_f64().unwrap_or(f64::INFINITY);
        if self.0.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }
    fn is_exact() -> bool {
        false
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn golden() -> Self {
        Extended(constants().golden.clone())
    }
    fn sqrt3() -> Self {
        Extended(constants().sqrt3.clone())
    }
    fn two_cos_pi7(j: u32) -> Self {
        let c = Extended(constants().heptagon.clone());
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
    use crate::scalar::Tolerance;

    #[test]
    fn constants_reach_fifty_digits() {
        let phi = Extended::golden();
        let residual = phi.square() - phi - Extended::one();
        assert!(residual.is_negligible(1.0, &Tolerance::EXTENDED));
        let s = Extended::sqrt3();
        assert!((s.square() - Extended::from_int(3)).is_negligible(1.0, &Tolerance::EXTENDED));
        let c = Extended::two_cos_pi7(2);
        let cubic = c.clone() * c.clone() * c.clone() + c.square() - Extended::from_int(2) * c - Extended::one();
        assert!(cubic.is_negligible(1.0, &Tolerance::EXTENDED));
        for j in 1..=3 {
            assert!((Extended::two_cos_pi7(j).to_f64() - f64::two_cos_pi7(j)).abs() < 1e-15);
        }
    }
}

use crate::kippenhahn::KippenhahnPolynomial;
use crate::poly::BiPoly;
use crate::scalar::{Scalar, Tolerance};

/// Quotient of `poly` by a monic factor when the remainder vanishes: exactly
/// for exact backends, below `tol` relative to `scale` otherwise.
pub fn divide_by<T: Scalar>(poly: &BiPoly<T>, factor: &BiPoly<T>, scale: f64, tol: &Tolerance) -> Option<BiPoly<T>> {
    let (quot, rem) = poly.div_rem_monic(factor);
    rem.is_negligible(scale, tol).then_some(quot)
}

/// Division by `zeta - (X^2 rho + c^2)`: an ellipse centered at the origin
/// with half focal distance `X` and minor half-axis `c`.
pub fn divides_linear<T: Scalar>(
    poly: &KippenhahnPolynomial<T>,
    x_sq: &T,
    c_sq: &T,
    tol: &Tolerance,
) -> Option<BiPoly<T>> {
    divide_by(poly.poly(), &BiPoly::linear_factor(x_sq, c_sq), poly.poly().max_abs_coeff(), tol)
}

/// Division by `zeta^2 - 2 zeta ((X^2+p^2) rho + c^2) + ((X^2-p^2) rho + c^2)^2`:
/// two ellipses centered at `+-p`.
pub fn divides_quadratic<T: Scalar>(
    poly: &KippenhahnPolynomial<T>,
    p_sq: &T,
    x_sq: &T,
    c_sq: &T,
    tol: &Tolerance,
) -> Option<BiPoly<T>> {
    divide_by(poly.poly(), &BiPoly::quadratic_factor(p_sq, x_sq, c_sq), poly.poly().max_abs_coeff(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Algebraic;

    fn golden() -> Algebraic {
        Algebraic::golden()
    }

    fn q(v: i64) -> Algebraic {
        Algebraic::from_int(v)
    }

    #[test]
    fn golden_concentric_factor() {
        let p = KippenhahnPolynomial::closed_form(&[q(1), q(1), q(1)]).unwrap();
        let phi_sq = golden().square();
        let quot = divides_linear(&p, &phi_sq, &phi_sq, &Tolerance::DOUBLE).unwrap();
        let inner = (q(1) / golden()).square();
        assert!(divides_linear(&KippenhahnPolynomial::closed_form(&[q(1), q(1), q(1)]).unwrap(), &inner, &inner, &Tolerance::DOUBLE).is_some());
        assert_eq!(quot, BiPoly::linear_factor(&inner, &inner));
    }

    #[test]
    fn zero_xi_n5_factor() {
        let p = KippenhahnPolynomial::closed_form(&vec![q(0); 4]).unwrap();
        let quot = divides_linear(&p, &q(1), &q(0), &Tolerance::DOUBLE).unwrap();
        assert_eq!(quot, BiPoly::linear_factor(&q(3), &q(0)));
    }

    #[test]
    fn displaced_n4_factor() {
        let p = KippenhahnPolynomial::closed_form(&[q(1), q(0), q(1)]).unwrap();
        assert!(divides_linear(&p, &q(1), &q(1), &Tolerance::DOUBLE).is_none());
        let x_sq = Algebraic::from_ratio(5, 4);
        let quot = divides_quadratic(&p, &Algebraic::from_ratio(1, 4), &x_sq, &q(1), &Tolerance::DOUBLE).unwrap();
        assert_eq!(quot, BiPoly::one());
    }

    #[test]
    fn displaced_n5_factor() {
        let s3 = Algebraic::sqrt3();
        let half = Algebraic::from_ratio(1, 2);
        let xi = [q(1) + s3.clone() * half.clone(), q(0), q(1), s3.clone() * half.clone()];
        let p = KippenhahnPolynomial::closed_form(&xi).unwrap();
        let center = (s3.clone() - q(1)) * half.clone();
        let x = (s3 + q(1)) * half;
        let quot = divides_quadratic(&p, &center.square(), &x.square(), &xi[0], &Tolerance::DOUBLE).unwrap();
        assert_eq!(quot.zeta_degree(), Some(0));
    }

    #[test]
    fn float_division_uses_tolerance() {
        let p = KippenhahnPolynomial::closed_form(&[1.0, 0.0, 1.0]).unwrap();
        assert!(divides_quadratic(&p, &0.25, &1.25, &1.0, &Tolerance::DOUBLE).is_some());
        let perturbed = KippenhahnPolynomial::closed_form(&[1.0, 0.0, 1.001]).unwrap();
        assert!(divides_quadratic(&perturbed, &0.25, &1.25, &1.0, &Tolerance::DOUBLE).is_none());
        assert!(divides_quadratic(&perturbed, &0.25, &1.25, &1.0, &Tolerance::with_rel(1e-2)).is_some());
    }
}

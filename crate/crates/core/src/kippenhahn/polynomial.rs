use crate::error::{Error, Result};
use crate::matrix::ReciprocalMatrix;
use crate::poly::{rho_add, rho_degree, rho_mul, rho_scale, BiPoly, RhoPoly};
use crate::scalar::Scalar;

/// `det(Re(e^{i theta} A) - lambda I)` written as `P(zeta, rho)` with
/// `zeta = lambda^2`, `rho = cos^2 theta`, times `-lambda` when `n` is odd.
#[derive(Debug, Clone, PartialEq)]
pub struct KippenhahnPolynomial<T> {
    n: usize,
    poly: BiPoly<T>,
}

/// `xi_j + rho`.
fn beta<T: Scalar>(xi: &T) -> RhoPoly<T> {
    vec![xi.clone(), T::one()]
}

fn sum<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

/// Sum of `xi_i * xi_j` over pairs with `j - i > 1`.
fn nonadjacent_pairs<T: Scalar>(xi: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..xi.len() {
        for j in i + 2..xi.len() {
            acc = acc + xi[i].clone() * xi[j].clone();
        }
    }
    acc
}

impl<T: Scalar> KippenhahnPolynomial<T> {
    /// Printed closed forms, available for `2 <= n <= 6`.
    pub fn closed_form(xi: &[T]) -> Result<Self> {
        let n = xi.len() + 1;
        let int = |v: i64| T::from_int(v);
        let coeffs: Vec<RhoPoly<T>> = match n {
            2 => vec![vec![-xi[0].clone(), -T::one()], vec![T::one()]],
            3 => vec![vec![-sum(xi), int(-2)], vec![T::one()]],
            4 => vec![
                rho_mul(&beta(&xi[0]), &beta(&xi[2])),
                vec![-sum(xi), int(-3)],
                vec![T::one()],
            ],
            5 => {
                let b: Vec<RhoPoly<T>> = xi.iter().map(beta).collect();
                let c0 = [rho_mul(&b[0], &b[2]), rho_mul(&b[0], &b[3]), rho_mul(&b[1], &b[3])]
                    .iter()
                    .fold(Vec::new(), |acc, p| rho_add(&acc, p));
                vec![c0, vec![-sum(xi), int(-4)], vec![T::one()]]
            }
            6 => {
                let b: Vec<RhoPoly<T>> = xi.iter().map(beta).collect();
                let c0 = rho_scale(&rho_mul(&rho_mul(&b[0], &b[2]), &b[4]), &int(-1));
                let outer = xi[0].clone() + xi[4].clone();
                let inner = xi[1].clone() + xi[2].clone() + xi[3].clone();
                let c1 = vec![nonadjacent_pairs(xi), int(3) * outer + int(2) * inner, int(6)];
                vec![c0, c1, vec![-sum(xi), int(-5)], vec![T::one()]]
            }
            _ => return Err(Error::UnsupportedDimension(n)),
        };
        Ok(KippenhahnPolynomial { n, poly: BiPoly::new(coeffs) })
    }

    /// Any `n >= 2`, from the three-term recurrence of tridiagonal determinants
    /// split into even and odd parts.
    pub fn from_recurrence(xi: &[T]) -> Self {
        let n = xi.len() + 1;
        let zeta = BiPoly::new(vec![vec![], vec![T::one()]]);
        let mut prev = BiPoly::one();
        let mut cur = BiPoly::one();
        for k in 2..=n {
            let b = BiPoly::new(vec![beta(&xi[k - 2])]);
            let lead = if k % 2 == 0 { zeta.mul(&cur) } else { cur.clone() };
            let next = lead.sub(&b.mul(&prev));
            prev = cur;
            cur = next;
        }
        KippenhahnPolynomial { n, poly: cur }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn poly(&self) -> &BiPoly<T> {
        &self.poly
    }

    /// Coefficient of `zeta^j` as a polynomial in `rho`.
    pub fn coeff(&self, j: usize) -> &[T] {
        self.poly.coeff(j)
    }

    /// Largest `deg_rho(coeff_j) + j`; never exceeds `n / 2`.
    pub fn weighted_degree(&self) -> usize {
        (0..self.poly.coeffs().len())
            .filter_map(|j| rho_degree(self.coeff(j)).map(|d| d + j))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, zeta: f64, rho: f64) -> f64 {
        self.poly.eval(zeta, rho)
    }

    /// The full determinant at `(theta, lambda)`.
    pub fn eval_det(&self, theta: f64, lambda: f64) -> f64 {
        let rho = theta.cos().powi(2);
        let p = self.eval(lambda * lambda, rho);
        if self.is_odd() {
            -lambda * p
        } else {
            p
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> KippenhahnPolynomial<U> {
        KippenhahnPolynomial { n: self.n, poly: self.poly.map(f) }
    }

    pub fn sub(&self, other: &Self) -> BiPoly<T> {
        self.poly.sub(&other.poly)
    }
}

/// `det(Re(e^{i theta} A) - lambda I)` straight from the matrix entries.
pub fn determinant_poly_eval(matrix: &ReciprocalMatrix, theta: f64, lambda: f64) -> f64 {
    matrix.real_part_at(theta).char_poly(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Algebraic;
    use crate::matrix::XiParameters;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Algebraic {
        Algebraic::from_int(v)
    }

    fn exact(xi: &[i64]) -> Vec<Algebraic> {
        xi.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn n4_displaced_example() {
        let p = KippenhahnPolynomial::closed_form(&exact(&[1, 0, 1])).unwrap();
        assert_eq!(p.coeff(2), &[q(1)]);
        assert_eq!(p.coeff(1), &[q(-2), q(-3)]);
        assert_eq!(p.coeff(0), &[q(1), q(2), q(1)]);
    }

    #[test]
    fn n5_all_zero() {
        let p = KippenhahnPolynomial::closed_form(&exact(&[0, 0, 0, 0])).unwrap();
        assert_eq!(p.coeff(0), &[q(0), q(0), q(3)]);
        assert_eq!(p.coeff(1), &[q(0), q(-4)]);
        assert!(p.is_odd());
    }

    #[test]
    fn n6_all_zero_at_unit() {
        let p = KippenhahnPolynomial::closed_form(&[0.0; 5]).unwrap();
        assert_eq!(p.eval(1.0, 0.0), 1.0);
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![0.0; 5]).unwrap());
        assert_relative_eq!(determinant_poly_eval(&m, std::f64::consts::FRAC_PI_2, 1.0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_matches_recurrence_exactly() {
        let samples: [&[i64]; 6] = [&[3], &[1, 2], &[1, 2, 3], &[4, 0, 1, 7], &[2, 5, 1, 3, 8], &[0, 0, 0, 0, 0]];
        for xi in samples {
            let xi = exact(xi);
            let closed = KippenhahnPolynomial::closed_form(&xi).unwrap();
            let rec = KippenhahnPolynomial::from_recurrence(&xi);
            assert!(closed.sub(&rec).is_zero(), "n = {}", xi.len() + 1);
        }
    }

    #[test]
    fn closed_form_matches_recurrence_with_irrational_xi() {
        let xi = vec![Algebraic::golden(), Algebraic::sqrt3(), q(2), Algebraic::heptagon(), q(0)];
        let closed = KippenhahnPolynomial::closed_form(&xi).unwrap();
        assert!(closed.sub(&KippenhahnPolynomial::from_recurrence(&xi)).is_zero());
    }

    #[test]
    fn weighted_degree_bound() {
        for n in 2..=9 {
            let xi: Vec<Algebraic> = (1..n as i64).map(q).collect();
            let p = KippenhahnPolynomial::from_recurrence(&xi);
            assert_eq!(p.weighted_degree(), n / 2);
            assert_eq!(p.coeff(n / 2), &[q(1)]);
        }
    }

    #[test]
    fn unsupported_dimension() {
        assert_eq!(KippenhahnPolynomial::closed_form(&[1.0; 6]), Err(Error::UnsupportedDimension(7)));
    }

    #[test]
    fn determinant_examples() {
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 0.0, 1.0]).unwrap());
        assert!(determinant_poly_eval(&m, std::f64::consts::FRAC_PI_2, 1.0).abs() < 1e-12);
        let m = ReciprocalMatrix::from_superdiagonal(vec![num_complex::Complex64::new(2.0, 0.0)]).unwrap();
        assert_relative_eq!(determinant_poly_eval(&m, 0.0, 0.0), -25.0 / 16.0, epsilon = 1e-15);
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 0.0, 1.0, 0.0]).unwrap());
        assert!(determinant_poly_eval(&m, std::f64::consts::FRAC_PI_2, 0.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(2..=6);
            let xi: Vec<f64> = (1..n).map(|_| rng.random_range(0.0..3.0)).collect();
            let m = ReciprocalMatrix::from_xi(&XiParameters::new(xi.clone()).unwrap());
            let p = KippenhahnPolynomial::closed_form(&xi).unwrap();
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let lambda = rng.random_range(-4.0..4.0);
            let det = determinant_poly_eval(&m, theta, lambda);
            assert_relative_eq!(p.eval_det(theta, lambda), det, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn flip_preserves_polynomial() {
        let p = KippenhahnPolynomial::closed_form(&exact(&[1, 2, 3])).unwrap();
        let f = KippenhahnPolynomial::closed_form(&exact(&[3, 2, 1])).unwrap();
        assert_eq!(p, f);
        let p = KippenhahnPolynomial::closed_form(&exact(&[1, 2, 3, 4, 5])).unwrap();
        let f = KippenhahnPolynomial::closed_form(&exact(&[5, 4, 3, 2, 1])).unwrap();
        assert_eq!(p, f);
    }
}

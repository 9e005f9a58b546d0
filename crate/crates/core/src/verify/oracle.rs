use crate::ellipse::divisibility::divide_by;
use crate::ellipse::Verdict;
use crate::kippenhahn::KippenhahnPolynomial;
use crate::matrix::{exact_spectrum, ReciprocalMatrix, XiParameters};
use crate::poly::BiPoly;
use crate::scalar::Tolerance;

#[derive(Debug, Clone)]
struct Factor {
    poly: BiPoly<f64>,
    degree: usize,
    displaced: bool,
    c_sq: f64,
}

fn push_unique(values: &mut Vec<f64>, v: f64, eps: f64) {
    if values.iter().all(|w| (w - v).abs() > eps) {
        values.push(v);
    }
}

/// Every ellipse factor compatible with the spectrum: foci in `sigma(A)` and
/// minor half-axes in `sigma(Im A)` or zero.
fn candidate_factors(xi: &[f64]) -> Vec<Factor> {
    let n = xi.len() + 1;
    let eps = 1e-9 * (1.0 + xi.iter().fold(0.0f64, |a, v| a.max(*v)));
    let spectrum = exact_spectrum(n).eigenvalues;
    let matrix = ReciprocalMatrix::from_xi(&XiParameters::new(xi.to_vec()).expect("validated xi"));
    let mut c_sq = vec![0.0];
    for mu in matrix.imaginary_part().eigenvalues() {
        if mu > eps {
            push_unique(&mut c_sq, mu * mu, eps);
        }
    }
    let mut out = Vec::new();
    for &x in spectrum.iter().filter(|s| **s >= 0.0) {
        for &c in &c_sq {
            out.push(Factor { poly: BiPoly::linear_factor(&(x * x), &c), degree: 1, displaced: false, c_sq: c });
        }
    }
    for (i, &hi) in spectrum.iter().enumerate() {
        for &lo in &spectrum[i + 1..] {
            let (p, x) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
            if p <= eps {
                continue;
            }
            for &c in &c_sq {
                out.push(Factor {
                    poly: BiPoly::quadratic_factor(&(p * p), &(x * x), &c),
                    degree: 2,
                    displaced: true,
                    c_sq: c,
                });
            }
        }
    }
    out
}

struct Search<'a> {
    factors: &'a [Factor],
    scale: f64,
    tol: &'a Tolerance,
    found: Vec<Verdict>,
}

impl Search<'_> {
    fn run(&mut self, rest: &BiPoly<f64>, degree: usize, start: usize, chosen: &mut Vec<usize>) {
        if degree == 0 {
            if rest.sub(&BiPoly::one()).is_negligible(self.scale, self.tol) {
                let picked: Vec<&Factor> = chosen.iter().map(|&i| &self.factors[i]).collect();
                let verdict = if picked.iter().all(|f| f.c_sq == 0.0) {
                    Verdict::DegenerateSpectrum
                } else if picked.iter().any(|f| f.displaced) {
                    Verdict::DisplacedPair
                } else {
                    Verdict::AllConcentric
                };
                if !self.found.contains(&verdict) {
                    self.found.push(verdict);
                }
            }
            return;
        }
        for i in start..self.factors.len() {
            let f = &self.factors[i];
            if f.degree > degree {
                continue;
            }
            if let Some(q) = divide_by(rest, &f.poly, self.scale, self.tol) {
                chosen.push(i);
                self.run(&q, degree - f.degree, i, chosen);
                chosen.pop();
            }
        }
    }
}

/// Kinds of complete factorizations of the Kippenhahn polynomial into
/// ellipse factors, found by exhaustive search; empty when there is none.
pub fn brute_force_kinds(xi: &[f64], tol: &Tolerance) -> Vec<Verdict> {
    let poly = KippenhahnPolynomial::from_recurrence(xi);
    let factors = candidate_factors(xi);
    let degree = poly.poly().zeta_degree().unwrap_or(0);
    let mut search = Search { factors: &factors, scale: poly.poly().max_abs_coeff(), tol, found: Vec::new() };
    search.run(poly.poly(), degree, 0, &mut Vec::new());
    search.found
}

/// Whether a verdict is consistent with the oracle's findings.
pub fn agrees(verdict: Verdict, kinds: &[Verdict]) -> bool {
    match verdict {
        Verdict::MixedNone => kinds.is_empty(),
        v => kinds.contains(&v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(xi: &[f64]) -> Vec<Verdict> {
        brute_force_kinds(xi, &Tolerance::DOUBLE)
    }

    #[test]
    fn known_cases() {
        assert_eq!(kinds(&[1.0, 1.0, 1.0]), vec![Verdict::AllConcentric]);
        assert_eq!(kinds(&[1.0, 0.0, 1.0]), vec![Verdict::DisplacedPair]);
        assert!(kinds(&[1.0, 0.0, 1.001]).is_empty());
        assert!(kinds(&[0.5, 0.0, 0.5, 0.0]).is_empty());
        assert_eq!(kinds(&[0.0; 5]), vec![Verdict::DegenerateSpectrum]);
        let s3 = 3f64.sqrt();
        assert_eq!(kinds(&[1.0 + s3 / 2.0, 0.0, 1.0, s3 / 2.0]), vec![Verdict::DisplacedPair]);
        assert_eq!(kinds(&[1.0; 5]), vec![Verdict::AllConcentric]);
    }

    #[test]
    fn displaced_n6() {
        let k = 2.0 * (std::f64::consts::PI / 7.0).cos();
        assert_eq!(kinds(&[1.0, 0.0, k, (k - 1.0).powi(2), k]), vec![Verdict::DisplacedPair]);
        let t2 = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        assert_eq!(kinds(&[1.0, t2, 0.0, t2, 1.0]), vec![Verdict::DisplacedPair]);
    }
}

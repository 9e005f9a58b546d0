//! Reciprocal tridiagonal matrices and their elementary transforms.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// The parameters `xi_j = (|a_{j,j+1}| - |a_{j+1,j}|)^2 / 4`, all nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct XiParameters(Vec<f64>);

impl XiParameters {
    pub fn new(xi: Vec<f64>) -> Result<Self> {
        if xi.is_empty() {
            return invalid("at least one xi parameter is required (n >= 2)");
        }
        if let Some((j, v)) = xi.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return invalid(format!("xi_{} = {v} must be a finite nonnegative number", j + 1));
        }
        Ok(XiParameters(xi))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Matrix dimension `n = len + 1`.
    pub fn dim(&self) -> usize {
        self.0.len() + 1
    }

    /// `A_j = (|a_{j,j+1}|^2 + |a_{j+1,j}|^2) / 2 = 2 xi_j + 1`.
    pub fn a_params(&self) -> Vec<f64> {
        self.0.iter().map(|x| 2.0 * x + 1.0).collect()
    }

    pub fn reversed(&self) -> Self {
        XiParameters(self.0.iter().rev().copied().collect())
    }

    pub fn scaled(&self, t: f64) -> Self {
        XiParameters(self.0.iter().map(|x| x * t).collect())
    }
}

/// `n x n` tridiagonal matrix with zero diagonal and `a_{j,j+1} a_{j+1,j} = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalMatrix {
    superdiag: Vec<Complex64>,
}

impl ReciprocalMatrix {
    pub fn from_superdiagonal(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return invalid("superdiagonal must have at least one entry");
        }
        for (j, a) in entries.iter().enumerate() {
            if !(a.re.is_finite() && a.im.is_finite()) || a.norm() == 0.0 {
                return invalid(format!("superdiagonal entry {} must be finite and nonzero", j + 1));
            }
        }
        Ok(ReciprocalMatrix { superdiag: entries })
    }

    /// The real positive representative with `|a_j| = sqrt(xi_j) + sqrt(xi_j + 1)`.
    pub fn from_xi(xi: &XiParameters) -> Self {
        let superdiag = xi
            .values()
            .iter()
            .map(|&x| Complex64::new(x.sqrt() + (x + 1.0).sqrt(), 0.0))
            .collect();
        ReciprocalMatrix { superdiag }
    }

    pub fn dim(&self) -> usize {
        self.superdiag.len() + 1
    }

    pub fn superdiag(&self) -> &[Complex64] {
        &self.superdiag
    }

    pub fn subdiag(&self) -> Vec<Complex64> {
        self.superdiag.iter().map(|a| a.inv()).collect()
    }

    pub fn xi(&self) -> XiParameters {
        XiParameters(
            self.superdiag
                .iter()
                .map(|a| {
                    let r = a.norm();
                    (r - 1.0 / r).powi(2) / 4.0
                })
                .collect(),
        )
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (j, a) in self.superdiag.iter().enumerate() {
            m[(j, j + 1)] = *a;
            m[(j + 1, j)] = a.inv();
        }
        m
    }

    /// `Re(w A) = (w A + conj(w) A^*) / 2`.
    pub fn real_part_scaled(&self, w: Complex64) -> HermitianTridiagonal {
        let offdiag = self
            .superdiag
            .iter()
            .map(|a| (w * a + w.conj() / a.conj()) / 2.0)
            .collect();
        HermitianTridiagonal { offdiag }
    }

    /// `Re(e^{i theta} A)`.
    pub fn real_part_at(&self, theta: f64) -> HermitianTridiagonal {
        self.real_part_scaled(Complex64::from_polar(1.0, theta))
    }

    /// `Im A = (A - A^*) / (2i)`.
    pub fn imaginary_part(&self) -> HermitianTridiagonal {
        self.real_part_scaled(Complex64::new(0.0, -1.0))
    }

    /// Reverse the order of rows and columns (a unitary similarity).
    pub fn flip(&self) -> Self {
        ReciprocalMatrix { superdiag: self.superdiag.iter().rev().map(|a| a.inv()).collect() }
    }

    /// `v^* A v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        self.superdiag
            .iter()
            .enumerate()
            .map(|(j, a)| v[j].conj() * a * v[j + 1] + v[j + 1].conj() * a.inv() * v[j])
            .sum()
    }
}

/// Hermitian tridiagonal matrix with zero diagonal, stored by its superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianTridiagonal {
    offdiag: Vec<Complex64>,
}

/// Eigenvalues sorted non-increasing with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl HermitianTridiagonal {
    pub fn dim(&self) -> usize {
        self.offdiag.len() + 1
    }

    pub fn offdiag(&self) -> &[Complex64] {
        &self.offdiag
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (j, b) in self.offdiag.iter().enumerate() {
            m[(j, j + 1)] = *b;
            m[(j + 1, j)] = b.conj();
        }
        m
    }

    /// `det(H - lambda I)` by the three-term recurrence.
    pub fn char_poly(&self, lambda: f64) -> f64 {
        let mut prev = 1.0;
        let mut cur = -lambda;
        for b in &self.offdiag {
            let next = -lambda * cur - b.norm_sqr() * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Real symmetric matrix with off-diagonal `|b_j|`, unitarily similar via
    /// a diagonal phase matrix; also returns those phases.
    fn real_form(&self) -> (DMatrix<f64>, Vec<Complex64>) {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut phases = vec![Complex64::new(1.0, 0.0); n];
        for (j, b) in self.offdiag.iter().enumerate() {
            let r = b.norm();
            m[(j, j + 1)] = r;
            m[(j + 1, j)] = r;
            phases[j + 1] = if r > 0.0 { phases[j] * (b.conj() / r) } else { phases[j] };
        }
        (m, phases)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let (m, _) = self.real_form();
        let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values
    }

    pub fn eigen(&self) -> EigenDecomposition {
        let (m, phases) = self.real_form();
        let eig = SymmetricEigen::new(m);
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| {
                eig.eigenvectors
                    .column(i)
                    .iter()
                    .zip(&phases)
                    .map(|(x, ph)| ph * *x)
                    .collect()
            })
            .collect();
        EigenDecomposition { values, vectors }
    }
}

/// The spectrum `{2cos(j pi/(n+1))}` shared by every reciprocal matrix of size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDescriptor {
    pub eigenvalues: Vec<f64>,
}

impl SpectrumDescriptor {
    /// Positive eigenvalues, decreasing.
    pub fn positive(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().filter(|v| *v > 1e-12).collect()
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.eigenvalues.iter().any(|v| (v - x).abs() <= tol)
    }
}

/// Sorted decreasing.
pub fn exact_spectrum(n: usize) -> SpectrumDescriptor {
    let eigenvalues = (1..=n)
        .map(|j| {
            let v = 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            // the middle eigenvalue of odd n is exactly zero
            if 2 * j == n + 1 { 0.0 } else { v }
        })
        .collect();
    SpectrumDescriptor { eigenvalues }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn builds_reciprocal_pairs() {
        let m = ReciprocalMatrix::from_superdiagonal(real(&[2.0])).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.subdiag(), real(&[0.5]));
        let d = m.to_dense();
        assert_eq!(d[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(d[(1, 0)] * d[(0, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_zero_entry_with_index() {
        let err = ReciprocalMatrix::from_superdiagonal(real(&[1.0, 0.0, 2.0])).unwrap_err();
        assert!(err.to_string().contains("entry 2"), "{err}");
        assert!(ReciprocalMatrix::from_superdiagonal(vec![]).is_err());
    }

    #[test]
    fn unit_entries_have_zero_xi() {
        let m = ReciprocalMatrix::from_superdiagonal(real(&[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(m.xi().values(), &[0.0, 0.0, 0.0]);
        let im = m.imaginary_part();
        assert!(im.offdiag().iter().all(|b| b.norm() < 1e-15));
    }

    #[test]
    fn xi_of_silver_ratio_entries() {
        let s = 1.0 + 2f64.sqrt();
        let m = ReciprocalMatrix::from_superdiagonal(real(&[s, 1.0, s])).unwrap();
        let xi = m.xi();
        assert_abs_diff_eq!(xi.values()[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(xi.values()[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(xi.values()[2], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn canonical_representative_of_xi() {
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![0.0, 0.0, 0.0]).unwrap());
        assert_eq!(m.superdiag(), real(&[1.0, 1.0, 1.0]).as_slice());
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 0.0, 1.0]).unwrap());
        let s = 1.0 + 2f64.sqrt();
        assert_abs_diff_eq!(m.superdiag()[0].re, s, epsilon = 1e-14);
        assert_abs_diff_eq!(m.superdiag()[1].re, 1.0, epsilon = 1e-14);
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, phi, 0.0]).unwrap());
        assert_abs_diff_eq!(m.superdiag()[1].re, phi.sqrt() + (phi + 1.0).sqrt(), epsilon = 1e-14);
        assert!(XiParameters::new(vec![1.0, -0.5]).is_err());
    }

    #[test]
    fn a_params_relation() {
        let m = ReciprocalMatrix::from_superdiagonal(vec![Complex64::new(0.3, 1.7), Complex64::new(-2.0, 0.1)])
            .unwrap();
        let xi = m.xi();
        for (j, a) in m.superdiag().iter().enumerate() {
            let direct = (a.norm_sqr() + a.inv().norm_sqr()) / 2.0;
            assert_abs_diff_eq!(xi.a_params()[j], direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn real_part_at_zero_and_half_pi() {
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 0.0, 1.0]).unwrap());
        let dense = m.to_dense();
        let re = m.real_part_at(0.0).to_dense();
        let sym = (&dense + dense.transpose()) / Complex64::new(2.0, 0.0);
        assert!((re - sym).norm() < 1e-14);
        let at_half_pi = m.real_part_at(std::f64::consts::FRAC_PI_2).to_dense();
        let im = m.imaginary_part().to_dense();
        assert!((at_half_pi + im).norm() < 1e-14);
        let mut values = m.imaginary_part().eigenvalues();
        values.sort_by(f64::total_cmp);
        for (got, want) in values.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn flip_reverses_xi() {
        let m = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 2.0, 3.0]).unwrap());
        assert_eq!(m.flip().xi().values().len(), 3);
        for (a, b) in m.flip().xi().values().iter().zip([3.0, 2.0, 1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let p = ReciprocalMatrix::from_xi(&XiParameters::new(vec![1.0, 0.0, 1.0]).unwrap());
        for (a, b) in p.flip().xi().values().iter().zip(p.xi().values()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
        let z = ReciprocalMatrix::from_superdiagonal(vec![Complex64::new(0.3, 1.7), Complex64::new(-2.0, 0.1)])
            .unwrap();
        let back = z.flip().flip();
        for (a, b) in back.superdiag().iter().zip(z.superdiag()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn exact_spectra() {
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        let s4 = exact_spectrum(4).eigenvalues;
        for (a, b) in s4.iter().zip([phi, 1.0 / phi, -1.0 / phi, -phi]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
        let s5 = exact_spectrum(5).eigenvalues;
        for (a, b) in s5.iter().zip([3f64.sqrt(), 1.0, 0.0, -1.0, -(3f64.sqrt())]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
        let s6 = exact_spectrum(6);
        for j in 1..=3 {
            let c = 2.0 * (j as f64 * std::f64::consts::PI / 7.0).cos();
            assert!(s6.contains(c, 1e-14) && s6.contains(-c, 1e-14));
        }
    }

    #[test]
    fn char_poly_matches_two_by_two() {
        let m = ReciprocalMatrix::from_superdiagonal(real(&[2.0])).unwrap();
        assert_abs_diff_eq!(m.real_part_at(0.0).char_poly(0.0), -25.0 / 16.0, epsilon = 1e-15);
        let values = m.real_part_at(0.0).eigenvalues();
        assert_abs_diff_eq!(values[0], 1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(values[1], -1.25, epsilon = 1e-14);
    }

    #[test]
    fn eigenvectors_of_complex_hermitian() {
        let m = ReciprocalMatrix::from_superdiagonal(vec![
            Complex64::new(0.3, 1.7),
            Complex64::new(-2.0, 0.1),
            Complex64::new(0.5, -0.5),
        ])
        .unwrap();
        let h = m.real_part_at(0.7);
        let dense = h.to_dense();
        let eig = h.eigen();
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            let v = nalgebra::DVector::from_vec(v.clone());
            let residual = &dense * &v - v.clone() * Complex64::new(*lambda, 0.0);
            assert!(residual.norm() < 1e-12);
            assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);
        }
    }
}

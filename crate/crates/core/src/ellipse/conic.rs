use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Result};

/// Ellipse with real foci `center +- half_focal` and minor half-axis `minor_half_axis`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseComponent {
    #[serde(rename = "p")]
    pub center: f64,
    #[serde(rename = "X")]
    pub half_focal: f64,
    #[serde(rename = "c")]
    pub minor_half_axis: f64,
    pub foci: (f64, f64),
    /// `c = 0`: the ellipse collapses to its foci.
    #[serde(rename = "degenerate")]
    pub degenerate: bool,
}

impl EllipseComponent {
    pub fn new(center: f64, half_focal: f64, minor_half_axis: f64) -> Self {
        let half_focal = half_focal.abs();
        let minor_half_axis = minor_half_axis.abs();
        EllipseComponent {
            center,
            half_focal,
            minor_half_axis,
            foci: (center + half_focal, center - half_focal),
            degenerate: minor_half_axis == 0.0,
        }
    }

    pub fn major_half_axis(&self) -> f64 {
        self.minor_half_axis.hypot(self.half_focal)
    }

    pub fn negated(&self) -> Self {
        EllipseComponent::new(-self.center, self.half_focal, self.minor_half_axis)
    }

    /// `lambda_max(Re(e^{i theta} E))`, the support function of the elliptical disk.
    pub fn support(&self, theta: f64) -> f64 {
        let (x, c) = (self.half_focal, self.minor_half_axis);
        self.center * theta.cos() + (x * x * theta.cos().powi(2) + c * c).sqrt()
    }

    /// Closed disk membership with slack `eps`.
    pub fn contains(&self, z: Complex64, eps: f64) -> bool {
        let (f1, f2) = (Complex64::new(self.foci.0, 0.0), Complex64::new(self.foci.1, 0.0));
        (z - f1).norm() + (z - f2).norm() <= 2.0 * self.major_half_axis() + eps
    }

    /// Boundary points counterclockwise, starting on the positive major axis.
    pub fn boundary(&self, count: usize) -> Vec<Complex64> {
        let a = self.major_half_axis();
        (0..count)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / count as f64;
                Complex64::new(self.center + a * t.cos(), self.minor_half_axis * t.sin())
            })
            .collect()
    }

    /// Distance-like deviation of `z` from the ellipse: first-order
    /// (Sampson) distance for a proper ellipse, distance to the nearer focus
    /// for a degenerate one.
    pub fn residual(&self, z: Complex64) -> f64 {
        if self.degenerate {
            let (f1, f2) = (Complex64::new(self.foci.0, 0.0), Complex64::new(self.foci.1, 0.0));
            return (z - f1).norm().min((z - f2).norm());
        }
        let a = self.major_half_axis();
        let b = self.minor_half_axis;
        let (u, v) = (z.re - self.center, z.im);
        let f = (u / a).powi(2) + (v / b).powi(2) - 1.0;
        let grad = (2.0 * u / (a * a)).hypot(2.0 * v / (b * b));
        if grad == 0.0 {
            f.abs() * b
        } else {
            f.abs() / grad
        }
    }

    pub fn max_residual(&self, points: &[Complex64]) -> f64 {
        points.iter().map(|z| self.residual(*z)).fold(0.0, f64::max)
    }
}

/// Coefficients of the elliptical factor `(lambda - p cos - q sin)^2 - (x cos 2theta + y sin 2theta + z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PEllipseCoefficients {
    pub p: f64,
    pub q: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PEllipseCoefficients {
    /// `c^2 = z - sqrt(x^2 + y^2)`.
    pub fn c_sq(&self) -> f64 {
        self.z - self.x.hypot(self.y)
    }

    /// Half the distance between the foci.
    pub fn half_focal(&self) -> f64 {
        (2.0 * self.x.hypot(self.y)).sqrt()
    }
}

/// The ellipse `W(B)` of a 2x2 matrix `B` with eigenvalues `zeta1, zeta2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoByTwoEllipse {
    pub coefficients: PEllipseCoefficients,
    pub center: Complex64,
    pub foci: (Complex64, Complex64),
    pub minor_half_axis: f64,
}

impl TwoByTwoEllipse {
    /// Only defined for real foci.
    pub fn component(&self) -> Option<EllipseComponent> {
        if self.foci.0.im != 0.0 || self.foci.1.im != 0.0 {
            return None;
        }
        let center = self.center.re;
        Some(EllipseComponent::new(center, (self.foci.0.re - center).abs(), self.minor_half_axis))
    }
}

/// Elliptical range theorem for 2x2 matrices: foci at the eigenvalues and
/// `2c = sqrt(||B||_F^2 - |zeta1|^2 - |zeta2|^2)`.
pub fn ellipse_of_2x2(zeta1: Complex64, zeta2: Complex64, frobenius_norm_sq: f64) -> Result<TwoByTwoEllipse> {
    let deficit = frobenius_norm_sq - zeta1.norm_sqr() - zeta2.norm_sqr();
    let slack = 1e-12 * frobenius_norm_sq.abs().max(1.0);
    if deficit < -slack {
        return invalid(format!(
            "Frobenius norm squared {frobenius_norm_sq} is below |zeta1|^2 + |zeta2|^2 = {}",
            zeta1.norm_sqr() + zeta2.norm_sqr()
        ));
    }
    let c = deficit.max(0.0).sqrt() / 2.0;
    let sum = zeta1 + zeta2;
    let diff = zeta1 - zeta2;
    let coefficients = PEllipseCoefficients {
        p: sum.re / 2.0,
        q: sum.im / 2.0,
        x: (diff * diff).re / 8.0,
        y: diff.re * diff.im / 4.0,
        z: diff.norm_sqr() / 8.0 + c * c,
    };
    Ok(TwoByTwoEllipse { coefficients, center: sum / 2.0, foci: (zeta1, zeta2), minor_half_axis: c })
}

/// Least-squares conic `a x^2 + b xy + c y^2 + d x + e y + f = 0` through a point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicFit {
    pub coeffs: [f64; 6],
    /// Largest first-order geometric distance of the points from the fitted conic.
    pub max_residual: f64,
}

/// Fit by the smallest right singular vector of the design matrix built on
/// centered, rescaled coordinates.
pub fn fit_conic(points: &[Complex64]) -> Result<ConicFit> {
    if points.len() < 6 {
        return invalid(format!("conic fit needs at least 6 points, got {}", points.len()));
    }
    let centroid = points.iter().sum::<Complex64>() / points.len() as f64;
    let spread = points.iter().map(|z| (z - centroid).norm()).fold(0.0, f64::max).max(1e-300);
    let local: Vec<(f64, f64)> = points
        .iter()
        .map(|z| {
            let w = (z - centroid) / spread;
            (w.re, w.im)
        })
        .collect();
    let design = DMatrix::from_fn(local.len(), 6, |r, c| {
        let (x, y) = local[r];
        [x * x, x * y, y * y, x, y, 1.0][c]
    });
    let svd = SVD::new(design, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (best, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("six singular values");
    let k: Vec<f64> = v_t.row(best).iter().copied().collect();
    let coeffs = [k[0], k[1], k[2], k[3], k[4], k[5]];
    let max_residual = local
        .iter()
        .map(|&(x, y)| {
            let f = coeffs[0] * x * x + coeffs[1] * x * y + coeffs[2] * y * y + coeffs[3] * x + coeffs[4] * y + coeffs[5];
            let gx = 2.0 * coeffs[0] * x + coeffs[1] * y + coeffs[3];
            let gy = coeffs[1] * x + 2.0 * coeffs[2] * y + coeffs[4];
            let g = gx.hypot(gy);
            if g == 0.0 {
                f64::INFINITY
            } else {
                f.abs() / g * spread
            }
        })
        .fold(0.0, f64::max);
    Ok(ConicFit { coeffs, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nilpotent_gives_circle() {
        let c = 0.75f64;
        let e = ellipse_of_2x2(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 4.0 * c * c).unwrap();
        let k = e.coefficients;
        assert_eq!((k.p, k.q, k.x, k.y), (0.0, 0.0, 0.0, 0.0));
        assert_abs_diff_eq!(k.z, c * c, epsilon = 1e-15);
        assert_abs_diff_eq!(k.c_sq(), c * c, epsilon = 1e-15);
    }

    #[test]
    fn normal_matrix_gives_segment() {
        let e = ellipse_of_2x2(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), 2.0).unwrap();
        let k = e.coefficients;
        assert_abs_diff_eq!(k.x, 0.5, epsilon = 1e-15);
        assert_eq!(k.y, 0.0);
        assert_abs_diff_eq!(k.z, 0.5, epsilon = 1e-15);
        assert_eq!(k.c_sq(), 0.0);
        let comp = e.component().unwrap();
        assert!(comp.degenerate);
        assert_eq!(comp.foci, (1.0, -1.0));
    }

    #[test]
    fn displaced_golden_factor() {
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        let (z1, z2) = (Complex64::new(phi, 0.0), Complex64::new(-1.0 / phi, 0.0));
        let e = ellipse_of_2x2(z1, z2, z1.norm_sqr() + z2.norm_sqr() + 4.0).unwrap();
        let k = e.coefficients;
        assert_abs_diff_eq!(k.p, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(k.x, 5.0 / 8.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k.z, 5.0 / 8.0 + 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(k.half_focal(), 5f64.sqrt() / 2.0, epsilon = 1e-14);
        let comp = e.component().unwrap();
        assert_abs_diff_eq!(comp.minor_half_axis, 1.0, epsilon = 1e-14);
        assert!(k.z >= k.x.hypot(k.y));
    }

    #[test]
    fn rejects_norm_deficit() {
        let err = ellipse_of_2x2(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), 1.0).unwrap_err();
        assert!(err.to_string().contains("Frobenius"));
    }

    #[test]
    fn complex_foci_have_no_real_component() {
        let e = ellipse_of_2x2(Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), 3.0).unwrap();
        assert!(e.component().is_none());
        assert!(e.coefficients.q != 0.0 && e.coefficients.y != 0.0);
    }

    #[test]
    fn ellipse_geometry() {
        let e = EllipseComponent::new(0.5, 5f64.sqrt() / 2.0, 1.0);
        assert_abs_diff_eq!(e.major_half_axis(), 1.5, epsilon = 1e-15);
        for z in e.boundary(64) {
            assert!(e.residual(z) < 1e-14);
            assert!(e.contains(z, 1e-12));
        }
        assert!(e.contains(Complex64::new(0.5, 0.0), 0.0));
        assert!(!e.contains(Complex64::new(0.5, 1.01), 0.0));
        assert_abs_diff_eq!(e.support(0.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.support(std::f64::consts::FRAC_PI_2), 1.0, epsilon = 1e-15);
        assert_eq!(e.negated().foci, (-0.5 + 5f64.sqrt() / 2.0, -0.5 - 5f64.sqrt() / 2.0));
    }

    #[test]
    fn fit_recovers_ellipse_and_rejects_square() {
        let e = EllipseComponent::new(-0.3, 1.2, 0.4);
        let fit = fit_conic(&e.boundary(200)).unwrap();
        assert!(fit.max_residual < 1e-10, "{}", fit.max_residual);
        let square: Vec<Complex64> = (0..200)
            .map(|i| {
                let t = i as f64 / 50.0;
                match i / 50 {
                    0 => Complex64::new(t, 0.0),
                    1 => Complex64::new(1.0, t - 1.0),
                    2 => Complex64::new(3.0 - t, 1.0),
                    _ => Complex64::new(0.0, 4.0 - t),
                }
            })
            .collect();
        assert!(fit_conic(&square).unwrap().max_residual > 1e-2);
        assert!(fit_conic(&square[..3]).is_err());
    }
}

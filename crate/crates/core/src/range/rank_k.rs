use num_complex::Complex64;

use crate::ellipse::{ClassificationReport, EllipseComponent, KValue, Verdict};
use crate::error::{invalid, Error, Result};
use crate::kippenhahn::{eigencurves, uniform_grid};
use crate::matrix::{exact_spectrum, ReciprocalMatrix};
use crate::range::geometry::{clip, convex_hull, ConvexRegion, HalfPlane};

/// Vertices used for each elliptical disk in closed-form regions.
pub const ELLIPSE_VERTICES: usize = 1024;

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return invalid(format!("k must lie in 1..={n}, got {k}"));
    }
    Ok(())
}

/// Half-size of a square containing `W(A)`.
fn box_radius(matrix: &ReciprocalMatrix) -> f64 {
    let (mut big, mut inv) = (0.0f64, 0.0f64);
    for a in matrix.superdiag() {
        big = big.max(a.norm());
        inv = inv.max(1.0 / a.norm());
    }
    (1.0 + big + inv).max(5.0)
}

/// `Lambda_k(A)` as the intersection of the half-planes
/// `Re(e^{i theta} z) <= lambda_k(Re(e^{i theta} A))` over `grid` uniform angles.
pub fn rank_k_numeric(matrix: &ReciprocalMatrix, k: usize, grid: usize) -> Result<ConvexRegion> {
    let n = matrix.dim();
    check_k(n, k)?;
    if grid < 8 {
        return invalid(format!("grid must be at least 8, got {grid}"));
    }
    let r = box_radius(matrix);
    let thetas = uniform_grid(grid);
    let curves = eigencurves(matrix, &thetas);
    let mut poly = vec![
        Complex64::new(-r, -r),
        Complex64::new(r, -r),
        Complex64::new(r, r),
        Complex64::new(-r, r),
    ];
    let scale = 1.0 + curves.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    for (i, (theta, values)) in thetas.iter().zip(&curves).enumerate() {
        poly = clip(&poly, &HalfPlane { theta: *theta, bound: values[k - 1] }, 1e-12 * scale);
        if poly.is_empty() {
            return Ok(ConvexRegion::empty());
        }
        // clipping a convex polygon adds at most one vertex; rounding on a
        // sliver can break convexity and make the count grow geometrically
        if poly.len() > i + 5 {
            poly = convex_hull(&poly);
        }
    }
    Ok(ConvexRegion::from_points(&poly, scale))
}

fn scale_of(ellipses: &[EllipseComponent]) -> f64 {
    1.0 + ellipses.iter().fold(0.0f64, |a, e| a.max(e.center.abs() + e.major_half_axis()))
}

fn disk(e: &EllipseComponent, scale: f64) -> ConvexRegion {
    ConvexRegion::from_points(&e.boundary(ELLIPSE_VERTICES), scale)
}

fn hull(a: &EllipseComponent, b: &EllipseComponent, scale: f64) -> ConvexRegion {
    let mut pts = a.boundary(ELLIPSE_VERTICES);
    pts.extend(b.boundary(ELLIPSE_VERTICES));
    ConvexRegion::from_points(&pts, scale)
}

/// Closed-form `Lambda_k(A)` from an elliptical decomposition of `C(A)`.
pub fn rank_k_analytic(report: &ClassificationReport, k: usize) -> Result<ConvexRegion> {
    let n = report.n;
    check_k(n, k)?;
    if 2 * k > n + 1 {
        return Ok(ConvexRegion::empty());
    }
    let origin = || ConvexRegion::point(Complex64::new(0.0, 0.0));
    match report.verdict {
        Verdict::MixedNone => invalid("the curve has no elliptical decomposition"),
        Verdict::DegenerateSpectrum => {
            let s = exact_spectrum(n).eigenvalues;
            let (hi, lo) = (s[k - 1], s[n - k]);
            if hi - lo < 1e-12 {
                Ok(origin())
            } else {
                Ok(ConvexRegion::segment(Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)))
            }
        }
        Verdict::AllConcentric => {
            let mut nested = report.ellipses.clone();
            nested.sort_by(|a, b| b.major_half_axis().total_cmp(&a.major_half_axis()));
            let scale = scale_of(&nested);
            match nested.get(k - 1) {
                Some(e) => Ok(disk(e, scale)),
                None => Ok(origin()),
            }
        }
        Verdict::DisplacedPair => {
            let scale = scale_of(&report.ellipses);
            let pair = report
                .ellipses
                .iter()
                .find(|e| e.center > 0.0)
                .ok_or_else(|| Error::InvalidInput("displaced pair without a displaced ellipse".into()))?;
            let neg = pair.negated();
            let union = || hull(pair, &neg, scale);
            let meet = || disk(pair, scale).intersect(&disk(&neg, scale), scale);
            if n < 6 {
                return Ok(match k {
                    1 => union(),
                    2 => meet(),
                    _ => origin(),
                });
            }
            let central = report
                .ellipses
                .iter()
                .find(|e| e.center == 0.0)
                .ok_or_else(|| Error::InvalidInput("missing central ellipse".into()))?;
            // for k = 2cos(pi/7) the central ellipse encloses the pair
            let central_outer = report.k == Some(KValue::Pi7);
            Ok(match (central_outer, k) {
                (false, 1) => union(),
                (false, 2) => meet(),
                (false, _) => disk(central, scale),
                (true, 1) => disk(central, scale),
                (true, 2) => union(),
                (true, _) => meet(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipse::classify;
    use crate::matrix::XiParameters;
    use crate::range::geometry::{region_distance, RegionKind};
    use crate::scalar::Tolerance;
    use approx::assert_abs_diff_eq;

    fn matrix(xi: &[f64]) -> ReciprocalMatrix {
        ReciprocalMatrix::from_xi(&XiParameters::new(xi.to_vec()).unwrap())
    }

    fn report(xi: &[f64], tol: &Tolerance) -> ClassificationReport {
        classify::<f64>(xi, tol).unwrap().report()
    }

    #[test]
    fn sliver_stays_bounded_at_fine_grid() {
        let r = rank_k_numeric(&matrix(&[0.801938, 1.0, 0.0, 1.0, 0.801938]), 3, 2048).unwrap();
        assert_eq!(r.kind, RegionKind::Segment);
    }

    #[test]
    fn degenerate_segment_from_golden_ratio() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r = rank_k_numeric(&matrix(&[1.0, phi, 0.0]), 2, 2048).unwrap();
        assert_eq!(r.kind, RegionKind::Segment);
        assert_abs_diff_eq!(r.points[0].re, -1.0 / phi, epsilon = 1e-6);
        assert_abs_diff_eq!(r.points[1].re, 1.0 / phi, epsilon = 1e-6);
        assert!(r.points.iter().all(|z| z.im.abs() < 1e-6));
    }

    #[test]
    fn middle_rank_is_origin_and_beyond_is_empty() {
        let r = rank_k_numeric(&matrix(&[1.0, 0.3, 2.0, 0.7]), 3, 512).unwrap();
        assert_eq!(r.kind, RegionKind::Point);
        assert!(r.points[0].norm() < 1e-8);
        let r = rank_k_numeric(&matrix(&[1.0, 0.3, 2.0]), 3, 512).unwrap();
        assert_eq!(r.kind, RegionKind::Empty);
        assert!(rank_k_numeric(&matrix(&[1.0, 0.3, 2.0]), 0, 512).is_err());
        assert!(rank_k_numeric(&matrix(&[1.0, 0.3, 2.0]), 5, 512).is_err());
        assert!(rank_k_numeric(&matrix(&[1.0, 0.3, 2.0]), 1, 4).is_err());
    }

    #[test]
    fn numeric_matches_closed_form() {
        let s3 = 3f64.sqrt();
        let fig2 = [1.0 + s3 / 2.0, 0.0, 1.0, s3 / 2.0];
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let cases: Vec<(Vec<f64>, Tolerance)> = vec![
            (fig2.to_vec(), Tolerance::DOUBLE),
            (vec![1.0, phi - 1.0 / phi * 0.5, 0.5], Tolerance::DOUBLE),
            (vec![0.0; 5], Tolerance::DOUBLE),
            (vec![1.0; 5], Tolerance::DOUBLE),
            (vec![0.801938, 1.0, 0.0, 1.0, 0.801938], Tolerance::with_rel(1e-5)),
            (vec![1.44504, 1.0, 1.44504, 0.0, 3.24698], Tolerance::with_rel(1e-5)),
            (vec![2.80194, 1.0, 2.80194, 0.0, 1.55496], Tolerance::with_rel(1e-5)),
        ];
        for (xi, tol) in cases {
            let rep = report(&xi, &tol);
            assert_ne!(rep.verdict, Verdict::MixedNone, "{xi:?}");
            for k in 1..=xi.len() + 1 {
                let a = rank_k_analytic(&rep, k).unwrap();
                let b = rank_k_numeric(&matrix(&xi), k, 2048).unwrap();
                let d = region_distance(&a, &b);
                assert!(d < 5e-3, "{xi:?} k={k} distance {d}");
            }
        }
    }

    #[test]
    fn analytic_rejects_mixed() {
        let rep = report(&[1.0, 2.0, 3.0], &Tolerance::DOUBLE);
        assert_eq!(rep.verdict, Verdict::MixedNone);
        assert!(rank_k_analytic(&rep, 1).is_err());
    }
}

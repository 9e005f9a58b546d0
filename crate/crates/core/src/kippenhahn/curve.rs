use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::matrix::ReciprocalMatrix;

/// Relative gap below which two eigenvalues are treated as one cluster.
const CLUSTER_GAP: f64 = 1e-9;

/// Point of `C(A)` on the supporting line `Re(e^{i theta} z) = lambda_branch(theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub theta: f64,
    /// 1-based index into the non-increasing eigenvalues.
    pub branch: usize,
    pub point: Complex64,
    pub eigenvalue: f64,
    /// Set when the eigenvalue is repeated and the eigenvector was resolved
    /// by first-order perturbation in `theta`.
    pub degenerate: bool,
}

/// `m` uniform points on `[0, 2 pi)`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m).map(|i| std::f64::consts::TAU * i as f64 / m as f64).collect()
}

/// Eigenvalues of `Re(e^{i theta} A)`, non-increasing, per grid point.
pub fn eigencurves(matrix: &ReciprocalMatrix, grid: &[f64]) -> Vec<Vec<f64>> {
    grid.par_iter().map(|&t| matrix.real_part_at(t).eigenvalues()).collect()
}

fn samples_at(matrix: &ReciprocalMatrix, theta: f64) -> Vec<CurveSample> {
    let eig = matrix.real_part_at(theta).eigen();
    let n = eig.values.len();
    let scale = 1.0 + eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let derivative = matrix.real_part_scaled(Complex64::from_polar(1.0, theta) * Complex64::i()).to_dense();
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end - 1] - eig.values[end] < CLUSTER_GAP * scale {
            end += 1;
        }
        let cluster = &eig.vectors[start..end];
        let lambda = eig.values[start..end].iter().sum::<f64>() / (end - start) as f64;
        if end - start == 1 {
            out.push(CurveSample {
                theta,
                branch: start + 1,
                point: matrix.quadratic_form(&cluster[0]),
                eigenvalue: eig.values[start],
                degenerate: false,
            });
        } else {
            let u = DMatrix::from_fn(n, end - start, |r, c| cluster[c][r]);
            let reduced = u.adjoint() * &derivative * &u;
            let split = SymmetricEigen::new(reduced);
            let mut order: Vec<usize> = (0..end - start).collect();
            order.sort_by(|&a, &b| split.eigenvalues[b].total_cmp(&split.eigenvalues[a]));
            for (offset, &col) in order.iter().enumerate() {
                let v: Vec<Complex64> = (&u * split.eigenvectors.column(col)).iter().copied().collect();
                out.push(CurveSample {
                    theta,
                    branch: start + offset + 1,
                    point: matrix.quadratic_form(&v),
                    eigenvalue: lambda,
                    degenerate: true,
                });
            }
        }
        start = end;
    }
    out
}

/// Envelope samples ordered by `theta`, then branch.
pub fn envelope_points(matrix: &ReciprocalMatrix, grid: &[f64]) -> Vec<CurveSample> {
    grid.par_iter().flat_map_iter(|&t| samples_at(matrix, t)).collect()
}

/// One closed piece of `C(A)`, or a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComponent {
    pub points: Vec<Complex64>,
    pub is_point: bool,
}

impl CurveComponent {
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for a in &self.points {
            for b in &self.points {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn centroid(&self) -> Complex64 {
        self.points.iter().sum::<Complex64>() / self.points.len() as f64
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Bijection `from[s] -> to[map[s]]` minimizing the total displacement.
fn match_points(from: &[Complex64], to: &[Complex64], perms: &[Vec<usize>]) -> Vec<usize> {
    let n = from.len();
    if !perms.is_empty() {
        let cost = |p: &Vec<usize>| (0..n).map(|s| (from[s] - to[p[s]]).norm()).sum::<f64>();
        return perms
            .iter()
            .min_by(|a, b| cost(a).total_cmp(&cost(b)))
            .cloned()
            .unwrap_or_default();
    }
    let mut used = vec![false; n];
    from.iter()
        .map(|z| {
            let best = (0..n)
                .filter(|&t| !used[t])
                .min_by(|&a, &b| (z - to[a]).norm().total_cmp(&(z - to[b]).norm()))
                .unwrap();
            used[best] = true;
            best
        })
        .collect()
}

fn hausdorff_within(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter().all(|p| y.iter().any(|q| (p - q).norm() <= tol))
    };
    directed(a, b) && directed(b, a)
}

/// Split envelope samples into closed components by following each branch
/// continuously in `theta` (nearest-point matching between consecutive
/// angles) and closing the loops through the permutation picked up after a
/// full turn. Loops tracing the same set are merged.
pub fn components(samples: &[CurveSample], n: usize) -> Vec<CurveComponent> {
    if samples.is_empty() || n == 0 {
        return Vec::new();
    }
    let m = samples.len() / n;
    let rows: Vec<Vec<Complex64>> = (0..m).map(|i| samples[i * n..(i + 1) * n].iter().map(|s| s.point).collect()).collect();
    let scale = 1.0 + rows.iter().flatten().fold(0.0f64, |a, z| a.max(z.norm()));
    let perms = if n <= 6 { permutations(n) } else { Vec::new() };

    // track[s][i] is the branch position occupied by slot s at angle i
    let mut track = vec![vec![0usize; m]; n];
    let mut current: Vec<usize> = (0..n).collect();
    for i in 0..m {
        for s in 0..n {
            track[s][i] = current[s];
        }
        if i + 1 < m {
            let from: Vec<Complex64> = current.iter().map(|&b| rows[i][b]).collect();
            let map = match_points(&from, &rows[i + 1], &perms);
            current = map;
        }
    }
    let from: Vec<Complex64> = current.iter().map(|&b| rows[m - 1][b]).collect();
    let closing = match_points(&from, &rows[0], &perms);

    let mut seen = vec![false; n];
    let mut loops: Vec<Vec<Complex64>> = Vec::new();
    for s0 in 0..n {
        if seen[s0] {
            continue;
        }
        let mut pts = Vec::new();
        let mut s = s0;
        while !seen[s] {
            seen[s] = true;
            pts.extend((0..m).map(|i| rows[i][track[s][i]]));
            s = closing[s];
        }
        loops.push(pts);
    }

    let max_step = loops
        .iter()
        .flat_map(|l| l.windows(2).map(|w| (w[1] - w[0]).norm()))
        .fold(0.0f64, f64::max);
    let dup_tol = 1e-7 * scale + if m % 2 == 1 { max_step } else { 0.0 };
    let mut out: Vec<CurveComponent> = Vec::new();
    for pts in loops {
        if out.iter().any(|c| hausdorff_within(&c.points, &pts, dup_tol)) {
            continue;
        }
        let mut comp = CurveComponent { points: pts, is_point: false };
        if comp.diameter() < 1e-9 * scale {
            comp.points = vec![comp.centroid()];
            comp.is_point = true;
        }
        out.push(comp);
    }
    out
}

fn set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0f64, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Largest deviation of the sample sets from the symmetries `z -> conj(z)`
/// (pairing `theta` with `-theta`) and `z -> -z` (within each `theta`).
/// Requires samples on a uniform grid.
pub fn symmetry_defect(samples: &[CurveSample], n: usize) -> f64 {
    let m = samples.len() / n;
    let row = |i: usize| -> Vec<Complex64> { samples[i * n..(i + 1) * n].iter().map(|s| s.point).collect() };
    (0..m)
        .map(|i| {
            let here = row(i);
            let mirror: Vec<Complex64> = row((m - i) % m).iter().map(|z| z.conj()).collect();
            let negated: Vec<Complex64> = here.iter().map(|z| -z).collect();
            set_distance(&here, &mirror).max(set_distance(&here, &negated))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{exact_spectrum, XiParameters};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn from_xi(xi: &[f64]) -> ReciprocalMatrix {
        ReciprocalMatrix::from_xi(&XiParameters::new(xi.to_vec()).unwrap())
    }

    #[test]
    fn eigencurves_examples() {
        let m = ReciprocalMatrix::from_superdiagonal(vec![Complex64::new(2.0, 0.0)]).unwrap();
        let ev = eigencurves(&m, &[0.0]);
        assert_abs_diff_eq!(ev[0][0], 1.25, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[0][1], -1.25, epsilon = 1e-14);

        let m = from_xi(&[0.0; 4]);
        let spec = exact_spectrum(5).eigenvalues;
        for (t, row) in [0.3f64, 1.1, 2.5].iter().zip(eigencurves(&m, &[0.3, 1.1, 2.5])) {
            let mut expect: Vec<f64> = spec.iter().map(|s| s * t.cos()).collect();
            expect.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in row.iter().zip(&expect) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }

        let ev = eigencurves(&from_xi(&[1.0, 0.0, 1.0]), &[FRAC_PI_2]);
        for (a, b) in ev[0].iter().zip([1.0, 1.0, -1.0, -1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigencurves_half_turn_antisymmetry() {
        let m = from_xi(&[0.4, 1.3, 0.2, 2.0]);
        let grid = uniform_grid(64);
        let ev = eigencurves(&m, &grid);
        for i in 0..32 {
            for j in 0..5 {
                assert_abs_diff_eq!(ev[i + 32][j], -ev[i][4 - j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn samples_lie_on_their_tangent_lines() {
        let m = ReciprocalMatrix::from_superdiagonal(vec![
            Complex64::new(0.3, 1.7),
            Complex64::new(-2.0, 0.1),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, -0.5),
        ])
        .unwrap();
        let samples = envelope_points(&m, &uniform_grid(256));
        assert_eq!(samples.len(), 256 * 5);
        for s in &samples {
            let support = (Complex64::from_polar(1.0, s.theta) * s.point).re;
            assert_abs_diff_eq!(support, s.eigenvalue, epsilon = 1e-9);
        }
    }

    #[test]
    fn odd_middle_branch_is_origin() {
        let m = from_xi(&[0.5, 0.0, 0.5, 0.0]);
        for s in envelope_points(&m, &uniform_grid(128)).iter().filter(|s| s.branch == 3) {
            assert!(s.point.norm() < 1e-12, "{s:?}");
        }
    }

    #[test]
    fn zero_xi_collapses_to_spectrum() {
        let m = from_xi(&[0.0; 3]);
        let spec = exact_spectrum(4);
        let samples = envelope_points(&m, &uniform_grid(64));
        for s in &samples {
            assert!(s.point.im.abs() < 1e-12 && spec.contains(s.point.re, 1e-9), "{s:?}");
        }
        let comps = components(&samples, 4);
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.is_point));
    }

    #[test]
    fn degenerate_samples_are_flagged() {
        let m = from_xi(&[1.0, 0.0, 1.0]);
        let samples = envelope_points(&m, &[FRAC_PI_2]);
        assert!(samples.iter().all(|s| s.degenerate));
        let mut ys: Vec<f64> = samples.iter().map(|s| s.point.im).collect();
        ys.sort_by(f64::total_cmp);
        for (a, b) in ys.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn displaced_pair_components() {
        let m = from_xi(&[1.0, 0.0, 1.0]);
        let samples = envelope_points(&m, &uniform_grid(512));
        let comps = components(&samples, 4);
        assert_eq!(comps.len(), 2);
        let mut centers: Vec<f64> = comps.iter().map(|c| c.centroid().re).collect();
        centers.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(centers[0], -0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(centers[1], 0.5, epsilon = 1e-6);
    }

    #[test]
    fn odd_grid_still_merges_duplicates() {
        let m = from_xi(&[1.0, 0.0, 1.0]);
        let samples = envelope_points(&m, &uniform_grid(501));
        assert_eq!(components(&samples, 4).len(), 2);
    }

    #[test]
    fn origin_is_a_point_component() {
        let m = from_xi(&[1.0 + 3f64.sqrt() / 2.0, 0.0, 1.0, 3f64.sqrt() / 2.0]);
        let comps = components(&envelope_points(&m, &uniform_grid(512)), 5);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps.iter().filter(|c| c.is_point).count(), 1);
    }

    #[test]
    fn symmetric_about_both_axes() {
        let m = ReciprocalMatrix::from_superdiagonal(vec![
            Complex64::new(0.3, 1.7),
            Complex64::new(-2.0, 0.1),
            Complex64::new(0.5, -0.5),
        ])
        .unwrap();
        let samples = envelope_points(&m, &uniform_grid(256));
        assert!(symmetry_defect(&samples, 4) < 1e-8);
        let samples = envelope_points(&from_xi(&[1.0, 0.0, 1.0]), &uniform_grid(256));
        assert!(symmetry_defect(&samples, 4) < 1e-8);
    }
}

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use nalgebra::Schur;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ellipse::{classify, find_instance, Verdict};
use crate::kippenhahn::{determinant_poly_eval, envelope_points, symmetry_defect, uniform_grid, KippenhahnPolynomial};
use crate::matrix::{exact_spectrum, ReciprocalMatrix};
use crate::scalar::Tolerance;
use crate::verify::oracle::{agrees, brute_force_kinds};

#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub seed: u64,
    pub samples: usize,
    pub dims: Vec<usize>,
    /// Angles used for the curve symmetry check.
    pub grid: usize,
    pub tol: Tolerance,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: 1, samples: 2000, dims: vec![4, 5, 6], grid: 64, tol: Tolerance::DOUBLE }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub check: &'static str,
    pub n: usize,
    pub xi: Vec<f64>,
    pub family: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckSummary {
    pub run: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub samples_per_n: usize,
    pub checks: BTreeMap<&'static str, CheckSummary>,
    /// Sample counts per `n`, family and verdict.
    pub coverage: BTreeMap<String, usize>,
    pub discrepancies: Vec<Discrepancy>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub const CHECKS: [&str; 6] =
    ["closed_vs_det", "xi_roundtrip", "spectrum", "flip", "symmetry", "criterion_vs_oracle"];

fn two_cos(j: f64) -> f64 {
    2.0 * (j * PI / 7.0).cos()
}

fn family(n: usize, rng: &mut ChaCha8Rng, three: &[[f64; 5]]) -> (Vec<f64>, &'static str) {
    let a: f64 = rng.random_range(0.05..3.0);
    let b: f64 = rng.random_range(0.0..3.0);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let s3 = 3f64.sqrt();
    match (n, rng.random_range(0..4)) {
        (4, 0) => {
            let inner = b.min(phi * phi * a);
            (vec![a, phi * a - inner / phi, inner], "con4")
        }
        (4, 1) => {
            let inner = b.min(phi * phi * a);
            (vec![inner, phi * a - inner / phi, a], "con4")
        }
        (4, 2) => (vec![a, 0.0, a], "noncon4"),
        (5, 0) => (vec![a, b, rng.random_range(0.0..3.0), a], "con5"),
        (5, 1) => {
            let (x2, x3) = (b, rng.random_range(0.0..3.0));
            let x1 = a + 2.0 * (x3 - x2);
            if x1 < 0.0 {
                (vec![a + 2.0 * (x2 - x3), x3, x2, a], "con5")
            } else {
                (vec![x1, x2, x3, a], "con5")
            }
        }
        (5, 2) => {
            let (x2, x3) = if rng.random_bool(0.5) { (0.0, a) } else { (a, 0.0) };
            (vec![s3 * a / 2.0 + x3, x2, x3, s3 * a / 2.0 + x2], "noncon5")
        }
        (6, 0) => {
            let base = three[rng.random_range(0..three.len())];
            (base.iter().map(|v| v * a).collect(), "3conel")
        }
        (6, 1) => (vec![a, two_cos(2.0) * a, 0.0, two_cos(2.0) * a, a], "de1"),
        (6, 2) => {
            let k = if rng.random_bool(0.5) { two_cos(1.0) } else { two_cos(3.0) };
            let mut xi = vec![a, 0.0, k * a, (k - 1.0).powi(2) * a, k * a];
            if rng.random_bool(0.5) {
                xi.reverse();
                (xi, "de3")
            } else {
                (xi, "de2")
            }
        }
        _ => (vec![0.0; n - 1], "zero"),
    }
}

/// Random xi for dimension `n`: uniform, on a criterion family, or a family
/// member perturbed by `1e-3`.
pub fn sample_xi(n: usize, rng: &mut ChaCha8Rng, three: &[[f64; 5]]) -> (Vec<f64>, &'static str) {
    match rng.random_range(0..10) {
        0..=3 => {
            let xi = (1..n)
                .map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..3.0) })
                .collect();
            (xi, "uniform")
        }
        4..=7 => family(n, rng, three),
        8 => {
            let (mut xi, _) = family(n, rng, three);
            let j = rng.random_range(0..xi.len());
            xi[j] += 1e-3;
            (xi, "perturbed")
        }
        _ => {
            let (xi, name) = family(n, rng, three);
            let t = [0.1, 1.0, 10.0][rng.random_range(0..3)];
            (xi.iter().map(|v| v * t).collect(), name)
        }
    }
}

/// A matrix with the given xi, random phases and random orientation of each
/// `(a, 1/a)` pair.
pub fn random_matrix(xi: &[f64], rng: &mut ChaCha8Rng) -> ReciprocalMatrix {
    let entries = xi
        .iter()
        .map(|&x| {
            let r = x.sqrt() + (x + 1.0).sqrt();
            let r = if rng.random_bool(0.5) { r } else { 1.0 / r };
            Complex64::from_polar(r, rng.random_range(0.0..TAU))
        })
        .collect();
    ReciprocalMatrix::from_superdiagonal(entries).expect("finite nonzero entries")
}

/// Result of every check on one xi.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub n: usize,
    pub xi: Vec<f64>,
    pub family: &'static str,
    pub verdict: Verdict,
    pub criterion: Option<&'static str>,
    pub oracle: Vec<Verdict>,
    pub runs: Vec<&'static str>,
    pub failures: Vec<Discrepancy>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_sample(n: usize, index: usize, cfg: &BatteryConfig, three: &[[f64; 5]]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream((n as u64) << 32 | index as u64);
    let (xi, family) = sample_xi(n, &mut rng, three);
    check_with(&xi, family, &mut rng, cfg)
}

/// All battery checks on a single xi with `4 <= n <= 6`; the matrix phases
/// come from `cfg.seed`.
pub fn check_xi(xi: &[f64], cfg: &BatteryConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    check_with(xi, "input", &mut rng, cfg)
}

fn check_with(xi: &[f64], family: &'static str, rng: &mut ChaCha8Rng, cfg: &BatteryConfig) -> Outcome {
    let n = xi.len() + 1;
    let xi = xi.to_vec();
    let mut out = Outcome {
        n,
        xi: xi.clone(),
        family,
        verdict: Verdict::MixedNone,
        criterion: None,
        oracle: Vec::new(),
        runs: Vec::new(),
        failures: Vec::new(),
    };
    let fail = |out: &mut Outcome, check: &'static str, detail: String| {
        out.failures.push(Discrepancy { check, n, xi: xi.clone(), family, detail });
    };
    let matrix = random_matrix(&xi, rng);
    let closed = KippenhahnPolynomial::closed_form(&xi).expect("n in 4..=6");
    let magnitude = closed.map(|c: &f64| c.abs());

    out.runs.push("closed_vs_det");
    for _ in 0..4 {
        let theta = rng.random_range(0.0..TAU);
        let lambda = rng.random_range(-4.0..4.0);
        let (lhs, rhs) = (closed.eval_det(theta, lambda), determinant_poly_eval(&matrix, theta, lambda));
        let bound = 1e-9 * (1.0 + magnitude.eval(lambda * lambda, theta.cos().powi(2)) * lambda.abs().max(1.0));
        if (lhs - rhs).abs() > bound {
            fail(&mut out, "closed_vs_det", format!("theta={theta} lambda={lambda}: {lhs} vs {rhs}"));
            break;
        }
    }

    out.runs.push("xi_roundtrip");
    let back = matrix.xi();
    let err = xi.iter().zip(back.values()).map(|(a, b)| (a - b).abs() / (1.0 + a)).fold(0.0, f64::max);
    if err > 1e-9 {
        fail(&mut out, "xi_roundtrip", format!("relative error {err:e}"));
    }

    out.runs.push("spectrum");
    let expected = exact_spectrum(n).eigenvalues;
    match Schur::new(matrix.to_dense()).eigenvalues() {
        Some(values) => {
            let mut got: Vec<Complex64> = values.iter().copied().collect();
            got.sort_by(|a, b| b.re.total_cmp(&a.re));
            let err = got.iter().zip(&expected).map(|(g, e)| (g - e).norm()).fold(0.0, f64::max);
            if err > 1e-9 {
                fail(&mut out, "spectrum", format!("max deviation {err:e}"));
            }
        }
        None => fail(&mut out, "spectrum", "eigenvalues unavailable".into()),
    }

    let verdict = classify::<f64>(&xi, &cfg.tol).expect("valid xi");
    out.verdict = verdict.verdict;
    out.criterion = verdict.criterion.map(|c| c.tag());

    out.runs.push("flip");
    let reversed: Vec<f64> = xi.iter().rev().copied().collect();
    let flipped = KippenhahnPolynomial::closed_form(&reversed).expect("n in 4..=6");
    let diff = flipped.sub(&closed).max_abs_coeff();
    let mirror = classify::<f64>(&reversed, &cfg.tol).expect("valid xi");
    if diff > 1e-12 * (1.0 + closed.poly().max_abs_coeff())
        || mirror.verdict != verdict.verdict
        || mirror.criterion != verdict.criterion.map(|c| c.mirrored())
    {
        fail(
            &mut out,
            "flip",
            format!("coefficient gap {diff:e}; {:?} vs {:?}", verdict.criterion, mirror.criterion),
        );
    }

    out.runs.push("symmetry");
    let samples = envelope_points(&matrix, &uniform_grid(cfg.grid));
    let defect = symmetry_defect(&samples, n);
    if defect > 1e-8 {
        fail(&mut out, "symmetry", format!("defect {defect:e}"));
    }

    out.runs.push("criterion_vs_oracle");
    let kinds = brute_force_kinds(&xi, &cfg.tol);
    if !agrees(verdict.verdict, &kinds) {
        fail(&mut out, "criterion_vs_oracle", format!("classify {:?}, oracle {kinds:?}", verdict.verdict));
    }
    out.oracle = kinds;
    out
}

/// Three-concentric instances used as a family basis for `n = 6`.
pub fn three_concentric_instances() -> Vec<[f64; 5]> {
    [0.5, 1.0, 1.5, 2.0].iter().filter_map(|&v| find_instance(v)).collect()
}

/// Run every consistency check on `cfg.samples` random xi per dimension.
pub fn run_battery(cfg: &BatteryConfig) -> BatteryReport {
    let three = three_concentric_instances();
    let jobs: Vec<(usize, usize)> =
        cfg.dims.iter().flat_map(|&n| (0..cfg.samples).map(move |i| (n, i))).collect();
    let outcomes: Vec<Outcome> = jobs.par_iter().map(|&(n, i)| check_sample(n, i, cfg, &three)).collect();
    let mut checks: BTreeMap<&'static str, CheckSummary> = BTreeMap::new();
    let mut coverage = BTreeMap::new();
    let mut discrepancies = Vec::new();
    for o in outcomes {
        for r in &o.runs {
            checks.entry(r).or_default().run += 1;
        }
        for d in &o.failures {
            checks.entry(d.check).or_default().failed += 1;
        }
        *coverage.entry(format!("n={} {} {:?}", o.n, o.family, o.verdict)).or_insert(0) += 1;
        discrepancies.extend(o.failures);
    }
    BatteryReport { seed: cfg.seed, samples_per_n: cfg.samples, checks, coverage, discrepancies }
}

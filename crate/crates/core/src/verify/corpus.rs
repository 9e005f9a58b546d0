use serde::Serialize;

use crate::ellipse::{audit_three_concentric, classify, find_instance, AuditReport, Criterion, Verdict};
use crate::matrix::{ReciprocalMatrix, XiParameters};
use crate::range::{rank_k_analytic, rank_k_numeric, region_distance};
use crate::scalar::Tolerance;
use crate::verify::battery::{run_battery, BatteryConfig, BatteryReport};
use crate::verify::oracle::{agrees, brute_force_kinds};

/// Bound on the Hausdorff distance between numeric and closed-form regions.
pub const REGION_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub label: &'static str,
    pub xi: Vec<f64>,
    /// Relative tolerance; the figure values are printed to six digits.
    pub rel_tol: f64,
    pub verdict: Verdict,
    pub criterion: Option<&'static str>,
}

/// Parameter sets with known classification.
pub fn corpus() -> Vec<CorpusCase> {
    let s3 = 3f64.sqrt();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let case = |label, xi: Vec<f64>, rel_tol, verdict, criterion| CorpusCase { label, xi, rel_tol, verdict, criterion };
    use Verdict::*;
    vec![
        case("golden concentric", vec![1.0, 1.0, 1.0], 1e-9, AllConcentric, Some("con4")),
        case("golden segment", vec![1.0, phi, 0.0], 1e-9, AllConcentric, Some("con4")),
        case("displaced n=4", vec![1.0, 0.0, 1.0], 1e-9, DisplacedPair, Some("noncon4")),
        case("perturbed n=4", vec![1.0, 0.0, 1.001], 1e-9, MixedNone, None),
        case("drop shape", vec![0.5, 0.0, 0.5, 0.0], 1e-9, MixedNone, None),
        case("elliptical n=5", vec![1.0 + s3 / 2.0, 0.0, 1.0, s3 / 2.0], 1e-9, DisplacedPair, Some("noncon5")),
        case("zero n=6", vec![0.0; 5], 1e-9, DegenerateSpectrum, None),
        case("three concentric", vec![1.0; 5], 1e-9, AllConcentric, Some("3conel")),
        case("degenerate central", vec![0.801938, 1.0, 0.0, 1.0, 0.801938], 1e-5, DisplacedPair, Some("de1")),
        case("inner central", vec![1.44504, 1.0, 1.44504, 0.0, 3.24698], 1e-5, DisplacedPair, Some("de3")),
        case("outer central", vec![2.80194, 1.0, 2.80194, 0.0, 1.55496], 1e-5, DisplacedPair, Some("de3")),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusResult {
    pub label: &'static str,
    pub xi: Vec<f64>,
    pub verdict: Verdict,
    pub criterion: Option<&'static str>,
    pub oracle: Vec<Verdict>,
    /// Numeric-vs-closed-form distance per `k`; null when no closed form.
    pub region_distances: Vec<Option<f64>>,
    pub passed: bool,
}

pub fn check_case(case: &CorpusCase, grid: usize) -> CorpusResult {
    let tol = Tolerance::with_rel(case.rel_tol);
    let n = case.xi.len() + 1;
    let c = classify::<f64>(&case.xi, &tol).expect("corpus xi is valid");
    let oracle = brute_force_kinds(&case.xi, &tol);
    let report = c.report();
    let matrix = ReciprocalMatrix::from_xi(&XiParameters::new(case.xi.clone()).expect("corpus xi is valid"));
    let region_distances: Vec<Option<f64>> = (1..=n)
        .map(|k| {
            let numeric = rank_k_numeric(&matrix, k, grid).ok()?;
            let analytic = rank_k_analytic(&report, k).ok()?;
            Some(region_distance(&numeric, &analytic))
        })
        .collect();
    let regions_ok = region_distances.iter().all(|d| d.is_none_or(|d| d < REGION_TOLERANCE));
    let passed = c.verdict == case.verdict
        && c.criterion.map(|x| x.tag()) == case.criterion
        && agrees(c.verdict, &oracle)
        && regions_ok;
    CorpusResult {
        label: case.label,
        xi: case.xi.clone(),
        verdict: c.verdict,
        criterion: c.criterion.map(|x| x.tag()),
        oracle,
        region_distances,
        passed,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaledInstance {
    pub t: f64,
    pub criterion: Option<&'static str>,
    pub minor_half_axes: Vec<f64>,
    pub ordered: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeConcentricCheck {
    pub audit: AuditReport,
    /// Solution of the three conditions with `xi_1 = 1` found by Newton iteration.
    pub instance: Option<[f64; 5]>,
    pub scalings: Vec<ScaledInstance>,
    pub passed: bool,
}

/// Coefficient audit plus a numerically found instance, checked by
/// divisibility at several scalings.
pub fn three_concentric_check() -> ThreeConcentricCheck {
    let audit = audit_three_concentric();
    let instance = find_instance(1.5);
    let scalings: Vec<ScaledInstance> = instance
        .iter()
        .flat_map(|x| {
            [0.1, 1.0, 10.0].into_iter().map(move |t| {
                let xi: Vec<f64> = x.iter().map(|v| v * t).collect();
                let c = classify::<f64>(&xi, &Tolerance::DOUBLE).expect("nonnegative xi");
                let axes: Vec<f64> = c.components().iter().map(|e| e.minor_half_axis).collect();
                let ordered = axes.windows(2).all(|w| w[0] >= w[1]);
                ScaledInstance { t, criterion: c.criterion.map(|x| x.tag()), minor_half_axes: axes, ordered }
            })
        })
        .collect();
    let passed = audit.mismatches.is_empty()
        && scalings.len() == 3
        && scalings
            .iter()
            .all(|s| s.ordered && s.criterion == Some(Criterion::ThreeConcentric.tag()) && s.minor_half_axes.len() == 3);
    ThreeConcentricCheck { audit, instance, scalings, passed }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub corpus: Vec<CorpusResult>,
    pub three_concentric: ThreeConcentricCheck,
    pub battery: BatteryReport,
}

/// The full oracle run: fixed corpus, three-concentric audit and the random battery.
pub fn run_verify(cfg: &BatteryConfig, region_grid: usize) -> VerifyReport {
    let corpus: Vec<CorpusResult> = corpus().iter().map(|c| check_case(c, region_grid)).collect();
    let three_concentric = three_concentric_check();
    let battery = run_battery(cfg);
    let passed = corpus.iter().all(|c| c.passed) && three_concentric.passed && battery.passed();
    VerifyReport { passed, corpus, three_concentric, battery }
}

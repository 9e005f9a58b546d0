use serde::Serialize;

use crate::ellipse::conic::EllipseComponent;
use crate::ellipse::divisibility::divide_by;
use crate::ellipse::mpoly::MPoly;
use crate::ellipse::table::{xp_row, XpRow, XpRowValues};
use crate::ellipse::three::printed_equations;
use crate::error::{invalid, Error, Result};
use crate::kippenhahn::KippenhahnPolynomial;
use crate::poly::BiPoly;
use crate::scalar::{approx_eq, is_nonzero, max_abs, solve_linear, Scalar, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AllConcentric,
    DisplacedPair,
    /// No decomposition of `C(A)` into ellipses.
    MixedNone,
    /// All `xi` vanish and `C(A)` is the spectrum itself.
    DegenerateSpectrum,
}

/// The two admissible values of `k` in the displaced families for `n = 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KValue {
    /// `2cos(pi/7)`
    #[serde(rename = "2cos(pi/7)")]
    Pi7,
    /// `2cos(3pi/7)`
    #[serde(rename = "2cos(3pi/7)")]
    ThreePi7,
}

impl KValue {
    pub fn value<T: Scalar>(self) -> T {
        match self {
            KValue::Pi7 => T::two_cos_pi7(1),
            KValue::ThreePi7 => T::two_cos_pi7(3),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KValue::Pi7 => "2cos(pi/7)",
            KValue::ThreePi7 => "2cos(3pi/7)",
        }
    }

    /// Row of the `(X0, X, p)` table realized by the family.
    pub fn table_row(self) -> &'static str {
        match self {
            KValue::Pi7 => "ii",
            KValue::ThreePi7 => "vi",
        }
    }
}

/// Which of the two alternative equalities of a criterion holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    First,
    Second,
    Both,
}

impl Branch {
    fn from_flags(first: bool, second: bool) -> Option<Self> {
        match (first, second) {
            (true, true) => Some(Branch::Both),
            (true, false) => Some(Branch::First),
            (false, true) => Some(Branch::Second),
            (false, false) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Con4 { branch: Branch },
    Noncon4,
    Con5 { branch: Branch },
    Noncon5,
    ThreeConcentric,
    De1,
    De2 { k: KValue },
    De3 { k: KValue },
}

impl Criterion {
    pub fn tag(&self) -> &'static str {
        match self {
            Criterion::Con4 { .. } => "con4",
            Criterion::Noncon4 => "noncon4",
            Criterion::Con5 { .. } => "con5",
            Criterion::Noncon5 => "noncon5",
            Criterion::ThreeConcentric => "3conel",
            Criterion::De1 => "de1",
            Criterion::De2 { .. } => "de2",
            Criterion::De3 { .. } => "de3",
        }
    }

    pub fn k(&self) -> Option<KValue> {
        match self {
            Criterion::De2 { k } | Criterion::De3 { k } => Some(*k),
            _ => None,
        }
    }

    pub fn branch(&self) -> Option<Branch> {
        match self {
            Criterion::Con4 { branch } | Criterion::Con5 { branch } => Some(*branch),
            _ => None,
        }
    }

    /// The same criterion after reversing the order of `xi`.
    pub fn mirrored(&self) -> Criterion {
        let swap = |b: Branch| match b {
            Branch::First => Branch::Second,
            Branch::Second => Branch::First,
            Branch::Both => Branch::Both,
        };
        match *self {
            Criterion::Con4 { branch } => Criterion::Con4 { branch: swap(branch) },
            Criterion::De2 { k } => Criterion::De3 { k },
            Criterion::De3 { k } => Criterion::De2 { k },
            other => other,
        }
    }
}

/// Ellipse with foci `center +- half_focal` and squared minor half-axis `c_sq`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEllipse<T> {
    pub center: T,
    pub half_focal: T,
    pub c_sq: T,
}

impl<T: Scalar> ExactEllipse<T> {
    pub fn centered(half_focal: T, c_sq: T) -> Self {
        ExactEllipse { center: T::zero(), half_focal, c_sq }
    }

    pub fn negated(&self) -> Self {
        ExactEllipse { center: -self.center.clone(), half_focal: self.half_focal.clone(), c_sq: self.c_sq.clone() }
    }

    pub fn component(&self) -> EllipseComponent {
        EllipseComponent::new(self.center.to_f64(), self.half_focal.to_f64(), self.c_sq.to_f64().max(0.0).sqrt())
    }

    /// Factor of the Kippenhahn polynomial contributed by this ellipse, or
    /// by the pair `+-E` when the center is off the origin.
    pub fn factor(&self) -> BiPoly<T> {
        let x_sq = self.half_focal.square();
        if self.center.is_zero() {
            BiPoly::linear_factor(&x_sq, &self.c_sq)
        } else {
            BiPoly::quadratic_factor(&self.center.square(), &x_sq, &self.c_sq)
        }
    }
}

/// Result of [`classify`] in the arithmetic of `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub n: usize,
    pub xi: Vec<T>,
    pub verdict: Verdict,
    pub criterion: Option<Criterion>,
    /// Every elliptical component: outer to inner for concentric families,
    /// `E, -E` for a displaced pair and `E0, E, -E` when a central ellipse
    /// accompanies it.
    pub ellipses: Vec<ExactEllipse<T>>,
    pub origin_component: bool,
    pub table_row: Option<XpRow<T>>,
    /// Criteria whose equalities held but whose factors failed to divide.
    pub unconfirmed: Vec<Criterion>,
}

/// Serializable summary of a [`Classification`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub xi: Vec<f64>,
    pub verdict: Verdict,
    pub criterion: Option<&'static str>,
    pub branch: Option<Branch>,
    pub k: Option<KValue>,
    pub k_value: Option<f64>,
    pub ellipses: Vec<EllipseComponent>,
    pub origin_component: bool,
    pub table_row: Option<XpRowValues>,
}

impl<T: Scalar> Classification<T> {
    pub fn components(&self) -> Vec<EllipseComponent> {
        self.ellipses.iter().map(ExactEllipse::component).collect()
    }

    /// Central ellipse accompanying a displaced pair (`n = 6`).
    pub fn central(&self) -> Option<&ExactEllipse<T>> {
        match self.criterion {
            Some(Criterion::De1 | Criterion::De2 { .. } | Criterion::De3 { .. }) => self.ellipses.first(),
            _ => None,
        }
    }

    /// The member of the displaced pair with positive center.
    pub fn displaced(&self) -> Option<&ExactEllipse<T>> {
        self.ellipses.iter().find(|e| e.center.to_f64() > 0.0)
    }

    pub fn report(&self) -> ClassificationReport {
        ClassificationReport {
            n: self.n,
            xi: self.xi.iter().map(Scalar::to_f64).collect(),
            verdict: self.verdict,
            criterion: self.criterion.map(|c| c.tag()),
            branch: self.criterion.and_then(|c| c.branch()),
            k: self.criterion.and_then(|c| c.k()),
            k_value: self.criterion.and_then(|c| c.k()).map(|k| k.value::<f64>()),
            ellipses: self.components(),
            origin_component: self.origin_component,
            table_row: self.table_row.as_ref().map(XpRow::values),
        }
    }
}

struct Candidate<T> {
    criterion: Criterion,
    verdict: Verdict,
    ellipses: Vec<ExactEllipse<T>>,
    table_row: Option<XpRow<T>>,
}

impl<T: Scalar> Candidate<T> {
    fn concentric(criterion: Criterion, ellipses: Vec<ExactEllipse<T>>) -> Self {
        Candidate { criterion, verdict: Verdict::AllConcentric, ellipses, table_row: None }
    }

    fn displaced(criterion: Criterion, pair: ExactEllipse<T>) -> Self {
        let neg = pair.negated();
        Candidate { criterion, verdict: Verdict::DisplacedPair, ellipses: vec![pair, neg], table_row: None }
    }

    /// Factors whose product should equal the polynomial.
    fn factors(&self) -> Vec<BiPoly<T>> {
        self.ellipses
            .iter()
            .filter(|e| e.center.to_f64() >= 0.0)
            .map(ExactEllipse::factor)
            .collect()
    }
}

struct Checker<'a> {
    scale: f64,
    tol: &'a Tolerance,
}

impl Checker<'_> {
    fn eq<T: Scalar>(&self, a: T, b: T, degree: i32) -> bool {
        approx_eq(&a, &b, degree, self.scale, self.tol)
    }

    fn zero<T: Scalar>(&self, a: T, degree: i32) -> bool {
        !is_nonzero(&a, degree, self.scale, self.tol)
    }

    fn nonneg<T: Scalar>(&self, a: &T, degree: i32) -> bool {
        a.to_f64() >= -self.tol.bound(self.scale.powi(degree))
    }
}

fn candidates4<T: Scalar>(x: &[T], ck: &Checker) -> Vec<Candidate<T>> {
    let phi = T::golden();
    let inv = T::one() / phi.clone();
    let mut out = Vec::new();
    let first = ck.eq(x[1].clone(), phi.clone() * x[0].clone() - inv.clone() * x[2].clone(), 1);
    let second = ck.eq(x[1].clone(), phi.clone() * x[2].clone() - inv.clone() * x[0].clone(), 1);
    if let Some(branch) = Branch::from_flags(first, second) {
        let (outer, inner) = if first { (&x[0], &x[2]) } else { (&x[2], &x[0]) };
        out.push(Candidate::concentric(
            Criterion::Con4 { branch },
            vec![
                ExactEllipse::centered(phi.clone(), phi.square() * outer.clone()),
                ExactEllipse::centered(inv.clone(), inv.square() * inner.clone()),
            ],
        ));
    }
    if ck.zero(x[1].clone(), 1) && ck.eq(x[0].clone(), x[2].clone(), 1) && !ck.zero(x[0].clone(), 1) {
        let half = T::from_ratio(1, 2);
        let c_sq = (x[0].clone() + x[2].clone()) * half.clone();
        out.push(Candidate::displaced(
            Criterion::Noncon4,
            ExactEllipse { center: half.clone(), half_focal: phi - half, c_sq },
        ));
    }
    out
}

fn candidates5<T: Scalar>(x: &[T], ck: &Checker) -> Vec<Candidate<T>> {
    let s3 = T::sqrt3();
    let half = T::from_ratio(1, 2);
    let mut out = Vec::new();
    let first = ck.eq(x[0].clone(), x[3].clone(), 1);
    let second = ck.eq(x[0].clone() - x[3].clone(), T::from_int(2) * (x[2].clone() - x[1].clone()), 1);
    if let Some(branch) = Branch::from_flags(first, second) {
        let inner = (x[0].clone() + x[3].clone()) * half.clone();
        let outer = x[1].clone() + x[2].clone() + inner.clone();
        out.push(Candidate::concentric(
            Criterion::Con5 { branch },
            vec![ExactEllipse::centered(s3.clone(), outer), ExactEllipse::centered(T::one(), inner)],
        ));
    }
    let s = x[1].clone() + x[2].clone();
    if ck.zero(x[1].clone() * x[2].clone(), 2)
        && !ck.zero(s.clone(), 1)
        && ck.eq(x[0].clone(), s3.clone() * s.clone() * half.clone() + x[2].clone(), 1)
        && ck.eq(x[3].clone(), s3.clone() * s.clone() * half.clone() + x[1].clone(), 1)
    {
        let c_sq = (T::from_int(2) + s3.clone()) * half.clone() * s;
        out.push(Candidate::displaced(
            Criterion::Noncon5,
            ExactEllipse {
                center: (s3.clone() - T::one()) * half.clone(),
                half_focal: (s3 + T::one()) * half,
                c_sq,
            },
        ));
    }
    out
}

/// Squared minor half-axes `s_j` of three concentric ellipses with foci
/// `+-2cos(j pi/7)` matching the coefficients of the polynomial that are
/// linear in `s`.
pub fn concentric_axes6<T: Scalar>(x: &[T]) -> Option<Vec<T>> {
    let xs: Vec<T> = (1..=3).map(|j| T::two_cos_pi7(j).square()).collect();
    let five = T::from_int(5);
    let m = vec![
        vec![T::one(), T::one(), T::one()],
        xs.iter().map(|v| five.clone() - v.clone()).collect(),
        vec![xs[1].clone() * xs[2].clone(), xs[0].clone() * xs[2].clone(), xs[0].clone() * xs[1].clone()],
    ];
    let sum = x.iter().fold(T::zero(), |a, v| a + v.clone());
    let rhs = vec![
        sum,
        T::from_int(3) * (x[0].clone() + x[4].clone()) + T::from_int(2) * (x[1].clone() + x[2].clone() + x[3].clone()),
        x[0].clone() + x[2].clone() + x[4].clone(),
    ];
    solve_linear(m, rhs)
}

fn displaced6<T: Scalar>(criterion: Criterion, row: &str, central_c_sq: T, pair_c_sq: T) -> Candidate<T> {
    let row: XpRow<T> = xp_row(row).expect("table row");
    let pair = ExactEllipse { center: row.p.clone(), half_focal: row.x.clone(), c_sq: pair_c_sq };
    let neg = pair.negated();
    Candidate {
        criterion,
        verdict: Verdict::DisplacedPair,
        ellipses: vec![ExactEllipse::centered(row.x0.clone(), central_c_sq), pair, neg],
        table_row: Some(row),
    }
}

fn candidates6<T: Scalar>(x: &[T], ck: &Checker) -> Vec<Candidate<T>> {
    let mut out = Vec::new();
    let eqs = printed_equations::<T>();
    let degrees = [2, 2, 3];
    if eqs.iter().zip(degrees).all(|(e, d): (&MPoly<T>, i32)| ck.zero(e.eval(x), d)) {
        if let Some(s) = concentric_axes6(x) {
            if s.iter().all(|v| ck.nonneg(v, 1)) {
                let ellipses =
                    (1..=3).zip(s).map(|(j, c_sq)| ExactEllipse::centered(T::two_cos_pi7(j), c_sq)).collect();
                out.push(Candidate::concentric(Criterion::ThreeConcentric, ellipses));
            }
        }
    }
    let t2 = T::two_cos_pi7(2);
    if !ck.zero(x[0].clone(), 1)
        && ck.zero(x[2].clone(), 1)
        && ck.eq(x[4].clone(), x[0].clone(), 1)
        && ck.eq(x[1].clone(), t2.clone() * x[0].clone(), 1)
        && ck.eq(x[3].clone(), t2 * x[0].clone(), 1)
    {
        out.push(displaced6(Criterion::De1, "vi", T::zero(), x[0].clone() + x[1].clone()));
    }
    for k in [KValue::Pi7, KValue::ThreePi7] {
        let kv: T = k.value();
        let km1 = (kv.clone() - T::one()).square();
        // de2 and its mirror image de3 differ by reversing xi
        for (criterion, a, b, c, d, e) in [
            (Criterion::De2 { k }, 0, 1, 2, 3, 4),
            (Criterion::De3 { k }, 4, 3, 2, 1, 0),
        ] {
            if !ck.zero(x[a].clone(), 1)
                && ck.zero(x[b].clone(), 1)
                && ck.eq(x[c].clone(), kv.clone() * x[a].clone(), 1)
                && ck.eq(x[e].clone(), kv.clone() * x[a].clone(), 1)
                && ck.eq(x[d].clone(), km1.clone() * x[a].clone(), 1)
            {
                out.push(displaced6(criterion, k.table_row(), kv.square() * x[a].clone(), x[a].clone()));
            }
        }
    }
    out
}

/// Whether the product of `factors` reproduces `poly` (successive monic division).
fn confirm<T: Scalar>(poly: &KippenhahnPolynomial<T>, factors: &[BiPoly<T>], tol: &Tolerance) -> bool {
    let scale = poly.poly().max_abs_coeff();
    let mut rest = poly.poly().clone();
    for f in factors {
        match divide_by(&rest, f, scale, tol) {
            Some(q) => rest = q,
            None => return false,
        }
    }
    rest.sub(&BiPoly::one()).is_negligible(scale, tol)
}

/// Decide whether `C(A)` splits into ellipses, for `n = xi.len() + 1` in 4..=6.
///
/// Every criterion that holds is confirmed by dividing the Kippenhahn
/// polynomial by the factors of the ellipses it predicts.
pub fn classify<T: Scalar>(xi: &[T], tol: &Tolerance) -> Result<Classification<T>> {
    let n = xi.len() + 1;
    if !(4..=6).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if let Some(j) = xi.iter().position(|v| v.to_f64() < 0.0) {
        return invalid(format!("xi_{} must be nonnegative", j + 1));
    }
    let ck = Checker { scale: max_abs(xi), tol };
    let mut result = Classification {
        n,
        xi: xi.to_vec(),
        verdict: Verdict::MixedNone,
        criterion: None,
        ellipses: Vec::new(),
        origin_component: n % 2 == 1,
        table_row: None,
        unconfirmed: Vec::new(),
    };
    if xi.iter().all(|v| ck.zero(v.clone(), 1)) {
        result.verdict = Verdict::DegenerateSpectrum;
        return Ok(result);
    }
    let candidates = match n {
        4 => candidates4(xi, &ck),
        5 => candidates5(xi, &ck),
        _ => candidates6(xi, &ck),
    };
    let poly = KippenhahnPolynomial::closed_form(xi)?;
    for cand in candidates {
        if result.criterion.is_none() && confirm(&poly, &cand.factors(), tol) {
            result.verdict = cand.verdict;
            result.criterion = Some(cand.criterion);
            result.ellipses = cand.ellipses;
            result.table_row = cand.table_row;
        } else if result.criterion.is_none() {
            result.unconfirmed.push(cand.criterion);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Algebraic;
    use approx::assert_abs_diff_eq;

    fn q(v: i64) -> Algebraic {
        Algebraic::from_int(v)
    }

    fn run(xi: &[f64]) -> Classification<f64> {
        classify(xi, &Tolerance::DOUBLE).unwrap()
    }

    #[test]
    fn golden_concentric() {
        let c = classify(&[q(1), q(1), q(1)], &Tolerance::DOUBLE).unwrap();
        assert_eq!(c.verdict, Verdict::AllConcentric);
        assert_eq!(c.criterion, Some(Criterion::Con4 { branch: Branch::Both }));
        let phi = Algebraic::golden();
        assert_eq!(c.ellipses[0].c_sq, phi.square());
        assert_eq!(c.ellipses[1].c_sq, (q(1) / phi).square());
        let f = run(&[1.0, 1.0, 1.0]).components();
        assert_abs_diff_eq!(f[0].minor_half_axis, (5f64.sqrt() + 1.0) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f[1].minor_half_axis, (5f64.sqrt() - 1.0) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn displaced_n4() {
        let c = run(&[1.0, 0.0, 1.0]);
        assert_eq!(c.verdict, Verdict::DisplacedPair);
        assert_eq!(c.criterion, Some(Criterion::Noncon4));
        let e = c.displaced().unwrap().component();
        assert_abs_diff_eq!(e.center, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e.half_focal, 5f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.minor_half_axis, 1.0, epsilon = 1e-15);
        let exact = classify(&[q(1), q(0), q(1)], &Tolerance::DOUBLE).unwrap();
        assert_eq!(exact.criterion, Some(Criterion::Noncon4));
        assert_eq!(exact.displaced().unwrap().half_focal.square(), Algebraic::from_ratio(5, 4));
    }

    #[test]
    fn perturbed_displaced_is_none() {
        let c = run(&[1.0, 0.0, 1.001]);
        assert_eq!(c.verdict, Verdict::MixedNone);
        assert!(c.unconfirmed.is_empty());
    }

    #[test]
    fn degenerate_and_errors() {
        assert_eq!(run(&[0.0; 5]).verdict, Verdict::DegenerateSpectrum);
        assert_eq!(classify(&[1.0, 2.0], &Tolerance::DOUBLE).unwrap_err(), Error::UnsupportedDimension(3));
        assert!(matches!(classify(&[1.0, -2.0, 1.0], &Tolerance::DOUBLE), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn figure_two_parameters() {
        let s3 = 3f64.sqrt();
        let c = run(&[1.0 + s3 / 2.0, 0.0, 1.0, s3 / 2.0]);
        assert_eq!(c.criterion, Some(Criterion::Noncon5));
        assert!(c.origin_component);
        let e = c.displaced().unwrap().component();
        assert_abs_diff_eq!(2.0 * e.minor_half_axis, 1.0 + s3, epsilon = 1e-12);
        assert_abs_diff_eq!(e.foci.0, s3, epsilon = 1e-14);
        assert_abs_diff_eq!(e.foci.1, -1.0, epsilon = 1e-14);

        let half = Algebraic::from_ratio(1, 2);
        let xi = [q(1) + Algebraic::sqrt3() * half.clone(), q(0), q(1), Algebraic::sqrt3() * half];
        assert_eq!(classify(&xi, &Tolerance::DOUBLE).unwrap().criterion, Some(Criterion::Noncon5));
    }

    #[test]
    fn drop_shape_is_not_elliptical() {
        let c = run(&[0.5, 0.0, 0.5, 0.0]);
        assert_eq!(c.verdict, Verdict::MixedNone);
    }

    #[test]
    fn con5_branches() {
        let c = run(&[1.0, 2.0, 0.5, 1.0]);
        assert_eq!(c.criterion, Some(Criterion::Con5 { branch: Branch::First }));
        let c = run(&[3.0, 1.0, 1.5, 2.0]);
        assert_eq!(c.criterion, Some(Criterion::Con5 { branch: Branch::Second }));
        let comps = c.components();
        assert_abs_diff_eq!(comps[1].minor_half_axis, 2.5f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(comps[0].minor_half_axis, 5f64.sqrt(), epsilon = 1e-12);
    }

    fn de_exact(k: KValue, mirrored: bool) -> Vec<Algebraic> {
        let kv: Algebraic = k.value();
        let mut xi = vec![q(1), q(0), kv.clone(), (kv.clone() - q(1)).square(), kv];
        if mirrored {
            xi.reverse();
        }
        xi
    }

    #[test]
    fn displaced_families_n6_exact() {
        let t2 = Algebraic::two_cos_pi7(2);
        let de1 = [q(1), t2.clone(), q(0), t2, q(1)];
        let c = classify(&de1, &Tolerance::DOUBLE).unwrap();
        assert_eq!(c.criterion, Some(Criterion::De1));
        assert_eq!(c.table_row.as_ref().unwrap().label, "vi");
        assert!(c.central().unwrap().c_sq.is_zero());
        for k in [KValue::Pi7, KValue::ThreePi7] {
            for mirrored in [false, true] {
                let c = classify(&de_exact(k, mirrored), &Tolerance::DOUBLE).unwrap();
                let expect = if mirrored { Criterion::De3 { k } } else { Criterion::De2 { k } };
                assert_eq!(c.criterion, Some(expect));
                assert_eq!(c.table_row.as_ref().unwrap().label, k.table_row());
                let kv: Algebraic = k.value();
                assert_eq!(c.central().unwrap().c_sq, kv.square());
                assert_eq!(c.displaced().unwrap().c_sq, q(1));
            }
        }
    }

    #[test]
    fn printed_figure_values_need_loose_tolerance() {
        let loose = Tolerance::with_rel(1e-5);
        let fig3 = [0.801938, 1.0, 0.0, 1.0, 0.801938];
        let c = classify(&fig3, &loose).unwrap();
        assert_eq!(c.criterion, Some(Criterion::De1));
        let fig4 = [1.44504, 1.0, 1.44504, 0.0, 3.24698];
        let c = classify(&fig4, &loose).unwrap();
        assert_eq!(c.criterion, Some(Criterion::De3 { k: KValue::ThreePi7 }));
        let fig5 = [2.80194, 1.0, 2.80194, 0.0, 1.55496];
        let c = classify(&fig5, &loose).unwrap();
        assert_eq!(c.criterion, Some(Criterion::De3 { k: KValue::Pi7 }));
        // the central ellipse is outermost
        let central = c.central().unwrap().component();
        let pair = c.displaced().unwrap().component();
        assert!(central.minor_half_axis > pair.minor_half_axis);
        assert!(central.major_half_axis() > pair.major_half_axis() + pair.center);
        assert_eq!(classify(&fig4, &Tolerance::DOUBLE).unwrap().verdict, Verdict::MixedNone);
    }

    #[test]
    fn three_concentric_all_ones() {
        let c = classify(&vec![q(1); 5], &Tolerance::DOUBLE).unwrap();
        assert_eq!(c.criterion, Some(Criterion::ThreeConcentric));
        let axes: Vec<f64> = c.components().iter().map(|e| e.minor_half_axis).collect();
        assert!(axes[0] >= axes[1] && axes[1] >= axes[2], "{axes:?}");
    }

    #[test]
    fn mirrored_criteria() {
        assert_eq!(Criterion::De2 { k: KValue::Pi7 }.mirrored(), Criterion::De3 { k: KValue::Pi7 });
        assert_eq!(
            Criterion::Con4 { branch: Branch::First }.mirrored(),
            Criterion::Con4 { branch: Branch::Second }
        );
    }

    #[test]
    fn report_serializes() {
        let r = run(&[1.0, 0.0, 1.0]).report();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "DISPLACED_PAIR");
        assert_eq!(json["criterion"], "noncon4");
        assert_eq!(json["ellipses"].as_array().unwrap().len(), 2);
        assert!(json["ellipses"][0]["X"].is_number());
    }
}

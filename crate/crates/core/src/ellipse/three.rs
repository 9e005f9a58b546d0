//! Three concentric ellipses for `n = 6`: the defining equations as printed,
//! their symbolic reconstruction, and numeric instances.

use serde::Serialize;

use crate::algebraic::Algebraic;
use crate::ellipse::classify::concentric_axes6;
use crate::ellipse::mpoly::{monomial_name, Exponents, MPoly};
use crate::scalar::{solve_linear, Scalar};

const EQ1: &[(i64, Exponents)] = &[
    (2, [2, 0, 0, 0, 0]),
    (4, [1, 1, 0, 0, 0]),
    (-2, [1, 0, 1, 0, 0]),
    (-3, [1, 0, 0, 1, 0]),
    (-3, [1, 0, 0, 0, 1]),
    (1, [0, 2, 0, 0, 0]),
    (1, [0, 0, 0, 2, 0]),
    (2, [0, 0, 0, 0, 2]),
    (2, [0, 1, 1, 0, 0]),
    (-5, [0, 1, 0, 1, 0]),
    (2, [0, 0, 1, 1, 0]),
    (-3, [0, 1, 0, 0, 1]),
    (-2, [0, 0, 1, 0, 1]),
    (4, [0, 0, 0, 1, 1]),
];

const EQ2: &[(i64, Exponents)] = &[
    (2, [2, 0, 0, 0, 0]),
    (1, [1, 1, 0, 0, 0]),
    (-3, [1, 0, 1, 0, 0]),
    (1, [1, 0, 0, 1, 0]),
    (-3, [1, 0, 0, 0, 1]),
    (-1, [0, 2, 0, 0, 0]),
    (1, [0, 0, 2, 0, 0]),
    (-1, [0, 0, 0, 2, 0]),
    (2, [0, 0, 0, 0, 2]),
    (2, [0, 1, 1, 0, 0]),
    (-2, [0, 1, 0, 1, 0]),
    (2, [0, 0, 1, 1, 0]),
    (1, [0, 1, 0, 0, 1]),
    (-3, [0, 0, 1, 0, 1]),
    (1, [0, 0, 0, 1, 1]),
];

/// Exponents of the `xi_1 xi_3 xi_5` term.
pub const AUDITED_MONOMIAL: Exponents = [1, 0, 1, 0, 1];
/// Printed coefficient of `xi_1 xi_3 xi_5` in the cubic equation.
pub const PRINTED_COEFFICIENT: i64 = -41;

const EQ3: &[(i64, Exponents)] = &[
    (1, [3, 0, 0, 0, 0]),
    (2, [2, 1, 0, 0, 0]),
    (4, [2, 0, 1, 0, 0]),
    (2, [2, 0, 0, 1, 0]),
    (3, [2, 0, 0, 0, 1]),
    (-1, [1, 2, 0, 0, 0]),
    (3, [1, 0, 2, 0, 0]),
    (-1, [1, 0, 0, 2, 0]),
    (3, [1, 0, 0, 0, 2]),
    (3, [1, 1, 1, 0, 0]),
    (-2, [1, 1, 0, 1, 0]),
    (3, [1, 0, 1, 1, 0]),
    (4, [1, 1, 0, 0, 1]),
    (PRINTED_COEFFICIENT, AUDITED_MONOMIAL),
    (4, [1, 0, 0, 1, 1]),
    (-1, [0, 3, 0, 0, 0]),
    (-1, [0, 0, 3, 0, 0]),
    (-1, [0, 0, 0, 3, 0]),
    (1, [0, 0, 0, 0, 3]),
    (2, [0, 1, 2, 0, 0]),
    (-3, [0, 1, 0, 2, 0]),
    (1, [0, 0, 1, 2, 0]),
    (2, [0, 1, 0, 0, 2]),
    (4, [0, 0, 1, 0, 2]),
    (2, [0, 0, 0, 1, 2]),
    (1, [0, 2, 1, 0, 0]),
    (-3, [0, 2, 0, 1, 0]),
    (2, [0, 0, 2, 1, 0]),
    (2, [0, 1, 1, 1, 0]),
    (-1, [0, 2, 0, 0, 1]),
    (3, [0, 0, 2, 0, 1]),
    (-1, [0, 0, 0, 2, 1]),
    (3, [0, 1, 1, 0, 1]),
    (-2, [0, 1, 0, 1, 1]),
    (3, [0, 0, 1, 1, 1]),
];

/// The three equations in the printed form.
pub fn printed_equations<T: Scalar>() -> [MPoly<T>; 3] {
    [MPoly::from_terms(EQ1), MPoly::from_terms(EQ2), MPoly::from_terms(EQ3)]
}

/// The conditions rederived from the factorization
/// `P_6 = prod_j (zeta - (X_j^2 rho + s_j))`, `X_j = 2cos(j pi/7)`.
///
/// Three of the nine coefficient identities hold for all `xi`, three are
/// linear in `s` and fix it; the remaining three are returned: the `zeta rho^0`,
/// `zeta^0 rho` and `zeta^0 rho^0` coefficients, of degrees 2, 2, 3 in `xi`.
pub fn reconstructed_conditions() -> [MPoly<Algebraic>; 3] {
    let xs: Vec<Algebraic> = (1..=3).map(|j| Algebraic::two_cos_pi7(j).square()).collect();
    let five = Algebraic::from_int(5);
    let m = vec![
        vec![Algebraic::one(), Algebraic::one(), Algebraic::one()],
        xs.iter().map(|v| five.clone() - v.clone()).collect::<Vec<_>>(),
        vec![xs[1].clone() * xs[2].clone(), xs[0].clone() * xs[2].clone(), xs[0].clone() * xs[1].clone()],
    ];
    // right-hand sides as coefficients of xi_1..xi_5
    let rhs_rows: [[i64; 5]; 3] = [[1, 1, 1, 1, 1], [3, 2, 2, 2, 3], [1, 0, 1, 0, 1]];
    let mut s: Vec<MPoly<Algebraic>> = vec![MPoly::zero(); 3];
    for i in 0..5 {
        let rhs: Vec<Algebraic> = rhs_rows.iter().map(|r| Algebraic::from_int(r[i])).collect();
        let col = solve_linear(m.clone(), rhs).expect("foci are distinct");
        for (sj, c) in s.iter_mut().zip(col) {
            *sj = sj.add(&MPoly::var(i).scale(&c));
        }
    }
    let xi = |i: usize| MPoly::<Algebraic>::var(i);
    let mut nonadjacent = MPoly::zero();
    for i in 0..5 {
        for j in i + 2..5 {
            nonadjacent = nonadjacent.add(&xi(i).mul(&xi(j)));
        }
    }
    let e2 = s[0].mul(&s[1]).add(&s[0].mul(&s[2])).add(&s[1].mul(&s[2]));
    let cyc = s[0]
        .mul(&s[1])
        .scale(&xs[2])
        .add(&s[0].mul(&s[2]).scale(&xs[1]))
        .add(&s[1].mul(&s[2]).scale(&xs[0]));
    let odd_pairs = xi(0).mul(&xi(2)).add(&xi(0).mul(&xi(4))).add(&xi(2).mul(&xi(4)));
    let odd_triple = xi(0).mul(&xi(2)).mul(&xi(4));
    [e2.sub(&nonadjacent), cyc.sub(&odd_pairs), s[0].mul(&s[1]).mul(&s[2]).sub(&odd_triple)]
}

/// A term where the printed and reconstructed equations differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermMismatch {
    pub equation: usize,
    pub monomial: String,
    pub printed: String,
    pub reconstructed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub monomial: String,
    pub printed_coefficient: i64,
    /// Coefficient after scaling the reconstruction to the printed normalization.
    pub reconstructed_coefficient: String,
    pub confirmed: bool,
    /// Every differing term across the three equations.
    pub mismatches: Vec<TermMismatch>,
    /// `(multiplier_a, multiplier_b)` expressing each printed quadratic
    /// equation in the two reconstructed quadratic conditions, and the scale
    /// of the cubic one.
    pub combinations: Vec<String>,
}

/// Write `target` as a combination of `basis` using a few monomials, then
/// check the combination on every term. Returns the coefficients.
fn express(target: &MPoly<Algebraic>, basis: &[&MPoly<Algebraic>]) -> Option<Vec<Algebraic>> {
    let monomials: Vec<Exponents> = target.terms().map(|(e, _)| *e).collect();
    let k = basis.len();
    // pick monomials giving an invertible system
    for start in 0..monomials.len() {
        let chosen: Vec<Exponents> = monomials.iter().cycle().skip(start).step_by(3).take(k).copied().collect();
        let m: Vec<Vec<Algebraic>> = chosen.iter().map(|e| basis.iter().map(|b| b.coeff(e)).collect()).collect();
        let rhs: Vec<Algebraic> = chosen.iter().map(|e| target.coeff(e)).collect();
        if let Some(coef) = solve_linear(m, rhs) {
            return Some(coef);
        }
    }
    None
}

/// Rebuild the three equations and compare them with the printed ones, in
/// particular the coefficient of `xi_1 xi_3 xi_5`.
pub fn audit_three_concentric() -> AuditReport {
    let printed = printed_equations::<Algebraic>();
    let [q1, q2, cubic] = reconstructed_conditions();
    let mut normalized = Vec::new();
    let mut combinations = Vec::new();
    for target in &printed[..2] {
        let fit = express(target, &[&q1, &q2]).unwrap_or_else(|| vec![Algebraic::zero(), Algebraic::zero()]);
        combinations.push(format!("{} * Q1 + {} * Q2", fit[0], fit[1]));
        normalized.push(q1.scale(&fit[0]).add(&q2.scale(&fit[1])));
    }
    let lead: Exponents = [3, 0, 0, 0, 0];
    let factor = printed[2].coeff(&lead) / cubic.coeff(&lead);
    combinations.push(format!("{factor} * C"));
    let cubic = cubic.scale(&factor);
    normalized.push(cubic.clone());

    let mut mismatches = Vec::new();
    for (eq, (p, r)) in printed.iter().zip(&normalized).enumerate() {
        let mut monomials: Vec<Exponents> = p.terms().chain(r.terms()).map(|(e, _)| *e).collect();
        monomials.sort();
        monomials.dedup();
        for e in monomials {
            let (a, b) = (p.coeff(&e), r.coeff(&e));
            if a != b {
                mismatches.push(TermMismatch {
                    equation: eq + 1,
                    monomial: monomial_name(&e),
                    printed: a.to_string(),
                    reconstructed: b.to_string(),
                });
            }
        }
    }
    let reconstructed = cubic.coeff(&AUDITED_MONOMIAL);
    AuditReport {
        monomial: monomial_name(&AUDITED_MONOMIAL),
        printed_coefficient: PRINTED_COEFFICIENT,
        confirmed: reconstructed == Algebraic::from_int(PRINTED_COEFFICIENT),
        reconstructed_coefficient: reconstructed.to_string(),
        mismatches,
        combinations,
    }
}

/// Find `xi = (1, xi_2, xi_3, xi_4, xi_5)` on the three equations by Newton
/// iteration in `(xi_2, xi_3, xi_4)`, over a grid of starting points.
/// Only solutions with nonnegative `xi` and squared axes are returned.
pub fn find_instance(xi5: f64) -> Option<[f64; 5]> {
    let eqs = printed_equations::<f64>();
    let jac: Vec<Vec<MPoly<f64>>> = eqs.iter().map(|e| (1..4).map(|i| e.derivative(i)).collect()).collect();
    let starts = [0.1, 0.6, 1.2, 2.0];
    for &a in &starts {
        for &b in &starts {
            for &c in &starts {
                let mut x = [1.0, a, b, c, xi5];
                for _ in 0..60 {
                    let f: Vec<f64> = eqs.iter().map(|e| e.eval(&x)).collect();
                    if f.iter().all(|v| v.abs() < 1e-15) {
                        break;
                    }
                    let m: Vec<Vec<f64>> = jac.iter().map(|row| row.iter().map(|d| d.eval(&x)).collect()).collect();
                    let Some(step) = solve_linear(m, f.iter().map(|v| -v).collect()) else { break };
                    for (i, s) in step.iter().enumerate() {
                        x[i + 1] += s;
                    }
                    if x.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
                        break;
                    }
                }
                let residual = eqs.iter().map(|e| e.eval(&x).abs()).fold(0.0, f64::max);
                let axes_ok = concentric_axes6(&x).is_some_and(|s| s.iter().all(|v| *v >= 0.0));
                if residual < 1e-12 && x.iter().all(|v| *v >= 0.0) && axes_ok {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_satisfies_printed_equations() {
        let one = vec![Algebraic::one(); 5];
        for e in printed_equations::<Algebraic>() {
            assert!(e.eval(&one).is_zero());
        }
    }

    #[test]
    fn reconstruction_matches_print() {
        let report = audit_three_concentric();
        assert!(report.confirmed, "{report:?}");
        assert_eq!(report.reconstructed_coefficient, "-41");
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }

    #[test]
    fn newton_finds_instances() {
        let x = find_instance(1.5).unwrap();
        let eqs = printed_equations::<f64>();
        for e in &eqs {
            assert!(e.eval(&x).abs() < 1e-12);
        }
    }
}

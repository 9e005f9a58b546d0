use serde::Serialize;

use crate::scalar::Scalar;

/// Row labels of the six positive solutions.
pub const ROW_LABELS: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];

/// One positive solution `(X0, X, p)` of
/// `X0^2 (X^2-p^2)^2 = 1`, `(X^2-p^2)^2 + 2 X0^2 (X^2+p^2) = 6`, `X0^2 + 2(X^2+p^2) = 5`.
///
/// `X0` is the half focal distance of the central ellipse, `X` and `p`
/// those of the displaced pair and its center.
#[derive(Debug, Clone, PartialEq)]
pub struct XpRow<T> {
    pub label: &'static str,
    pub x0: T,
    pub x: T,
    pub p: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XpRowValues {
    pub label: &'static str,
    #[serde(rename = "X0")]
    pub x0: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub p: f64,
}

impl<T: Scalar> XpRow<T> {
    pub fn values(&self) -> XpRowValues {
        XpRowValues { label: self.label, x0: self.x0.to_f64(), x: self.x.to_f64(), p: self.p.to_f64() }
    }

    /// Residuals of the three defining equations.
    pub fn residuals(&self) -> [T; 3] {
        let x0 = self.x0.square();
        let plus = self.x.square() + self.p.square();
        let minus = self.x.square() - self.p.square();
        [
            x0.clone() * minus.square() - T::one(),
            minus.square() + T::from_int(2) * x0.clone() * plus.clone() - T::from_int(6),
            x0 + T::from_int(2) * plus - T::from_int(5),
        ]
    }
}

/// The six rows, built from `t_j = 2cos(j pi/7)`: the central ellipse takes
/// `X0 = t_a` and the pair takes `X, p = (t_b +- t_c)/2` for `{a, b, c} = {1, 2, 3}`.
pub fn xp_table<T: Scalar>() -> [XpRow<T>; 6] {
    let t = |j| T::two_cos_pi7(j);
    let half = T::from_ratio(1, 2);
    let row = |label, a, b, c, swap: bool| {
        let plus = (t(b) + t(c)) * half.clone();
        let minus = (t(b) - t(c)) * half.clone();
        let (x, p) = if swap { (plus, minus) } else { (minus, plus) };
        XpRow { label, x0: t(a), x, p }
    };
    [
        row(ROW_LABELS[0], 1, 2, 3, false),
        row(ROW_LABELS[1], 1, 2, 3, true),
        row(ROW_LABELS[2], 2, 1, 3, false),
        row(ROW_LABELS[3], 2, 1, 3, true),
        row(ROW_LABELS[4], 3, 1, 2, false),
        row(ROW_LABELS[5], 3, 1, 2, true),
    ]
}

pub fn xp_row<T: Scalar>(label: &str) -> Option<XpRow<T>> {
    xp_table().into_iter().find(|r| r.label == label)
}

/// All positive solutions of the system, found independently of the table.
///
/// With `u = X0^2`, `v = X^2+p^2`, `w = X^2-p^2` the system reduces to
/// `v = (5-u)/2`, `w^2 = u^2-5u+6` and `u^3 - 5u^2 + 6u - 1 = 0`.
pub fn solve_xp_system() -> Vec<(f64, f64, f64)> {
    // three real roots, trigonometric form
    let (a, b, c) = (-5.0f64, 6.0f64, -1.0f64);
    let q = (a * a - 3.0 * b) / 9.0;
    let r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    let angle = (r / q.powf(1.5)).clamp(-1.0, 1.0).acos();
    let mut out = Vec::new();
    for k in 0..3 {
        let u = -2.0 * q.sqrt() * ((angle + std::f64::consts::TAU * k as f64) / 3.0).cos() - a / 3.0;
        let v = (5.0 - u) / 2.0;
        let w_abs = (u * u - 5.0 * u + 6.0).max(0.0).sqrt();
        for w in [w_abs, -w_abs] {
            let (x_sq, p_sq) = ((v + w) / 2.0, (v - w) / 2.0);
            if u > 0.0 && x_sq > 0.0 && p_sq > 0.0 {
                out.push((u.sqrt(), x_sq.sqrt(), p_sq.sqrt()));
            }
        }
    }
    out.sort_by(|l, r| r.0.total_cmp(&l.0).then(l.1.total_cmp(&r.1)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Algebraic;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn rows_satisfy_system_exactly() {
        for row in xp_table::<Algebraic>() {
            for r in row.residuals() {
                assert!(r.is_zero(), "row {}", row.label);
            }
        }
        for row in xp_table::<f64>() {
            for r in row.residuals() {
                assert!(r.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn row_vi() {
        let row = xp_row::<f64>("vi").unwrap();
        assert_abs_diff_eq!(row.x0, 2.0 * (3.0 * PI / 7.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(row.x, (PI / 7.0).cos() + (2.0 * PI / 7.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(row.p, (PI / 7.0).cos() - (2.0 * PI / 7.0).cos(), epsilon = 1e-15);
    }

    #[test]
    fn independent_solve_reproduces_table() {
        let solved = solve_xp_system();
        assert_eq!(solved.len(), 6);
        for (s, row) in solved.iter().zip(xp_table::<f64>()) {
            assert_abs_diff_eq!(s.0, row.x0, epsilon = 1e-12);
            assert_abs_diff_eq!(s.1, row.x, epsilon = 1e-12);
            assert_abs_diff_eq!(s.2, row.p, epsilon = 1e-12);
        }
    }
}

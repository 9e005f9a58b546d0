use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kippenhahn::KippenhahnPolynomial;
use crate::matrix::{ReciprocalMatrix, XiParameters};
use crate::scalar::{approx_eq, is_nonzero, max_abs, Tolerance};

/// A horizontal line `Im z = ordinate` touching `C(A)` at several points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentLineEvent {
    /// Normal direction of the line; always `pi / 2`.
    pub theta: f64,
    pub ordinate: f64,
    /// Multiplicity of `ordinate` as an eigenvalue of `Im A`.
    pub multiplicity: usize,
    /// Diagonal blocks of `Im A` (1-based inclusive row ranges) whose spectra
    /// contain the ordinate. The blocks come from the vanishing `xi_k`.
    pub shared_blocks: Vec<(usize, usize)>,
}

/// Spectrum of the symmetric tridiagonal matrix with off-diagonal `offdiag`.
fn tridiagonal_spectrum(offdiag: &[f64]) -> Vec<f64> {
    let n = offdiag.len() + 1;
    let m = DMatrix::from_fn(n, n, |r, c| if r + 1 == c { offdiag[r] } else if c + 1 == r { offdiag[c] } else { 0.0 });
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// `offdiag` holds the moduli `sqrt(xi_j)` of the off-diagonal of `Im A`.
fn blocks_containing(offdiag: &[f64], ordinate: f64, eps: f64, zero: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for end in 0..=offdiag.len() {
        if end == offdiag.len() || offdiag[end] <= zero {
            let spectrum = tridiagonal_spectrum(&offdiag[start..end]);
            if spectrum.iter().any(|v| (v - ordinate).abs() <= eps) {
                out.push((start + 1, end + 1));
            }
            start = end + 1;
        }
    }
    out
}

fn finish(mut events: Vec<TangentLineEvent>, offdiag: &[f64], eps: f64, zero: f64) -> Vec<TangentLineEvent> {
    events.sort_by(|a, b| b.ordinate.total_cmp(&a.ordinate));
    let mut merged: Vec<TangentLineEvent> = Vec::new();
    for e in events {
        match merged.last_mut() {
            Some(last) if (last.ordinate - e.ordinate).abs() <= eps => {
                last.multiplicity = last.multiplicity.max(e.multiplicity);
            }
            _ => merged.push(e),
        }
    }
    for e in &mut merged {
        e.shared_blocks = blocks_containing(offdiag, e.ordinate, eps, zero);
    }
    merged
}

fn event(ordinate: f64, multiplicity: usize) -> TangentLineEvent {
    TangentLineEvent { theta: FRAC_PI_2, ordinate, multiplicity, shared_blocks: Vec::new() }
}

fn pair(value_sq: f64, multiplicity: usize) -> [TangentLineEvent; 2] {
    let v = value_sq.max(0.0).sqrt();
    [event(v, multiplicity), event(-v, multiplicity)]
}

/// Multiple horizontal tangents from the closed-form conditions, `n` in 4..=6.
///
/// Nonzero ordinates follow the case analysis for each dimension. The zero
/// ordinate is read off the vanishing low-order coefficients of the
/// polynomial at `rho = 0`.
pub fn detect_multiple_tangents(xi: &XiParameters, tol: &Tolerance) -> Result<Vec<TangentLineEvent>> {
    let x = xi.values();
    let n = xi.dim();
    if !(4..=6).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let scale = max_abs(x);
    let eq1 = |a: f64, b: f64| approx_eq(&a, &b, 1, scale, tol);
    let eq2 = |a: f64, b: f64| approx_eq(&a, &b, 2, scale, tol);
    let zero = |a: f64| !is_nonzero(&a, 1, scale, tol);
    let zero2 = |a: f64| !is_nonzero(&a, 2, scale, tol);
    let mut events = Vec::new();

    let poly = KippenhahnPolynomial::closed_form(x)?;
    let vanishing = (0..=n / 2)
        .take_while(|&j| {
            let c = poly.coeff(j).first().copied().unwrap_or(0.0);
            !is_nonzero(&c, (n / 2 - j) as i32, scale, tol)
        })
        .count();
    let zero_mult = 2 * vanishing + n % 2;
    if zero_mult >= 2 {
        events.push(event(0.0, zero_mult));
    }

    match n {
        4 => {
            if zero(x[1]) && eq1(x[0], x[2]) && !zero(x[0]) {
                events.extend(pair(x[0], 2));
            }
        }
        5 => {
            let (u, v) = (x[0] + x[1], x[2] + x[3]);
            if eq1(u, v) && !zero(u) && zero2(x[1] * x[2]) {
                events.extend(pair(u, 2));
            }
        }
        _ => {
            if zero(x[1]) && zero(x[3]) {
                for &a in &[x[0], x[2], x[4]] {
                    let count = [x[0], x[2], x[4]].iter().filter(|&&b| eq1(a, b)).count();
                    if count >= 2 && !zero(a) {
                        events.extend(pair(a, count));
                    }
                }
            }
            if zero(x[1]) && !zero(x[0]) && eq2(x[0] * x[3], (x[0] - x[4]) * (x[0] - x[2])) {
                events.extend(pair(x[0], 2));
            }
            if zero(x[3]) && !zero(x[4]) && eq2(x[1] * x[4], (x[0] - x[4]) * (x[2] - x[4])) {
                events.extend(pair(x[4], 2));
            }
        }
    }
    let offdiag: Vec<f64> = x.iter().map(|v| v.sqrt()).collect();
    let (eps, zero_root) = ordinate_tolerances(scale, tol);
    Ok(finish(events, &offdiag, eps, zero_root))
}

/// Ordinate comparison radius and the threshold for a vanishing off-diagonal.
fn ordinate_tolerances(xi_scale: f64, tol: &Tolerance) -> (f64, f64) {
    let root = xi_scale.sqrt();
    (tol.bound(root), tol.bound(root))
}

/// Multiple horizontal tangents found numerically as repeated eigenvalues of `Im A`.
pub fn scan_multiple_tangents(matrix: &ReciprocalMatrix, tol: &Tolerance) -> Vec<TangentLineEvent> {
    let im = matrix.imaginary_part();
    let offdiag: Vec<f64> = im.offdiag().iter().map(|b| b.norm()).collect();
    let values = im.eigenvalues();
    let scale = offdiag.iter().fold(0.0f64, |a, v| a.max(v * v));
    let (eps, zero_root) = ordinate_tolerances(scale, tol);
    let mut events = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= eps {
            end += 1;
        }
        if end - start >= 2 {
            let mean = values[start..end].iter().sum::<f64>() / (end - start) as f64;
            events.push(event(if mean.abs() <= eps { 0.0 } else { mean }, end - start));
        }
        start = end;
    }
    finish(events, &offdiag, eps, zero_root)
}

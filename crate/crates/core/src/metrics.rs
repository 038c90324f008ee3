//! Recovery quality: fidelity, the small-noise quadratic law, and the
//! full-noise statistical plateau.

use crate::error::{Error, Result};

/// `|Σ a_n b_n| / √(Σ a_n² Σ b_n²)`.
pub fn fidelity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::argument(format!(
            "fidelity of sequences with lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    if aa == 0.0 || bb == 0.0 {
        return Err(Error::Degenerate("fidelity with a zero-norm signal".into()));
    }
    Ok(ab.abs() / (aa * bb).sqrt())
}

/// `√(n_i / 2^{n_f})`: overlap of an `n_i`-line spectrum with a fully scrambled frame.
pub fn residual_estimate(n_i: f64, n_f: usize) -> f64 {
    (n_i / (1u64 << n_f) as f64).sqrt()
}

/// Largest noise amplitude admitted to the quadratic fit.
pub const QUADRATIC_FIT_MAX_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    /// `c` in `1 - f̃ = floor + c ε² n_f²`.
    pub coefficient: f64,
    /// RMS misfit of the quadratic model over the fitted points.
    pub residual: f64,
    /// `p` in `1 - f̃ - floor = a ε^p`, least squares in linear space.
    pub exponent: f64,
    /// Mean `1 - f̃` of the `ε = 0` rows (pure sampling error), 0 when absent.
    pub floor: f64,
    pub points: usize,
}

/// Fits `1 - f̃ = c ε² n_f²` on points with `0 < ε ≤ 0.1`.
///
/// Rows at `ε = 0` are excluded from the fit but, when present, their mean
/// infidelity is subtracted from every fitted row as the measurement floor.
pub fn fit_quadratic(points: &[(f64, f64)], n_f: usize) -> Result<QuadraticFit> {
    let zero: Vec<f64> = points
        .iter()
        .filter(|(e, _)| *e == 0.0)
        .map(|(_, f)| 1.0 - f)
        .collect();
    let floor = if zero.is_empty() {
        0.0
    } else {
        zero.iter().sum::<f64>() / zero.len() as f64
    };
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, _)| *e > 0.0 && *e <= QUADRATIC_FIT_MAX_EPSILON)
        .map(|&(e, f)| (e, 1.0 - f - floor))
        .collect();
    if used.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points with 0 < ε <= {QUADRATIC_FIT_MAX_EPSILON}, got {}",
            used.len()
        )));
    }
    let first = used[0].0;
    if used.iter().all(|(e, _)| *e == first) {
        return Err(Error::Fit("all noise amplitudes are equal".into()));
    }
    let nf2 = (n_f * n_f) as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(e, y) in &used {
        let x = e * e * nf2;
        sxy += x * y;
        sxx += x * x;
    }
    let coefficient = sxy / sxx;
    let residual = (used
        .iter()
        .map(|&(e, y)| (y - coefficient * e * e * nf2).powi(2))
        .sum::<f64>()
        / used.len() as f64)
        .sqrt();
    Ok(QuadraticFit {
        coefficient,
        residual,
        exponent: fit_exponent(&used),
        floor,
        points: used.len(),
    })
}

/// Power `p` minimising `Σ (y - a ε^p)²` with `a` profiled out in closed form.
fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let cost = |p: f64| {
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for &(e, y) in points {
            let x = e.powf(p);
            sxy += x * y;
            sxx += x * x;
        }
        let a = sxy / sxx;
        points.iter().map(|&(e, y)| (y - a * e.powf(p)).powi(2)).sum::<f64>()
    };
    // coarse scan, then golden-section refinement around the best bracket
    let (lo, hi, steps) = (0.25, 6.0, 230);
    let h = (hi - lo) / steps as f64;
    let best = (0..=steps)
        .map(|i| lo + i as f64 * h)
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .unwrap();
    let (mut a, mut b) = ((best - h).max(lo), (best + h).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if cost(c) < cost(d) {
            b = d;
        } else {
            a = c;
        }
    }
    (a + b) / 2.0
}

/// Mean and standard error.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

//! Weighted log-log fits of query counts and move counts against `n`.

use crate::error::{Error, Result};

/// Least-squares line through `(ln n, ln q)` with weights `ln n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// `ln q − (slope · ln n + intercept)` per input point.
    pub residuals: Vec<f64>,
}

pub fn weighted_loglog_fit(ns: &[f64], qs: &[f64]) -> Result<LogLogFit> {
    if ns.len() != qs.len() {
        return Err(Error::domain("weighted_loglog_fit", "length mismatch"));
    }
    let mut distinct: Vec<f64> = ns.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::DegenerateGrid(distinct.len()));
    }
    if let Some(&bad) = ns.iter().find(|&&n| !(n > 1.0 && n.is_finite())) {
        return Err(Error::domain(
            "weighted_loglog_fit",
            format!("n = {bad} must exceed 1"),
        ));
    }
    if let Some(&bad) = qs.iter().find(|&&q| !(q > 0.0 && q.is_finite())) {
        return Err(Error::domain(
            "weighted_loglog_fit",
            format!("value {bad} is not positive"),
        ));
    }
    let x: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let y: Vec<f64> = qs.iter().map(|q| q.ln()).collect();
    let w = &x;
    let sw: f64 = w.iter().sum();
    let mx = dot(w, &x) / sw;
    let my = dot(w, &y) / sw;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for i in 0..x.len() {
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| yi - (slope * xi + intercept))
        .collect();
    Ok(LogLogFit {
        slope,
        intercept,
        residuals,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// Mean and sample standard deviation (0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / k;
    if values.len() == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let ns = [1e3, 3e3, 1e4, 3e4];
        let qs: Vec<f64> = ns.iter().map(|n: &f64| 7.0 * n.powf(1.5)).collect();
        let fit = weighted_loglog_fit(&ns, &qs).unwrap();
        assert!((fit.slope - 1.5).abs() < 1e-9);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-9);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-9));
    }

    #[test]
    fn two_points_are_degenerate() {
        assert!(matches!(
            weighted_loglog_fit(&[10.0, 10.0, 20.0], &[1.0, 2.0, 3.0]),
            Err(Error::DegenerateGrid(2))
        ));
    }

    #[test]
    fn sample_std() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}

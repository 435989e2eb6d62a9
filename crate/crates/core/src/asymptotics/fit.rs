use serde::{Deserialize, Serialize};

use super::path::PathKind;
use super::sweep::{Construction, SweepRow};
use crate::error::{Error, Result};

pub const MIN_FIT_SAMPLES: usize = 8;

/// Least-squares line through the tail half of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// Range of the residuals over the fitted samples.
    pub window_width: f64,
}

/// Fits `ys ≈ slope xs + intercept` on the last half of the samples.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("xs and ys differ in length".into()));
    }
    if xs.len() < MIN_FIT_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_FIT_SAMPLES} samples, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite sample".into()));
    }
    let increasing = xs.windows(2).all(|w| w[1] > w[0]);
    let decreasing = xs.windows(2).all(|w| w[1] < w[0]);
    if !increasing && !decreasing {
        return Err(Error::InvalidArgument("xs must be strictly monotone".into()));
    }
    let start = xs.len() / 2;
    let (x, y) = (&xs[start..], &ys[start..]);
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if !(sxx > 1e-300) {
        return Err(Error::Degenerate("xs have no variance".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let resid: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - (slope * a + intercept)).collect();
    let ss_res: f64 = resid.iter().map(|r| r * r).sum();
    let r2 = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    let hi = resid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = resid.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(FitResult { slope, intercept, r2, window_width: hi - lo })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// `k ≤ -log d + C` from the parallelepiped bound.
    T1,
    /// `k ≤ -½ log d + C` at boundary points off the coordinate hyperplanes.
    T1star,
    /// `k ≤ ½ log(-log d) + C` near excluded coordinate hyperplanes.
    T9,
    /// `k ≥ -½ log d + C` along non-tangential approach.
    T3,
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(Theorem::T1),
            "t1star" | "t1*" => Ok(Theorem::T1star),
            "t9" => Ok(Theorem::T9),
            "t3" => Ok(Theorem::T3),
            other => Err(Error::InvalidArgument(format!("unknown theorem {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub slope_tol: f64,
    pub window: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { slope_tol: 0.05, window: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: Theorem,
    pub fit: FitResult,
    pub thresholds: Thresholds,
    /// Rows violating the per-row inequality of the theorem, if it has one.
    pub row_failures: usize,
    pub rows: usize,
    pub passed: bool,
}

/// Rate functional and regressor of a theorem at one row.
fn functional(theorem: Theorem, row: &SweepRow) -> Result<(f64, f64)> {
    let get = |c: Construction| {
        row.bounds
            .get(&c)
            .copied()
            .ok_or_else(|| Error::MissingBounds(format!("{} at t = {}", c.column(), row.t)))
    };
    let logd = row.d.ln();
    Ok(match theorem {
        Theorem::T1 => (-logd, get(Construction::Parallelepiped)? + logd),
        Theorem::T1star => (-logd, get(Construction::Interval)? + 0.5 * logd),
        Theorem::T9 => {
            let ll = (-logd).ln();
            (ll, get(Construction::PuncturedPolydisc)? - 0.5 * ll)
        }
        Theorem::T3 => (-logd, get(Construction::Monomial)? + 0.5 * logd),
    })
}

/// Fits the rate functional of `theorem` along the sweep and applies the thresholds.
pub fn check_theorem(
    rows: &[SweepRow],
    theorem: Theorem,
    kind: &PathKind,
    zeta0: &[f64],
    thresholds: Thresholds,
) -> Result<Verdict> {
    if theorem == Theorem::T3 && !matches!(kind, PathKind::Normal | PathKind::Cone { .. }) {
        return Err(Error::WrongPathKind { theorem: "T3".into(), kind: kind.name().into() });
    }
    let mut xs = Vec::with_capacity(rows.len());
    let mut ys = Vec::with_capacity(rows.len());
    for row in rows {
        let (x, y) = functional(theorem, row)?;
        xs.push(x);
        ys.push(y);
    }
    let mut row_failures = 0;
    if theorem == Theorem::T9 {
        let zero_axes: Vec<usize> = (0..zeta0.len()).filter(|&j| zeta0[j] == 0.0).collect();
        for row in rows {
            let bound = zero_axes.iter().map(|&j| row.z[j]).fold(f64::INFINITY, f64::min);
            if !(row.d <= bound * (1.0 + 1e-12)) {
                row_failures += 1;
            }
        }
    }
    let fit = fit_slope(&xs, &ys)?;
    let passed = fit.slope.abs() <= thresholds.slope_tol && fit.window_width <= thresholds.window && row_failures == 0;
    Ok(Verdict { theorem, fit, thresholds, row_failures, rows: rows.len(), passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 3.0).collect();
        let f = fit_slope(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 3.0).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert!(f.window_width < 1e-12);
    }

    #[test]
    fn constant() {
        let xs: Vec<f64> = (0..10).map(|i| -(i as f64)).collect();
        let f = fit_slope(&xs, &[4.0; 10]).unwrap();
        assert_eq!(f.slope, 0.0);
    }

    #[test]
    fn noisy_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x + rng.gen_range(-0.01..0.01)).collect();
        let f = fit_slope(&xs, &ys).unwrap();
        assert!((f.slope - 1.0).abs() < 0.02);
    }

    #[test]
    fn fit_errors() {
        assert!(fit_slope(&[1.0; 5], &[1.0; 5]).is_err());
        assert!(fit_slope(&[1.0; 9], &[1.0; 9]).is_err());
        let xs = [0.0, 1.0, 2.0, 3.0, 2.0, 5.0, 6.0, 7.0];
        assert!(fit_slope(&xs, &[0.0; 8]).is_err());
    }

    #[test]
    fn t3_rejects_radial_paths() {
        let err = check_theorem(&[], Theorem::T3, &PathKind::Radial, &[1.0, 1.0], Thresholds::default());
        assert!(matches!(err, Err(Error::WrongPathKind { .. })));
    }
}

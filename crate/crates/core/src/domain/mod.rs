//! Reinhardt domains described by convex constraints on their logarithmic image.
//!
//! A domain `D ⊂ C^n` is stored through `log D = {x : g_k(x) < 0 for all k}` where each
//! `g_k` is a log-sum-exp of affine forms, together with a flag per coordinate axis
//! telling whether `D` contains points with that coordinate equal to zero.

mod distance;
mod profile;
mod support;
mod transform;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distance::{d_abs, d_log, BoundarySolution};
pub use profile::{completeness_profile, CompletenessProfile};
pub use support::{
    normal_vector_moduli, rationalize_halfspace, supporting_halfspace, RationalHalfspace,
    SupportingHalfspace,
};
pub use transform::{rescale, restrict_to_axes};

/// Witness points must satisfy every constraint with at least this margin.
pub const WITNESS_MARGIN: f64 = 1e-9;

/// Default boundary classification tolerance in moduli space.
pub const DEFAULT_TOL: f64 = 1e-7;

/// One exponential term `exp(<alpha, x> + b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogTerm {
    pub alpha: Vec<f64>,
    pub b: f64,
}

impl LogTerm {
    pub fn new(alpha: Vec<f64>, b: f64) -> Self {
        Self { alpha, b }
    }

    fn exponent(&self, x: &[f64]) -> f64 {
        dot(&self.alpha, x) + self.b
    }
}

/// The constraint `log Σ exp(<alpha_k, x> + b_k) < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogConstraint {
    pub terms: Vec<LogTerm>,
}

impl LogConstraint {
    pub fn new(terms: Vec<LogTerm>) -> Self {
        Self { terms }
    }

    /// The affine constraint `<alpha, x> + b < 0`.
    pub fn affine(alpha: Vec<f64>, b: f64) -> Self {
        Self { terms: vec![LogTerm::new(alpha, b)] }
    }

    pub fn is_affine(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value and gradient of the constraint function at `x`.
    pub fn value_and_gradient(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let exps: Vec<f64> = self.terms.iter().map(|t| t.exponent(x)).collect();
        let m = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut grad = vec![0.0; x.len()];
        if !m.is_finite() {
            return (m, grad);
        }
        let weights: Vec<f64> = exps.iter().map(|e| (e - m).exp()).collect();
        let total: f64 = weights.iter().sum();
        for (t, w) in self.terms.iter().zip(&weights) {
            for (g, a) in grad.iter_mut().zip(&t.alpha) {
                *g += a * w / total;
            }
        }
        (m + total.ln(), grad)
    }
}

/// Stable log-sum-exp value of a constraint at `x`.
pub fn lse_margin(c: &LogConstraint, x: &[f64]) -> f64 {
    let exps: Vec<f64> = c.terms.iter().map(|t| t.exponent(x)).collect();
    log_sum_exp(&exps)
}

pub(crate) fn log_sum_exp(exps: &[f64]) -> f64 {
    let m = exps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + exps.iter().map(|e| (e - m).exp()).sum::<f64>().ln()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Coordinate moduli `(|z_1|, ..., |z_n|)`; zeros allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuliPoint(Vec<f64>);

impl ModuliPoint {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "moduli must be finite and nonnegative, got {r:?}"
            )));
        }
        Ok(Self(r))
    }

    pub fn from_log(x: &LogPoint) -> Self {
        Self(x.iter().map(|v| v.exp()).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Indices of vanishing coordinates.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j] == 0.0).collect()
    }

    /// The log point, if every coordinate is positive.
    pub fn to_log(&self) -> Option<LogPoint> {
        if self.0.iter().all(|&v| v > 0.0) {
            Some(LogPoint(self.0.iter().map(|v| v.ln()).collect()))
        } else {
            None
        }
    }
}

impl Deref for ModuliPoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point of log-moduli space `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogPoint(Vec<f64>);

impl LogPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("log point must be finite, got {x:?}")));
        }
        Ok(Self(x))
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for LogPoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Position of a point relative to a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpecFile {
    name: String,
    dim: usize,
    constraints: Vec<LogConstraint>,
    axis_included: Vec<bool>,
    witness_log: Vec<f64>,
}

/// A validated pseudoconvex Reinhardt domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReinhardtDomainSpec {
    name: String,
    dim: usize,
    constraints: Vec<LogConstraint>,
    axis_included: Vec<bool>,
    witness_log: Vec<f64>,
}

impl<'de> Deserialize<'de> for ReinhardtDomainSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SpecFile::deserialize(d)?;
        ReinhardtDomainSpec::new(raw.name, raw.constraints, raw.axis_included, raw.witness_log)
            .map_err(serde::de::Error::custom)
    }
}

impl ReinhardtDomainSpec {
    /// Builds and validates a spec. The dimension is taken from `axis_included`.
    pub fn new(
        name: impl Into<String>,
        constraints: Vec<LogConstraint>,
        axis_included: Vec<bool>,
        witness_log: Vec<f64>,
    ) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            dim: axis_included.len(),
            constraints,
            axis_included,
            witness_log,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses and validates the JSON representation.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SpecFile =
            serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        if raw.axis_included.len() != raw.dim {
            return Err(Error::Schema(format!(
                "axis_included has {} entries, expected dim = {}",
                raw.axis_included.len(),
                raw.dim
            )));
        }
        Self::new(raw.name, raw.constraints, raw.axis_included, raw.witness_log)
    }

    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Schema("dim must be at least 1".into()));
        }
        if self.witness_log.len() != n {
            return Err(Error::Schema(format!(
                "witness_log has {} entries, expected {n}",
                self.witness_log.len()
            )));
        }
        if self.witness_log.iter().any(|v| !v.is_finite()) {
            return Err(Error::Schema("witness_log must be finite".into()));
        }
        for (k, c) in self.constraints.iter().enumerate() {
            if c.terms.is_empty() {
                return Err(Error::Schema(format!("constraint {k} has no terms")));
            }
            for t in &c.terms {
                if t.alpha.len() != n {
                    return Err(Error::Schema(format!(
                        "constraint {k}: alpha has {} entries, expected {n}",
                        t.alpha.len()
                    )));
                }
                if t.alpha.iter().any(|v| !v.is_finite()) || !t.b.is_finite() {
                    return Err(Error::Schema(format!("constraint {k}: non-finite coefficient")));
                }
            }
        }
        for j in (0..n).filter(|&j| self.axis_included[j]) {
            for (k, c) in self.constraints.iter().enumerate() {
                if c.terms.iter().any(|t| t.alpha[j] < 0.0) {
                    return Err(Error::Semantic(format!(
                        "axis {} is marked included but constraint {k} has a negative exponent on it",
                        j + 1
                    )));
                }
            }
        }
        let margin = log_membership(self, &self.witness_log);
        if !(margin < -WITNESS_MARGIN) {
            return Err(Error::Semantic(format!(
                "witness {:?} is not strictly interior (margin {margin})",
                self.witness_log
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LogConstraint] {
        &self.constraints
    }

    pub fn axis_included(&self) -> &[bool] {
        &self.axis_included
    }

    pub fn witness_log(&self) -> &[f64] {
        &self.witness_log
    }

    /// True when every constraint is a single affine term.
    pub fn is_affine(&self) -> bool {
        self.constraints.iter().all(LogConstraint::is_affine)
    }
}

/// Largest constraint value at `x`; `x ∈ log D` iff the result is negative.
pub fn log_membership(spec: &ReinhardtDomainSpec, x: &[f64]) -> f64 {
    spec.constraints
        .iter()
        .map(|c| lse_margin(c, x))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Constraint margin at a moduli point, letting vanishing coordinates tend to zero.
///
/// Terms with a positive exponent on a vanishing coordinate drop out; a surviving
/// term with a negative exponent there blows up and yields `+∞`.
pub fn moduli_margin(spec: &ReinhardtDomainSpec, r: &[f64]) -> f64 {
    let zeros: Vec<usize> = (0..r.len()).filter(|&j| r[j] == 0.0).collect();
    let mut worst = f64::NEG_INFINITY;
    for c in &spec.constraints {
        let mut exps = Vec::with_capacity(c.terms.len());
        for t in &c.terms {
            if zeros.iter().any(|&j| t.alpha[j] > 0.0) {
                continue;
            }
            if zeros.iter().any(|&j| t.alpha[j] < 0.0) {
                return f64::INFINITY;
            }
            let e: f64 = (0..r.len())
                .filter(|&j| r[j] > 0.0)
                .map(|j| t.alpha[j] * r[j].ln())
                .sum::<f64>()
                + t.b;
            exps.push(e);
        }
        worst = worst.max(log_sum_exp(&exps));
    }
    worst
}

/// Classifies a moduli point with the margin tolerance `tol`.
pub fn membership(spec: &ReinhardtDomainSpec, r: &[f64], tol: f64) -> Classification {
    let m = moduli_margin(spec, r);
    let axes_ok = (0..r.len()).all(|j| r[j] > 0.0 || spec.axis_included[j]);
    if axes_ok && m < -tol {
        Classification::Interior
    } else if m <= tol {
        Classification::Boundary
    } else {
        Classification::Exterior
    }
}

/// Strict interior test (no tolerance).
pub fn is_interior(spec: &ReinhardtDomainSpec, r: &[f64]) -> bool {
    r.len() == spec.dim
        && r.iter().all(|v| v.is_finite() && *v >= 0.0)
        && (0..r.len()).all(|j| r[j] > 0.0 || spec.axis_included[j])
        && moduli_margin(spec, r) < 0.0
}

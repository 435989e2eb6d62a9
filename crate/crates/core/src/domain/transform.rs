use super::{dot, LogConstraint, LogTerm, ReinhardtDomainSpec};
use crate::error::{Error, Result};

/// Image of the domain under `z ↦ (a_1 z_1, ..., a_n z_n)`.
///
/// The log image is translated by `log a`.
pub fn rescale(spec: &ReinhardtDomainSpec, a: &[f64]) -> Result<ReinhardtDomainSpec> {
    if a.len() != spec.dim() || a.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("scale factors must be positive, got {a:?}")));
    }
    let shift: Vec<f64> = a.iter().map(|v| v.ln()).collect();
    let constraints = spec
        .constraints()
        .iter()
        .map(|c| LogConstraint {
            terms: c
                .terms
                .iter()
                .map(|t| LogTerm { alpha: t.alpha.clone(), b: t.b - dot(&t.alpha, &shift) })
                .collect(),
        })
        .collect();
    let witness = spec.witness_log().iter().zip(&shift).map(|(w, s)| w + s).collect();
    ReinhardtDomainSpec::new(spec.name(), constraints, spec.axis_included().to_vec(), witness)
}

/// The slice `D ∩ {z_j = 0 for j ∉ keep}` in the coordinates `keep`.
pub fn restrict_to_axes(spec: &ReinhardtDomainSpec, keep: &[usize]) -> Result<ReinhardtDomainSpec> {
    let n = spec.dim();
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() || sorted.iter().any(|&j| j >= n) || sorted.is_empty() {
        return Err(Error::InvalidArgument(format!("invalid axis set {keep:?}")));
    }
    let dropped: Vec<usize> = (0..n).filter(|j| !sorted.contains(j)).collect();
    if let Some(&j) = dropped.iter().find(|&&j| !spec.axis_included()[j]) {
        return Err(Error::Precondition(format!("axis {} is not included and cannot be dropped", j + 1)));
    }
    let mut constraints = Vec::new();
    for c in spec.constraints() {
        let terms: Vec<LogTerm> = c
            .terms
            .iter()
            .filter(|t| dropped.iter().all(|&j| t.alpha[j] == 0.0))
            .map(|t| LogTerm { alpha: sorted.iter().map(|&j| t.alpha[j]).collect(), b: t.b })
            .collect();
        if !terms.is_empty() {
            constraints.push(LogConstraint { terms });
        }
    }
    let axes = sorted.iter().map(|&j| spec.axis_included()[j]).collect();
    // dropping terms only lowers each constraint, so the projected witness stays interior
    let witness = sorted.iter().map(|&j| spec.witness_log()[j]).collect();
    ReinhardtDomainSpec::new(spec.name(), constraints, axes, witness)
}

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::ReinhardtDomainSpec;
use crate::search::nnls;

/// Completeness data of a domain. Axis indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessProfile {
    /// Axes `j` with `D ∩ V_j ≠ ∅`; equal to the included axes.
    pub complete_dirs: Vec<usize>,
    /// Whether `∂D` meets the axis hyperplane `V_j = {z_j = 0}`.
    pub axis_boundary_met: Vec<bool>,
    pub fu_satisfied: bool,
    pub relatively_complete: bool,
}

/// `∂D` meets `V_j` iff the log image is unbounded in a direction `d ≤ 0` with
/// `d_j < 0`, i.e. iff `-e_j` is not in the cone spanned by the term exponents and
/// the other unit vectors.
fn axis_boundary_met(spec: &ReinhardtDomainSpec, j: usize) -> bool {
    let n = spec.dim();
    let mut cols: Vec<Vec<f64>> = spec
        .constraints()
        .iter()
        .flat_map(|c| c.terms.iter().map(|t| t.alpha.clone()))
        .collect();
    for i in (0..n).filter(|&i| i != j) {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        cols.push(e);
    }
    let cols: Vec<Vec<f64>> = cols
        .into_iter()
        .filter_map(|c| {
            let len = super::norm(&c);
            (len > 0.0).then(|| c.iter().map(|v| v / len).collect())
        })
        .collect();
    if cols.is_empty() {
        return true;
    }
    let a = DMatrix::from_fn(n, cols.len(), |r, c| cols[c][r]);
    let mut target = DVector::zeros(n);
    target[j] = -1.0;
    let x = nnls(&a, &target);
    let residual = (a * x - &target).norm();
    residual > 1e-9
}

pub fn completeness_profile(spec: &ReinhardtDomainSpec) -> CompletenessProfile {
    let n = spec.dim();
    let included = spec.axis_included();
    let met: Vec<bool> = (0..n).map(|j| axis_boundary_met(spec, j)).collect();
    CompletenessProfile {
        complete_dirs: (0..n).filter(|&j| included[j]).collect(),
        fu_satisfied: (0..n).all(|j| !met[j] || included[j]),
        axis_boundary_met: met,
        relatively_complete: true,
    }
}

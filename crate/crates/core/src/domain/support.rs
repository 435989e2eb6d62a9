use serde::{Deserialize, Serialize};

use super::{dot, lse_margin, norm, ReinhardtDomainSpec};
use crate::error::{Error, Result};

/// Boundary tolerance for points handed to the support routines.
const ON_BOUNDARY: f64 = 1e-7;
/// Constraints within this margin of the largest one count as active.
const ACTIVE_TOL: f64 = 1e-6;

/// Halfspace `{<alpha, x> < logc}` containing the log image, touching it at the
/// point it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportingHalfspace {
    pub alpha: Vec<f64>,
    pub logc: f64,
    /// Index of the active constraint.
    pub constraint: usize,
}

pub fn supporting_halfspace(spec: &ReinhardtDomainSpec, x0: &[f64]) -> Result<SupportingHalfspace> {
    let margins: Vec<f64> = spec.constraints().iter().map(|c| lse_margin(c, x0)).collect();
    let max = margins.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if margins.is_empty() {
        return Err(Error::AmbiguousSupport { active: vec![] });
    }
    if !(max.abs() <= ON_BOUNDARY) {
        return Err(Error::Precondition(format!(
            "{x0:?} is not on the boundary of the log image (margin {max})"
        )));
    }
    let active: Vec<usize> = (0..margins.len()).filter(|&k| margins[k] >= max - ACTIVE_TOL).collect();
    if active.len() != 1 {
        return Err(Error::AmbiguousSupport { active });
    }
    let k = active[0];
    let (g, alpha) = spec.constraints()[k].value_and_gradient(x0);
    // tangent plane of the convex function g at x0, shifted to its zero level
    let logc = dot(&alpha, x0) - g;
    Ok(SupportingHalfspace { alpha, logc, constraint: k })
}

/// Integer halfspace `{<A, x> < logC}` approximating a real one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalHalfspace {
    pub a: Vec<i64>,
    pub log_c: f64,
    /// `A ≈ scale · alpha`.
    pub scale: f64,
    /// True when the halfspace provably contains the log image.
    pub certified: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn rationalize_halfspace(
    spec: &ReinhardtDomainSpec,
    alpha: &[f64],
    logc: f64,
    qmax: i64,
    samples: &[Vec<f64>],
) -> Result<RationalHalfspace> {
    if qmax < 1 {
        return Err(Error::InvalidArgument(format!("qmax must be at least 1, got {qmax}")));
    }
    if alpha.len() != spec.dim() || alpha.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha {alpha:?} has the wrong shape")));
    }
    let Some(unit) = alpha
        .iter()
        .filter(|v| **v != 0.0)
        .map(|v| v.abs())
        .min_by(f64::total_cmp)
    else {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    };
    let a: Vec<f64> = alpha.iter().map(|v| v / unit).collect();
    let mut best_q = 1;
    let mut best_err = f64::INFINITY;
    for q in 1..=qmax {
        let err = a
            .iter()
            .map(|v| (q as f64 * v - (q as f64 * v).round()).abs() / q as f64)
            .fold(0.0, f64::max);
        if err < best_err - 1e-12 {
            best_err = err;
            best_q = q;
        }
    }
    let p: Vec<i64> = a.iter().map(|v| (best_q as f64 * v).round() as i64).collect();
    let g = p.iter().fold(0, |acc, &v| gcd(acc, v)).max(1);
    let int_a: Vec<i64> = p.iter().map(|v| v / g).collect();
    let scale = best_q as f64 / (unit * g as f64);
    let af: Vec<f64> = int_a.iter().map(|&v| v as f64).collect();
    let base = scale * logc;
    let margin = samples
        .iter()
        .map(|x| dot(&af, x) - base)
        .fold(0.0, f64::max);
    let mut log_c = base + margin;

    let mut certified = false;
    if spec.is_affine() {
        for c in spec.constraints() {
            let t = &c.terms[0];
            let tn = norm(&t.alpha);
            if tn == 0.0 {
                continue;
            }
            let lambda = dot(&af, &t.alpha) / (tn * tn);
            let dev: f64 = af.iter().zip(&t.alpha).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt();
            if lambda > 0.0 && dev <= 1e-12 * norm(&af) {
                certified = true;
                log_c = log_c.max(-lambda * t.b);
                break;
            }
        }
    }
    Ok(RationalHalfspace { a: int_a, log_c, scale, certified })
}

/// Outward unit normal at a boundary point with positive moduli.
pub fn normal_vector_moduli(spec: &ReinhardtDomainSpec, r0: &[f64]) -> Result<Vec<f64>> {
    if r0.len() != spec.dim() || r0.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Precondition(format!("{r0:?} must have positive finite moduli")));
    }
    let x0: Vec<f64> = r0.iter().map(|v| v.ln()).collect();
    let h = supporting_halfspace(spec, &x0)?;
    let grad: Vec<f64> = h.alpha.iter().zip(r0).map(|(a, r)| a / r).collect();
    let len = norm(&grad);
    if len == 0.0 {
        return Err(Error::Degenerate("vanishing constraint gradient".into()));
    }
    Ok(grad.iter().map(|v| v / len).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn support_affine() {
        let spec = catalog::product_one();
        let h = supporting_halfspace(&spec, &[0.7, -0.7]).unwrap();
        assert_eq!(h.alpha, vec![1.0, 1.0]);
        assert_eq!(h.logc, 0.0);
    }

    #[test]
    fn support_d_beta_symmetric() {
        let spec = catalog::d_beta();
        let x = -2f64.ln() / 0.5;
        let h = supporting_halfspace(&spec, &[x, x]).unwrap();
        assert!((h.alpha[0] - h.alpha[1]).abs() < 1e-15);
        assert!((h.alpha[0] - 0.25).abs() < 1e-15);
        // the halfspace contains the log image: sample the boundary curve
        for i in 1..100 {
            let u = i as f64 / 100.0;
            let p = [2.0 * u.ln(), 2.0 * (1.0 - u).ln()];
            assert!(dot(&h.alpha, &p) <= h.logc + 1e-12);
        }
    }

    #[test]
    fn support_corner_is_ambiguous() {
        let spec = catalog::bidisc();
        assert!(matches!(
            supporting_halfspace(&spec, &[0.0, 0.0]),
            Err(Error::AmbiguousSupport { active }) if active == vec![0, 1]
        ));
        assert!(matches!(supporting_halfspace(&spec, &[-1.0, -1.0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn rationalize_examples() {
        let spec = catalog::product_one();
        let r = rationalize_halfspace(&spec, &[1.0, 1.0], 0.0, 10, &[]).unwrap();
        assert_eq!(r.a, vec![1, 1]);
        assert_eq!(r.log_c, 0.0);
        assert!(r.certified);

        let rdom = catalog::r_domain();
        let samples = vec![vec![-0.5, -0.2], vec![-1.0, 0.0]];
        let r = rationalize_halfspace(&rdom, &[1.0, 2f64.sqrt()], -0.7, 5, &samples).unwrap();
        assert_eq!(r.a, vec![5, 7]);
        assert!(!r.certified);
        let base = r.scale * -0.7;
        let expected_margin = samples
            .iter()
            .map(|x| 5.0 * x[0] + 7.0 * x[1] - base)
            .fold(0.0, f64::max);
        assert!((r.log_c - (base + expected_margin)).abs() < 1e-14);

        let r = rationalize_halfspace(&spec, &[2.0, 4.0], 0.0, 10, &[]).unwrap();
        assert_eq!(r.a, vec![1, 2]);
        assert!(rationalize_halfspace(&spec, &[1.0, 1.0], 0.0, 0, &[]).is_err());
        assert!(rationalize_halfspace(&spec, &[0.0, 0.0], 0.0, 3, &[]).is_err());
    }

    #[test]
    fn normals() {
        let n = normal_vector_moduli(&catalog::unit_disc(), &[1.0]).unwrap();
        assert_eq!(n, vec![1.0]);
        let n = normal_vector_moduli(&catalog::product_one(), &[1.0, 1.0]).unwrap();
        assert!((n[0] - 0.5f64.sqrt()).abs() < 1e-15 && (n[1] - 0.5f64.sqrt()).abs() < 1e-15);
        let n = normal_vector_moduli(&catalog::bidisc(), &[1.0, 0.5]).unwrap();
        assert_eq!(n, vec![1.0, 0.0]);
    }
}

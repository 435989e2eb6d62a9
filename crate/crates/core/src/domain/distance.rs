use serde::{Deserialize, Serialize};

use super::{dot, is_interior, log_membership, norm, LogConstraint, ModuliPoint, ReinhardtDomainSpec};
use crate::error::{Error, Result};
use crate::search::{convex_ray_root, minimize_over_sphere};

/// Rays longer than this are treated as never leaving a constraint set.
const RAY_LIMIT: f64 = 1e8;
/// Witnesses must satisfy `|g| <= WITNESS_TOL` at the hit constraint.
const WITNESS_TOL: f64 = 1e-7;

/// Distance to the complement of a set together with a nearest point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySolution {
    pub distance: f64,
    pub witness: Vec<f64>,
    pub converged: bool,
}

/// Exit parameter of the ray `x + s v` from `{g < 0}`.
fn ray_exit(c: &LogConstraint, x: &[f64], v: &[f64]) -> Option<f64> {
    // g(x + s v) is the log-sum-exp of the affine functions e_t + s·k_t
    let e: Vec<f64> = c.terms.iter().map(|t| dot(&t.alpha, x) + t.b).collect();
    let k: Vec<f64> = c.terms.iter().map(|t| dot(&t.alpha, v)).collect();
    if k.iter().all(|&kt| kt <= 0.0) {
        return None;
    }
    convex_ray_root(
        |s| {
            let z: Vec<f64> = e.iter().zip(&k).map(|(e, k)| e + s * k).collect();
            let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let w: Vec<f64> = z.iter().map(|zt| (zt - m).exp()).collect();
            let total: f64 = w.iter().sum();
            let slope = w.iter().zip(&k).map(|(w, k)| w * k).sum::<f64>() / total;
            (m + total.ln(), slope)
        },
        RAY_LIMIT,
    )
}

fn axpy(x: &[f64], s: f64, v: &[f64]) -> Vec<f64> {
    x.iter().zip(v).map(|(a, b)| a + s * b).collect()
}

/// Euclidean distance from `x` to the complement of a single constraint set.
fn constraint_distance(c: &LogConstraint, x: &[f64]) -> BoundarySolution {
    let n = x.len();
    if c.is_affine() {
        let t = &c.terms[0];
        let len = norm(&t.alpha);
        if len == 0.0 {
            return BoundarySolution { distance: f64::INFINITY, witness: x.to_vec(), converged: true };
        }
        let dist = -(dot(&t.alpha, x) + t.b) / len;
        let unit: Vec<f64> = t.alpha.iter().map(|a| a / len).collect();
        return BoundarySolution { distance: dist, witness: axpy(x, dist, &unit), converged: true };
    }
    let objective = |v: &[f64]| ray_exit(c, x, v).unwrap_or(f64::INFINITY);
    let mut seeds = vec![c.value_and_gradient(x).1];
    seeds.extend(c.terms.iter().map(|t| t.alpha.clone()));
    let best = minimize_over_sphere(n, &objective, &seeds);
    if !best.value.is_finite() {
        return BoundarySolution { distance: f64::INFINITY, witness: x.to_vec(), converged: best.converged };
    }
    let witness = axpy(x, best.value, &best.direction);
    let ok = best.converged && super::lse_margin(c, &witness).abs() <= WITNESS_TOL;
    BoundarySolution { distance: best.value, witness, converged: ok }
}

/// Distance from `x` to the complement of the log image.
pub fn d_log(spec: &ReinhardtDomainSpec, x: &[f64]) -> Result<BoundarySolution> {
    if x.len() != spec.dim() || x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition(format!("{x:?} is not a log point of dimension {}", spec.dim())));
    }
    if !(log_membership(spec, x) < 0.0) {
        return Err(Error::Precondition(format!("{x:?} is not in the log image")));
    }
    let mut best = BoundarySolution { distance: f64::INFINITY, witness: x.to_vec(), converged: true };
    let mut all_converged = true;
    for c in spec.constraints() {
        let sol = constraint_distance(c, x);
        all_converged &= sol.converged;
        if sol.distance < best.distance {
            best = sol;
        }
    }
    best.converged = all_converged;
    Ok(best)
}

/// Distance in the closed orthant from the moduli point `r` to the boundary of `D`.
///
/// For Reinhardt domains this equals the Euclidean distance to `∂D` in `C^n`.
pub fn d_abs(spec: &ReinhardtDomainSpec, r: &ModuliPoint) -> Result<BoundarySolution> {
    if r.dim() != spec.dim() || !is_interior(spec, r) {
        return Err(Error::Precondition(format!("{:?} is not an interior moduli point", &r[..])));
    }
    Ok(d_abs_inner(spec, r))
}

fn d_abs_inner(spec: &ReinhardtDomainSpec, r: &[f64]) -> BoundarySolution {
    let n = spec.dim();
    let included = spec.axis_included();
    let mut best = BoundarySolution { distance: f64::INFINITY, witness: r.to_vec(), converged: true };
    let consider = |cand: BoundarySolution, best: &mut BoundarySolution| {
        if cand.distance < best.distance {
            *best = cand;
        }
    };

    // excluded axes: the hyperplane {r_j = 0} is boundary
    for j in (0..n).filter(|&j| !included[j]) {
        let mut w = r.to_vec();
        w[j] = 0.0;
        consider(BoundarySolution { distance: r[j], witness: w, converged: true }, &mut best);
    }

    // faces {r_J = 0} for included J: boundary of the slice D ∩ {z_J = 0}
    let inc: Vec<usize> = (0..n).filter(|&j| included[j]).collect();
    for mask in 1u64..(1u64 << inc.len()) {
        let dropped: Vec<usize> = (0..inc.len()).filter(|b| mask >> b & 1 == 1).map(|b| inc[b]).collect();
        let offset = dropped.iter().map(|&j| r[j] * r[j]).sum::<f64>().sqrt();
        if offset >= best.distance {
            continue;
        }
        if dropped.len() == n {
            if !is_interior(spec, &vec![0.0; n]) {
                consider(BoundarySolution { distance: offset, witness: vec![0.0; n], converged: true }, &mut best);
            }
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|j| !dropped.contains(j)).collect();
        let Ok(sub) = super::restrict_to_axes(spec, &keep) else { continue };
        let r_keep: Vec<f64> = keep.iter().map(|&j| r[j]).collect();
        if !is_interior(&sub, &r_keep) {
            continue;
        }
        let inner = d_abs_inner(&sub, &r_keep);
        if !inner.distance.is_finite() {
            continue;
        }
        let mut w = vec![0.0; n];
        for (p, &j) in keep.iter().enumerate() {
            w[j] = inner.witness[p];
        }
        let dist = (offset * offset + inner.distance * inner.distance).sqrt();
        consider(BoundarySolution { distance: dist, witness: w, converged: inner.converged }, &mut best);
    }

    // constraint surfaces in the open orthant, reached along log-space rays
    let anchor = interior_anchor(spec, r);
    for c in spec.constraints() {
        let objective = |v: &[f64]| match ray_exit(c, &anchor, v) {
            Some(s) => {
                let hit = axpy(&anchor, s, v);
                hit.iter().zip(r).map(|(x, rj)| (x.exp() - rj).powi(2)).sum::<f64>().sqrt()
            }
            None => f64::INFINITY,
        };
        let mut seeds = vec![c.value_and_gradient(&anchor).1];
        seeds.extend(c.terms.iter().map(|t| t.alpha.clone()));
        let found = minimize_over_sphere(n, &objective, &seeds);
        if !found.value.is_finite() {
            continue;
        }
        let Some(s) = ray_exit(c, &anchor, &found.direction) else { continue };
        let hit: Vec<f64> = axpy(&anchor, s, &found.direction).iter().map(|x| x.exp()).collect();
        let ok = found.converged && super::lse_margin(c, &axpy(&anchor, s, &found.direction)).abs() <= WITNESS_TOL;
        consider(BoundarySolution { distance: found.value, witness: hit, converged: ok }, &mut best);
    }
    best
}

/// Log point used as the origin of surface rays: `log r`, with vanishing coordinates
/// replaced by small positive values that keep the point interior.
fn interior_anchor(spec: &ReinhardtDomainSpec, r: &[f64]) -> Vec<f64> {
    let scale = r.iter().cloned().fold(0.0, f64::max).max(1e-3);
    let mut delta = 1e-3 * scale;
    for _ in 0..60 {
        let p: Vec<f64> = r.iter().map(|&v| if v > 0.0 { v } else { delta }).collect();
        if is_interior(spec, &p) {
            return p.iter().map(|v| v.ln()).collect();
        }
        delta *= 0.1;
    }
    r.iter().map(|&v| if v > 0.0 { v.ln() } else { delta.ln() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::domain::{membership, Classification, LogConstraint};

    fn mp(r: &[f64]) -> ModuliPoint {
        ModuliPoint::new(r.to_vec()).unwrap()
    }

    #[test]
    fn d_log_affine_examples() {
        let spec = catalog::product_one();
        let s = d_log(&spec, &[-1.0, -1.0]).unwrap();
        assert!((s.distance - 2f64.sqrt()).abs() < 1e-14);
        let s = d_log(&catalog::bidisc(), &[-0.3, -0.7]).unwrap();
        assert!((s.distance - 0.3).abs() < 1e-14);
        assert!(d_log(&catalog::bidisc(), &[0.1, -0.7]).is_err());
    }

    /// Brute-force nearest point on the curve `e^{x1/2} + e^{x2/2} = 1`, parametrized by
    /// `u = e^{x1/2} ∈ (0, 1)`.
    fn d_beta_grid_oracle(x: [f64; 2]) -> f64 {
        let dist = |u: f64| {
            let p = [2.0 * u.ln(), 2.0 * (1.0 - u).ln()];
            ((p[0] - x[0]).powi(2) + (p[1] - x[1]).powi(2)).sqrt()
        };
        let k = 200_000;
        let (mut best_u, mut best) = (0.5, f64::INFINITY);
        for i in 1..k {
            let u = i as f64 / k as f64;
            let v = dist(u);
            if v < best {
                best = v;
                best_u = u;
            }
        }
        let h = 1.0 / k as f64;
        let mut lo = (best_u - h).max(1e-12);
        let mut hi = (best_u + h).min(1.0 - 1e-12);
        for _ in 0..200 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if dist(m1) < dist(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        dist(0.5 * (lo + hi)).min(best)
    }

    #[test]
    fn d_log_d_beta_matches_grid() {
        let spec = catalog::d_beta();
        for x in [[-2.0, -2.0], [-0.5, -4.0], [-3.0, -1.2], [-6.0, -6.0]] {
            let s = d_log(&spec, &x).unwrap();
            assert!(s.converged);
            let oracle = d_beta_grid_oracle(x);
            assert!((s.distance - oracle).abs() < 1e-4, "{x:?}: {} vs {oracle}", s.distance);
        }
    }

    #[test]
    fn d_abs_simple_examples() {
        let disc = catalog::unit_disc();
        let s = d_abs(&disc, &mp(&[0.3])).unwrap();
        assert!((s.distance - 0.7).abs() < 1e-12);
        let s = d_abs(&catalog::bidisc(), &mp(&[0.3, 0.5])).unwrap();
        assert!((s.distance - 0.5).abs() < 1e-12);
        let s = d_abs(&catalog::disc_times_punctured(), &mp(&[0.5, 0.2])).unwrap();
        assert!((s.distance - 0.2).abs() < 1e-12);
        assert_eq!(s.witness, vec![0.5, 0.0]);
        let s = d_abs(&disc, &mp(&[0.0])).unwrap();
        assert!((s.distance - 1.0).abs() < 1e-12);
        assert!(d_abs(&disc, &mp(&[1.2])).is_err());
    }

    /// Polar-grid oracle for `{r1 r2 = 1}`: nearest point along rays from the origin.
    fn hyperbola_oracle(r: [f64; 2]) -> f64 {
        let k = 100_000;
        let mut best = f64::INFINITY;
        for i in 1..k {
            let th = 0.5 * std::f64::consts::PI * i as f64 / k as f64;
            let rho = 1.0 / (th.cos() * th.sin()).sqrt();
            let p = [rho * th.cos(), rho * th.sin()];
            best = best.min(((p[0] - r[0]).powi(2) + (p[1] - r[1]).powi(2)).sqrt());
        }
        best
    }

    #[test]
    fn d_abs_hyperbola_matches_grid() {
        let spec = catalog::product_one();
        let s = d_abs(&spec, &mp(&[0.5, 0.5])).unwrap();
        assert!(s.converged);
        assert!((s.distance - 0.5 * 2f64.sqrt()).abs() < 1e-9);
        assert!((s.distance - hyperbola_oracle([0.5, 0.5])).abs() < 1e-3);
        for r in [[0.2, 1.5], [0.05, 0.05], [2.0, 0.1]] {
            let s = d_abs(&spec, &mp(&r)).unwrap();
            assert!((s.distance - hyperbola_oracle(r)).abs() < 1e-3, "{r:?}");
            assert_eq!(membership(&spec, &s.witness, 1e-7), Classification::Boundary);
        }
    }

    #[test]
    fn d_abs_uses_axis_faces() {
        // |z1| + |z2| < 1 at (0, 0.3): nearest boundary point lies on the z2 axis
        let spec = ReinhardtDomainSpec::new(
            "l1 ball",
            vec![LogConstraint::new(vec![
                crate::domain::LogTerm::new(vec![1.0, 0.0], 0.0),
                crate::domain::LogTerm::new(vec![0.0, 1.0], 0.0),
            ])],
            vec![true, true],
            vec![-2.0, -2.0],
        )
        .unwrap();
        let s = d_abs(&spec, &mp(&[0.0, 0.3])).unwrap();
        let expected = 0.7 / 2f64.sqrt();
        assert!((s.distance - expected).abs() < 1e-7, "{}", s.distance);
        let s = d_abs(&spec, &mp(&[0.2, 0.3])).unwrap();
        assert!((s.distance - 0.5 / 2f64.sqrt()).abs() < 1e-7, "{}", s.distance);
    }
}

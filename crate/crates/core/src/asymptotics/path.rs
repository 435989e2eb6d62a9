use serde::{Deserialize, Serialize};

use crate::domain::{is_interior, norm, normal_vector_moduli, ReinhardtDomainSpec};
use crate::error::{Error, Result};

/// Shape of a boundary-approach path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum PathKind {
    /// `ζ0 + t (start - ζ0)`.
    Radial,
    /// `ζ0 - t ν` with `ν` the outward unit normal.
    Normal,
    /// `ζ0 - t (cos a ν + sin a w)` with `w ⊥ ν` fixed.
    Cone { angle: f64 },
    /// Explicit points, in approach order.
    Custom { points: Vec<Vec<f64>> },
}

impl PathKind {
    pub fn name(&self) -> &'static str {
        match self {
            PathKind::Radial => "radial",
            PathKind::Normal => "normal",
            PathKind::Cone { .. } => "cone",
            PathKind::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub kind: PathKind,
    pub zeta0: Vec<f64>,
    /// Starting point of radial paths.
    pub start: Option<Vec<f64>>,
    pub t0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl PathSpec {
    pub const DEFAULT_T0: f64 = 0.1;
    pub const DEFAULT_RATIO: f64 = 0.5;
    pub const DEFAULT_COUNT: usize = 20;

    pub fn new(kind: PathKind, zeta0: Vec<f64>) -> Self {
        Self {
            kind,
            zeta0,
            start: None,
            t0: Self::DEFAULT_T0,
            ratio: Self::DEFAULT_RATIO,
            count: Self::DEFAULT_COUNT,
        }
    }

    pub fn radial(zeta0: Vec<f64>, start: Vec<f64>) -> Self {
        Self { start: Some(start), ..Self::new(PathKind::Radial, zeta0) }
    }

    pub fn with_schedule(mut self, t0: f64, ratio: f64, count: usize) -> Self {
        self.t0 = t0;
        self.ratio = ratio;
        self.count = count;
        self
    }

    /// `t_i = t0 ratio^i`.
    pub fn schedule(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.t0 * self.ratio.powi(i as i32)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub t: f64,
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedPath {
    pub kind: PathKind,
    pub zeta0: Vec<f64>,
    pub points: Vec<PathPoint>,
    /// Number of candidate points that were not interior.
    pub dropped: usize,
}

fn unit_cone_direction(nu: &[f64], angle: f64) -> Result<Vec<f64>> {
    let n = nu.len();
    for k in 0..n {
        let mut w: Vec<f64> = nu.iter().map(|v| -nu[k] * v).collect();
        w[k] += 1.0;
        let len = norm(&w);
        if len > 1e-8 {
            return Ok((0..n).map(|j| angle.cos() * nu[j] + angle.sin() * w[j] / len).collect());
        }
    }
    Err(Error::PathGeneration("no direction orthogonal to the normal".into()))
}

pub fn generate_path(spec: &ReinhardtDomainSpec, p: &PathSpec) -> Result<GeneratedPath> {
    let n = spec.dim();
    if p.zeta0.len() != n {
        return Err(Error::InvalidArgument("zeta0 has the wrong dimension".into()));
    }
    if !(p.t0 > 0.0) || !(p.ratio > 0.0 && p.ratio < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "schedule needs t0 > 0 and ratio in (0, 1), got {} and {}",
            p.t0, p.ratio
        )));
    }
    let candidates: Vec<PathPoint> = match &p.kind {
        PathKind::Radial => {
            let start = p
                .start
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("radial paths need a start point".into()))?;
            if start.len() != n {
                return Err(Error::InvalidArgument("start has the wrong dimension".into()));
            }
            p.schedule()
                .into_iter()
                .map(|t| PathPoint {
                    t,
                    z: (0..n).map(|j| p.zeta0[j] + t * (start[j] - p.zeta0[j])).collect(),
                })
                .collect()
        }
        PathKind::Normal | PathKind::Cone { .. } => {
            let angle = match p.kind {
                PathKind::Cone { angle } => angle,
                _ => 0.0,
            };
            if !(angle.abs() < std::f64::consts::FRAC_PI_2) {
                return Err(Error::InvalidArgument(format!("cone angle {angle} must be below π/2")));
            }
            let nu = normal_vector_moduli(spec, &p.zeta0)?;
            let dir = unit_cone_direction(&nu, angle)?;
            p.schedule()
                .into_iter()
                .map(|t| PathPoint { t, z: (0..n).map(|j| p.zeta0[j] - t * dir[j]).collect() })
                .collect()
        }
        PathKind::Custom { points } => {
            if points.iter().any(|z| z.len() != n) {
                return Err(Error::InvalidArgument("custom point with the wrong dimension".into()));
            }
            let t = p.schedule();
            let t = if t.len() == points.len() {
                t
            } else {
                (0..points.len()).map(|i| p.t0 * p.ratio.powi(i as i32)).collect()
            };
            points.iter().zip(t).map(|(z, t)| PathPoint { t, z: z.clone() }).collect()
        }
    };
    let total = candidates.len();
    let points: Vec<PathPoint> = candidates
        .into_iter()
        .filter(|pt| pt.z.iter().all(|v| v.is_finite() && *v >= 0.0) && is_interior(spec, &pt.z))
        .collect();
    if points.is_empty() {
        return Err(Error::PathGeneration("no path point is interior".into()));
    }
    Ok(GeneratedPath { kind: p.kind.clone(), zeta0: p.zeta0.clone(), dropped: total - points.len(), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn radial_affine_formula() {
        let p = PathSpec::radial(vec![1.0], vec![0.5]).with_schedule(0.5, 0.5, 3);
        let path = generate_path(&catalog::unit_disc(), &p).unwrap();
        let zs: Vec<f64> = path.points.iter().map(|q| q.z[0]).collect();
        assert_eq!(zs, vec![0.75, 0.875, 0.9375]);
        let p = PathSpec::radial(vec![1.0], vec![0.5]).with_schedule(1.0, 0.5, 3);
        let path = generate_path(&catalog::unit_disc(), &p).unwrap();
        let zs: Vec<f64> = path.points.iter().map(|q| q.z[0]).collect();
        assert_eq!(zs, vec![0.5, 0.75, 0.875]);
    }

    #[test]
    fn normal_path_on_product_domain() {
        let p = PathSpec::new(PathKind::Normal, vec![1.0, 1.0]).with_schedule(0.1, 0.5, 5);
        let path = generate_path(&catalog::product_one(), &p).unwrap();
        for q in &path.points {
            let expected = 1.0 - q.t / 2f64.sqrt();
            assert!((q.z[0] - expected).abs() < 1e-15 && (q.z[1] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn cone_direction_and_validation() {
        let spec = catalog::product_one();
        let p = PathSpec::new(PathKind::Cone { angle: std::f64::consts::FRAC_PI_6 }, vec![1.0, 1.0]);
        let path = generate_path(&spec, &p).unwrap();
        let q = &path.points[0];
        let step = [(1.0 - q.z[0]) / q.t, (1.0 - q.z[1]) / q.t];
        let nu = [0.5f64.sqrt(), 0.5f64.sqrt()];
        let cos = step[0] * nu[0] + step[1] * nu[1];
        assert!((cos - std::f64::consts::FRAC_PI_6.cos()).abs() < 1e-12);
        assert!(step[0] > step[1]);
        let bad = PathSpec::new(PathKind::Cone { angle: std::f64::consts::FRAC_PI_2 }, vec![1.0, 1.0]);
        assert!(matches!(generate_path(&spec, &bad), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn exterior_points_are_dropped() {
        let p = PathSpec::new(PathKind::Custom { points: vec![vec![0.5], vec![2.0], vec![0.9]] }, vec![1.0]);
        let path = generate_path(&catalog::unit_disc(), &p).unwrap();
        assert_eq!(path.points.len(), 2);
        assert_eq!(path.dropped, 1);
        let p = PathSpec::new(PathKind::Custom { points: vec![vec![2.0]] }, vec![1.0]);
        assert!(matches!(generate_path(&catalog::unit_disc(), &p), Err(Error::PathGeneration(_))));
    }
}
